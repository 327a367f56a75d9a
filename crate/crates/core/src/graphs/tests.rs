use super::*;
use crate::orders::{labels, mc_cut, mc_merge, parse_cyclic_word, parse_multicyclic_type};

fn l(s: &str) -> Label {
    Label::new(s)
}

fn cor(s: &str) -> NsGraph {
    NsGraph::cyclic_corolla(&parse_cyclic_word(s).unwrap())
}

fn mt(s: &str) -> MulticyclicType {
    parse_multicyclic_type(s).unwrap()
}

fn loop_graph() -> NsGraph {
    cor("(x u y v)").self_glue(&l("u"), &l("v")).unwrap()
}

/// Independent face count: orbits of the permutation built as an explicit
/// table over flag names.
fn face_count_oracle(g: &NsGraph) -> usize {
    let f = g.flag_count();
    let mut next = vec![0; f];
    for v in &g.vertices {
        for b in &v.blocks {
            for i in 0..b.len() {
                next[b[i]] = b[(i + 1) % b.len()];
            }
        }
    }
    let perm: Vec<usize> = (0..f).map(|h| next[g.sigma(h)]).collect();
    let mut seen = vec![false; f];
    let mut cycles = 0;
    for s in 0..f {
        if !seen[s] {
            cycles += 1;
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                h = perm[h];
            }
        }
    }
    cycles
}

#[test]
fn corolla_is_valid() {
    assert!(cor("(a b c)").validate().is_empty());
}

#[test]
fn broken_involution_is_reported() {
    let mut g = cor("(a b c)");
    g.sigma = vec![1, 2, 0];
    g.legs = vec![None, None, None];
    assert!(g.validate().iter().any(|d| matches!(d, Diagnostic::NotInvolution { .. })));
}

#[test]
fn disjoint_corollas_are_disconnected() {
    let a = cor("(a b)");
    let mut g = a.clone();
    g.names.extend(labels(&["c", "d"]));
    g.sigma.extend([2, 3]);
    g.legs.extend([Some(l("c")), Some(l("d"))]);
    g.vertices.push(Vertex::new(0, vec![vec![2, 3]]));
    let d = g.validate();
    assert_eq!(d, vec![Diagnostic::Disconnected]);
    assert_eq!(d[0].to_string(), "disconnected");
    assert!(g.betti().is_err());
}

#[test]
fn other_diagnostics() {
    let mut g = cor("(a b)");
    g.legs[1] = Some(l("a"));
    assert!(g.validate().contains(&Diagnostic::DuplicateLegLabel { label: l("a") }));
    let mut g = cor("(a b)");
    g.legs[0] = None;
    assert!(g.validate().contains(&Diagnostic::UnlabeledLeg { flag: l("a") }));
    let mut g = cor("(a b)");
    g.vertices[0].blocks = vec![vec![0]];
    assert!(g.validate().contains(&Diagnostic::Uncovered { flag: l("b") }));
}

#[test]
fn betti_numbers() {
    assert_eq!(cor("(a b c)").betti().unwrap(), 0);
    assert_eq!(loop_graph().betti().unwrap(), 1);
    let two = cor("(p q)").graft(&l("p"), &cor("(r s)"), &l("r")).unwrap();
    let annulus = two.self_glue(&l("q"), &l("s")).unwrap();
    assert_eq!(annulus.betti().unwrap(), annulus.edge_count() as u32 + 1 - annulus.vertex_count() as u32);
    assert_eq!(annulus.betti().unwrap(), 1);
}

#[test]
fn faces_and_leg_types() {
    let c = cor("(a b c)");
    assert_eq!(c.faces().unwrap(), vec![labels(&["a", "b", "c"])]);
    assert_eq!(c.leg_type().unwrap(), mt("{(a b c)}"));

    let lg = loop_graph();
    assert_eq!(lg.faces().unwrap().len(), 2);
    assert_eq!(lg.leg_type().unwrap(), mt("{(x) (y)}"));

    let two = cor("(p q)").graft(&l("p"), &cor("(r s)"), &l("r")).unwrap();
    let annulus = two.self_glue(&l("q"), &l("s")).unwrap();
    assert_eq!(annulus.faces().unwrap().len(), 2);
    assert_eq!(face_count_oracle(&annulus), 2);
    assert_eq!(annulus.leg_type().unwrap(), mt("{() ()}"));

    let g = cor("(a u)").graft(&l("u"), &cor("(v b)"), &l("v")).unwrap();
    assert_eq!(g.leg_type().unwrap(), mt("{(a b)}"));
}

#[test]
fn every_flag_in_exactly_one_face() {
    let g = loop_graph().graft(&l("x"), &cor("(k m n)"), &l("k")).unwrap();
    let faces = g.face_cycles().unwrap();
    let mut all: Vec<usize> = faces.concat();
    all.sort_unstable();
    assert_eq!(all, (0..g.flag_count()).collect::<Vec<_>>());
}

#[test]
fn genus_and_arity() {
    assert_eq!(cor("(a b c)").genus().unwrap(), 0);
    assert_eq!(loop_graph().genus().unwrap(), 1);
    assert_eq!(loop_graph().arity().unwrap(), TypedArity::new(mt("{(x) (y)}"), 1));
    assert_eq!(NsGraph::corolla(&mt("{()}"), 2).genus().unwrap(), 2);
}

#[test]
fn vertex_geometricity() {
    assert!(cor("(a b)").is_geometric_graph());
    assert!(!NsGraph::corolla(&mt("{(a) (b)}"), 0).is_geometric_graph());
    assert!(NsGraph::corolla(&mt("{(a) (b)}"), 1).is_geometric_graph());
}

#[test]
fn graft_examples() {
    let g = cor("(a u)").graft(&l("u"), &cor("(v b)"), &l("v")).unwrap();
    assert_eq!(g.arity().unwrap(), TypedArity::new(mt("{(a b)}"), 0));
    let g = cor("(u)").graft(&l("u"), &cor("(v)"), &l("v")).unwrap();
    assert_eq!(g.arity().unwrap(), TypedArity::new(mt("{()}"), 0));
    assert_eq!(cor("(a u)").graft(&l("z"), &cor("(v b)"), &l("v")), Err(Error::NotALeg(l("z"))));
    assert_eq!(cor("(a u)").graft(&l("u"), &cor("(v a)"), &l("v")), Err(Error::LabelClash(l("a"))));
}

#[test]
fn graft_renames_clashing_flags() {
    let x = loop_graph();
    let y = cor("(p q)").self_glue(&l("p"), &l("q")).unwrap().graft(&l("x"), &cor("(k)"), &l("k"));
    assert!(y.is_err());
    let mut other = cor("(x2 u m)");
    other.legs = vec![Some(l("w")), Some(l("u2")), Some(l("m"))];
    let g = x.graft(&l("x"), &other, &l("w")).unwrap();
    assert!(g.validate().is_empty());
}

#[test]
fn self_glue_examples() {
    assert_eq!(loop_graph().arity().unwrap(), TypedArity::new(mt("{(x) (y)}"), 1));
    let g = cor("(u v)").self_glue(&l("u"), &l("v")).unwrap();
    assert_eq!(g.arity().unwrap(), TypedArity::new(mt("{() ()}"), 1));
    assert!(matches!(cor("(u v)").self_glue(&l("u"), &l("u")), Err(Error::InvalidGlue(_))));
    assert_eq!(cor("(u v)").self_glue(&l("u"), &l("q")), Err(Error::NotALeg(l("q"))));
}

#[test]
fn contract_edge_examples() {
    let g = cor("(a u)").graft(&l("u"), &cor("(v b)"), &l("v")).unwrap();
    let c = g.contract_edge(g.flag_by_name("u").unwrap()).unwrap();
    assert_eq!(c.vertex_count(), 1);
    assert!(are_isomorphic(&c, &cor("(a b)")));

    let chain = cor("(a u1)")
        .graft(&l("u1"), &cor("(v1 b u2)"), &l("v1"))
        .unwrap()
        .graft(&l("u2"), &cor("(v2 c)"), &l("v2"))
        .unwrap();
    let once = chain.contract_edge(chain.flag_by_name("u1").unwrap()).unwrap();
    let twice = once.contract_edge(once.flag_by_name("u2").unwrap()).unwrap();
    assert_eq!(twice.vertex_count(), 1);
    assert_eq!(twice.arity().unwrap(), chain.arity().unwrap());
    assert!(are_isomorphic(&twice, &cor("(a b c)")));

    let two = cor("(p q)").graft(&l("p"), &cor("(r s)"), &l("r")).unwrap();
    let annulus = two.self_glue(&l("q"), &l("s")).unwrap();
    let one = annulus.contract_edge(annulus.flag_by_name("p").unwrap()).unwrap();
    assert_eq!(one.vertex_count(), 1);
    assert_eq!(one.edge_count(), 1);
    assert_eq!(one.arity().unwrap(), annulus.arity().unwrap());

    let lg = loop_graph();
    assert!(matches!(lg.contract_edge(lg.flag_by_name("u").unwrap()), Err(Error::IsALoop(_))));
    assert!(matches!(lg.contract_edge(lg.flag_by_name("x").unwrap()), Err(Error::NoSuchEdge(_))));
}

#[test]
fn contract_loop_examples() {
    let lg = loop_graph();
    let c = lg.contract_loop(lg.flag_by_name("u").unwrap()).unwrap();
    assert_eq!(c.vertex_count(), 1);
    assert_eq!(c.vertices()[0].genus, 1);
    assert!(are_isomorphic(&c, &NsGraph::corolla(&mt("{(x) (y)}"), 1)));
    assert_eq!(c.arity().unwrap(), lg.arity().unwrap());

    let g = cor("(u v)").self_glue(&l("u"), &l("v")).unwrap();
    let c = g.contract_loop(0).unwrap();
    assert_eq!(c.vertices()[0].genus, 1);
    assert_eq!(c.vertices()[0].blocks, vec![Vec::<usize>::new(), Vec::new()]);

    let g = cor("(a u)").graft(&l("u"), &cor("(v b)"), &l("v")).unwrap();
    assert!(matches!(g.contract_loop(g.flag_by_name("u").unwrap()), Err(Error::NotALoop(_))));
}

#[test]
fn cross_block_loop_merges_blocks() {
    let g = NsGraph::corolla(&mt("{(a u) (v b)}"), 1).self_glue(&l("u"), &l("v")).unwrap();
    let c = g.contract_loop(g.flag_by_name("u").unwrap()).unwrap();
    assert_eq!(c.vertices()[0].b(), 1);
    assert_eq!(c.arity().unwrap(), g.arity().unwrap());
    assert_eq!(c.arity().unwrap().genus, 2);
}

#[test]
fn arity_laws_on_hand_examples() {
    let x = NsGraph::corolla(&mt("{(x v1 z u1)}"), 0);
    let y = NsGraph::corolla(&mt("{(y u2 v2)}"), 0);
    let g = x.graft(&l("v1"), &y, &l("v2")).unwrap();
    let want = mc_merge(&x.leg_type().unwrap(), &l("v1"), &y.leg_type().unwrap(), &l("v2")).unwrap();
    assert_eq!(g.leg_type().unwrap(), want);
    let h = g.self_glue(&l("u1"), &l("u2")).unwrap();
    let want = mc_cut(&g.leg_type().unwrap(), &l("u1"), &l("u2")).unwrap();
    assert_eq!(h.leg_type().unwrap(), want);
    assert_eq!(h.leg_type().unwrap(), mt("{(x y) (z)}"));
    assert_eq!(h.genus().unwrap(), 1);
}

#[test]
fn symmetric_graphs_have_no_leg_type() {
    let s = NsGraph::symmetric_corolla(&labels(&["a", "b"]).into_iter().collect(), 0);
    assert!(matches!(s.leg_type(), Err(Error::Unsupported(_))));
    let g = s.self_glue(&l("a"), &l("b")).unwrap();
    assert_eq!(g.genus().unwrap(), 1);
    let c = g.contract_loop(0).unwrap();
    assert_eq!(c.genus().unwrap(), 1);
    assert_eq!(c.flag_count(), 0);
}

#[test]
fn port_names_avoid_leg_labels() {
    let g = loop_graph().relabel_legs(|x| if x.as_str() == "x" { l("h0") } else { x.clone() }).unwrap();
    let p = g.with_port_names();
    assert!(p.validate().is_empty());
    assert!(p.names().iter().any(|n| n.as_str() == "h_0"));
}
