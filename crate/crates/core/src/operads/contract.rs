//! Folding a graph into a single element of an operad given by an
//! evaluator.

use std::collections::VecDeque;

use super::{compose_free, contract_free, FreeElement};
use crate::error::{Error, Result};
use crate::graphs::{canonical, GraphMode, NsGraph};
use crate::orders::{mc_cut, mc_merge, CyclicWord, Label, MulticyclicType, TypedArity};

/// What an evaluator sees of one vertex: its decorations and its blocks,
/// with every flag named by its port name.
#[derive(Clone, Debug)]
pub struct VertexData {
    pub index: usize,
    pub mode: GraphMode,
    pub genus: u32,
    pub tag: Option<Label>,
    pub blocks: Vec<Vec<Label>>,
}

impl VertexData {
    /// The blocks as a multicyclic order (non-Σ vertices).
    pub fn stype(&self) -> MulticyclicType {
        MulticyclicType::new(self.blocks.iter().map(|b| CyclicWord::from_distinct(b.clone())).collect())
            .expect("port names are distinct")
    }
}

/// An operad presented by its generators' values, composition and
/// contraction.
pub trait Evaluator {
    type Element: Clone;

    fn vertex(&self, v: &VertexData) -> Result<Self::Element>;
    fn compose(&self, x: &Self::Element, u: &Label, y: &Self::Element, v: &Label) -> Result<Self::Element>;
    fn contract(&self, x: &Self::Element, u: &Label, v: &Label) -> Result<Self::Element>;
}

/// The terminal non-Σ operad: the element of a component is its arity.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalEvaluator;

impl Evaluator for TerminalEvaluator {
    type Element = TypedArity;

    fn vertex(&self, v: &VertexData) -> Result<TypedArity> {
        if v.mode != GraphMode::NonSigma {
            return Err(Error::Unsupported("the terminal evaluator works on non-Sigma graphs".into()));
        }
        Ok(TypedArity::new(v.stype(), v.genus))
    }

    fn compose(&self, x: &TypedArity, u: &Label, y: &TypedArity, v: &Label) -> Result<TypedArity> {
        Ok(TypedArity::new(mc_merge(&x.stype, u, &y.stype, v)?, x.genus + y.genus))
    }

    fn contract(&self, x: &TypedArity, u: &Label, v: &Label) -> Result<TypedArity> {
        Ok(TypedArity::new(mc_cut(&x.stype, u, v)?, x.genus + 1))
    }
}

/// The free operad on graphs: vertices become tagged corollas.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeEvaluator;

impl Evaluator for FreeEvaluator {
    type Element = FreeElement;

    fn vertex(&self, v: &VertexData) -> Result<FreeElement> {
        let g = match v.mode {
            GraphMode::NonSigma => NsGraph::corolla(&v.stype(), v.genus),
            GraphMode::Symmetric => NsGraph::symmetric_corolla(&v.blocks.iter().flatten().cloned().collect(), v.genus),
        };
        let g = match &v.tag {
            Some(t) => g.with_tag(t),
            None => g,
        };
        Ok(FreeElement::from_graph(&g))
    }

    fn compose(&self, x: &FreeElement, u: &Label, y: &FreeElement, v: &Label) -> Result<FreeElement> {
        compose_free(x, u, y, v)
    }

    fn contract(&self, x: &FreeElement, u: &Label, v: &Label) -> Result<FreeElement> {
        contract_free(x, u, v)
    }
}

/// One flag per edge: a breadth-first spanning tree from vertex 0 in flag
/// order, then the remaining edges in flag order.
pub fn default_schedule(gamma: &NsGraph) -> Vec<usize> {
    let vertex_of = gamma.vertex_of();
    let n = gamma.vertex_count();
    let mut seen = vec![false; n];
    let mut used = vec![false; gamma.flag_count()];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for h in gamma.vertices()[v].flags() {
            let s = gamma.sigma(h);
            if s == h || used[h] {
                continue;
            }
            let w = vertex_of[s];
            if !seen[w] {
                seen[w] = true;
                used[h] = true;
                used[s] = true;
                out.push(h);
                queue.push_back(w);
            }
        }
    }
    for (h, s) in gamma.edges() {
        if !used[h] {
            used[h] = true;
            used[s] = true;
            out.push(h);
        }
    }
    out
}

/// Folds `gamma` with the default schedule on its canonical form.
pub fn contract_along<E: Evaluator>(gamma: &NsGraph, ev: &E) -> Result<E::Element> {
    gamma.check()?;
    let rep = canonical(gamma).into_rep();
    let schedule = default_schedule(&rep);
    contract_along_with(&rep, ev, &schedule)
}

/// Folds `gamma` edge by edge in the order given by `schedule`, which
/// names one flag of every edge exactly once.
pub fn contract_along_with<E: Evaluator>(gamma: &NsGraph, ev: &E, schedule: &[usize]) -> Result<E::Element> {
    gamma.check()?;
    let ports = gamma.with_port_names();
    let port = |h: usize| ports.name(h).clone();
    let mut done = vec![false; gamma.flag_count()];
    for &h in schedule {
        if h >= gamma.flag_count() || gamma.sigma(h) == h || done[h] {
            return Err(Error::InvalidGraph(format!("schedule entry {h} is not a fresh edge")));
        }
        done[h] = true;
        done[gamma.sigma(h)] = true;
    }
    if schedule.len() != gamma.edge_count() {
        return Err(Error::InvalidGraph("schedule does not cover every edge".into()));
    }
    let vertex_of = gamma.vertex_of();
    let mut cluster: Vec<usize> = (0..gamma.vertex_count()).collect();
    let mut elems: Vec<Option<E::Element>> = gamma
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let data = VertexData {
                index: i,
                mode: gamma.mode(),
                genus: v.genus,
                tag: v.tag.clone(),
                blocks: v.blocks.iter().map(|b| b.iter().map(|&h| port(h)).collect()).collect(),
            };
            ev.vertex(&data).map(Some)
        })
        .collect::<Result<_>>()?;
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &h in schedule {
        let s = gamma.sigma(h);
        let a = find(&mut cluster, vertex_of[h]);
        let b = find(&mut cluster, vertex_of[s]);
        let x = elems[a].take().expect("cluster root holds an element");
        let next = if a == b {
            ev.contract(&x, &port(h), &port(s))?
        } else {
            let y = elems[b].take().expect("cluster root holds an element");
            cluster[b] = a;
            ev.compose(&x, &port(h), &y, &port(s))?
        };
        elems[a] = Some(next);
    }
    let root = find(&mut cluster, 0);
    Ok(elems[root].take().expect("connected graph folds to one element"))
}
