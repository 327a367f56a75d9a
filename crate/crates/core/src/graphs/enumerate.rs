//! Bounded enumeration of graph classes.
//!
//! Ribbon and symmetric graphs are generated by vertex splitting: level 1
//! holds the one-vertex graphs, and level `V` is obtained by splitting one
//! vertex of a level `V - 1` graph along a new edge. Every graph with at
//! least two vertices contracts along some non-loop edge to a graph one
//! level down, so each level is complete.
//!
//! Graphs built from vertices of fixed shapes go through
//! [`structured_search`]: pick a multiset of shapes, assign the legs, match
//! the remaining flags, keep connected results, dedup canonically. The same
//! search doubles as an independent check on the splitting generator.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{canonical, GraphClass, GraphMode, NsGraph, Vertex};
use crate::orders::Label;

/// A vertex of fixed shape: genus, block sizes, generator tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexShape {
    pub tag: Option<Label>,
    pub genus: u32,
    /// Block sizes; a symmetric shape has a single entry, its degree.
    pub blocks: Vec<usize>,
}

impl VertexShape {
    pub fn degree(&self) -> usize {
        self.blocks.iter().sum()
    }
}

/// Which vertices a generated graph may contain.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum VertexConstraint {
    /// Genus 0, one cyclic block of any size.
    #[default]
    Ribbon,
    /// Genus 0, a plain flag set of any size.
    Symmetric,
    /// Vertices drawn from a finite list of shapes.
    Shapes(GraphMode, Vec<VertexShape>),
}

impl VertexConstraint {
    pub fn mode(&self) -> GraphMode {
        match self {
            VertexConstraint::Ribbon => GraphMode::NonSigma,
            VertexConstraint::Symmetric => GraphMode::Symmetric,
            VertexConstraint::Shapes(mode, _) => *mode,
        }
    }
}

fn fresh_pair(g: &NsGraph) -> (Label, Label) {
    let taken: HashSet<&str> = g.names.iter().map(Label::as_str).collect();
    let mut k = g.flag_count();
    let mut pick = || loop {
        let name = format!("s{k}");
        k += 1;
        if !taken.contains(name.as_str()) {
            return Label::new(name);
        }
    };
    let p = pick();
    let q = pick();
    (p, q)
}

/// All genus-`g` one-vertex graphs of the given mode with legs `legs` and
/// a genus-0 vertex, one per class.
pub fn one_vertex_graphs(legs: &BTreeSet<Label>, g: u32, mode: GraphMode) -> Vec<GraphClass> {
    let n = legs.len();
    let f = n + 2 * g as usize;
    let mut names: Vec<Label> = legs.iter().cloned().collect();
    let mut leg_labels: Vec<Option<Label>> = names.iter().cloned().map(Some).collect();
    let mut sigma: Vec<usize> = (0..n).collect();
    for k in 0..g as usize {
        names.push(Label::new(format!("i{}", 2 * k)));
        names.push(Label::new(format!("i{}", 2 * k + 1)));
        sigma.push(n + 2 * k + 1);
        sigma.push(n + 2 * k);
        leg_labels.push(None);
        leg_labels.push(None);
    }
    let build = |block: Vec<usize>| NsGraph {
        mode,
        names: names.clone(),
        sigma: sigma.clone(),
        vertices: vec![Vertex::new(0, vec![block])],
        legs: leg_labels.clone(),
    };
    let mut out: Vec<GraphClass> = match mode {
        GraphMode::Symmetric => vec![canonical(&build((0..f).collect()))],
        GraphMode::NonSigma if f == 0 => vec![canonical(&build(Vec::new()))],
        GraphMode::NonSigma => {
            let mut rest: Vec<usize> = (1..f).collect();
            let mut seen = HashSet::new();
            permutations(&mut rest, 0, &mut |perm| {
                let mut block = Vec::with_capacity(f);
                block.push(0);
                block.extend_from_slice(perm);
                seen.insert(canonical(&build(block)));
            });
            seen.into_iter().collect()
        }
    };
    out.sort();
    out
}

fn permutations(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every graph obtained by splitting one vertex of `g` along a new edge.
/// Vertices must be genus 0 with a single block.
pub fn expansions(g: &NsGraph) -> Vec<NsGraph> {
    let (p, q) = fresh_pair(g);
    let f = g.flag_count();
    let (ip, iq) = (f, f + 1);
    let mut base = g.clone();
    base.names.push(p);
    base.names.push(q);
    base.sigma.push(iq);
    base.sigma.push(ip);
    base.legs.push(None);
    base.legs.push(None);
    let mut out = Vec::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        debug_assert_eq!(vert.blocks.len(), 1);
        let w = &vert.blocks[0];
        let m = w.len();
        let mut push = |a: Vec<usize>, b: Vec<usize>| {
            let mut h = base.clone();
            h.vertices[v] = Vertex { genus: vert.genus, blocks: vec![b], tag: vert.tag.clone() };
            h.vertices.push(Vertex { genus: 0, blocks: vec![a], tag: vert.tag.clone() });
            out.push(h);
        };
        match g.mode {
            GraphMode::NonSigma => {
                for k in 0..=m {
                    let starts = m.max(1);
                    for s in 0..starts {
                        let mut a: Vec<usize> = (0..k).map(|i| w[(s + i) % m]).collect();
                        a.push(ip);
                        let mut b = vec![iq];
                        b.extend((k..m).map(|i| w[(s + i) % m]));
                        push(a, b);
                    }
                }
            }
            GraphMode::Symmetric => {
                for mask in 0u64..(1u64 << m) {
                    let mut a: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
                    a.push(ip);
                    let mut b: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| w[i]).collect();
                    b.push(iq);
                    push(a, b);
                }
            }
        }
    }
    out
}

/// Levels `1..=vmax` of the splitting generator; entry `V - 1` holds the
/// classes with exactly `V` vertices, sorted.
pub fn enumerate_levels(legs: &BTreeSet<Label>, g: u32, vmax: usize, mode: GraphMode) -> Vec<Vec<GraphClass>> {
    let mut levels: Vec<Vec<GraphClass>> = Vec::new();
    if vmax == 0 {
        return levels;
    }
    levels.push(one_vertex_graphs(legs, g, mode));
    for _ in 1..vmax {
        let prev = levels.last().expect("level 1 exists");
        let found: HashSet<GraphClass> = prev
            .par_iter()
            .fold(HashSet::new, |mut acc, c| {
                for h in expansions(c.rep()) {
                    acc.insert(canonical(&h));
                }
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        let mut next: Vec<GraphClass> = found.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    levels
}

/// All classes with legs `legs`, total genus `g`, at most `vmax` vertices
/// and every vertex allowed by `constraint`; ordered by vertex count, then
/// canonically.
pub fn enumerate_graphs(legs: &BTreeSet<Label>, g: u32, vmax: usize, constraint: &VertexConstraint) -> Vec<GraphClass> {
    match constraint {
        VertexConstraint::Ribbon => enumerate_levels(legs, g, vmax, GraphMode::NonSigma).concat(),
        VertexConstraint::Symmetric => enumerate_levels(legs, g, vmax, GraphMode::Symmetric).concat(),
        VertexConstraint::Shapes(..) => structured_search(legs, g, vmax, constraint),
    }
}

/// Non-increasing sequences of `parts` positive integers summing to `total`
/// (zero allowed only when `parts == 1`).
fn degree_partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let lo = total.div_ceil(parts).max(1);
        for d in (lo..=max.min(total)).rev() {
            acc.push(d);
            go(total - d, parts - 1, d, acc, out);
            acc.pop();
        }
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    go(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// Multisets of size `k` drawn from `0..n`, as non-decreasing sequences.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            go(n, k, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Candidate vertex multisets with `v` vertices whose flag count and genus
/// are compatible with `n` legs and total genus `g`.
fn vertex_choices(n: usize, g: u32, v: usize, constraint: &VertexConstraint) -> Vec<Vec<VertexShape>> {
    match constraint {
        VertexConstraint::Ribbon | VertexConstraint::Symmetric => {
            let edges = g as usize + v - 1;
            degree_partitions(2 * edges + n, v)
                .into_iter()
                .map(|ds| ds.into_iter().map(|d| VertexShape { tag: None, genus: 0, blocks: vec![d] }).collect())
                .collect()
        }
        VertexConstraint::Shapes(_, shapes) => multisets(shapes.len(), v)
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| shapes[i].clone()).collect::<Vec<_>>())
            .filter(|vs| {
                let d: usize = vs.iter().map(VertexShape::degree).sum();
                if d < n || (d - n) % 2 == 1 {
                    return false;
                }
                let e = (d - n) / 2;
                if e + 1 < v {
                    return false;
                }
                let genus: u32 = vs.iter().map(|s| s.genus).sum::<u32>() + (e + 1 - v) as u32;
                genus == g
            })
            .collect(),
    }
}

fn perfect_matchings(free: &[usize], sigma: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let Some((&first, rest)) = free.split_first() else {
        f(sigma);
        return;
    };
    for i in 0..rest.len() {
        let partner = rest[i];
        sigma[first] = partner;
        sigma[partner] = first;
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        perfect_matchings(&remaining, sigma, f);
    }
}

/// Injective maps from `0..n` into `0..d`.
fn arrangements(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, n: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for x in 0..d {
            if !used[x] {
                used[x] = true;
                acc.push(x);
                go(d, n, used, acc, out);
                acc.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(d, n, &mut vec![false; d], &mut Vec::new(), &mut out);
    out
}

/// Brute-force enumeration: vertex multisets, leg placements and flag
/// matchings, filtered for connectivity and deduplicated canonically.
pub fn structured_search(
    legs: &BTreeSet<Label>,
    g: u32,
    vmax: usize,
    constraint: &VertexConstraint,
) -> Vec<GraphClass> {
    let mode = constraint.mode();
    let leg_list: Vec<Label> = legs.iter().cloned().collect();
    let n = leg_list.len();
    let mut levels: Vec<Vec<GraphClass>> = Vec::new();
    for v in 1..=vmax {
        let mut found: HashSet<GraphClass> = HashSet::new();
        for shapes in vertex_choices(n, g, v, constraint) {
            let mut vertices = Vec::with_capacity(v);
            let mut next = 0;
            for s in &shapes {
                let blocks: Vec<Vec<usize>> = s
                    .blocks
                    .iter()
                    .map(|&len| {
                        let b: Vec<usize> = (next..next + len).collect();
                        next += len;
                        b
                    })
                    .collect();
                vertices.push(Vertex { genus: s.genus, blocks, tag: s.tag.clone() });
            }
            let d = next;
            let names: Vec<Label> = (0..d).map(|i| Label::new(format!("f{i}"))).collect();
            let part: HashSet<GraphClass> = arrangements(d, n)
                .par_iter()
                .fold(HashSet::new, |mut acc, placed| {
                    let mut sigma: Vec<usize> = (0..d).collect();
                    let mut leg_of = vec![None; d];
                    for (i, &h) in placed.iter().enumerate() {
                        leg_of[h] = Some(leg_list[i].clone());
                    }
                    let free: Vec<usize> = (0..d).filter(|h| leg_of[*h].is_none()).collect();
                    perfect_matchings(&free, &mut sigma, &mut |sig| {
                        let graph = NsGraph {
                            mode,
                            names: names.clone(),
                            sigma: sig.to_vec(),
                            vertices: vertices.clone(),
                            legs: leg_of.clone(),
                        };
                        if graph.is_connected() {
                            acc.insert(canonical(&graph));
                        }
                    });
                    acc
                })
                .reduce(HashSet::new, |mut a, b| {
                    a.extend(b);
                    a
                });
            found.extend(part);
        }
        let mut level: Vec<GraphClass> = found.into_iter().collect();
        level.sort();
        levels.push(level);
    }
    levels.concat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::labels;

    fn set(names: &[&str]) -> BTreeSet<Label> {
        labels(names).into_iter().collect()
    }

    #[test]
    fn small_counts() {
        let r = VertexConstraint::Ribbon;
        assert_eq!(enumerate_graphs(&set(&["a", "b", "c"]), 0, 1, &r).len(), 2);
        assert_eq!(enumerate_graphs(&BTreeSet::new(), 0, 1, &r).len(), 1);
    }

    #[test]
    fn splitting_agrees_with_brute_force() {
        for (mode, constraint) in
            [(GraphMode::NonSigma, VertexConstraint::Ribbon), (GraphMode::Symmetric, VertexConstraint::Symmetric)]
        {
            for (legs, g, vmax) in [
                (set(&["a"]), 1, 2),
                (set(&["a", "b"]), 1, 2),
                (set(&["a", "b", "c"]), 0, 3),
                (BTreeSet::new(), 1, 3),
                (BTreeSet::new(), 0, 3),
                (set(&["a", "b"]), 0, 3),
            ] {
                let split = enumerate_levels(&legs, g, vmax, mode).concat();
                let brute = structured_search(&legs, g, vmax, &constraint);
                assert_eq!(split.len(), brute.len(), "{mode} legs={legs:?} g={g} vmax={vmax}");
                let a: HashSet<_> = split.into_iter().collect();
                let b: HashSet<_> = brute.into_iter().collect();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn every_class_has_the_requested_arity() {
        let legs = set(&["a", "b"]);
        for c in enumerate_graphs(&legs, 2, 3, &VertexConstraint::Ribbon) {
            let g = c.rep();
            assert!(g.validate().is_empty());
            assert_eq!(g.genus().unwrap(), 2);
            assert_eq!(g.leg_labels(), legs);
        }
    }

    #[test]
    fn degree_partitions_are_complete() {
        assert_eq!(degree_partitions(4, 2), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(degree_partitions(0, 1), vec![vec![0]]);
        assert!(degree_partitions(1, 2).is_empty());
    }
}
