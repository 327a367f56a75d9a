//! Flag graphs with an involution and a vertex partition, decorated by a
//! multicyclic order and a genus at every vertex.
//!
//! Flags are indexed `0..F`. Each flag has a name (unique within the graph)
//! and, when it is a leg, an external label. Edges are the 2-cycles of
//! `sigma`, legs its fixed points. In non-Σ mode a vertex stores its flags as
//! a list of cyclic blocks, empty blocks included; in symmetric mode it
//! stores a single unordered block.

mod canon;
mod enumerate;
mod json;
pub mod random;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orders::{CyclicWord, Label, MulticyclicType, TypedArity};

pub use canon::{are_isomorphic, canonical, canonical_unlabeled, GraphClass};
pub use enumerate::{
    enumerate_graphs, enumerate_levels, expansions, one_vertex_graphs, structured_search, VertexConstraint, VertexShape,
};
pub use json::{graph_from_json, graph_from_json_unchecked, graph_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    #[serde(alias = "non-sigma", alias = "ribbon")]
    NonSigma,
    Symmetric,
}

impl fmt::Display for GraphMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphMode::NonSigma => "nonsigma",
            GraphMode::Symmetric => "symmetric",
        })
    }
}

impl std::str::FromStr for GraphMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonsigma" | "non-sigma" | "ribbon" => Ok(GraphMode::NonSigma),
            "symmetric" => Ok(GraphMode::Symmetric),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub genus: u32,
    /// Cyclic blocks of flag indices. Symmetric vertices have exactly one
    /// block whose order carries no meaning.
    pub blocks: Vec<Vec<usize>>,
    /// Generator id for decorated graphs.
    pub tag: Option<Label>,
}

impl Vertex {
    pub fn new(genus: u32, blocks: Vec<Vec<usize>>) -> Self {
        Vertex { genus, blocks, tag: None }
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn flags(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flatten().copied()
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn empties(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_empty()).count()
    }

    /// `(g_v + 1 - b_v) / 2` is a natural number.
    pub fn is_geometric(&self) -> bool {
        crate::orders::geometric_b_g(self.b(), self.genus)
    }
}

/// One violated structural invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    NoVertices,
    NotInvolution { flag: Label },
    Uncovered { flag: Label },
    Repeated { flag: Label },
    Disconnected,
    UnlabeledLeg { flag: Label },
    LabeledEdge { flag: Label },
    DuplicateLegLabel { label: Label },
    DuplicateFlagName { flag: Label },
    NoBlocks { vertex: usize },
    SymmetricBlocks { vertex: usize },
    BadIndex { vertex: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoVertices => write!(f, "graph has no vertices"),
            Diagnostic::NotInvolution { flag } => write!(f, "sigma is not an involution at `{flag}`"),
            Diagnostic::Uncovered { flag } => write!(f, "flag `{flag}` belongs to no vertex"),
            Diagnostic::Repeated { flag } => write!(f, "flag `{flag}` occurs in more than one block"),
            Diagnostic::Disconnected => write!(f, "disconnected"),
            Diagnostic::UnlabeledLeg { flag } => write!(f, "leg `{flag}` has no external label"),
            Diagnostic::LabeledEdge { flag } => write!(f, "flag `{flag}` lies on an edge but carries a leg label"),
            Diagnostic::DuplicateLegLabel { label } => write!(f, "leg label `{label}` is used twice"),
            Diagnostic::DuplicateFlagName { flag } => write!(f, "flag name `{flag}` is used twice"),
            Diagnostic::NoBlocks { vertex } => write!(f, "vertex {vertex} has no blocks"),
            Diagnostic::SymmetricBlocks { vertex } => {
                write!(f, "symmetric vertex {vertex} must have exactly one block")
            }
            Diagnostic::BadIndex { vertex } => write!(f, "vertex {vertex} refers to a missing flag"),
        }
    }
}

/// A connected flag graph with per-vertex decorations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NsGraph {
    pub(crate) mode: GraphMode,
    pub(crate) names: Vec<Label>,
    pub(crate) sigma: Vec<usize>,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) legs: Vec<Option<Label>>,
}

/// Where a flag sits: vertex, block, index inside the block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Place {
    pub vertex: usize,
    pub block: usize,
    pub index: usize,
}

impl NsGraph {
    /// Builds and validates a graph.
    pub fn from_parts(
        mode: GraphMode,
        names: Vec<Label>,
        sigma: Vec<usize>,
        vertices: Vec<Vertex>,
        legs: Vec<Option<Label>>,
    ) -> Result<Self> {
        let g = Self::from_parts_unchecked(mode, names, sigma, vertices, legs);
        g.check()?;
        Ok(g)
    }

    /// Builds a graph without validation; `validate` reports what is wrong.
    pub fn from_parts_unchecked(
        mode: GraphMode,
        names: Vec<Label>,
        sigma: Vec<usize>,
        vertices: Vec<Vertex>,
        legs: Vec<Option<Label>>,
    ) -> Self {
        NsGraph { mode, names, sigma, vertices, legs }
    }

    /// One vertex whose blocks are the components of `stype`; every flag is
    /// a leg named after its label.
    pub fn corolla(stype: &MulticyclicType, genus: u32) -> Self {
        let mut names = Vec::new();
        let mut blocks = Vec::new();
        for c in stype.components() {
            let mut block = Vec::new();
            for l in c.labels() {
                block.push(names.len());
                names.push(l.clone());
            }
            blocks.push(block);
        }
        let n = names.len();
        NsGraph {
            mode: GraphMode::NonSigma,
            legs: names.iter().cloned().map(Some).collect(),
            names,
            sigma: (0..n).collect(),
            vertices: vec![Vertex::new(genus, blocks)],
        }
    }

    /// Genus-0 corolla with a single cyclic block.
    pub fn cyclic_corolla(word: &CyclicWord) -> Self {
        Self::corolla(&MulticyclicType::cyclic(word.clone()), 0)
    }

    /// One symmetric vertex carrying `labels` as legs.
    pub fn symmetric_corolla(labels: &BTreeSet<Label>, genus: u32) -> Self {
        let names: Vec<Label> = labels.iter().cloned().collect();
        let n = names.len();
        NsGraph {
            mode: GraphMode::Symmetric,
            legs: names.iter().cloned().map(Some).collect(),
            names,
            sigma: (0..n).collect(),
            vertices: vec![Vertex::new(genus, vec![(0..n).collect()])],
        }
    }

    pub fn with_tag(mut self, tag: &Label) -> Self {
        for v in &mut self.vertices {
            v.tag = Some(tag.clone());
        }
        self
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn flag_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, h: usize) -> &Label {
        &self.names[h]
    }

    pub fn names(&self) -> &[Label] {
        &self.names
    }

    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h]
    }

    pub fn leg_label(&self, h: usize) -> Option<&Label> {
        self.legs[h].as_ref()
    }

    pub fn flag_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|l| l.as_str() == name)
    }

    /// The flag carrying external label `label`.
    pub fn leg_flag(&self, label: &Label) -> Option<usize> {
        self.legs.iter().position(|l| l.as_ref() == Some(label))
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.sigma[h] == h
    }

    pub fn leg_flags(&self) -> Vec<usize> {
        (0..self.flag_count()).filter(|&h| self.is_leg(h)).collect()
    }

    pub fn leg_labels(&self) -> BTreeSet<Label> {
        self.legs.iter().flatten().cloned().collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.flag_count()).filter(|&h| self.sigma[h] > h).count()
    }

    /// Edges as flag pairs `(h, sigma(h))` with `h < sigma(h)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.flag_count()).filter(|&h| self.sigma[h] > h).map(|h| (h, self.sigma[h])).collect()
    }

    pub(crate) fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.flag_count()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for h in vert.flags() {
                out[h] = v;
            }
        }
        out
    }

    pub(crate) fn places(&self) -> Vec<Place> {
        let mut out = vec![Place { vertex: usize::MAX, block: 0, index: 0 }; self.flag_count()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for (b, block) in vert.blocks.iter().enumerate() {
                for (i, &h) in block.iter().enumerate() {
                    out[h] = Place { vertex: v, block: b, index: i };
                }
            }
        }
        out
    }

    /// Cyclic successor of every flag inside its block.
    pub(crate) fn successors(&self) -> Vec<usize> {
        let mut out = vec![0; self.flag_count()];
        for vert in &self.vertices {
            for block in &vert.blocks {
                for (i, &h) in block.iter().enumerate() {
                    out[h] = block[(i + 1) % block.len()];
                }
            }
        }
        out
    }

    /// Every violated structural invariant. Empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let f = self.flag_count();
        if self.vertices.is_empty() {
            out.push(Diagnostic::NoVertices);
        }
        let mut seen_names = HashSet::new();
        for name in &self.names {
            if !seen_names.insert(name) {
                out.push(Diagnostic::DuplicateFlagName { flag: name.clone() });
            }
        }
        let mut involutive = true;
        for h in 0..f {
            let s = self.sigma.get(h).copied().unwrap_or(usize::MAX);
            if s >= f || self.sigma[s] != h {
                out.push(Diagnostic::NotInvolution { flag: self.names[h].clone() });
                involutive = false;
            }
        }
        let mut count = vec![0usize; f];
        let mut indices_ok = true;
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.blocks.is_empty() {
                out.push(Diagnostic::NoBlocks { vertex: v });
            }
            if self.mode == GraphMode::Symmetric && vert.blocks.len() != 1 {
                out.push(Diagnostic::SymmetricBlocks { vertex: v });
            }
            for h in vert.flags() {
                if h >= f {
                    out.push(Diagnostic::BadIndex { vertex: v });
                    indices_ok = false;
                } else {
                    count[h] += 1;
                }
            }
        }
        for (h, c) in count.iter().enumerate() {
            match c {
                0 => out.push(Diagnostic::Uncovered { flag: self.names[h].clone() }),
                1 => {}
                _ => out.push(Diagnostic::Repeated { flag: self.names[h].clone() }),
            }
        }
        if involutive {
            let mut labels = HashSet::new();
            for h in 0..f {
                match (&self.legs.get(h).cloned().flatten(), self.sigma[h] == h) {
                    (None, true) => out.push(Diagnostic::UnlabeledLeg { flag: self.names[h].clone() }),
                    (Some(_), false) => out.push(Diagnostic::LabeledEdge { flag: self.names[h].clone() }),
                    (Some(l), true) => {
                        if !labels.insert(l.clone()) {
                            out.push(Diagnostic::DuplicateLegLabel { label: l.clone() });
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        let structural_ok = involutive && indices_ok && count.iter().all(|&c| c == 1);
        if structural_ok && !self.vertices.is_empty() && !self.is_connected() {
            out.push(Diagnostic::Disconnected);
        }
        out
    }

    pub(crate) fn check(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = diags.iter().map(ToString::to_string).collect();
            Err(Error::InvalidGraph(msgs.join("; ")))
        }
    }

    /// Assumes a structurally valid partition and involution.
    pub fn is_connected(&self) -> bool {
        let v = self.vertices.len();
        if v == 0 {
            return false;
        }
        let vof = self.vertex_of();
        let mut seen = vec![false; v];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for h in self.vertices[x].flags() {
                let y = vof[self.sigma[h]];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// First Betti number `E - V + 1`.
    pub fn betti(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::InvalidGraph("disconnected".into()));
        }
        Ok((self.edge_count() + 1 - self.vertex_count()) as u32)
    }

    /// `betti + Σ g_v`.
    pub fn genus(&self) -> Result<u32> {
        Ok(self.betti()? + self.vertices.iter().map(|v| v.genus).sum::<u32>())
    }

    fn require_nonsigma(&self, what: &str) -> Result<()> {
        if self.mode == GraphMode::Symmetric {
            return Err(Error::Unsupported(format!("{what} needs a non-Sigma graph")));
        }
        Ok(())
    }

    /// Cycles of `h ↦ succ(sigma(h))`, each starting at its least flag, in
    /// order of that flag.
    pub fn face_cycles(&self) -> Result<Vec<Vec<usize>>> {
        self.require_nonsigma("face tracing")?;
        let succ = self.successors();
        let f = self.flag_count();
        let mut seen = vec![false; f];
        let mut out = Vec::new();
        for start in 0..f {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = succ[self.sigma[h]];
            }
            out.push(cycle);
        }
        Ok(out)
    }

    /// Faces as sequences of flag names.
    pub fn faces(&self) -> Result<Vec<Vec<Label>>> {
        Ok(self.face_cycles()?.into_iter().map(|c| c.into_iter().map(|h| self.names[h].clone()).collect()).collect())
    }

    /// The induced multicyclic order on legs: one component per face, plus
    /// one empty component per empty vertex block.
    pub fn leg_type(&self) -> Result<MulticyclicType> {
        let mut comps: Vec<CyclicWord> = self
            .face_cycles()?
            .into_iter()
            .map(|c| CyclicWord::from_distinct(c.into_iter().filter_map(|h| self.legs[h].clone()).collect()))
            .collect();
        let empties: usize = self.vertices.iter().map(Vertex::empties).sum();
        comps.extend(std::iter::repeat_with(CyclicWord::empty).take(empties));
        MulticyclicType::new(comps)
    }

    /// Number of boundary components `b(Γ)`.
    pub fn boundary_count(&self) -> Result<usize> {
        Ok(self.leg_type()?.b())
    }

    pub fn arity(&self) -> Result<TypedArity> {
        Ok(TypedArity::new(self.leg_type()?, self.genus()?))
    }

    /// Every vertex satisfies `(g_v + 1 - b_v)/2 ∈ ℕ`. Symmetric vertices
    /// carry no block structure and always pass.
    pub fn is_geometric_graph(&self) -> bool {
        self.mode == GraphMode::Symmetric || self.vertices.iter().all(Vertex::is_geometric)
    }

    fn leg_checked(&self, label: &Label) -> Result<usize> {
        self.leg_flag(label).ok_or_else(|| Error::NotALeg(label.clone()))
    }

    /// Disjoint union of `self` and `other` with `sigma(u) = v`. Flags of
    /// `other` whose names clash with flags of `self` are renamed.
    pub fn graft(&self, u: &Label, other: &NsGraph, v: &Label) -> Result<NsGraph> {
        if self.mode != other.mode {
            return Err(Error::Unsupported("grafting graphs of different modes".into()));
        }
        let hu = self.leg_checked(u)?;
        let hv = other.leg_checked(v)?;
        let mine = self.leg_labels();
        if let Some(clash) = other.legs.iter().flatten().find(|l| mine.contains(*l)) {
            return Err(Error::LabelClash(clash.clone()));
        }
        let off = self.flag_count();
        let mut taken: HashSet<Label> = self.names.iter().chain(other.names.iter()).cloned().collect();
        let own: HashSet<&Label> = self.names.iter().collect();
        let mut names = self.names.clone();
        for name in &other.names {
            if own.contains(name) {
                let fresh = fresh_name(name, &taken);
                taken.insert(fresh.clone());
                names.push(fresh);
            } else {
                names.push(name.clone());
            }
        }
        let mut sigma = self.sigma.clone();
        sigma.extend(other.sigma.iter().map(|&s| s + off));
        sigma[hu] = hv + off;
        sigma[hv + off] = hu;
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        legs[hu] = None;
        legs[hv + off] = None;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|vert| Vertex {
            genus: vert.genus,
            blocks: vert.blocks.iter().map(|b| b.iter().map(|h| h + off).collect()).collect(),
            tag: vert.tag.clone(),
        }));
        Ok(NsGraph { mode: self.mode, names, sigma, vertices, legs })
    }

    /// Joins two legs of `self` into an edge.
    pub fn self_glue(&self, u: &Label, v: &Label) -> Result<NsGraph> {
        if u == v {
            return Err(Error::InvalidGlue(format!("cannot glue `{u}` to itself")));
        }
        let hu = self.leg_checked(u)?;
        let hv = self.leg_checked(v)?;
        let mut g = self.clone();
        g.sigma[hu] = hv;
        g.sigma[hv] = hu;
        g.legs[hu] = None;
        g.legs[hv] = None;
        Ok(g)
    }

    /// Drops the flags in `gone` and renumbers the rest.
    fn without_flags(&self, gone: &[usize], vertices: Vec<Vertex>) -> NsGraph {
        let f = self.flag_count();
        let mut map = vec![usize::MAX; f];
        let mut next = 0;
        for (h, slot) in map.iter_mut().enumerate() {
            if !gone.contains(&h) {
                *slot = next;
                next += 1;
            }
        }
        let keep = |h: &usize| !gone.contains(h);
        NsGraph {
            mode: self.mode,
            names: (0..f).filter(keep).map(|h| self.names[h].clone()).collect(),
            sigma: (0..f).filter(keep).map(|h| map[self.sigma[h]]).collect(),
            legs: (0..f).filter(keep).map(|h| self.legs[h].clone()).collect(),
            vertices: vertices
                .into_iter()
                .map(|v| Vertex {
                    genus: v.genus,
                    blocks: v.blocks.iter().map(|b| b.iter().map(|&h| map[h]).collect()).collect(),
                    tag: v.tag,
                })
                .collect(),
        }
    }

    fn edge_at(&self, h: usize) -> Result<usize> {
        if h >= self.flag_count() {
            return Err(Error::NoSuchEdge(Label::new(format!("#{h}"))));
        }
        let s = self.sigma[h];
        if s == h {
            return Err(Error::NoSuchEdge(self.names[h].clone()));
        }
        Ok(s)
    }

    /// Contracts the non-loop edge through flag `h`, merging its two end
    /// vertices. Tags survive only when both ends agree.
    pub fn contract_edge(&self, h: usize) -> Result<NsGraph> {
        let s = self.edge_at(h)?;
        let places = self.places();
        let (ph, ps) = (places[h], places[s]);
        if ph.vertex == ps.vertex {
            return Err(Error::IsALoop(self.names[h].clone()));
        }
        let (va, vb) = (&self.vertices[ph.vertex], &self.vertices[ps.vertex]);
        let blocks = match self.mode {
            GraphMode::NonSigma => {
                let wa = &va.blocks[ph.block];
                let wb = &vb.blocks[ps.block];
                let mut merged: Vec<usize> = wa[ph.index + 1..].to_vec();
                merged.extend_from_slice(&wa[..ph.index]);
                merged.extend_from_slice(&wb[ps.index + 1..]);
                merged.extend_from_slice(&wb[..ps.index]);
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                blocks.extend(va.blocks.iter().enumerate().filter(|(i, _)| *i != ph.block).map(|(_, b)| b.clone()));
                blocks.extend(vb.blocks.iter().enumerate().filter(|(i, _)| *i != ps.block).map(|(_, b)| b.clone()));
                blocks.push(merged);
                blocks
            }
            GraphMode::Symmetric => {
                vec![va.flags().chain(vb.flags()).filter(|&x| x != h && x != s).collect()]
            }
        };
        let tag = if va.tag == vb.tag { va.tag.clone() } else { None };
        let merged = Vertex { genus: va.genus + vb.genus, blocks, tag };
        let (lo, hi) = if ph.vertex < ps.vertex { (ph.vertex, ps.vertex) } else { (ps.vertex, ph.vertex) };
        let mut vertices = self.vertices.clone();
        vertices[lo] = merged;
        vertices.remove(hi);
        Ok(self.without_flags(&[h, s], vertices))
    }

    /// Contracts the loop through flag `h`: the vertex genus goes up by one
    /// and its blocks are cut at the two half-edges.
    pub fn contract_loop(&self, h: usize) -> Result<NsGraph> {
        let s = match self.edge_at(h) {
            Ok(s) => s,
            Err(_) if h < self.flag_count() => return Err(Error::NotALoop(self.names[h].clone())),
            Err(e) => return Err(e),
        };
        let places = self.places();
        let (ph, ps) = (places[h], places[s]);
        if ph.vertex != ps.vertex {
            return Err(Error::NotALoop(self.names[h].clone()));
        }
        let vert = &self.vertices[ph.vertex];
        let blocks = match self.mode {
            GraphMode::NonSigma => {
                let mut blocks: Vec<Vec<usize>> = vert
                    .blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != ph.block && *i != ps.block)
                    .map(|(_, b)| b.clone())
                    .collect();
                if ph.block == ps.block {
                    let w = &vert.blocks[ph.block];
                    let m = w.len();
                    let mut first = Vec::new();
                    let mut k = (ph.index + 1) % m;
                    while k != ps.index {
                        first.push(w[k]);
                        k = (k + 1) % m;
                    }
                    let mut second = Vec::new();
                    let mut k = (ps.index + 1) % m;
                    while k != ph.index {
                        second.push(w[k]);
                        k = (k + 1) % m;
                    }
                    blocks.push(first);
                    blocks.push(second);
                } else {
                    let wa = &vert.blocks[ph.block];
                    let wb = &vert.blocks[ps.block];
                    let mut merged: Vec<usize> = wa[ph.index + 1..].to_vec();
                    merged.extend_from_slice(&wa[..ph.index]);
                    merged.extend_from_slice(&wb[ps.index + 1..]);
                    merged.extend_from_slice(&wb[..ps.index]);
                    blocks.push(merged);
                }
                blocks
            }
            GraphMode::Symmetric => vec![vert.flags().filter(|&x| x != h && x != s).collect()],
        };
        let mut vertices = self.vertices.clone();
        vertices[ph.vertex] = Vertex { genus: vert.genus + 1, blocks, tag: vert.tag.clone() };
        Ok(self.without_flags(&[h, s], vertices))
    }

    /// Renames external leg labels; fails if `f` is not injective on legs.
    pub fn relabel_legs(&self, f: impl Fn(&Label) -> Label) -> Result<NsGraph> {
        let mut g = self.clone();
        let mut seen = HashSet::new();
        for slot in g.legs.iter_mut() {
            if let Some(l) = slot {
                let new = f(l);
                if !seen.insert(new.clone()) {
                    return Err(Error::LabelClash(new));
                }
                *slot = Some(new);
            }
        }
        Ok(g)
    }

    /// Renames leg labels through a map; labels missing from the map stay.
    pub fn relabel_legs_with(&self, map: &BTreeMap<Label, Label>) -> Result<NsGraph> {
        self.relabel_legs(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
    }

    /// Renames every flag: legs after their external label, internal flags
    /// `h0, h1, …` with a prefix chosen to avoid the leg labels.
    pub fn with_port_names(&self) -> NsGraph {
        let leg_labels: HashSet<&str> = self.legs.iter().flatten().map(Label::as_str).collect();
        let mut prefix = String::from("h");
        let clashes = |p: &str| {
            leg_labels.iter().any(|l| {
                l.strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
            })
        };
        while clashes(&prefix) {
            prefix.push('_');
        }
        let mut g = self.clone();
        let mut k = 0;
        for h in 0..g.flag_count() {
            g.names[h] = match &g.legs[h] {
                Some(l) => l.clone(),
                None => {
                    k += 1;
                    Label::new(format!("{prefix}{}", k - 1))
                }
            };
        }
        g
    }

    /// Per-vertex description used in diagnostics and text output.
    pub fn vertex_summary(&self, v: usize) -> String {
        let vert = &self.vertices[v];
        let blocks: Vec<String> = vert
            .blocks
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&h| self.names[h].as_str()).collect();
                format!("({})", names.join(" "))
            })
            .collect();
        let tag = vert.tag.as_ref().map(|t| format!(" [{t}]")).unwrap_or_default();
        format!("v{v}{tag}: g={} {{{}}}", vert.genus, blocks.join(" "))
    }
}

fn fresh_name(base: &Label, taken: &HashSet<Label>) -> Label {
    let mut s = base.as_str().to_string();
    loop {
        s.push('\'');
        let l = Label::new(&s);
        if !taken.contains(&l) {
            return l;
        }
    }
}

#[cfg(test)]
mod tests;
