//! Modular envelopes of the terminal cyclic operads: normal forms, the
//! move-closure verifier and component counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{canonical, enumerate_levels, GraphClass, GraphMode, NsGraph};
use crate::operads::FreeElement;
use crate::orders::{count_types, CyclicWord, Label, TypedArity};

/// An element of the envelope, identified by its arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EnvelopeClass {
    pub arity: TypedArity,
}

impl fmt::Display for EnvelopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arity)
    }
}

fn check_ribbon(g: &NsGraph) -> Result<()> {
    if g.mode() != GraphMode::NonSigma {
        return Err(Error::Unsupported("normal forms are defined for non-Sigma graphs".into()));
    }
    match g.vertices().iter().position(|v| v.genus != 0 || v.b() != 1) {
        Some(i) => Err(Error::NotRibbon(i)),
        None => Ok(()),
    }
}

/// The envelope class of a graph whose vertices are genus-0 one-block
/// corollas.
pub fn normal_form_graph(g: &NsGraph) -> Result<EnvelopeClass> {
    check_ribbon(g)?;
    Ok(EnvelopeClass { arity: g.arity()? })
}

pub fn normal_form(x: &FreeElement) -> Result<EnvelopeClass> {
    normal_form_graph(x.graph())
}

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// More components than types, but every component has a single
    /// normal form: the vertex bound may be too small to connect them.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeReport {
    pub n: usize,
    pub g: u32,
    pub vmax: usize,
    pub graphs: usize,
    pub components: usize,
    pub types: usize,
    pub pass: bool,
    pub mode: GraphMode,
    pub status: Status,
    /// Number of types the envelope should have.
    pub expected_types: u64,
    /// Components whose members have more than one normal form.
    pub mixed_components: usize,
}

impl EnvelopeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Leg labels `a, b, c, …` (then `l26, l27, …`).
pub fn leg_names(n: usize) -> BTreeSet<Label> {
    (0..n)
        .map(|i| if i < 26 { Label::new(((b'a' + i as u8) as char).to_string()) } else { Label::new(format!("l{i}")) })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Enumerates every terminal-generator graph with `n` legs, genus `g` and
/// at most `vmax` vertices, joins graphs related by one non-loop edge
/// contraction, and compares components with normal forms.
pub fn verify_envelope(n: usize, g: u32, vmax: usize, mode: GraphMode) -> EnvelopeReport {
    let levels = enumerate_levels(&leg_names(n), g, vmax, mode);
    verify_levels(&levels, n, g, vmax, mode)
}

/// [`verify_envelope`] on graphs already enumerated with
/// `enumerate_levels(&leg_names(n), g, vmax, mode)`.
pub fn verify_levels(levels: &[Vec<GraphClass>], n: usize, g: u32, vmax: usize, mode: GraphMode) -> EnvelopeReport {
    let all: Vec<&NsGraph> = levels.iter().flatten().map(|c| c.rep()).collect();
    let mut index: HashMap<&[u8], usize> = HashMap::new();
    for (i, c) in levels.iter().flatten().enumerate() {
        index.insert(c.encoding(), i);
    }
    let links: Vec<(usize, usize)> = all
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, gr)| {
            let mut out = Vec::new();
            for (h, _) in gr.edges() {
                if let Ok(c) = gr.contract_edge(h) {
                    let j = index[canonical(&c).encoding()];
                    out.push((i, j));
                }
            }
            out
        })
        .collect();
    let mut uf = UnionFind((0..all.len()).collect());
    for (i, j) in links {
        uf.union(i, j);
    }
    // Normal form: the arity in non-Σ mode, the genus alone in symmetric mode.
    let key = |gr: &NsGraph| -> String {
        match mode {
            GraphMode::NonSigma => normal_form_graph(gr).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string()),
            GraphMode::Symmetric => gr.genus().map(|g| g.to_string()).unwrap_or_else(|e| e.to_string()),
        }
    };
    let mut per_component: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    let mut types: BTreeSet<String> = BTreeSet::new();
    for (i, gr) in all.iter().enumerate() {
        let k = key(gr);
        types.insert(k.clone());
        per_component.entry(uf.find(i)).or_default().insert(k);
    }
    let components = per_component.len();
    let mixed = per_component.values().filter(|s| s.len() > 1).count();
    let expected = match mode {
        GraphMode::NonSigma => count_mod_ass(n, g),
        GraphMode::Symmetric => count_mod_com(n, g),
    };
    let status = if mixed > 0 || types.len() as u64 != expected {
        Status::Fail
    } else if components == types.len() {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    EnvelopeReport {
        n,
        g,
        vmax,
        graphs: all.len(),
        components,
        types: types.len(),
        pass: status == Status::Pass,
        mode,
        status,
        expected_types: expected,
        mixed_components: mixed,
    }
}

/// Dimension of the arity-`n`, genus-`g` component of the envelope of the
/// associative operad: the number of geometric multicyclic orders.
pub fn count_mod_ass(n: usize, g: u32) -> u64 {
    count_types(n, g).expect("count fits in u64")
}

/// Dimension of the arity-`n`, genus-`g` component of the envelope of the
/// commutative operad.
pub fn count_mod_com(_n: usize, _g: u32) -> u64 {
    1
}

/// A surface of geometric genus `geometric_genus` with one boundary circle
/// per component, each carrying its labels as teeth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSignature {
    pub geometric_genus: u32,
    pub boundaries: Vec<CyclicWord>,
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.boundaries.iter().map(ToString::to_string).collect();
        write!(f, "G={} boundaries=[{}]", self.geometric_genus, bs.join(" "))
    }
}

pub fn surface_signature(c: &EnvelopeClass) -> Result<SurfaceSignature> {
    Ok(SurfaceSignature {
        geometric_genus: c.arity.geometric_genus()?,
        boundaries: c.arity.stype.components().to_vec(),
    })
}
