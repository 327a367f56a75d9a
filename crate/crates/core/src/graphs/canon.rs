//! Canonical forms by individualization and refinement over flags.
//!
//! Flags are colored by local invariants, the coloring is refined along
//! `sigma`, the block successor and predecessor, and vertex membership until
//! stable, and the search branches on the first non-singleton cell. Every
//! discrete coloring is a flag order; the least byte encoding over all
//! leaves is the canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{GraphMode, NsGraph, Vertex};
use crate::orders::Label;

/// An isomorphism class of graphs with pinned leg labels.
#[derive(Clone)]
pub struct GraphClass {
    encoding: Vec<u8>,
    rep: NsGraph,
}

impl GraphClass {
    pub fn encoding(&self) -> &[u8] {
        &self.encoding
    }

    /// The canonical representative, flags in canonical order.
    pub fn rep(&self) -> &NsGraph {
        &self.rep
    }

    pub fn into_rep(self) -> NsGraph {
        self.rep
    }

    /// Hex digest of the encoding, stable across runs.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in &self.encoding {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

impl PartialEq for GraphClass {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}

impl Eq for GraphClass {}

impl PartialOrd for GraphClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

impl Hash for GraphClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.encoding.hash(state);
    }
}

impl fmt::Debug for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphClass({})", self.fingerprint())
    }
}

/// Canonical class up to isomorphisms fixing leg labels.
pub fn canonical(g: &NsGraph) -> GraphClass {
    Canon::new(g, true).run()
}

/// Canonical class up to isomorphisms that may also permute legs. Legs of
/// the representative are renamed `l0, l1, …` in canonical order.
pub fn canonical_unlabeled(g: &NsGraph) -> GraphClass {
    Canon::new(g, false).run()
}

pub fn are_isomorphic(a: &NsGraph, b: &NsGraph) -> bool {
    a.mode == b.mode
        && a.flag_count() == b.flag_count()
        && a.vertex_count() == b.vertex_count()
        && canonical(a) == canonical(b)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct FlagKey<'a> {
    label: Option<&'a Label>,
    is_leg: bool,
    genus: u32,
    tag: Option<&'a Label>,
    empties: usize,
    degree: usize,
    blocks: usize,
    block_len: usize,
}

struct Canon<'a> {
    g: &'a NsGraph,
    pinned: bool,
    vof: Vec<usize>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

/// Dense ranks of `keys`, ordered by key.
fn rank<K: Ord + Clone + Hash>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<&K, u32> = sorted.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
    (keys.iter().map(|k| index[k]).collect(), sorted.len())
}

impl<'a> Canon<'a> {
    fn new(g: &'a NsGraph, pinned: bool) -> Self {
        let f = g.flag_count();
        let vof = g.vertex_of();
        let (succ, pred) = match g.mode {
            GraphMode::NonSigma => {
                let succ = g.successors();
                let mut pred = vec![0; f];
                for h in 0..f {
                    pred[succ[h]] = h;
                }
                (succ, pred)
            }
            GraphMode::Symmetric => ((0..f).collect(), (0..f).collect()),
        };
        Canon { g, pinned, vof, succ, pred, best: None }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let g = self.g;
        let places = g.places();
        let keys: Vec<FlagKey> = (0..g.flag_count())
            .map(|h| {
                let v: &Vertex = &g.vertices[self.vof[h]];
                FlagKey {
                    label: if self.pinned { g.legs[h].as_ref() } else { None },
                    is_leg: g.sigma[h] == h,
                    genus: v.genus,
                    tag: v.tag.as_ref(),
                    empties: v.empties(),
                    degree: v.degree(),
                    blocks: v.b(),
                    block_len: v.blocks[places[h].block].len(),
                }
            })
            .collect();
        rank(&keys).0
    }

    /// Refines `colors` to the coarsest stable coloring below it; returns
    /// the number of cells.
    fn refine(&self, colors: &mut Vec<u32>) -> usize {
        let g = self.g;
        let f = g.flag_count();
        let (mut current, mut cells) = rank(colors);
        loop {
            let vsig: Vec<Vec<u32>> = g
                .vertices
                .iter()
                .map(|v| {
                    let mut s: Vec<u32> = v.flags().map(|h| current[h]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let (vrank, _) = rank(&vsig);
            let sigs: Vec<(u32, u32, u32, u32, u32)> = (0..f)
                .map(|h| {
                    (current[h], current[g.sigma[h]], current[self.succ[h]], current[self.pred[h]], vrank[self.vof[h]])
                })
                .collect();
            let (next, n) = rank(&sigs);
            current = next;
            if n == cells {
                break;
            }
            cells = n;
        }
        *colors = current;
        cells
    }

    fn run(mut self) -> GraphClass {
        let f = self.g.flag_count();
        let mut colors = self.initial_colors();
        if f == 0 {
            self.best = Some((self.encode(&[]), Vec::new()));
        } else {
            self.search(&mut colors);
        }
        let (encoding, pos) = self.best.take().expect("search visits at least one leaf");
        let rep = self.build_rep(&pos);
        GraphClass { encoding, rep }
    }

    fn search(&mut self, colors: &mut Vec<u32>) {
        let f = self.g.flag_count();
        let cells = self.refine(colors);
        if cells == f {
            let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let enc = self.encode(&pos);
            if self.best.as_ref().is_none_or(|(b, _)| enc < *b) {
                self.best = Some((enc, pos));
            }
            return;
        }
        let mut size = vec![0usize; cells];
        for &c in colors.iter() {
            size[c as usize] += 1;
        }
        let target = size.iter().position(|&s| s > 1).expect("non-discrete coloring") as u32;
        let members: Vec<usize> = (0..f).filter(|&h| colors[h] == target).collect();
        for h in members {
            let mut next: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[h] = 2 * target;
            self.search(&mut next);
        }
    }

    /// Vertex order induced by a flag order: by least flag position, with
    /// flagless vertices last.
    fn vertex_order(&self, pos: &[usize]) -> Vec<usize> {
        let g = self.g;
        let mut order: Vec<(usize, usize)> = g
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vert)| (vert.flags().map(|h| pos[h]).min().unwrap_or(usize::MAX), v))
            .collect();
        order.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let (x, y) = (&g.vertices[a.1], &g.vertices[b.1]);
                (x.genus, &x.tag, x.empties()).cmp(&(y.genus, &y.tag, y.empties()))
            })
        });
        order.into_iter().map(|(_, v)| v).collect()
    }

    fn encode(&self, pos: &[usize]) -> Vec<u8> {
        let g = self.g;
        let f = g.flag_count();
        let mut out = Vec::with_capacity(16 + 16 * f);
        out.push(match g.mode {
            GraphMode::NonSigma => 0,
            GraphMode::Symmetric => 1,
        });
        out.push(self.pinned as u8);
        put_u32(&mut out, f);
        put_u32(&mut out, g.vertices.len());
        let order = self.vertex_order(pos);
        let mut new_index = vec![0; g.vertices.len()];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
            let vert = &g.vertices[v];
            put_u32(&mut out, vert.genus as usize);
            put_label(&mut out, vert.tag.as_ref());
            match g.mode {
                GraphMode::NonSigma => {
                    put_u32(&mut out, vert.empties());
                    put_u32(&mut out, vert.b() - vert.empties());
                }
                GraphMode::Symmetric => put_u32(&mut out, vert.degree()),
            }
        }
        let mut inv = vec![0; f];
        for h in 0..f {
            inv[pos[h]] = h;
        }
        for &h in &inv {
            put_u32(&mut out, pos[g.sigma[h]]);
            put_u32(&mut out, new_index[self.vof[h]]);
            if g.mode == GraphMode::NonSigma {
                put_u32(&mut out, pos[self.succ[h]]);
            }
            if self.pinned {
                put_label(&mut out, g.legs[h].as_ref());
            }
        }
        out
    }

    fn build_rep(&self, pos: &[usize]) -> NsGraph {
        let g = self.g;
        let f = g.flag_count();
        let mut inv = vec![0; f];
        for h in 0..f {
            inv[pos[h]] = h;
        }
        let mut leg_no = 0;
        let legs: Vec<Option<Label>> = inv
            .iter()
            .map(|&h| {
                if self.pinned {
                    g.legs[h].clone()
                } else if g.sigma[h] == h {
                    leg_no += 1;
                    Some(Label::new(format!("l{}", leg_no - 1)))
                } else {
                    None
                }
            })
            .collect();
        let vertices: Vec<Vertex> = self
            .vertex_order(pos)
            .into_iter()
            .map(|v| {
                let vert = &g.vertices[v];
                let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(vert.b());
                match g.mode {
                    GraphMode::NonSigma => {
                        for b in vert.blocks.iter().filter(|b| !b.is_empty()) {
                            let mut nb: Vec<usize> = b.iter().map(|&h| pos[h]).collect();
                            let m = nb.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap_or(0);
                            nb.rotate_left(m);
                            blocks.push(nb);
                        }
                        blocks.sort_by_key(|b| b[0]);
                        blocks.extend(std::iter::repeat_with(Vec::new).take(vert.empties()));
                    }
                    GraphMode::Symmetric => {
                        let mut nb: Vec<usize> = vert.flags().map(|h| pos[h]).collect();
                        nb.sort_unstable();
                        blocks.push(nb);
                    }
                }
                Vertex { genus: vert.genus, blocks, tag: vert.tag.clone() }
            })
            .collect();
        let rep = NsGraph {
            mode: g.mode,
            names: inv.iter().map(|&h| g.names[h].clone()).collect(),
            sigma: inv.iter().map(|&h| pos[g.sigma[h]]).collect(),
            vertices,
            legs,
        };
        rep.with_port_names()
    }
}

fn put_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_le_bytes());
}

fn put_label(out: &mut Vec<u8>, l: Option<&Label>) {
    match l {
        None => out.push(0),
        Some(l) => {
            out.push(1);
            put_u32(out, l.as_str().len());
            out.extend_from_slice(l.as_str().as_bytes());
        }
    }
}
