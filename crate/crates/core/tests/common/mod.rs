//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nsmodop::graphs::{GraphMode, NsGraph, Vertex};
use nsmodop::orders::{geometric_b_g, CyclicWord, Label, MulticyclicType};
use rand::seq::SliceRandom;
use rand::Rng;

/// Backtracking search for a flag bijection `a → b` that respects the
/// involution, the vertices with their decorations and block orders, and
/// the leg labels (unless `unlabeled`).
pub fn isomorphic_by_search(a: &NsGraph, b: &NsGraph, unlabeled: bool) -> bool {
    if a.mode() != b.mode() || a.flag_count() != b.flag_count() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let mut phi = vec![usize::MAX; a.flag_count()];
    let mut used_v = vec![false; b.vertex_count()];
    search_vertex(a, b, unlabeled, 0, &mut phi, &mut used_v)
}

fn sizes(v: &Vertex) -> Vec<usize> {
    let mut s: Vec<usize> = v.blocks.iter().map(Vec::len).collect();
    s.sort_unstable();
    s
}

fn flag_ok(a: &NsGraph, b: &NsGraph, unlabeled: bool, phi: &[usize], h: usize) -> bool {
    let k = phi[h];
    if a.is_leg(h) != b.is_leg(k) {
        return false;
    }
    if !unlabeled && a.leg_label(h) != b.leg_label(k) {
        return false;
    }
    let s = a.sigma(h);
    phi[s] == usize::MAX || phi[s] == b.sigma(k)
}

fn search_vertex(a: &NsGraph, b: &NsGraph, unl: bool, i: usize, phi: &mut Vec<usize>, used_v: &mut Vec<bool>) -> bool {
    if i == a.vertex_count() {
        return true;
    }
    let va = &a.vertices()[i];
    for j in 0..b.vertex_count() {
        let vb = &b.vertices()[j];
        if used_v[j] || va.genus != vb.genus || va.tag != vb.tag || sizes(va) != sizes(vb) {
            continue;
        }
        used_v[j] = true;
        let found = match a.mode() {
            GraphMode::NonSigma => {
                let mut used_b = vec![false; vb.blocks.len()];
                search_block(a, b, unl, i, j, 0, &mut used_b, phi, used_v)
            }
            GraphMode::Symmetric => {
                let fa: Vec<usize> = va.flags().collect();
                let fb: Vec<usize> = vb.flags().collect();
                let mut used_f = vec![false; fb.len()];
                search_flags(a, b, unl, i, &fa, &fb, 0, &mut used_f, phi, used_v)
            }
        };
        if found {
            return true;
        }
        used_v[j] = false;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn search_block(
    a: &NsGraph,
    b: &NsGraph,
    unl: bool,
    i: usize,
    j: usize,
    k: usize,
    used_b: &mut Vec<bool>,
    phi: &mut Vec<usize>,
    used_v: &mut Vec<bool>,
) -> bool {
    let va = &a.vertices()[i];
    let vb = &b.vertices()[j];
    if k == va.blocks.len() {
        return search_vertex(a, b, unl, i + 1, phi, used_v);
    }
    let wa = &va.blocks[k];
    for (m, wb) in vb.blocks.iter().enumerate() {
        if used_b[m] || wb.len() != wa.len() {
            continue;
        }
        let rotations = wa.len().max(1);
        for r in 0..rotations {
            for (t, &h) in wa.iter().enumerate() {
                phi[h] = wb[(t + r) % wb.len()];
            }
            if wa.iter().all(|&h| flag_ok(a, b, unl, phi, h)) {
                used_b[m] = true;
                if search_block(a, b, unl, i, j, k + 1, used_b, phi, used_v) {
                    return true;
                }
                used_b[m] = false;
            }
            for &h in wa {
                phi[h] = usize::MAX;
            }
            if wa.is_empty() {
                break;
            }
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn search_flags(
    a: &NsGraph,
    b: &NsGraph,
    unl: bool,
    i: usize,
    fa: &[usize],
    fb: &[usize],
    t: usize,
    used_f: &mut Vec<bool>,
    phi: &mut Vec<usize>,
    used_v: &mut Vec<bool>,
) -> bool {
    if t == fa.len() {
        return search_vertex(a, b, unl, i + 1, phi, used_v);
    }
    for m in 0..fb.len() {
        if used_f[m] {
            continue;
        }
        phi[fa[t]] = fb[m];
        if flag_ok(a, b, unl, phi, fa[t]) {
            used_f[m] = true;
            if search_flags(a, b, unl, i, fa, fb, t + 1, used_f, phi, used_v) {
                return true;
            }
            used_f[m] = false;
        }
        phi[fa[t]] = usize::MAX;
    }
    false
}

/// The same graph with flags renumbered and renamed, blocks rotated and
/// reordered, and vertices reordered.
pub fn scramble<R: Rng>(g: &NsGraph, rng: &mut R) -> NsGraph {
    let f = g.flag_count();
    let mut perm: Vec<usize> = (0..f).collect();
    perm.shuffle(rng);
    let names: Vec<Label> = {
        let mut out = vec![Label::new(""); f];
        for h in 0..f {
            out[perm[h]] = Label::new(format!("s{}_{}", perm[h], rng.gen_range(0..1000)));
        }
        out
    };
    let mut sigma = vec![0; f];
    let mut legs = vec![None; f];
    for h in 0..f {
        sigma[perm[h]] = perm[g.sigma(h)];
        legs[perm[h]] = g.leg_label(h).cloned();
    }
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|v| {
            let mut blocks: Vec<Vec<usize>> = v
                .blocks
                .iter()
                .map(|b| {
                    let mut nb: Vec<usize> = b.iter().map(|&h| perm[h]).collect();
                    if !nb.is_empty() {
                        let r = rng.gen_range(0..nb.len());
                        nb.rotate_left(r);
                    }
                    if g.mode() == GraphMode::Symmetric {
                        nb.shuffle(rng);
                    }
                    nb
                })
                .collect();
            blocks.shuffle(rng);
            let mut nv = Vertex::new(v.genus, blocks);
            nv.tag = v.tag.clone();
            nv
        })
        .collect();
    vertices.shuffle(rng);
    NsGraph::from_parts(g.mode(), names, sigma, vertices, legs).expect("scrambling keeps validity")
}

/// All multicyclic orders on `labels` with `g` geometric, by brute force:
/// every map from labels to `b` component slots, every order inside each
/// slot, canonicalized through the public constructor.
pub fn brute_force_types(labels: &[Label], g: u32) -> BTreeSet<MulticyclicType> {
    let n = labels.len();
    let mut out = BTreeSet::new();
    for b in 1..=(g as usize + 1) {
        if !geometric_b_g(b, g) {
            continue;
        }
        let total = b.pow(n as u32);
        for code in 0..total {
            let mut slots: Vec<Vec<Label>> = vec![Vec::new(); b];
            let mut c = code;
            for l in labels {
                slots[c % b].push(l.clone());
                c /= b;
            }
            let mut acc: Vec<Vec<Vec<Label>>> = vec![Vec::new()];
            for slot in &slots {
                let perms = permutations(slot);
                let mut next = Vec::new();
                for prefix in &acc {
                    for p in &perms {
                        let mut x = prefix.clone();
                        x.push(p.clone());
                        next.push(x);
                    }
                }
                acc = next;
            }
            for words in acc {
                let comps = words.into_iter().map(|w| CyclicWord::new(w).unwrap()).collect();
                out.insert(MulticyclicType::new(comps).unwrap());
            }
        }
    }
    out
}

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Least presentation of an arrow-decorated cyclic arrangement over all
/// rotations, and over reversal with every arrow flipped.
pub fn wheel_canon(teeth: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let n = teeth.len();
    let reflected: Vec<(usize, bool)> = teeth.iter().rev().map(|&(l, a)| (l, !a)).collect();
    let mut best = teeth.to_vec();
    for base in [teeth, &reflected[..]] {
        for r in 0..n {
            let mut rot = base.to_vec();
            rot.rotate_left(r);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Classes of arrow-decorated arrangements of `0..n`, by brute force over
/// permutations and arrow patterns.
pub fn brute_force_wheels(n: usize) -> BTreeSet<Vec<(usize, bool)>> {
    let items: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::new();
    for p in permutations(&items) {
        for bits in 0u32..(1 << n) {
            let teeth: Vec<(usize, bool)> = p.iter().map(|&l| (l, bits >> l & 1 == 1)).collect();
            seen.insert(wheel_canon(&teeth));
        }
    }
    seen
}

pub fn label_set(n: usize) -> BTreeSet<Label> {
    (0..n).map(|i| Label::new(format!("l{i}"))).collect()
}

pub fn counts_by<T, K: Ord>(items: &[T], key: impl Fn(&T) -> K) -> BTreeMap<K, usize> {
    let mut out = BTreeMap::new();
    for x in items {
        *out.entry(key(x)).or_insert(0) += 1;
    }
    out
}
