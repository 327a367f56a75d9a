//! Cog wheels with arrow-decorated teeth, taken up to reflection.
//!
//! A wheel is a cyclic word with one arrow per label. `Fwd` points along
//! the cyclic order, `Bwd` against it. Reflection reverses the word and
//! flips every arrow; a wheel is stored as the lesser of its two
//! reflection-related encodings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orders::{cyclic_orders, groups, merge_cyclic, CyclicWord, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrow {
    Fwd,
    Bwd,
}

impl Arrow {
    pub fn flip(self) -> Arrow {
        match self {
            Arrow::Fwd => Arrow::Bwd,
            Arrow::Bwd => Arrow::Fwd,
        }
    }

    fn symbol(self) -> char {
        match self {
            Arrow::Fwd => '>',
            Arrow::Bwd => '<',
        }
    }
}

/// A nonempty decorated wheel in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralWheel {
    word: CyclicWord,
    arrows: Vec<Arrow>,
}

impl DihedralWheel {
    /// Builds the wheel whose teeth read `teeth` in cyclic order.
    pub fn new(teeth: Vec<(Label, Arrow)>) -> Result<Self> {
        if teeth.is_empty() {
            return Err(Error::Unsupported("wheels need at least one tooth".into()));
        }
        let (labels, arrows): (Vec<Label>, Vec<Arrow>) = teeth.into_iter().unzip();
        let word = CyclicWord::new(labels.clone())?;
        let by_label: BTreeMap<Label, Arrow> = labels.into_iter().zip(arrows).collect();
        Ok(Self::canonical(&word, &by_label))
    }

    fn canonical(word: &CyclicWord, arrows: &BTreeMap<Label, Arrow>) -> Self {
        let direct = DihedralWheel { word: word.clone(), arrows: word.labels().iter().map(|l| arrows[l]).collect() };
        let rev = word.reversed();
        let reflected = DihedralWheel { arrows: rev.labels().iter().map(|l| arrows[l].flip()).collect(), word: rev };
        direct.min(reflected)
    }

    pub fn word(&self) -> &CyclicWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.word.labels().iter().cloned().collect()
    }

    /// Teeth in the stored cyclic order.
    pub fn teeth(&self) -> Vec<(Label, Arrow)> {
        self.word.labels().iter().cloned().zip(self.arrows.iter().copied()).collect()
    }

    fn arrow_map(&self) -> BTreeMap<Label, Arrow> {
        self.teeth().into_iter().collect()
    }

    /// The reflected representative as raw teeth; equal to `self` as a wheel.
    pub fn reflected_teeth(&self) -> Vec<(Label, Arrow)> {
        self.teeth().into_iter().rev().map(|(l, a)| (l, a.flip())).collect()
    }

    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        let teeth = self.teeth().into_iter().map(|(l, a)| (map.get(&l).cloned().unwrap_or(l), a)).collect();
        Self::new(teeth)
    }
}

impl fmt::Display for DihedralWheel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.teeth().iter().map(|(l, a)| format!("{l}{}", a.symbol())).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl Serialize for DihedralWheel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `(a> b< c>)`.
pub fn parse_wheel(s: &str) -> Result<DihedralWheel> {
    let g = groups(s)?;
    if g.len() != 1 {
        return Err(Error::Parse(format!("expected one wheel, found {} groups", g.len())));
    }
    let teeth = g[0]
        .split_whitespace()
        .map(|t| {
            let (name, arrow) = if let Some(n) = t.strip_suffix('>') {
                (n, Arrow::Fwd)
            } else if let Some(n) = t.strip_suffix('<') {
                (n, Arrow::Bwd)
            } else {
                return Err(Error::Parse(format!("tooth `{t}` needs an arrow `>` or `<`")));
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("tooth `{t}` has no label")));
            }
            Ok((Label::new(name), arrow))
        })
        .collect::<Result<Vec<_>>>()?;
    DihedralWheel::new(teeth)
}

/// All wheels on `labels`.
pub fn enumerate_wheels(labels: &BTreeSet<Label>) -> Result<Vec<DihedralWheel>> {
    if labels.is_empty() {
        return Err(Error::Unsupported("no wheels on the empty set".into()));
    }
    let items: Vec<Label> = labels.iter().cloned().collect();
    let n = items.len();
    let mut out = BTreeSet::new();
    for word in cyclic_orders(&items) {
        for bits in 0u32..(1 << n) {
            let arrows: BTreeMap<Label, Arrow> = items
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), if bits >> i & 1 == 1 { Arrow::Bwd } else { Arrow::Fwd }))
                .collect();
            out.insert(DihedralWheel::canonical(&word, &arrows));
        }
    }
    Ok(out.into_iter().collect())
}

/// `2^{n-1} (n-1)!`, or `None` for `n = 0` and on overflow.
pub fn wheel_count(n: usize) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let mut f: u64 = 1;
    for k in 1..n as u64 {
        f = f.checked_mul(k)?;
    }
    f.checked_mul(1u64.checked_shl(n as u32 - 1)?)
}

/// Glues tooth `u` of `x` to tooth `v` of `y`. When the arrows at `u` and
/// `v` differ, `y` is reflected first so that the glued arrows oppose.
pub fn compose_wheels(x: &DihedralWheel, u: &Label, y: &DihedralWheel, v: &Label) -> Result<DihedralWheel> {
    let ax = x.arrow_map();
    let mut ay = y.arrow_map();
    let au = *ax.get(u).ok_or_else(|| Error::MissingLabel(u.clone()))?;
    let av = *ay.get(v).ok_or_else(|| Error::MissingLabel(v.clone()))?;
    if let Some(clash) = x.labels().intersection(&y.labels()).next() {
        return Err(Error::LabelClash(clash.clone()));
    }
    let yword = if au == av {
        y.word.clone()
    } else {
        for a in ay.values_mut() {
            *a = a.flip();
        }
        y.word.reversed()
    };
    let merged = merge_cyclic(&x.word, u, &yword, v)?;
    if merged.is_empty() {
        return Err(Error::Unsupported("gluing two one-tooth wheels leaves no teeth".into()));
    }
    let mut arrows = ax;
    arrows.extend(ay);
    Ok(DihedralWheel::canonical(&merged, &arrows))
}

/// Handle count `m`, crosscap count `u` and hole count `b` with
/// `g = 2m + b + u - 1` and `b ≥ 1`, ordered by `m` and then `b`.
pub fn nonorientable_signatures(g: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 0..=g / 2 {
        for b in 1..=g + 1 - 2 * m {
            let u = g + 1 - 2 * m - b;
            out.push((m, u, b));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct WheelAxiomReport {
    pub seed: u64,
    pub trials: usize,
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

fn random_wheel<R: Rng>(rng: &mut R, labels: Vec<Label>) -> DihedralWheel {
    let mut labels = labels;
    labels.shuffle(rng);
    let teeth = labels.into_iter().map(|l| (l, if rng.gen_bool(0.5) { Arrow::Fwd } else { Arrow::Bwd })).collect();
    DihedralWheel::new(teeth).expect("distinct labels")
}

/// Random instances of the cyclic-operad axioms (commutativity,
/// associativity, equivariance). Failures are findings about the
/// reflection convention and are reported rather than raised.
pub fn spot_check_axioms(trials: usize, max_teeth: usize, seed: u64) -> WheelAxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    let max_teeth = max_teeth.max(2);
    let names = |p: &str, k: usize| (0..k).map(|i| Label::new(format!("{p}{i}"))).collect::<Vec<_>>();
    let mut record = |name: &str, lhs: Result<DihedralWheel>, rhs: Result<DihedralWheel>, what: String| {
        *checked.entry(name.to_string()).or_insert(0) += 1;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Err(_), Err(_)) => {}
            (l, r) => failures.push(format!("{name}: {what}: {l:?} vs {r:?}")),
        }
    };
    for _ in 0..trials {
        let k = rng.gen_range(2..=max_teeth);
        let x = random_wheel(&mut rng, names("x", k));
        let k = rng.gen_range(2..=max_teeth);
        let y = random_wheel(&mut rng, names("y", k));
        let k = rng.gen_range(2..=max_teeth);
        let z = random_wheel(&mut rng, names("z", k));
        let pick = |w: &DihedralWheel, rng: &mut ChaCha8Rng| {
            let ls: Vec<Label> = w.labels().into_iter().collect();
            ls.choose_multiple(rng, 2).cloned().collect::<Vec<_>>()
        };
        let (xs, ys, zs) = (pick(&x, &mut rng), pick(&y, &mut rng), pick(&z, &mut rng));
        let what = format!("x={x} y={y} z={z}");
        record(
            "commutativity",
            compose_wheels(&x, &xs[0], &y, &ys[0]),
            compose_wheels(&y, &ys[0], &x, &xs[0]),
            what.clone(),
        );
        record(
            "associativity",
            compose_wheels(&x, &xs[0], &y, &ys[0]).and_then(|xy| compose_wheels(&xy, &ys[1], &z, &zs[0])),
            compose_wheels(&y, &ys[1], &z, &zs[0]).and_then(|yz| compose_wheels(&x, &xs[0], &yz, &ys[0])),
            what.clone(),
        );
        let all: Vec<Label> = x.labels().into_iter().chain(y.labels()).collect();
        let mut fresh = names("r", all.len());
        fresh.shuffle(&mut rng);
        let rho: BTreeMap<Label, Label> = all.into_iter().zip(fresh).collect();
        let r = |l: &Label| rho[l].clone();
        record(
            "equivariance",
            compose_wheels(&x, &xs[0], &y, &ys[0]).and_then(|w| w.relabel(&rho)),
            x.relabel(&rho)
                .and_then(|rx| y.relabel(&rho).and_then(|ry| compose_wheels(&rx, &r(&xs[0]), &ry, &r(&ys[0])))),
            what,
        );
    }
    WheelAxiomReport { seed, trials, checked, failures }
}
