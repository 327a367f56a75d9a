//! Cyclic and multicyclic orders on finite label sets.
//!
//! A [`CyclicWord`] stores a total cyclic order by its least rotation.
//! Because labels inside one word are distinct, the least rotation is the
//! one starting at the smallest label, so canonicalization is linear.
//!
//! A [`MulticyclicType`] is an unordered multiset of cyclic words over
//! pairwise disjoint label sets. Empty components are kept and counted.

mod enumerate;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use enumerate::{count_types, cyclic_orders, enumerate_types};
pub(crate) use text::groups;
pub use text::{parse_cyclic_word, parse_linear_word, parse_multicyclic_type, parse_typed_arity};

/// An opaque, totally ordered identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: impl AsRef<str>) -> Self {
        Label(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(Arc::from(s))
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer).map(Label::from)
    }
}

/// Builds labels from string slices; handy in tests and examples.
pub fn labels(names: &[&str]) -> Vec<Label> {
    names.iter().map(Label::new).collect()
}

fn first_duplicate(seq: &[Label]) -> Option<&Label> {
    let mut seen = BTreeSet::new();
    seq.iter().find(|l| !seen.insert(*l))
}

/// A linearly ordered sequence of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearWord(Vec<Label>);

impl LinearWord {
    pub fn new(seq: Vec<Label>) -> Result<Self> {
        if let Some(dup) = first_duplicate(&seq) {
            return Err(Error::InvalidWord(dup.clone()));
        }
        Ok(LinearWord(seq))
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Moves the first `k` letters to the back.
    pub fn rotate(&self, k: usize) -> LinearWord {
        let mut seq = self.0.clone();
        if !seq.is_empty() {
            let k = k % seq.len();
            seq.rotate_left(k);
        }
        LinearWord(seq)
    }
}

/// A total cyclic order, stored as its lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct CyclicWord(Vec<Label>);

impl CyclicWord {
    /// Canonicalizes a sequence of distinct labels.
    pub fn new(seq: Vec<Label>) -> Result<Self> {
        if let Some(dup) = first_duplicate(&seq) {
            return Err(Error::InvalidWord(dup.clone()));
        }
        Ok(Self::from_distinct(seq))
    }

    pub fn empty() -> Self {
        CyclicWord(Vec::new())
    }

    pub(crate) fn from_distinct(mut seq: Vec<Label>) -> Self {
        if let Some((pos, _)) = seq.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
            seq.rotate_left(pos);
        }
        CyclicWord(seq)
    }

    /// The canonical linear representative.
    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.0.contains(label)
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    /// The cyclic successor of `label`.
    pub fn successor(&self, label: &Label) -> Option<&Label> {
        let i = self.position(label)?;
        Some(&self.0[(i + 1) % self.0.len()])
    }

    /// The linear representative that ends with `label`.
    pub fn ending_at(&self, label: &Label) -> Option<Vec<Label>> {
        let i = self.position(label)?;
        let mut seq = self.0.clone();
        let k = (i + 1) % seq.len();
        seq.rotate_left(k);
        Some(seq)
    }

    /// The linear representative that starts with `label`.
    pub fn starting_at(&self, label: &Label) -> Option<Vec<Label>> {
        let i = self.position(label)?;
        let mut seq = self.0.clone();
        seq.rotate_left(i);
        Some(seq)
    }

    /// The same set with the opposite cyclic order.
    pub fn reversed(&self) -> CyclicWord {
        let mut seq = self.0.clone();
        seq.reverse();
        CyclicWord::from_distinct(seq)
    }

    /// Renames every label; `f` must be injective on this word.
    pub fn relabel(&self, mut f: impl FnMut(&Label) -> Label) -> CyclicWord {
        CyclicWord::from_distinct(self.0.iter().map(&mut f).collect())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

pub fn canon_cyclic(w: &LinearWord) -> CyclicWord {
    CyclicWord::from_distinct(w.0.clone())
}

/// True iff `w2` is a rotation of `w1`.
pub fn rotation_equal(w1: &LinearWord, w2: &LinearWord) -> bool {
    w1.len() == w2.len() && canon_cyclic(w1) == canon_cyclic(w2)
}

/// Pancake merging: `cp` read so that `u` comes last, `cq` read so that `v`
/// comes first, both deleted, the two remainders concatenated.
pub fn merge_cyclic(cp: &CyclicWord, u: &Label, cq: &CyclicWord, v: &Label) -> Result<CyclicWord> {
    let mut left = cp.ending_at(u).ok_or_else(|| Error::MissingLabel(u.clone()))?;
    let right = cq.starting_at(v).ok_or_else(|| Error::MissingLabel(v.clone()))?;
    if let Some(clash) = left.iter().find(|l| cq.contains(l)) {
        return Err(Error::LabelClash(clash.clone()));
    }
    left.pop();
    left.extend(right.into_iter().skip(1));
    Ok(CyclicWord::from_distinct(left))
}

/// The two open intervals of `c` between `u` and `v`; the first one is the
/// interval that follows `u`.
pub fn cut_cyclic(c: &CyclicWord, u: &Label, v: &Label) -> Result<(CyclicWord, CyclicWord)> {
    if u == v {
        return Err(Error::InvalidCut(format!("cannot cut at `{u}` twice")));
    }
    let from_u = c.starting_at(u).ok_or_else(|| Error::InvalidCut(format!("`{u}` is not in {c}")))?;
    let j = from_u.iter().position(|l| l == v).ok_or_else(|| Error::InvalidCut(format!("`{v}` is not in {c}")))?;
    let after_u = from_u[1..j].to_vec();
    let after_v = from_u[j + 1..].to_vec();
    Ok((CyclicWord::from_distinct(after_u), CyclicWord::from_distinct(after_v)))
}

/// A multicyclic order: an unordered multiset of cyclic words over pairwise
/// disjoint labels, with at least one (possibly empty) component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MulticyclicType {
    components: Vec<CyclicWord>,
}

impl MulticyclicType {
    pub fn new(mut components: Vec<CyclicWord>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Unsupported("a multicyclic order needs at least one component".into()));
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            for l in c.labels() {
                if !seen.insert(l.clone()) {
                    return Err(Error::LabelClash(l.clone()));
                }
            }
        }
        components.sort();
        Ok(MulticyclicType { components })
    }

    /// A single cyclic component.
    pub fn cyclic(word: CyclicWord) -> Self {
        MulticyclicType { components: vec![word] }
    }

    pub(crate) fn from_disjoint(mut components: Vec<CyclicWord>) -> Self {
        debug_assert!(!components.is_empty());
        components.sort();
        MulticyclicType { components }
    }

    pub fn components(&self) -> &[CyclicWord] {
        &self.components
    }

    /// Number of components, empty ones included.
    pub fn b(&self) -> usize {
        self.components.len()
    }

    pub fn empties(&self) -> usize {
        self.components.iter().filter(|c| c.is_empty()).count()
    }

    pub fn label_count(&self) -> usize {
        self.components.iter().map(CyclicWord::len).sum()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.components.iter().flat_map(|c| c.labels().iter().cloned()).collect()
    }

    pub fn component_of(&self, label: &Label) -> Option<usize> {
        self.components.iter().position(|c| c.contains(label))
    }

    /// Sorted component sizes, the isomorphism invariant of the type.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components.iter().map(CyclicWord::len).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn relabel(&self, mut f: impl FnMut(&Label) -> Label) -> MulticyclicType {
        MulticyclicType::from_disjoint(self.components.iter().map(|c| c.relabel(&mut f)).collect())
    }
}

impl fmt::Debug for MulticyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MulticyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// JSON mirror: `{"components":[["a","b"],[]]}`.
impl Serialize for MulticyclicType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mirror<'a> {
            components: Vec<&'a [Label]>,
        }
        Mirror { components: self.components.iter().map(CyclicWord::labels).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MulticyclicType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Mirror {
            components: Vec<Vec<Label>>,
        }
        let m = Mirror::deserialize(deserializer)?;
        let words = m
            .components
            .into_iter()
            .map(CyclicWord::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MulticyclicType::new(words).map_err(serde::de::Error::custom)
    }
}

/// Merging of two multicyclic orders at `u` and `v`: the components holding
/// `u` and `v` are pancake-merged, all other components are kept.
pub fn mc_merge(sp: &MulticyclicType, u: &Label, sq: &MulticyclicType, v: &Label) -> Result<MulticyclicType> {
    let i = sp.component_of(u).ok_or_else(|| Error::MissingLabel(u.clone()))?;
    let j = sq.component_of(v).ok_or_else(|| Error::MissingLabel(v.clone()))?;
    let right = sq.labels();
    if let Some(clash) = sp.labels().intersection(&right).next() {
        return Err(Error::LabelClash(clash.clone()));
    }
    let merged = merge_cyclic(&sp.components[i], u, &sq.components[j], v)?;
    let mut comps: Vec<CyclicWord> = Vec::with_capacity(sp.b() + sq.b() - 1);
    comps.extend(sp.components.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, c)| c.clone()));
    comps.extend(sq.components.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()));
    comps.push(merged);
    Ok(MulticyclicType::from_disjoint(comps))
}

/// The cut of a multicyclic order at `u` and `v`: components holding `u`
/// and `v` are merged when they differ, and a shared component is split
/// into its two open intervals otherwise.
pub fn mc_cut(s: &MulticyclicType, u: &Label, v: &Label) -> Result<MulticyclicType> {
    if u == v {
        return Err(Error::InvalidCut(format!("cannot cut at `{u}` twice")));
    }
    let i = s.component_of(u).ok_or_else(|| Error::InvalidCut(format!("`{u}` is not in {s}")))?;
    let j = s.component_of(v).ok_or_else(|| Error::InvalidCut(format!("`{v}` is not in {s}")))?;
    let mut comps: Vec<CyclicWord> =
        s.components.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, c)| c.clone()).collect();
    if i == j {
        let (a, b) = cut_cyclic(&s.components[i], u, v)?;
        comps.push(a);
        comps.push(b);
    } else {
        comps.push(merge_cyclic(&s.components[i], u, &s.components[j], v)?);
    }
    Ok(MulticyclicType::from_disjoint(comps))
}

/// The index `((S; g))` of an operad component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypedArity {
    #[serde(rename = "type")]
    pub stype: MulticyclicType,
    pub genus: u32,
}

impl TypedArity {
    pub fn new(stype: MulticyclicType, genus: u32) -> Self {
        TypedArity { stype, genus }
    }

    pub fn is_geometric(&self) -> bool {
        is_geometric(self)
    }

    pub fn geometric_genus(&self) -> Result<u32> {
        geometric_genus(self)
    }
}

impl fmt::Debug for TypedArity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TypedArity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.stype, self.genus)
    }
}

/// Geometricity of a pair `(b, g)`: `g - b + 1` even and non-negative.
pub fn geometric_b_g(b: usize, g: u32) -> bool {
    let diff = g as i64 - b as i64 + 1;
    diff >= 0 && diff % 2 == 0
}

pub fn is_geometric(t: &TypedArity) -> bool {
    geometric_b_g(t.stype.b(), t.genus)
}

/// `G = (g - b + 1) / 2`.
pub fn geometric_genus(t: &TypedArity) -> Result<u32> {
    if !is_geometric(t) {
        return Err(Error::NotGeometric(t.to_string()));
    }
    Ok(((t.genus as i64 - t.stype.b() as i64 + 1) / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(names: &[&str]) -> CyclicWord {
        CyclicWord::new(labels(names)).unwrap()
    }

    fn lw(names: &[&str]) -> LinearWord {
        LinearWord::new(labels(names)).unwrap()
    }

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    /// Independent merge: walk explicit rotations instead of the
    /// canonical-representative helpers.
    fn merge_oracle(p: &[Label], u: &Label, q: &[Label], v: &Label) -> Vec<Label> {
        let n = p.len();
        let m = q.len();
        let iu = p.iter().position(|x| x == u).unwrap();
        let iv = q.iter().position(|x| x == v).unwrap();
        let mut out = Vec::new();
        for k in 1..n {
            out.push(p[(iu + k) % n].clone());
        }
        for k in 1..m {
            out.push(q[(iv + k) % m].clone());
        }
        out
    }

    #[test]
    fn canon_rotation_identity() {
        assert_eq!(canon_cyclic(&lw(&["b", "c", "a"])), cw(&["a", "b", "c"]));
        assert_eq!(cw(&["b", "c", "a"]).labels(), &labels(&["a", "b", "c"])[..]);
        assert_eq!(canon_cyclic(&lw(&["x2", "x1"])), canon_cyclic(&lw(&["x1", "x2"])));
        assert!(canon_cyclic(&lw(&[])).is_empty());
    }

    #[test]
    fn duplicate_label_is_invalid() {
        assert_eq!(LinearWord::new(labels(&["a", "b", "a"])), Err(Error::InvalidWord(l("a"))));
        assert!(CyclicWord::new(labels(&["a", "a"])).is_err());
    }

    #[test]
    fn rotation_equality() {
        // X = (x1, x2), Y = (y): XY against YX
        assert!(rotation_equal(&lw(&["x1", "x2", "y"]), &lw(&["y", "x1", "x2"])));
        assert!(!rotation_equal(&lw(&["a", "b", "c"]), &lw(&["a", "c", "b"])));
        assert!(rotation_equal(&lw(&[]), &lw(&[])));
        assert!(!rotation_equal(&lw(&["a"]), &lw(&["a", "b"])));
    }

    #[test]
    fn rotation_equality_matches_brute_force() {
        let words = [["a", "b", "c"], ["a", "c", "b"], ["b", "a", "c"], ["c", "b", "a"]];
        for w1 in &words {
            for w2 in &words {
                let a = labels(w1);
                let b = labels(w2);
                let brute = (0..3).any(|k| {
                    let mut r = a.clone();
                    r.rotate_left(k);
                    r == b
                });
                assert_eq!(rotation_equal(&lw(w1), &lw(w2)), brute, "{w1:?} {w2:?}");
            }
        }
    }

    #[test]
    fn merge_dead_end_example() {
        // x in [X v' Z u'], y in [Y u'' v''] with singleton X, Y, Z
        let x = cw(&["X", "v'", "Z", "u'"]);
        let y = cw(&["Y", "u''", "v''"]);
        let merged = merge_cyclic(&x, &l("v'"), &y, &l("v''")).unwrap();
        assert_eq!(merged, cw(&["Z", "u'", "X", "Y", "u''"]));
        let other = merge_cyclic(&x, &l("u'"), &y, &l("u''")).unwrap();
        assert_eq!(other, cw(&["X", "v'", "Z", "v''", "Y"]));
    }

    #[test]
    fn merge_singletons_gives_empty_word() {
        let merged = merge_cyclic(&cw(&["u"]), &l("u"), &cw(&["v"]), &l("v")).unwrap();
        assert!(merged.is_empty());
    }

    #[test]
    fn merge_errors() {
        assert_eq!(merge_cyclic(&cw(&["a", "b"]), &l("z"), &cw(&["v"]), &l("v")), Err(Error::MissingLabel(l("z"))));
        assert_eq!(merge_cyclic(&cw(&["a", "u"]), &l("u"), &cw(&["v", "a"]), &l("v")), Err(Error::LabelClash(l("a"))));
    }

    #[test]
    fn merge_five_by_four_against_oracle() {
        let p = labels(&["p3", "p1", "p4", "p0", "p2"]);
        let q = labels(&["q2", "q0", "q3", "q1"]);
        for u in &p {
            for v in &q {
                let got =
                    merge_cyclic(&CyclicWord::new(p.clone()).unwrap(), u, &CyclicWord::new(q.clone()).unwrap(), v)
                        .unwrap();
                let want = CyclicWord::new(merge_oracle(&p, u, &q, v)).unwrap();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn cut_example_and_adjacent() {
        let c = cw(&["Z", "u'", "X", "Y", "u''"]);
        let (i1, i2) = cut_cyclic(&c, &l("u'"), &l("u''")).unwrap();
        assert_eq!(i1, cw(&["X", "Y"]));
        assert_eq!(i2, cw(&["Z"]));
        let (a, b) = cut_cyclic(&cw(&["u", "v"]), &l("u"), &l("v")).unwrap();
        assert!(a.is_empty() && b.is_empty());
        assert!(matches!(cut_cyclic(&c, &l("u'"), &l("u'")), Err(Error::InvalidCut(_))));
        assert!(matches!(cut_cyclic(&c, &l("u'"), &l("q")), Err(Error::InvalidCut(_))));
    }

    #[test]
    fn cut_all_pairs_against_linear_scan() {
        let seq = labels(&["f", "c", "a", "e", "b", "d"]);
        let c = CyclicWord::new(seq.clone()).unwrap();
        let n = seq.len();
        for iu in 0..n {
            for iv in 0..n {
                if iu == iv {
                    continue;
                }
                let mut first = Vec::new();
                let mut k = (iu + 1) % n;
                while k != iv {
                    first.push(seq[k].clone());
                    k = (k + 1) % n;
                }
                let mut second = Vec::new();
                let mut k = (iv + 1) % n;
                while k != iu {
                    second.push(seq[k].clone());
                    k = (k + 1) % n;
                }
                let (a, b) = cut_cyclic(&c, &seq[iu], &seq[iv]).unwrap();
                assert_eq!(a, CyclicWord::new(first).unwrap());
                assert_eq!(b, CyclicWord::new(second).unwrap());
            }
        }
    }

    fn mt(comps: &[&[&str]]) -> MulticyclicType {
        MulticyclicType::new(comps.iter().map(|c| cw(c)).collect()).unwrap()
    }

    #[test]
    fn mc_merge_examples() {
        let sp = mt(&[&["x", "v'", "z", "u'"]]);
        let sq = mt(&[&["y", "u''", "v''"]]);
        let m = mc_merge(&sp, &l("v'"), &sq, &l("v''")).unwrap();
        assert_eq!(m, mt(&[&["z", "u'", "x", "y", "u''"]]));
        assert_eq!(m.b(), 1);

        let m = mc_merge(&mt(&[&["u"], &[]]), &l("u"), &mt(&[&["v"]]), &l("v")).unwrap();
        assert_eq!(m, mt(&[&[], &[]]));
        assert_eq!(m.b(), 2);
    }

    #[test]
    fn mc_cut_examples() {
        let s = mt(&[&["z", "u'", "x", "y", "u''"]]);
        assert_eq!(mc_cut(&s, &l("u'"), &l("u''")).unwrap(), mt(&[&["x", "y"], &["z"]]));
        let s = mt(&[&["a", "u"], &["v", "b"]]);
        let cut = mc_cut(&s, &l("u"), &l("v")).unwrap();
        let via_merge = merge_cyclic(&cw(&["a", "u"]), &l("u"), &cw(&["v", "b"]), &l("v")).unwrap();
        assert_eq!(cut, MulticyclicType::cyclic(via_merge));
        assert_eq!(cut, mt(&[&["a", "b"]]));
        assert_eq!(mc_cut(&mt(&[&["u", "v"]]), &l("u"), &l("v")).unwrap(), mt(&[&[], &[]]));
        assert!(matches!(mc_cut(&s, &l("u"), &l("u")), Err(Error::InvalidCut(_))));
    }

    #[test]
    fn dead_end_exchange_lands_in_one_space() {
        let x = mt(&[&["X", "v'", "Z", "u'"]]);
        let y = mt(&[&["Y", "u''", "v''"]]);
        let lhs = mc_cut(&mc_merge(&x, &l("v'"), &y, &l("v''")).unwrap(), &l("u'"), &l("u''")).unwrap();
        let rhs = mc_cut(&mc_merge(&x, &l("u'"), &y, &l("u''")).unwrap(), &l("v'"), &l("v''")).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, mt(&[&["X", "Y"], &["Z"]]));
    }

    #[test]
    fn multicyclic_type_rejects_overlap_and_zero_components() {
        assert!(matches!(MulticyclicType::new(vec![cw(&["a", "b"]), cw(&["b"])]), Err(Error::LabelClash(_))));
        assert!(MulticyclicType::new(vec![]).is_err());
    }

    #[test]
    fn geometricity() {
        let one = TypedArity::new(mt(&[&["a"]]), 0);
        assert!(one.is_geometric());
        assert_eq!(one.geometric_genus(), Ok(0));
        let two = TypedArity::new(mt(&[&["a"], &["b"]]), 1);
        assert!(two.is_geometric());
        assert_eq!(two.geometric_genus(), Ok(0));
        let bad = TypedArity::new(mt(&[&["a"]]), 1);
        assert!(!bad.is_geometric());
        assert!(matches!(bad.geometric_genus(), Err(Error::NotGeometric(_))));
        let torus = TypedArity::new(mt(&[&[]]), 2);
        assert_eq!(torus.geometric_genus(), Ok(1));
    }

    #[test]
    fn json_mirror() {
        let t = mt(&[&["a", "b", "c"], &["d"], &[]]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"components":[[],["a","b","c"],["d"]]}"#);
        let back: MulticyclicType = serde_json::from_str(r#"{"components":[["c","a","b"],["d"],[]]}"#).unwrap();
        assert_eq!(back, t);
    }
}
