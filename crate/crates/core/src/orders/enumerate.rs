use std::collections::BTreeSet;

use super::{geometric_b_g, CyclicWord, Label, MulticyclicType};

/// All multicyclic orders on exactly `labels` whose pair with `g` is
/// geometric, sorted by component count and then by components.
pub fn enumerate_types(labels: &BTreeSet<Label>, g: u32) -> Vec<MulticyclicType> {
    let items: Vec<Label> = labels.iter().cloned().collect();
    let mut out = Vec::new();
    for b in 1..=(g as usize + 1) {
        if !geometric_b_g(b, g) {
            continue;
        }
        for_each_partition(&items, b, &mut |blocks| {
            let empties = b - blocks.len();
            for_each_cyclic_assignment(blocks, &mut |words| {
                let mut comps = words.to_vec();
                comps.extend(std::iter::repeat_with(CyclicWord::empty).take(empties));
                out.push(MulticyclicType::from_disjoint(comps));
            });
        });
    }
    out.sort_by(|a, b| a.b().cmp(&b.b()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Visits every set partition of `items` into at most `max_blocks` nonempty
/// blocks. The empty set has exactly one partition, with no blocks.
fn for_each_partition(items: &[Label], max_blocks: usize, f: &mut dyn FnMut(&[Vec<Label>])) {
    fn go(
        items: &[Label],
        i: usize,
        blocks: &mut Vec<Vec<Label>>,
        max_blocks: usize,
        f: &mut dyn FnMut(&[Vec<Label>]),
    ) {
        if i == items.len() {
            f(blocks);
            return;
        }
        for k in 0..blocks.len() {
            blocks[k].push(items[i].clone());
            go(items, i + 1, blocks, max_blocks, f);
            blocks[k].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![items[i].clone()]);
            go(items, i + 1, blocks, max_blocks, f);
            blocks.pop();
        }
    }
    go(items, 0, &mut Vec::new(), max_blocks, f);
}

/// Visits every choice of a cyclic order on each block.
fn for_each_cyclic_assignment(blocks: &[Vec<Label>], f: &mut dyn FnMut(&[CyclicWord])) {
    fn go(blocks: &[Vec<Label>], i: usize, acc: &mut Vec<CyclicWord>, f: &mut dyn FnMut(&[CyclicWord])) {
        if i == blocks.len() {
            f(acc);
            return;
        }
        for word in cyclic_orders(&blocks[i]) {
            acc.push(word);
            go(blocks, i + 1, acc, f);
            acc.pop();
        }
    }
    go(blocks, 0, &mut Vec::new(), f);
}

/// The `(k-1)!` cyclic orders on a nonempty block: fix the first element,
/// permute the rest.
pub fn cyclic_orders(block: &[Label]) -> Vec<CyclicWord> {
    let (head, rest) = block.split_first().expect("blocks are nonempty");
    let mut out = Vec::new();
    let mut rest = rest.to_vec();
    permute(&mut rest, 0, &mut |perm| {
        let mut seq = Vec::with_capacity(block.len());
        seq.push(head.clone());
        seq.extend_from_slice(perm);
        out.push(CyclicWord::from_distinct(seq));
    });
    out
}

fn permute(items: &mut [Label], k: usize, f: &mut dyn FnMut(&[Label])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// `|enumerate_types(S, g)|` for `|S| = n`, computed from unsigned Stirling
/// numbers of the first kind. `None` on `u64` overflow.
pub fn count_types(n: usize, g: u32) -> Option<u64> {
    let stirling = stirling_first_row(n)?;
    let mut total: u64 = 0;
    for b in 1..=(g as usize + 1) {
        if !geometric_b_g(b, g) {
            continue;
        }
        for c in stirling.iter().take(b.min(n) + 1) {
            total = total.checked_add(*c)?;
        }
    }
    Some(total)
}

/// Row `n` of the unsigned Stirling numbers of the first kind, `c(n, k)`
/// for `k = 0..=n`.
fn stirling_first_row(n: usize) -> Option<Vec<u64>> {
    let mut row = vec![1u64];
    for m in 0..n {
        let mut next = vec![0u64; row.len() + 1];
        for (k, &c) in row.iter().enumerate() {
            next[k + 1] = next[k + 1].checked_add(c)?;
            next[k] = next[k].checked_add(c.checked_mul(m as u64)?)?;
        }
        row = next;
    }
    Some(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::labels;

    fn set(names: &[&str]) -> BTreeSet<Label> {
        labels(names).into_iter().collect()
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn three_labels_genus_zero() {
        let types = enumerate_types(&set(&["a", "b", "c"]), 0);
        assert_eq!(types.len(), 2);
        let shown: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, vec!["{(a b c)}", "{(a c b)}"]);
    }

    #[test]
    fn empty_label_set() {
        let types = enumerate_types(&BTreeSet::new(), 2);
        let bs: Vec<usize> = types.iter().map(MulticyclicType::b).collect();
        assert_eq!(bs, vec![1, 3]);
        assert_eq!(enumerate_types(&BTreeSet::new(), 0).len(), 1);
        let one = enumerate_types(&BTreeSet::new(), 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].b(), 2);
    }

    #[test]
    fn genus_zero_counts_are_factorials() {
        let names = ["a", "b", "c", "d", "e", "f", "g"];
        for n in 1..=names.len() {
            let s = set(&names[..n]);
            assert_eq!(enumerate_types(&s, 0).len() as u64, factorial(n as u64 - 1));
        }
    }

    #[test]
    fn stirling_count_matches_enumeration() {
        let names = ["a", "b", "c", "d", "e"];
        for n in 0..=names.len() {
            for g in 0..=4 {
                let s = set(&names[..n]);
                let listed = enumerate_types(&s, g);
                assert_eq!(Some(listed.len() as u64), count_types(n, g), "n={n} g={g}");
                for t in &listed {
                    assert_eq!(t.labels(), s);
                    assert!(geometric_b_g(t.b(), g));
                }
            }
        }
    }
}
