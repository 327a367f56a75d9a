//! Seeded random multicyclic orders and graphs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{GraphMode, NsGraph};
use crate::orders::{CyclicWord, Label, MulticyclicType};

/// A random multicyclic order on `labels` with at most `max_blocks`
/// components, some of which may be empty.
pub fn random_type<R: Rng + ?Sized>(rng: &mut R, labels: &[Label], max_blocks: usize) -> MulticyclicType {
    let b = rng.gen_range(1..=max_blocks.max(1));
    let mut shuffled = labels.to_vec();
    shuffled.shuffle(rng);
    let mut blocks: Vec<Vec<Label>> = vec![Vec::new(); b];
    for l in shuffled {
        let i = rng.gen_range(0..b);
        blocks[i].push(l);
    }
    MulticyclicType::new(blocks.into_iter().map(CyclicWord::from_distinct).collect()).expect("labels are distinct")
}

/// Hands out labels `prefix0, prefix1, …`.
#[derive(Clone, Debug)]
pub struct LabelSource {
    prefix: String,
    next: usize,
}

impl LabelSource {
    pub fn new(prefix: &str) -> Self {
        LabelSource { prefix: prefix.to_string(), next: 0 }
    }

    pub fn take(&mut self) -> Label {
        self.next += 1;
        Label::new(format!("{}{}", self.prefix, self.next - 1))
    }

    pub fn take_n(&mut self, n: usize) -> Vec<Label> {
        (0..n).map(|_| self.take()).collect()
    }
}

/// A random one-vertex graph with `legs` legs, up to three blocks and
/// vertex genus up to two.
pub fn random_corolla<R: Rng + ?Sized>(rng: &mut R, legs: usize, source: &mut LabelSource) -> NsGraph {
    let labels = source.take_n(legs);
    let t = random_type(rng, &labels, 3);
    NsGraph::corolla(&t, rng.gen_range(0..=2))
}

/// A random connected non-Σ graph with at most `max_flags` flags, grown by
/// grafting random corollas and self-gluing legs.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, max_flags: usize, source: &mut LabelSource) -> NsGraph {
    let max_flags = max_flags.max(1);
    let first = rng.gen_range(0..=max_flags.min(4));
    let mut g = random_corolla(rng, first, source);
    let steps = rng.gen_range(0..=3);
    for _ in 0..steps {
        let legs = g.leg_flags();
        if legs.is_empty() {
            break;
        }
        if rng.gen_bool(0.6) {
            let room = max_flags.saturating_sub(g.flag_count());
            if room == 0 {
                continue;
            }
            let k = rng.gen_range(1..=room.min(4));
            let other = random_corolla(rng, k, source);
            let u = g.legs[*legs.choose(rng).expect("nonempty")].clone().expect("leg");
            let ol = other.leg_flags();
            let v = other.legs[*ol.choose(rng).expect("nonempty")].clone().expect("leg");
            g = g.graft(&u, &other, &v).expect("fresh labels never clash");
        } else if legs.len() >= 2 {
            let pair: Vec<&usize> = legs.choose_multiple(rng, 2).collect();
            let u = g.legs[*pair[0]].clone().expect("leg");
            let v = g.legs[*pair[1]].clone().expect("leg");
            g = g.self_glue(&u, &v).expect("distinct legs");
        }
    }
    debug_assert_eq!(g.mode, GraphMode::NonSigma);
    g
}
