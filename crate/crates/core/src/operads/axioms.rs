//! Property checks of the modular operad axioms on the free operad.
//!
//! Seven families are checked, each as an equation between canonical
//! elements:
//!
//! * commutativity: `x ∘_{ab} y = y ∘_{ba} x`
//! * associativity: `x ∘_{ab} (y ∘_{cd} z) = (x ∘_{ab} y) ∘_{cd} z`
//! * contraction-order: `ξ_{ab} ξ_{cd} x = ξ_{cd} ξ_{ab} x`
//! * contraction-composition: `ξ_{ab} (x ∘_{cd} y) = ξ_{cd} (x ∘_{ab} y)`
//! * contraction-factor: `(ξ_{cd} x) ∘_{ab} y = ξ_{cd} (x ∘_{ab} y)`
//! * equivariance-composition: `ρ(x ∘_{ab} y) = ρx ∘_{ρa ρb} ρy`
//! * equivariance-contraction: `ρ(ξ_{ab} x) = ξ_{ρa ρb} ρx`
//!
//! Random mode draws elements by grafting and self-gluing generator
//! corollas; exhaustive mode runs every instance whose flags fit a bound,
//! over all elements up to leg relabeling.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{compose_free, contract_free, relabel, FreeElement, GeneratorArity, ModuleSpec};
use crate::error::Result;
use crate::graphs::random::LabelSource;
use crate::graphs::{canonical_unlabeled, graph_to_json, GraphMode, NsGraph};
use crate::orders::{parse_multicyclic_type, Label};

pub const DEFAULT_SEED: u64 = 0x6d6f_6470_7261_6e64;

#[derive(Clone, Debug, Serialize)]
pub struct AxiomConfig {
    pub trials: usize,
    pub max_flags: usize,
    pub seed: u64,
    /// Flag bound for the exhaustive pass; `None` skips it.
    pub exhaustive_max_flags: Option<usize>,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig { trials: 200, max_flags: 12, seed: DEFAULT_SEED, exhaustive_max_flags: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub source: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub mode: GraphMode,
    pub seed: u64,
    pub trials: usize,
    pub max_flags: usize,
    pub exhaustive_max_flags: Option<usize>,
    /// Instances checked per axiom.
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<AxiomFailure>,
    pub pass: bool,
}

enum Instance {
    Comm { x: FreeElement, a: Label, y: FreeElement, b: Label },
    Assoc { x: FreeElement, a: Label, y: FreeElement, b: Label, c: Label, z: FreeElement, d: Label },
    XiXi { x: FreeElement, a: Label, b: Label, c: Label, d: Label },
    XiComp { x: FreeElement, a: Label, c: Label, y: FreeElement, b: Label, d: Label },
    XiLeft { x: FreeElement, c: Label, d: Label, a: Label, y: FreeElement, b: Label },
    EqComp { x: FreeElement, a: Label, y: FreeElement, b: Label, rho: BTreeMap<Label, Label> },
    EqXi { x: FreeElement, a: Label, b: Label, rho: BTreeMap<Label, Label> },
}

fn rho_of(rho: &BTreeMap<Label, Label>, l: &Label) -> Label {
    rho.get(l).cloned().unwrap_or_else(|| l.clone())
}

impl Instance {
    fn axiom(&self) -> &'static str {
        match self {
            Instance::Comm { .. } => "commutativity",
            Instance::Assoc { .. } => "associativity",
            Instance::XiXi { .. } => "contraction-order",
            Instance::XiComp { .. } => "contraction-composition",
            Instance::XiLeft { .. } => "contraction-factor",
            Instance::EqComp { .. } => "equivariance-composition",
            Instance::EqXi { .. } => "equivariance-contraction",
        }
    }

    fn describe(&self) -> String {
        let j = |e: &FreeElement| graph_to_json(e.graph());
        match self {
            Instance::Comm { x, a, y, b } => format!("x={} y={} a={a} b={b}", j(x), j(y)),
            Instance::Assoc { x, a, y, b, c, z, d } => {
                format!("x={} y={} z={} a={a} b={b} c={c} d={d}", j(x), j(y), j(z))
            }
            Instance::XiXi { x, a, b, c, d } => format!("x={} a={a} b={b} c={c} d={d}", j(x)),
            Instance::XiComp { x, a, c, y, b, d } => format!("x={} y={} a={a} b={b} c={c} d={d}", j(x), j(y)),
            Instance::XiLeft { x, c, d, a, y, b } => format!("x={} y={} a={a} b={b} c={c} d={d}", j(x), j(y)),
            Instance::EqComp { x, a, y, b, rho } => format!("x={} y={} a={a} b={b} rho={rho:?}", j(x), j(y)),
            Instance::EqXi { x, a, b, rho } => format!("x={} a={a} b={b} rho={rho:?}", j(x)),
        }
    }

    fn sides(&self) -> Result<(FreeElement, FreeElement)> {
        Ok(match self {
            Instance::Comm { x, a, y, b } => (compose_free(x, a, y, b)?, compose_free(y, b, x, a)?),
            Instance::Assoc { x, a, y, b, c, z, d } => {
                (compose_free(x, a, &compose_free(y, c, z, d)?, b)?, compose_free(&compose_free(x, a, y, b)?, c, z, d)?)
            }
            Instance::XiXi { x, a, b, c, d } => {
                (contract_free(&contract_free(x, c, d)?, a, b)?, contract_free(&contract_free(x, a, b)?, c, d)?)
            }
            Instance::XiComp { x, a, c, y, b, d } => {
                (contract_free(&compose_free(x, c, y, d)?, a, b)?, contract_free(&compose_free(x, a, y, b)?, c, d)?)
            }
            Instance::XiLeft { x, c, d, a, y, b } => {
                (compose_free(&contract_free(x, c, d)?, a, y, b)?, contract_free(&compose_free(x, a, y, b)?, c, d)?)
            }
            Instance::EqComp { x, a, y, b, rho } => (
                relabel(&compose_free(x, a, y, b)?, rho)?,
                compose_free(&relabel(x, rho)?, &rho_of(rho, a), &relabel(y, rho)?, &rho_of(rho, b))?,
            ),
            Instance::EqXi { x, a, b, rho } => (
                relabel(&contract_free(x, a, b)?, rho)?,
                contract_free(&relabel(x, rho)?, &rho_of(rho, a), &rho_of(rho, b))?,
            ),
        })
    }
}

/// Outcome of one instance: `None` when both sides agree.
fn run_instance(axiom: &str, inst: &Instance, source: &str) -> Option<AxiomFailure> {
    let fail = |lhs: String, rhs: String| AxiomFailure {
        axiom: axiom.to_string(),
        source: source.to_string(),
        instance: inst.describe(),
        lhs,
        rhs,
    };
    match inst.sides() {
        Ok((l, r)) if l == r => None,
        Ok((l, r)) => Some(fail(graph_to_json(l.graph()), graph_to_json(r.graph()))),
        Err(e) => Some(fail(format!("error: {e}"), String::new())),
    }
}

/// A random generator corolla with fresh labels and at most `budget` flags.
fn random_generator<R: Rng>(spec: &ModuleSpec, rng: &mut R, src: &mut LabelSource, budget: usize) -> Option<NsGraph> {
    let fitting: Vec<_> = spec
        .generators
        .iter()
        .filter(|g| match &g.arity {
            GeneratorArity::AnyCyclic | GeneratorArity::AnySet => budget >= 1,
            GeneratorArity::Typed(t) => t.stype.label_count() <= budget,
            GeneratorArity::Set { size, .. } => *size <= budget,
        })
        .collect();
    let gen = fitting.choose(rng)?;
    let g = match &gen.arity {
        GeneratorArity::AnyCyclic => {
            let k = rng.gen_range(1..=budget.min(4));
            let mut labels = src.take_n(k);
            labels.shuffle(rng);
            NsGraph::corolla(&crate::orders::MulticyclicType::cyclic(crate::orders::CyclicWord::new(labels).ok()?), 0)
        }
        GeneratorArity::Typed(t) => NsGraph::corolla(&t.stype.relabel(|_| src.take()), t.genus),
        GeneratorArity::AnySet => {
            let k = rng.gen_range(1..=budget.min(4));
            NsGraph::symmetric_corolla(&src.take_n(k).into_iter().collect(), 0)
        }
        GeneratorArity::Set { size, genus } => {
            NsGraph::symmetric_corolla(&src.take_n(*size).into_iter().collect(), *genus)
        }
    };
    Some(g.with_tag(&gen.id))
}

/// A random element with at most `budget` flags and at least `min_legs`
/// legs, or `None` if repeated draws fail.
fn random_element<R: Rng>(
    spec: &ModuleSpec,
    rng: &mut R,
    src: &mut LabelSource,
    budget: usize,
    min_legs: usize,
) -> Option<FreeElement> {
    for _ in 0..64 {
        let mut g = random_generator(spec, rng, src, budget)?;
        for _ in 0..rng.gen_range(0..=3) {
            let legs = g.leg_flags();
            if legs.is_empty() {
                break;
            }
            let room = budget - g.flag_count();
            if rng.gen_bool(0.6) && room > 0 {
                let Some(other) = random_generator(spec, rng, src, room) else { continue };
                let u = g.leg_label(*legs.choose(rng).expect("nonempty")).cloned().expect("leg");
                let ol = other.leg_flags();
                let v = other.leg_label(*ol.choose(rng).expect("nonempty")).cloned().expect("leg");
                g = g.graft(&u, &other, &v).ok()?;
            } else if legs.len() >= min_legs + 2 {
                let pair: Vec<&usize> = legs.choose_multiple(rng, 2).collect();
                let u = g.leg_label(*pair[0]).cloned().expect("leg");
                let v = g.leg_label(*pair[1]).cloned().expect("leg");
                g = g.self_glue(&u, &v).ok()?;
            }
        }
        if g.leg_flags().len() >= min_legs {
            return Some(FreeElement::from_graph(&g));
        }
    }
    None
}

fn pick_legs<R: Rng>(rng: &mut R, e: &FreeElement, k: usize) -> Vec<Label> {
    let legs: Vec<Label> = e.legs().into_iter().collect();
    legs.choose_multiple(rng, k).cloned().collect()
}

/// A bijective renaming of `labels` onto fresh names, shuffled.
fn random_rho<R: Rng>(rng: &mut R, labels: Vec<Label>, src: &mut LabelSource) -> BTreeMap<Label, Label> {
    let mut fresh = src.take_n(labels.len());
    fresh.shuffle(rng);
    labels.into_iter().zip(fresh).collect()
}

fn trial_instances(spec: &ModuleSpec, cfg: &AxiomConfig, trial: usize) -> Vec<Instance> {
    let seed = cfg.seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let src = &mut LabelSource::new("t");
    let mf = cfg.max_flags;
    let mut out = Vec::new();
    let half = mf / 2;
    let third = mf / 3;
    if let (Some(x), Some(y)) = (random_element(spec, rng, src, half, 2), random_element(spec, rng, src, half, 2)) {
        let (xa, yb) = (pick_legs(rng, &x, 2), pick_legs(rng, &y, 2));
        out.push(Instance::Comm { x: x.clone(), a: xa[0].clone(), y: y.clone(), b: yb[0].clone() });
        out.push(Instance::XiComp {
            x: x.clone(),
            a: xa[0].clone(),
            c: xa[1].clone(),
            y: y.clone(),
            b: yb[0].clone(),
            d: yb[1].clone(),
        });
        let mut all: Vec<Label> = x.legs().into_iter().chain(y.legs()).collect();
        all.sort();
        let rho = random_rho(rng, all, src);
        out.push(Instance::EqComp { x: x.clone(), a: xa[1].clone(), y, b: yb[1].clone(), rho });
        let rho = random_rho(rng, x.legs().into_iter().collect(), src);
        out.push(Instance::EqXi { x, a: xa[0].clone(), b: xa[1].clone(), rho });
    }
    if let (Some(x), Some(y)) = (random_element(spec, rng, src, half, 3), random_element(spec, rng, src, half, 1)) {
        let xs = pick_legs(rng, &x, 3);
        let yb = pick_legs(rng, &y, 1);
        out.push(Instance::XiLeft { x, c: xs[0].clone(), d: xs[1].clone(), a: xs[2].clone(), y, b: yb[0].clone() });
    }
    if let (Some(x), Some(y), Some(z)) = (
        random_element(spec, rng, src, third, 1),
        random_element(spec, rng, src, third, 2),
        random_element(spec, rng, src, third, 1),
    ) {
        let a = pick_legs(rng, &x, 1)[0].clone();
        let bc = pick_legs(rng, &y, 2);
        let d = pick_legs(rng, &z, 1)[0].clone();
        out.push(Instance::Assoc { x, a, y, b: bc[0].clone(), c: bc[1].clone(), z, d });
    }
    if let Some(x) = random_element(spec, rng, src, mf, 4) {
        let s = pick_legs(rng, &x, 4);
        out.push(Instance::XiXi { x, a: s[0].clone(), b: s[1].clone(), c: s[2].clone(), d: s[3].clone() });
    }
    out
}

/// The dead-end instance `ξ_{u'u''}(x ∘_{v'v''} y) = ξ_{v'v''}(x ∘_{u'u''} y)`
/// with `x = [X v' Z u']` and `y = [Y u'' v'']`.
fn dead_end(spec: &ModuleSpec) -> Option<Instance> {
    let gen = spec.generators.iter().find(|g| g.arity == GeneratorArity::AnyCyclic)?;
    let corolla = |s: &str| {
        FreeElement::from_graph(&NsGraph::corolla(&parse_multicyclic_type(s).expect("literal"), 0).with_tag(&gen.id))
    };
    let l = Label::new;
    Some(Instance::XiComp {
        x: corolla("{(X v' Z u')}"),
        a: l("u'"),
        c: l("v'"),
        y: corolla("{(Y u'' v'')}"),
        b: l("u''"),
        d: l("v''"),
    })
}

/// Elements with at most `max_flags` flags and at least one leg, up to leg
/// relabeling; legs are named `l0, l1, …`.
pub fn exhaustive_pool(spec: &ModuleSpec, max_flags: usize) -> Vec<FreeElement> {
    let mut seeds: Vec<NsGraph> = Vec::new();
    let names = |k: usize| (0..k).map(|i| Label::new(format!("l{i}"))).collect::<Vec<_>>();
    for gen in &spec.generators {
        match &gen.arity {
            GeneratorArity::AnyCyclic => {
                for k in 1..=max_flags {
                    let w = crate::orders::CyclicWord::new(names(k)).expect("distinct");
                    seeds.push(NsGraph::cyclic_corolla(&w).with_tag(&gen.id));
                }
            }
            GeneratorArity::AnySet => {
                for k in 1..=max_flags {
                    seeds.push(NsGraph::symmetric_corolla(&names(k).into_iter().collect(), 0).with_tag(&gen.id));
                }
            }
            GeneratorArity::Typed(t) if t.stype.label_count() <= max_flags => {
                seeds.push(NsGraph::corolla(&t.stype, t.genus).with_tag(&gen.id));
            }
            GeneratorArity::Set { size, genus } if *size <= max_flags => {
                seeds.push(NsGraph::symmetric_corolla(&names(*size).into_iter().collect(), *genus).with_tag(&gen.id));
            }
            _ => {}
        }
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut pool: Vec<NsGraph> = Vec::new();
    let mut queue: Vec<NsGraph> = Vec::new();
    let mut admit = |g: &NsGraph, pool: &mut Vec<NsGraph>, queue: &mut Vec<NsGraph>| {
        let c = canonical_unlabeled(g);
        if seen.insert(c.encoding().to_vec()) {
            let rep = c.into_rep();
            pool.push(rep.clone());
            queue.push(rep);
        }
    };
    for s in &seeds {
        admit(s, &mut pool, &mut queue);
    }
    let prefixed = |g: &NsGraph, p: &str| g.relabel_legs(|l| Label::new(format!("{p}{l}"))).expect("injective");
    while let Some(e) = queue.pop() {
        let legs: Vec<Label> = e.leg_labels().into_iter().collect();
        for i in 0..legs.len() {
            for j in i + 1..legs.len() {
                let g = e.self_glue(&legs[i], &legs[j]).expect("distinct legs");
                admit(&g, &mut pool, &mut queue);
            }
        }
        let partners: Vec<NsGraph> = pool
            .iter()
            .filter(|p| p.flag_count() + e.flag_count() <= max_flags && !p.leg_flags().is_empty())
            .cloned()
            .collect();
        let ea = prefixed(&e, "a");
        for p in partners {
            let pb = prefixed(&p, "b");
            for u in ea.leg_labels() {
                for v in pb.leg_labels() {
                    let g = ea.graft(&u, &pb, &v).expect("disjoint labels");
                    admit(&g, &mut pool, &mut queue);
                }
            }
        }
    }
    let mut out: Vec<FreeElement> =
        pool.into_iter().filter(|g| !g.leg_flags().is_empty()).map(|g| FreeElement::from_graph(&g)).collect();
    out.sort_by(|a, b| a.flag_count().cmp(&b.flag_count()).then_with(|| a.cmp(b)));
    out
}

fn with_prefix(e: &FreeElement, p: &str) -> FreeElement {
    FreeElement::from_graph(&e.graph().relabel_legs(|l| Label::new(format!("{p}{l}"))).expect("injective"))
}

fn ordered_pairs(legs: &[Label]) -> Vec<(Label, Label)> {
    let mut out = Vec::new();
    for a in legs {
        for b in legs {
            if a != b {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Renaming that sends the sorted labels to fresh names in reverse order.
fn reversing_rho(labels: &[Label]) -> BTreeMap<Label, Label> {
    let n = labels.len();
    labels.iter().enumerate().map(|(i, l)| (l.clone(), Label::new(format!("r{}", n - 1 - i)))).collect()
}

/// Every instance whose total flag count is at most `bound`, built from
/// the pool. Calls `f` for each.
fn exhaustive_instances(pool: &[FreeElement], bound: usize, f: &(dyn Fn(Instance) + Sync)) {
    let xs: Vec<FreeElement> = pool.iter().map(|e| with_prefix(e, "x")).collect();
    let ys: Vec<FreeElement> = pool.iter().map(|e| with_prefix(e, "y")).collect();
    let zs: Vec<FreeElement> = pool.iter().map(|e| with_prefix(e, "z")).collect();
    let legs = |e: &FreeElement| e.legs().into_iter().collect::<Vec<_>>();
    (0..xs.len()).into_par_iter().for_each(|i| {
        let x = &xs[i];
        let xl = legs(x);
        let fx = x.flag_count();
        for (a, b) in ordered_pairs(&xl).into_iter().filter(|(a, b)| a < b) {
            f(Instance::EqXi { x: x.clone(), a: a.clone(), b: b.clone(), rho: reversing_rho(&xl) });
            for (c, d) in ordered_pairs(&xl).into_iter().filter(|(c, d)| c < d && (&a, &b) < (c, d)) {
                if c != a && c != b && d != a && d != b {
                    f(Instance::XiXi { x: x.clone(), a: a.clone(), b: b.clone(), c, d });
                }
            }
        }
        for y in ys.iter().filter(|y| fx + y.flag_count() <= bound) {
            let yl = legs(y);
            let mut both: Vec<Label> = xl.iter().chain(yl.iter()).cloned().collect();
            both.sort();
            let rho = reversing_rho(&both);
            for a in &xl {
                for b in &yl {
                    f(Instance::Comm { x: x.clone(), a: a.clone(), y: y.clone(), b: b.clone() });
                    f(Instance::EqComp { x: x.clone(), a: a.clone(), y: y.clone(), b: b.clone(), rho: rho.clone() });
                }
            }
            for (a, c) in ordered_pairs(&xl) {
                for (b, d) in ordered_pairs(&yl) {
                    f(Instance::XiComp { x: x.clone(), a: a.clone(), c: c.clone(), y: y.clone(), b, d });
                }
                for other in xl.iter().filter(|o| **o != a && **o != c && a < c) {
                    for b in &yl {
                        f(Instance::XiLeft {
                            x: x.clone(),
                            c: a.clone(),
                            d: c.clone(),
                            a: other.clone(),
                            y: y.clone(),
                            b: b.clone(),
                        });
                    }
                }
            }
            for z in zs.iter().filter(|z| fx + y.flag_count() + z.flag_count() <= bound) {
                let zl = legs(z);
                for a in &xl {
                    for (b, c) in ordered_pairs(&yl) {
                        for d in &zl {
                            f(Instance::Assoc {
                                x: x.clone(),
                                a: a.clone(),
                                y: y.clone(),
                                b: b.clone(),
                                c: c.clone(),
                                z: z.clone(),
                                d: d.clone(),
                            });
                        }
                    }
                }
            }
        }
    });
}

/// Runs the random suite, the dead-end instance and, if configured, the
/// exhaustive pass.
pub fn check_axioms(spec: &ModuleSpec, cfg: &AxiomConfig) -> AxiomReport {
    let per_trial: Vec<Vec<(String, Option<AxiomFailure>)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let source = format!("trial {t}");
            trial_instances(spec, cfg, t)
                .into_iter()
                .map(|inst| (inst.axiom().to_string(), run_instance(inst.axiom(), &inst, &source)))
                .collect()
        })
        .collect();
    let mut checked: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for (axiom, fail) in per_trial.into_iter().flatten() {
        *checked.entry(axiom).or_insert(0) += 1;
        failures.extend(fail);
    }
    if let Some(inst) = dead_end(spec) {
        *checked.entry("dead-end".into()).or_insert(0) += 1;
        failures.extend(run_instance("dead-end", &inst, "dead end"));
    }
    if let Some(bound) = cfg.exhaustive_max_flags {
        let pool = exhaustive_pool(spec, bound);
        let results = std::sync::Mutex::new((BTreeMap::<String, usize>::new(), Vec::new()));
        exhaustive_instances(&pool, bound, &|inst| {
            let axiom = inst.axiom();
            let fail = run_instance(axiom, &inst, "exhaustive");
            let mut guard = results.lock().expect("not poisoned");
            *guard.0.entry(format!("{axiom} (exhaustive)")).or_insert(0) += 1;
            guard.1.extend(fail);
        });
        let (counts, mut fails) = results.into_inner().expect("not poisoned");
        fails.sort_by(|a: &AxiomFailure, b| (&a.axiom, &a.instance).cmp(&(&b.axiom, &b.instance)));
        checked.extend(counts);
        failures.extend(fails);
    }
    AxiomReport {
        mode: spec.mode,
        seed: cfg.seed,
        trials: cfg.trials,
        max_flags: cfg.max_flags,
        exhaustive_max_flags: cfg.exhaustive_max_flags,
        pass: failures.is_empty(),
        checked,
        failures,
    }
}
