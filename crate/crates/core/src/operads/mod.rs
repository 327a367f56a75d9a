//! The free non-Σ modular operad on a finitely generated module.
//!
//! Elements are isomorphism classes of graphs whose vertices carry a
//! generator id. Composition grafts two graphs along a pair of legs,
//! contraction self-glues two legs of one graph; both end in
//! canonicalization. Generators are trivially equivariant, so a vertex only
//! has to match its generator's shape.

pub mod axioms;
pub mod contract;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{
    canonical, enumerate_graphs, structured_search, GraphClass, GraphMode, NsGraph, Vertex, VertexConstraint,
    VertexShape,
};
use crate::orders::{Label, MulticyclicType, TypedArity};

pub use axioms::{check_axioms, AxiomConfig, AxiomFailure, AxiomReport};
pub use contract::{
    contract_along, contract_along_with, default_schedule, Evaluator, FreeEvaluator, TerminalEvaluator, VertexData,
};

/// Which vertices a generator decorates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorArity {
    /// One point in every genus-0 one-block arity: the terminal cyclic family.
    AnyCyclic,
    /// A single typed arity.
    Typed(TypedArity),
    /// One point for every finite set in genus 0 (symmetric terminal family).
    AnySet,
    /// A single finite-set arity of the given size and genus.
    Set { size: usize, genus: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: Label,
    pub arity: GeneratorArity,
}

impl Generator {
    /// The generator's fixed vertex shape, if it has one.
    pub fn shape(&self) -> Option<VertexShape> {
        match &self.arity {
            GeneratorArity::Typed(t) => {
                Some(VertexShape { tag: Some(self.id.clone()), genus: t.genus, blocks: t.stype.shape() })
            }
            GeneratorArity::Set { size, genus } => {
                Some(VertexShape { tag: Some(self.id.clone()), genus: *genus, blocks: vec![*size] })
            }
            GeneratorArity::AnyCyclic | GeneratorArity::AnySet => None,
        }
    }

    fn admits(&self, mode: GraphMode, v: &Vertex) -> bool {
        if v.tag.as_ref() != Some(&self.id) {
            return false;
        }
        match (&self.arity, mode) {
            (GeneratorArity::AnyCyclic, GraphMode::NonSigma) => v.genus == 0 && v.b() == 1,
            (GeneratorArity::AnySet, GraphMode::Symmetric) => v.genus == 0,
            (GeneratorArity::Typed(_), GraphMode::NonSigma) | (GeneratorArity::Set { .. }, GraphMode::Symmetric) => {
                let shape = self.shape().expect("fixed shape");
                let mut sizes: Vec<usize> = v.blocks.iter().map(Vec::len).collect();
                sizes.sort_unstable();
                if mode == GraphMode::Symmetric {
                    sizes = vec![v.degree()];
                }
                v.genus == shape.genus && sizes == shape.blocks
            }
            _ => false,
        }
    }
}

/// A finite list of generators in one mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub mode: GraphMode,
    pub generators: Vec<Generator>,
    /// When set, every typed generator must have a geometric arity.
    pub geometric: bool,
}

impl ModuleSpec {
    pub fn new(mode: GraphMode, generators: Vec<Generator>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for g in &generators {
            if !ids.insert(g.id.clone()) {
                return Err(Error::Parse(format!("generator id `{}` is used twice", g.id)));
            }
            let ok = matches!(
                (&g.arity, mode),
                (GeneratorArity::AnyCyclic | GeneratorArity::Typed(_), GraphMode::NonSigma)
                    | (GeneratorArity::AnySet | GeneratorArity::Set { .. }, GraphMode::Symmetric)
            );
            if !ok {
                return Err(Error::Parse(format!("generator `{}` does not fit {mode} mode", g.id)));
            }
        }
        if generators.is_empty() {
            return Err(Error::Parse("a module needs at least one generator".into()));
        }
        Ok(ModuleSpec { mode, generators, geometric: false })
    }

    /// Turns on geometric mode after checking every generator.
    pub fn into_geometric(mut self) -> Result<Self> {
        for g in &self.generators {
            if let GeneratorArity::Typed(t) = &g.arity {
                if !t.is_geometric() {
                    return Err(Error::NotGeometric(format!("generator `{}` of arity {t}", g.id)));
                }
            }
        }
        self.geometric = true;
        Ok(self)
    }

    /// The terminal module with a single generator id `*`.
    pub fn terminal(mode: GraphMode) -> Self {
        let arity = match mode {
            GraphMode::NonSigma => GeneratorArity::AnyCyclic,
            GraphMode::Symmetric => GeneratorArity::AnySet,
        };
        ModuleSpec { mode, generators: vec![Generator { id: Label::new("*"), arity }], geometric: false }
    }

    /// Generators `m` of arity `({(p q r)}, 0)` and `n` of arity
    /// `({(p) (q)}, 1)`.
    pub fn two_generator() -> Self {
        let t = |s: &str, g| TypedArity::new(crate::orders::parse_multicyclic_type(s).expect("literal"), g);
        ModuleSpec {
            mode: GraphMode::NonSigma,
            generators: vec![
                Generator { id: Label::new("m"), arity: GeneratorArity::Typed(t("{(p q r)}", 0)) },
                Generator { id: Label::new("n"), arity: GeneratorArity::Typed(t("{(p) (q)}", 1)) },
            ],
            geometric: false,
        }
    }

    pub fn generator(&self, id: &Label) -> Option<&Generator> {
        self.generators.iter().find(|g| &g.id == id)
    }

    pub fn is_terminal_family(&self) -> bool {
        self.generators.len() == 1
            && matches!(self.generators[0].arity, GeneratorArity::AnyCyclic | GeneratorArity::AnySet)
    }

    /// True iff every vertex of `g` is a generator of this module.
    pub fn admits(&self, g: &NsGraph) -> bool {
        g.mode() == self.mode
            && g.vertices()
                .iter()
                .all(|v| v.tag.as_ref().and_then(|t| self.generator(t)).is_some_and(|gen| gen.admits(self.mode, v)))
    }

    /// Every generator has a geometric arity.
    pub fn is_geometric(&self) -> bool {
        self.generators.iter().all(|g| match &g.arity {
            GeneratorArity::Typed(t) => t.is_geometric(),
            _ => true,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SpecJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let gens = raw
            .generators
            .into_iter()
            .map(|g| {
                let arity = match (raw.mode, g.stype, g.legs) {
                    (GraphMode::NonSigma, Some(t), None) => GeneratorArity::Typed(TypedArity::new(t, g.genus)),
                    (GraphMode::NonSigma, None, None) => GeneratorArity::AnyCyclic,
                    (GraphMode::Symmetric, None, Some(legs)) => {
                        GeneratorArity::Set { size: legs.len(), genus: g.genus }
                    }
                    (GraphMode::Symmetric, None, None) => GeneratorArity::AnySet,
                    _ => return Err(Error::Parse(format!("generator `{}` has the wrong arity format", g.id))),
                };
                if matches!(arity, GeneratorArity::AnyCyclic | GeneratorArity::AnySet) && g.genus != 0 {
                    return Err(Error::Parse(format!("terminal generator `{}` must have genus 0", g.id)));
                }
                Ok(Generator { id: g.id, arity })
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = ModuleSpec::new(raw.mode, gens)?;
        if raw.geometric {
            spec.into_geometric()
        } else {
            Ok(spec)
        }
    }

    pub fn to_json(&self) -> String {
        let gens: Vec<GenJson> = self
            .generators
            .iter()
            .map(|g| match &g.arity {
                GeneratorArity::AnyCyclic | GeneratorArity::AnySet => {
                    GenJson { id: g.id.clone(), stype: None, legs: None, genus: 0 }
                }
                GeneratorArity::Typed(t) => {
                    GenJson { id: g.id.clone(), stype: Some(t.stype.clone()), legs: None, genus: t.genus }
                }
                GeneratorArity::Set { size, genus } => GenJson {
                    id: g.id.clone(),
                    stype: None,
                    legs: Some((0..*size).map(|i| Label::new(format!("p{i}"))).collect()),
                    genus: *genus,
                },
            })
            .collect();
        serde_json::to_string(&SpecJson { mode: self.mode, generators: gens, geometric: self.geometric })
            .expect("serializable")
    }

    fn constraint(&self) -> Result<VertexConstraint> {
        if self.is_terminal_family() {
            return Ok(match self.mode {
                GraphMode::NonSigma => VertexConstraint::Ribbon,
                GraphMode::Symmetric => VertexConstraint::Symmetric,
            });
        }
        let shapes = self
            .generators
            .iter()
            .map(|g| {
                g.shape().ok_or_else(|| {
                    Error::Unsupported("terminal-family generators cannot be mixed with other generators".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexConstraint::Shapes(self.mode, shapes))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenJson {
    id: Label,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    stype: Option<MulticyclicType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legs: Option<Vec<Label>>,
    #[serde(default)]
    genus: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    mode: GraphMode,
    generators: Vec<GenJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    geometric: bool,
}

/// An element of the free operad: a canonical generator-decorated graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeElement(GraphClass);

impl FreeElement {
    /// Canonicalizes `g` after checking that every vertex is a generator.
    pub fn new(spec: &ModuleSpec, g: &NsGraph) -> Result<Self> {
        g.check()?;
        if !spec.admits(g) {
            return Err(Error::InvalidGraph("a vertex does not match any generator".into()));
        }
        Ok(FreeElement(canonical(g)))
    }

    pub(crate) fn from_graph(g: &NsGraph) -> Self {
        FreeElement(canonical(g))
    }

    /// The corolla of generator `id` on a given multicyclic order (non-Σ).
    pub fn generator(spec: &ModuleSpec, id: &Label, stype: &MulticyclicType, genus: u32) -> Result<Self> {
        Self::new(spec, &NsGraph::corolla(stype, genus).with_tag(id))
    }

    /// The corolla of generator `id` on a finite set (symmetric).
    pub fn set_generator(spec: &ModuleSpec, id: &Label, legs: &BTreeSet<Label>, genus: u32) -> Result<Self> {
        Self::new(spec, &NsGraph::symmetric_corolla(legs, genus).with_tag(id))
    }

    pub fn class(&self) -> &GraphClass {
        &self.0
    }

    pub fn graph(&self) -> &NsGraph {
        self.0.rep()
    }

    pub fn arity(&self) -> Result<TypedArity> {
        self.graph().arity()
    }

    pub fn legs(&self) -> BTreeSet<Label> {
        self.graph().leg_labels()
    }

    pub fn flag_count(&self) -> usize {
        self.graph().flag_count()
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({})", crate::graphs::graph_to_json(self.graph()))
    }
}

/// `x ∘_{uv} y`.
pub fn compose_free(x: &FreeElement, u: &Label, y: &FreeElement, v: &Label) -> Result<FreeElement> {
    Ok(FreeElement::from_graph(&x.graph().graft(u, y.graph(), v)?))
}

/// `ξ_{uv} x`.
pub fn contract_free(x: &FreeElement, u: &Label, v: &Label) -> Result<FreeElement> {
    Ok(FreeElement::from_graph(&x.graph().self_glue(u, v)?))
}

/// Renames leg labels; labels missing from `map` stay.
pub fn relabel(x: &FreeElement, map: &BTreeMap<Label, Label>) -> Result<FreeElement> {
    Ok(FreeElement::from_graph(&x.graph().relabel_legs_with(map)?))
}

/// All elements of arity `t` with at most `vmax` vertices (non-Σ).
pub fn free_component(spec: &ModuleSpec, t: &TypedArity, vmax: usize) -> Result<Vec<FreeElement>> {
    if spec.mode != GraphMode::NonSigma {
        return Err(Error::Unsupported("typed components need a non-Sigma module".into()));
    }
    let legs = t.stype.labels();
    let classes = generate(spec, &legs, t.genus, vmax)?;
    let mut out: Vec<FreeElement> = classes
        .into_iter()
        .filter(|c| c.rep().leg_type().as_ref() == Ok(&t.stype))
        .map(|c| FreeElement::from_graph(c.rep()))
        .collect();
    out.sort();
    Ok(out)
}

/// All elements with legs `legs` and genus `g` with at most `vmax`
/// vertices (symmetric).
pub fn free_component_set(spec: &ModuleSpec, legs: &BTreeSet<Label>, g: u32, vmax: usize) -> Result<Vec<FreeElement>> {
    if spec.mode != GraphMode::Symmetric {
        return Err(Error::Unsupported("set components need a symmetric module".into()));
    }
    let mut out: Vec<FreeElement> =
        generate(spec, legs, g, vmax)?.into_iter().map(|c| FreeElement::from_graph(c.rep())).collect();
    out.sort();
    Ok(out)
}

fn generate(spec: &ModuleSpec, legs: &BTreeSet<Label>, g: u32, vmax: usize) -> Result<Vec<GraphClass>> {
    let constraint = spec.constraint()?;
    Ok(match &constraint {
        VertexConstraint::Ribbon | VertexConstraint::Symmetric => {
            let id = &spec.generators[0].id;
            enumerate_graphs(legs, g, vmax, &constraint)
                .into_iter()
                .map(|c| canonical(&c.into_rep().with_tag(id)))
                .collect()
        }
        VertexConstraint::Shapes(..) => structured_search(legs, g, vmax, &constraint),
    })
}
