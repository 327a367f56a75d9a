//! JSON graph format:
//! `{"flags":[…],"involution":{"h":"h'"},"vertices":[{"genus":0,"blocks":[["h1","h2"],[]]}],"legs":{"h3":"a"}}`.
//!
//! Fixed points appear explicitly in `involution`. Symmetric graphs carry a
//! leading `"mode":"symmetric"`; decorated vertices carry a `"tag"`. Output
//! lists everything in flag order, so printing a parsed graph reproduces
//! the input byte for byte.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{GraphMode, NsGraph, Vertex};
use crate::error::{Error, Result};
use crate::orders::Label;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    genus: u32,
    #[serde(default)]
    tag: Option<Label>,
    blocks: Vec<Vec<Label>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default)]
    mode: Option<GraphMode>,
    flags: Vec<Label>,
    involution: BTreeMap<Label, Label>,
    vertices: Vec<VertexJson>,
    #[serde(default)]
    legs: BTreeMap<Label, Label>,
}

/// Parses without validating; only references to unknown flags are errors.
pub fn graph_from_json_unchecked(s: &str) -> Result<NsGraph> {
    let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut index: HashMap<&Label, usize> = HashMap::new();
    for (i, name) in raw.flags.iter().enumerate() {
        index.entry(name).or_insert(i);
    }
    let lookup =
        |name: &Label| index.get(name).copied().ok_or_else(|| Error::InvalidGraph(format!("unknown flag `{name}`")));
    let f = raw.flags.len();
    let mut sigma = vec![usize::MAX; f];
    for (a, b) in &raw.involution {
        sigma[lookup(a)?] = lookup(b)?;
    }
    let mut legs = vec![None; f];
    for (h, l) in &raw.legs {
        legs[lookup(h)?] = Some(l.clone());
    }
    let vertices = raw
        .vertices
        .iter()
        .map(|v| {
            Ok(Vertex {
                genus: v.genus,
                tag: v.tag.clone(),
                blocks: v
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(lookup).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NsGraph::from_parts_unchecked(raw.mode.unwrap_or(GraphMode::NonSigma), raw.flags, sigma, vertices, legs))
}

/// Parses and validates.
pub fn graph_from_json(s: &str) -> Result<NsGraph> {
    let g = graph_from_json_unchecked(s)?;
    g.check()?;
    Ok(g)
}

pub fn graph_to_value(g: &NsGraph) -> Value {
    let name = |h: usize| Value::String(g.names[h].as_str().to_string());
    let mut obj = Map::new();
    if g.mode == GraphMode::Symmetric {
        obj.insert("mode".into(), json!("symmetric"));
    }
    obj.insert("flags".into(), Value::Array((0..g.flag_count()).map(name).collect()));
    let mut inv = Map::new();
    for h in 0..g.flag_count() {
        inv.insert(g.names[h].as_str().to_string(), name(g.sigma[h]));
    }
    obj.insert("involution".into(), Value::Object(inv));
    let vertices: Vec<Value> = g
        .vertices
        .iter()
        .map(|v| {
            let mut o = Map::new();
            o.insert("genus".into(), json!(v.genus));
            if let Some(t) = &v.tag {
                o.insert("tag".into(), json!(t.as_str()));
            }
            let blocks: Vec<Value> =
                v.blocks.iter().map(|b| Value::Array(b.iter().map(|&h| name(h)).collect())).collect();
            o.insert("blocks".into(), Value::Array(blocks));
            Value::Object(o)
        })
        .collect();
    obj.insert("vertices".into(), Value::Array(vertices));
    let mut legs = Map::new();
    for h in 0..g.flag_count() {
        if let Some(l) = &g.legs[h] {
            legs.insert(g.names[h].as_str().to_string(), json!(l.as_str()));
        }
    }
    obj.insert("legs".into(), Value::Object(legs));
    Value::Object(obj)
}

pub fn graph_to_json(g: &NsGraph) -> String {
    graph_to_value(g).to_string()
}
