//! Text syntax: `(a b c)` for cyclic and linear words, `{(a b c) (d) ()}`
//! for multicyclic orders. Commas may replace spaces. A multicyclic order
//! may also be given as its JSON mirror.

use super::{CyclicWord, Label, LinearWord, MulticyclicType, TypedArity};
use crate::error::{Error, Result};

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '{' | '}' | ',')
}

/// Splits the inside of one parenthesized group into label names.
pub(crate) fn split_names(body: &str) -> Vec<&str> {
    body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect()
}

/// Extracts the contents of every `( … )` group in `s`, rejecting stray
/// text between groups.
pub(crate) fn groups(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = s.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected `(` at `{rest}`")));
        }
        let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed `(` in `{s}`")))?;
        let body = &rest[1..close];
        if body.contains('(') {
            return Err(Error::Parse(format!("nested `(` in `{s}`")));
        }
        out.push(body);
        rest = rest[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(out)
}

fn word_names(s: &str) -> Result<Vec<Label>> {
    let t = s.trim();
    let body = if t.starts_with('(') {
        let g = groups(t)?;
        if g.len() != 1 {
            return Err(Error::Parse(format!("expected one word, got `{t}`")));
        }
        g[0]
    } else {
        if t.contains(is_delim_bracket) {
            return Err(Error::Parse(format!("unexpected bracket in `{t}`")));
        }
        t
    };
    Ok(split_names(body).into_iter().map(Label::new).collect())
}

fn is_delim_bracket(c: char) -> bool {
    is_delim(c) && !c.is_whitespace() && c != ','
}

/// Parses `(a b c)` or a bare `a b c`.
pub fn parse_linear_word(s: &str) -> Result<LinearWord> {
    LinearWord::new(word_names(s)?)
}

pub fn parse_cyclic_word(s: &str) -> Result<CyclicWord> {
    CyclicWord::new(word_names(s)?)
}

/// Parses `{(a b) (c) ()}`, a single word `(a b)`, or the JSON mirror.
pub fn parse_multicyclic_type(s: &str) -> Result<MulticyclicType> {
    let t = s.trim();
    if t.starts_with('{') && t[1..].trim_start().starts_with('"') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
    }
    let inner = if let Some(stripped) = t.strip_prefix('{') {
        stripped.strip_suffix('}').ok_or_else(|| Error::Parse(format!("unclosed `{{` in `{t}`")))?
    } else {
        t
    };
    let words = groups(inner)?
        .into_iter()
        .map(|body| CyclicWord::new(split_names(body).into_iter().map(Label::new).collect()))
        .collect::<Result<Vec<_>>>()?;
    MulticyclicType::new(words)
}

/// Parses `({(a b) ()}; 1)`, the same without outer parentheses, or the
/// JSON mirror `{"type":{…},"genus":1}`.
pub fn parse_typed_arity(s: &str) -> Result<TypedArity> {
    let t = s.trim();
    if t.starts_with('{') && t[1..].trim_start().starts_with('"') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
    }
    let inner = match t.strip_prefix('(') {
        Some(rest) if rest.trim_start().starts_with('{') => {
            rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unclosed `(` in `{t}`")))?
        }
        _ => t,
    };
    let (stype, genus) =
        inner.rsplit_once(';').ok_or_else(|| Error::Parse(format!("expected `type; genus` in `{t}`")))?;
    let genus = genus.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad genus `{}`: {e}", genus.trim())))?;
    Ok(TypedArity::new(parse_multicyclic_type(stype)?, genus))
}
