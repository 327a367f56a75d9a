use thiserror::Error;

use crate::orders::Label;

/// Errors raised by the order, graph, operad and envelope operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: label `{0}` occurs more than once")]
    InvalidWord(Label),
    #[error("label `{0}` does not occur where it was expected")]
    MissingLabel(Label),
    #[error("label `{0}` occurs on both sides of the operation")]
    LabelClash(Label),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("({0}) is not geometric")]
    NotGeometric(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("`{0}` is not a leg")]
    NotALeg(Label),
    #[error("invalid self-gluing: {0}")]
    InvalidGlue(String),
    #[error("flag `{0}` does not belong to a loop")]
    NotALoop(Label),
    #[error("flag `{0}` is a loop; use loop contraction")]
    IsALoop(Label),
    #[error("no edge at flag `{0}`")]
    NoSuchEdge(Label),
    #[error("vertex {0} is not a ribbon generator (genus 0, one boundary block)")]
    NotRibbon(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluator failed: {0}")]
    Evaluator(String),
}

impl Error {
    /// A stable machine-readable name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidWord(_) => "invalid_word",
            Error::MissingLabel(_) => "missing_label",
            Error::LabelClash(_) => "label_clash",
            Error::InvalidCut(_) => "invalid_cut",
            Error::NotGeometric(_) => "not_geometric",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::NotALeg(_) => "not_a_leg",
            Error::InvalidGlue(_) => "invalid_glue",
            Error::NotALoop(_) => "not_a_loop",
            Error::IsALoop(_) => "is_a_loop",
            Error::NoSuchEdge(_) => "no_such_edge",
            Error::NotRibbon(_) => "not_ribbon",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
            Error::Evaluator(_) => "evaluator",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
