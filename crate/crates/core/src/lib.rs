//! Multicyclic orders, non-Σ modular graphs, the free non-Σ modular operad
//! and modular envelopes of terminal cyclic operads, computed at the level
//! of finite sets.

pub mod cli;
pub mod dihedral;
pub mod envelope;
pub mod error;
pub mod graphs;
pub mod operads;
pub mod orders;

pub use error::{Error, Result};
