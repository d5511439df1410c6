//! Latin squares, maximal partial transversals and the Cayley tables of
//! small groups.
//!
//! The crate builds explicit square families, checks maximal partial
//! transversal witnesses, computes the spectrum of achievable lengths by
//! pruned exhaustive search and classifies squares and groups as
//! omniversal, near-omniversal or neither.

pub mod cache;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod engine;
pub mod extension;
pub mod group;
pub mod report;
pub mod square;

pub use engine::{PartialTransversal, SearchBudget, SearchOutcome};
pub use group::{Group, Subgroup};
pub use report::{LengthStatus, SpectrumReport, Verdict};
pub use square::{LatinSquare, SubmatrixWindow, Triple};
