//! Minimum r-identifying codes for paths and odd cycles, and minimum
//! 2-locating-dominating sets for cycles.
//!
//! The crate is organized in layers:
//!
//! * [`topology`] — path/cycle instances, distances, radius-r balls;
//! * [`verify`] — definitional checks and the characterization checks
//!   (window conditions on cycles and paths, separation census);
//! * [`bounds`] — closed-form minimum cardinalities with full case dispatch;
//! * [`construct`] — witness codes built from constraint streams, each
//!   recipe registered behind the [`construct::Recipe`] trait and validated
//!   before being returned;
//! * [`oracle`] — exhaustive ground-truth search for small instances;
//! * [`selftest`] — the invariant suite behind `idcode selftest`.

pub mod bounds;
pub mod construct;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod topology;
pub mod verify;

use thiserror::Error;

/// Errors shared across the library layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex count must be at least {min}, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("even cycles are not supported here (n = {n})")]
    EvenCycle { n: usize },
    #[error("instance is undefined: {reason}")]
    Undefined { reason: String },
    #[error("no characterization available for n = {n}, r = {r}")]
    NoCharacterization { n: usize, r: usize },
    #[error("search budget exceeded: n = {n} > max_n = {max_n}")]
    BudgetExceeded { n: usize, max_n: usize },
    #[error("candidate cap of {cap} candidates exhausted")]
    CandidateCapExceeded { cap: u64 },
    #[error("no construction recipe applies to this instance")]
    NoRecipe,
    #[error("construction failed: {reason}")]
    ConstructionFailed { reason: String },
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
    #[error("internal invariant violated: {reason}")]
    Internal { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
