//! Continuous counterpart of the discrete modules: exact rational
//! interval-union Minkowski algebra, the continuous stability predicate and
//! prefix bound, the extremal construction, the two-branch sumset lower
//! bound, and critical-set envelope checks.

mod bounds;
mod envelope;
mod interval;
mod ruzsa;

pub use bounds::{
    construct_extremal_cont, h_cont, h_cont_piece, is_left_stable_cont, lemma_cont_bound,
    ContStability,
};
pub use envelope::{
    critical_envelope_check, prefix_envelope_violation, EnvelopeCandidate, EnvelopeCheck,
    EnvelopeViolation,
};
pub use interval::IntervalUnion;
pub use ruzsa::{ruzsa_check, RuzsaReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContinuumError {
    #[error("empty set")]
    Empty,
    #[error("inverted interval: [{lo}, {hi}]")]
    InvertedInterval { lo: String, hi: String },
    #[error("zero-measure input")]
    ZeroMeasure,
    #[error("x out of range: x={x} must lie in (0, {d}]")]
    XOutOfRange { x: String, d: String },
    #[error("inf must be 0, got {0}")]
    InfNotZero(String),
    #[error("lemma hypothesis violated: {0}")]
    LemmaHypothesis(&'static str),
    #[error(
        "not critical: λ(A+A)={sum} must equal diam+λ={diam_plus_lam} and be below 3λ={three_lam}"
    )]
    NotCritical {
        sum: String,
        diam_plus_lam: String,
        three_lam: String,
    },
    #[error("no candidate middle interval found (falsifies the critical decomposition theorem)")]
    NoCandidateInterval,
    #[error("{op}: postcondition failed: {which}")]
    PostconditionFailed {
        op: &'static str,
        which: &'static str,
    },
    #[error("{op}: theorem falsified on this input\n{detail}")]
    TheoremFalsified { op: &'static str, detail: String },
    #[error("bad interval-set JSON: {0}")]
    Json(String),
}
