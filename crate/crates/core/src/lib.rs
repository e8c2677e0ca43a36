//! Sumset arithmetic and additively left-stable sets, over the integers and
//! the reals.
//!
//! Discrete side: bit-set sumsets (`intset`), the left-stability predicate
//! with its sharp prefix bound and extremal construction (`stability`),
//! sumset-size classification, critical-set decomposition and the
//! progression-forcing inequality checks (`freiman`), and an exhaustive
//! census of left-stable sets at small diameter (`census`).
//!
//! Continuous side (`continuum`): exact rational interval-union Minkowski
//! algebra, the continuous stability predicate and prefix bound, the unique
//! extremal construction, the two-branch sumset lower bound, and critical-set
//! envelope checks.

pub mod census;
pub mod continuum;
pub mod freiman;
pub mod intset;
pub mod rational;
pub mod report;
pub mod stability;

pub use census::{
    enumerate_left_stable, full_census, full_census_unchecked, naive_enumerate_left_stable,
    remark_sets, sharpness_census, verify_remark_sets, CensusConstraints, CensusError,
    CensusResult, EnumOptions, CENSUS_CSV_HEADER, DEFAULT_CENSUS_CAP,
};
pub use continuum::{
    construct_extremal_cont, critical_envelope_check, h_cont, is_left_stable_cont,
    lemma_cont_bound, prefix_envelope_violation, ruzsa_check, ContStability, ContinuumError,
    EnvelopeCheck, IntervalUnion, RuzsaReport,
};
pub use freiman::{
    classify, decompose_critical, freiman_3k4_pair_check, grynkiewicz_check, grynkiewicz_params,
    CriticalDecomposition, FreimanCategory, FreimanClass, FreimanError, GrynkiewiczCheck,
    GrynkiewiczParams, PairCheck3k4,
};
pub use intset::{
    k_fold_sum, normalize, parse_set_literal, prefix, prefix_count, stats, sumset, IntSet,
    SetError, SetStats, DEFAULT_MAX_ELEMENT,
};
pub use rational::Rational;
pub use report::{Report, Verdict};
pub use stability::{
    construct_extremal_disc, h_disc, h_disc_monotone_scan, is_left_stable, lemma_disc_bound,
    HDiscParams, StabilityError, StabilityReport, Violation,
};
