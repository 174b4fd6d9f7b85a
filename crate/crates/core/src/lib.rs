//! Exact computation of repetitions in Sturmian words.
//!
//! A Sturmian slope is given by its continued fraction expansion (a finite
//! preperiod followed by an optional period). Every quantity the library
//! reports is derived from the partial quotients with exact integer
//! arithmetic: distances `‖nα‖` are linear forms `qα − p` whose signs are
//! decided from convergent enclosures, never from floating point.
//!
//! The modules follow the structure of the theory:
//!
//! * [`exactnum`]: continued fractions, convergents, linear forms and
//!   certified comparison.
//! * [`rotation`]: orbit points of the rotation by `α`, codings, factor
//!   intervals and the three-gap partition.
//! * [`words`]: finite binary words, standard and semistandard words.
//! * [`repetitions`]: indices and fractional indices of factors, square
//!   lengths, conjugacy classes and the critical exponent.
//! * [`verify`]: sweeps that check the structural results against brute
//!   force oracles.

pub mod error;
pub mod exactnum;
pub mod repetitions;
pub mod rotation;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use exactnum::{
    best_approximations, closest_multiples, CertifiedEnclosure, ContinuedFraction, Convergent,
    LinearForm, SemiconvergentId, Slope, DEFAULT_DEPTH_LIMIT,
};
pub use repetitions::{
    classify_length, conjugacy_report, critical_exponent, fractional_index, index_by_interval,
    index_oracle, square_lengths, CaseTag, ConjugacyReport, CriticalExponentResult, IndexReport,
};
pub use rotation::{
    coding_prefix, factors_of_length, point_order, special_factors, three_distance,
    BoundaryConvention, Factor, FactorInterval, OrbitPoint, PartitionSummary,
};
pub use words::{semistandard_word, standard_word, Word};
