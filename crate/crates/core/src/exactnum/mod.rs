//! Continued fractions, convergents and certified comparison of linear
//! forms `qα − p`.

mod approx;
mod cf;
mod form;
mod slope;

pub use approx::{best_approximations, closest_multiples, SemiconvergentId};
pub use cf::{parse_slope, ContinuedFraction};
pub use form::LinearForm;
pub use slope::{round_significant, CertifiedEnclosure, Convergent, Slope, DEFAULT_DEPTH_LIMIT};
