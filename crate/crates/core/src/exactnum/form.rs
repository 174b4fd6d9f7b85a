use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The exact real number `q·α − p` for integers `q`, `p`.
///
/// Distances `‖nα‖`, orbit positions `{nα}` and interval lengths are all of
/// this shape. Since `α` is irrational two forms have the same value exactly
/// when their coefficients agree, so the derived `Eq` is value equality.
/// The derived `Ord` is only a structural order for use as a map key; value
/// comparisons go through [`Slope::compare`](super::Slope::compare).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    pub q: i128,
    pub p: i128,
}

impl LinearForm {
    pub const ZERO: LinearForm = LinearForm { q: 0, p: 0 };
    pub const ONE: LinearForm = LinearForm { q: 0, p: -1 };
    pub const ALPHA: LinearForm = LinearForm { q: 1, p: 0 };

    pub fn new(q: i128, p: i128) -> Self {
        Self { q, p }
    }

    /// Integer multiple.
    pub fn scale(self, m: i128) -> Self {
        Self {
            q: self.q * m,
            p: self.p * m,
        }
    }

    /// Exact value at the rational `x` substituted for `α`.
    pub fn eval_at(&self, x: &BigRational) -> BigRational {
        x * BigInt::from(self.q) - BigInt::from(self.p)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: Self) -> Self {
        Self {
            q: self.q + rhs.q,
            p: self.p + rhs.p,
        }
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: Self) -> Self {
        Self {
            q: self.q - rhs.q,
            p: self.p - rhs.p,
        }
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> Self {
        Self {
            q: -self.q,
            p: -self.p,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q, self.p) {
            (0, p) => write!(f, "{}", -p),
            (q, 0) => write!(f, "{q}α"),
            (q, p) if p < 0 => write!(f, "{q}α + {}", -p),
            (q, p) => write!(f, "{q}α − {p}"),
        }
    }
}
