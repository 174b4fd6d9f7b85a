use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{round_significant, ContinuedFraction, LinearForm, Slope};

/// The fractional index `2 + a_k + (q_{k−2} − 2)/q_{k−1}` of `s_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub k: usize,
    pub a_k: u64,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriticalValue {
    /// `a_1` exceeds every term.
    FirstQuotient(u64),
    /// The largest term, attained at index `k`.
    Attained { k: usize, value: BigRational },
    /// An unattained supremum `integer + β`, where `β ∈ (0, 1)` has the
    /// given continued fraction.
    Limit { integer: u64, beta: ContinuedFraction },
    /// Truncated expansion: the largest value visible at the available
    /// depth, a lower bound for the true critical exponent.
    LowerBound { value: BigRational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalExponentResult {
    pub value: CriticalValue,
    /// Index of the term attaining the value, or of the deepest computed
    /// term in the class approaching it.
    pub witness_k: usize,
    pub terms: Vec<Term>,
    /// 12 significant digits read off a certified enclosure.
    pub approx: String,
    /// Reserved for slopes with unbounded partial quotients, which the
    /// periodic and truncated inputs accepted here never have.
    pub unbounded: bool,
}

impl CriticalExponentResult {
    pub const BOUNDEDNESS_NOTE: &'static str =
        "the fractional index is bounded if and only if the partial quotients are bounded";

    pub fn is_exact(&self) -> bool {
        !matches!(self.value, CriticalValue::LowerBound { .. })
    }

    pub fn to_f64(&self) -> f64 {
        match &self.value {
            CriticalValue::FirstQuotient(a) => *a as f64,
            CriticalValue::Attained { value, .. } | CriticalValue::LowerBound { value } => {
                value.to_f64().unwrap_or(f64::NAN)
            }
            CriticalValue::Limit { integer, beta } => {
                *integer as f64 + Slope::new(beta.clone()).to_f64(LinearForm::ALPHA)
            }
        }
    }
}

fn term(slope: &Slope, k: usize) -> Result<Term> {
    let a_k = slope.a(k)?;
    let num = slope.q(k - 2)? - BigInt::from(2);
    let frac = BigRational::new(num, slope.q(k - 1)?.clone());
    Ok(Term {
        k,
        a_k,
        value: frac + BigInt::from(2 + a_k),
    })
}

// Compares [0; b_1, b_2, …] for two purely periodic expansions of equal
// period length; the first differing quotient decides, with the direction
// alternating by position.
fn compare_periodic(x: &[u64], y: &[u64]) -> Ordering {
    for (i, (a, b)) in x.iter().zip(y).enumerate() {
        if a != b {
            let larger_quotient_is_smaller = i % 2 == 0;
            return if (a > b) == larger_quotient_is_smaller {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

// Sign of the rational r minus the irrational β.
fn compare_rational(beta: &Slope, r: &BigRational) -> Result<Ordering> {
    let (u, v) = (
        r.numer().to_i128().ok_or(Error::Overflow)?,
        r.denom().to_i128().ok_or(Error::Overflow)?,
    );
    // r − β has the sign of u − vβ = −(vβ − u)
    Ok(beta.sign(LinearForm::new(v, u))?.reverse())
}

/// Supremum of the fractional indices of all factors:
/// `max{a_1, sup_{k≥2} (2 + a_k + (q_{k−2} − 2)/q_{k−1})}`.
///
/// Terms are tabulated for `2 ≤ k ≤ depth_bound`. For a periodic expansion
/// the supremum is exact: each residue class of `k` modulo the period has
/// terms converging to `2 + a_k + β`, where `β` reads the period backwards,
/// and from some index on every term lies strictly below its limit.
pub fn critical_exponent(slope: &Slope, depth_bound: usize) -> Result<CriticalExponentResult> {
    slope.require_normalized()?;
    if depth_bound < 2 {
        return Err(Error::OutOfRange("depth bound must be at least 2".into()));
    }
    let a1 = slope.a(1)?;
    let d = depth_bound.min(slope.depth());
    if d < 2 {
        return Err(Error::DepthExceeded {
            requested: 2,
            available: slope.depth(),
        });
    }
    let terms = (2..=d).map(|k| term(slope, k)).collect::<Result<Vec<_>>>()?;

    let best_of = |upto: usize| -> Option<&Term> {
        terms
            .iter()
            .take_while(|t| t.k <= upto)
            .fold(None, |acc: Option<&Term>, t| match acc {
                Some(b) if b.value >= t.value => Some(b),
                _ => Some(t),
            })
    };

    if slope.is_truncated() {
        let best = best_of(d).expect("at least one term");
        let a1r = BigRational::from_integer(BigInt::from(a1));
        let (value, witness_k) = if a1r > best.value {
            (a1r, 1)
        } else {
            (best.value.clone(), best.k)
        };
        let approx = round_significant(&value, 12);
        return Ok(CriticalExponentResult {
            value: CriticalValue::LowerBound { value },
            witness_k,
            terms,
            approx,
            unbounded: false,
        });
    }

    let cf = slope.cf();
    let m0 = cf.preperiod().len();
    let period = cf.period();
    let r = period.len();

    // First index K from which every term is below its class limit: the
    // continuant Q of a_{m0+1} … a_{K−1} must reach (q_{m0} + q_{m0−1})/2.
    let q_m = slope.q(m0)?.clone();
    let q_m1 = if m0 == 0 { BigInt::from(0) } else { slope.q(m0 - 1)?.clone() };
    let threshold = q_m + q_m1;
    let (mut c0, mut c1) = (BigInt::from(0), BigInt::one());
    let mut k_star = m0 + 1;
    while BigInt::from(2) * &c1 < threshold || k_star < 2 {
        let a = slope.a(k_star)?;
        let c2 = BigInt::from(a) * &c1 + &c0;
        c0 = std::mem::replace(&mut c1, c2);
        k_star += 1;
    }
    if k_star > d {
        return Err(Error::DepthExceeded {
            requested: k_star,
            available: d,
        });
    }

    // class c holds k = m0 + 1 + c + t·r
    let class_of = |k: usize| (k - m0 - 1) % r;
    let reversed = |c: usize| -> Vec<u64> { (1..=r).map(|i| period[(c + r * r - i) % r]).collect() };
    let mut best_class = 0;
    for c in 1..r {
        let ord = period[c]
            .cmp(&period[best_class])
            .then_with(|| compare_periodic(&reversed(c), &reversed(best_class)));
        if ord == Ordering::Greater {
            best_class = c;
        }
    }
    let integer = 2 + period[best_class];
    let beta_cf = ContinuedFraction::periodic(&[], &reversed(best_class))?;
    let beta = Slope::new(beta_cf.clone());

    // the finite candidates: terms with k < K, and a_1
    let finite = best_of(k_star - 1);
    let a1r = BigRational::from_integer(BigInt::from(a1));
    let (top, top_k) = match finite {
        Some(t) if t.value > a1r => (t.value.clone(), t.k),
        _ => (a1r, 1),
    };
    let shifted = &top - BigRational::from_integer(BigInt::from(integer));
    let witness_limit = (2..=d).rev().find(|&k| k > m0 && class_of(k) == best_class).unwrap_or(d);

    let (value, witness_k, approx) = if compare_rational(&beta, &shifted)? == Ordering::Greater {
        let approx = round_significant(&top, 12);
        let value = if top_k == 1 {
            CriticalValue::FirstQuotient(a1)
        } else {
            CriticalValue::Attained {
                k: top_k,
                value: top,
            }
        };
        (value, top_k, approx)
    } else {
        let approx = beta.to_decimal(LinearForm::new(1, -(integer as i128)), 12);
        (
            CriticalValue::Limit {
                integer,
                beta: beta_cf,
            },
            witness_limit,
            approx,
        )
    };
    Ok(CriticalExponentResult {
        value,
        witness_k,
        terms,
        approx,
        unbounded: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    #[test]
    fn fibonacci_supremum() {
        let r = critical_exponent(&slope("[0;2,(1)]"), 30).unwrap();
        let want = 3.0 + (5f64.sqrt() - 1.0) / 2.0;
        assert!((r.to_f64() - want).abs() < 1e-12);
        assert!(matches!(r.value, CriticalValue::Limit { integer: 3, .. }));
        assert_eq!(r.approx, "3.61803398875");
        assert_eq!(r.terms.len(), 29);
    }

    #[test]
    fn silver_supremum() {
        let r = critical_exponent(&slope("[0;2,(2)]"), 30).unwrap();
        let want = 4.0 + 2f64.sqrt() - 1.0;
        assert!((r.to_f64() - want).abs() < 1e-12);
    }

    #[test]
    fn first_quotient_dominates() {
        let r = critical_exponent(&slope("[0;5,1,(1)]"), 20).unwrap();
        assert_eq!(r.value, CriticalValue::FirstQuotient(5));
        assert_eq!(r.approx, "5.00000000000");
    }

    #[test]
    fn truncation_gives_lower_bound() {
        let r = critical_exponent(&slope("[0;2,1,1,1,1]"), 30).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.terms.len(), 4);
    }

    #[test]
    fn attained_maximum() {
        // a_2 = 5 is never matched again, so its term wins
        let r = critical_exponent(&slope("[0;2,5,(1)]"), 30).unwrap();
        assert_eq!(
            r.value,
            CriticalValue::Attained {
                k: 2,
                value: BigRational::new(BigInt::from(13), BigInt::from(2))
            }
        );
    }

    #[test]
    fn periodic_order() {
        // [0;1,2,…] > [0;2,1,…]
        assert_eq!(compare_periodic(&[1, 2], &[2, 1]), Ordering::Greater);
        assert_eq!(compare_periodic(&[2, 1], &[2, 3]), Ordering::Less);
    }
}
