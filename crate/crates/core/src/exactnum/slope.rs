use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cf::ContinuedFraction;
use super::form::LinearForm;
use crate::error::{Error, Result};

/// Number of partial quotients unrolled for a periodic expansion when no
/// explicit limit is given.
pub const DEFAULT_DEPTH_LIMIT: usize = 64;

/// Convergent `p_k / q_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
}

/// Rational bounds on the value of a [`LinearForm`], obtained by substituting
/// two consecutive convergents for `α`. The true value lies strictly inside
/// `[lo, hi]` and `hi − lo = |q| / (q_depth · q_{depth+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    pub depth: usize,
}

impl CertifiedEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, other: &CertifiedEnclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// A slope together with its table of convergents.
///
/// All comparisons of linear forms are decided here. The table is built once
/// at construction and never mutated, so a `Slope` can be shared freely
/// between threads.
#[derive(Debug, Clone)]
pub struct Slope {
    cf: ContinuedFraction,
    quotients: Vec<u64>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    // (p_k, q_k) when both fit in an i64, so products with i64-sized
    // coefficients cannot overflow an i128.
    small: Vec<Option<(i128, i128)>>,
}

impl Slope {
    pub fn new(cf: ContinuedFraction) -> Self {
        Self::with_depth_limit(cf, DEFAULT_DEPTH_LIMIT)
    }

    /// Builds the convergent table up to `min(limit, known depth)`.
    pub fn with_depth_limit(cf: ContinuedFraction, limit: usize) -> Self {
        let limit = limit.max(2);
        let depth = cf.depth().map_or(limit, |m| m.min(limit));
        let mut quotients = Vec::with_capacity(depth + 1);
        quotients.push(0);
        for k in 1..=depth {
            quotients.push(cf.quotient(k).expect("index within known depth"));
        }
        let mut p = Vec::with_capacity(depth + 1);
        let mut q = Vec::with_capacity(depth + 1);
        p.push(BigInt::zero());
        q.push(BigInt::one());
        if depth >= 1 {
            p.push(BigInt::one());
            q.push(BigInt::from(quotients[1]));
        }
        for k in 2..=depth {
            let a = BigInt::from(quotients[k]);
            let pk = &a * &p[k - 1] + &p[k - 2];
            let qk = &a * &q[k - 1] + &q[k - 2];
            p.push(pk);
            q.push(qk);
        }
        let small = p
            .iter()
            .zip(&q)
            .map(|(pk, qk)| match (pk.to_i64(), qk.to_i64()) {
                (Some(a), Some(b)) => Some((a as i128, b as i128)),
                _ => None,
            })
            .collect();
        Self {
            cf,
            quotients,
            p,
            q,
            small,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(text.parse()?))
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    /// Largest convergent index available.
    pub fn depth(&self) -> usize {
        self.quotients.len() - 1
    }

    /// `true` when the expansion is a finite truncation; results are then
    /// only valid up to its depth.
    pub fn is_truncated(&self) -> bool {
        !self.cf.is_periodic()
    }

    pub fn is_normalized(&self) -> bool {
        self.cf.is_normalized()
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    fn check_depth(&self, k: usize) -> Result<()> {
        if k > self.depth() {
            Err(Error::DepthExceeded {
                requested: k,
                available: self.depth(),
            })
        } else {
            Ok(())
        }
    }

    /// Partial quotient `a_k` (with `a_0 = 0`).
    pub fn a(&self, k: usize) -> Result<u64> {
        self.check_depth(k)?;
        Ok(self.quotients[k])
    }

    pub fn convergent(&self, k: usize) -> Result<Convergent> {
        self.check_depth(k)?;
        Ok(Convergent {
            k,
            p: self.p[k].clone(),
            q: self.q[k].clone(),
        })
    }

    pub fn q(&self, k: usize) -> Result<&BigInt> {
        self.check_depth(k)?;
        Ok(&self.q[k])
    }

    pub fn p(&self, k: usize) -> Result<&BigInt> {
        self.check_depth(k)?;
        Ok(&self.p[k])
    }

    /// `q_k` as a machine integer.
    pub fn q_u64(&self, k: usize) -> Result<u64> {
        self.q(k)?.to_u64().ok_or(Error::Overflow)
    }

    pub fn q_i128(&self, k: usize) -> Result<i128> {
        self.q(k)?.to_i128().ok_or(Error::Overflow)
    }

    /// Smallest index `k` with `q_k ≥ n`.
    pub fn first_q_at_least(&self, n: u64) -> Result<usize> {
        let target = BigInt::from(n);
        (0..=self.depth())
            .find(|&k| self.q[k] >= target)
            .ok_or(Error::DepthExceeded {
                requested: self.depth() + 1,
                available: self.depth(),
            })
    }

    // sign of c·p_k − d·q_k, i.e. of the form evaluated at the k-th convergent
    fn sign_at(&self, c: i128, d: i128, k: usize) -> Ordering {
        if let Some((pk, qk)) = self.small[k] {
            if let (Some(x), Some(y)) = (c.checked_mul(pk), d.checked_mul(qk)) {
                if let Some(v) = x.checked_sub(y) {
                    return v.cmp(&0);
                }
            }
        }
        let v = BigInt::from(c) * &self.p[k] - BigInt::from(d) * &self.q[k];
        match v.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Certified sign of `q·α − p`.
    ///
    /// `α` lies strictly between consecutive convergents, so the form's value
    /// lies strictly between its values there. The pair of convergents is
    /// deepened geometrically until both values agree in sign.
    pub fn sign(&self, form: LinearForm) -> Result<Ordering> {
        let (c, d) = (form.q, form.p);
        if c == 0 {
            return Ok(0.cmp(&d));
        }
        let last = self.depth() - 1;
        let mut k = 0;
        loop {
            let lo = self.sign_at(c, d, k);
            let hi = self.sign_at(c, d, k + 1);
            match (lo, hi) {
                (x, y) if x == y => return Ok(x),
                (Ordering::Equal, y) => return Ok(y),
                (x, Ordering::Equal) => return Ok(x),
                _ => {}
            }
            if k == last {
                return Err(Error::Undecided { depth: self.depth() });
            }
            k = if k == 0 { 1 } else { (2 * k).min(last) };
        }
    }

    /// Certified ordering of two forms. `Equal` is returned only for
    /// identical forms, which is the only way two values can coincide at an
    /// irrational `α`.
    pub fn compare(&self, a: LinearForm, b: LinearForm) -> Result<Ordering> {
        if a == b {
            return Ok(Ordering::Equal);
        }
        self.sign(a - b)
    }

    /// `⌊jα⌋`.
    pub fn floor_mul(&self, j: i128) -> Result<i128> {
        if j == 0 {
            return Ok(0);
        }
        let mut g = self.estimate_floor(j);
        while self.sign(LinearForm::new(j, g))? == Ordering::Less {
            g -= 1;
        }
        while self.sign(LinearForm::new(j, g + 1))? != Ordering::Less {
            g += 1;
        }
        Ok(g)
    }

    // ⌊j·p_k/q_k⌋ for the first k with q_k·q_{k+1} > |j|; off by at most one.
    fn estimate_floor(&self, j: i128) -> i128 {
        let bound = BigInt::from(j.unsigned_abs());
        let mut k = 0;
        while k + 1 < self.depth() && &self.q[k] * &self.q[k + 1] <= bound {
            k += 1;
        }
        if let Some((pk, qk)) = self.small[k] {
            if let Some(num) = j.checked_mul(pk) {
                return num.div_euclid(qk);
            }
        }
        let num = BigInt::from(j) * &self.p[k];
        num.div_floor(&self.q[k]).to_i128().unwrap_or(0)
    }

    /// Position `{mα}` of an orbit point as a form with value in `[0, 1)`.
    pub fn position(&self, m: i128) -> Result<LinearForm> {
        Ok(LinearForm::new(m, self.floor_mul(m)?))
    }

    /// Fractional part of a form's value, itself a form.
    pub fn fract(&self, form: LinearForm) -> Result<LinearForm> {
        self.position(form.q)
    }

    /// `‖nα‖` as the form `±(nα − p)` with `p` the nearest integer to `nα`.
    pub fn distance(&self, n: i128) -> Result<LinearForm> {
        if n == 0 {
            return Err(Error::OutOfRange("distance needs n >= 1".into()));
        }
        let n = n.abs();
        let f = self.floor_mul(n)?;
        // {nα} < 1/2  ⇔  2nα − (2f + 1) < 0
        if self.sign(LinearForm::new(2 * n, 2 * f + 1))? == Ordering::Less {
            Ok(LinearForm::new(n, f))
        } else {
            Ok(LinearForm::new(-n, -(f + 1)))
        }
    }

    /// `⌊num / den⌋` for forms with positive values.
    pub fn floor_ratio(&self, num: LinearForm, den: LinearForm) -> Result<u64> {
        if self.sign(den)? != Ordering::Greater || self.sign(num)? != Ordering::Greater {
            return Err(Error::OutOfRange(
                "floor_ratio needs positive operands".into(),
            ));
        }
        let fits = |m: u64| -> Result<bool> {
            let rest = num - den.scale(m as i128);
            Ok(self.sign(rest)? != Ordering::Less)
        };
        let mut hi = 1u64;
        while fits(hi)? {
            hi = hi.checked_mul(2).ok_or(Error::Overflow)?;
        }
        // fits(lo) holds, fits(hi) fails
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if fits(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Enclosure of a form from the convergents at `depth` and `depth + 1`.
    pub fn enclose(&self, form: LinearForm, depth: usize) -> Result<CertifiedEnclosure> {
        self.check_depth(depth + 1)?;
        let at = |k: usize| {
            let c = BigRational::new(self.p[k].clone(), self.q[k].clone());
            form.eval_at(&c)
        };
        let (x, y) = (at(depth), at(depth + 1));
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        Ok(CertifiedEnclosure { lo, hi, depth })
    }

    /// Decimal approximation with `digits` significant digits, read off an
    /// enclosure deep enough that both ends round identically.
    pub fn to_decimal(&self, form: LinearForm, digits: usize) -> String {
        if form.q == 0 {
            return round_significant(&BigRational::from_integer(BigInt::from(-form.p)), digits);
        }
        let last = self.depth() - 1;
        let mut d = 1.min(last);
        loop {
            let enc = self.enclose(form, d).expect("depth checked");
            let lo = round_significant(&enc.lo, digits);
            if lo == round_significant(&enc.hi, digits) || d == last {
                return lo;
            }
            d = (2 * d).min(last);
        }
    }

    /// Floating point approximation, for display and heuristics only.
    pub fn to_f64(&self, form: LinearForm) -> f64 {
        let d = (self.depth() - 1).min(40);
        let enc = self.enclose(form, d).expect("depth checked");
        let mid = (enc.lo + enc.hi) / BigInt::from(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Rounds `x` half away from zero to `digits` significant decimal digits and
/// renders it in positional notation, keeping trailing zeros.
pub fn round_significant(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let v = x.abs();
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    // decimal exponent e with 10^e <= v < 10^(e+1)
    let mut e = v.to_f64().map_or(0, |f| f.log10().floor() as i64);
    while pow10(e) > v {
        e -= 1;
    }
    while pow10(e + 1) <= v {
        e += 1;
    }
    let round = |e: i64| -> BigInt {
        let scaled = &v * pow10(digits as i64 - 1 - e);
        let twice = scaled * BigInt::from(2) + BigInt::one();
        twice.numer().div_floor(&(twice.denom() * BigInt::from(2)))
    };
    let mut n = round(e);
    if n >= num_traits::pow(ten.clone(), digits) {
        e += 1;
        n = round(e);
    }
    let s = n.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-e - 1) as usize));
        out.push_str(&s);
    } else if (e as usize) + 1 >= s.len() {
        out.push_str(&s);
        out.extend(std::iter::repeat('0').take(e as usize + 1 - s.len()));
    } else {
        let (int, frac) = s.split_at(e as usize + 1);
        out.push_str(int);
        out.push('.');
        out.push_str(frac);
    }
    out
}
