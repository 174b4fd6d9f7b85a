use num_bigint::BigInt;

use super::form::LinearForm;
use super::slope::{Convergent, Slope};
use crate::error::{Error, Result};

/// Semiconvergent index `(k, l)` naming `q_{k,l} = l·q_{k−1} + q_{k−2}`.
///
/// `l = 0` gives `q_{k−2}` and `l = a_k` gives `q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiconvergentId {
    pub k: usize,
    pub l: u64,
}

impl SemiconvergentId {
    pub fn new(k: usize, l: u64) -> Self {
        Self { k, l }
    }
}

impl Slope {
    fn check_semiconvergent(&self, id: SemiconvergentId) -> Result<()> {
        if id.k < 2 {
            return Err(Error::OutOfRange(format!(
                "semiconvergents need k >= 2, got k = {}",
                id.k
            )));
        }
        let a = self.a(id.k)?;
        if id.l > a {
            return Err(Error::OutOfRange(format!(
                "l = {} exceeds a_{} = {a}",
                id.l, id.k
            )));
        }
        Ok(())
    }

    /// `(p_{k,l}, q_{k,l})`.
    pub fn semiconvergent(&self, id: SemiconvergentId) -> Result<(BigInt, BigInt)> {
        self.check_semiconvergent(id)?;
        let l = BigInt::from(id.l);
        let p = &l * self.p(id.k - 1)? + self.p(id.k - 2)?;
        let q = &l * self.q(id.k - 1)? + self.q(id.k - 2)?;
        Ok((p, q))
    }

    pub fn semiconvergent_den(&self, id: SemiconvergentId) -> Result<BigInt> {
        Ok(self.semiconvergent(id)?.1)
    }

    pub fn semiconvergent_u64(&self, id: SemiconvergentId) -> Result<u64> {
        use num_traits::ToPrimitive;
        self.semiconvergent_den(id)?.to_u64().ok_or(Error::Overflow)
    }

    /// `‖q_kα‖` for `k ≥ −1`, with `‖q_{−1}α‖ = 1` and `‖q_0α‖ = α`.
    pub fn convergent_distance(&self, k: i64) -> Result<LinearForm> {
        match k {
            -1 => Ok(LinearForm::ONE),
            0 => Ok(LinearForm::ALPHA),
            k if k > 0 => self.distance(self.q_i128(k as usize)?),
            _ => Err(Error::OutOfRange(format!("no convergent q_{k}"))),
        }
    }

    /// `‖q_{k,l}α‖`, using the base cases of [`Slope::convergent_distance`]
    /// when `l = 0` lands on `q_0`.
    pub fn semiconvergent_distance(&self, id: SemiconvergentId) -> Result<LinearForm> {
        self.check_semiconvergent(id)?;
        if id.l == 0 {
            return self.convergent_distance(id.k as i64 - 2);
        }
        let q = self.semiconvergent_den(id)?;
        use num_traits::ToPrimitive;
        self.distance(q.to_i128().ok_or(Error::Overflow)?)
    }

    /// Recovers `a_k = ⌊‖q_{k−2}α‖ / ‖q_{k−1}α‖⌋` from distances alone.
    pub fn recover_quotient(&self, k: usize) -> Result<u64> {
        self.require_normalized()?;
        if k == 0 {
            return Err(Error::OutOfRange("recover_quotient needs k >= 1".into()));
        }
        self.a(k)?;
        let num = self.convergent_distance(k as i64 - 2)?;
        let den = self.convergent_distance(k as i64 - 1)?;
        self.floor_ratio(num, den)
    }
}

/// Best approximations `a/b` with `b ≤ q_max`; these are the convergents
/// `p_k/q_k` with `q_k ≤ q_max`.
pub fn best_approximations(slope: &Slope, q_max: u64) -> Result<Vec<Convergent>> {
    slope.require_normalized()?;
    if q_max == 0 {
        return Err(Error::OutOfRange("q_max must be positive".into()));
    }
    let bound = BigInt::from(q_max);
    let mut out = Vec::new();
    for k in 0.. {
        let c = slope.convergent(k)?;
        if c.q > bound {
            break;
        }
        out.push(c);
    }
    Ok(out)
}

/// All `0 < n < q_{k,l}` with `‖nα‖ < ‖q_{k,l−1}α‖`. Each of them is a
/// multiple `m·q_{k−1}` with `1 ≤ m ≤ min{l, a_k − l + 1}`, so only those
/// multiples are tested.
pub fn closest_multiples(slope: &Slope, id: SemiconvergentId) -> Result<Vec<u64>> {
    slope.require_normalized()?;
    if id.l == 0 {
        return Err(Error::OutOfRange("closest_multiples needs l >= 1".into()));
    }
    let a = slope.a(id.k)?;
    let n_max = slope.semiconvergent_u64(id)?;
    let bound = slope.semiconvergent_distance(SemiconvergentId::new(id.k, id.l - 1))?;
    let step = slope.q_u64(id.k - 1)?;
    let m_max = id.l.min(a - id.l + 1);
    let mut out = Vec::new();
    for m in 1..=m_max {
        let n = m * step;
        if n >= n_max {
            break;
        }
        let d = slope.distance(n as i128)?;
        if slope.compare(d, bound)? == std::cmp::Ordering::Less {
            out.push(n);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    #[test]
    fn semiconvergent_denominators() {
        let s = slope("[0;2,(1,2)]");
        let den = |k, l| s.semiconvergent_u64(SemiconvergentId::new(k, l)).unwrap();
        assert_eq!(den(3, 1), 5);
        assert_eq!(den(3, 0), 2);
        assert_eq!(den(3, 2), 8);
        assert!(s.semiconvergent_u64(SemiconvergentId::new(3, 3)).is_err());
        assert!(s.semiconvergent_u64(SemiconvergentId::new(1, 0)).is_err());
    }

    #[test]
    fn recovers_quotients() {
        let s = slope("[0;2,(1,2)]");
        for k in 1..12 {
            assert_eq!(s.recover_quotient(k).unwrap(), s.a(k).unwrap());
        }
        let s = slope("[0;2,(1)]");
        assert_eq!(s.recover_quotient(2).unwrap(), 1);
    }

    #[test]
    fn best_approximation_denominators() {
        let s = slope("[0;2,(1,2)]");
        let qs: Vec<BigInt> = best_approximations(&s, 8).unwrap().into_iter().map(|c| c.q).collect();
        assert_eq!(qs, [1, 2, 3, 8].map(BigInt::from).to_vec());
        assert_eq!(best_approximations(&s, 1).unwrap().len(), 1);
        let s = slope("[0;2,(1)]");
        assert_eq!(best_approximations(&s, 13).unwrap().len(), 6);
    }

    #[test]
    fn closest_multiple_examples() {
        let s = slope("[0;2,(1,2)]");
        assert_eq!(closest_multiples(&s, SemiconvergentId::new(3, 1)).unwrap(), vec![3]);
        assert_eq!(closest_multiples(&s, SemiconvergentId::new(2, 1)).unwrap(), vec![2]);
    }

    #[test]
    fn distance_difference_identity() {
        let s = slope("[0;3,(1,2)]");
        for k in 2..14 {
            for l in 1..=s.a(k).unwrap() {
                let cur = s.semiconvergent_distance(SemiconvergentId::new(k, l)).unwrap();
                let prev = s.semiconvergent_distance(SemiconvergentId::new(k, l - 1)).unwrap();
                let step = s.convergent_distance(k as i64 - 1).unwrap();
                assert_eq!(cur, prev - step, "k={k} l={l}");
            }
        }
    }
}
