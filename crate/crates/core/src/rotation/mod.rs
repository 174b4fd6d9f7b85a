//! The rotation `R(x) = x + α` on the circle `[0, 1)`, its codings and the
//! partitions cut out by orbit points.

mod gaps;
mod partition;

use std::cell::RefCell;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactnum::{LinearForm, Slope};
use crate::words::Word;

pub use gaps::{gap_spectra, gap_spectrum, three_distance, GapClass, PartitionSummary};
pub use partition::{
    factor_set, factors_of_length, find_factor, is_factor, special_factors, Factor, FactorInterval,
};

/// The orbit point `{mα}`; negative `m` names the points `{−|m|α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitPoint {
    pub m: i64,
}

impl OrbitPoint {
    pub fn new(m: i64) -> Self {
        Self { m }
    }

    /// Position in `[0, 1)` as the form `mα − ⌊mα⌋`.
    pub fn position(&self, slope: &Slope) -> Result<LinearForm> {
        slope.position(self.m as i128)
    }
}

/// Which endpoints the two coding intervals own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BoundaryConvention {
    /// `I_0 = [0, 1 − α)`, `I_1 = [1 − α, 1)`.
    #[default]
    LeftClosed,
    /// `I_0 = (0, 1 − α]`, `I_1 = (1 − α, 1]`.
    RightClosed,
}

/// Sorts with a fallible comparator, returning the first error raised.
pub(crate) fn try_sort_by<T>(
    items: &mut [T],
    mut cmp: impl FnMut(&T, &T) -> Result<Ordering>,
) -> Result<()> {
    let err = RefCell::new(None);
    items.sort_by(|a, b| {
        if err.borrow().is_some() {
            return Ordering::Equal;
        }
        cmp(a, b).unwrap_or_else(|e| {
            *err.borrow_mut() = Some(e);
            Ordering::Equal
        })
    });
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Circular counterclockwise order of the points, starting from 0.
pub fn point_order(slope: &Slope, points: &[OrbitPoint]) -> Result<Vec<OrbitPoint>> {
    let mut seen = std::collections::HashSet::new();
    for p in points {
        if !seen.insert(p.m) {
            return Err(Error::DuplicatePoint(p.m));
        }
    }
    let mut keyed = points
        .iter()
        .map(|p| Ok((p.position(slope)?, *p)))
        .collect::<Result<Vec<_>>>()?;
    try_sort_by(&mut keyed, |a, b| slope.compare(a.0, b.0))?;
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// `⌊jα⌋` for `j = lo, lo + 1, …, lo + count − 1`.
///
/// Consecutive floors differ by 0 or 1, so after the first value each step
/// costs one sign test.
pub(crate) fn floors(slope: &Slope, lo: i128, count: usize) -> Result<Vec<i128>> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let mut f = slope.floor_mul(lo)?;
    out.push(f);
    for j in lo + 1..lo + count as i128 {
        if slope.sign(LinearForm::new(j, f + 1))? != Ordering::Less {
            f += 1;
        }
        out.push(f);
    }
    Ok(out)
}

/// Letters `ν(R^j(x))` for `x = {mα}`, `j = 0, …, len − 1`.
pub fn coding_prefix(
    slope: &Slope,
    start: OrbitPoint,
    len: usize,
    conv: BoundaryConvention,
) -> Result<Word> {
    if len == 0 {
        return Err(Error::OutOfRange("coding length must be positive".into()));
    }
    let m = start.m as i128;
    let f = floors(slope, m, len + 1)?;
    Ok(Word::from_letters(coding_from_floors(&f, m, conv)))
}

// Letters for the points m, m + 1, … given ⌊jα⌋ for j = m, m + 1, ….
// The point {jα} lies in [1 − α, 1) iff ⌊(j + 1)α⌋ − ⌊jα⌋ = 1; the
// right-closed convention uses ceilings instead, which moves the boundary
// points 0 and 1 − α to the other letter.
pub(crate) fn coding_from_floors(f: &[i128], m: i128, conv: BoundaryConvention) -> Vec<u8> {
    match conv {
        BoundaryConvention::LeftClosed => f.windows(2).map(|w| (w[1] - w[0]) as u8).collect(),
        BoundaryConvention::RightClosed => {
            let ceil = |i: usize| {
                let j = m + i as i128;
                f[i] + i128::from(j != 0)
            };
            (0..f.len() - 1).map(|i| (ceil(i + 1) - ceil(i)) as u8).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::standard_word;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    #[test]
    fn prefix_of_characteristic_word() {
        let s = slope("[0;2,(1,2)]");
        let w = coding_prefix(&s, OrbitPoint::new(1), 5, BoundaryConvention::LeftClosed).unwrap();
        assert_eq!(w.to_string(), "01001");
        let w = coding_prefix(&s, OrbitPoint::new(0), 1, BoundaryConvention::LeftClosed).unwrap();
        assert_eq!(w.to_string(), "0");
        let w = coding_prefix(&s, OrbitPoint::new(0), 1, BoundaryConvention::RightClosed).unwrap();
        assert_eq!(w.to_string(), "1");
    }

    #[test]
    fn coding_matches_standard_word() {
        let s = slope("[0;2,(1)]");
        let w = coding_prefix(&s, OrbitPoint::new(1), 13, BoundaryConvention::LeftClosed).unwrap();
        assert_eq!(w, standard_word(&s, 5).unwrap());
    }

    #[test]
    fn conventions_agree_off_the_special_orbit() {
        let s = slope("[0;3,(1,2)]");
        for k in 1..60 {
            let a = coding_prefix(&s, OrbitPoint::new(k), 80, BoundaryConvention::LeftClosed).unwrap();
            let b = coding_prefix(&s, OrbitPoint::new(k), 80, BoundaryConvention::RightClosed).unwrap();
            assert_eq!(a, b, "start {k}");
        }
        let a = coding_prefix(&s, OrbitPoint::new(-3), 8, BoundaryConvention::LeftClosed).unwrap();
        let b = coding_prefix(&s, OrbitPoint::new(-3), 8, BoundaryConvention::RightClosed).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn order_of_five_points() {
        let s = slope("[0;2,(1,2)]");
        let pts: Vec<OrbitPoint> = (0..=5).map(|i| OrbitPoint::new(-i)).collect();
        let order: Vec<i64> = point_order(&s, &pts).unwrap().iter().map(|p| p.m).collect();
        // {−iα} ≈ 0, .634, .268, .902, .536, .170
        assert_eq!(order, vec![0, -5, -2, -4, -1, -3]);
        assert_eq!(point_order(&s, &[OrbitPoint::new(0)]).unwrap().len(), 1);
        assert_eq!(
            point_order(&s, &[OrbitPoint::new(2), OrbitPoint::new(2)]),
            Err(Error::DuplicatePoint(2))
        );
    }
}
