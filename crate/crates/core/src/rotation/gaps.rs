use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{LinearForm, SemiconvergentId, Slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapClass {
    pub count: u64,
    pub length: LinearForm,
}

/// The partition of the circle by `0, {α}, …, {nα}`, predicted from the
/// decomposition `n = l·q_{k−1} + q_{k−2} + r`.
///
/// `gaps` lists, in this order, the arcs of length `‖q_{k−1}α‖`,
/// `‖q_{k,l}α‖` and `‖q_{k,l−1}α‖`; the last length is the sum of the
/// other two. A count may be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSummary {
    pub n: u64,
    pub k: usize,
    pub l: u64,
    pub r: u64,
    pub gaps: [GapClass; 3],
}

impl PartitionSummary {
    /// Nonempty gap classes keyed by length, for comparison with a sorted
    /// gap scan.
    pub fn spectrum(&self) -> BTreeMap<LinearForm, u64> {
        let mut m = BTreeMap::new();
        for g in self.gaps.iter().filter(|g| g.count > 0) {
            *m.entry(g.length).or_insert(0) += g.count;
        }
        m
    }
}

pub fn three_distance(slope: &Slope, n: u64) -> Result<PartitionSummary> {
    slope.require_normalized()?;
    let a1 = slope.a(1)?;
    if n <= a1 {
        return Err(Error::BelowFirstQuotient { n, a1 });
    }
    // k with q_{k,1} ≤ n < q_{k+1,1}
    let mut k = 2;
    while slope.q_u64(k)? + slope.q_u64(k - 1)? <= n {
        k += 1;
    }
    let q1 = slope.q_u64(k - 1)?;
    let q2 = slope.q_u64(k - 2)?;
    let l = (n - q2) / q1;
    let r = (n - q2) % q1;
    let gaps = [
        GapClass {
            count: n + 1 - q1,
            length: slope.convergent_distance(k as i64 - 1)?,
        },
        GapClass {
            count: r + 1,
            length: slope.semiconvergent_distance(SemiconvergentId::new(k, l))?,
        },
        GapClass {
            count: q1 - (r + 1),
            length: slope.semiconvergent_distance(SemiconvergentId::new(k, l - 1))?,
        },
    ];
    Ok(PartitionSummary { n, k, l, r, gaps })
}

/// Gap lengths between circularly consecutive points among
/// `0, {α}, …, {nα}`, found by sorting the points.
pub fn gap_spectrum(slope: &Slope, n: u64) -> Result<BTreeMap<LinearForm, u64>> {
    let mut all = gap_spectra(slope, n)?;
    Ok(all.pop().expect("n + 1 entries"))
}

/// [`gap_spectrum`] for every `0 ≤ m ≤ n_max`, inserting one point at a
/// time into the sorted orbit.
pub fn gap_spectra(slope: &Slope, n_max: u64) -> Result<Vec<BTreeMap<LinearForm, u64>>> {
    let mut sorted: Vec<LinearForm> = vec![LinearForm::ZERO];
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(BTreeMap::from([(LinearForm::ONE, 1)]));
    let mut f = 0i128;
    for m in 1..=n_max as i128 {
        if slope.sign(LinearForm::new(m, f + 1))? != Ordering::Less {
            f += 1;
        }
        let x = LinearForm::new(m, f);
        // first index whose point lies above x
        let (mut lo, mut hi) = (0usize, sorted.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if slope.compare(sorted[mid], x)?.is_lt() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        sorted.insert(lo, x);
        let mut counts = BTreeMap::new();
        for w in sorted.windows(2) {
            *counts.entry(w[1] - w[0]).or_insert(0) += 1;
        }
        *counts.entry(LinearForm::ONE - *sorted.last().unwrap()).or_insert(0) += 1;
        out.push(counts);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_counts() {
        let s = Slope::parse("[0;2,(1,2)]").unwrap();
        let p = three_distance(&s, 5).unwrap();
        assert_eq!((p.k, p.l, p.r), (3, 1, 0));
        let counts: Vec<u64> = p.gaps.iter().map(|g| g.count).collect();
        assert_eq!(counts, vec![3, 1, 2]);
        assert_eq!(p.gaps[0].length, s.distance(3).unwrap());
        assert_eq!(p.gaps[1].length, s.distance(5).unwrap());
        assert_eq!(p.gaps[2].length, s.distance(2).unwrap());
        assert_eq!(p.gaps[2].length, p.gaps[0].length + p.gaps[1].length);
        assert_eq!(p.spectrum(), gap_spectrum(&s, 5).unwrap());
    }

    #[test]
    fn convergent_level_has_one_smallest_gap() {
        let s = Slope::parse("[0;3,(1,2)]").unwrap();
        for k in 2..8 {
            let q = s.q_u64(k).unwrap();
            let p = three_distance(&s, q).unwrap();
            assert_eq!(p.gaps[1].count, 1);
            assert_eq!(p.gaps[1].length, s.distance(q as i128).unwrap());
        }
    }

    #[test]
    fn below_first_quotient() {
        let s = Slope::parse("[0;3,(1)]").unwrap();
        assert_eq!(three_distance(&s, 3), Err(Error::BelowFirstQuotient { n: 3, a1: 3 }));
    }

    #[test]
    fn formula_matches_scan() {
        let s = Slope::parse("[0;2,(1)]").unwrap();
        let spectra = gap_spectra(&s, 200).unwrap();
        for n in 3..=200u64 {
            assert_eq!(three_distance(&s, n).unwrap().spectrum(), spectra[n as usize], "n = {n}");
        }
    }
}
