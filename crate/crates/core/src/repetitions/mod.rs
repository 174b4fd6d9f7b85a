//! Integer and fractional powers of factors, computed from interval lengths.

mod critical;
pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exactnum::{LinearForm, SemiconvergentId, Slope};
use crate::rotation::{factor_set, factors_of_length, find_factor, Factor, FactorInterval};
use crate::words::{semistandard_word, standard_word, Word};

pub use critical::{critical_exponent, CriticalExponentResult, CriticalValue, Term};
pub use oracle::{index_oracle, longest_power_oracle, power_scan};

/// Deliberate defects for negative-control runs of the verification suites.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Faults {
    pub flip_gamma: bool,
}

/// The seven length classes of the index characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `n < q_1`
    I,
    /// `n = q_1`
    II,
    /// `n = q_k`, `k ≥ 2`
    III,
    /// `n = q_{k,l}`, `0 < l < a_k`
    IV,
    /// `n = m·q_1`, `1 < m < a_2 + 1`
    V,
    /// `n = m·q_k`, `1 < m < a_{k+1} + 2`
    VI,
    /// none of the above
    VII,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::I,
        CaseTag::II,
        CaseTag::III,
        CaseTag::IV,
        CaseTag::V,
        CaseTag::VI,
        CaseTag::VII,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
            CaseTag::V => "v",
            CaseTag::VI => "vi",
            CaseTag::VII => "vii",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Arithmetic type of a length `n` and the word whose conjugates carry the
/// large indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthCase {
    pub n: u64,
    pub tag: CaseTag,
    /// Every case predicate that holds; exactly one for a consistent theory.
    pub matches: Vec<CaseTag>,
    pub k: usize,
    pub l: u64,
    pub m: u64,
    /// `0^{n−1}1`, `s̄_1`, `s̄_k`, `s̄_{k,l}`, `s̄_1^m` or `s̄_k^m`.
    pub base: Option<Word>,
}

fn q(slope: &Slope, k: usize) -> Result<u64> {
    slope.q_u64(k)
}

/// Determines which case of the characterization `n` falls under.
pub fn length_case(slope: &Slope, n: u64) -> Result<LengthCase> {
    slope.require_normalized()?;
    if n == 0 {
        return Err(Error::OutOfRange("length must be positive".into()));
    }
    let q1 = q(slope, 1)?;
    let mut matches: Vec<(CaseTag, usize, u64, u64)> = Vec::new();
    if n < q1 {
        matches.push((CaseTag::I, 1, 0, 1));
    }
    if n == q1 {
        matches.push((CaseTag::II, 1, 0, 1));
    }
    let mut k = 2;
    // q_{k−2} ≤ n covers every q_k, q_{k,l} and m·q_k that can equal n
    while q(slope, k - 2)? <= n {
        let qk = q(slope, k)?;
        let (qa, qb) = (q(slope, k - 1)?, q(slope, k - 2)?);
        if qk == n {
            matches.push((CaseTag::III, k, 0, 1));
        }
        let a = slope.a(k)?;
        if n > qb && (n - qb) % qa == 0 {
            let l = (n - qb) / qa;
            if 0 < l && l < a {
                matches.push((CaseTag::IV, k, l, 1));
            }
        }
        if n % qk == 0 {
            let m = n / qk;
            if 1 < m && m < slope.a(k + 1)? + 2 {
                matches.push((CaseTag::VI, k, 0, m));
            }
        }
        k += 1;
    }
    if n % q1 == 0 {
        let m = n / q1;
        if 1 < m && m < slope.a(2)? + 1 {
            matches.push((CaseTag::V, 1, 0, m));
        }
    }
    matches.sort_by_key(|m| m.0);
    let tags: Vec<CaseTag> = matches.iter().map(|m| m.0).collect();
    let (tag, k, l, m) = matches.first().copied().unwrap_or((CaseTag::VII, 0, 0, 1));
    let bar = |k: usize| -> Result<Word> { Ok(standard_word(slope, k as i64)?.reversal()) };
    let base = match tag {
        CaseTag::I => {
            let mut v = vec![0u8; n as usize];
            v[n as usize - 1] = 1;
            Some(Word::from_letters(v))
        }
        CaseTag::II => Some(bar(1)?),
        CaseTag::III => Some(bar(k)?),
        CaseTag::IV => Some(semistandard_word(slope, k, l)?.reversal()),
        CaseTag::V => Some(bar(1)?.pow(m as usize)),
        CaseTag::VI => Some(bar(k)?.pow(m as usize)),
        CaseTag::VII => None,
    };
    Ok(LengthCase {
        n,
        tag,
        matches: tags,
        k,
        l,
        m,
        base,
    })
}

impl LengthCase {
    /// Smallest `i` with `C^i(base) = w`.
    pub fn conjugate_position(&self, w: &Word) -> Option<usize> {
        self.base.as_ref().and_then(|b| b.conjugate_position(w))
    }

    /// The index the characterization assigns to a factor `w` of this
    /// length.
    pub fn predicted_index(&self, slope: &Slope, w: &Word) -> Result<u64> {
        let pos = self.conjugate_position(w);
        let k = self.k;
        let m = self.m;
        Ok(match self.tag {
            CaseTag::I => {
                if w.letters().iter().all(|&b| b == 0) {
                    slope.a(1)? / self.n
                } else {
                    1
                }
            }
            CaseTag::II => {
                if pos.is_some() {
                    slope.a(2)? + 1
                } else {
                    1
                }
            }
            CaseTag::III => match pos {
                Some(i) if (i as u64) < q(slope, k - 1)? - 1 => slope.a(k + 1)? + 2,
                Some(_) => slope.a(k + 1)? + 1,
                None => 1,
            },
            CaseTag::IV => match pos {
                Some(i) if (i as u64) < q(slope, k - 1)? - 1 => 2,
                _ => 1,
            },
            CaseTag::V => match pos {
                Some(i) if (i as u64) < q(slope, 1)? => (slope.a(2)? + 1) / m,
                _ => 1,
            },
            CaseTag::VI => match pos {
                Some(i) if (i as u64) < q(slope, k - 1)? - 1 => (slope.a(k + 1)? + 2) / m,
                Some(i) if (i as u64) < q(slope, k)? => (slope.a(k + 1)? + 1) / m,
                _ => 1,
            },
            CaseTag::VII => 1,
        })
    }
}

/// Per-factor summary of powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub word: Word,
    pub n: u64,
    pub interval: FactorInterval,
    /// Largest `p` with `w^p` a factor.
    pub integer_index: u64,
    /// Length of the longest prefix of `w^ω` that is a factor; `None` when
    /// not computed.
    pub power_len: Option<u64>,
    pub case_tag: CaseTag,
    pub conjugate_position: Option<usize>,
    /// The index the case analysis predicts for this factor.
    pub predicted_index: u64,
}

impl IndexReport {
    /// `power_len / n`, the supremum of rational `r` with `w^r` a factor.
    pub fn fractional_index(&self) -> Option<Ratio<u64>> {
        self.power_len.map(|m| Ratio::new(m, self.n))
    }
}

/// `γ + ⌊|[w]| / ‖nα‖⌋` with `γ = 1` unless `|[w]| = ‖nα‖`.
fn index_from_length(
    slope: &Slope,
    length: LinearForm,
    dist: LinearForm,
    faults: Faults,
) -> Result<u64> {
    let mut gamma = u64::from(length != dist);
    if faults.flip_gamma {
        gamma = 1 - gamma;
    }
    Ok(gamma + slope.floor_ratio(length, dist)?)
}

/// The integer index of a factor from the length of its interval.
pub fn index_by_interval(slope: &Slope, w: &Word) -> Result<u64> {
    slope.require_normalized()?;
    let f = find_factor(slope, w)?;
    let dist = slope.distance(w.len() as i128)?;
    index_from_length(slope, f.interval.length, dist, Faults::default())
}

// Half-open arcs [s1, s1 + l1) and [s2, s2 + l2) meet.
fn arcs_meet(
    slope: &Slope,
    s1: LinearForm,
    l1: LinearForm,
    s2: LinearForm,
    l2: LinearForm,
) -> Result<bool> {
    Ok(slope.compare(slope.fract(s2 - s1)?, l1)?.is_lt()
        || slope.compare(slope.fract(s1 - s2)?, l2)?.is_lt())
}

/// Shared data of the length-`n` partition.
struct Level {
    n: u64,
    // positions of {−jα}, j = 0, …, n
    points: Vec<LinearForm>,
    dist: LinearForm,
    // R^{−n} moves points forward by ‖nα‖ (true) or backward (false)
    forward: bool,
}

impl Level {
    fn new(slope: &Slope, n: u64) -> Result<Self> {
        let points = (0..=n as i128)
            .map(|j| slope.position(-j))
            .collect::<Result<Vec<_>>>()?;
        let dist = slope.distance(n as i128)?;
        // dist = nα − p when {nα} < 1/2, so −nα ≡ −dist
        let forward = dist.q < 0;
        Ok(Self {
            n,
            points,
            dist,
            forward,
        })
    }

    /// Length of the longest prefix of `w^ω` that is a factor, where the
    /// interval of `w` is `iv`.
    fn power_len(&self, slope: &Slope, iv: &FactorInterval) -> Result<u64> {
        let n = self.n;
        let d = self.dist;
        let len = iv.length;
        // p = 1 + max{j : j·d < |[w]|}
        let mut j = slope.floor_ratio(len, d)?;
        if len == d.scale(j as i128) {
            j -= 1;
        }
        let p = 1 + j;
        let shrink = d.scale(j as i128);
        let (start, plen) = if self.forward {
            (iv.start + shrink, len - shrink)
        } else {
            (iv.start, len - shrink)
        };
        let shift = LinearForm::new(-((p * n) as i128), 0);

        // [u_e] for the prefix u_e of length e is the level-e arc containing
        // the left endpoint of [w]
        let a = iv.start;
        let mut left = LinearForm::ZERO;
        let mut right = LinearForm::ONE;
        let mut e = 0;
        for j in 1..n {
            let x = self.points[j as usize];
            if slope.compare(x, a)?.is_le() {
                if slope.compare(x, left)?.is_gt() {
                    left = x;
                }
            } else if slope.compare(x, right)?.is_lt() {
                right = x;
            }
            let moved = slope.fract(left + shift)?;
            if !arcs_meet(slope, start, plen, moved, right - left)? {
                break;
            }
            e = j;
        }
        Ok(p * n + e)
    }
}

/// Reports for every factor of length `n`, in circular order of their
/// intervals.
pub fn classify_length(slope: &Slope, n: u64) -> Result<Vec<IndexReport>> {
    classify_length_with(slope, n, true, Faults::default())
}

#[doc(hidden)]
pub fn classify_length_with(
    slope: &Slope,
    n: u64,
    fractional: bool,
    faults: Faults,
) -> Result<Vec<IndexReport>> {
    let case = length_case(slope, n)?;
    let factors = factors_of_length(slope, n as usize)?;
    let level = Level::new(slope, n)?;
    factors
        .into_iter()
        .map(|Factor { word, interval }| {
            let integer_index = index_from_length(slope, interval.length, level.dist, faults)?;
            let power_len = if fractional {
                Some(level.power_len(slope, &interval)?)
            } else {
                None
            };
            let predicted_index = case.predicted_index(slope, &word)?;
            Ok(IndexReport {
                conjugate_position: case.conjugate_position(&word),
                word,
                n,
                interval,
                integer_index,
                power_len,
                case_tag: case.tag,
                predicted_index,
            })
        })
        .collect()
}

/// Exact fractional index of a factor.
pub fn fractional_index(slope: &Slope, w: &Word) -> Result<Ratio<u64>> {
    slope.require_normalized()?;
    let f = find_factor(slope, w)?;
    let level = Level::new(slope, w.len() as u64)?;
    Ok(Ratio::new(level.power_len(slope, &f.interval)?, w.len() as u64))
}

/// `{q_k} ∪ {q_{k,l} : k ≥ 2, 0 < l < a_k}` restricted to `[1, n_max]`: the
/// lengths of primitive words whose squares are factors.
pub fn square_lengths(slope: &Slope, n_max: u64) -> Result<BTreeSet<u64>> {
    slope.require_normalized()?;
    let mut out = BTreeSet::new();
    let mut k = 0;
    while q(slope, k)? <= n_max {
        out.insert(q(slope, k)?);
        if k >= 2 {
            for l in 1..slope.a(k)? {
                out.insert(slope.semiconvergent_u64(SemiconvergentId::new(k, l))?);
            }
        }
        k += 1;
    }
    // semiconvergents of the first k with q_k > n_max can still be small
    for l in 1..if k >= 2 { slope.a(k)? } else { 1 } {
        let v = slope.semiconvergent_u64(SemiconvergentId::new(k, l))?;
        if v <= n_max {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Interval-length class of a conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjugateTag {
    /// length `‖q_{k,l−1}α‖`
    Long,
    /// length `‖q_{k−1}α‖`
    Short,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateEntry {
    pub position: usize,
    pub word: Word,
    pub tag: ConjugateTag,
    pub length: LinearForm,
}

/// The conjugacy class of `s̄_{k,l}` with the predicted interval lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub k: usize,
    pub l: u64,
    pub n: u64,
    pub base: Word,
    pub conjugates: Vec<ConjugateEntry>,
    /// Factors of length `n` outside the class; there should be exactly one.
    pub leftovers: Vec<Word>,
    /// `‖q_{k,l}α‖`, the predicted length of the leftover's interval.
    pub leftover_length: LinearForm,
}

/// Conjugates `C^i(s̄_{k,l})`, `0 ≤ i < q_{k,l}`: the first `q_{k−1} − 1`
/// have intervals of length `‖q_{k,l−1}α‖`, the others `‖q_{k−1}α‖`.
/// `l = a_k` describes `s̄_k`.
pub fn conjugacy_report(slope: &Slope, k: usize, l: u64) -> Result<ConjugacyReport> {
    slope.require_normalized()?;
    let a = slope.a(k)?;
    if k < 2 || l == 0 || l > a {
        return Err(Error::OutOfRange(format!(
            "conjugacy needs k >= 2 and 0 < l <= a_k, got k = {k}, l = {l} (a_k = {a})"
        )));
    }
    let s = if l == a {
        standard_word(slope, k as i64)?
    } else {
        semistandard_word(slope, k, l)?
    };
    let base = s.reversal();
    let n = base.len() as u64;
    let qk1 = q(slope, k - 1)?;
    let long = slope.semiconvergent_distance(SemiconvergentId::new(k, l - 1))?;
    let short = slope.convergent_distance(k as i64 - 1)?;
    let conjugates: Vec<ConjugateEntry> = base
        .conjugates()
        .into_iter()
        .enumerate()
        .map(|(i, word)| {
            let (tag, length) = if (i as u64) < qk1 - 1 {
                (ConjugateTag::Long, long)
            } else {
                (ConjugateTag::Short, short)
            };
            ConjugateEntry {
                position: i,
                word,
                tag,
                length,
            }
        })
        .collect();
    let mut leftovers: Vec<Word> = factor_set(slope, n as usize)?
        .into_iter()
        .filter(|w| !conjugates.iter().any(|c| &c.word == w))
        .collect();
    leftovers.sort();
    Ok(ConjugacyReport {
        k,
        l,
        n,
        base,
        conjugates,
        leftovers,
        leftover_length: slope.semiconvergent_distance(SemiconvergentId::new(k, l))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_indices() {
        let s = slope("[0;2,(1,2)]");
        assert_eq!(index_by_interval(&s, &w("10010")).unwrap(), 2);
        assert_eq!(index_by_interval(&s, &w("0")).unwrap(), 2);
        let reports = classify_length(&s, 5).unwrap();
        assert!(reports.iter().all(|r| r.case_tag == CaseTag::IV));
        let twos: Vec<String> = reports
            .iter()
            .filter(|r| r.integer_index == 2)
            .map(|r| r.word.to_string())
            .collect();
        assert_eq!(twos.len(), 2);
        assert!(twos.contains(&"10010".to_string()) && twos.contains(&"01001".to_string()));
        for r in &reports {
            assert_eq!(r.integer_index, r.predicted_index, "{}", r.word);
        }
    }

    #[test]
    fn fibonacci_convergent_level() {
        let s = slope("[0;2,(1)]");
        let mut idx: Vec<u64> = classify_length(&s, 3)
            .unwrap()
            .iter()
            .map(|r| r.integer_index)
            .collect();
        idx.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(idx, vec![3, 2, 2, 1]);
        assert_eq!(index_by_interval(&s, &w("010")).unwrap(), 3);
    }

    #[test]
    fn first_case_small_lengths() {
        let s = slope("[0;3,(1,2)]");
        let r = classify_length(&s, 1).unwrap();
        let zero = r.iter().find(|r| r.word == w("0")).unwrap();
        let one = r.iter().find(|r| r.word == w("1")).unwrap();
        assert_eq!((zero.integer_index, one.integer_index), (3, 1));
        assert_eq!(zero.case_tag, CaseTag::I);
    }

    #[test]
    fn fractional_index_of_standard_words() {
        let s = slope("[0;2,(1)]");
        assert_eq!(fractional_index(&s, &w("010")).unwrap(), Ratio::new(3, 1));
        let s4 = standard_word(&s, 4).unwrap();
        assert_eq!(s4.len(), 8);
        assert_eq!(fractional_index(&s, &s4).unwrap(), Ratio::new(27, 8));
    }

    #[test]
    fn fractional_index_matches_oracle() {
        for text in ["[0;2,(1,2)]", "[0;3,(2)]", "[0;2,(1,3)]"] {
            let s = slope(text);
            for n in 1..40u64 {
                let scan = power_scan(&s, n as usize).unwrap();
                for r in classify_length(&s, n).unwrap() {
                    assert_eq!(r.power_len, Some(scan[&r.word]), "{text} {}", r.word);
                    assert_eq!(r.integer_index, scan[&r.word] / n);
                }
            }
        }
    }

    #[test]
    fn square_length_sets() {
        let s = slope("[0;2,(1,2)]");
        assert_eq!(square_lengths(&s, 8).unwrap(), BTreeSet::from([1, 2, 3, 5, 8]));
        let s = slope("[0;2,(1)]");
        assert_eq!(square_lengths(&s, 13).unwrap(), BTreeSet::from([1, 2, 3, 5, 8, 13]));
        assert_eq!(square_lengths(&s, 1).unwrap(), BTreeSet::from([1]));
    }

    #[test]
    fn conjugacy_of_worked_example() {
        let s = slope("[0;2,(1,2)]");
        let r = conjugacy_report(&s, 3, 1).unwrap();
        assert_eq!(r.base, w("10010"));
        let long: Vec<String> = r
            .conjugates
            .iter()
            .filter(|c| c.tag == ConjugateTag::Long)
            .map(|c| c.word.to_string())
            .collect();
        assert_eq!(long, ["10010", "01001"]);
        assert_eq!(r.leftovers, vec![w("00100")]);
        assert_eq!(r.leftover_length, s.distance(5).unwrap());
        assert_eq!(r.conjugates[1].word, semistandard_word(&s, 3, 1).unwrap());
    }
}
