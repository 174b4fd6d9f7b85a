use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactnum::{LinearForm, Slope};
use crate::words::Word;

use super::{coding_prefix, floors, try_sort_by, BoundaryConvention, OrbitPoint};

/// The arc `[w]` of points whose coding starts with `w`, running
/// counterclockwise from `{−left_idx·α}` to `{−right_idx·α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorInterval {
    pub left_idx: u64,
    pub right_idx: u64,
    /// Position of the left endpoint in `[0, 1)`.
    pub start: LinearForm,
    pub length: LinearForm,
}

impl FactorInterval {
    /// Whether the point with position `x` lies in the half-open arc.
    pub fn contains(&self, slope: &Slope, x: LinearForm) -> Result<bool> {
        let offset = slope.fract(x - self.start)?;
        Ok(slope.compare(offset, self.length)?.is_lt())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub word: Word,
    pub interval: FactorInterval,
}

// ⌊jα⌋ for j = −n, …, n, indexed by j + n.
struct Floors {
    n: i128,
    f: Vec<i128>,
}

impl Floors {
    fn new(slope: &Slope, n: usize) -> Result<Self> {
        let n = n as i128;
        Ok(Self {
            n,
            f: floors(slope, -n, 2 * n as usize + 1)?,
        })
    }

    fn at(&self, j: i128) -> i128 {
        self.f[(j + self.n) as usize]
    }

    // position of {−iα}
    fn point(&self, i: u64) -> LinearForm {
        let j = -(i as i128);
        LinearForm::new(j, self.at(j))
    }

    // length-n coding from {−iα}; the word is constant on the arc that
    // starts there, left endpoint included
    fn word_from(&self, i: u64) -> Word {
        let i = i as i128;
        let letters = (0..self.n)
            .map(|j| (self.at(j - i + 1) - self.at(j - i)) as u8)
            .collect();
        Word::from_letters(letters)
    }
}

/// All `n + 1` factors of length `n` with their intervals, in circular order
/// of the intervals starting from the point 0.
///
/// The points `0, {−α}, …, {−nα}` cut the circle into `n + 1` arcs and the
/// length-`n` coding is constant on each of them.
pub fn factors_of_length(slope: &Slope, n: usize) -> Result<Vec<Factor>> {
    if n == 0 {
        return Err(Error::OutOfRange("factor length must be positive".into()));
    }
    let fl = Floors::new(slope, n)?;
    let mut order: Vec<u64> = (0..=n as u64).collect();
    try_sort_by(&mut order, |&a, &b| slope.compare(fl.point(a), fl.point(b)))?;
    let mut out = Vec::with_capacity(n + 1);
    for (t, &i) in order.iter().enumerate() {
        let start = fl.point(i);
        let (right_idx, end) = match order.get(t + 1) {
            Some(&j) => (j, fl.point(j)),
            None => (0, LinearForm::ONE),
        };
        out.push(Factor {
            word: fl.word_from(i),
            interval: FactorInterval {
                left_idx: i,
                right_idx,
                start,
                length: end - start,
            },
        });
    }
    Ok(out)
}

/// The set of length-`n` factors, without computing their intervals.
pub fn factor_set(slope: &Slope, n: usize) -> Result<HashSet<Word>> {
    if n == 0 {
        return Err(Error::OutOfRange("factor length must be positive".into()));
    }
    let fl = Floors::new(slope, n)?;
    Ok((0..=n as u64).map(|i| fl.word_from(i)).collect())
}

pub fn is_factor(slope: &Slope, w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(factor_set(slope, w.len())?.contains(w))
}

/// The factor `w` together with its interval.
pub fn find_factor(slope: &Slope, w: &Word) -> Result<Factor> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    factors_of_length(slope, w.len())?
        .into_iter()
        .find(|f| &f.word == w)
        .ok_or_else(|| Error::NotAFactor(w.to_string()))
}

/// Left and right special factors of length `n`: the prefix of the
/// characteristic word and its reversal.
pub fn special_factors(slope: &Slope, n: usize) -> Result<(Word, Word)> {
    let left = coding_prefix(slope, OrbitPoint::new(1), n, BoundaryConvention::LeftClosed)?;
    let right = left.reversal();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    fn words(fs: &[Factor]) -> Vec<String> {
        let mut v: Vec<String> = fs.iter().map(|f| f.word.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn worked_example_factors() {
        let s = slope("[0;2,(1,2)]");
        let fs = factors_of_length(&s, 5).unwrap();
        assert_eq!(words(&fs), ["00100", "00101", "01001", "01010", "10010", "10100"]);
        // circular order starts at 0 and the lengths add up to 1
        assert_eq!(fs[0].interval.left_idx, 0);
        let total = fs.iter().fold(LinearForm::ZERO, |acc, f| acc + f.interval.length);
        assert_eq!(total, LinearForm::ONE);
    }

    #[test]
    fn length_one_and_two() {
        let s = slope("[0;2,(1,2)]");
        let fs = factors_of_length(&s, 1).unwrap();
        assert_eq!(words(&fs), ["0", "1"]);
        let one = fs.iter().find(|f| f.word.to_string() == "1").unwrap();
        assert_eq!(one.interval.length, LinearForm::ALPHA);
        let s = slope("[0;3,(1)]");
        assert_eq!(words(&factors_of_length(&s, 2).unwrap()), ["00", "01", "10"]);
    }

    #[test]
    fn specials() {
        let s = slope("[0;2,(1,2)]");
        let (l, r) = special_factors(&s, 5).unwrap();
        assert_eq!((l.to_string().as_str(), r.to_string().as_str()), ("01001", "10010"));
        let (l, r) = special_factors(&s, 1).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("0".into(), "0".into()));
    }

    #[test]
    fn right_special_interval_holds_next_point() {
        let s = slope("[0;3,(1,2)]");
        for n in 1..40 {
            let (_, right) = special_factors(&s, n).unwrap();
            let f = find_factor(&s, &right).unwrap();
            let x = s.position(-(n as i128 + 1)).unwrap();
            assert!(f.interval.contains(&s, x).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn membership() {
        let s = slope("[0;2,(1,2)]");
        assert!(is_factor(&s, &"10010".parse().unwrap()).unwrap());
        assert!(!is_factor(&s, &"11".parse().unwrap()).unwrap());
        assert!(matches!(
            find_factor(&s, &"0000".parse().unwrap()),
            Err(Error::NotAFactor(_))
        ));
    }
}
