//! Finite binary words, standard words and semistandard words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::Slope;

// Longest standard word we are willing to materialize.
const MAX_WORD_LEN: u64 = 1 << 28;

/// A finite word over `{0, 1}`, stored one letter per byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&b) = letters.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidLetter(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self(letters))
    }

    pub(crate) fn from_letters(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&b| b <= 1));
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `a^n` for a letter `a`.
    pub fn repeat_letter(letter: u8, n: usize) -> Self {
        assert!(letter <= 1);
        Self(vec![letter; n])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, p: usize) -> Word {
        Word(self.0.repeat(p))
    }

    /// Prefix of `w^ω` of length `len`.
    pub fn fractional_power(&self, len: usize) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(self.0.iter().copied().cycle().take(len).collect()))
    }

    pub fn reversal(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Exchanges the letters 0 and 1.
    pub fn swap_letters(&self) -> Word {
        Word(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// `C^i(w)`, where `C(a_1 ⋯ a_{n−1} a_n) = a_n a_1 ⋯ a_{n−1}`.
    pub fn cyclic_shift(&self, i: usize) -> Result<Word> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        if i >= n {
            return Err(Error::OutOfRange(format!(
                "shift {i} out of range for a word of length {n}"
            )));
        }
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[n - i..]);
        v.extend_from_slice(&self.0[..n - i]);
        Ok(Word(v))
    }

    /// `C^0(w), C^1(w), …, C^{|w|−1}(w)` in order, duplicates included.
    pub fn conjugates(&self) -> Vec<Word> {
        (0..self.len())
            .map(|i| self.cyclic_shift(i).expect("index in range"))
            .collect()
    }

    /// Smallest `i` with `C^i(self) = other`.
    pub fn conjugate_position(&self, other: &Word) -> Option<usize> {
        if self.len() != other.len() || self.is_empty() {
            return None;
        }
        (0..self.len()).find(|&i| {
            let n = self.len();
            self.0[n - i..] == other.0[..i] && self.0[..n - i] == other.0[i..]
        })
    }

    pub fn is_conjugate_of(&self, other: &Word) -> bool {
        self.conjugate_position(other).is_some()
    }

    /// `true` iff `w` occurs exactly twice in `ww`.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let ww = self.pow(2);
        Ok(count_occurrences(ww.letters(), self.letters()) == 2)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Number of (possibly overlapping) occurrences of `self` in `text`.
    pub fn occurrences_in(&self, text: &[u8]) -> usize {
        count_occurrences(text, &self.0)
    }
}

// Knuth–Morris–Pratt count of overlapping occurrences.
fn count_occurrences(text: &[u8], pat: &[u8]) -> usize {
    if pat.is_empty() {
        return text.len() + 1;
    }
    let mut fail = vec![0usize; pat.len()];
    let mut j = 0;
    for i in 1..pat.len() {
        while j > 0 && pat[i] != pat[j] {
            j = fail[j - 1];
        }
        if pat[i] == pat[j] {
            j += 1;
        }
        fail[i] = j;
    }
    let mut count = 0;
    j = 0;
    for &c in text {
        while j > 0 && c != pat[j] {
            j = fail[j - 1];
        }
        if c == pat[j] {
            j += 1;
        }
        if j == pat.len() {
            count += 1;
            j = fail[j - 1];
        }
    }
    count
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

fn check_len(slope: &Slope, k: usize) -> Result<()> {
    if slope.q_u64(k)? > MAX_WORD_LEN {
        return Err(Error::Overflow);
    }
    Ok(())
}

/// Standard word `s_k` for `k ≥ −1`: `s_{−1} = 1`, `s_0 = 0`,
/// `s_1 = 0^{a_1−1}1` and `s_k = s_{k−1}^{a_k} s_{k−2}`.
pub fn standard_word(slope: &Slope, k: i64) -> Result<Word> {
    match k {
        k if k < -1 => Err(Error::OutOfRange(format!("no standard word s_{k}"))),
        -1 => Ok(Word(vec![1])),
        0 => Ok(Word(vec![0])),
        _ => {
            let k = k as usize;
            check_len(slope, k)?;
            let mut prev = Word(vec![1]);
            let mut cur = Word(vec![0]);
            for j in 1..=k {
                // s_1 = s_0^{a_1 − 1} s_{−1}
                let a = slope.a(j)? as usize - usize::from(j == 1);
                let mut next = cur.pow(a);
                next.0.extend_from_slice(&prev.0);
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(cur)
        }
    }
}

/// Semistandard word `s_{k,l} = s_{k−1}^l s_{k−2}` for `k ≥ 2`, `0 < l < a_k`.
pub fn semistandard_word(slope: &Slope, k: usize, l: u64) -> Result<Word> {
    let a = slope.a(k)?;
    if k < 2 || l == 0 || l >= a {
        return Err(Error::OutOfRange(format!(
            "semistandard word needs k >= 2 and 0 < l < a_k, got k = {k}, l = {l} (a_k = {a})"
        )));
    }
    let s1 = standard_word(slope, k as i64 - 1)?;
    let s2 = standard_word(slope, k as i64 - 2)?;
    Ok(s1.pow(l as usize).concat(&s2))
}

/// `s_k s_{k−1}` and `s_{k−1} s_k` agree except for their last two letters,
/// which are `ab` and `ba` with `a ≠ b`.
pub fn near_commutation_check(slope: &Slope, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::OutOfRange(format!(
            "near commutation needs k >= 2, got {k}"
        )));
    }
    let sk = standard_word(slope, k as i64)?;
    let sk1 = standard_word(slope, k as i64 - 1)?;
    let x = sk.concat(&sk1).into_letters();
    let y = sk1.concat(&sk).into_letters();
    let n = x.len();
    Ok(x[..n - 2] == y[..n - 2]
        && x[n - 2] != x[n - 1]
        && x[n - 2] == y[n - 1]
        && x[n - 1] == y[n - 2])
}
