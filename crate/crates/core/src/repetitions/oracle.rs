//! Brute-force scans of a prefix of the characteristic word.
//!
//! The prefix is built from standard words only; nothing here uses the
//! interval machinery, so these scans serve as independent oracles for it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::Slope;
use crate::words::{standard_word, Word};

/// First `len` letters of the characteristic word `c_α`.
pub fn characteristic_prefix(slope: &Slope, len: usize) -> Result<Vec<u8>> {
    slope.require_normalized()?;
    let k = slope.first_q_at_least(len.max(1) as u64)?;
    let mut s = standard_word(slope, k as i64)?.into_letters();
    s.truncate(len);
    Ok(s)
}

/// A start bound `T` such that every factor of length `len` occurs in the
/// characteristic word at some position `t ≤ T`.
///
/// With `q_k ≥ len`, the prefix `s_{k+2} s_{k+1}` contains all factors of
/// length up to `q_k`, which gives `T = q_{k+2} + q_{k+1} − 1`.
pub fn covering_start_bound(slope: &Slope, len: u64) -> Result<u64> {
    let k = slope.first_q_at_least(len.max(1))?;
    Ok(slope.q_u64(k + 2)? + slope.q_u64(k + 1)? - 1)
}

// run[t] = length of the longest stretch p[t + i] == p[t + i + n], i ≥ 0,
// that stays inside p
fn period_runs(p: &[u8], n: usize) -> Vec<u32> {
    let mut run = vec![0u32; p.len().saturating_sub(n) + 1];
    for t in (0..p.len().saturating_sub(n)).rev() {
        if p[t] == p[t + n] {
            run[t] = run[t + 1] + 1;
        }
    }
    run
}

/// For every factor `w` of length `n`, the length of the longest prefix of
/// `w^ω` that is a factor. The scan length is doubled until the result is
/// certified.
pub fn power_scan(slope: &Slope, n: usize) -> Result<HashMap<Word, u64>> {
    if n == 0 {
        return Err(Error::OutOfRange("period must be positive".into()));
    }
    let mut need = 4 * n as u64;
    loop {
        if let Some(found) = power_scan_at(slope, n, need)? {
            return Ok(found);
        }
        need *= 2;
    }
}

// Scan with every repetition capped at `need`; None when some repetition
// reaches the cap.
fn power_scan_at(slope: &Slope, n: usize, need: u64) -> Result<Option<HashMap<Word, u64>>> {
    let t_max = covering_start_bound(slope, need)? as usize;
    let len = t_max + need as usize + n + 1;
    let p = characteristic_prefix(slope, len)?;
    let run = period_runs(&p, n);

    // factors are identified through (factor at t, letter at t + n) → factor
    // at t + 1, so each window is hashed only on the first visit
    let mut ids: HashMap<&[u8], usize> = HashMap::new();
    let mut next: HashMap<(usize, u8), usize> = HashMap::new();
    let mut best: Vec<u64> = Vec::new();
    let mut cur = usize::MAX;
    let mut capped = false;
    for t in 0..=t_max {
        let id = if t == 0 {
            None
        } else {
            next.get(&(cur, p[t + n - 1])).copied()
        };
        let id = match id {
            Some(id) => id,
            None => {
                let w = &p[t..t + n];
                let fresh = ids.len();
                let id = *ids.entry(w).or_insert(fresh);
                if id == fresh {
                    best.push(0);
                }
                if t > 0 {
                    next.insert((cur, p[t + n - 1]), id);
                }
                id
            }
        };
        cur = id;
        let m = (n as u64 + run[t] as u64).min(need);
        if m >= need {
            capped = true;
            break;
        }
        best[id] = best[id].max(m);
    }
    if capped {
        return Ok(None);
    }
    let mut out = HashMap::with_capacity(ids.len());
    for (w, id) in ids {
        out.insert(Word::from_letters(w.to_vec()), best[id]);
    }
    Ok(Some(out))
}

/// Length of the longest prefix of `w^ω` occurring in the first
/// `prefix_len` letters of `c_α`.
///
/// Fails with [`Error::PrefixTooShort`] unless the scanned prefix is long
/// enough to certify the answer: it must contain every factor of length
/// `m + 1`, where `m` is the longest repetition found, with room to extend
/// each occurrence.
pub fn longest_power_oracle(slope: &Slope, w: &Word, prefix_len: usize) -> Result<u64> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let p = characteristic_prefix(slope, prefix_len)?;
    let run = period_runs(&p, n);
    let pat = w.letters();
    let mut found = None::<u64>;
    for t in 0..p.len().saturating_sub(n - 1) {
        if &p[t..t + n] == pat {
            let m = n as u64 + run.get(t).copied().unwrap_or(0) as u64;
            found = Some(found.map_or(m, |b: u64| b.max(m)));
        }
    }
    let Some(m) = found else {
        let need = covering_start_bound(slope, n as u64)? as usize + n;
        if prefix_len >= need {
            return Err(Error::NotAFactor(w.to_string()));
        }
        return Err(Error::PrefixTooShort {
            have: prefix_len,
            need,
        });
    };
    let need = covering_start_bound(slope, m + 1)? as usize + m as usize + 1 + n;
    if prefix_len < need {
        return Err(Error::PrefixTooShort {
            have: prefix_len,
            need,
        });
    }
    Ok(m)
}

/// Largest `p` with `w^p` a factor, by scanning `prefix_len` letters of
/// `c_α`.
pub fn index_oracle(slope: &Slope, w: &Word, prefix_len: usize) -> Result<u64> {
    Ok(longest_power_oracle(slope, w, prefix_len)? / w.len() as u64)
}

/// The largest exponent `len / period` of a repetition with period at most
/// `max_period` inside `text`, as `(len, period)`.
pub fn max_fractional_power(text: &[u8], max_period: usize) -> (u64, u64) {
    let mut best = (1u64, 1u64);
    for n in 1..=max_period.min(text.len()) {
        let mut run = 0u64;
        let mut longest = 0u64;
        for t in 0..text.len() - n {
            if text[t] == text[t + n] {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        let len = n as u64 + longest;
        if len * best.1 > best.0 * n as u64 {
            best = (len, n as u64);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::factor_set;

    fn slope(s: &str) -> Slope {
        Slope::parse(s).unwrap()
    }

    #[test]
    fn prefix_matches_standard_word() {
        let s = slope("[0;2,(1,2)]");
        let p = characteristic_prefix(&s, 8).unwrap();
        assert_eq!(Word::from_letters(p).to_string(), "01001001");
    }

    #[test]
    fn covering_bound_reaches_every_factor() {
        for text in ["[0;2,(1)]", "[0;3,(1,2)]", "[0;2,(3)]", "[0;3,(2,1)]"] {
            let s = slope(text);
            for len in 1..200usize {
                let t = covering_start_bound(&s, len as u64).unwrap() as usize;
                let p = characteristic_prefix(&s, t + len).unwrap();
                let seen: std::collections::HashSet<&[u8]> = p.windows(len).collect();
                assert_eq!(seen.len(), len + 1, "{text} len {len}");
                let all = factor_set(&s, len).unwrap();
                assert!(all.iter().all(|w| seen.contains(w.letters())));
            }
        }
    }

    #[test]
    fn oracle_indices() {
        let s = slope("[0;2,(1)]");
        // s̄_2 = 010 has index a_3 + 2 = 3
        assert_eq!(index_oracle(&s, &"010".parse().unwrap(), 2000).unwrap(), 3);
        assert_eq!(index_oracle(&s, &"1".parse().unwrap(), 2000).unwrap(), 1);
        assert_eq!(index_oracle(&s, &"00".parse().unwrap(), 2000).unwrap(), 1);
        assert!(matches!(
            index_oracle(&s, &"010".parse().unwrap(), 20),
            Err(Error::PrefixTooShort { .. })
        ));
        assert!(matches!(
            index_oracle(&s, &"11".parse().unwrap(), 2000),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn scan_agrees_with_single_word_oracle() {
        let s = slope("[0;3,(1,2)]");
        for n in 1..30 {
            let scan = power_scan(&s, n).unwrap();
            assert_eq!(scan.len(), n + 1);
            for (w, m) in &scan {
                assert_eq!(longest_power_oracle(&s, w, 20_000).unwrap(), *m, "{w}");
            }
        }
    }

    #[test]
    fn fractional_power_in_fibonacci_prefix() {
        let s = slope("[0;2,(1)]");
        let p = characteristic_prefix(&s, 5000).unwrap();
        let (len, period) = max_fractional_power(&p, 200);
        assert!(len as f64 / period as f64 > 3.5);
    }
}
