//! Sweeps that check the structural results against brute-force scans.
//!
//! Each suite runs over a family of slopes and records every disagreement
//! between a formula and an independent computation. The oracles used here
//! are exhaustive scans over `n`, sorted orbit gaps and sliding windows over
//! a prefix of the characteristic word built from standard words.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::Result;
use crate::exactnum::{
    best_approximations, closest_multiples, ContinuedFraction, LinearForm, SemiconvergentId, Slope,
};
use crate::repetitions::{
    classify_length_with, conjugacy_report, critical_exponent, fractional_index, length_case,
    power_scan, square_lengths, CaseTag, CriticalValue, Faults,
};
use crate::rotation::{factors_of_length, gap_spectra, is_factor, three_distance};
use crate::words::{semistandard_word, standard_word, Word};

const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Best approximations are the convergents; distance identities.
    Prop1,
    /// Small distances below a semiconvergent come from multiples of `q_{k−1}`.
    Prop2,
    /// Three distance theorem.
    Thm3,
    /// Square lengths and squares of semistandard words.
    Prop3Lemma2,
    /// Interval lengths of conjugates of `s̄_{k,l}`.
    Thm4,
    /// Index characterization.
    Thm5,
    /// Fractional indices and the critical exponent.
    Thm6,
    /// Primitive square and cube roots.
    Corollary,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Prop1,
        Suite::Prop2,
        Suite::Thm3,
        Suite::Prop3Lemma2,
        Suite::Thm4,
        Suite::Thm5,
        Suite::Thm6,
        Suite::Corollary,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Thm3 => "thm3",
            Suite::Prop3Lemma2 => "prop3-lemma2",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Thm6 => "thm6",
            Suite::Corollary => "corollary",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failed: u64,
    /// The first few failure messages, in deterministic order.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub slopes: Vec<Slope>,
    /// Largest word length for the combinatorial suites.
    pub n_max: u64,
    /// Largest denominator or orbit length for the number-theoretic suites.
    pub kernel_max: u64,
    #[doc(hidden)]
    pub faults: Faults,
}

impl VerifyConfig {
    pub fn new(slopes: Vec<Slope>, n_max: u64) -> Self {
        Self {
            slopes,
            n_max,
            kernel_max: 500,
            faults: Faults::default(),
        }
    }

    pub fn default_family(n_max: u64) -> Self {
        Self::new(default_family().into_iter().map(Slope::new).collect(), n_max)
    }
}

/// `[0; a_1, (period)]` for `a_1 ∈ {2, 3}` and the periods (1), (2), (3),
/// (1,2), (2,1), (1,3).
pub fn default_family() -> Vec<ContinuedFraction> {
    let periods: [&[u64]; 6] = [&[1], &[2], &[3], &[1, 2], &[2, 1], &[1, 3]];
    let mut out = Vec::new();
    for a1 in [2, 3] {
        for p in periods {
            out.push(ContinuedFraction::periodic(&[a1], p).expect("valid expansion"));
        }
    }
    out
}

// Collects check outcomes for one slope.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, want {want:?}", what()));
        }
    }

    fn run(&mut self, label: &str, f: impl FnOnce(&mut Tally) -> Result<()>) {
        if let Err(e) = f(self) {
            self.checks += 1;
            self.failures.push(format!("{label}: {e}"));
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let per_slope: Vec<Tally> = cfg
        .slopes
        .par_iter()
        .map(|slope| {
            let mut t = Tally::default();
            let label = slope.cf().to_string();
            t.run(&label, |t| match suite {
                Suite::Prop1 => prop1(slope, cfg, t),
                Suite::Prop2 => prop2(slope, cfg, t),
                Suite::Thm3 => thm3(slope, cfg, t),
                Suite::Prop3Lemma2 => prop3_lemma2(slope, cfg, t),
                Suite::Thm4 => thm4(slope, cfg, t),
                Suite::Thm5 => thm5(slope, cfg, t),
                Suite::Thm6 => thm6(slope, cfg, t),
                Suite::Corollary => corollary(slope, cfg, t),
            });
            for f in &mut t.failures {
                *f = format!("{label}: {f}");
            }
            t
        })
        .collect();
    let mut report = SuiteReport {
        suite,
        checks: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for t in per_slope {
        report.checks += t.checks;
        report.failed += t.failures.len() as u64;
        for f in t.failures {
            if report.failures.len() < MAX_RECORDED_FAILURES {
                report.failures.push(f);
            }
        }
    }
    report
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, cfg)).collect()
}

// Largest k with q_k ≤ bound.
fn last_k_below(slope: &Slope, bound: u64) -> Result<usize> {
    let mut k = 0;
    while slope.q_u64(k + 1)? <= bound {
        k += 1;
    }
    Ok(k)
}

fn prop1(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let q_max = cfg.kernel_max;
    // exhaustive scan: b is a best approximation denominator iff ‖bα‖ is a
    // strict running minimum
    let mut scan: Vec<(u64, i128)> = Vec::new();
    let mut min: Option<LinearForm> = None;
    let mut dists = Vec::with_capacity(q_max as usize + 1);
    dists.push(LinearForm::ZERO);
    for b in 1..=q_max {
        let d = slope.distance(b as i128)?;
        dists.push(d);
        let better = match min {
            None => true,
            Some(m) => slope.compare(d, m)? == Ordering::Less,
        };
        if better {
            min = Some(d);
            // the numerator is the nearest integer to bα
            let a = if d.q > 0 { d.p } else { -d.p };
            scan.push((b, a));
        }
    }
    let conv: Vec<(u64, i128)> = best_approximations(slope, q_max)?
        .into_iter()
        .map(|c| {
            (
                c.q.try_into().expect("small denominator"),
                c.p.try_into().expect("small numerator"),
            )
        })
        .collect();
    t.eq(conv, scan, || format!("best approximations up to {q_max}"));

    let depth = slope.depth().min(40);
    for k in 1..=depth {
        let (p, q) = (slope.p(k)?, slope.q(k)?);
        let (p1, q1) = (slope.p(k - 1)?, slope.q(k - 1)?);
        let det = p * q1 - p1 * q;
        let want = if k % 2 == 1 { 1 } else { -1 };
        t.eq(det, BigInt::from(want), || format!("determinant at k = {k}"));
        t.eq(slope.recover_quotient(k)?, slope.a(k)?, || format!("recovered a_{k}"));
    }

    // min over 0 < n < q_k of ‖nα‖ is ‖q_{k−1}α‖, attained only there
    let k_top = last_k_below(slope, q_max)?;
    for k in 1..=k_top {
        let qk = slope.q_u64(k)?;
        let qk1 = slope.q_u64(k - 1)?;
        let target = dists[qk1 as usize];
        for n in 1..qk {
            let ord = slope.compare(dists[n as usize], target)?;
            let ok = if n == qk1 { ord.is_eq() } else { ord.is_gt() };
            t.check(ok, || format!("min distance below q_{k}: n = {n}"));
        }
    }

    for k in 2..=depth.min(30) {
        let a = slope.a(k)? as i128;
        let prev = slope.convergent_distance(k as i64 - 1)?;
        let prev2 = slope.convergent_distance(k as i64 - 2)?;
        let lower = slope.compare(prev.scale(a), prev2)?.is_lt();
        let upper = slope.compare(prev2, prev.scale(a + 1))?.is_lt();
        t.check(lower && upper, || format!("quotient sandwich at k = {k}"));
    }
    Ok(())
}

fn prop2(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let bound = cfg.kernel_max;
    let mut dists = vec![LinearForm::ZERO];
    for n in 1..=bound {
        dists.push(slope.distance(n as i128)?);
    }
    let mut k = 2;
    while slope.semiconvergent_u64(SemiconvergentId::new(k, 1))? <= bound {
        let a = slope.a(k)?;
        let step = slope.q_u64(k - 1)?;
        for l in 1..=a {
            let id = SemiconvergentId::new(k, l);
            let qkl = slope.semiconvergent_u64(id)?;
            if qkl > bound {
                break;
            }
            let limit = slope.semiconvergent_distance(SemiconvergentId::new(k, l - 1))?;
            let mut scan = Vec::new();
            for n in 1..qkl {
                if slope.compare(dists[n as usize], limit)?.is_lt() {
                    scan.push(n);
                }
            }
            let got = closest_multiples(slope, id)?;
            t.eq(got.clone(), scan, || format!("closest multiples for (k, l) = ({k}, {l})"));
            for n in got {
                let m = n / step;
                let ok = n % step == 0 && m >= 1 && m <= l.min(a - l + 1);
                t.check(ok, || format!("({k}, {l}): {n} is not an admissible multiple of {step}"));
            }
            let cur = slope.semiconvergent_distance(id)?;
            let step_dist = slope.convergent_distance(k as i64 - 1)?;
            t.eq(cur, limit - step_dist, || format!("distance difference at ({k}, {l})"));
        }
        k += 1;
    }
    Ok(())
}

fn thm3(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let spectra = gap_spectra(slope, cfg.kernel_max)?;
    let a1 = slope.a(1)?;
    for n in a1 + 1..=cfg.kernel_max {
        let p = three_distance(slope, n)?;
        let total: u64 = p.gaps.iter().map(|g| g.count).sum();
        t.eq(total, n + 1, || format!("gap count at n = {n}"));
        t.eq(
            p.gaps[2].length,
            p.gaps[0].length + p.gaps[1].length,
            || format!("long gap at n = {n}"),
        );
        t.eq(p.spectrum(), spectra[n as usize].clone(), || format!("gap spectrum at n = {n}"));
    }
    Ok(())
}

fn prop3_lemma2(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let n_max = cfg.n_max;
    let want = square_lengths(slope, n_max)?;
    let mut found = std::collections::BTreeSet::new();
    for n in 1..=n_max {
        let scan = power_scan(slope, n as usize)?;
        for (w, m) in scan {
            if m >= 2 * n && w.is_primitive()? {
                found.insert(n);
            }
        }
    }
    t.eq(found, want.clone(), || format!("square lengths up to {n_max}"));

    // squares of s_k and s_{k,l} are factors of the language
    let mut k = 0;
    while slope.q_u64(k)? <= n_max {
        let s = standard_word(slope, k as i64)?;
        t.check(is_factor(slope, &s.pow(2))?, || format!("s_{k}^2 is not a factor"));
        if k >= 2 {
            for l in 1..slope.a(k)? {
                let s = semistandard_word(slope, k, l)?;
                if s.len() as u64 <= n_max {
                    t.check(is_factor(slope, &s.pow(2))?, || {
                        format!("s_{{{k},{l}}}^2 is not a factor")
                    });
                }
            }
        }
        k += 1;
    }
    Ok(())
}

fn thm4(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let n_max = cfg.n_max;
    let mut k = 2;
    while slope.semiconvergent_u64(SemiconvergentId::new(k, 1))? <= n_max {
        for l in 1..=slope.a(k)? {
            let n = slope.semiconvergent_u64(SemiconvergentId::new(k, l))?;
            if n > n_max {
                break;
            }
            let report = conjugacy_report(slope, k, l)?;
            let lengths: std::collections::HashMap<Word, LinearForm> =
                factors_of_length(slope, n as usize)?
                    .into_iter()
                    .map(|f| (f.word, f.interval.length))
                    .collect();
            for c in &report.conjugates {
                match lengths.get(&c.word) {
                    Some(&len) => t.eq(len, c.length, || {
                        format!("({k}, {l}) conjugate {} interval", c.position)
                    }),
                    None => t.check(false, || {
                        format!("({k}, {l}) conjugate {} = {} is not a factor", c.position, c.word)
                    }),
                }
            }
            let distinct: std::collections::HashSet<&Word> =
                report.conjugates.iter().map(|c| &c.word).collect();
            t.eq(distinct.len() as u64 + report.leftovers.len() as u64, n + 1, || {
                format!("({k}, {l}) class plus leftover")
            });
            t.eq(report.leftovers.len(), 1, || format!("({k}, {l}) leftover count"));
            if let Some(w) = report.leftovers.first() {
                if let Some(&len) = lengths.get(w) {
                    t.eq(len, report.leftover_length, || format!("({k}, {l}) leftover interval"));
                }
            }
            let qk1 = slope.q_u64(k - 1)? as usize;
            let s = if l == slope.a(k)? {
                standard_word(slope, k as i64)?
            } else {
                semistandard_word(slope, k, l)?
            };
            t.eq(report.base.cyclic_shift(qk1 - 2)?, s, || {
                format!("({k}, {l}) conjugate q_(k-1) - 2")
            });
        }
        k += 1;
    }
    Ok(())
}

fn thm5(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 1..=cfg.n_max {
        let case = length_case(slope, n)?;
        let exclusive = match case.tag {
            CaseTag::VII => case.matches.is_empty(),
            _ => case.matches.len() == 1,
        };
        t.check(exclusive, || format!("n = {n} matches cases {:?}", case.matches));
        let scan = power_scan(slope, n as usize)?;
        let reports = classify_length_with(slope, n, false, cfg.faults)?;
        t.eq(reports.len() as u64, n + 1, || format!("factor count at n = {n}"));
        for r in reports {
            let oracle = scan.get(&r.word).map(|m| m / n);
            t.eq(Some(r.integer_index), oracle, || format!("index of {} (n = {n})", r.word));
            t.eq(r.integer_index, r.predicted_index, || {
                format!("case ({}) prediction for {}", r.case_tag, r.word)
            });
        }
    }
    Ok(())
}

fn thm6(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let n_max = cfg.n_max;
    // fractional index of s_k is a_{k+1} + 2 + (q_{k−1} − 2)/q_k
    let mut k = 1;
    while slope.q_u64(k)? <= n_max {
        let qk = slope.q_u64(k)?;
        let s = standard_word(slope, k as i64)?;
        let got = fractional_index(slope, &s)?;
        let num = (slope.a(k + 1)? + 2) * qk + slope.q_u64(k - 1)? - 2;
        t.eq(got, num_rational::Ratio::new(num, qk), || format!("fractional index of s_{k}"));
        k += 1;
    }

    let crit = critical_exponent(slope, 40)?;
    let beta = match &crit.value {
        CriticalValue::Limit { beta, .. } => Some(Slope::new(beta.clone())),
        _ => None,
    };
    // m/n ≤ critical exponent, strictly when the supremum is not attained
    let below = |m: u64, n: u64| -> Result<bool> {
        let r = BigRational::new(BigInt::from(m), BigInt::from(n));
        Ok(match (&crit.value, &beta) {
            (CriticalValue::FirstQuotient(a), _) => r <= BigRational::from_integer(BigInt::from(*a)),
            (CriticalValue::Attained { value, .. }, _) => &r <= value,
            (CriticalValue::LowerBound { .. }, _) => true,
            (CriticalValue::Limit { integer, .. }, Some(b)) => {
                let x = r - BigRational::from_integer(BigInt::from(*integer));
                let (u, v): (i128, i128) = (
                    x.numer().try_into().expect("small"),
                    x.denom().try_into().expect("small"),
                );
                b.sign(LinearForm::new(v, u))? == Ordering::Greater
            }
            (CriticalValue::Limit { .. }, None) => unreachable!(),
        })
    };
    for n in 1..=n_max {
        let scan = power_scan(slope, n as usize)?;
        for r in classify_length_with(slope, n, true, Faults::default())? {
            let m = scan.get(&r.word).copied();
            t.eq(r.power_len, m, || format!("fractional index of {} (n = {n})", r.word));
            if let Some(m) = m {
                t.check(below(m, n)?, || {
                    format!("{} has exponent {m}/{n} above the critical exponent", r.word)
                });
            }
        }
    }
    Ok(())
}

fn corollary(slope: &Slope, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let n_max = cfg.n_max.min(100);
    let a1 = slope.a(1)?;
    let k_top = last_k_below(slope, n_max)?;
    let mut standard = Vec::new();
    let mut semistandard = Vec::new();
    for k in 0..=k_top {
        standard.push((k, standard_word(slope, k as i64)?));
        if k >= 2 {
            for l in 1..slope.a(k)? {
                semistandard.push(semistandard_word(slope, k, l)?);
            }
        }
    }
    // the next semiconvergents can also be short
    if k_top + 1 >= 2 {
        for l in 1..slope.a(k_top + 1)? {
            let s = semistandard_word(slope, k_top + 1, l)?;
            if s.len() as u64 <= n_max {
                semistandard.push(s);
            }
        }
    }
    for n in 1..=n_max {
        for (w, m) in power_scan(slope, n as usize)? {
            if m < 2 * n || !w.is_primitive()? {
                continue;
            }
            let square_ok = standard.iter().any(|(_, s)| s.is_conjugate_of(&w))
                || semistandard.iter().any(|s| s.is_conjugate_of(&w));
            t.check(square_ok, || format!("square root {w} is not conjugate to s_k or s_(k,l)"));
            if m >= 3 * n {
                let cube_ok = (w == Word::repeat_letter(0, 1) && a1 > 2)
                    || standard.iter().any(|(k, s)| *k >= 1 && s.is_conjugate_of(&w));
                t.check(cube_ok, || format!("cube root {w} is not 0 or conjugate to s_k"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_has_twelve_slopes() {
        let fam = default_family();
        assert_eq!(fam.len(), 12);
        assert!(fam.iter().all(|cf| cf.is_normalized()));
    }

    #[test]
    fn small_sweep_passes() {
        let mut cfg = VerifyConfig::default_family(30);
        cfg.kernel_max = 80;
        for r in run_all(&cfg) {
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn flipped_gamma_breaks_index_suite() {
        let mut cfg = VerifyConfig::default_family(20);
        cfg.faults.flip_gamma = true;
        let r = run_suite(Suite::Thm5, &cfg);
        assert!(!r.passed());
        assert!(run_suite(Suite::Thm3, &cfg).passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
    }
}
