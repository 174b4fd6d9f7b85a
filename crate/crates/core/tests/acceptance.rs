//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines appear in order on stdout.
//! The process exits nonzero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sturm_core::exactnum::LinearForm;
use sturm_core::repetitions::oracle::{characteristic_prefix, max_fractional_power};
use sturm_core::repetitions::power_scan;
use sturm_core::rotation::factor_set;
use sturm_core::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use sturm_core::{
    conjugacy_report, critical_exponent, factors_of_length, special_factors, three_distance, Slope,
    Word,
};

const N_MAX: u64 = 150;
const KERNEL_MAX: u64 = 500;
const CRIT_TOL: f64 = 1e-9;

type Check<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn slope(text: &str) -> Slope {
    Slope::parse(text).expect("valid slope")
}

fn w(s: &str) -> Word {
    s.parse().expect("binary word")
}

fn family() -> VerifyConfig {
    let mut cfg = VerifyConfig::default_family(N_MAX);
    cfg.kernel_max = KERNEL_MAX;
    cfg
}

fn suites(reports: &[SuiteReport]) -> (bool, String) {
    let pass = reports.iter().all(|r| r.passed());
    let mut parts = Vec::new();
    for r in reports {
        parts.push(format!("{} {}/{} checks ok", r.suite, r.checks - r.failed, r.checks));
        if let Some(f) = r.failures.first() {
            parts.push(format!("first failure: {f}"));
        }
    }
    (pass, parts.join("; "))
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed < l);
    let budget = match limit {
        Some(l) => format!(" (limit {:.0?})", l),
        None => String::new(),
    };
    Outcome {
        pass: ok && in_time,
        detail: format!("{detail}; {:.2?}{budget}", elapsed),
    }
}

fn worked_example() -> (bool, String) {
    let s = slope("[0;2,(1,2)]");
    let d = |n: i128| s.distance(n).unwrap();
    let mut bad = Vec::new();

    let got: BTreeSet<String> = factor_set(&s, 5).unwrap().iter().map(|w| w.to_string()).collect();
    let want: BTreeSet<String> = ["00100", "00101", "01001", "01010", "10010", "10100"]
        .iter()
        .map(|x| x.to_string())
        .collect();
    if got != want {
        bad.push(format!("factors {got:?}"));
    }

    let (left, right) = special_factors(&s, 5).unwrap();
    if (left.clone(), right.clone()) != (w("01001"), w("10010")) {
        bad.push(format!("special {left}/{right}"));
    }

    let spectrum = three_distance(&s, 5).unwrap().spectrum();
    let want: BTreeMap<LinearForm, u64> = [(d(2), 2), (d(3), 3), (d(5), 1)].into_iter().collect();
    if spectrum != want {
        bad.push(format!("gap spectrum {spectrum:?}"));
    }

    let report = conjugacy_report(&s, 3, 1).unwrap();
    if report.leftovers != vec![w("00100")] || report.leftover_length != d(5) {
        bad.push(format!("leftover {:?}", report.leftovers));
    }
    let partition = factors_of_length(&s, 5).unwrap();
    let leftover_interval = partition.iter().find(|f| f.word == w("00100")).map(|f| f.interval.length);
    if leftover_interval != Some(d(5)) {
        bad.push(format!("interval of 00100 is {leftover_interval:?}"));
    }

    let ok = bad.is_empty();
    let detail = if ok {
        "6 factors, specials 01001/10010, gaps 2x|2a| 3x|3a| 1x|5a|, leftover 00100".to_string()
    } else {
        bad.join("; ")
    };
    (ok, detail)
}

fn critical_exponents() -> (bool, String) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = critical_exponent(&slope("[0;2,(1)]"), 30).unwrap();
    let fib_err = (fib.to_f64() - (3.0 + 1.0 / phi)).abs();

    let silver = critical_exponent(&slope("[0;2,(2)]"), 30).unwrap();
    let silver_err = (silver.to_f64() - (4.0 + 2f64.sqrt() - 1.0)).abs();

    let prefix = characteristic_prefix(&slope("[0;2,(1)]"), 100_000).unwrap();
    let (len, period) = max_fractional_power(&prefix, 200);
    let observed = len as f64 / period as f64;

    let ok = fib_err < CRIT_TOL && silver_err < CRIT_TOL && observed > 3.6;
    (
        ok,
        format!(
            "[0;2,(1)] {} (err {fib_err:.1e}), [0;2,(2)] {} (err {silver_err:.1e}), \
             prefix 1e5 power {len}/{period} = {observed:.6} (tol {CRIT_TOL:.0e})",
            fib.approx, silver.approx
        ),
    )
}

fn fibonacci_repetitions() -> (bool, String) {
    let s = slope("[0;2,(1)]");
    let mut bad = Vec::new();
    // cubes of period q_k for 2 ≤ k ≤ 8; none for k = 0, 1
    for k in 0..=8 {
        let n = s.q_u64(k).unwrap();
        let scan = power_scan(&s, n as usize).unwrap();
        let cube = scan.values().any(|&m| m >= 3 * n);
        if cube != (k >= 2) {
            bad.push(format!("cube of period q_{k} = {n}: {cube}"));
        }
    }
    for n in 1..=100u64 {
        let scan = power_scan(&s, n as usize).unwrap();
        if let Some((w, m)) = scan.iter().find(|(_, &m)| m >= 4 * n) {
            bad.push(format!("fourth power of {w} ({m})"));
        }
    }
    let mut cfg = VerifyConfig::new(vec![s], 100);
    cfg.kernel_max = 100;
    let (ok, detail) = suites(&[run_suite(Suite::Corollary, &cfg)]);
    if !ok {
        bad.push(detail.clone());
    }
    let pass = bad.is_empty();
    (
        pass,
        if pass {
            format!("cubes at q_2..q_8, none at q_0, q_1, no fourth powers up to 100; {detail}")
        } else {
            bad.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let cfg = family();
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Check)> = vec![
        (
            "worked example [0;2,(1,2)] n=5",
            Box::new(|| timed(Some(secs(1)), worked_example)),
        ),
        (
            "index formula = oracle, cases exclusive (12 slopes, n<=150)",
            Box::new(|| timed(Some(secs(60)), || suites(&[run_suite(Suite::Thm5, &cfg)]))),
        ),
        (
            "square lengths = convergents and semiconvergents (n<=150)",
            Box::new(|| timed(Some(secs(30)), || suites(&[run_suite(Suite::Prop3Lemma2, &cfg)]))),
        ),
        (
            "conjugacy interval tags (q_(k,l)<=150)",
            Box::new(|| timed(None, || suites(&[run_suite(Suite::Thm4, &cfg)]))),
        ),
        (
            "critical exponent of [0;2,(1)] and [0;2,(2)]",
            Box::new(|| timed(None, critical_exponents)),
        ),
        (
            "cubes, fourth powers and square roots of [0;2,(1)]",
            Box::new(|| timed(None, fibonacci_repetitions)),
        ),
        (
            "best approximations and closest multiples (q<=500)",
            Box::new(|| {
                timed(Some(secs(30)), || {
                    suites(&[run_suite(Suite::Prop1, &cfg), run_suite(Suite::Prop2, &cfg)])
                })
            }),
        ),
        (
            "three distance counts = sorted gaps (n<=500)",
            Box::new(|| timed(None, || suites(&[run_suite(Suite::Thm3, &cfg)]))),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name}: {}", i + 1, out.detail);
        if !out.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
