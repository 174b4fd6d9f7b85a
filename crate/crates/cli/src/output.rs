//! Builds the table and JSON renderings of each command.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::{json, Value};
use sturm_core::exactnum::round_significant;
use sturm_core::repetitions::oracle::{characteristic_prefix, max_fractional_power};
use sturm_core::repetitions::{ConjugateTag, CriticalValue};
use sturm_core::verify::{run_suite, Suite, VerifyConfig};
use sturm_core::{
    classify_length, conjugacy_report, factors_of_length, semistandard_word,
    three_distance as partition, Error, IndexReport, LinearForm, Slope, Word,
};

use crate::Input;

pub struct Report {
    pub table: String,
    pub json: Value,
    /// False when a requested check failed.
    pub ok: bool,
}

type Result<T> = std::result::Result<T, Error>;

const DIGITS: usize = 12;

fn int(x: i128) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn form(slope: &Slope, f: LinearForm) -> Value {
    json!({ "q": int(f.q), "p": int(f.p), "approx": slope.to_decimal(f, DIGITS) })
}

fn ratio(r: Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn envelope(input: &Input, command: &str, results: Vec<Value>) -> Value {
    let mut doc = json!({
        "slope": input.text,
        "depth": input.slope.depth(),
        "command": command,
        "results": results,
    });
    if input.swapped {
        doc["normalized_slope"] = json!(input.slope.cf().to_string());
        doc["letters_swapped"] = json!(true);
    }
    doc
}

fn heading(input: &Input) -> String {
    let mut s = format!("slope {} (depth {})\n", input.text, input.slope.depth());
    if input.swapped {
        let _ = writeln!(
            s,
            "normalized to {}; words below use the original letters",
            input.slope.cf()
        );
    }
    s
}

// Left-aligned columns separated by two spaces.
fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let pad = w - c.chars().count();
                let _ = write!(s, "{c}{}  ", " ".repeat(pad));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn factors(input: &Input, n: usize) -> Result<Report> {
    let s = &input.slope;
    let (open, close) = if input.boundary_right { ("(", "]") } else { ("[", ")") };
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (i, f) in factors_of_length(s, n)?.into_iter().enumerate() {
        let iv = f.interval;
        let word = input.word_out(&f.word);
        let arc = format!("{open}{{-{}α}}, {{-{}α}}{close}", iv.left_idx, iv.right_idx);
        rows.push(vec![
            i.to_string(),
            word.clone(),
            arc,
            s.to_decimal(iv.start, DIGITS),
            iv.length.to_string(),
            s.to_decimal(iv.length, DIGITS),
        ]);
        results.push(json!({
            "word": word,
            "left_point": iv.left_idx,
            "right_point": iv.right_idx,
            "closed": if input.boundary_right { "right" } else { "left" },
            "start": form(s, iv.start),
            "length": form(s, iv.length),
        }));
    }
    let table = heading(input)
        + &render(&["#", "word", "interval", "start", "length", "approx"], &rows);
    Ok(Report {
        table,
        json: envelope(input, "factors", results),
        ok: true,
    })
}

fn index_rows(input: &Input, reports: &[IndexReport]) -> (String, Vec<Value>) {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for r in reports {
        let word = input.word_out(&r.word);
        let frac = r.fractional_index();
        let pos = r.conjugate_position.map_or("-".to_string(), |p| p.to_string());
        rows.push(vec![
            word.clone(),
            r.integer_index.to_string(),
            frac.map_or("-".into(), ratio),
            r.case_tag.to_string(),
            pos,
            r.predicted_index.to_string(),
        ]);
        results.push(json!({
            "word": word,
            "n": r.n,
            "index": r.integer_index,
            "fractional_index": frac.map(ratio),
            "power_length": r.power_len,
            "case": r.case_tag.as_str(),
            "conjugate_position": r.conjugate_position,
            "predicted_index": r.predicted_index,
        }));
    }
    let table = render(&["word", "index", "fractional", "case", "conjugate", "predicted"], &rows);
    (table, results)
}

pub fn index_length(input: &Input, n: u64) -> Result<Report> {
    let reports = classify_length(&input.slope, n)?;
    let (table, results) = index_rows(input, &reports);
    Ok(Report {
        table: heading(input) + &table,
        json: envelope(input, "index", results),
        ok: true,
    })
}

pub fn index_word(input: &Input, w: &Word) -> Result<Report> {
    let reports = classify_length(&input.slope, w.len() as u64)?;
    let found: Vec<IndexReport> = reports.into_iter().filter(|r| &r.word == w).collect();
    if found.is_empty() {
        return Err(Error::NotAFactor(input.word_out(w)));
    }
    let (table, results) = index_rows(input, &found);
    Ok(Report {
        table: heading(input) + &table,
        json: envelope(input, "index", results),
        ok: true,
    })
}

pub fn three_distance(input: &Input, n: u64) -> Result<Report> {
    let s = &input.slope;
    let p = partition(s, n)?;
    let names = ["q_(k-1)", "q_(k,l)", "q_(k,l-1)"];
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for (name, g) in names.iter().zip(&p.gaps) {
        rows.push(vec![
            name.to_string(),
            g.count.to_string(),
            g.length.to_string(),
            s.to_decimal(g.length, DIGITS),
        ]);
        gaps.push(json!({ "class": name, "count": g.count, "length": form(s, g.length) }));
    }
    let table = heading(input)
        + &format!("n = {} = {}*q_{} + q_{} + {}\n", p.n, p.l, p.k - 1, p.k - 2, p.r)
        + &render(&["gap", "count", "length", "approx"], &rows);
    let result = json!({ "n": p.n, "k": p.k, "l": p.l, "r": p.r, "gaps": gaps });
    Ok(Report {
        table,
        json: envelope(input, "three-distance", vec![result]),
        ok: true,
    })
}

pub fn standard_word(input: &Input, k: i64, l: Option<u64>) -> Result<Report> {
    let (name, w) = match l {
        Some(l) => {
            let k = usize::try_from(k)
                .map_err(|_| Error::OutOfRange(format!("no semistandard word for k = {k}")))?;
            (format!("s_({k},{l})"), semistandard_word(&input.slope, k, l)?)
        }
        None => (format!("s_{k}"), sturm_core::standard_word(&input.slope, k)?),
    };
    let word = input.word_out(&w);
    let table = heading(input) + &format!("{name} (length {}): {word}\n", w.len());
    let result = json!({ "k": k, "l": l, "length": w.len(), "word": word });
    Ok(Report {
        table,
        json: envelope(input, "standard-word", vec![result]),
        ok: true,
    })
}

pub fn conjugacy(input: &Input, k: usize, l: Option<u64>) -> Result<Report> {
    let s = &input.slope;
    let l = match l {
        Some(l) => l,
        None => s.a(k)?,
    };
    let r = conjugacy_report(s, k, l)?;
    let mut rows = Vec::new();
    let mut conj = Vec::new();
    for c in &r.conjugates {
        let word = input.word_out(&c.word);
        let tag = match c.tag {
            ConjugateTag::Long => "long",
            ConjugateTag::Short => "short",
        };
        rows.push(vec![
            c.position.to_string(),
            word.clone(),
            tag.to_string(),
            c.length.to_string(),
            s.to_decimal(c.length, DIGITS),
        ]);
        conj.push(json!({
            "position": c.position,
            "word": word,
            "tag": tag,
            "length": form(s, c.length),
        }));
    }
    let leftovers: Vec<String> = r.leftovers.iter().map(|w| input.word_out(w)).collect();
    let mut table = heading(input)
        + &format!("class of reversed s_({k},{l}) = {}, n = {}\n", input.word_out(&r.base), r.n)
        + &render(&["i", "conjugate", "tag", "length", "approx"], &rows);
    let _ = writeln!(
        table,
        "outside the class: {} (interval length {} = {})",
        leftovers.join(", "),
        r.leftover_length,
        s.to_decimal(r.leftover_length, DIGITS)
    );
    let result = json!({
        "k": k,
        "l": l,
        "n": r.n,
        "base": input.word_out(&r.base),
        "conjugates": conj,
        "leftovers": leftovers,
        "leftover_length": form(s, r.leftover_length),
    });
    Ok(Report {
        table,
        json: envelope(input, "conjugacy", vec![result]),
        ok: true,
    })
}

pub fn critical_exponent(input: &Input, prefix: usize) -> Result<Report> {
    let s = &input.slope;
    let r = sturm_core::critical_exponent(s, s.depth())?;
    let mut rows = Vec::new();
    let mut terms = Vec::new();
    for t in &r.terms {
        let approx = round_significant(&t.value, DIGITS);
        rows.push(vec![t.k.to_string(), t.a_k.to_string(), t.value.to_string(), approx.clone()]);
        terms.push(json!({
            "k": t.k,
            "a_k": t.a_k,
            "value": t.value.to_string(),
            "approx": approx,
        }));
    }
    let (kind, exact) = match &r.value {
        CriticalValue::FirstQuotient(a) => ("first quotient".to_string(), a.to_string()),
        CriticalValue::Attained { k, value } => (format!("attained at k = {k}"), value.to_string()),
        CriticalValue::Limit { integer, beta } => {
            ("limit (not attained)".to_string(), format!("{integer} + {beta}"))
        }
        CriticalValue::LowerBound { value } => {
            ("lower bound (depth-limited)".to_string(), value.to_string())
        }
    };
    // a truncated expansion only determines the prefix up to its last q_k
    let prefix = prefix.min(s.q_u64(s.depth()).unwrap_or(u64::MAX) as usize).max(1);
    let text = characteristic_prefix(s, prefix)?;
    let (len, period) = max_fractional_power(&text, (prefix / 3).clamp(1, 500));
    let observed = Ratio::new(len, period);

    let mut table = heading(input)
        + &render(&["k", "a_k", "2 + a_k + (q_(k-2) - 2)/q_(k-1)", "approx"], &rows);
    let _ = writeln!(table, "critical exponent: {} ({kind}) = {exact}", r.approx);
    let _ = writeln!(
        table,
        "oracle lower bound: {len}/{period} = {} in a prefix of length {prefix}",
        round_significant(&num_rational::BigRational::new(len.into(), period.into()), DIGITS)
    );
    let _ = writeln!(table, "note: {}", sturm_core::CriticalExponentResult::BOUNDEDNESS_NOTE);
    let result = json!({
        "value": exact,
        "kind": kind,
        "approx": r.approx,
        "exact": r.is_exact(),
        "witness_k": r.witness_k,
        "terms": terms,
        "oracle_lower_bound": {
            "length": len,
            "period": period,
            "exponent": ratio(observed),
            "prefix": prefix,
        },
    });
    Ok(Report {
        table,
        json: envelope(input, "critical-exponent", vec![result]),
        ok: true,
    })
}

pub fn verify(label: &str, depth: usize, cfg: &VerifyConfig, suites: &[Suite]) -> Report {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut ok = true;
    let mut failures = String::new();
    for &suite in suites {
        let r = run_suite(suite, cfg);
        ok &= r.passed();
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        rows.push(vec![
            suite.to_string(),
            verdict.to_string(),
            r.checks.to_string(),
            r.failed.to_string(),
        ]);
        for f in &r.failures {
            let _ = writeln!(failures, "  {suite}: {f}");
        }
        results.push(json!({
            "suite": suite.name(),
            "passed": r.passed(),
            "checks": r.checks,
            "failed": r.failed,
            "failures": r.failures,
        }));
    }
    let mut table = format!(
        "verify {label}: {} slope(s), n <= {}, kernel <= {}\n",
        cfg.slopes.len(),
        cfg.n_max,
        cfg.kernel_max
    );
    table += &render(&["suite", "result", "checks", "failed"], &rows);
    if !failures.is_empty() {
        table += "failures:\n";
        table += &failures;
    }
    let json = json!({
        "slope": label,
        "depth": depth,
        "command": "verify",
        "results": results,
    });
    Report { table, json, ok }
}
