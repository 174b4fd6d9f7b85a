//! `sturm`: analyse repetitions in Sturmian words from the continued
//! fraction of the slope.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sturm_core::verify::{default_family, Suite, VerifyConfig};
use sturm_core::{ContinuedFraction, Error, Slope, Word};

use output::Report;

#[derive(Parser, Debug)]
#[command(name = "sturm", version, about = "Exact repetition analysis of Sturmian words")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Slope as a continued fraction, e.g. "[0;2,(1,2)]"
    #[arg(long, global = true)]
    slope: Option<String>,

    /// Number of partial quotients available to every computation
    #[arg(long, global = true, env = "STURM_DEPTH_LIMIT", default_value_t = 64)]
    depth: usize,

    /// Which end of each factor interval is closed
    #[arg(long, global = true, value_enum, default_value_t = Boundary::Left)]
    boundary: Boundary,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Accepted for reproducible scripts; every algorithm is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factors of length n with their intervals on the circle
    Factors {
        #[arg(long)]
        n: usize,
    },
    /// Integer and fractional indices of the factors of length n, or of one word
    Index {
        #[arg(long, required_unless_present = "word", conflicts_with = "word")]
        n: Option<u64>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Run the verification sweeps
    Verify {
        #[arg(long, default_value_t = 150, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Largest denominator for the number-theoretic sweeps
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        kernel_max: u64,
        /// Restrict to the named suites (repeatable)
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Gap lengths and counts of the partition by 0, {α}, …, {nα}
    ThreeDistance {
        #[arg(long)]
        n: u64,
    },
    /// Standard word s_k, or semistandard s_{k,l} when --l is given
    StandardWord {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        l: Option<u64>,
    },
    /// Conjugacy class of the reversed word s̄_{k,l} with interval lengths
    Conjugacy {
        #[arg(long)]
        k: usize,
        /// Defaults to a_k, the standard word itself
        #[arg(long)]
        l: Option<u64>,
    },
    /// Critical exponent with the term table and an oracle lower bound
    CriticalExponent {
        /// Length of the prefix scanned for the oracle lower bound
        #[arg(long, default_value_t = 20_000)]
        prefix: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Boundary {
    Left,
    Right,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite `{s}`; expected one of {}", names.join(", "))
    })
}

/// The slope as given, normalized to a_1 ≥ 2.
pub struct Input {
    pub text: String,
    pub slope: Slope,
    /// Set when the input had a_1 = 1; words are then reported with 0 and 1
    /// exchanged relative to the normalized slope.
    pub swapped: bool,
    pub boundary_right: bool,
}

impl Input {
    fn load(common: &Common) -> Result<Self, Error> {
        let text = common
            .slope
            .clone()
            .ok_or_else(|| Error::OutOfRange("--slope is required for this command".into()))?;
        let cf: ContinuedFraction = text.parse()?;
        let (cf, swapped) = cf.normalize()?;
        Ok(Self {
            text,
            slope: Slope::with_depth_limit(cf, common.depth),
            swapped,
            boundary_right: common.boundary == Boundary::Right,
        })
    }

    /// A word over the original slope's alphabet, read on the normalized one.
    pub fn word_in(&self, w: &str) -> Result<Word, Error> {
        let w: Word = w.parse()?;
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(if self.swapped { w.swap_letters() } else { w })
    }

    pub fn word_out(&self, w: &Word) -> String {
        if self.swapped {
            w.swap_letters().to_string()
        } else {
            w.to_string()
        }
    }
}

fn run(cli: Cli) -> Result<Report, Error> {
    let common = &cli.common;
    if let Command::Verify {
        n_max,
        kernel_max,
        suites,
        inject_fault,
    } = &cli.command
    {
        let (label, slopes) = match &common.slope {
            Some(_) => {
                let input = Input::load(common)?;
                (input.text.clone(), vec![input.slope])
            }
            None => (
                "default family".to_string(),
                default_family()
                    .into_iter()
                    .map(|cf| Slope::with_depth_limit(cf, common.depth))
                    .collect(),
            ),
        };
        let mut cfg = VerifyConfig::new(slopes, *n_max);
        cfg.kernel_max = *kernel_max;
        cfg.faults.flip_gamma = *inject_fault;
        let selected = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() };
        return Ok(output::verify(&label, common.depth, &cfg, &selected));
    }

    let input = Input::load(common)?;
    match &cli.command {
        Command::Factors { n } => output::factors(&input, *n),
        Command::Index { n, word } => match (n, word) {
            (_, Some(w)) => output::index_word(&input, &input.word_in(w)?),
            (Some(n), None) => output::index_length(&input, *n),
            (None, None) => unreachable!("clap requires --n or --word"),
        },
        Command::ThreeDistance { n } => output::three_distance(&input, *n),
        Command::StandardWord { k, l } => output::standard_word(&input, *k, *l),
        Command::Conjugacy { k, l } => output::conjugacy(&input, *k, *l),
        Command::CriticalExponent { prefix } => output::critical_exponent(&input, *prefix),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.common.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Table => print!("{}", report.table),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable report")
                ),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
