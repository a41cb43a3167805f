use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nk_core::algebra::FinitelyPresentedAlgebra;
use nk_core::error::Error;
use nk_core::field::Q;
use nk_core::nk_engine::{bass_report, tk_table, tk_table_curve, BassReport, NKTable};
use nk_core::semigroup::NumericalSemigroup;
use nk_core::verify::{
    builtin, builtin_names, run_suite, Suite, SuiteOptions, SuiteReport, Target,
};

mod render;

/// NK-groups of Artinian and numerical-semigroup Q-algebras.
#[derive(Parser, Debug)]
#[command(name = "nk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of TK_n^(i), rows n, columns i.
    Compute {
        #[command(flatten)]
        ring: RingArgs,
        /// Range of n, as `a..b` or a single integer.
        #[arg(long = "n", default_value = "-1..3", allow_hyphen_values = true)]
        n: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite: derham, cartier, hodge, kunneth, sbi, cech, twopath.
    Verify {
        suite: String,
        #[command(flatten)]
        ring: RingArgs,
        /// Homological degree bound.
        #[arg(long = "N", default_value_t = 3)]
        big_n: usize,
        /// Degree bound for the cech suite.
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Verdicts on NK_n, NK_{n-1} and N²K_n.
    Report {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "n", allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Inline ring (`ring Q[x,y]/(y^2 - x^3) weights x=2 y=3`) or a file containing one.
    ring: Option<String>,
    /// A builtin ring: dual-numbers, cusp, cross, etale2, fat-point-3.
    #[arg(long, conflicts_with_all = ["ring", "semigroup"])]
    builtin: Option<String>,
    /// Generators of a numerical semigroup, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "ring")]
    semigroup: Option<Vec<u64>>,
    /// Weight truncation for rings of positive dimension; the Cartier model's N.
    #[arg(long)]
    weight: Option<u32>,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Weight bound used for curves when `--weight` is absent.
const DEFAULT_CURVE_WEIGHT: u32 = 12;

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

enum RingInput {
    Presented {
        label: String,
        ring: FinitelyPresentedAlgebra<Q>,
    },
    Semigroup(NumericalSemigroup),
}

impl RingArgs {
    fn input(&self) -> Result<Option<RingInput>, Failure> {
        if let Some(gens) = &self.semigroup {
            return Ok(Some(RingInput::Semigroup(NumericalSemigroup::new(gens)?)));
        }
        let (label, src) = if let Some(name) = &self.builtin {
            let src = builtin(name).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown builtin '{name}'; available: {}",
                    builtin_names().join(", ")
                ))
            })?;
            (name.clone(), src.to_string())
        } else if let Some(r) = &self.ring {
            if !r.trim_start().starts_with("ring") && Path::new(r).is_file() {
                let text =
                    std::fs::read_to_string(r).map_err(|e| Failure::Usage(format!("{r}: {e}")))?;
                (r.clone(), text.trim().to_string())
            } else {
                (r.trim().to_string(), r.clone())
            }
        } else {
            return Ok(None);
        };
        let ring = FinitelyPresentedAlgebra::parse(&src).map_err(|e| match e {
            Error::Parse { pos, msg } => Failure::Usage(format!(
                "parse error at position {pos}: {msg}\n  {src}\n  {}^",
                " ".repeat(pos)
            )),
            e => e.into(),
        })?;
        Ok(Some(RingInput::Presented { label, ring }))
    }

    fn require(&self) -> Result<RingInput, Failure> {
        self.input()?.ok_or_else(|| {
            Failure::Usage("no ring given: pass a ring, a file, --builtin or --semigroup".into())
        })
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("invalid range '{s}': expected a..b or an integer"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(Failure::Usage(format!("empty range '{s}'")));
    }
    Ok((a, b))
}

fn table_for(input: &RingInput, lo: i64, hi: i64, weight: Option<u32>) -> Result<NKTable, Failure> {
    let weight = weight.unwrap_or(DEFAULT_CURVE_WEIGHT);
    Ok(match input {
        RingInput::Semigroup(s) => tk_table_curve(s, None, lo, hi, weight)?,
        RingInput::Presented { ring, .. } => tk_table(ring, lo, hi, Some(weight))?,
    })
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    verdicts: &'a BassReport,
    table: &'a NKTable,
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    #[serde(flatten)]
    report: &'a SuiteReport,
    passed: bool,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { ring, n, out } => {
            let (lo, hi) = parse_range(&n)?;
            let table = table_for(&ring.require()?, lo, hi, ring.weight)?;
            match out.format {
                Format::Text => print!("{}", render::table(&table)),
                Format::Json => println!("{}", json(&table)),
            }
        }
        Command::Report { ring, n, out } => {
            let input = ring.require()?;
            let table = table_for(&input, (n - 1).min(-1), n, ring.weight)?;
            let verdicts = bass_report(&table, n)?;
            match out.format {
                Format::Text => {
                    print!("{}", verdicts.render());
                    println!();
                    print!("{}", render::table(&table));
                }
                Format::Json => println!(
                    "{}",
                    json(&ReportDoc {
                        verdicts: &verdicts,
                        table: &table
                    })
                ),
            }
        }
        Command::Verify {
            suite,
            ring,
            big_n,
            degree,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let target = match ring.input()? {
                None => Target::Default,
                Some(RingInput::Presented { label, ring }) => Target::ring(label, ring),
                Some(RingInput::Semigroup(s)) => {
                    let label = format!(
                        "semigroup ⟨{}⟩",
                        s.generators()
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    Target::ring(label, s.presentation()?)
                }
            };
            let weight = match (&target, suite) {
                (Target::Ring { ring: r, .. }, s)
                    if s != Suite::Cartier && !r.is_zero_dimensional() =>
                {
                    Some(ring.weight.unwrap_or(DEFAULT_CURVE_WEIGHT))
                }
                _ => ring.weight,
            };
            let opts = SuiteOptions {
                n: big_n,
                weight,
                degree,
                ..Default::default()
            };
            let report = run_suite(suite, &target, &opts)?;
            match out.format {
                Format::Text => print!("{}", report.render()),
                Format::Json => println!(
                    "{}",
                    json(&SuiteDoc {
                        report: &report,
                        passed: report.passed()
                    })
                ),
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert!(matches!(parse_range("-1..3"), Ok((-1, 3))));
        assert!(matches!(parse_range("2"), Ok((2, 2))));
        assert!(matches!(parse_range("0..=2"), Ok((0, 2))));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let cli =
            Cli::try_parse_from(["nk", "compute", "--builtin", "cusp", "--n", "-2..1"]).unwrap();
        assert!(matches!(cli.command, Command::Compute { ref n, .. } if n == "-2..1"));
        assert!(Cli::try_parse_from(["nk", "compute", "ring Q[x]", "--builtin", "cusp"]).is_err());
    }
}
