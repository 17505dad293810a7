//! Command-line front end: parses arguments, runs the campaigns and renders
//! the report. [`run`] is the whole program minus process I/O.

pub mod campaigns;
pub mod render;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use campaigns::{Sampling, SearchCurve};
use nicecurve_core::arith::{finite_field::is_prime_u64, parse_rational};
use nicecurve_core::chabauty::DEFAULT_PRECISION;
use nicecurve_core::nice::{sample_nice_l, sample_special_u};
use nicecurve_core::report::VerificationReport;
use nicecurve_core::{Error, Rational};

/// Exit status for malformed input.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "nicecurve", version, about = "Verification campaigns for nice elliptic curves and the genus-2 quotient")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamMode {
    /// `L = (t² − 1)/(2t − 1)`.
    T,
    /// The rank-2 family `L = (u² + 3)(u² − 1)/(4u²)`.
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "Hq", alias = "hq")]
    Hq,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the `t` or `u` parametrization.
    #[command(allow_negative_numbers = true)]
    Param {
        #[arg(value_enum)]
        mode: ParamMode,
        /// Parameter values; sampled when omitted. Put negative fractions after `--`.
        #[arg(value_parser = rational)]
        values: Vec<Rational>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        height: i64,
        #[arg(long, default_value_t = nicecurve_core::nice::SAMPLE_SEED)]
        seed: u64,
        /// Emit the `t` sweep as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Torsion of `E_L` over ℚ(√d).
    #[command(allow_negative_numbers = true)]
    Torsion {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        l: Rational,
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
    /// The theorem-level sampling campaigns.
    VerifyTheorem {
        /// Overrides every campaign's sample count.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = nicecurve_core::nice::SAMPLE_SEED)]
        seed: u64,
    },
    /// Rational points of bounded height on `H` or `H_q`.
    Search {
        #[arg(value_enum)]
        curve: CurveArg,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// The Chabauty–Coleman certificate for `H_q`.
    Chabauty {
        /// A prime, or `auto` to sweep.
        #[arg(long, default_value = "auto", value_parser = prime_choice)]
        prime: PrimeChoice,
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(10..=200))]
        precision: u32,
    },
    /// The quadratic twist `E_L^D` and its 3-torsion decomposition.
    #[command(allow_negative_numbers = true)]
    Twist {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        l: Rational,
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
    /// Every campaign in one report.
    Report {
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = nicecurve_core::nice::SAMPLE_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value = "auto", value_parser = prime_choice)]
        prime: PrimeChoice,
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(10..=200))]
        precision: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeChoice {
    Auto,
    Fixed(u64),
}

impl PrimeChoice {
    fn get(self) -> Option<u64> {
        match self {
            PrimeChoice::Auto => None,
            PrimeChoice::Fixed(p) => Some(p),
        }
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn prime_choice(s: &str) -> Result<PrimeChoice, String> {
    if s == "auto" {
        return Ok(PrimeChoice::Auto);
    }
    let p: u64 = s.parse().map_err(|_| format!("`{s}` is neither a prime nor `auto`"))?;
    if p < 5 || !is_prime_u64(p) {
        return Err(format!("{p} is not a prime ≥ 5"));
    }
    Ok(PrimeChoice::Fixed(p))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome::usage(rendered)
            };
        }
    };
    let start = Instant::now();
    let mut out = match execute(&cli) {
        Ok((report, body)) => {
            let stdout = body.unwrap_or_else(|| match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => render::text(&report),
            });
            Outcome { code: report.exit_code(), stdout, stderr: String::new() }
        }
        Err(Error::Domain(m)) => Outcome::usage(format!("error: {m}\n\nFor more information, try '--help'.\n")),
        Err(e @ Error::DegenerateParameter { .. }) => Outcome::usage(format!("error: {e}\n\nFor more information, try '--help'.\n")),
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    if cli.timing {
        out.stderr.push_str(&format!("elapsed {:.3} s\n", start.elapsed().as_secs_f64()));
    }
    out
}

/// The report, and a replacement body when the output is not a report.
fn execute(cli: &Cli) -> nicecurve_core::Result<(VerificationReport, Option<String>)> {
    let sampling = |samples: Option<usize>, seed: u64| {
        let s = Sampling { seed, ..Sampling::default() };
        match samples {
            Some(k) => s.with_samples(k),
            None => s,
        }
    };
    Ok(match &cli.command {
        Command::Param { mode, values, count, height, seed, csv } => {
            if *height < 1 {
                return Err(Error::Domain("--height must be positive".into()));
            }
            match mode {
                ParamMode::T => {
                    let ts: Vec<Rational> = if values.is_empty() {
                        sample_nice_l(*count, *seed, *height).into_iter().map(|(t, _)| t).collect()
                    } else {
                        for t in values {
                            nicecurve_core::nice::param_l(t)?;
                        }
                        values.clone()
                    };
                    let (report, rows) = campaigns::param_t(&ts);
                    let body = csv.then(|| {
                        let mut s = String::from(campaigns::TRow::CSV_HEADER);
                        s.push('\n');
                        for r in &rows {
                            s.push_str(&r.csv());
                            s.push('\n');
                        }
                        s
                    });
                    (report, body)
                }
                ParamMode::U => {
                    if *csv {
                        return Err(Error::Domain("--csv applies to t sweeps".into()));
                    }
                    for u in values {
                        nicecurve_core::nice::special_l(u)?;
                    }
                    let us = if values.is_empty() { sample_special_u(*count, *seed, *height) } else { values.clone() };
                    (campaigns::param_u(&us), None)
                }
            }
        }
        Command::Torsion { l, d } => (campaigns::torsion(l, *d)?, None),
        Command::Twist { l, d } => (campaigns::twist(l, *d)?, None),
        Command::VerifyTheorem { samples, seed } => (campaigns::verify_theorem(&sampling(*samples, *seed)), None),
        Command::Search { curve, bound } => {
            if *bound < 1 {
                return Err(Error::Domain("--bound must be at least 1".into()));
            }
            let c = match curve {
                CurveArg::H => SearchCurve::H,
                CurveArg::Hq => SearchCurve::Hq,
            };
            (campaigns::search(c, *bound), None)
        }
        Command::Chabauty { prime, precision } => (campaigns::chabauty(prime.get(), *precision), None),
        Command::Report { samples, seed, bound, prime, precision } => {
            (campaigns::full_report(&sampling(*samples, *seed), *bound, prime.get(), *precision), None)
        }
    })
}
