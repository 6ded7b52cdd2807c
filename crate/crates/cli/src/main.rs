use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use vhess::format::{parse_file, write_file};
use vhess::report::{AnalysisReport, Timing};
use vhess::verify::{self, render_table, VerifyOptions};
use vhess_core::classify::{classify_observed, ClassifyOptions};
use vhess_core::families::{describe, generate, Coefficients, Family, FamilySpec};
use vhess_core::field::{is_prime_u64, MERSENNE_31, MERSENNE_61};
use vhess_core::hessian::Sampling;
use vhess_core::perazzo::validate_canspch;
use vhess_core::polar::find_relations;
use vhess_core::{Error, MultiPoly};

const OK: u8 = 0;
const CRITERION_FAILED: u8 = 1;
const PARSE_ERROR: u8 = 2;
const GENERICITY: u8 = 3;
const USAGE: u8 = 4;

/// Analyze projective hypersurfaces with vanishing hessian.
#[derive(Parser)]
#[command(name = "vhess", version)]
struct Cli {
    #[command(flatten)]
    knobs: Knobs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Knobs {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime for modular evaluation.
    #[arg(long, global = true, default_value_t = MERSENNE_61)]
    prime: u64,
    /// Evaluation points per prime.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full invariant pipeline on a polynomial file.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Record per-stage wall-clock times (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
    /// Find the polynomial relations among the partial derivatives.
    Relations {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Write an instance of one of the example families.
    Generate {
        family: Family,
        /// Projective dimension.
        #[arg(long = "N", alias = "n")]
        n: Option<usize>,
        #[arg(long, conflicts_with_all = ["sigma", "copies"])]
        tau: Option<usize>,
        #[arg(long, conflicts_with = "copies")]
        sigma: Option<usize>,
        /// Number of juxtaposed copies.
        #[arg(long)]
        copies: Option<usize>,
        /// Explicit integer coefficients, comma separated, in monomial order.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Option<Vec<i64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the regression table of known values.
    VerifyPaper {
        #[arg(long)]
        filter: Option<String>,
        /// Include the slow cases.
        #[arg(long)]
        include_slow: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => PARSE_ERROR,
            Error::Genericity(_) | Error::Sampling { .. } => GENERICITY,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout; a closed pipe (`vhess ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn sampling(k: &Knobs) -> Result<Sampling, Failure> {
    if !is_prime_u64(k.prime) || k.prime < 5 {
        return Err(Failure::usage(format!("--prime {} is not a prime ≥ 5", k.prime)));
    }
    if k.trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    let mut primes = vec![k.prime];
    if k.prime != MERSENNE_31 {
        primes.push(MERSENNE_31);
    } else {
        primes.push(MERSENNE_61);
    }
    Ok(Sampling { seed: k.seed, trials: k.trials, primes })
}

fn read_poly(path: &PathBuf) -> Result<(MultiPoly, bool), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let file = parse_file(&text).map_err(|e| Failure {
        code: PARSE_ERROR,
        message: format!("{}: {e}", path.display()),
    })?;
    let homogeneous = file.parsed.homogeneous;
    Ok((file.parsed.poly, homogeneous))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let k = &cli.knobs;
    match cli.command {
        Command::Analyze { file, max_degree, timings } => {
            let s = sampling(k)?;
            let (f, homogeneous) = read_poly(&file)?;
            if !homogeneous {
                return Err(Failure {
                    code: PARSE_ERROR,
                    message: format!("{}: polynomial is not homogeneous", file.display()),
                });
            }
            let opts = ClassifyOptions {
                sampling: s.clone(),
                max_relation_degree: max_degree,
                ..ClassifyOptions::default()
            };
            let mut stages: Vec<(&'static str, Instant)> = Vec::new();
            let c = classify_observed(&f, &opts, &mut |stage| stages.push((stage, Instant::now())));
            let timings = timings.then(|| {
                stages
                    .windows(2)
                    .map(|w| Timing {
                        stage: w[0].0.to_string(),
                        millis: (w[1].1 - w[0].1).as_secs_f64() * 1e3,
                    })
                    .collect()
            });
            let report = AnalysisReport::build(&f, homogeneous, &s, &c, timings);
            if k.json {
                emit(&(report.to_json() + "\n"));
            } else {
                emit(&report.to_text());
            }
            Ok(if c.genericity_failure { GENERICITY } else { OK })
        }
        Command::Relations { file, max_degree } => {
            let s = sampling(k)?;
            let (f, _) = read_poly(&file)?;
            let r = find_relations(&f, max_degree, &s)?;
            if k.json {
                let v = serde_json::json!({
                    "degree": r.degree,
                    "basis": r.printed(),
                    "minimal": r.minimal,
                    "searched_up_to": r.searched_up_to,
                });
                emit(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"));
            } else if r.is_empty() {
                emit(&format!("none found (searched up to degree {})\n", r.searched_up_to));
            } else {
                emit(&(r.printed().join("\n") + "\n"));
            }
            Ok(OK)
        }
        Command::Generate { family, n, tau, sigma, copies, coeffs, out } => {
            let param = tau.or(sigma).or(copies);
            let spec = FamilySpec {
                family,
                n,
                param,
                coeffs: match coeffs {
                    Some(v) => Coefficients::Explicit(v),
                    None => Coefficients::Seeded(k.seed),
                },
            };
            let f = generate(&spec)?;
            if family == Family::CanSpch {
                validate_canspch(&f, param.unwrap_or_default())?;
            }
            let text = write_file(&f, &[describe(&spec)]);
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
                }
                None => emit(&text),
            }
            Ok(OK)
        }
        Command::VerifyPaper { filter, include_slow } => {
            let results = verify::run(&VerifyOptions { include_slow, filter, seed: k.seed });
            if k.json {
                emit(&(serde_json::to_string_pretty(&results).expect("serializable") + "\n"));
            } else {
                emit(&render_table(&results));
            }
            let ok = results.iter().all(|r| r.passed());
            Ok(if ok { OK } else { CRITERION_FAILED })
        }
    }
}
