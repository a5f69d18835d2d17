//! `ncfr` command-line front end.
//!
//! Exit codes: `0` success / positive, `1` a mathematical negative (not
//! positive, factorization failed, verification mismatch), `2` bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::demo;
use crate::error::Error;
use crate::factorize::{factorize_with, FactorOptions};
use crate::generate::{self, InstanceMode};
use crate::laurent::{HermitianLaurentSymbol, LaurentPoly};
use crate::spectral::{self, SpectralOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ncfr", version, about = "Hermitian squares in the Toeplitz algebra of the unilateral shift")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Root,
    Bauer,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Psd,
    Indefinite,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide positivity of an element and emit a certificate.
    Factor {
        input: PathBuf,
        #[arg(long, env = "NCFR_TOL", default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        truncation: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scalar spectral factorization of a hermitian Laurent symbol.
    Classical {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Root)]
        method: Method,
        #[arg(long, env = "NCFR_TOL", default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check `x = y*y` by exact multiplication in the algebra.
    Verify {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, env = "NCFR_TOL", default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a named worked example.
    Demo {
        name: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 40)]
        truncation: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit a seeded random instance.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        cut: usize,
        #[arg(long, value_enum, default_value_t = Mode::Psd)]
        mode: Mode,
        #[arg(long, default_value_t = 200)]
        truncation: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_NEGATIVE
        }
    }
}

enum Failure {
    Input(String),
    Negative(String),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Input(format!("--tol: must be a nonnegative number, got {tol}")))
    }
}

#[derive(Serialize)]
struct ClassicalOutput<'a> {
    method: &'a str,
    coeffs: &'a [crate::C64],
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Factor {
            input,
            tol,
            truncation,
            output,
        } => {
            check_tol(tol)?;
            let x: AlgebraElement = read_json(&input)?;
            let opts = FactorOptions {
                truncation,
                ..FactorOptions::with_tol(tol)
            };
            let cert = factorize_with(&x, &opts).map_err(|e| match e {
                Error::NotHermitian(_) | Error::InvalidInput(_) => Failure::Input(e.to_string()),
                other => Failure::Negative(other.to_string()),
            })?;
            emit(&to_json(&cert), output.as_deref(), out)?;
            Ok(if cert.is_positive() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Classical {
            input,
            method,
            tol,
            output,
        } => {
            check_tol(tol)?;
            let p: LaurentPoly = read_json(&input)?;
            let sym = HermitianLaurentSymbol::from_laurent(&p, tol * p.l1_norm().max(f64::MIN_POSITIVE))
                .map_err(|e| Failure::Input(format!("symbol: {e}")))?;
            let (name, q) = match method {
                Method::Root => {
                    let opts = SpectralOptions {
                        tol,
                        ..SpectralOptions::default()
                    };
                    ("root", spectral::fejer_riesz_roots_with(&sym, &opts).map(|f| f.q))
                }
                Method::Bauer => (
                    "bauer",
                    spectral::bauer_factor(&sym, &spectral::DEFAULT_BAUER_SCHEDULE, tol.max(1e-12)),
                ),
            };
            let q = q.map_err(|e| Failure::Negative(e.to_string()))?;
            let text = to_json(&ClassicalOutput {
                method: name,
                coeffs: q.coeffs(),
            });
            emit(&text, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { x, y, tol } => {
            check_tol(tol)?;
            let x: AlgebraElement = read_json(&x)?;
            let y: AlgebraElement = read_json(&y)?;
            let square = y
                .adjoint()
                .multiply(&y)
                .map_err(|e| Failure::Negative(e.to_string()))?;
            let deviation = square.max_deviation(&x);
            let limit = tol * x.magnitude();
            if deviation <= limit {
                let _ = writeln!(out, "ok: max deviation {deviation:.17e} <= {limit:.17e}");
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(err, "mismatch: max entry deviation {deviation:.17e} > {limit:.17e}");
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Demo {
            name,
            json,
            truncation,
            output,
        } => {
            if name != "section3" {
                return Err(Failure::Input(format!(
                    "unknown demo {name:?}; available: {}",
                    demo::NAMES.join(", ")
                )));
            }
            if truncation < 8 {
                return Err(Failure::Input("--truncation: must be at least 8".into()));
            }
            let report = demo::section3(truncation).map_err(|e| Failure::Negative(e.to_string()))?;
            let text = if json {
                to_json(&report)
            } else {
                demo::render_section3(&report)
            };
            emit(&text, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Random {
            seed,
            cut,
            mode,
            truncation,
            output,
        } => {
            if cut > 64 {
                let _ = writeln!(err, "warning: cut {cut} is far beyond desk scale");
            }
            let mode = match mode {
                Mode::Psd => InstanceMode::Psd,
                Mode::Indefinite => InstanceMode::Indefinite,
            };
            let x = generate::random_instance(&mut generate::rng(seed), cut, mode, truncation);
            emit(&to_json(&x), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}
