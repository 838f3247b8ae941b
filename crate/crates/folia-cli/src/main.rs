//! Command-line surface of the analyzer.
//!
//! Exit codes: 0 on success, 1 on expectation or theorem failures, 2 on
//! invalid input (parse errors, Jacobi violations, unusable metrics).

use clap::{Parser, Subcommand, ValueEnum};
use folia::analyze::{analyze, run_corpus, Analysis, AnalyzeError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "folia",
    version,
    about = "Exact-arithmetic analysis of left-invariant foliations on metric Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file: parse, antisymmetry, Jacobi identity.
    Check { file: PathBuf },
    /// Full analysis: classification, foliation flags, quotient geometry
    /// and expectation checks.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the quotient algebra in the same file format. Requires the
    /// vertical subalgebra to be an ideal and the foliation Riemannian.
    Quotient { file: PathBuf },
    /// Curvature summary of the ambient metric algebra.
    Curvature { file: PathBuf },
    /// Analyze every .alg file in a directory, compare embedded
    /// expectations and run the theorem harness.
    Corpus {
        dir: PathBuf,
        /// Number of worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

const OK: u8 = 0;
const EXPECTATION_FAILURE: u8 = 1;
const INVALID_INPUT: u8 = 2;

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Analyze { file, format } => analyze_file(&file, format),
        Command::Quotient { file } => quotient(&file),
        Command::Curvature { file } => curvature(&file),
        Command::Corpus { dir, jobs } => corpus(&dir, jobs),
    }
}

fn load(path: &Path) -> Result<Analysis, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        INVALID_INPUT
    })?;
    let file = folia::parse_algebra(&text).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        INVALID_INPUT
    })?;
    analyze(&file).map_err(|e| {
        match &e {
            AnalyzeError::InvalidAlgebra(report) => {
                eprintln!("{}: not a Lie algebra", path.display());
                eprint!("{report}");
            }
            other => eprintln!("{}: {other}", path.display()),
        }
        INVALID_INPUT
    })
}

fn check(path: &Path) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return INVALID_INPUT;
        }
    };
    let file = match folia::parse_algebra(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return INVALID_INPUT;
        }
    };
    let algebra = match file.algebra() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return INVALID_INPUT;
        }
    };
    let violations = algebra.validate_jacobi();
    if violations.is_empty() {
        println!(
            "ok: {} (dim {}, {} bracket statements)",
            file.name,
            file.dim(),
            file.brackets.len()
        );
        OK
    } else {
        let report = folia::analyze::JacobiReport {
            violations,
            labels: file.labels.clone(),
        };
        print!("{}: {report}", file.name);
        INVALID_INPUT
    }
}

fn analyze_file(path: &Path, format: Format) -> u8 {
    let analysis = match load(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    match format {
        Format::Text => print!("{}", analysis.render_text()),
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(&analysis.structured()).expect("serializable")
            );
        }
    }
    if analysis.expectations_ok() && analysis.theorem_counterexamples().is_empty() {
        OK
    } else {
        EXPECTATION_FAILURE
    }
}

fn quotient(path: &Path) -> u8 {
    let analysis = match load(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    match analysis.quotient_file() {
        Ok(qfile) => {
            print!("{}", qfile.to_text());
            OK
        }
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            INVALID_INPUT
        }
    }
}

fn curvature(path: &Path) -> u8 {
    let analysis = match load(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    print!(
        "algebra: {}\n{}",
        analysis.file.name,
        analysis.render_curvature_text()
    );
    OK
}

fn corpus(dir: &Path, jobs: usize) -> u8 {
    match run_corpus(dir, jobs) {
        Ok(result) => {
            print!("{}", result.render_text());
            if result.invalid_input {
                INVALID_INPUT
            } else if result.pass {
                OK
            } else {
                EXPECTATION_FAILURE
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            INVALID_INPUT
        }
    }
}
