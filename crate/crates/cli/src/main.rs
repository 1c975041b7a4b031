//! `vogan`: analyses of unramified parameters from JSON documents.
//!
//! Exit status is 0 on success, 1 for unreadable or invalid input and 2 when
//! an internal cross-check fails or the corpus reports violations.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vogan_core::corpus::{check_all, CorpusSpec};
use vogan_core::report::{parse_corpus_spec, parse_spec_with_modulus, render, Command};
use vogan_core::Error;

#[derive(Parser, Debug)]
#[command(name = "vogan", version, about = "Orbits, duals and L-function checks for unramified parameters")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Unit modulus for documents that do not name one.
    #[arg(long, global = true, default_value_t = vogan_core::params::DEFAULT_UNIT_MODULUS)]
    unit_modulus: u32,
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full report on one Langlands or Arthur parameter.
    Analyze {
        /// Parameter document, or `-` for standard input.
        file: PathBuf,
    },
    /// Orbit table of an infinitesimal parameter (or that of a parameter).
    Survey { file: PathBuf },
    /// The dual orbit of a parameter's orbit.
    Dual { file: PathBuf },
    /// Consistency checks over a corpus of parameters.
    CorpusCheck {
        /// Corpus description; the built-in default otherwise.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let cmd = match &cli.command {
        Cmd::Analyze { file } => (Command::Analyze, file),
        Cmd::Survey { file } => (Command::Survey, file),
        Cmd::Dual { file } => (Command::Dual, file),
        Cmd::CorpusCheck { spec } => {
            let spec = match spec {
                Some(p) => parse_corpus_spec(&read_input(p)?)?,
                None => CorpusSpec {
                    seed: cli.seed,
                    ..CorpusSpec::default()
                },
            };
            let report = check_all(&spec)?;
            let out = if cli.json { report.to_json() } else { report.to_text() };
            if !report.is_clean() {
                print!("{out}");
                return Err(Failure::Internal(format!("{} violations", report.violations.len())));
            }
            return Ok(out);
        }
    };
    let doc = parse_spec_with_modulus(&read_input(cmd.1)?, cli.unit_modulus)?;
    Ok(render(&doc, cmd.0, cli.seed, cli.json)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal check failed: {m}");
            ExitCode::from(2)
        }
    }
}
