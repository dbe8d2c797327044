use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use valord::dot::export_dot;
use valord::dsl::{self, DslError};
use valord::scenarios::{self, Bit};
use valord::{selftest, DEFAULT_MAX_CARRIER};

const EXIT_DOMAIN: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Order-theoretic value representations: check, evaluate and draw `.vdl`
/// scenario files, or run the built-in scenarios.
#[derive(Parser, Debug)]
#[command(name = "valord", version)]
struct Cli {
    /// Largest dimension carrier that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CARRIER)]
    max_carrier: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a scenario file and build everything it declares.
    Check { file: PathBuf },
    /// Run the queries of a scenario file.
    Eval { file: PathBuf },
    /// Print the Hasse diagram of one dimension as Graphviz DOT.
    Dot { file: PathBuf, dim: String },
    /// Print the canonical form of a scenario file.
    Fmt { file: PathBuf },
    /// Run a built-in scenario and print its transcript.
    Scenario {
        #[arg(value_parser = scenarios::NAMES)]
        name: String,
        /// Outcome the friend observes in the wigner scenario.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        outcome: u8,
    },
    /// Run the built-in invariant suites.
    Selftest,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        let code = if matches!(e, DslError::Parse(_)) { EXIT_PARSE } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string() }
    }
}

impl From<valord::Error> for Failure {
    fn from(e: valord::Error) -> Self {
        DslError::Domain(e).into()
    }
}

fn load(path: &Path) -> Result<dsl::ScenarioDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_DOMAIN, message: format!("{}: {e}", path.display()) })?;
    dsl::parse(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}:{}", path.display(), f.message);
        f
    })
}

fn run(cli: Cli) -> Result<Vec<String>, Failure> {
    let cap = cli.max_carrier;
    match cli.command {
        Command::Check { file } => {
            let doc = load(&file)?;
            dsl::build_states(&doc, cap)?;
            Ok(vec![format!(
                "ok: {} dimensions, {} states, {} queries",
                doc.dims.len(),
                doc.states.len(),
                doc.queries.len()
            )])
        }
        Command::Eval { file } => Ok(dsl::eval(&load(&file)?, cap)?),
        Command::Dot { file, dim } => {
            let lrv = dsl::build_lrv(&load(&file)?, cap)?;
            Ok(vec![export_dot(lrv.poset(&dim)?).trim_end().to_string()])
        }
        Command::Fmt { file } => Ok(vec![dsl::serialize(&load(&file)?).trim_end().to_string()]),
        Command::Scenario { name, outcome } => {
            let lines = if name == "wigner" {
                scenarios::wigner::transcript(Bit::from_u8(outcome).expect("range checked by clap"))
            } else {
                scenarios::run(&name).expect("name checked by clap")
            };
            Ok(lines?)
        }
        Command::Selftest => {
            let reports = selftest::run_all();
            for r in reports.iter().filter(|r| !r.passed()) {
                for f in &r.failures {
                    eprintln!("{}: {f}", r.name);
                }
            }
            let lines = reports
                .iter()
                .map(|r| {
                    let verdict = if r.passed() { "pass" } else { "FAIL" };
                    format!("{verdict} {} ({} cases, {} failures)", r.name, r.cases, r.failures.len())
                })
                .collect();
            if reports.iter().all(|r| r.passed()) {
                Ok(lines)
            } else {
                for l in &lines {
                    println!("{l}");
                }
                Err(Failure { code: EXIT_DOMAIN, message: "selftest failed".into() })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
