use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use q1ca::format::{parse_machine, serialize_machine, LoadError};
use q1ca::model::{Machine, ModelError};
use q1ca::numfmt::sig12;
use q1ca::sim::{run, Engine, EngineOptions, SimError};
use q1ca::transform::{lift_p_to_q, simplify_rtp1ca, TransformError};
use q1ca::validate::validate;
use q1ca::zoo::{build_m1, build_m2, classify_words, enumerate_words, oracle_by_name, ORACLE_NAMES};

#[derive(Parser)]
#[command(name = "q1ca", version, about = "Define, check, compile and run one-counter automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every well-formedness condition that applies to a machine file.
    Validate { path: PathBuf },
    /// Run a machine on one input word.
    Run {
        path: PathBuf,
        input: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Transform a probabilistic machine and print the result.
    Compile {
        #[arg(value_enum)]
        pass: Pass,
        path: PathBuf,
    },
    /// Print one of the built-in machines.
    Zoo {
        #[arg(value_enum)]
        name: ZooName,
        /// Number of paths for `m2`.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Run a machine on every short word and compare with a language.
    Sweep {
        path: PathBuf,
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        max_len: usize,
        /// Comma-separated symbols to sweep over instead of the machine's input alphabet.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
        /// Print only the classification line.
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

#[derive(clap::Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value_t = EngineName::Branch)]
    engine: EngineName,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    branch_cap: Option<usize>,
}

impl EngineArgs {
    fn options(&self) -> EngineOptions {
        let defaults = EngineOptions::default();
        EngineOptions {
            engine: match self.engine {
                EngineName::Branch => Engine::Branch,
                EngineName::Density => Engine::Density,
            },
            max_steps: self.max_steps,
            branch_cap: self.branch_cap.unwrap_or(defaults.branch_cap),
            ..defaults
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineName {
    Branch,
    Density,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pass {
    Simplify,
    Lift,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZooName {
    M1,
    M2,
}

/// Exit status 1 for machines that fail their checks, 2 for bad input.
enum Failure {
    Invalid(String),
    Usage(String),
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Model(ModelError::Alphabet(_)) | SimError::Options(_) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Machine, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_machine(&text).map_err(|e| match e {
        LoadError::Parse(p) => Failure::Usage(format!("{}: {p}", path.display())),
        LoadError::Completion(c) => Failure::Invalid(format!("{}: {c}", path.display())),
    })
}

fn load_valid(path: &Path) -> Result<Machine, Failure> {
    let m = load(path)?;
    let report = validate(&m);
    if report.ok() {
        Ok(m)
    } else {
        Err(Failure::Invalid(format!("machine is not well-formed:\n{}", report.to_string().trim_end())))
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { path } => {
            let m = load(&path)?;
            let report = validate(&m);
            print!("{report}");
            if report.ok() {
                println!("OK");
                Ok(())
            } else {
                Err(Failure::Invalid(format!("{} violations", report.violations.len())))
            }
        }
        Command::Run { path, input, engine } => {
            let m = load_valid(&path)?;
            println!("{}", run(&m, &input, &engine.options())?);
            Ok(())
        }
        Command::Compile { pass, path } => {
            let m = load(&path)?;
            let out = match pass {
                Pass::Simplify => simplify_rtp1ca(&m),
                Pass::Lift => lift_p_to_q(&m),
            }
            .map_err(|e| match e {
                TransformError::NotSimple => {
                    Failure::Usage(format!("{e} (q1ca compile simplify {})", path.display()))
                }
                other => Failure::Usage(other.to_string()),
            })?;
            print!("{}", serialize_machine(&out));
            Ok(())
        }
        Command::Zoo { name, n } => {
            let m = match name {
                ZooName::M1 => build_m1(),
                ZooName::M2 => build_m2(n).map_err(|e| Failure::Usage(e.to_string()))?,
            };
            print!("{}", serialize_machine(&m));
            Ok(())
        }
        Command::Sweep { path, oracle, max_len, alphabet, summary, engine } => {
            let oracle = oracle_by_name(&oracle).ok_or_else(|| {
                Failure::Usage(format!("unknown oracle `{oracle}`; expected one of {}", ORACLE_NAMES.join(", ")))
            })?;
            let m = load_valid(&path)?;
            let symbols = alphabet.unwrap_or_else(|| m.input_alphabet().to_vec());
            let result = classify_words(&m, &oracle, enumerate_words(&symbols, max_len), &engine.options())?;
            if !summary {
                for row in &result.rows {
                    let word = if row.word.is_empty() { "ε" } else { &row.word };
                    let verdict = if row.member { "MEMBER" } else { "NONMEMBER" };
                    println!("{word}\t{verdict}\t{}", sig12(row.outcome.accept));
                }
            }
            println!("{result}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
