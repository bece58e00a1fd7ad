//! `xcohom`: cohomology of finite groups with crossed-module coefficients.

mod commands;
mod model;
mod report;

use std::fmt::Display;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use xcohom::cohomology::Mode;
use xcohom::search::{Budget, DEFAULT_MAX_SEARCH};

use crate::report::{Inputs, RunReport};

#[derive(Parser)]
#[command(
    name = "xcohom",
    version,
    about = "Cohomology of finite groups with coefficients in crossed modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on candidate evaluations across the whole run.
    #[arg(long, global = true, env = "XCOHOM_MAX_SEARCH", default_value_t = DEFAULT_MAX_SEARCH)]
    max_search: u64,
    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Thick,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Thick => Mode::Thick,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// A builtin fixture (see `xcohom fixtures`).
    #[arg(long)]
    fixture: Option<String>,
    /// A JSON model file, or a fixture name.
    #[arg(long)]
    model: Option<String>,
}

#[derive(Args, Clone)]
struct Source {
    #[command(flatten)]
    input: Input,
    /// Builtin group used as Π in degree 2 (defaults to the model's Pi, then G).
    #[arg(long)]
    pi: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model and print its invariants.
    Validate(Source),
    /// H⁰ and the fixed points of G on Coker ∂.
    H0(Source),
    /// Degree-1 classes.
    H1(Source),
    /// Degree-2 classes of Π.
    H2 {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = ModeArg::Thick)]
        mode: ModeArg,
    },
    /// Extensions of Π over the crossed module, one per class.
    ClassifyExt {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = ModeArg::Thick)]
        mode: ModeArg,
    },
    /// Bitorsors up to isomorphism, matched with degree-1 classes.
    Bitorsors(Source),
    /// The obstruction class o(a) for a ∈ Qᴳ.
    Obstruction {
        #[command(flatten)]
        source: Source,
        /// An element of Q: its index, its label, or the label of an element of L over it.
        #[arg(long, conflicts_with = "all")]
        element: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Cocycle, extension and bouquet round-trips over every degree-2 cocycle.
    BouquetRoundtrip(Source),
    /// List the builtin fixtures.
    Fixtures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::H0(_) => "h0",
            Command::H1(_) => "h1",
            Command::H2 { .. } => "h2",
            Command::ClassifyExt { .. } => "classify-ext",
            Command::Bitorsors(_) => "bitorsors",
            Command::Obstruction { .. } => "obstruction",
            Command::BouquetRoundtrip(_) => "bouquet-roundtrip",
            Command::Fixtures => "fixtures",
        }
    }

    fn source(&self) -> Option<&Source> {
        match self {
            Command::Validate(s)
            | Command::H0(s)
            | Command::H1(s)
            | Command::Bitorsors(s)
            | Command::BouquetRoundtrip(s) => Some(s),
            Command::H2 { source, .. } | Command::ClassifyExt { source, .. } | Command::Obstruction { source, .. } => {
                Some(source)
            }
            Command::Fixtures => None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation { message: String, witness: Value },
    Budget { message: String, witness: Value },
}

impl CliError {
    /// Sorts a library error by its serialized kind.
    pub fn library<E: Serialize + Display>(e: E) -> CliError {
        let witness = serde_json::to_value(&e).unwrap_or(Value::Null);
        let message = e.to_string();
        if witness["kind"] == "budget_exceeded" {
            CliError::Budget { message, witness }
        } else {
            CliError::Validation { message, witness }
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation { .. } => 3,
            CliError::Budget { .. } => 4,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse(message) => json!({"kind": "parse_error", "message": message}),
            CliError::Validation { message, witness } => {
                json!({"kind": "validation_error", "message": message, "witness": witness})
            }
            CliError::Budget { message, witness } => {
                json!({"kind": "budget_exceeded", "message": message, "witness": witness})
            }
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) => m,
            CliError::Validation { message, .. } | CliError::Budget { message, .. } => message,
        }
    }
}

fn run(cli: &Cli, budget: &Budget) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let command = cli.command.name();
    let (inputs, outcome) = match cli.command.source() {
        None => (None, commands::fixtures()?),
        Some(source) => {
            let model = match (&source.input.fixture, &source.input.model) {
                (Some(name), _) => model::load_fixture(name)?,
                (None, Some(path)) => model::load_model(path)?,
                (None, None) => unreachable!("clap requires an input"),
            };
            let pi = match &source.pi {
                Some(name) => model::group_by_name(name)?,
                None => model.pi.clone().unwrap_or_else(|| model.exm.g().clone()),
            };
            let inputs = Inputs {
                model: model.name.clone(),
                digest: model.digest.clone(),
                pi: pi.name().to_string(),
            };
            let ctx = commands::Context {
                model: &model,
                pi: &pi,
                budget,
            };
            let outcome = match &cli.command {
                Command::Validate(_) => commands::validate(&ctx),
                Command::H0(_) => commands::h0(&ctx),
                Command::H1(_) => commands::h1(&ctx),
                Command::H2 { mode, .. } => commands::h2(&ctx, (*mode).into()),
                Command::ClassifyExt { mode, .. } => commands::classify_ext(&ctx, (*mode).into()),
                Command::Bitorsors(_) => commands::bitorsors(&ctx),
                Command::Obstruction { element, all, .. } => commands::obstruction(&ctx, element.as_deref(), *all),
                Command::BouquetRoundtrip(_) => commands::bouquet_roundtrip(&ctx),
                Command::Fixtures => unreachable!(),
            }?;
            (Some(inputs), outcome)
        }
    };
    Ok(RunReport {
        command,
        inputs,
        counts: outcome.counts,
        result: outcome.result,
        table: outcome.table,
        budget: report::BudgetReport {
            cap: budget.cap(),
            used: budget.used(),
        },
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::new(cli.max_search);
    match run(&cli, &budget) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Table => print!("{}", report.render_table()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let doc = json!({"command": cli.command.name(), "error": e.to_json()});
            println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
            eprintln!("xcohom: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
