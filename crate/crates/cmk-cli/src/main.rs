//! `cmk` — scenario transforms, correlation measures, representation
//! equivalence reports, distance-transfer curves, and diagrams.
//!
//! Exit codes: 0 success, 1 usage error, 2 scenario validation failure,
//! 3 numerical failure.

use clap::{Args, Parser, Subcommand};
use cmk_core::measures::s_measure;
use cmk_core::scenario::{
    emit_diagram, emit_fig3_curves, plan_flags, run_equivalence, transform_summary, Scenario,
    ScenarioError,
};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cmk",
    version,
    about = "Correlation-measure kit: check that measures evaluated over the \
             time-free event representation match their standard spacetime values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform scenario events between the two representations
    Transform(ScenarioArgs),
    /// Evaluate the requested measures directly
    Measure(MeasureListArgs),
    /// Pair each measure's QG-side and S-side values in a full report
    Equivalence(EquivalenceArgs),
    /// Plan the coordinator's flag beams
    Flags(ScenarioArgs),
    /// Emit distance-transfer curves (dx = eta * dx') as CSV
    Fig3(Fig3Args),
    /// Render the scenario as an SVG diagram
    Diagram(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (JSON)
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario's strength parameter
    #[arg(long)]
    beta: Option<f64>,
    /// Write the output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureListArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Comma-separated measures overriding the scenario's list
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<String>>,
}

#[derive(Args)]
struct EquivalenceArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Equality tolerance for report entries
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    /// Comma-separated measures overriding the scenario's list
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<String>>,
}

#[derive(Args)]
struct Fig3Args {
    /// Comma-separated strength values
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,0.9")]
    betas: Vec<f64>,
    /// Lower end of the dx' range
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    /// Upper end of the dx' range
    #[arg(long, default_value_t = 10.0)]
    max: f64,
    /// Number of evenly spaced sample rows
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        let code = match &e {
            ScenarioError::Syntax(_)
            | ScenarioError::Invalid { .. }
            | ScenarioError::NotQgSpace(_) => EXIT_VALIDATION,
            ScenarioError::TooFewSamples(_) | ScenarioError::BadRange(_, _) => EXIT_USAGE,
            _ => EXIT_NUMERICAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let result = match &cli.command {
        Command::Transform(args) => run_transform(args),
        Command::Measure(args) => run_measure(args),
        Command::Equivalence(args) => run_equivalence_cmd(args),
        Command::Flags(args) => run_flags(args),
        Command::Fig3(args) => run_fig3(args),
        Command::Diagram(args) => run_diagram(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_scenario(args: &ScenarioArgs) -> Result<Scenario, Failure> {
    let bytes = std::fs::read(&args.scenario)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.scenario.display())))?;
    let mut scenario = Scenario::parse(&bytes)?;
    if let Some(beta) = args.beta {
        scenario = scenario.with_beta(beta)?;
    }
    Ok(scenario)
}

fn write_output(bytes: &[u8], out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn run_transform(args: &ScenarioArgs) -> Result<(), Failure> {
    let scenario = load_scenario(args)?;
    let summary = transform_summary(&scenario)?;
    let mut text = summary.to_json();
    text.push('\n');
    write_output(text.as_bytes(), args.out.as_deref())
}

fn run_measure(args: &MeasureListArgs) -> Result<(), Failure> {
    let mut scenario = load_scenario(&args.scenario)?;
    if let Some(names) = &args.measures {
        scenario = scenario.with_measures(names)?;
    }
    let probability = scenario.probability();
    let ctx = scenario.quantum_context();

    let mut entries = Vec::new();
    for &id in &scenario.measures {
        if !id.is_computable() {
            entries.push(json!({
                "id": id.name(),
                "skipped": format!("{id} is declared-only: no computational procedure is registered"),
            }));
            continue;
        }
        let value = s_measure(&probability, id, &ctx).map_err(ScenarioError::from)?;
        entries.push(json!({ "id": id.name(), "value": value }));
    }
    let mut text = serde_json::to_string_pretty(&json!({ "measures": entries }))
        .expect("measure list serializes");
    text.push('\n');
    write_output(text.as_bytes(), args.scenario.out.as_deref())
}

fn run_equivalence_cmd(args: &EquivalenceArgs) -> Result<(), Failure> {
    let mut scenario = load_scenario(&args.scenario)?;
    if let Some(names) = &args.measures {
        scenario = scenario.with_measures(names)?;
    }
    let report = run_equivalence(&scenario, args.tolerance)?;
    let mut text = report.to_json();
    text.push('\n');
    write_output(text.as_bytes(), args.scenario.out.as_deref())
}

fn run_flags(args: &ScenarioArgs) -> Result<(), Failure> {
    let scenario = load_scenario(args)?;
    let plan = plan_flags(&scenario)?;
    let mut text = serde_json::to_string_pretty(&plan).expect("flag plan serializes");
    text.push('\n');
    write_output(text.as_bytes(), args.out.as_deref())
}

fn run_fig3(args: &Fig3Args) -> Result<(), Failure> {
    let csv = emit_fig3_curves(&args.betas, (args.min, args.max), args.samples)
        .map_err(|e| Failure::usage(e.to_string()))?;
    write_output(&csv, args.out.as_deref())
}

fn run_diagram(args: &ScenarioArgs) -> Result<(), Failure> {
    let scenario = load_scenario(args)?;
    let svg = emit_diagram(&scenario)?;
    write_output(&svg, args.out.as_deref())
}
