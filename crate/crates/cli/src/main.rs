//! `gbpa`: train triangular fuzzy class models, generate open-world mass
//! functions from attribute readings, combine evidence, classify samples,
//! and run the classification experiments.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use gbpa_core::{
    classify_sample, combine_all, generate_gbpa, permutation_spread, CombinationRule, Frame,
    MassFunction, ModelTable, WorldMode,
};
use gbpa_harness::{
    corrected_accuracy, load_dataset, run_cross_validation, run_open_world, run_robustness, Schema,
    SplitPlan,
};

#[derive(Parser)]
#[command(
    name = "gbpa",
    version,
    about = "Generalized evidence-theory classification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit triangular fuzzy models from labeled data.
    Train(TrainArgs),
    /// Generate the open-world mass function of one attribute reading.
    Gbpa(GbpaArgs),
    /// Combine mass-function JSON files with a rule.
    Combine(CombineArgs),
    /// Classify one sample through the full pipeline.
    Classify(ClassifyArgs),
    /// Dataset-level experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Args)]
struct TrainArgs {
    /// Input data file.
    #[arg(long)]
    data: PathBuf,
    /// Input format: iris, haberman or generic-csv.
    #[arg(long, default_value = "generic-csv")]
    schema: String,
    /// Comma-separated class labels to model (the frame). Rows of other
    /// classes are ignored, which is how open-world training sets are built.
    #[arg(long)]
    classes: String,
    /// Where to write the model JSON; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the model as a CSV table.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct GbpaArgs {
    /// Model JSON produced by `train`.
    #[arg(long)]
    model: PathBuf,
    /// Attribute name from the model.
    #[arg(long)]
    attribute: String,
    /// Single reading: print the mass function as JSON.
    #[arg(long, conflicts_with = "sweep")]
    value: Option<f64>,
    /// Sweep `lo:hi:step`: print a CSV of masses per abscissa.
    #[arg(long)]
    sweep: Option<String>,
}

#[derive(Args)]
struct CombineArgs {
    /// Combination rule: dempster, gcr or mgcr.
    #[arg(long)]
    rule: String,
    /// Mass-function JSON files, folded left in the given order.
    #[arg(long = "in", num_args = 1.., required = true)]
    inputs: Vec<PathBuf>,
    /// Where to write the fused mass JSON; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report the maximum entry-wise spread across all fold orders
    /// (diagnoses order sensitivity; up to four inputs).
    #[arg(long)]
    check_order: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    model: PathBuf,
    /// Combination rule: dempster, gcr or mgcr.
    #[arg(long)]
    rule: String,
    /// World assumption: open or closed.
    #[arg(long)]
    world: String,
    /// Comma-separated attribute values in model order.
    #[arg(long)]
    sample: String,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Hold classes out of the frame and test unknown-class detection.
    OpenWorld(OpenWorldArgs),
    /// Accuracy across training fractions (leave-out method).
    Robustness(RobustnessArgs),
    /// Repeated stratified k-fold cross-validation.
    Cv(CvArgs),
    /// Average a leave-out accuracy with a cross-validation accuracy.
    Correct(CorrectArgs),
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    data: PathBuf,
    /// Input format: iris, haberman or generic-csv.
    #[arg(long, default_value = "generic-csv")]
    schema: String,
}

#[derive(Args)]
struct OpenWorldArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated frame labels; the dataset's other classes are the
    /// unknowns.
    #[arg(long)]
    frame: String,
    #[arg(long, default_value = "mgcr")]
    rule: String,
    /// Seed for the split generator (env GBPA_SEED overrides).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.8)]
    train_fraction: f64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long, default_value = "table")]
    out_format: String,
}

#[derive(Args)]
struct RobustnessArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Training fractions: `lo:hi`, `lo:hi:step`, or a comma list.
    #[arg(long)]
    fractions: String,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Seed for the split generator (env GBPA_SEED overrides).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "dempster")]
    rule: String,
    #[arg(long, default_value = "closed")]
    world: String,
    #[arg(long, default_value = "table")]
    out_format: String,
}

#[derive(Args)]
struct CvArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Seed for the split generator (env GBPA_SEED overrides).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "dempster")]
    rule: String,
    #[arg(long, default_value = "table")]
    out_format: String,
}

#[derive(Args)]
struct CorrectArgs {
    /// Leave-out accuracy in [0, 1].
    #[arg(long)]
    leave_out: f64,
    /// Cross-validation accuracy in [0, 1].
    #[arg(long)]
    cross_validation: f64,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Train(args) => train(args),
        Command::Gbpa(args) => gbpa(args),
        Command::Combine(args) => combine(args),
        Command::Classify(args) => classify(args),
        Command::Experiment(cmd) => experiment(cmd),
    }
}

fn train(args: TrainArgs) -> Result<()> {
    let ds = load_dataset(&args.data, parse_schema(&args.schema)?)?;
    let classes: Vec<String> = split_list(&args.classes);
    let frame = Frame::new(classes.iter().cloned(), WorldMode::Open)?;
    let rows: Vec<(&str, &[f64])> = ds
        .rows
        .iter()
        .filter(|row| classes.contains(&row.label))
        .map(|row| (row.label.as_str(), row.values.as_slice()))
        .collect();
    let models = ModelTable::<f64>::fit(frame, ds.attributes.clone(), &rows)?;
    if args.csv {
        print!("{}", models.to_csv());
    }
    emit(args.out.as_deref(), &models.to_json())
}

fn gbpa(args: GbpaArgs) -> Result<()> {
    let models = load_models(&args.model)?;
    match (args.value, args.sweep) {
        (Some(value), None) => {
            let mass = generate_gbpa(&models, &args.attribute, value)?;
            println!("{}", mass.to_json());
            Ok(())
        }
        (None, Some(sweep)) => {
            let (lo, hi, step) = parse_range(&sweep, None)?;
            print!("{}", sweep_csv(&models, &args.attribute, lo, hi, step)?);
            Ok(())
        }
        _ => bail!("pass exactly one of --value or --sweep"),
    }
}

/// One row per abscissa, one column per subset of the frame.
fn sweep_csv(
    models: &ModelTable<f64>,
    attribute: &str,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<String> {
    let frame = generate_gbpa(models, attribute, lo)?.frame().clone();
    let mut out = String::from("x");
    for set in frame.subsets() {
        out.push_str(&format!(",\"{}\"", frame.set_key(set)));
    }
    out.push('\n');
    let mut x = lo;
    while x <= hi + 1e-12 {
        let mass = generate_gbpa(models, attribute, x)?;
        out.push_str(&format!("{x}"));
        for set in frame.subsets() {
            out.push_str(&format!(",{:.6}", mass.mass(set)));
        }
        out.push('\n');
        x += step;
    }
    Ok(out)
}

fn combine(args: CombineArgs) -> Result<()> {
    let rule = parse_rule(&args.rule)?;
    let masses = args
        .inputs
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(MassFunction::<f64>::from_json(&text)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if args.check_order {
        let spread = permutation_spread(rule, &masses)?;
        eprintln!("max entry-wise spread across fold orders: {spread:.3e}");
    }
    let fused = combine_all(rule, &masses)?;
    emit(args.out.as_deref(), &fused.to_json())
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let models = load_models(&args.model)?;
    let sample: Vec<f64> = args
        .sample
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .context("sample values must be numbers")
        })
        .collect::<Result<_>>()?;
    let decision = classify_sample(
        &models,
        &sample,
        parse_rule(&args.rule)?,
        parse_world(&args.world)?,
    )?;
    println!("{}", serde_json::to_string_pretty(&decision.to_document())?);
    Ok(())
}

fn experiment(cmd: ExperimentCommand) -> Result<()> {
    match cmd {
        ExperimentCommand::OpenWorld(args) => {
            let ds = load_dataset(&args.data.data, parse_schema(&args.data.schema)?)?;
            let plan =
                SplitPlan::leave_out(args.train_fraction, seed_override(args.seed), args.repeats)?;
            let report = run_open_world(
                &ds,
                &split_list(&args.frame),
                &plan,
                parse_rule(&args.rule)?,
            )?;
            print_report(
                &args.out_format,
                &report.to_csv(),
                &report.to_json(),
                &report.to_table(),
            )
        }
        ExperimentCommand::Robustness(args) => {
            let ds = load_dataset(&args.data.data, parse_schema(&args.data.schema)?)?;
            let fractions = parse_fractions(&args.fractions)?;
            let report = run_robustness(
                &ds,
                &fractions,
                args.repeats,
                seed_override(args.seed),
                parse_rule(&args.rule)?,
                parse_world(&args.world)?,
            )?;
            print_report(
                &args.out_format,
                &report.to_csv(),
                &report.to_json(),
                &report.to_table(),
            )
        }
        ExperimentCommand::Cv(args) => {
            let ds = load_dataset(&args.data.data, parse_schema(&args.data.schema)?)?;
            let report = run_cross_validation(
                &ds,
                args.k,
                args.repeats,
                seed_override(args.seed),
                parse_rule(&args.rule)?,
            )?;
            print_report(
                &args.out_format,
                &report.to_csv(),
                &report.to_json(),
                &report.to_table(),
            )
        }
        ExperimentCommand::Correct(args) => {
            let corrected = corrected_accuracy(args.leave_out, args.cross_validation)?;
            println!("{corrected:.6}");
            Ok(())
        }
    }
}

/// GBPA_SEED overrides whatever the flag said.
fn seed_override(flag: u64) -> u64 {
    match std::env::var("GBPA_SEED") {
        Ok(value) => value.parse().unwrap_or(flag),
        Err(_) => flag,
    }
}

fn load_models(path: &Path) -> Result<ModelTable<f64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ModelTable::from_json(&text)?)
}

fn parse_schema(s: &str) -> Result<Schema> {
    Ok(Schema::from_str(s)?)
}

fn parse_rule(s: &str) -> Result<CombinationRule> {
    Ok(CombinationRule::from_str(s)?)
}

fn parse_world(s: &str) -> Result<WorldMode> {
    match s {
        "open" => Ok(WorldMode::Open),
        "closed" => Ok(WorldMode::Closed),
        other => bail!("unknown world {other:?} (expected open or closed)"),
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|part| part.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

/// `lo:hi:step` with an optional default step, or a plain comma list.
fn parse_range(s: &str, default_step: Option<f64>) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .with_context(|| format!("bad number {v:?}"))
    };
    match parts.as_slice() {
        [lo, hi] => {
            let step = default_step.context("range needs an explicit step: lo:hi:step")?;
            Ok((parse(lo)?, parse(hi)?, step))
        }
        [lo, hi, step] => {
            let step = parse(step)?;
            if step <= 0.0 {
                bail!("step must be positive");
            }
            Ok((parse(lo)?, parse(hi)?, step))
        }
        _ => bail!("expected lo:hi[:step], got {s:?}"),
    }
}

fn parse_fractions(s: &str) -> Result<Vec<f64>> {
    if s.contains(':') {
        let (lo, hi, step) = parse_range(s, Some(0.02))?;
        let mut out = Vec::new();
        let mut f = lo;
        while f <= hi + 1e-12 {
            out.push((f * 1e9).round() / 1e9);
            f += step;
        }
        Ok(out)
    } else {
        s.split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad fraction {v:?}"))
            })
            .collect()
    }
}

fn print_report(format: &str, csv: &str, json: &str, table: &str) -> Result<()> {
    match format {
        "csv" => print!("{csv}"),
        "json" => println!("{json}"),
        "table" => print!("{table}"),
        other => bail!("unknown output format {other:?} (expected csv, json or table)"),
    }
    Ok(())
}

fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        None => println!("{content}"),
    }
    Ok(())
}
