//! The `hohf` command-line interface.
//!
//! Exit codes: 0 clean, 2 computed with warnings, 1 error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::choquet::{aggregate_row, rank_alternatives, AggregationOptions, AggregationReport};
use crate::consensus::{
    sort_techniques, ConsensusOptions, ConsensusReport, DominanceVector, Metric, VectorSource,
};
use crate::error::{Error, Result};
use crate::gvalue::Mode;
use crate::hohfe::CombinePolicy;
use crate::io::{parse_problem_str, parse_rankings, Format, ProblemSpec};
use crate::measure::{solve_rho, subset_name, FuzzyMeasure, MeasureClass, RhoSign};
use crate::warning::Warning;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_WARNINGS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hohf",
    version,
    about = "Higher-order hesitant fuzzy Choquet decision making"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Typewise,
    StrictUniform,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    L1,
    Maxmin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Subtract,
    Sugeno,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Validation mode [default: lenient, or the file's option].
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Combine policy [default: typewise, or the file's option].
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    /// Output format [default: table, or the file's option].
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a problem file and report warnings.
    Validate(ProblemArgs),
    /// Show sigma, marginal weights, aggregate and score per alternative.
    Aggregate {
        #[command(flatten)]
        args: ProblemArgs,
        /// Restrict output to one alternative label.
        #[arg(long)]
        alternative: Option<String>,
    },
    /// Aggregate and rank every alternative.
    Rank(ProblemArgs),
    /// Score techniques against the collective preference of their rankings.
    Compare {
        /// Ranking-list file (JSON).
        rankings: PathBuf,
        #[arg(long, value_enum, default_value = "l1")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Score with the dominance vectors recorded in the file where present.
        #[arg(long)]
        recorded_vectors: bool,
    },
    /// Fuzzy measure utilities.
    Measure {
        #[command(subcommand)]
        command: MeasureCommand,
    },
}

#[derive(Debug, Subcommand)]
enum MeasureCommand {
    /// Solve for the normalizing rho and print the generated measure.
    SolveRho {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
        singletons: Vec<f64>,
        #[arg(long, value_enum, default_value = "subtract")]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Lenient => Mode::Lenient,
        }
    }
}

impl From<PolicyArg> for CombinePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Typewise => CombinePolicy::Typewise,
            PolicyArg::StrictUniform => CombinePolicy::StrictUniform,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Runs the CLI, reading `HOHF_NO_WARN` from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let show_warnings = std::env::var_os("HOHF_NO_WARN").is_none();
    run_with(args, out, err, show_warnings)
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, show_warnings: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let json_errors = matches!(
        &cli.command,
        Command::Validate(ProblemArgs {
            format: Some(FormatArg::Json),
            ..
        }) | Command::Rank(ProblemArgs {
            format: Some(FormatArg::Json),
            ..
        }) | Command::Aggregate {
            args: ProblemArgs {
                format: Some(FormatArg::Json),
                ..
            },
            ..
        } | Command::Compare {
            format: FormatArg::Json,
            ..
        }
    );
    let mut ctx = Ctx { out, show_warnings };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            if json_errors {
                let body =
                    serde_json::json!({"error": {"code": e.code(), "message": e.to_string()}});
                let _ = writeln!(err, "{body}");
            } else {
                let _ = writeln!(err, "error[{}]: {e}", e.code());
            }
            EXIT_ERROR
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    show_warnings: bool,
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

macro_rules! out {
    ($ctx:expr, $($arg:tt)*) => {
        writeln!($ctx.out, $($arg)*).map_err(io_err)?
    };
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<i32> {
    match cmd {
        Command::Validate(args) => validate(&args, ctx),
        Command::Aggregate { args, alternative } => aggregate(&args, alternative.as_deref(), ctx),
        Command::Rank(args) => rank(&args, ctx),
        Command::Compare {
            rankings,
            metric,
            format,
            recorded_vectors,
        } => compare(&rankings, metric, format.into(), recorded_vectors, ctx),
        Command::Measure {
            command:
                MeasureCommand::SolveRho {
                    singletons,
                    sign,
                    format,
                },
        } => measure_solve(&singletons, sign, format.into(), ctx),
    }
}

struct Loaded {
    spec: ProblemSpec,
    opts: AggregationOptions,
    format: Format,
}

fn load(args: &ProblemArgs) -> Result<Loaded> {
    let text = std::fs::read_to_string(&args.problem)
        .map_err(|e| Error::Io(format!("{}: {e}", args.problem.display())))?;
    let spec = parse_problem_str(&text, args.mode.map(Mode::from))?;
    let opts = AggregationOptions {
        mode: spec.mode,
        policy: args
            .policy
            .map(CombinePolicy::from)
            .or(spec.options.policy)
            .unwrap_or_default(),
        ..Default::default()
    };
    let format = args
        .format
        .map(Format::from)
        .or(spec.options.format)
        .unwrap_or_default();
    Ok(Loaded { spec, opts, format })
}

fn class_name(c: MeasureClass) -> &'static str {
    match c {
        MeasureClass::Additive => "ADDITIVE",
        MeasureClass::Subadditive => "SUBADDITIVE",
        MeasureClass::Superadditive => "SUPERADDITIVE",
        MeasureClass::General => "GENERAL",
    }
}

fn all_warnings(spec: &ProblemSpec, report: &AggregationReport) -> Vec<Warning> {
    // measure warnings are already in the report
    let mut ws: Vec<Warning> = spec
        .warnings
        .iter()
        .filter(|w| !report.warnings.contains(w))
        .cloned()
        .collect();
    ws.extend(report.warnings.iter().cloned());
    ws
}

fn exit_for(warnings: &[Warning]) -> i32 {
    if warnings.is_empty() {
        EXIT_OK
    } else {
        EXIT_WARNINGS
    }
}

fn print_warnings(ctx: &mut Ctx<'_>, warnings: &[Warning]) -> Result<()> {
    if !ctx.show_warnings || warnings.is_empty() {
        return Ok(());
    }
    out!(ctx, "");
    out!(ctx, "warnings ({}):", warnings.len());
    for w in warnings {
        out!(ctx, "  {w}");
    }
    Ok(())
}

fn fmt_weights(ws: &[f64]) -> String {
    ws.iter()
        .map(|w| format!("{w:.4}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(args: &ProblemArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let Loaded { spec, opts, format } = load(args)?;
    let report = rank_alternatives(&spec.matrix, &spec.measure, &opts)?;
    let warnings = all_warnings(&spec, &report);
    let class = spec.measure.classify();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct V<'a> {
                status: &'static str,
                alternatives: usize,
                criteria: usize,
                measure_class: &'static str,
                warnings: &'a [Warning],
            }
            let v = V {
                status: if warnings.is_empty() {
                    "clean"
                } else {
                    "warnings"
                },
                alternatives: spec.matrix.alternatives().len(),
                criteria: spec.matrix.criteria().len(),
                measure_class: class_name(class),
                warnings: if ctx.show_warnings { &warnings } else { &[] },
            };
            out!(
                ctx,
                "{}",
                serde_json::to_string_pretty(&v).expect("serializable")
            );
        }
        Format::Table => {
            out!(
                ctx,
                "{} alternatives x {} criteria, measure {}, mode {}",
                spec.matrix.alternatives().len(),
                spec.matrix.criteria().len(),
                class_name(class),
                mode_name(spec.mode)
            );
            out!(
                ctx,
                "status: {}",
                if warnings.is_empty() {
                    "clean"
                } else {
                    "warnings"
                }
            );
            print_warnings(ctx, &warnings)?;
        }
    }
    Ok(exit_for(&warnings))
}

fn aggregate(args: &ProblemArgs, alternative: Option<&str>, ctx: &mut Ctx<'_>) -> Result<i32> {
    let Loaded { spec, opts, format } = load(args)?;
    let dm = &spec.matrix;
    let selected: Vec<usize> = match alternative {
        Some(label) => vec![dm
            .alternatives()
            .iter()
            .position(|a| a == label)
            .ok_or_else(|| Error::Schema(format!("unknown alternative {label}")))?],
        None => (0..dm.alternatives().len()).collect(),
    };
    let report = rank_alternatives(dm, &spec.measure, &opts)?;
    let warnings = all_warnings(&spec, &report);
    match format {
        Format::Json => {
            let view = report.view();
            let picked: Vec<_> = selected.iter().map(|&i| &view.alternatives[i]).collect();
            let body = serde_json::json!({
                "alternatives": picked,
                "warnings": if ctx.show_warnings { &warnings[..] } else { &[] },
            });
            out!(
                ctx,
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            );
        }
        Format::Table => {
            for &i in &selected {
                let row = aggregate_row(dm.row(i), &spec.measure, &opts)?;
                let sigma: Vec<&str> = row
                    .sigma
                    .iter()
                    .map(|&c| dm.criteria()[c].as_str())
                    .collect();
                out!(ctx, "alternative {}", dm.alternatives()[i]);
                out!(ctx, "  sigma:     {}", sigma.join(" > "));
                out!(ctx, "  weights:   {}", fmt_weights(&row.weights));
                out!(ctx, "  aggregate: {}", row.aggregate);
                out!(ctx, "  score:     {:.4}", row.score);
            }
            print_warnings(ctx, &warnings)?;
        }
    }
    Ok(exit_for(&warnings))
}

fn rank(args: &ProblemArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let Loaded { spec, opts, format } = load(args)?;
    let report = rank_alternatives(&spec.matrix, &spec.measure, &opts)?;
    let warnings = all_warnings(&spec, &report);
    let class = spec.measure.classify();
    match format {
        Format::Json => {
            let view = report.view();
            let body = serde_json::json!({
                "measure_class": class_name(class),
                "alternatives": view.alternatives,
                "ranking": view.ranking,
                "warnings": if ctx.show_warnings { &warnings[..] } else { &[] },
            });
            out!(
                ctx,
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            );
        }
        Format::Table => {
            out!(
                ctx,
                "measure: {} (mode {})",
                class_name(class),
                mode_name(spec.mode)
            );
            out!(
                ctx,
                "{:<12} {:<20} {:<32} {:>8}",
                "alternative",
                "sigma",
                "weights",
                "score"
            );
            for a in &report.alternatives {
                let sigma: Vec<&str> = a
                    .aggregation
                    .sigma
                    .iter()
                    .map(|&c| report.criteria[c].as_str())
                    .collect();
                out!(
                    ctx,
                    "{:<12} {:<20} {:<32} {:>8.4}",
                    a.label,
                    sigma.join(" "),
                    fmt_weights(&a.aggregation.weights),
                    a.aggregation.score
                );
                out!(ctx, "{:<12} {}", "", a.aggregation.aggregate);
            }
            let ranking: Vec<String> = report
                .ranking_labels()
                .iter()
                .map(|g| g.join(" = "))
                .collect();
            out!(ctx, "ranking: {}", ranking.join(" > "));
            print_warnings(ctx, &warnings)?;
        }
    }
    Ok(exit_for(&warnings))
}

fn fmt_vector(v: &DominanceVector) -> String {
    let parts: Vec<String> = v.0.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn compare(
    path: &PathBuf,
    metric: MetricArg,
    format: Format,
    recorded_vectors: bool,
    ctx: &mut Ctx<'_>,
) -> Result<i32> {
    let rankings = parse_rankings(path)?;
    let opts = ConsensusOptions {
        metric: match metric {
            MetricArg::L1 => Metric::L1,
            MetricArg::Maxmin => Metric::Maxmin,
        },
        vectors: if recorded_vectors {
            VectorSource::Recorded
        } else {
            VectorSource::Derived
        },
        ..Default::default()
    };
    let report = sort_techniques(&rankings, &opts)?;
    match format {
        Format::Json => out!(
            ctx,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        ),
        Format::Table => print_consensus(&report, ctx)?,
    }
    Ok(EXIT_OK)
}

fn print_consensus(r: &ConsensusReport, ctx: &mut Ctx<'_>) -> Result<()> {
    out!(ctx, "collective preference matrix:");
    let header: Vec<String> = r.alternatives.iter().map(|a| format!("{a:>5}")).collect();
    out!(ctx, "{:<6}{}", "", header.join(""));
    for (a, row) in r.alternatives.iter().zip(&r.collective_matrix) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>5}")).collect();
        out!(ctx, "{a:<6}{}", cells.join(""));
    }
    out!(ctx, "collective order: {}", r.collective_order.join(" > "));
    out!(
        ctx,
        "collective dominance vector: {}",
        fmt_vector(&r.collective_vector)
    );
    out!(ctx, "");
    out!(
        ctx,
        "{:<10} {:<28} {:<14} {:<14} {:>8} {:>5} {:>8}",
        "technique",
        "order",
        "derived",
        "recorded",
        "distance",
        "tier",
        "weight"
    );
    let mut mismatch = false;
    for t in &r.techniques {
        let recorded = match &t.recorded {
            Some(v) if t.recorded_mismatch() => {
                mismatch = true;
                format!("{}*", fmt_vector(v))
            }
            Some(v) => fmt_vector(v),
            None => "-".into(),
        };
        out!(
            ctx,
            "{:<10} {:<28} {:<14} {:<14} {:>8} {:>5} {:>8.4}",
            t.technique,
            t.order.join(" > "),
            fmt_vector(&t.derived),
            recorded,
            t.distance,
            t.tier,
            t.weight
        );
    }
    let tiers: Vec<String> = r
        .tiers
        .iter()
        .map(|t| format!("{{{}}}", t.join(", ")))
        .collect();
    out!(ctx, "");
    out!(ctx, "tiers: {}", tiers.join(" > "));
    if mismatch {
        out!(
            ctx,
            "* recorded dominance vector differs from the one derived from its order"
        );
    }
    Ok(())
}

fn measure_solve(
    singletons: &[f64],
    sign: SignArg,
    format: Format,
    ctx: &mut Ctx<'_>,
) -> Result<i32> {
    let sign = match sign {
        SignArg::Subtract => RhoSign::Subtract,
        SignArg::Sugeno => RhoSign::Sugeno,
    };
    let rho = solve_rho(singletons, sign)?;
    let m = FuzzyMeasure::rho_rule(singletons, rho, sign, Mode::Lenient)?;
    match format {
        Format::Json => {
            let table: Vec<_> = (1..=m.full())
                .map(|s| serde_json::json!({"subset": subset_name(s), "value": m.value(s)}))
                .collect();
            let body = serde_json::json!({"rho": rho, "sign": sign, "table": table});
            out!(
                ctx,
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            );
        }
        Format::Table => {
            out!(ctx, "rho = {rho}");
            for s in 1..=m.full() {
                out!(ctx, "  mu({}) = {:.6}", subset_name(s), m.value(s));
            }
        }
    }
    Ok(EXIT_OK)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Strict => "strict",
        Mode::Lenient => "lenient",
    }
}
