//! `cpn` command-line front end.
//!
//! Everything runs through [`run`], which takes the argument list and two
//! writers and returns the process exit status, so tests can drive the tool
//! in-process.
//!
//! Exit statuses:
//!
//! | status | meaning |
//! |---|---|
//! | 0 | success |
//! | 1 | parse, validation or build failure; usage error; cycles found by `cycles` |
//! | 2 | I/O failure |
//! | 3 | `--require-dag` given but cycles remain |
//! | 4 | cycle enumeration cap exceeded |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpn_core::builder::{
    build_cpn, detect_cycles_with_cap, enforce_dag, BuildDiagnostics, BuildPolicy, CoreqPolicy,
    Cpn, DanglingMode, NodeId, DEFAULT_CYCLE_CAP,
};
use cpn_core::catalog::validate_catalog;
use cpn_core::error::GraphError;
use cpn_core::export::{export_dot, export_graphml, ExportOptions, Report, ReportInput};
use cpn_core::metrics::{analyze, spearman, Analysis, PermutationConfig, Spearman};
use cpn_core::parser::{parse_catalog_structured, parse_catalog_text, ParsedCatalog};
use cpn_core::roles::{classify_roles, top_table_with_ties, RoleThresholds, TableKey};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NOT_DAG: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cpn",
    version,
    about = "Curriculum prerequisite network analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a catalogue and report consistency findings.
    Validate(InputArgs),
    /// Build the network, compute metrics and roles, write report and exports.
    Analyze(AnalyzeArgs),
    /// List every elementary cycle of the network.
    Cycles(CyclesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Text,
    Structured,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoreqArg {
    Directed,
    Bidirectional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DanglingArg {
    Stub,
    Drop,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Graphml,
    Dot,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Catalogue file.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Corequisite handling (default: directed; bidirectional for `cycles`).
    #[arg(long, value_enum)]
    coreq: Option<CoreqArg>,
    #[arg(long, value_enum, default_value_t = DanglingArg::Stub)]
    dangling: DanglingArg,
    /// Title substring marking a lab course; repeatable (default: lab, laboratory).
    #[arg(long = "lab-marker", value_name = "TEXT")]
    lab_markers: Vec<String>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    build: BuildArgs,
    /// Skip removal of lab-to-lecture corequisite arcs.
    #[arg(long)]
    no_enforce: bool,
    /// Fail with status 3 when cycles remain.
    #[arg(long)]
    require_dag: bool,
    /// Export format; pair each with an `--out`.
    #[arg(long, value_enum)]
    export: Vec<ExportFormat>,
    /// Export destination, matched with `--export` in order.
    #[arg(long)]
    out: Vec<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Rows per league table (ties at the cutoff are kept) and top-N for roles.
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Seed for the permutation test.
    #[arg(long, default_value_t = PermutationConfig::default().seed)]
    seed: u64,
    /// Permutations for the correlation p-value.
    #[arg(long, default_value_t = PermutationConfig::default().iterations)]
    permutations: usize,
}

#[derive(Debug, Args)]
struct CyclesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    build: BuildArgs,
    /// Stop with status 4 after this many cycles.
    #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
    max_cycles: usize,
}

/// A failed run: exit status plus the message for the error stream.
#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn new(status: i32, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the tool with `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_FAILURE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return status;
        }
    };
    let outcome = match &cli.command {
        Command::Validate(args) => cmd_validate(args, stdout, stderr),
        Command::Analyze(args) => cmd_analyze(args, stdout, stderr),
        Command::Cycles(args) => cmd_cycles(args, stdout, stderr),
    };
    match outcome {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(stderr, "cpn: {}", failure.message);
            failure.status
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
}

fn out_error(e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("writing output: {e}"))
}

fn load(args: &InputArgs) -> Result<ParsedCatalog, Failure> {
    let bytes = fs::read(&args.input).map_err(|e| io_error(&args.input, e))?;
    let text = |bytes: &[u8]| -> Result<ParsedCatalog, Failure> {
        let text = std::str::from_utf8(bytes).map_err(|e| {
            Failure::new(
                EXIT_FAILURE,
                format!("{}: not UTF-8: {e}", args.input.display()),
            )
        })?;
        parse_catalog_text(text)
            .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", args.input.display())))
    };
    match args.format {
        InputFormat::Text => text(&bytes),
        InputFormat::Structured => parse_catalog_structured(&bytes)
            .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", args.input.display()))),
        InputFormat::Auto => match parse_catalog_structured(&bytes) {
            Ok(parsed) => Ok(parsed),
            Err(_) => text(&bytes),
        },
    }
}

fn policy(args: &BuildArgs, default_coreq: CoreqPolicy) -> BuildPolicy {
    let mut policy = BuildPolicy {
        coreq_mode: match args.coreq {
            None => default_coreq,
            Some(CoreqArg::Directed) => CoreqPolicy::Directed,
            Some(CoreqArg::Bidirectional) => CoreqPolicy::Bidirectional,
        },
        dangling_mode: match args.dangling {
            DanglingArg::Stub => DanglingMode::CreateStub,
            DanglingArg::Drop => DanglingMode::Drop,
            DanglingArg::Error => DanglingMode::Error,
        },
        ..BuildPolicy::default()
    };
    if !args.lab_markers.is_empty() {
        policy.lab_title_markers = args.lab_markers.clone();
    }
    policy
}

/// Parses the input and builds the network; parse warnings go to `stderr`.
fn load_and_build(
    input: &InputArgs,
    build: &BuildArgs,
    default_coreq: CoreqPolicy,
    stderr: &mut dyn Write,
) -> Result<(Cpn, BuildDiagnostics, BuildPolicy), Failure> {
    let parsed = load(input)?;
    for d in &parsed.diagnostics {
        writeln!(stderr, "{}: {d}", input.input.display()).map_err(out_error)?;
    }
    if parsed.has_errors() {
        return Err(Failure::new(EXIT_FAILURE, "catalogue has parse errors"));
    }
    let policy = policy(build, default_coreq);
    let (cpn, diagnostics) = build_cpn(&parsed.catalog, &policy)
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    Ok((cpn, diagnostics, policy))
}

fn cycle_text(cpn: &Cpn, cycle: &[NodeId]) -> String {
    cycle
        .iter()
        .map(|&v| cpn.label(v))
        .collect::<Vec<_>>()
        .join(" -> ")
}

fn cmd_validate(args: &InputArgs, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> Outcome {
    let parsed = load(args)?;
    let report = validate_catalog(&parsed.catalog);
    for d in &parsed.diagnostics {
        writeln!(stdout, "{d}").map_err(out_error)?;
    }
    for finding in &report.findings {
        writeln!(stdout, "{finding}").map_err(out_error)?;
    }
    let errors = parsed.has_errors() || report.has_errors();
    writeln!(
        stdout,
        "{} records, {} findings: {}",
        parsed.catalog.len(),
        parsed.diagnostics.len() + report.findings.len(),
        if errors { "invalid" } else { "ok" }
    )
    .map_err(out_error)?;
    Ok(if errors { EXIT_FAILURE } else { EXIT_OK })
}

/// Spearman correlation of weighted degree against betweenness over the
/// largest component; `None` when it is undefined there.
fn degree_betweenness_correlation(
    analysis: &Analysis,
    config: PermutationConfig,
) -> Option<Spearman> {
    let nodes = analysis.components.largest()?;
    let (wk, b): (Vec<f64>, Vec<f64>) = nodes
        .iter()
        .map(|id| {
            let m = &analysis.metrics[id];
            (m.wk, m.betweenness.unwrap_or(0.0))
        })
        .unzip();
    spearman(&wk, &b, config).ok()
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    if args.export.len() != args.out.len() {
        return Err(Failure::new(
            EXIT_FAILURE,
            format!(
                "{} --export value(s) but {} --out path(s); give them in pairs",
                args.export.len(),
                args.out.len()
            ),
        ));
    }
    let (built, mut diagnostics, policy) =
        load_and_build(&args.input, &args.build, CoreqPolicy::Directed, stderr)?;

    let cpn = if args.no_enforce {
        match detect_cycles_with_cap(&built, DEFAULT_CYCLE_CAP) {
            Ok(cycles) => diagnostics.unresolved_cycles = cycles,
            Err(_) => diagnostics.cycle_limit_hit = true,
        }
        built
    } else {
        let (repaired, enforced) = enforce_dag(&built, &policy);
        diagnostics.removed_arcs = enforced.removed_arcs;
        diagnostics.unresolved_cycles = enforced.unresolved_cycles;
        diagnostics.cycle_limit_hit = enforced.cycle_limit_hit;
        repaired
    };

    if args.require_dag
        && (!diagnostics.unresolved_cycles.is_empty() || diagnostics.cycle_limit_hit)
    {
        let mut message = format!(
            "network is not a DAG: {} unresolved cycle(s){}",
            diagnostics.unresolved_cycles.len(),
            if diagnostics.cycle_limit_hit {
                " (enumeration capped)"
            } else {
                ""
            }
        );
        for cycle in &diagnostics.unresolved_cycles {
            message.push_str("\n  ");
            message.push_str(&cycle_text(&cpn, cycle));
        }
        return Err(Failure::new(EXIT_NOT_DAG, message));
    }

    let analysis = analyze(&cpn);
    let thresholds = RoleThresholds {
        hub_top_n: args.top,
        bridge_top_n: args.top,
    };
    let roles = classify_roles(&cpn, &analysis.metrics, thresholds)
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    let top_out = top_table_with_ties(
        &cpn,
        &analysis.metrics,
        TableKey::WeightedOutDegree,
        args.top,
    );
    let top_between = top_table_with_ties(&cpn, &analysis.metrics, TableKey::Betweenness, args.top);
    let correlation = degree_betweenness_correlation(
        &analysis,
        PermutationConfig {
            iterations: args.permutations,
            seed: args.seed,
        },
    );

    let report = Report::new(&ReportInput {
        cpn: &cpn,
        summary: &analysis.summary,
        components: &analysis.components,
        top_out_degree: &top_out,
        top_betweenness: &top_between,
        diagnostics: &diagnostics,
        correlation: correlation.as_ref(),
    });

    let options = ExportOptions {
        include_roles: true,
        ..ExportOptions::default()
    };
    for (format, path) in args.export.iter().zip(&args.out) {
        let text = match format {
            ExportFormat::Graphml => {
                export_graphml(&cpn, Some(&analysis.metrics), Some(&roles), &options)
            }
            ExportFormat::Dot => export_dot(&cpn, Some(&analysis.metrics), Some(&roles), &options),
        }
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
        write_file(path, &text)?;
    }
    if let Some(path) = &args.report {
        write_file(path, &report.to_json())?;
    }
    stdout
        .write_all(report.to_text().as_bytes())
        .map_err(out_error)?;
    Ok(EXIT_OK)
}

fn cmd_cycles(args: &CyclesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let (cpn, _, _) = load_and_build(&args.input, &args.build, CoreqPolicy::Bidirectional, stderr)?;
    let cycles = detect_cycles_with_cap(&cpn, args.max_cycles).map_err(|e| match e {
        GraphError::CycleLimitExceeded { cap } => {
            Failure::new(EXIT_CAP, format!("more than {cap} elementary cycles"))
        }
        other => Failure::new(EXIT_FAILURE, other.to_string()),
    })?;
    writeln!(stdout, "{} cycles", cycles.len()).map_err(out_error)?;
    for cycle in &cycles {
        writeln!(stdout, "{}", cycle_text(&cpn, cycle)).map_err(out_error)?;
    }
    Ok(if cycles.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
