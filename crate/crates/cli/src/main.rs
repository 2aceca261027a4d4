mod commands;
mod input;
mod report;
mod survey;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{CheckFamily, GenKind, HamiltonMode, PartitionMode};
use report::RunReport;
use survey::{SurveyArgs, SurveyFamily};

/// Hamilton cycles in duals of even plane triangulations.
///
/// Reports go to standard output as JSON lines, a summary to standard
/// error. Exit status: 0 every check passed, 1 some check failed, 2 the
/// input or arguments were unusable.
#[derive(Parser)]
#[command(name = "barnette", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated cycles.
    #[arg(long, global = true, default_value_t = barnette::structure::DEFAULT_CYCLE_CAP)]
    cap: u64,
    /// Worker threads for surveys; instances run in parallel.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Include wall-clock timing in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify membership in a graph family.
    Check {
        /// Graph JSON file, or `-` for standard input.
        path: PathBuf,
        #[arg(long, value_enum)]
        family: CheckFamily,
        /// Class relabelling such as `312`.
        #[arg(long)]
        relabel: Option<String>,
    },
    /// Colour the β vertices of a graph given with an α-colouring `"a"`.
    Color {
        path: PathBuf,
        /// `v=1` or `v=2`; `v` must be a β vertex.
        #[arg(long)]
        pin: Option<String>,
    },
    /// Split the vertices into two sets that each induce a tree.
    #[command(group(ArgGroup::new("mode").args(["edge", "face_sparse"])))]
    Partition {
        path: PathBuf,
        /// `v,w` with `v` a big class-3 vertex: both ends on `w`'s side.
        #[arg(long)]
        edge: Option<String>,
        /// Partition meeting the neighbour-side rules at class-3 vertices.
        #[arg(long)]
        face_sparse: bool,
        /// Comma-separated vertices forced into the first tree.
        #[arg(long, conflicts_with = "mode")]
        x: Option<String>,
        /// Comma-separated vertices forced into the second tree.
        #[arg(long, conflicts_with = "mode")]
        y: Option<String>,
        #[arg(long)]
        relabel: Option<String>,
    },
    /// Hamilton cycle of the dual.
    #[command(group(ArgGroup::new("mode").required(true).args(["avoid_edge", "face_sparse"])))]
    Hamilton {
        path: PathBuf,
        /// Primal edge `u,v` whose dual edge the cycle must avoid.
        #[arg(long)]
        avoid_edge: Option<String>,
        /// Cycle avoiding every second edge, or at most two edges, of each
        /// face around a big class-3 vertex.
        #[arg(long)]
        face_sparse: bool,
        #[arg(long)]
        relabel: Option<String>,
    },
    /// Run every certificate over a generated family.
    Survey {
        #[arg(long, value_enum)]
        family: SurveyFamily,
        /// Largest triangulation size.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Number of generated graphs for `multi4`.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Emit generated graphs as JSON lines.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Vertex count; for `bipyramid`, the half-length of the cycle.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

fn emit(out: &mut impl Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn finish_report(mut r: RunReport, cli: &Cli, start: Instant) -> Result<ExitCode> {
    if cli.timing {
        r.timing_ms = Some(start.elapsed().as_millis());
    }
    emit(&mut std::io::stdout().lock(), &r)?;
    if r.passed() {
        eprintln!("{}: pass ({} checks)", r.command, r.invariants.len());
        Ok(ExitCode::SUCCESS)
    } else {
        let failed: Vec<&str> = r.invariants.iter().filter(|i| !i.pass).map(|i| i.name.as_str()).collect();
        eprintln!("{}: FAIL ({})", r.command, failed.join(", "));
        Ok(ExitCode::from(1))
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let start = Instant::now();
    let report = match &cli.command {
        Command::Check { path, family, relabel } => commands::check(&input::load(path)?, *family, relabel.as_deref(), cli.cap)?,
        Command::Color { path, pin } => commands::color(&input::load(path)?, pin.as_deref())?,
        Command::Partition { path, edge, face_sparse, x, y, relabel } => {
            let mode = match (edge, face_sparse) {
                (Some(e), _) => PartitionMode::Edge(e.clone()),
                (None, true) => PartitionMode::FaceSparse,
                (None, false) => PartitionMode::Seeds { x: x.clone(), y: y.clone() },
            };
            commands::partition(&input::load(path)?, mode, relabel.as_deref())?
        }
        Command::Hamilton { path, avoid_edge, face_sparse: _, relabel } => {
            let mode = match avoid_edge {
                Some(e) => HamiltonMode::AvoidEdge(e.clone()),
                None => HamiltonMode::FaceSparse,
            };
            commands::hamilton(&input::load(path)?, mode, relabel.as_deref())?
        }
        Command::Survey { family, n_max, count, format } => return survey_cmd(cli, *family, *n_max, *count, *format, start),
        Command::Gen { kind, n } => {
            let mut out = std::io::stdout().lock();
            let graphs = commands::generate(*kind, *n, cli.seed)?;
            for g in &graphs {
                emit(&mut out, g)?;
            }
            eprintln!("gen: {} graphs", graphs.len());
            return Ok(ExitCode::SUCCESS);
        }
    };
    finish_report(report, cli, start)
}

fn survey_cmd(cli: &Cli, family: SurveyFamily, n_max: usize, count: usize, format: Format, start: Instant) -> Result<ExitCode> {
    let args = SurveyArgs { family, n_max, count, seed: cli.seed, jobs: cli.jobs };
    let records = survey::run(&args)?;
    let mut out = std::io::stdout().lock();
    // A falsified instance halts the stream, dumped in full.
    let cut = records.iter().position(|r| !r.pass).map_or(records.len(), |i| i + 1);
    let shown = &records[..cut];
    let rows = survey::aggregate(shown);
    match format {
        Format::Jsonl => {
            for r in shown {
                emit(&mut out, r)?;
            }
            let mut agg = json!({ "aggregate": rows, "instances": shown.len(), "halted": shown.last().is_some_and(|r| !r.pass) });
            if cli.timing {
                agg["timing_ms"] = json!(start.elapsed().as_millis());
            }
            emit(&mut out, &agg)?;
        }
        Format::Csv => {
            writeln!(out, "certificate,checked,passed,skipped,pass_rate")?;
            for r in &rows {
                let rate = r.pass_rate.map_or(String::new(), |x| format!("{x:.6}"));
                writeln!(out, "{},{},{},{},{rate}", r.certificate, r.checked, r.passed, r.skipped)?;
            }
        }
    }
    for r in &rows {
        let rate = r.pass_rate.map_or("n/a".to_string(), |x| format!("{:.2}%", 100.0 * x));
        eprintln!("{:<12} {:>9} checked {:>9} passed {:>7} skipped  {rate}", r.certificate, r.checked, r.passed, r.skipped);
    }
    if let Some(bad) = shown.iter().find(|r| !r.pass) {
        eprintln!("survey: falsified at instance {}", bad.index);
        return Ok(ExitCode::from(1));
    }
    eprintln!("survey: {} instances, all pass", shown.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = emit(&mut std::io::stdout().lock(), &json!({ "error": format!("{e:#}") }));
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
