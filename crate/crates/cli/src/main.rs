//! `graphfloer` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graphfloer::alexpoly::hat_dims;
use graphfloer::homology::{compute_tilde, BigradedDims};
use graphfloer::invariance::{
    hat_of, hat_of_without_boundary, run_invariance_with, InvarianceConfig, InvarianceReport,
};
use graphfloer::moves::{parse_script, run_script};
use graphfloer::{parse_grid, trace_graph, GridDiagram, GroupRingPoly, H1Group, DEFAULT_MAX_GRID};
use serde::Serialize;

const SCRIPT_HELP: &str = "\
Move scripts hold one move per line; blank lines and text after '#' are ignored.

  cyclic rows K            shift every marker up by K rows (K may be signed, e.g. +1 or -2)
  cyclic cols K            shift every marker right by K columns
  commute rows I           exchange rows I and I+1 (mod n)
  commute cols I           exchange columns I and I+1 (mod n)
  stab row R col C above   split row R at the X in column C; that X moves to a new row above
  stab row R col C below   as above, with the new row below
  stab col C row R right   split column C at the X in row R; that X moves to a new column on the right
  stab col C row R left    as above, with the new column on the left
  destab R C               remove the unstarred O at row R, column C together with its corner X pair

Rows are numbered from 0 at the bottom, columns from 0 at the left.";

#[derive(Parser)]
#[command(
    name = "graphfloer",
    version,
    about = "Graph Floer homology from graph grid diagrams"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for homology blocks and harness trials.
    #[arg(long, env = "GRAPHFLOER_WORKERS", global = true)]
    workers: Option<usize>,
    /// Largest grid size accepted by the homology commands.
    #[arg(long, default_value_t = DEFAULT_MAX_GRID, global = true)]
    max_grid: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Flavor {
    Tilde,
    Hat,
}

#[derive(Subcommand)]
enum Command {
    /// Check the diagram rules; exits 1 if any rule fails.
    Validate { grid: PathBuf },
    /// Dump the traced spatial graph and its H1 presentation.
    Graph { grid: PathBuf },
    /// Bigraded homology dimensions.
    Homology {
        grid: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::Hat)]
        flavor: Flavor,
    },
    /// Normalized graded Euler characteristic of hat homology.
    Alexander { grid: PathBuf },
    /// Apply a move script and print the resulting grid.
    #[command(after_help = SCRIPT_HELP)]
    Move {
        grid: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Check hat homology against random move sequences; exits 1 on any
    /// failed trial.
    Invariance {
        grid: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_moves: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn read_grid(path: &Path) -> Result<GridDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_grid(&text).with_context(|| format!("parsing {}", path.display()))
}

fn guard(g: &GridDiagram, max: usize) -> Result<()> {
    if g.n() > max {
        bail!(
            "grid size {} exceeds the limit of {max} ({}! generators); pass --max-grid {} to override",
            g.n(),
            g.n(),
            g.n()
        );
    }
    Ok(())
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

#[derive(Serialize)]
struct ViolationOut {
    rule: &'static str,
    message: String,
    cells: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct ValidateOut {
    ok: bool,
    saturated: bool,
    violations: Vec<ViolationOut>,
    warnings: Vec<String>,
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let g = read_grid(path)?;
    let report = g.validate();
    let saturated = report.ok && g.is_saturated();
    let mut warnings = Vec::new();
    if report.ok && !saturated {
        warnings.push("grid is not saturated: some row or column has no X, so homology is undefined".to_string());
    }
    let out = ValidateOut {
        ok: report.ok,
        saturated,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationOut {
                rule: v.rule,
                message: v.message.clone(),
                cells: v.cells.iter().map(|&(r, c)| [r, c]).collect(),
            })
            .collect(),
        warnings: warnings.clone(),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    emit(cli.format, &out, || {
        let mut s = String::from(if out.ok { "ok\n" } else { "invalid\n" });
        for v in &out.violations {
            s += &format!("  {}: {}\n", v.rule, v.message);
        }
        s
    })?;
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[derive(Serialize)]
struct VertexOut {
    index: usize,
    row: usize,
    col: usize,
}

#[derive(Serialize)]
struct EdgeOut {
    index: usize,
    source: usize,
    target: usize,
    n_e: usize,
    interior_os: Vec<usize>,
    xs: Vec<usize>,
}

#[derive(Serialize)]
struct GraphOut {
    n: usize,
    vertices: Vec<VertexOut>,
    edges: Vec<EdgeOut>,
    relation_matrix: Vec<Vec<i64>>,
    hnf: Vec<Vec<i64>>,
    h1_rank: usize,
}

fn cmd_graph(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let g = read_grid(path)?;
    g.ensure_valid()?;
    let sg = trace_graph(&g)?;
    let q = sg.h1_group();
    let out = GraphOut {
        n: g.n(),
        vertices: (0..sg.vertex_count)
            .map(|v| {
                let (row, col) = g.o_cell(v);
                VertexOut { index: v, row, col }
            })
            .collect(),
        edges: sg
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeOut {
                index: i,
                source: e.source,
                target: e.target,
                n_e: e.n_e(),
                interior_os: e.interior_os.clone(),
                xs: e.xs.clone(),
            })
            .collect(),
        relation_matrix: sg.relation_matrix(),
        hnf: q.hnf().to_vec(),
        h1_rank: q.free_rank(),
    };
    emit(cli.format, &out, || {
        let mut s = format!("vertices: {}\n", out.vertices.len());
        for e in &out.edges {
            s += &format!("e{}: v{} -> v{}, n_e = {}\n", e.index, e.source, e.target, e.n_e);
        }
        s += &format!("H1 rank: {}\n", out.h1_rank);
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DimOut {
    alexander: Vec<i64>,
    maslov: i64,
    dim: usize,
}

#[derive(Serialize)]
struct HomologyOut {
    flavor: Flavor,
    total: usize,
    dims: Vec<DimOut>,
}

fn dims_out(dims: &BigradedDims) -> Vec<DimOut> {
    dims.iter()
        .map(|(a, m, d)| DimOut {
            alexander: a.as_slice().to_vec(),
            maslov: m,
            dim: d,
        })
        .collect()
}

fn cmd_homology(cli: &Cli, path: &Path, flavor: Flavor) -> Result<ExitCode> {
    let g = read_grid(path)?;
    guard(&g, cli.max_grid)?;
    let t = compute_tilde(&g)?;
    let dims = match flavor {
        Flavor::Tilde => t.dims,
        Flavor::Hat => hat_dims(&t.dims, &t.graph, &t.group)?,
    };
    let out = HomologyOut {
        flavor,
        total: dims.total(),
        dims: dims_out(&dims),
    };
    emit(cli.format, &out, || {
        let mut s = String::new();
        for d in &out.dims {
            s += &format!("A={:?} M={} dim={}\n", d.alexander, d.maslov, d.dim);
        }
        s += &format!("total {}\n", out.total);
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TermOut {
    h: Vec<i64>,
    coeff: i64,
}

#[derive(Serialize)]
struct AlexanderOut {
    chi: Vec<TermOut>,
    normalized: bool,
}

fn chi_out(chi: &GroupRingPoly, group: &H1Group) -> AlexanderOut {
    AlexanderOut {
        chi: chi
            .normalize(group)
            .iter()
            .map(|(h, c)| TermOut {
                h: h.as_slice().to_vec(),
                coeff: *c,
            })
            .collect(),
        normalized: true,
    }
}

fn cmd_alexander(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let g = read_grid(path)?;
    guard(&g, cli.max_grid)?;
    let r = hat_of(&g)?;
    let out = chi_out(&r.chi, &r.group);
    emit(cli.format, &out, || {
        if out.chi.is_empty() {
            return "0\n".to_string();
        }
        out.chi.iter().map(|t| format!("{:+} t^{:?}\n", t.coeff, t.h)).collect()
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct MoveOut {
    grid: String,
    x_map: Vec<usize>,
}

fn cmd_move(cli: &Cli, path: &Path, script: &Path) -> Result<ExitCode> {
    let g = read_grid(path)?;
    g.ensure_valid()?;
    let text = fs::read_to_string(script).with_context(|| format!("reading {}", script.display()))?;
    let lines = parse_script(&text)?;
    let out = run_script(&g, &lines)?;
    let rendered = out.grid.render();
    emit(
        cli.format,
        &MoveOut {
            grid: rendered.clone(),
            x_map: out.x_map,
        },
        || rendered.clone(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TrialOut {
    trial: usize,
    moves: Vec<String>,
    final_size: usize,
    shift: Option<Vec<i64>>,
    hat_equal: bool,
    chi_equal: bool,
    error: Option<String>,
    passed: bool,
}

#[derive(Serialize)]
struct InvarianceOut {
    trials: usize,
    seed: u64,
    max_moves: usize,
    passed: usize,
    baseline_total: usize,
    reports: Vec<TrialOut>,
}

fn invariance_out(report: &InvarianceReport, cfg: &InvarianceConfig) -> InvarianceOut {
    InvarianceOut {
        trials: report.trials.len(),
        seed: cfg.seed,
        max_moves: cfg.max_moves,
        passed: report.passed(),
        baseline_total: report.baseline_total,
        reports: report
            .trials
            .iter()
            .map(|t| TrialOut {
                trial: t.trial,
                moves: t.moves.iter().map(ToString::to_string).collect(),
                final_size: t.final_size,
                shift: t.shift.as_ref().map(|s| s.as_slice().to_vec()),
                hat_equal: t.hat_equal,
                chi_equal: t.chi_equal,
                error: t.error.clone(),
                passed: t.passed(),
            })
            .collect(),
    }
}

fn cmd_invariance(
    cli: &Cli,
    path: &Path,
    trials: usize,
    seed: u64,
    max_moves: usize,
    inject_fault: bool,
) -> Result<ExitCode> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let g = read_grid(path)?;
    guard(&g, cli.max_grid)?;
    let cfg = InvarianceConfig {
        trials,
        seed,
        max_moves,
        max_grid: InvarianceConfig::default().max_grid.min(cli.max_grid),
    };
    let report = if inject_fault {
        run_invariance_with(&g, &cfg, &hat_of_without_boundary)?
    } else {
        run_invariance_with(&g, &cfg, &hat_of)?
    };
    let out = invariance_out(&report, &cfg);
    for t in out.reports.iter().filter(|t| !t.passed) {
        eprintln!("trial {} failed; script:", t.trial);
        for m in &t.moves {
            eprintln!("  {m}");
        }
        if let Some(e) = &t.error {
            eprintln!("  error: {e}");
        }
    }
    emit(cli.format, &out, || {
        let mut s = String::new();
        for t in &out.reports {
            let status = if t.passed { "pass" } else { "FAIL" };
            s += &format!(
                "trial {}: {status} ({} moves, n={}) shift {:?}\n",
                t.trial,
                t.moves.len(),
                t.final_size,
                t.shift
            );
        }
        s += &format!("{}/{} trials passed\n", out.passed, out.trials);
        s
    })?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .context("configuring worker threads")?;
    }
    match &cli.command {
        Command::Validate { grid } => cmd_validate(cli, grid),
        Command::Graph { grid } => cmd_graph(cli, grid),
        Command::Homology { grid, flavor } => cmd_homology(cli, grid, *flavor),
        Command::Alexander { grid } => cmd_alexander(cli, grid),
        Command::Move { grid, script } => cmd_move(cli, grid, script),
        Command::Invariance {
            grid,
            trials,
            seed,
            max_moves,
            inject_fault,
        } => cmd_invariance(cli, grid, *trials, *seed, *max_moves, *inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
