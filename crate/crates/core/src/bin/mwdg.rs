use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mwdg::harness::{
    basis_dump, compute_stats, counts_from_rows, mwt_dump, read_history_file, read_manifest_counts, reference_solution,
    run_experiment, write_stats, ExperimentConfig, Problem,
};
use mwdg::indicators::{IndicatorConfig, IndicatorKind, IndicatorVars};
use mwdg::limiter::LimiterMode;
use mwdg::solver::StagePolicy;

#[derive(Parser)]
#[command(name = "mwdg", version, about = "DG solver with multiwavelet troubled-cell indication")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run(RunArgs),
    /// Recompute average/maximum percentages from a history file.
    Stats {
        #[arg(long)]
        history: PathBuf,
        /// Run manifest; defaults to manifest.json next to the history.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Multiwavelet basis coefficients.
    Basis {
        #[command(subcommand)]
        action: Dump,
    },
    /// One-level multiwavelet decomposition of projected initial data.
    Mwt {
        #[command(subcommand)]
        action: MwtDump,
    },
    /// Fine-mesh reference density profile.
    Reference {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Dump {
    Dump {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MwtDump {
    Dump {
        #[arg(long, default_value = "sod")]
        problem: Problem,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        ny: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    problem: Problem,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Mesh level: 2^n elements in 1D, spacing 2^-n in 2D.
    #[arg(long)]
    n: Option<u32>,
    /// x level (2D).
    #[arg(long)]
    nx: Option<u32>,
    /// y level (2D).
    #[arg(long)]
    ny: Option<u32>,
    #[arg(long, default_value = "mw")]
    indicator: IndicatorKind,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    c_alpha: Option<f64>,
    #[arg(long)]
    c_beta: Option<f64>,
    #[arg(long)]
    c_gamma: Option<f64>,
    #[arg(long, default_value_t = 1.5)]
    harten_alpha: f64,
    #[arg(long, default_value = "density")]
    vars: IndicatorVars,
    #[arg(long, default_value = "indicated")]
    limiter: LimiterMode,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    /// Number of evenly spaced snapshot times.
    #[arg(long)]
    outputs: Option<usize>,
    #[arg(long, default_value = "every-stage")]
    stage_policy: StagePolicy,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sink(path: Option<PathBuf>) -> io::Result<Box<dyn io::Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn config(a: RunArgs) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(a.problem, a.k);
    if a.problem.is_2d() {
        // the 2D domain is four times wider than tall
        if let Some(n) = a.n {
            cfg.level = n + 2;
            cfg.level_y = Some(n);
        }
        if let Some(nx) = a.nx {
            cfg.level = nx;
        }
        if let Some(ny) = a.ny {
            cfg.level_y = Some(ny);
        }
    } else if let Some(n) = a.n.or(a.nx) {
        cfg.level = n;
    }
    let mut ind = IndicatorConfig {
        kind: a.indicator,
        harten_alpha: a.harten_alpha,
        vars: a.vars,
        ..IndicatorConfig::default()
    };
    if let Some(c) = a.c {
        ind.c = c;
        ind.c_alpha = c;
        ind.c_beta = c;
        ind.c_gamma = c;
    }
    ind.c_alpha = a.c_alpha.unwrap_or(ind.c_alpha);
    ind.c_beta = a.c_beta.unwrap_or(ind.c_beta);
    ind.c_gamma = a.c_gamma.unwrap_or(ind.c_gamma);
    cfg.indicator = ind;
    cfg.limiter.mode = a.limiter;
    cfg.stage_policy = a.stage_policy;
    cfg.cfl = a.cfl.unwrap_or(cfg.cfl);
    cfg.t_final = a.t_final.unwrap_or(cfg.t_final);
    cfg.outputs = a.outputs.unwrap_or(cfg.outputs);
    cfg.max_steps = a.max_steps.unwrap_or(cfg.max_steps);
    cfg.out_dir = a.out;
    cfg
}

fn execute(cli: Cli) -> mwdg::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let cfg = config(args);
            let r = run_experiment(&cfg)?;
            println!(
                "{} k={} elements={} steps={} t={:.6} avg_pct={:.4} max_pct={:.4}",
                cfg.problem, cfg.k, r.n_elements, r.steps, r.time, r.stats.avg_pct, r.stats.max_pct
            );
        }
        Command::Stats { history, manifest } => {
            let manifest = manifest.unwrap_or_else(|| history.with_file_name("manifest.json"));
            let (steps, n_elements, value) = read_manifest_counts(&manifest)?;
            let cfg: ExperimentConfig = serde_json::from_value(value["config"].clone())?;
            let rows = read_history_file(&history)?;
            let stats = compute_stats(&counts_from_rows(&rows, steps)?, n_elements)?;
            write_stats(
                cfg.indicator.kind.label(),
                cfg.indicator.vars.label(),
                &cfg.indicator.threshold_label(cfg.is_2d()),
                &stats,
                io::stdout().lock(),
            )?;
        }
        Command::Basis { action: Dump::Dump { k, out } } => basis_dump(k, sink(out)?)?,
        Command::Mwt { action: MwtDump::Dump { problem, k, n, ny, out } } => {
            let level = n.unwrap_or(problem.default_level());
            mwt_dump(problem, k, level, ny, sink(out)?)?
        }
        Command::Reference { problem, n, k, out } => {
            reference_solution(problem, n, k, sink(out)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
