use std::fs;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use super::config::ExperimentConfig;
use super::history::{compute_stats, rows_1d, rows_2d, write_history, write_stats, HistoryRow, Stats};
use super::snapshot::{write_snapshot_1d, write_snapshot_2d};
use crate::basis::scaled_legendre;
use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::indicators::{Indicator1D, Indicator2D, TroubledSet1D, TroubledSet2D};
use crate::limiter::{limit_1d, limit_2d, positivity_fallback_1d, positivity_fallback_2d, LimiterMode};
use crate::mesh::{Mesh1D, Mesh2D};
use crate::physics::ConservationLaw;
use crate::solver::{clip_dt, compute_dt, project_1d, project_2d, ssp_rk3_step, Dg1D, Dg2D, StageInfo};

/// Final solution of a run.
#[derive(Debug, Clone)]
pub enum Solution {
    OneD(DgField1D),
    TwoD(DgField2D),
}

/// Everything a run produces in memory; files are written alongside when
/// the configuration names an output directory.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub steps: usize,
    pub time: f64,
    pub n_elements: usize,
    /// Flagged elements per step, from the final stage.
    pub counts: Vec<usize>,
    pub history: Vec<HistoryRow>,
    /// Elements changed by the limiter in the final stage of each step.
    pub limited: Vec<HistoryRow>,
    pub stats: Stats,
    /// Smallest nodal density and pressure seen at the end of any step.
    pub min_density: f64,
    pub min_pressure: f64,
    pub solution: Solution,
    /// Flag set of the last step.
    pub last_flags: Vec<bool>,
    pub snapshots: Vec<String>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'static str,
    status: &'a str,
    error: Option<String>,
    config: &'a ExperimentConfig,
    steps: usize,
    time: f64,
    n_elements: usize,
    nx: usize,
    ny: usize,
    domain: ((f64, f64), (f64, f64)),
    boundary: Vec<&'static str>,
    stats: Option<Stats>,
    snapshots: &'a [String],
}

struct Progress {
    steps: usize,
    time: f64,
    counts: Vec<usize>,
    history: Vec<HistoryRow>,
    limited: Vec<HistoryRow>,
    min_density: f64,
    min_pressure: f64,
    snapshots: Vec<String>,
}

impl Progress {
    fn new() -> Self {
        Self {
            steps: 0,
            time: 0.0,
            counts: Vec::new(),
            history: Vec::new(),
            limited: Vec::new(),
            min_density: f64::INFINITY,
            min_pressure: f64::INFINITY,
            snapshots: Vec::new(),
        }
    }
}

fn output_times(cfg: &ExperimentConfig) -> Vec<f64> {
    let n = cfg.outputs.max(1);
    (1..=n).map(|i| if i == n { cfg.t_final } else { cfg.t_final * i as f64 / n as f64 }).collect()
}

fn step_error(step: usize, time: f64, err: Error) -> Error {
    match err {
        Error::ElementState { element, reason, .. } => Error::Solver { step, time, element, reason },
        other => other,
    }
}

/// Minimum density and pressure over the Gauss nodes and endpoints.
fn nodal_minimum(law: &dyn ConservationLaw, values: impl Iterator<Item = Vec<f64>>) -> Option<(f64, f64)> {
    let mut out: Option<(f64, f64)> = None;
    for s in values {
        let q = law.positivity_quantities(&s)?;
        let cur = out.get_or_insert((f64::INFINITY, f64::INFINITY));
        cur.0 = cur.0.min(q[0]);
        cur.1 = cur.1.min(q[1]);
    }
    out
}

fn check_nodes(dg_nodes: &[f64]) -> Vec<f64> {
    let mut v = vec![-1.0];
    v.extend_from_slice(dg_nodes);
    v.push(1.0);
    v
}

fn states_1d<'a>(u: &'a DgField1D, nodes: &'a [f64]) -> impl Iterator<Item = Vec<f64>> + 'a {
    let np = u.nmodes();
    let nc = u.ncomp();
    (0..u.len()).flat_map(move |j| {
        nodes.iter().map(move |&x| {
            let phi: Vec<f64> = (0..np).map(|l| scaled_legendre(l, x)).collect();
            (0..nc).map(|c| u.modes(c, j).iter().zip(&phi).map(|(a, b)| a * b).sum()).collect()
        })
    })
}

fn states_2d<'a>(u: &'a DgField2D, nodes: &'a [f64]) -> impl Iterator<Item = Vec<f64>> + 'a {
    let nx = u.nx();
    let nc = u.ncomp();
    (0..u.len()).flat_map(move |idx| {
        let (i, j) = (idx % nx, idx / nx);
        nodes.iter().flat_map(move |&x| {
            nodes.iter().map(move |&y| (0..nc).map(|c| u.eval_ref(c, i, j, x, y)).collect())
        })
    })
}

/// Runs one experiment to its final time.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunResult> {
    cfg.validate()?;
    if let Some(dir) = &cfg.out_dir {
        fs::create_dir_all(dir)?;
    }
    if cfg.is_2d() {
        run_2d(cfg)
    } else {
        run_1d(cfg)
    }
}

fn finish(
    cfg: &ExperimentConfig,
    p: Progress,
    outcome: Result<(Solution, Vec<bool>)>,
    nxy: (usize, usize),
    domain: ((f64, f64), (f64, f64)),
    boundary: Vec<&'static str>,
) -> Result<RunResult> {
    let n_elements = nxy.0 * nxy.1;
    let stats = compute_stats(&p.counts, n_elements).ok();
    if let Some(dir) = &cfg.out_dir {
        let two_d = cfg.is_2d();
        write_history(&p.history, two_d, BufWriter::new(fs::File::create(dir.join("history.csv"))?))?;
        if cfg.limiter.mode == LimiterMode::Everywhere {
            write_history(&p.limited, two_d, BufWriter::new(fs::File::create(dir.join("limited_history.csv"))?))?;
        }
        if let Some(s) = &stats {
            write_stats(
                cfg.indicator.kind.label(),
                cfg.indicator.vars.label(),
                &cfg.indicator.threshold_label(two_d),
                s,
                fs::File::create(dir.join("stats.csv"))?,
            )?;
        }
        let manifest = Manifest {
            version: env!("CARGO_PKG_VERSION"),
            status: if outcome.is_ok() { "completed" } else { "failed" },
            error: outcome.as_ref().err().map(|e| e.to_string()),
            config: cfg,
            steps: p.steps,
            time: p.time,
            n_elements,
            nx: nxy.0,
            ny: nxy.1,
            domain,
            boundary,
            stats,
            snapshots: &p.snapshots,
        };
        serde_json::to_writer_pretty(fs::File::create(dir.join("manifest.json"))?, &manifest)?;
    }
    let (solution, last_flags) = outcome?;
    Ok(RunResult {
        config: cfg.clone(),
        steps: p.steps,
        time: p.time,
        n_elements,
        stats: stats.ok_or_else(|| Error::invalid("run took no steps"))?,
        counts: p.counts,
        history: p.history,
        limited: p.limited,
        min_density: p.min_density,
        min_pressure: p.min_pressure,
        solution,
        last_flags,
        snapshots: p.snapshots,
    })
}

fn snapshot_name(t: f64) -> String {
    format!("snap_t{t:.6}.csv")
}

fn run_1d(cfg: &ExperimentConfig) -> Result<RunResult> {
    let setup = cfg.problem.setup_1d()?;
    let mesh = Mesh1D::new(cfg.level, setup.domain.0, setup.domain.1)?;
    let law = setup.law.clone();
    let boundary = vec![setup.boundary.left.label(), setup.boundary.right.label()];
    let dg = Dg1D::new(law.clone(), setup.boundary, cfg.k);
    let indicator = Indicator1D::new(cfg.indicator, cfg.k)?;
    let init = setup.initial.clone();
    let mut u = project_1d(mesh, cfg.k, law.ncomp(), |x, o| init(x, o));
    let mut p = Progress::new();
    let nodes = check_nodes(&dg.ops.quad.nodes);
    let stabilize = |v: &mut DgField1D, t: f64| -> Result<(TroubledSet1D, Vec<usize>)> {
        let set = indicator.indicate(v, &dg, t)?;
        let changed = match cfg.limiter.mode {
            LimiterMode::Off => Vec::new(),
            LimiterMode::Indicated => limit_1d(v, &dg, t, Some(&set.flags), cfg.limiter.characteristic)?,
            LimiterMode::Everywhere => limit_1d(v, &dg, t, None, cfg.limiter.characteristic)?,
        };
        if cfg.limiter.mode != LimiterMode::Off && cfg.limiter.positivity {
            positivity_fallback_1d(v, &dg, t, cfg.limiter.characteristic)?;
        }
        Ok((set, changed))
    };

    let outcome = (|| -> Result<(Solution, Vec<bool>)> {
        stabilize(&mut u, 0.0).map_err(|e| step_error(0, 0.0, e))?;
        if let Some(dir) = &cfg.out_dir {
            let name = snapshot_name(0.0);
            write_snapshot_1d(&u, law.as_ref(), BufWriter::new(fs::File::create(dir.join(&name))?))?;
            p.snapshots.push(name);
        }
        let mut last_flags = vec![false; mesh.len()];
        for stop in output_times(cfg) {
            while p.time < stop {
                if p.steps >= cfg.max_steps {
                    return Err(Error::invalid(format!("step limit {} reached at t = {}", cfg.max_steps, p.time)));
                }
                let step = p.steps + 1;
                let t = p.time;
                let speed = dg.max_speed(&u).map_err(|e| step_error(step, t, e))?;
                let dt = clip_dt(compute_dt(cfg.cfl, mesh.dx(), speed, cfg.t_final)?, t, stop);
                let mut final_set: Option<TroubledSet1D> = None;
                let mut final_limited = Vec::new();
                ssp_rk3_step(
                    &mut u,
                    t,
                    dt,
                    |v, tt, o| dg.rhs(v, tt, o),
                    cfg.stage_policy,
                    |v, info: StageInfo| {
                        let (set, changed) = stabilize(v, info.time)?;
                        if info.last {
                            final_set = Some(set);
                            final_limited = changed;
                        }
                        Ok(())
                    },
                )
                .map_err(|e| step_error(step, t, e))?;
                p.steps = step;
                p.time = if stop - (t + dt) <= 0.0 { stop } else { t + dt };
                let set = final_set.expect("hook runs on the last stage");
                p.counts.push(set.count());
                p.history.extend(rows_1d(step, p.time, &set));
                if cfg.limiter.mode == LimiterMode::Everywhere {
                    p.limited.extend(final_limited.iter().map(|&i| HistoryRow {
                        step,
                        time: p.time,
                        element_i: i,
                        element_j: None,
                        mode: None,
                    }));
                }
                if let Some((rho, pr)) = nodal_minimum(law.as_ref(), states_1d(&u, &nodes)) {
                    p.min_density = p.min_density.min(rho);
                    p.min_pressure = p.min_pressure.min(pr);
                    if !(rho > 0.0 && pr > 0.0) {
                        return Err(Error::Solver {
                            step,
                            time: p.time,
                            element: "-".into(),
                            reason: format!("nonpositive nodal density {rho} or pressure {pr}"),
                        });
                    }
                }
                last_flags = set.flags;
            }
            if let Some(dir) = &cfg.out_dir {
                let name = snapshot_name(stop);
                write_snapshot_1d(&u, law.as_ref(), BufWriter::new(fs::File::create(dir.join(&name))?))?;
                p.snapshots.push(name);
            }
        }
        Ok((Solution::OneD(u.clone()), last_flags))
    })();
    let (a, b) = mesh.bounds();
    finish(cfg, p, outcome, (mesh.len(), 1), ((a, b), (0.0, 0.0)), boundary)
}

fn run_2d(cfg: &ExperimentConfig) -> Result<RunResult> {
    let setup = cfg.problem.setup_2d()?;
    let ly = cfg.level_y.expect("validated");
    let mesh = Mesh2D::new(cfg.level, ly, setup.domain.0, setup.domain.1)?;
    let law = setup.law.clone();
    let b = &setup.boundary;
    let boundary = vec![b.left.label(), b.right.label(), b.bottom.label(), b.top.label()];
    let dg = Dg2D::new(law.clone(), setup.boundary, cfg.k);
    let indicator = Indicator2D::new(cfg.indicator, cfg.k)?;
    let init = setup.initial.clone();
    let mut u = project_2d(mesh, cfg.k, law.ncomp(), |x, y, o| init(x, y, o));
    let mut p = Progress::new();
    let nodes = check_nodes(&dg.ops.quad.nodes);
    let h = mesh.x.dx().min(mesh.y.dx());
    let stabilize = |v: &mut DgField2D, t: f64| -> Result<(TroubledSet2D, Vec<usize>)> {
        let set = indicator.indicate(v, &dg, t)?;
        let changed = match cfg.limiter.mode {
            LimiterMode::Off => Vec::new(),
            LimiterMode::Indicated => limit_2d(v, &dg, t, Some(&set.combined), cfg.limiter.characteristic)?,
            LimiterMode::Everywhere => limit_2d(v, &dg, t, None, cfg.limiter.characteristic)?,
        };
        if cfg.limiter.mode != LimiterMode::Off && cfg.limiter.positivity {
            positivity_fallback_2d(v, &dg, t, cfg.limiter.characteristic)?;
        }
        Ok((set, changed))
    };

    let outcome = (|| -> Result<(Solution, Vec<bool>)> {
        stabilize(&mut u, 0.0).map_err(|e| step_error(0, 0.0, e))?;
        if let Some(dir) = &cfg.out_dir {
            let name = snapshot_name(0.0);
            write_snapshot_2d(&u, law.as_ref(), BufWriter::new(fs::File::create(dir.join(&name))?))?;
            p.snapshots.push(name);
        }
        let mut last_flags = vec![false; mesh.len()];
        for stop in output_times(cfg) {
            while p.time < stop {
                if p.steps >= cfg.max_steps {
                    return Err(Error::invalid(format!("step limit {} reached at t = {}", cfg.max_steps, p.time)));
                }
                let step = p.steps + 1;
                let t = p.time;
                let speed = dg.max_speed(&u).map_err(|e| step_error(step, t, e))?;
                let dt = clip_dt(compute_dt(cfg.cfl, h, speed, cfg.t_final)?, t, stop);
                let mut final_set: Option<TroubledSet2D> = None;
                let mut final_limited = Vec::new();
                ssp_rk3_step(
                    &mut u,
                    t,
                    dt,
                    |v, tt, o| dg.rhs(v, tt, o),
                    cfg.stage_policy,
                    |v, info: StageInfo| {
                        let (set, changed) = stabilize(v, info.time)?;
                        if info.last {
                            final_set = Some(set);
                            final_limited = changed;
                        }
                        Ok(())
                    },
                )
                .map_err(|e| step_error(step, t, e))?;
                p.steps = step;
                p.time = if stop - (t + dt) <= 0.0 { stop } else { t + dt };
                let set = final_set.expect("hook runs on the last stage");
                p.counts.push(set.count());
                p.history.extend(rows_2d(step, p.time, &set));
                if cfg.limiter.mode == LimiterMode::Everywhere {
                    let nx = mesh.nx();
                    p.limited.extend(final_limited.iter().map(|&idx| HistoryRow {
                        step,
                        time: p.time,
                        element_i: idx % nx,
                        element_j: Some(idx / nx),
                        mode: Some(super::history::RowMode::Comb),
                    }));
                }
                if let Some((rho, pr)) = nodal_minimum(law.as_ref(), states_2d(&u, &nodes)) {
                    p.min_density = p.min_density.min(rho);
                    p.min_pressure = p.min_pressure.min(pr);
                    if !(rho > 0.0 && pr > 0.0) {
                        return Err(Error::Solver {
                            step,
                            time: p.time,
                            element: "-".into(),
                            reason: format!("nonpositive nodal density {rho} or pressure {pr}"),
                        });
                    }
                }
                last_flags = set.combined;
            }
            if let Some(dir) = &cfg.out_dir {
                let name = snapshot_name(stop);
                write_snapshot_2d(&u, law.as_ref(), BufWriter::new(fs::File::create(dir.join(&name))?))?;
                p.snapshots.push(name);
            }
        }
        Ok((Solution::TwoD(u.clone()), last_flags))
    })();
    finish(cfg, p, outcome, (mesh.nx(), mesh.ny()), (mesh.x.bounds(), mesh.y.bounds()), boundary)
}

/// Reads `steps` and `n_elements` from a run manifest.
pub fn read_manifest_counts(path: &Path) -> Result<(usize, usize, serde_json::Value)> {
    let v: serde_json::Value = serde_json::from_reader(fs::File::open(path)?)?;
    let get = |k: &str| {
        v.get(k)
            .and_then(|x| x.as_u64())
            .map(|x| x as usize)
            .ok_or_else(|| Error::invalid(format!("manifest lacks '{k}'")))
    };
    Ok((get("steps")?, get("n_elements")?, v))
}
