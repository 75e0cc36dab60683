//! Experiment layer: problem catalogue, run configuration, the time loop with
//! indication and limiting, and CSV/JSON outputs.

mod config;
mod history;
mod problems;
mod run;
mod snapshot;

use std::io::Write;

pub use config::{default_cfl, ExperimentConfig};
pub use history::{
    compute_stats, counts_from_rows, read_history, read_history_file, rows_1d, rows_2d, write_history, write_stats,
    HistoryRow, RowMode, Stats,
};
pub use problems::{double_mach_left, double_mach_shock_x, Initial1D, Initial2D, Problem, Setup1D, Setup2D, DOUBLE_MACH_RIGHT};
pub use run::{read_manifest_counts, run_experiment, RunResult, Solution};
pub use snapshot::{read_snapshot, write_snapshot_1d, write_snapshot_2d, SnapshotRow};

use crate::basis::{GaussLegendre, MultiwaveletBasis};
use crate::error::{Error, Result};
use crate::indicators::IndicatorConfig;

/// Fine-mesh run with the multiwavelet indicator at `C = 0.1`, writing
/// `x,component,value` density rows at the final time.
pub fn reference_solution<W: Write>(problem: Problem, level: u32, k: usize, out: W) -> Result<RunResult> {
    if problem.is_2d() {
        return Err(Error::invalid(format!("no reference run for {problem}")));
    }
    let mut cfg = ExperimentConfig::new(problem, k)
        .with_level(level)
        .with_indicator(IndicatorConfig::multiwavelet(0.1));
    cfg.outputs = 1;
    let result = run_experiment(&cfg)?;
    let Solution::OneD(u) = &result.solution else {
        unreachable!("one-dimensional problem")
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "component", "value"])?;
    let quad = GaussLegendre::new(k + 1);
    for j in 0..u.len() {
        for &xi in &quad.nodes {
            let x = u.mesh.to_physical(j, xi);
            w.write_record([format!("{x:.12e}"), "rho".into(), format!("{:.12e}", u.eval_ref(0, j, xi))])?;
        }
    }
    w.flush()?;
    Ok(result)
}

/// Writes the piecewise Legendre coefficients of the degree-`k` multiwavelets.
pub fn basis_dump<W: Write>(k: usize, out: W) -> Result<()> {
    let mw = MultiwaveletBasis::new(k)?;
    crate::basis::write_multiwavelet_csv(&mw, out)
}

/// Projects the initial data of `problem` at `level` (x level in 2D) and
/// writes one level of its multiwavelet decomposition.
pub fn mwt_dump<W: Write>(problem: Problem, k: usize, level: u32, level_y: Option<u32>, out: W) -> Result<()> {
    use crate::basis::QmfFilters;
    use crate::mesh::{Mesh1D, Mesh2D};
    use crate::solver::{project_1d, project_2d};
    use crate::transform::{decompose_one_level_1d, decompose_one_level_2d, dg_to_scaling_1d, write_mwt_csv_1d, write_mwt_csv_2d};

    let filters = QmfFilters::new(&MultiwaveletBasis::new(k)?)?;
    if problem.is_2d() {
        let setup = problem.setup_2d()?;
        let ly = level_y.unwrap_or(problem.default_level_y());
        let mesh = Mesh2D::new(level, ly, setup.domain.0, setup.domain.1)?;
        let init = setup.initial.clone();
        let u = project_2d(mesh, k, setup.law.ncomp(), |x, y, o| init(x, y, o));
        write_mwt_csv_2d(&decompose_one_level_2d(&u, &filters)?, out)
    } else {
        let setup = problem.setup_1d()?;
        let mesh = Mesh1D::new(level, setup.domain.0, setup.domain.1)?;
        let init = setup.initial.clone();
        let u = project_1d(mesh, k, setup.law.ncomp(), |x, o| init(x, o));
        let (s, d) = decompose_one_level_1d(&dg_to_scaling_1d(&u), &filters)?;
        write_mwt_csv_1d(&s, &d, out)
    }
}
