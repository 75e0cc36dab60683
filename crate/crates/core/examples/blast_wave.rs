//! Woodward-Colella interacting blast waves on 512 elements. Reports the
//! troubled-cell percentages and the smallest nodal density and pressure
//! seen during the run.

use mwdg::harness::{run_experiment, ExperimentConfig, Problem};
use mwdg::indicators::IndicatorConfig;

fn main() -> mwdg::Result<()> {
    let c: f64 = std::env::args().nth(1).map_or(0.25, |a| a.parse().expect("threshold"));
    let cfg = ExperimentConfig::new(Problem::Blast, 1).with_indicator(IndicatorConfig::multiwavelet(c));
    let r = run_experiment(&cfg)?;
    println!("C = {c}: {} steps, avg {:.4}%, max {:.4}%", r.steps, r.stats.avg_pct, r.stats.max_pct);
    println!("min density {:.3e}, min pressure {:.3e}", r.min_density, r.min_pressure);
    Ok(())
}
