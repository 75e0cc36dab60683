//! Evolves Sod's shock tube to t = 1 and lets the three indicators look at
//! the same solution. Only the multiwavelet indicator sees the contact.

use mwdg::harness::{run_experiment, ExperimentConfig, Problem, Solution};
use mwdg::indicators::{Indicator1D, IndicatorConfig, IndicatorVars};
use mwdg::solver::Dg1D;

fn main() -> mwdg::Result<()> {
    let k = 1;
    let mut cfg = ExperimentConfig::new(Problem::Sod, k).with_indicator(IndicatorConfig::multiwavelet(0.1));
    cfg.t_final = 1.0;
    cfg.outputs = 1;
    let run = run_experiment(&cfg)?;
    let Solution::OneD(u) = run.solution else { unreachable!() };

    let setup = Problem::Sod.setup_1d()?;
    let dg = Dg1D::new(setup.law, setup.boundary, k);
    let indicators = [
        ("mw C=0.1", IndicatorConfig::multiwavelet(0.1)),
        ("kxrcf", IndicatorConfig::kxrcf(IndicatorVars::DensityEntropy)),
        ("harten", IndicatorConfig::harten(1.5, IndicatorVars::DensityEntropy)),
    ];
    for (name, config) in indicators {
        let set = Indicator1D::new(config, k)?.indicate(&u, &dg, 1.0)?;
        let xs: Vec<String> = set.indices().iter().map(|&j| format!("{:.2}", u.mesh.center(j))).collect();
        println!("{name:>9}: {:>2} cells at x = {}", set.count(), xs.join(" "));
    }
    Ok(())
}
