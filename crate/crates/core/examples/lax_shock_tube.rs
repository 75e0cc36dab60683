//! Lax's shock tube, 128 elements, k = 1 and 2, multiwavelet indicator
//! against KXRCF on density and entropy.

use mwdg::harness::{run_experiment, ExperimentConfig, Problem};
use mwdg::indicators::{IndicatorConfig, IndicatorVars};

fn main() -> mwdg::Result<()> {
    for k in [1, 2] {
        for ind in [IndicatorConfig::multiwavelet(0.1), IndicatorConfig::kxrcf(IndicatorVars::DensityEntropy)] {
            let cfg = ExperimentConfig::new(Problem::Lax, k).with_indicator(ind);
            let r = run_experiment(&cfg)?;
            println!(
                "k={k} {:>6} avg {:>7.4}%  max {:>7.4}%",
                ind.kind.label(),
                r.stats.avg_pct,
                r.stats.max_pct
            );
        }
    }
    Ok(())
}
