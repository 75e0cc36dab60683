//! Sod's shock tube on 64 elements with the multiwavelet indicator at three
//! thresholds. Pass an output directory to keep snapshots and histories.
//!
//! cargo run --release --example sod_shock_tube -- /tmp/sod

use mwdg::harness::{run_experiment, ExperimentConfig, Problem};
use mwdg::indicators::IndicatorConfig;

fn main() -> mwdg::Result<()> {
    let out = std::env::args().nth(1);
    println!("{:>5} {:>8} {:>8} {:>6}", "C", "avg %", "max %", "steps");
    for c in [0.9, 0.5, 0.1] {
        let mut cfg = ExperimentConfig::new(Problem::Sod, 1).with_indicator(IndicatorConfig::multiwavelet(c));
        if let Some(dir) = &out {
            cfg = cfg.with_out_dir(format!("{dir}/c{c}"));
        }
        let r = run_experiment(&cfg)?;
        println!("{c:>5} {:>8.4} {:>8.4} {:>6}", r.stats.avg_pct, r.stats.max_pct, r.steps);
    }
    Ok(())
}
