//! Burgers' equation from a sine: the shock forms at t = 1 at x = π. The
//! flagged cells before and after breaking show the indicator switching on.

use mwdg::harness::{run_experiment, ExperimentConfig, Problem};
use mwdg::indicators::IndicatorConfig;

fn main() -> mwdg::Result<()> {
    let mut cfg = ExperimentConfig::new(Problem::Burgers, 2).with_indicator(IndicatorConfig::multiwavelet(0.1));
    cfg.outputs = 15;
    let r = run_experiment(&cfg)?;
    let dt = cfg.t_final / 15.0;
    let mut next = dt;
    for row in r.history.iter().filter(|h| h.step > 0) {
        if row.time + 1e-12 >= next {
            let flagged: Vec<usize> = r.history.iter().filter(|h| h.step == row.step).map(|h| h.element_i).collect();
            println!("t = {:.2}: {:?}", row.time, flagged);
            while next <= row.time + 1e-12 {
                next += dt;
            }
        }
    }
    println!("avg {:.4}%, max {:.4}%", r.stats.avg_pct, r.stats.max_pct);
    Ok(())
}
