//! Double-Mach reflection. The default spacing 1/32 finishes in a few
//! minutes; pass 6 for the 1/64 desk run or 7 for 1/128.
//!
//! cargo run --release --example double_mach -- 5 /tmp/dmr

use mwdg::harness::{run_experiment, ExperimentConfig, Problem};
use mwdg::indicators::IndicatorConfig;

fn main() -> mwdg::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(5, |a| a.parse().expect("level"));
    let mut cfg = ExperimentConfig::new(Problem::DoubleMach, 1);
    cfg.level = n + 2;
    cfg.level_y = Some(n);
    cfg.indicator = IndicatorConfig { c_alpha: 0.05, c_beta: 0.05, c_gamma: 0.05, ..IndicatorConfig::default() };
    if let Some(dir) = args.next() {
        cfg = cfg.with_out_dir(dir);
    }
    let r = run_experiment(&cfg)?;
    println!(
        "{}x{} elements, {} steps: avg {:.4}%, max {:.4}%",
        1 << cfg.level,
        1 << n,
        r.steps,
        r.stats.avg_pct,
        r.stats.max_pct
    );
    Ok(())
}
