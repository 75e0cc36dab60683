//! Shu-Osher shock/entropy-wave interaction at 512 elements, compared with
//! a fine-mesh self reference on the same solver.
//!
//! cargo run --release --example shu_osher -- 11

use mwdg::harness::{reference_solution, run_experiment, ExperimentConfig, Problem, Solution};
use mwdg::indicators::IndicatorConfig;

fn main() -> mwdg::Result<()> {
    let fine: u32 = std::env::args().nth(1).map_or(11, |a| a.parse().expect("level"));
    let cfg = ExperimentConfig::new(Problem::ShuOsher, 1).with_indicator(IndicatorConfig::multiwavelet(0.1));
    let r = run_experiment(&cfg)?;
    println!("512 elements: avg {:.4}%, max {:.4}%", r.stats.avg_pct, r.stats.max_pct);

    let mut sink = Vec::new();
    let reference = reference_solution(Problem::ShuOsher, fine, 1, &mut sink)?;
    let (Solution::OneD(coarse), Solution::OneD(fine_u)) = (&r.solution, &reference.solution) else {
        unreachable!()
    };
    // L1 density difference sampled at the fine cell centres
    let n = fine_u.len();
    let err: f64 = (0..n)
        .map(|j| {
            let x = fine_u.mesh.center(j);
            (coarse.eval(0, x).unwrap() - fine_u.average(0, j)).abs() * fine_u.mesh.dx()
        })
        .sum();
    println!("reference with {n} elements, L1 density difference {err:.4e}");
    Ok(())
}
