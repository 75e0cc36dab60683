//! L2 error and observed order for a sine wave advected over one period.

use std::f64::consts::PI;

use mwdg::basis::GaussLegendre;
use mwdg::harness::{run_experiment, ExperimentConfig, Problem, Solution};
use mwdg::indicators::IndicatorConfig;
use mwdg::limiter::LimiterMode;

fn l2_error(u: &mwdg::DgField1D) -> f64 {
    let quad = GaussLegendre::new(u.degree() + 4);
    let h = u.mesh.dx();
    (0..u.len())
        .map(|j| 0.5 * h * quad.integrate(-1.0, 1.0, |xi| (u.eval_ref(0, j, xi) - u.mesh.to_physical(j, xi).sin()).powi(2)))
        .sum::<f64>()
        .sqrt()
}

fn main() -> mwdg::Result<()> {
    for k in [1, 2] {
        let mut prev: Option<f64> = None;
        for n in 4..=7 {
            let mut cfg = ExperimentConfig::new(Problem::Advection, k)
                .with_level(n)
                .with_indicator(IndicatorConfig::multiwavelet(0.1));
            cfg.limiter.mode = LimiterMode::Off;
            cfg.outputs = 1;
            cfg.t_final = 2.0 * PI;
            let Solution::OneD(u) = run_experiment(&cfg)?.solution else { unreachable!() };
            let e = l2_error(&u);
            let order = prev.map(|p| (p / e).log2());
            println!("k={k} n={n} error {e:.3e} order {}", order.map_or("-".into(), |o| format!("{o:.2}")));
            prev = Some(e);
        }
    }
    Ok(())
}
