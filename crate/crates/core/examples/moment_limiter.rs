//! The moment limiter on a projected step: higher moments shrink until
//! they agree with the neighbouring differences, averages stay put.

use mwdg::limiter::{moment_beta, moment_limit_1d};
use mwdg::solver::project_1d;
use mwdg::Mesh1D;

fn main() -> mwdg::Result<()> {
    let k = 2;
    let mesh = Mesh1D::new(4, 0.0, 1.0)?;
    let u = project_1d(mesh, k, 1, |x, o| o[0] = if x > 0.47 { 1.0 } else { 0.2 * x });
    println!("beta = {:?}", (1..=k).map(moment_beta).collect::<Vec<_>>());

    let mut limited = u.clone();
    for j in 1..u.len() - 1 {
        let changed = moment_limit_1d(limited.modes_mut(0, j), u.modes(0, j - 1), u.modes(0, j + 1));
        if changed {
            println!("element {j:>2}: {:?} -> {:?}", fmt(u.modes(0, j)), fmt(limited.modes(0, j)));
        }
    }
    let drift = (0..u.len()).map(|j| (u.get(0, j, 0) - limited.get(0, j, 0)).abs()).fold(0.0, f64::max);
    println!("largest change of a cell average: {drift:e}");
    Ok(())
}

fn fmt(m: &[f64]) -> Vec<String> {
    m.iter().map(|v| format!("{v:+.4}")).collect()
}
