//! Which 2D detail block reacts to which discontinuity: a jump across x
//! shows up in β, a jump across y in α, a diagonal one in all three.

use mwdg::indicators::{Mode, MultiwaveletIndicator};
use mwdg::mesh::Mesh2D;
use mwdg::solver::project_2d;

fn main() -> mwdg::Result<()> {
    let k = 1;
    let mesh = Mesh2D::new(5, 5, (0.0, 1.0), (0.0, 1.0))?;
    let steps: [(&str, fn(f64, f64) -> bool); 3] = [
        ("x-step", |x, _| x > 0.3),
        ("y-step", |_, y| y > 0.3),
        ("diagonal", |x, y| x + y > 0.9),
    ];
    let mw = MultiwaveletIndicator::new(k)?;
    println!("{:>9} {:>6} {:>6} {:>6} {:>6}", "field", "alpha", "beta", "gamma", "comb");
    for (name, step) in steps {
        let u = project_2d(mesh, k, 1, |x, y, o| o[0] = if step(x, y) { 1.0 } else { 0.0 });
        let set = mw.indicate_2d(&u, &[0], [0.1; 3])?;
        let counts: Vec<usize> = Mode::ALL.iter().map(|&m| set.mode(m).map_or(0, |mask| mask.count())).collect();
        println!("{name:>9} {:>6} {:>6} {:>6} {:>6}", counts[0], counts[1], counts[2], set.count());
    }
    Ok(())
}
