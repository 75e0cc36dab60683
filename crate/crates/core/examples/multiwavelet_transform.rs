//! One level of the multiwavelet decomposition of a projected DG field.
//! Smooth regions give details near roundoff, the jump gives one large
//! detail block, and synthesis recovers the field.

use mwdg::basis::QmfFilters;
use mwdg::solver::project_1d;
use mwdg::transform::{decompose_one_level_1d, dg_to_scaling_1d, reconstruct_one_level_1d};
use mwdg::Mesh1D;

fn main() -> mwdg::Result<()> {
    let k = 2;
    let mesh = Mesh1D::new(5, -1.0, 1.0)?;
    let u = project_1d(mesh, k, 1, |x, o| o[0] = (3.0 * x).sin() + if x > 0.3 { 1.0 } else { 0.0 });
    let (_, filters) = QmfFilters::for_degree(k)?;

    let s = dg_to_scaling_1d(&u);
    let (coarse, detail) = decompose_one_level_1d(&s, &filters)?;
    println!("coarse element  |d|");
    for j in 0..detail.len() {
        let norm: f64 = detail.modes(0, j).iter().map(|v| v * v).sum::<f64>().sqrt();
        println!("{j:>14}  {norm:.3e}");
    }

    let back = reconstruct_one_level_1d(&coarse, &detail, &filters)?;
    let err = back.data.iter().zip(&s.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("reconstruction error {err:.2e}");
    Ok(())
}
