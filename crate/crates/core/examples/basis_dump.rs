//! Prints the piecewise Legendre coefficients of the Alpert multiwavelets
//! for one degree and checks their orthonormality by quadrature.
//!
//! cargo run --example basis_dump -- 2

use mwdg::basis::{GaussLegendre, MultiwaveletBasis};

fn main() -> mwdg::Result<()> {
    let k: usize = std::env::args().nth(1).map_or(Ok(2), |a| a.parse()).expect("degree");
    let mw = MultiwaveletBasis::new(k)?;
    mwdg::harness::basis_dump(k, std::io::stdout().lock())?;

    let quad = GaussLegendre::new(k + 2);
    let mut worst = 0.0f64;
    for a in 0..=k {
        for b in 0..=k {
            // integrate each half separately; ψ is discontinuous at 0
            let g = quad.integrate(-1.0, 0.0, |t| mw.eval(a, t) * mw.eval(b, t))
                + quad.integrate(0.0, 1.0, |t| mw.eval(a, t) * mw.eval(b, t));
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((g - want).abs());
        }
    }
    eprintln!("k = {k}: max |<psi_a, psi_b> - delta_ab| = {worst:.2e}");
    Ok(())
}
