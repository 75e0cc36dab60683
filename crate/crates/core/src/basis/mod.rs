//! Scaling functions, Alpert multiwavelets, quadrature mirror filters and
//! Gauss-Legendre quadrature.

mod legendre;
mod multiwavelet;
mod qmf;
mod quadrature;

pub use legendre::{eval_all, expand, scaled_legendre, scaled_legendre_deriv, ScalingBasis};
pub use multiwavelet::{Half, MultiwaveletBasis};
pub use qmf::QmfFilters;
pub use quadrature::GaussLegendre;

/// Highest polynomial degree for which the multiwavelet construction is offered.
pub const MAX_DEGREE: usize = 9;

/// `β_ℓ = sqrt(ℓ - 1/2) / sqrt(ℓ + 1/2)` used by the moment limiter.
pub fn moment_beta(l: usize) -> f64 {
    debug_assert!(l >= 1);
    let l = l as f64;
    (l - 0.5).sqrt() / (l + 0.5).sqrt()
}

/// Writes the piecewise coefficients of `ψ_0..ψ_k` as CSV with columns
/// `l,half,mode,coefficient`.
pub fn write_multiwavelet_csv<W: std::io::Write>(mw: &MultiwaveletBasis, out: W) -> crate::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["l", "half", "mode", "coefficient"])?;
    for l in 0..=mw.degree() {
        for half in Half::BOTH {
            for (r, c) in mw.half_coeffs(l, half).iter().enumerate() {
                w.write_record([l.to_string(), half.label().to_string(), r.to_string(), format!("{c:.17e}")])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
