//! Multiwavelet decomposition of DG fields.
//!
//! Scaling coefficients live on the global reference interval `[-1, 1]`
//! (per direction); the DG coefficients of a level-`n` mesh map onto them
//! through the factor `2^{-n/2}`.

mod one_d;
mod two_d;

pub use one_d::{
    decompose_full_1d, decompose_one_level_1d, detail_eval_1d, detail_on_fine_element, dg_to_scaling_1d,
    reconstruct_one_level_1d, scaling_to_dg_1d, write_mwt_csv_1d, DetailField1D, ScalingCoeffs1D,
};
pub use two_d::{
    decompose_one_level_2d, decompose_scaling_2d, dg_to_scaling_2d, reconstruct_one_level_2d, scaling_to_dg_2d,
    write_mwt_csv_2d, DetailField2D, ScalingCoeffs2D,
};
