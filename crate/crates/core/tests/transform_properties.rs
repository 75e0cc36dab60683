mod common;

use mwdg::basis::{scaled_legendre, GaussLegendre, QmfFilters};
use mwdg::transform::{
    decompose_full_1d, decompose_one_level_1d, decompose_one_level_2d, detail_eval_1d, dg_to_scaling_1d,
    reconstruct_one_level_1d, reconstruct_one_level_2d, scaling_to_dg_1d, scaling_to_dg_2d, ScalingCoeffs1D,
};
use mwdg::{DgField1D, DgField2D, Mesh1D, Mesh2D};
use proptest::prelude::*;

fn field_1d(level: u32, k: usize, ncomp: usize, data: &[f64]) -> DgField1D {
    let mesh = Mesh1D::new(level, -1.0, 3.0).unwrap();
    let n = mesh.len() * ncomp * (k + 1);
    DgField1D::from_coeffs(mesh, k, ncomp, data.iter().cycle().take(n).copied().collect()).unwrap()
}

fn energy(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_level_roundtrip_is_exact(k in 0usize..=4, level in 1u32..=6, data in prop::collection::vec(-10.0f64..10.0, 1..64)) {
        let (_, filters) = QmfFilters::for_degree(k).unwrap();
        let s = dg_to_scaling_1d(&field_1d(level, k, 2, &data));
        let (coarse, detail) = decompose_one_level_1d(&s, &filters).unwrap();
        let back = reconstruct_one_level_1d(&coarse, &detail, &filters).unwrap();
        for (a, b) in s.data.iter().zip(&back.data) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
        let u = scaling_to_dg_1d(&back).unwrap();
        let orig = field_1d(level, k, 2, &data);
        for (a, b) in orig.as_slice().iter().zip(u.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-11 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn full_decomposition_preserves_energy(k in 0usize..=3, level in 1u32..=7, data in prop::collection::vec(-1.0f64..1.0, 1..40)) {
        let (_, filters) = QmfFilters::for_degree(k).unwrap();
        let s = dg_to_scaling_1d(&field_1d(level, k, 1, &data));
        let (base, details) = decompose_full_1d(&s, &filters).unwrap();
        prop_assert_eq!(details.len(), level as usize);
        let total = energy(&base.data) + details.iter().map(|d| energy(&d.data)).sum::<f64>();
        let e0 = energy(&s.data);
        prop_assert!((total - e0).abs() <= 1e-12 * e0.max(1e-300));
    }

    #[test]
    fn coarse_polynomials_have_no_details(k in 0usize..=4, level in 1u32..=5, data in prop::collection::vec(-1.0f64..1.0, 1..32)) {
        // A field built on the coarse mesh and refined exactly has zero detail.
        let (_, filters) = QmfFilters::for_degree(k).unwrap();
        let coarse_mesh = Mesh1D::new(level - 1, -1.0, 3.0).unwrap();
        let n = coarse_mesh.len() * (k + 1);
        let coarse = DgField1D::from_coeffs(coarse_mesh, k, 1, data.iter().cycle().take(n).copied().collect()).unwrap();
        let fine = mwdg::solver::project_1d(Mesh1D::new(level, -1.0, 3.0).unwrap(), k, 1, |x, o| o[0] = coarse.eval(0, x).unwrap());
        let (_, detail) = decompose_one_level_1d(&dg_to_scaling_1d(&fine), &filters).unwrap();
        prop_assert!(detail.max_abs() < 1e-12);
    }

    #[test]
    fn two_d_roundtrip_and_energy(k in 0usize..=2, lx in 1u32..=4, ly in 1u32..=4, data in prop::collection::vec(-5.0f64..5.0, 1..50)) {
        let (_, filters) = QmfFilters::for_degree(k).unwrap();
        let mesh = Mesh2D::new(lx, ly, (0.0, 2.0), (-1.0, 1.0)).unwrap();
        let mut u = DgField2D::zeros(mesh, k, 1);
        for (v, d) in u.as_mut_slice().iter_mut().zip(data.iter().cycle()) {
            *v = *d;
        }
        let d = decompose_one_level_2d(&u, &filters).unwrap();
        let back = scaling_to_dg_2d(&reconstruct_one_level_2d(&d, &filters).unwrap()).unwrap();
        for (a, b) in u.as_slice().iter().zip(back.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-11 * (1.0 + a.abs()));
        }
    }
}

#[test]
fn detail_function_is_the_fine_minus_coarse_projection() {
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(7);
    for k in 1..=3 {
        let u = common::random_piecewise_field(&mut rng, 5, k);
        let (mw, filters) = QmfFilters::for_degree(k).unwrap();
        let (_, d) = decompose_one_level_1d(&dg_to_scaling_1d(&u), &filters).unwrap();
        let quad = GaussLegendre::new(k + 4);
        let h = u.mesh.dx();
        for coarse in 0..u.len() / 2 {
            let proj: Vec<f64> = (0..=k)
                .map(|l| {
                    let left = quad.integrate(-1.0, 0.0, |e| u.eval_ref(0, 2 * coarse, 2.0 * e + 1.0) * scaled_legendre(l, e));
                    let right = quad.integrate(0.0, 1.0, |e| u.eval_ref(0, 2 * coarse + 1, 2.0 * e - 1.0) * scaled_legendre(l, e));
                    left + right
                })
                .collect();
            for t in [-0.9, -0.4, 0.1, 0.7] {
                let x = u.mesh.left_edge(2 * coarse) + (t + 1.0) * h;
                let expected = u.eval(0, x).unwrap() - proj.iter().enumerate().map(|(l, c)| c * scaled_legendre(l, t)).sum::<f64>();
                let got = detail_eval_1d(&d, &mw, x).unwrap()[0];
                assert!((got - expected).abs() < 1e-10, "k={k} x={x}: {got} vs {expected}");
            }
        }
    }
}

#[test]
fn decomposing_level_zero_is_an_error() {
    let (_, filters) = QmfFilters::for_degree(1).unwrap();
    let s = ScalingCoeffs1D { level: 0, k: 1, ncomp: 1, domain: (0.0, 1.0), data: vec![1.0, 0.0] };
    assert!(decompose_one_level_1d(&s, &filters).is_err());
}
