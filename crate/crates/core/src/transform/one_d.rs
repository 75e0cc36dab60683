use crate::basis::{expand, Half, MultiwaveletBasis, QmfFilters};
use crate::error::{Error, Result};
use crate::field::DgField1D;
use crate::mesh::Mesh1D;

/// Scaling coefficients `s_{ℓj}^m`, laid out like [`DgField1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCoeffs1D {
    pub level: u32,
    pub k: usize,
    pub ncomp: usize,
    pub domain: (f64, f64),
    pub data: Vec<f64>,
}

/// Detail coefficients `d_{ℓj}^m` for `j = 0..2^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailField1D {
    pub level: u32,
    pub k: usize,
    pub ncomp: usize,
    pub domain: (f64, f64),
    pub data: Vec<f64>,
}

macro_rules! coeff_access {
    ($t:ty) => {
        impl $t {
            pub fn len(&self) -> usize {
                1usize << self.level
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            #[inline]
            pub fn get(&self, c: usize, j: usize, l: usize) -> f64 {
                self.data[(j * self.ncomp + c) * (self.k + 1) + l]
            }

            #[inline]
            pub fn modes(&self, c: usize, j: usize) -> &[f64] {
                let o = (j * self.ncomp + c) * (self.k + 1);
                &self.data[o..o + self.k + 1]
            }

            #[inline]
            pub fn modes_mut(&mut self, c: usize, j: usize) -> &mut [f64] {
                let np = self.k + 1;
                let o = (j * self.ncomp + c) * np;
                &mut self.data[o..o + np]
            }
        }
    };
}

coeff_access!(ScalingCoeffs1D);
coeff_access!(DetailField1D);

impl ScalingCoeffs1D {
    fn zeros(level: u32, k: usize, ncomp: usize, domain: (f64, f64)) -> Self {
        Self { level, k, ncomp, domain, data: vec![0.0; (1usize << level) * ncomp * (k + 1)] }
    }
}

impl DetailField1D {
    fn zeros(level: u32, k: usize, ncomp: usize, domain: (f64, f64)) -> Self {
        Self { level, k, ncomp, domain, data: vec![0.0; (1usize << level) * ncomp * (k + 1)] }
    }

    /// Largest absolute detail coefficient.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// `s_{ℓj}^n = 2^{-n/2} u_j^{(ℓ)}`.
pub fn dg_to_scaling_1d(field: &DgField1D) -> ScalingCoeffs1D {
    let n = field.level();
    let factor = 2f64.powf(-(n as f64) / 2.0);
    ScalingCoeffs1D {
        level: n,
        k: field.degree(),
        ncomp: field.ncomp(),
        domain: field.mesh.bounds(),
        data: field.as_slice().iter().map(|v| v * factor).collect(),
    }
}

/// Inverse of [`dg_to_scaling_1d`].
pub fn scaling_to_dg_1d(s: &ScalingCoeffs1D) -> Result<DgField1D> {
    let mesh = Mesh1D::new(s.level, s.domain.0, s.domain.1)?;
    let factor = 2f64.powf(s.level as f64 / 2.0);
    DgField1D::from_coeffs(mesh, s.k, s.ncomp, s.data.iter().map(|v| v * factor).collect())
}

/// One analysis step `s^m -> (s^{m-1}, d^{m-1})`.
pub fn decompose_one_level_1d(
    s: &ScalingCoeffs1D,
    filters: &QmfFilters,
) -> Result<(ScalingCoeffs1D, DetailField1D)> {
    if s.level == 0 {
        return Err(Error::CannotDecompose);
    }
    filters.check_degree(s.k)?;
    let m = s.level - 1;
    let mut sc = ScalingCoeffs1D::zeros(m, s.k, s.ncomp, s.domain);
    let mut d = DetailField1D::zeros(m, s.k, s.ncomp, s.domain);
    for j in 0..(1usize << m) {
        for c in 0..s.ncomp {
            let left = s.modes(c, 2 * j);
            let right = s.modes(c, 2 * j + 1);
            let o = (j * s.ncomp + c) * (s.k + 1);
            let np = s.k + 1;
            filters.analyze(left, right, &mut sc.data[o..o + np], &mut d.data[o..o + np]);
        }
    }
    Ok((sc, d))
}

/// Synthesis step `(s^{m-1}, d^{m-1}) -> s^m`.
pub fn reconstruct_one_level_1d(
    s: &ScalingCoeffs1D,
    d: &DetailField1D,
    filters: &QmfFilters,
) -> Result<ScalingCoeffs1D> {
    if s.level != d.level || s.k != d.k || s.ncomp != d.ncomp {
        return Err(Error::invalid("scaling and detail shapes differ"));
    }
    filters.check_degree(s.k)?;
    let np = s.k + 1;
    let mut out = ScalingCoeffs1D::zeros(s.level + 1, s.k, s.ncomp, s.domain);
    let mut left = vec![0.0; np];
    let mut right = vec![0.0; np];
    for j in 0..s.len() {
        for c in 0..s.ncomp {
            filters.synthesize(s.modes(c, j), d.modes(c, j), &mut left, &mut right);
            out.modes_mut(c, 2 * j).copy_from_slice(&left);
            out.modes_mut(c, 2 * j + 1).copy_from_slice(&right);
        }
    }
    Ok(out)
}

/// Full multiscale recursion down to level 0. Returns `s^0` and the details
/// indexed by level (`details[m]` holds `d^m`).
pub fn decompose_full_1d(
    s: &ScalingCoeffs1D,
    filters: &QmfFilters,
) -> Result<(ScalingCoeffs1D, Vec<DetailField1D>)> {
    let mut cur = s.clone();
    let mut details = Vec::with_capacity(s.level as usize);
    while cur.level > 0 {
        let (next, d) = decompose_one_level_1d(&cur, filters)?;
        details.push(d);
        cur = next;
    }
    details.reverse();
    Ok((cur, details))
}

/// Legendre coefficients (in the fine element's own reference coordinate) of
/// the detail contribution `D^m` restricted to fine element `fine_j` of level
/// `m + 1`. `D^m` is a single polynomial there.
pub fn detail_on_fine_element(d: &DetailField1D, mw: &MultiwaveletBasis, c: usize, fine_j: usize, out: &mut [f64]) {
    let np = d.k + 1;
    let scale = 2f64.powf(d.level as f64 / 2.0);
    let coarse = fine_j / 2;
    let half = Half::from_index(fine_j % 2);
    out[..np].iter_mut().for_each(|v| *v = 0.0);
    for (l, &dl) in d.modes(c, coarse).iter().enumerate() {
        if dl == 0.0 {
            continue;
        }
        for (o, p) in out.iter_mut().zip(mw.half_coeffs(l, half)) {
            *o += scale * dl * p;
        }
    }
}

/// Evaluates `D^m(x) = Σ_j Σ_ℓ d_{ℓj}^m ψ_{ℓj}^m(x)` at physical `x`, one
/// value per component.
pub fn detail_eval_1d(d: &DetailField1D, mw: &MultiwaveletBasis, x: f64) -> Result<Vec<f64>> {
    if mw.degree() != d.k {
        return Err(Error::invalid("multiwavelet degree mismatch"));
    }
    let (a, b) = d.domain;
    if !(a..=b).contains(&x) {
        return Err(Error::invalid(format!("x = {x} outside [{a}, {b}]")));
    }
    // Fine level m+1 element containing x, right-closed.
    let fine = Mesh1D::new(d.level + 1, a, b)?;
    let (fj, xi) = fine.locate(x).expect("x checked above");
    let mut poly = vec![0.0; d.k + 1];
    Ok((0..d.ncomp)
        .map(|c| {
            detail_on_fine_element(d, mw, c, fj, &mut poly);
            expand(&poly, xi)
        })
        .collect())
}

/// Dumps `s` and `d` blocks as `block,component,element,mode,value`.
pub fn write_mwt_csv_1d<W: std::io::Write>(s: &ScalingCoeffs1D, d: &DetailField1D, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["block", "component", "element", "mode", "value"])?;
    for (name, data, len) in [("s", &s.data, s.len()), ("d", &d.data, d.len())] {
        for c in 0..s.ncomp {
            for j in 0..len {
                for l in 0..=s.k {
                    let v = data[(j * s.ncomp + c) * (s.k + 1) + l];
                    w.write_record([name.to_string(), c.to_string(), j.to_string(), l.to_string(), format!("{v:.17e}")])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{scaled_legendre, GaussLegendre};
    use rand::{Rng, SeedableRng};

    fn project(mesh: Mesh1D, k: usize, f: impl Fn(f64) -> f64) -> DgField1D {
        let rule = GaussLegendre::new(k + 6);
        let mut field = DgField1D::zeros(mesh, k, 1);
        for j in 0..mesh.len() {
            for l in 0..=k {
                let v = rule.integrate(-1.0, 1.0, |xi| f(mesh.to_physical(j, xi)) * scaled_legendre(l, xi));
                field.set(0, j, l, v);
            }
        }
        field
    }

    #[test]
    fn scaling_identity() {
        let mesh = Mesh1D::new(0, -1.0, 1.0).unwrap();
        let f = DgField1D::from_coeffs(mesh, 0, 1, vec![3.0]).unwrap();
        assert_eq!(dg_to_scaling_1d(&f).data, vec![3.0]);

        let mesh = Mesh1D::new(4, -1.0, 1.0).unwrap();
        let f = DgField1D::from_coeffs(mesh, 2, 1, vec![1.0; 16 * 3]).unwrap();
        let s = dg_to_scaling_1d(&f);
        assert!(s.data.iter().all(|&v| v == 0.25));
        assert_eq!(scaling_to_dg_1d(&s).unwrap(), f);
    }

    #[test]
    fn linear_function_has_no_detail() {
        for k in 1..=3 {
            let mesh = Mesh1D::new(1, -1.0, 1.0).unwrap();
            let s = dg_to_scaling_1d(&project(mesh, k, |x| x));
            let (_, f) = QmfFilters::for_degree(k).unwrap();
            let (_, d) = decompose_one_level_1d(&s, &f).unwrap();
            assert!(d.max_abs() < 1e-12);
        }
    }

    #[test]
    fn unit_step_haar_detail() {
        let mesh = Mesh1D::new(1, -1.0, 1.0).unwrap();
        let s = dg_to_scaling_1d(&project(mesh, 0, |x| if x > 0.0 { 1.0 } else { 0.0 }));
        let (_, f) = QmfFilters::for_degree(0).unwrap();
        let (_, d) = decompose_one_level_1d(&s, &f).unwrap();
        // ∫_0^1 ψ_0 = 1/√2 with ψ_0 = +1/√2 on the right half.
        let oracle = GaussLegendre::new(4).integrate(0.0, 1.0, |_| 0.5f64.sqrt());
        assert!((d.get(0, 0, 0).abs() - oracle).abs() < 1e-14);
        assert!((d.get(0, 0, 0) - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn level_zero_cannot_decompose() {
        let mesh = Mesh1D::new(0, -1.0, 1.0).unwrap();
        let s = dg_to_scaling_1d(&DgField1D::zeros(mesh, 1, 1));
        let (_, f) = QmfFilters::for_degree(1).unwrap();
        assert!(matches!(decompose_one_level_1d(&s, &f), Err(Error::CannotDecompose)));
    }

    #[test]
    fn haar_detail_evaluation() {
        let mw = MultiwaveletBasis::new(0).unwrap();
        let d = DetailField1D { level: 0, k: 0, ncomp: 1, domain: (-1.0, 1.0), data: vec![2.0] };
        let s = 0.5f64.sqrt();
        assert!((detail_eval_1d(&d, &mw, -0.5).unwrap()[0] + 2.0 * s).abs() < 1e-14);
        assert!((detail_eval_1d(&d, &mw, 0.5).unwrap()[0] - 2.0 * s).abs() < 1e-14);
        assert!(detail_eval_1d(&d, &mw, 1.5).is_err());
        let zero = DetailField1D { data: vec![0.0], ..d };
        assert_eq!(detail_eval_1d(&zero, &mw, 0.2).unwrap()[0], 0.0);
    }

    #[test]
    fn full_recursion_counts_and_roundtrip() {
        let k = 2;
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mesh = Mesh1D::new(5, 0.0, 1.0).unwrap();
        let coeffs: Vec<f64> = (0..32 * 3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let field = DgField1D::from_coeffs(mesh, k, 1, coeffs).unwrap();
        let s = dg_to_scaling_1d(&field);
        let (_, f) = QmfFilters::for_degree(k).unwrap();
        let (s0, details) = decompose_full_1d(&s, &f).unwrap();
        assert_eq!(s0.data.len(), k + 1);
        for (m, d) in details.iter().enumerate() {
            assert_eq!(d.data.len(), (1 << m) * (k + 1));
        }
        let mut cur = s0;
        for d in &details {
            cur = reconstruct_one_level_1d(&cur, d, &f).unwrap();
        }
        for (a, b) in cur.data.iter().zip(&s.data) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
