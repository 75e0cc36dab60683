use rayon::prelude::*;

use super::{IndicatorVars, TroubledSet1D, VariableMap, NOISE_FLOOR};
use crate::basis::{scaled_legendre, GaussLegendre};
use crate::error::{Error, Result};
use crate::field::DgField1D;
use crate::solver::Dg1D;

/// Subcell-resolution indicator. Neighbour polynomials are extended into the
/// element; the element is flagged when the extension test changes sign
/// across it and its top modal coefficient dominates both neighbours' by
/// the factor `alpha`.
pub fn harten_indicate_1d(u: &DgField1D, dg: &Dg1D, t: f64, vars: IndicatorVars, alpha: f64) -> Result<TroubledSet1D> {
    let k = u.degree();
    if k == 0 {
        return Err(Error::CannotIndicate("the Harten indicator needs k >= 1".into()));
    }
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
    }
    let law = dg.law.as_ref();
    let np = k + 1;
    let n = u.len();
    let map = VariableMap::new(law, vars, k)?;
    let nv = map.nvars();
    let q = map.field_1d(u)?;
    let (gl, gr) = dg.ghosts(u, t);
    let mut ql = vec![0.0; nv * np];
    let mut qr = vec![0.0; nv * np];
    map.convert_1d(&gl, &mut ql)?;
    map.convert_1d(&gr, &mut qr)?;
    let elem = |e: isize| -> &[f64] {
        if e < 0 {
            &ql
        } else if e as usize >= n {
            &qr
        } else {
            q.element(e as usize)
        }
    };

    // Averages of a neighbour's polynomial over the adjacent element: the left
    // neighbour covers ξ ∈ [1, 3] of its own coordinate, the right one [-3, -1].
    let quad = GaussLegendre::new(k + 2);
    let shifted = |shift: f64| -> Vec<f64> {
        (0..np)
            .map(|l| quad.nodes.iter().zip(&quad.weights).map(|(&s, &w)| 0.5 * w * scaled_legendre(l, shift + s)).sum())
            .collect()
    };
    let from_left = shifted(2.0);
    let from_right = shifted(-2.0);
    let dotp = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // top coefficients at roundoff level never count as dominant
    let floors: Vec<f64> = (0..nv)
        .map(|c| {
            let scale = (0..n)
                .map(|j| q.element(j)[c * np..(c + 1) * np].iter().map(|v| v * v).sum::<f64>().sqrt())
                .fold(0.0, f64::max);
            NOISE_FLOOR * scale
        })
        .collect();

    let per_elem: Vec<(Vec<bool>, Vec<f64>)> = (0..n as isize)
        .into_par_iter()
        .map(|i| {
            let (me, lt, rt) = (elem(i), elem(i - 1), elem(i + 1));
            let mut flags = Vec::with_capacity(nv);
            let mut dominance = Vec::with_capacity(nv);
            for c in 0..nv {
                let r = c * np..(c + 1) * np;
                let mean = me[c * np] / 2f64.sqrt();
                let at_left_edge = dotp(&rt[r.clone()], &from_right) - mean;
                let at_right_edge = dotp(&lt[r.clone()], &from_left) - mean;
                let top = me[c * np + k].abs();
                let (tl, tr) = (lt[c * np + k].abs(), rt[c * np + k].abs());
                let sign_change = at_left_edge * at_right_edge <= 0.0;
                flags.push(sign_change && top > floors[c] && top > alpha * tl && top > alpha * tr);
                let nb = tl.max(tr);
                dominance.push(if nb == 0.0 { if top == 0.0 { 0.0 } else { f64::INFINITY } } else { top / nb });
            }
            (flags, dominance)
        })
        .collect();

    let mut set = TroubledSet1D::empty(n);
    for c in 0..nv {
        for (f, (fl, _)) in set.flags.iter_mut().zip(&per_elem) {
            *f |= fl[c];
        }
        set.values.push(per_elem.iter().map(|(_, d)| d[c]).collect());
        set.cutoffs.push(alpha);
    }
    Ok(set)
}
