use std::io::Write;

use crate::basis::GaussLegendre;
use crate::error::Result;
use crate::field::{DgField1D, DgField2D};
use crate::physics::ConservationLaw;

fn write_state<W: Write>(
    w: &mut csv::Writer<W>,
    coords: &[String],
    law: &dyn ConservationLaw,
    names: &[&'static str],
    state: &[f64],
) -> Result<()> {
    let mut emit = |name: &str, v: f64| -> Result<()> {
        let mut rec: Vec<String> = coords.to_vec();
        rec.push(name.to_string());
        rec.push(format!("{v:.12e}"));
        w.write_record(&rec)?;
        Ok(())
    };
    for (n, v) in names.iter().zip(state) {
        emit(n, *v)?;
    }
    for (n, v) in law.derived(state) {
        emit(n, v)?;
    }
    Ok(())
}

/// Long-format snapshot `x,component,value` sampled at the `k + 1` Gauss
/// nodes of every element.
pub fn write_snapshot_1d<W: Write>(u: &DgField1D, law: &dyn ConservationLaw, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "component", "value"])?;
    let names = law.component_names();
    let quad = GaussLegendre::new(u.degree() + 1);
    let mut state = vec![0.0; u.ncomp()];
    for j in 0..u.len() {
        for &xi in &quad.nodes {
            for (c, s) in state.iter_mut().enumerate() {
                *s = u.eval_ref(c, j, xi);
            }
            let x = u.mesh.to_physical(j, xi);
            write_state(&mut w, &[format!("{x:.12e}")], law, &names, &state)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Long-format snapshot `x,y,component,value` of cell averages at element
/// centers.
pub fn write_snapshot_2d<W: Write>(u: &DgField2D, law: &dyn ConservationLaw, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "component", "value"])?;
    let names = law.component_names();
    let mut state = vec![0.0; u.ncomp()];
    for j in 0..u.ny() {
        for i in 0..u.nx() {
            u.average_state(i, j, &mut state);
            let (x, y) = u.mesh.center(i, j);
            write_state(&mut w, &[format!("{x:.12e}"), format!("{y:.12e}")], law, &names, &state)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One parsed snapshot row.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub x: f64,
    pub y: Option<f64>,
    pub component: String,
    pub value: f64,
}

/// Reads a snapshot written by either writer.
pub fn read_snapshot<R: std::io::Read>(input: R) -> Result<Vec<SnapshotRow>> {
    let mut r = csv::Reader::from_reader(input);
    let two_d = r.headers()?.iter().any(|h| h == "y");
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| crate::Error::invalid(format!("bad snapshot value in column {i}")))
        };
        let off = usize::from(two_d);
        rows.push(SnapshotRow {
            x: num(0)?,
            y: if two_d { Some(num(1)?) } else { None },
            component: rec.get(1 + off).unwrap_or_default().to_string(),
            value: num(2 + off)?,
        });
    }
    Ok(rows)
}
