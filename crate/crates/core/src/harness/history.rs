use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::{Mode, TroubledSet1D, TroubledSet2D};

/// Which 2D mask a history row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowMode {
    Alpha,
    Beta,
    Gamma,
    Comb,
}

impl RowMode {
    pub fn label(self) -> &'static str {
        match self {
            RowMode::Alpha => "alpha",
            RowMode::Beta => "beta",
            RowMode::Gamma => "gamma",
            RowMode::Comb => "comb",
        }
    }
}

impl From<Mode> for RowMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Alpha => RowMode::Alpha,
            Mode::Beta => RowMode::Beta,
            Mode::Gamma => RowMode::Gamma,
        }
    }
}

/// One flagged element (or 2D mode region) at one step. α rows index
/// `(coarse i, fine j)`, β rows `(fine i, coarse j)`, γ and comb rows fine
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub step: usize,
    pub time: f64,
    pub element_i: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element_j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<RowMode>,
}

impl HistoryRow {
    /// Rows counted towards the troubled percentage.
    pub fn counts(&self) -> bool {
        matches!(self.mode, None | Some(RowMode::Comb))
    }
}

pub fn rows_1d(step: usize, time: f64, set: &TroubledSet1D) -> Vec<HistoryRow> {
    set.indices()
        .into_iter()
        .map(|i| HistoryRow { step, time, element_i: i, element_j: None, mode: None })
        .collect()
}

pub fn rows_2d(step: usize, time: f64, set: &TroubledSet2D) -> Vec<HistoryRow> {
    let mut rows = Vec::new();
    if set.modes.is_some() {
        for m in Mode::ALL {
            for (i, j) in set.mode(m).expect("modes present").indices() {
                rows.push(HistoryRow { step, time, element_i: i, element_j: Some(j), mode: Some(m.into()) });
            }
        }
    }
    for (i, j) in set.indices() {
        rows.push(HistoryRow { step, time, element_i: i, element_j: Some(j), mode: Some(RowMode::Comb) });
    }
    rows
}

/// Writes `step,time,element_i[,element_j][,mode]`.
pub fn write_history<W: Write>(rows: &[HistoryRow], two_d: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if two_d {
        w.write_record(["step", "time", "element_i", "element_j", "mode"])?;
    } else {
        w.write_record(["step", "time", "element_i"])?;
    }
    for r in rows {
        let mut rec = vec![r.step.to_string(), format!("{:.10e}", r.time), r.element_i.to_string()];
        if two_d {
            rec.push(r.element_j.map_or(String::new(), |j| j.to_string()));
            rec.push(r.mode.map_or("comb", RowMode::label).to_string());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_history<R: Read>(input: R) -> Result<Vec<HistoryRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let headers = rd.headers()?.clone();
    for need in ["step", "time", "element_i"] {
        if !headers.iter().any(|h| h == need) {
            return Err(Error::invalid(format!("history file lacks column '{need}'")));
        }
    }
    rd.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn read_history_file(path: &Path) -> Result<Vec<HistoryRow>> {
    read_history(std::fs::File::open(path)?)
}

/// Average and maximum percentage of flagged elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub avg_pct: f64,
    pub max_pct: f64,
}

/// Per-step percentages `100 · flagged / total`; the mean and maximum over
/// steps.
pub fn compute_stats(counts: &[usize], total: usize) -> Result<Stats> {
    if counts.is_empty() {
        return Err(Error::invalid("empty troubled-cell history"));
    }
    if total == 0 {
        return Err(Error::invalid("zero elements"));
    }
    let pct: Vec<f64> = counts.iter().map(|&c| 100.0 * c as f64 / total as f64).collect();
    Ok(Stats {
        avg_pct: pct.iter().sum::<f64>() / pct.len() as f64,
        max_pct: pct.iter().cloned().fold(0.0, f64::max),
    })
}

/// Flag counts per step `1..=nsteps` from history rows (steps without rows
/// count zero).
pub fn counts_from_rows(rows: &[HistoryRow], nsteps: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; nsteps];
    for r in rows.iter().filter(|r| r.counts()) {
        if r.step == 0 || r.step > nsteps {
            return Err(Error::invalid(format!("history step {} outside 1..={nsteps}", r.step)));
        }
        counts[r.step - 1] += 1;
    }
    Ok(counts)
}

/// Writes `indicator,variables,C,avg_pct,max_pct`.
pub fn write_stats<W: Write>(indicator: &str, vars: &str, c: &str, stats: &Stats, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["indicator", "variables", "C", "avg_pct", "max_pct"])?;
    w.write_record([
        indicator.to_string(),
        vars.to_string(),
        c.to_string(),
        format!("{:.4}", stats.avg_pct),
        format!("{:.4}", stats.max_pct),
    ])?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_examples() {
        let s = compute_stats(&[1; 10], 64).unwrap();
        assert_eq!((s.avg_pct, s.max_pct), (1.5625, 1.5625));
        let s = compute_stats(&[0, 0, 17], 64).unwrap();
        assert!((s.avg_pct - 8.854166666).abs() < 1e-6);
        assert_eq!(s.max_pct, 26.5625);
        assert!(compute_stats(&[], 64).is_err());
    }

    #[test]
    fn history_roundtrip() {
        let rows = vec![
            HistoryRow { step: 1, time: 0.5, element_i: 3, element_j: Some(1), mode: Some(RowMode::Beta) },
            HistoryRow { step: 2, time: 1.0, element_i: 3, element_j: Some(2), mode: Some(RowMode::Comb) },
        ];
        let mut buf = Vec::new();
        write_history(&rows, true, &mut buf).unwrap();
        let back = read_history(&buf[..]).unwrap();
        assert_eq!(back, rows);
        assert_eq!(counts_from_rows(&back, 3).unwrap(), vec![0, 1, 0]);

        let one = vec![HistoryRow { step: 1, time: 0.25, element_i: 7, element_j: None, mode: None }];
        let mut buf = Vec::new();
        write_history(&one, false, &mut buf).unwrap();
        assert_eq!(read_history(&buf[..]).unwrap(), one);
    }

    #[test]
    fn malformed_history_is_rejected() {
        assert!(read_history("a,b\n1,2\n".as_bytes()).is_err());
    }
}
