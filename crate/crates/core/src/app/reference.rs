//! Bundled reference point values and convergence tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const POINT_DATA: &str = include_str!("../../data/reference_tables.csv");
const CONVERGENCE_DATA: &str = include_str!("../../data/convergence_reference.csv");

/// One tabulated value pair. `u` or `v` is absent when the table reports
/// only the other component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub u: Option<f64>,
    pub v: Option<f64>,
    /// Column the values come from, e.g. `MCB-DQM` or `Exact`.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceTable {
    pub id: u8,
    pub problem: String,
    pub re: f64,
    pub rows: Vec<ReferenceRow>,
}

#[derive(Debug, Deserialize)]
struct PointRecord {
    table: u8,
    x: f64,
    y: f64,
    t: f64,
    column: String,
    u: Option<f64>,
    v: Option<f64>,
}

fn reader(data: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(data.as_bytes())
}

/// Problem and Reynolds number each point table was computed for.
pub fn table_setup(id: u8) -> Option<(&'static str, f64)> {
    match id {
        2 | 3 => Some(("fletcher", 100.0)),
        6 => Some(("sincos", 50.0)),
        _ => None,
    }
}

impl ReferenceTable {
    /// Loads point table 2, 3 or 6 from the bundled data.
    pub fn bundled(id: u8) -> Result<Self> {
        let (problem, re) = table_setup(id).ok_or_else(|| {
            Error::Config(format!("no point reference table {id} (use 2, 3 or 6)"))
        })?;
        let mut rows = Vec::new();
        for rec in reader(POINT_DATA).deserialize::<PointRecord>() {
            let rec = rec?;
            if rec.table == id {
                rows.push(ReferenceRow {
                    x: rec.x,
                    y: rec.y,
                    t: rec.t,
                    u: rec.u,
                    v: rec.v,
                    label: rec.column,
                });
            }
        }
        Ok(Self {
            id,
            problem: problem.to_string(),
            re,
            rows,
        })
    }

    /// Rows from one column only.
    pub fn column(&self, label: &str) -> Vec<&ReferenceRow> {
        self.rows.iter().filter(|r| r.label == label).collect()
    }

    /// Distinct times, ascending.
    pub fn times(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self.rows.iter().map(|r| r.t).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }

    /// Allowed absolute deviation for rows of a given column.
    pub fn tolerance(&self, label: &str) -> f64 {
        match (self.id, label) {
            (2 | 3, "Exact") => 2e-3,
            (2 | 3, _) => 1e-3,
            _ => 5e-3,
        }
    }
}

/// One row of a bundled convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReference {
    pub table: u8,
    pub intervals: usize,
    pub l2: f64,
    pub rate_l2: Option<f64>,
    pub linf: f64,
    pub rate_linf: Option<f64>,
}

/// Convergence table 4 (u) or 5 (v).
pub fn convergence_reference(table: u8) -> Result<Vec<ConvergenceReference>> {
    let mut rows = Vec::new();
    for rec in reader(CONVERGENCE_DATA).deserialize::<ConvergenceReference>() {
        let rec = rec?;
        if rec.table == table {
            rows.push(rec);
        }
    }
    if rows.is_empty() {
        return Err(Error::Config(format!(
            "no convergence table {table} (use 4 or 5)"
        )));
    }
    Ok(rows)
}
