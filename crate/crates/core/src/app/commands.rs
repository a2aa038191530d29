use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::app::config::RunConfig;
use crate::app::reference::ReferenceTable;
use crate::error::{Error, Result};
use crate::integrator::TimeLoopConfig;
use crate::metrics::{
    fmt_float, run_convergence_study, write_convergence_csv, ConvergenceRow, ErrorReport,
};
use crate::problems::{problem_by_name, ProblemSpec};
use crate::semidiscrete::VelocityField;
use crate::simulation::{Progress, Solver};
use crate::weights::write_matrix_csv;

/// Machine-readable summary of a solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub problem: String,
    pub re: f64,
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub t_end: f64,
    pub l2_u: Option<f64>,
    pub linf_u: Option<f64>,
    pub l2_v: Option<f64>,
    pub linf_v: Option<f64>,
    pub l2_grid_u: Option<f64>,
    pub l2_grid_v: Option<f64>,
    pub steps: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub summary: SolveSummary,
    pub report: Option<ErrorReport>,
    pub final_field: VelocityField,
    pub files: Vec<PathBuf>,
}

fn problem_for(cfg: &RunConfig) -> Result<ProblemSpec> {
    problem_by_name(&cfg.problem, cfg.re)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Long-form CSV, one node per row. Exact-solution columns are added when
/// `exact` is given.
pub fn write_field_csv<W: Write>(
    solver: &Solver,
    field: &VelocityField,
    exact: Option<&VelocityField>,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x", "y", "u", "v"];
    if exact.is_some() {
        header.extend(["u_exact", "v_exact", "abs_err_u", "abs_err_v"]);
    }
    w.write_record(&header)?;
    let xs = solver.grid().x_nodes();
    let ys = solver.grid().y_nodes();
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let (u, v) = (field.u[[i, j]], field.v[[i, j]]);
            let mut rec = vec![fmt_float(x), fmt_float(y), fmt_float(u), fmt_float(v)];
            if let Some(e) = exact {
                let (ue, ve) = (e.u[[i, j]], e.v[[i, j]]);
                rec.extend([
                    fmt_float(ue),
                    fmt_float(ve),
                    fmt_float((u - ue).abs()),
                    fmt_float((v - ve).abs()),
                ]);
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn field_file_name(t: f64) -> String {
    format!("field_t{t:.6}.csv")
}

fn progress_printer(total: usize) -> impl FnMut(Progress) {
    let every = (total / 10).max(1);
    move |p: Progress| {
        if p.step % every == 0 || p.step == total {
            eprintln!(
                "[solve] step {}/{} t = {:.6} max|u| = {:.6} max|v| = {:.6}",
                p.step, total, p.t, p.max_u, p.max_v
            );
        }
    }
}

/// Integrates one problem, writing field dumps and `summary.json` into
/// `cfg.out`.
pub fn run_solve(cfg: &RunConfig) -> Result<SolveOutcome> {
    let started = Instant::now();
    let solver = Solver::new(problem_for(cfg)?, cfg.nx, cfg.ny)?;
    let tl = TimeLoopConfig::new(cfg.dt, cfg.t_end).with_snapshots(cfg.snapshots.clone());
    let total = tl.step_count()?;
    let traj = solver.run_with_progress(&tl, progress_printer(total))?;

    fs::create_dir_all(&cfg.out)?;
    let mut files = Vec::new();
    let mut dumps: Vec<&VelocityField> = traj.snapshots.iter().map(|(_, f)| f).collect();
    let final_t = traj.final_state.t;
    if !traj.snapshots.iter().any(|(t, _)| *t == final_t) {
        dumps.push(&traj.final_state);
    }
    for f in dumps {
        let exact = if solver.problem().has_exact() {
            Some(solver.exact_field(f.t)?)
        } else {
            None
        };
        let path = cfg.out.join(field_file_name(f.t));
        write_field_csv(&solver, f, exact.as_ref(), create(&path)?)?;
        files.push(path);
    }
    if cfg.dump_weights {
        let w = solver.weights();
        for (name, m) in [
            ("wx1", &w.wx1),
            ("wx2", &w.wx2),
            ("wy1", &w.wy1),
            ("wy2", &w.wy2),
        ] {
            let path = cfg.out.join(format!("{name}.csv"));
            let mut out = create(&path)?;
            write_matrix_csv(m, &mut out)?;
            out.flush()?;
            files.push(path);
        }
    }

    let report = if solver.problem().has_exact() {
        let exact = solver.exact_field(final_t)?;
        Some(ErrorReport::new(
            &traj.final_state,
            &exact,
            solver.grid(),
            cfg.dt,
            cfg.re,
        )?)
    } else {
        None
    };
    let summary = SolveSummary {
        problem: cfg.problem.clone(),
        re: cfg.re,
        nx: cfg.nx,
        ny: cfg.ny,
        dt: cfg.dt,
        t_end: cfg.t_end,
        l2_u: report.as_ref().map(|r| r.l2_u),
        linf_u: report.as_ref().map(|r| r.linf_u),
        l2_v: report.as_ref().map(|r| r.l2_v),
        linf_v: report.as_ref().map(|r| r.linf_v),
        l2_grid_u: report.as_ref().map(|r| r.l2_grid_u),
        l2_grid_v: report.as_ref().map(|r| r.l2_grid_v),
        steps: traj.steps,
        wall_seconds: started.elapsed().as_secs_f64(),
    };
    let path = cfg.out.join("summary.json");
    let mut out = create(&path)?;
    serde_json::to_writer_pretty(&mut out, &summary)?;
    writeln!(out)?;
    out.flush()?;
    files.push(path);

    Ok(SolveOutcome {
        summary,
        report,
        final_field: traj.final_state,
        files,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub label: String,
    pub component: char,
    pub expected: f64,
    pub computed: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheckReport {
    pub table: u8,
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

/// Solves on the configured grid and compares against every row of `table`.
pub fn run_table_check(cfg: &RunConfig, table: &ReferenceTable) -> Result<TableCheckReport> {
    if table.rows.is_empty() {
        return Ok(TableCheckReport {
            table: table.id,
            rows: Vec::new(),
            passed: true,
        });
    }
    let problem = problem_by_name(&table.problem, cfg.re)?;
    let solver = Solver::new(problem, cfg.nx, cfg.ny)?;
    let located = table
        .rows
        .iter()
        .map(|r| solver.grid().locate(r.x, r.y))
        .collect::<Result<Vec<_>>>()?;
    let times = table.times();
    let t_end = *times.last().expect("non-empty table");
    let tl = TimeLoopConfig::new(cfg.dt, t_end).with_snapshots(times.clone());
    let traj = solver.run_with_progress(&tl, progress_printer(tl.step_count()?))?;

    let mut rows = Vec::new();
    for (r, &(i, j)) in table.rows.iter().zip(&located) {
        let field = traj
            .snapshots
            .iter()
            .find(|(t, _)| (t - r.t).abs() <= 1e-9 * cfg.dt.max(1.0))
            .map(|(_, f)| f)
            .ok_or_else(|| Error::Config(format!("no snapshot at t = {}", r.t)))?;
        let tolerance = table.tolerance(&r.label);
        for (component, expected, computed) in
            [('u', r.u, field.u[[i, j]]), ('v', r.v, field.v[[i, j]])]
        {
            if let Some(expected) = expected {
                let deviation = (computed - expected).abs();
                rows.push(CheckRow {
                    x: r.x,
                    y: r.y,
                    t: r.t,
                    label: r.label.clone(),
                    component,
                    expected,
                    computed,
                    deviation,
                    tolerance,
                    pass: deviation <= tolerance,
                });
            }
        }
    }
    let passed = rows.iter().all(|r| r.pass);
    Ok(TableCheckReport {
        table: table.id,
        rows,
        passed,
    })
}

/// Writes `table_check.json` and prints one line per compared value.
pub fn run_table_check_cmd(cfg: &RunConfig) -> Result<TableCheckReport> {
    let id = cfg
        .table
        .ok_or_else(|| Error::Config("table-check needs --table".into()))?;
    let table = ReferenceTable::bundled(id)?;
    let report = run_table_check(cfg, &table)?;
    for r in &report.rows {
        println!(
            "{} table {} {} ({}, {}) t={} {}: computed {:.5} expected {:.5} |dev| {:.2e} <= {:.0e}",
            if r.pass { "PASS" } else { "FAIL" },
            report.table,
            r.label,
            r.x,
            r.y,
            r.t,
            r.component,
            r.computed,
            r.expected,
            r.deviation,
            r.tolerance
        );
    }
    fs::create_dir_all(&cfg.out)?;
    let mut out = create(&cfg.out.join(format!("table{id}_check.json")))?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(report)
}

/// Runs a refinement study and writes `convergence.csv` and
/// `convergence.json`.
pub fn run_converge(cfg: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    let problem = problem_for(cfg)?;
    eprintln!(
        "[converge] grids {:?}, dt = {}, t = {}",
        cfg.grids, cfg.dt, cfg.t_end
    );
    let rows = run_convergence_study(&problem, &cfg.grids, cfg.dt, cfg.t_end)?;
    fs::create_dir_all(&cfg.out)?;
    let mut csv_out = create(&cfg.out.join("convergence.csv"))?;
    write_convergence_csv(&rows, &mut csv_out)?;
    csv_out.flush()?;
    let mut json_out = create(&cfg.out.join("convergence.json"))?;
    serde_json::to_writer_pretty(&mut json_out, &rows)?;
    writeln!(json_out)?;
    json_out.flush()?;
    for r in &rows {
        println!(
            "{:>4} intervals  linf_u {:.4e}  l2_grid_u {:.4e}  rate_linf {}  rate_l2_grid {}",
            r.intervals,
            r.u.linf,
            r.u.l2_grid,
            r.u.rate_linf
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".into()),
            r.u.rate_l2_grid
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".into()),
        );
    }
    Ok(rows)
}
