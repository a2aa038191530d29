//! Command-line orchestration: solves, refinement studies and reference
//! table checks.

mod commands;
pub mod config;
pub mod reference;

pub use commands::{
    run_converge, run_solve, run_table_check, run_table_check_cmd, write_field_csv, CheckRow,
    SolveOutcome, SolveSummary, TableCheckReport,
};
pub use config::{Mode, PartialConfig, RunConfig};
pub use reference::{convergence_reference, ConvergenceReference, ReferenceRow, ReferenceTable};

use crate::error::Result;

/// Exit code for a table check that ran but did not pass.
pub const EXIT_TABLE_FAILURE: i32 = 5;

/// Runs the configured mode and returns the process exit code.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    match cfg.mode {
        Mode::Solve => {
            let out = run_solve(cfg)?;
            if let Some(r) = &out.report {
                println!(
                    "linf_u {:.4e}  linf_v {:.4e}  l2_grid_u {:.4e}  l2_grid_v {:.4e}",
                    r.linf_u, r.linf_v, r.l2_grid_u, r.l2_grid_v
                );
            }
            println!("wrote {} files to {}", out.files.len(), cfg.out.display());
            Ok(0)
        }
        Mode::Converge => {
            run_converge(cfg)?;
            Ok(0)
        }
        Mode::TableCheck => {
            let report = run_table_check_cmd(cfg)?;
            Ok(if report.passed { 0 } else { EXIT_TABLE_FAILURE })
        }
    }
}
