//! Modified cubic B-spline differential quadrature for the two-dimensional
//! coupled viscous Burgers equations
//!
//! ```text
//! u_t + u u_x + v u_y = (u_xx + u_yy) / Re
//! v_t + u v_x + v v_y = (v_xx + v_yy) / Re
//! ```
//!
//! with Dirichlet boundary data on a rectangle.
//!
//! Space is discretised with differential quadrature: every derivative at a
//! node is a weighted sum of nodal values along the grid line, with weights
//! from a boundary-modified cubic B-spline basis ([`weights`]). The
//! resulting ODE system ([`semidiscrete`]) is advanced with a five-stage,
//! fourth-order SSP Runge-Kutta scheme ([`integrator`]).
//!
//! ```
//! use mcbdqm::{make_problem_fletcher, Solver, TimeLoopConfig};
//!
//! let solver = Solver::new(make_problem_fletcher(100.0)?, 10, 10)?;
//! let out = solver.run(&TimeLoopConfig::new(1e-3, 0.01))?;
//! assert_eq!(out.steps, 10);
//! assert!(out.final_state.is_finite());
//! # Ok::<(), mcbdqm::Error>(())
//! ```

// Checks are written as `!(x > 0.0)` so that NaN fails them, and index
// loops mirror the formulas they implement.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod app;
pub mod error;
pub mod grid;
pub mod integrator;
pub mod metrics;
pub mod problems;
pub mod semidiscrete;
pub mod simulation;
pub mod weights;

pub use error::{Error, Result};
pub use grid::Grid2D;
pub use integrator::{integrate, RkState, SspRk54Tableau, TimeLoopConfig, Trajectory};
pub use metrics::{
    convergence_rate, error_norms, grid_l2, run_convergence_study, ConvergenceRow, ErrorReport,
};
pub use problems::{fletcher_exact, make_problem_fletcher, make_problem_sincos, ProblemSpec};
pub use semidiscrete::{apply_bc, eval_rhs, RhsField, VelocityField};
pub use simulation::{Progress, Solver};
pub use weights::{build_weight_set, WeightSet};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/semidiscrete.md")]
    mod semidiscrete {}
    #[doc = include_str!("../../../book/src/time-stepping.md")]
    mod time_stepping {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/errors.md")]
    mod errors {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
