//! Wires a problem, a grid and its weights into a time integration.

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::integrator::{integrate, TimeLoopConfig, Trajectory};
use crate::problems::ProblemSpec;
use crate::semidiscrete::{apply_bc, eval_rhs, VelocityField};
use crate::weights::WeightSet;

/// Per-step progress, as reported to an observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Progress {
    pub step: usize,
    pub t: f64,
    pub max_u: f64,
    pub max_v: f64,
}

#[derive(Debug, Clone)]
pub struct Solver {
    problem: ProblemSpec,
    grid: Grid2D,
    weights: WeightSet,
}

impl Solver {
    /// Builds the weights for `intervals_x` x `intervals_y` intervals on the
    /// problem's domain.
    pub fn new(problem: ProblemSpec, intervals_x: usize, intervals_y: usize) -> Result<Self> {
        let (a, b, c, d) = problem.domain;
        let grid = Grid2D::new(a, b, c, d, intervals_x, intervals_y)?;
        problem.check_compatibility(&grid)?;
        let weights = WeightSet::build(&grid)?;
        Ok(Self {
            problem,
            grid,
            weights,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn initial_field(&self) -> VelocityField {
        VelocityField::from_fn(&self.grid, 0.0, |x, y| self.problem.ic(x, y))
    }

    /// Exact field at time `t`, when the problem has one.
    pub fn exact_field(&self, t: f64) -> Result<VelocityField> {
        if !self.problem.has_exact() {
            return Err(Error::MissingExact(self.problem.name.clone()));
        }
        Ok(VelocityField::from_fn(&self.grid, t, |x, y| {
            self.problem.exact(x, y, t).expect("checked above")
        }))
    }

    pub fn run(&self, cfg: &TimeLoopConfig) -> Result<Trajectory<VelocityField>> {
        self.run_with_progress(cfg, |_| {})
    }

    pub fn run_with_progress(
        &self,
        cfg: &TimeLoopConfig,
        mut progress: impl FnMut(Progress),
    ) -> Result<Trajectory<VelocityField>> {
        let re = self.problem.re();
        integrate(
            self.initial_field(),
            cfg,
            |f: &VelocityField, _t| eval_rhs(f, &self.weights, re),
            |f: &mut VelocityField, t| apply_bc(f, &self.problem, &self.grid, t),
            |step, t, f: &VelocityField| {
                let (max_u, max_v) = f.max_abs();
                progress(Progress {
                    step,
                    t,
                    max_u,
                    max_v,
                })
            },
        )
    }
}
