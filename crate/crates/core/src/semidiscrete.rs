//! Method-of-lines right-hand side for the coupled Burgers system.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::problems::ProblemSpec;
use crate::weights::WeightSet;

/// Nodal velocities at one time level. Arrays are indexed `[i, j]` with `i`
/// along x.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityField {
    pub u: Array2<f64>,
    pub v: Array2<f64>,
    pub t: f64,
}

impl VelocityField {
    pub fn new(u: Array2<f64>, v: Array2<f64>, t: f64) -> Result<Self> {
        if u.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: v.dim(),
            });
        }
        Ok(Self { u, v, t })
    }

    /// Samples `f(x, y) -> (u, v)` on every node.
    pub fn from_fn(grid: &Grid2D, t: f64, f: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        let xs = grid.x_nodes();
        let ys = grid.y_nodes();
        let mut u = Array2::zeros(grid.shape());
        let mut v = Array2::zeros(grid.shape());
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                let (a, b) = f(x, y);
                u[[i, j]] = a;
                v[[i, j]] = b;
            }
        }
        Self { u, v, t }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.u.dim()
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().chain(self.v.iter()).all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> (f64, f64) {
        let m = |a: &Array2<f64>| a.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        (m(&self.u), m(&self.v))
    }
}

/// Time derivatives of both components. Boundary entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsField {
    pub du: Array2<f64>,
    pub dv: Array2<f64>,
}

/// Evaluates the semi-discrete right-hand side at every interior node.
///
/// The weight matrices are dense, so boundary values enter every interior
/// derivative.
pub fn eval_rhs(field: &VelocityField, weights: &WeightSet, re: f64) -> Result<RhsField> {
    if !(re > 0.0) || !re.is_finite() {
        return Err(Error::InvalidReynolds(re));
    }
    if field.shape() != weights.shape() {
        return Err(Error::DimensionMismatch {
            expected: weights.shape(),
            found: field.shape(),
        });
    }
    if !field.is_finite() {
        return Err(Error::NonFinite("velocity field"));
    }
    let nu = 1.0 / re;
    let (u, v) = (&field.u, &field.v);
    // d/dx acts on the first axis (W . F), d/dy on the second (F . W^T).
    let ux = weights.wx1.dot(u);
    let uy = u.dot(&weights.wy1.t());
    let lap_u = weights.wx2.dot(u) + u.dot(&weights.wy2.t());
    let vx = weights.wx1.dot(v);
    let vy = v.dot(&weights.wy1.t());
    let lap_v = weights.wx2.dot(v) + v.dot(&weights.wy2.t());

    let mut du = lap_u * nu - u * &ux - v * &uy;
    let mut dv = lap_v * nu - u * &vx - v * &vy;
    zero_boundary(&mut du);
    zero_boundary(&mut dv);
    Ok(RhsField { du, dv })
}

fn zero_boundary(a: &mut Array2<f64>) {
    let (m, n) = a.dim();
    a.row_mut(0).fill(0.0);
    a.row_mut(m - 1).fill(0.0);
    a.column_mut(0).fill(0.0);
    a.column_mut(n - 1).fill(0.0);
}

/// Overwrites boundary nodes with the problem's Dirichlet data at time `t`.
pub fn apply_bc(field: &mut VelocityField, problem: &ProblemSpec, grid: &Grid2D, t: f64) {
    let xs = grid.x_nodes();
    let ys = grid.y_nodes();
    for (i, j) in grid.boundary_nodes() {
        let (x, y) = (xs[i], ys[j]);
        field.u[[i, j]] = problem.bc_u(x, y, t);
        field.v[[i, j]] = problem.bc_v(x, y, t);
    }
}
