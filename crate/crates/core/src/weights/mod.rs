//! Differential quadrature weighting coefficients from the modified cubic
//! B-spline basis.
//!
//! First-order weights come from collocation: for every node `x_i` the row
//! `W1[i, ..]` satisfies
//!
//! ```text
//! sum_k W1[i, k] * phi~_m(x_k) = phi~'_m(x_i),   m = 1..n
//! ```
//!
//! The system matrix `A[m][k] = phi~_m(x_k)` is tridiagonal and the same for
//! every `i`, so it is factored once and all right-hand sides are solved
//! together. Second-order weights follow from the first-order ones through
//! the explicit recurrence
//!
//! ```text
//! W2[i, j] = 2 * (W1[i, j] * W1[i, i] - W1[i, j] / (x_i - x_j)),  i != j
//! W2[i, i] = -sum_{j != i} W2[i, j]
//! ```

mod bspline;
mod tridiag;

use std::io::Write;

use ndarray::Array2;

pub use bspline::{eval_bspline, modified_nodal_tables, Basis1D};
pub use tridiag::{thomas_solve, TridiagonalSystem};

use crate::error::Result;
use crate::grid::Grid2D;

/// First-order weight matrix for one axis.
pub fn first_order_weights(basis: &Basis1D) -> Result<Array2<f64>> {
    let (values, derivs) = modified_nodal_tables(basis);
    // A[m][k] = values[k][m]; column i of the right-hand side is phi~'_m(x_i).
    let system = TridiagonalSystem::from_banded(values.t())?;
    let solved = system.solve_columns(derivs.t())?;
    Ok(solved.reversed_axes().as_standard_layout().into_owned())
}

/// Second-order weight matrix from the first-order weights.
pub fn second_order_weights(w1: &Array2<f64>, nodes: &[f64]) -> Array2<f64> {
    let n = nodes.len();
    assert_eq!(w1.dim(), (n, n), "weight matrix does not match node count");
    let mut w2 = Array2::zeros((n, n));
    for i in 0..n {
        let wii = w1[[i, i]];
        let mut diag = 0.0;
        for j in 0..n {
            if j != i {
                let wij = w1[[i, j]];
                let v = 2.0 * (wij * wii - wij / (nodes[i] - nodes[j]));
                w2[[i, j]] = v;
                diag -= v;
            }
        }
        w2[[i, i]] = diag;
    }
    w2
}

/// First- and second-order weights for one axis.
pub fn axis_weights(nodes: Vec<f64>) -> Result<(Array2<f64>, Array2<f64>)> {
    let basis = Basis1D::new(nodes)?;
    let w1 = first_order_weights(&basis)?;
    let w2 = second_order_weights(&w1, basis.nodes());
    Ok((w1, w2))
}

/// The four weight matrices of a grid, computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    pub wx1: Array2<f64>,
    pub wx2: Array2<f64>,
    pub wy1: Array2<f64>,
    pub wy2: Array2<f64>,
    grid: Grid2D,
}

impl WeightSet {
    pub fn build(grid: &Grid2D) -> Result<Self> {
        let (wx1, wx2) = axis_weights(grid.x_nodes())?;
        let (wy1, wy2) = axis_weights(grid.y_nodes())?;
        Ok(Self {
            wx1,
            wx2,
            wy1,
            wy2,
            grid: grid.clone(),
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn shape(&self) -> (usize, usize) {
        self.grid.shape()
    }
}

/// Free-function form of [`WeightSet::build`].
pub fn build_weight_set(grid: &Grid2D) -> Result<WeightSet> {
    WeightSet::build(grid)
}

/// Writes a matrix as row-major CSV with 17 significant digits.
pub fn write_matrix_csv<W: Write>(matrix: &Array2<f64>, mut out: W) -> std::io::Result<()> {
    for row in matrix.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
