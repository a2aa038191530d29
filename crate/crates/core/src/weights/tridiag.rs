//! Thomas algorithm for tridiagonal systems.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Pivots at or below this fraction of the largest diagonal entry are
/// treated as zero.
const PIVOT_TOL: f64 = 1e-14;

/// `A x = rhs` with `A` given by its three diagonals.
///
/// `sub[k]` is `A[k+1][k]`, `sup[k]` is `A[k][k+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: (n.saturating_sub(1), n.saturating_sub(1)),
                found: (sub.len(), sup.len()),
            });
        }
        Ok(Self { sub, diag, sup })
    }

    /// Extracts the three diagonals of a square matrix. Entries off the band
    /// are ignored.
    pub fn from_banded(a: ArrayView2<'_, f64>) -> Result<Self> {
        let (r, c) = a.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: (r, r),
                found: (r, c),
            });
        }
        let diag = (0..r).map(|k| a[[k, k]]).collect();
        let sub = (1..r).map(|k| a[[k, k - 1]]).collect();
        let sup = (1..r).map(|k| a[[k - 1, k]]).collect();
        Self::new(sub, diag, sup)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn to_dense(&self) -> Array2<f64> {
        let n = self.len();
        let mut a = Array2::zeros((n, n));
        for k in 0..n {
            a[[k, k]] = self.diag[k];
            if k + 1 < n {
                a[[k + 1, k]] = self.sub[k];
                a[[k, k + 1]] = self.sup[k];
            }
        }
        a
    }

    /// Forward elimination, shared by every right-hand side.
    fn factor(&self) -> Result<Factored> {
        let n = self.len();
        let scale = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let tol = PIVOT_TOL * scale;
        let mut pivots = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n.saturating_sub(1));
        let mut pivot = self.diag[0];
        for k in 0..n {
            if k > 0 {
                pivot = self.diag[k] - self.sub[k - 1] * upper[k - 1];
            }
            if !(pivot.abs() > tol) {
                return Err(Error::SingularSystem { row: k, pivot });
            }
            pivots.push(pivot);
            if k + 1 < n {
                upper.push(self.sup[k] / pivot);
            }
        }
        Ok(Factored { pivots, upper })
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: (self.len(), 1),
                found: (rhs.len(), 1),
            });
        }
        let f = self.factor()?;
        let mut x = rhs.to_vec();
        f.substitute(&self.sub, &mut x);
        Ok(x)
    }

    /// Solves for every column of `rhs` at once.
    pub fn solve_columns(&self, rhs: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        let (r, c) = rhs.dim();
        if r != self.len() {
            return Err(Error::DimensionMismatch {
                expected: (self.len(), c),
                found: (r, c),
            });
        }
        let f = self.factor()?;
        let mut out = rhs.to_owned();
        let mut col = vec![0.0; r];
        for j in 0..c {
            for k in 0..r {
                col[k] = out[[k, j]];
            }
            f.substitute(&self.sub, &mut col);
            for k in 0..r {
                out[[k, j]] = col[k];
            }
        }
        Ok(out)
    }
}

struct Factored {
    pivots: Vec<f64>,
    upper: Vec<f64>,
}

impl Factored {
    fn substitute(&self, sub: &[f64], x: &mut [f64]) {
        let n = x.len();
        x[0] /= self.pivots[0];
        for k in 1..n {
            x[k] = (x[k] - sub[k - 1] * x[k - 1]) / self.pivots[k];
        }
        for k in (0..n - 1).rev() {
            x[k] -= self.upper[k] * x[k + 1];
        }
    }
}

/// Free-function form of [`TridiagonalSystem::solve`].
pub fn thomas_solve(sys: &TridiagonalSystem, rhs: &[f64]) -> Result<Vec<f64>> {
    sys.solve(rhs)
}
