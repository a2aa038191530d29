//! Cubic B-splines on a uniform knot sequence and the boundary-modified
//! basis used for differential quadrature.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Uniform node set along one axis together with its ghost knots.
///
/// Spline `m` (1-based, `0..=n+1`) is centred on knot `x_m`; knots `x_0` and
/// `x_{n+1}` sit one spacing outside the first and last node.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis1D {
    nodes: Vec<f64>,
    h: f64,
}

impl Basis1D {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 4 || nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBasis);
        }
        let n = nodes.len();
        let h = (nodes[n - 1] - nodes[0]) / (n - 1) as f64;
        let uniform = nodes
            .windows(2)
            .all(|w| w[1] > w[0] && ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
        if !uniform {
            return Err(Error::InvalidBasis);
        }
        Ok(Self { nodes, h })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Knot `x_m` for `m` in `0..=n+1`.
    pub fn knot(&self, m: usize) -> f64 {
        let n = self.nodes.len();
        match m {
            0 => self.nodes[0] - self.h,
            m if m == n + 1 => self.nodes[n - 1] + self.h,
            m => self.nodes[m - 1],
        }
    }

    /// Value (order 0) or derivative (order 1, 2) of the unmodified spline
    /// `phi_m` at `x`. Zero outside the open support `(x_{m-2}, x_{m+2})`.
    pub fn eval(&self, m: usize, x: f64, order: u8) -> Result<f64> {
        if order > 2 {
            return Err(Error::DerivativeOrder(order));
        }
        Ok(cubic(self.knot(m), self.h, x, order))
    }

    /// The boundary-modified spline `phi~_m`, `m` in `1..=n`:
    /// `phi~_1 = phi_1 + 2 phi_0`, `phi~_2 = phi_2 - phi_0`,
    /// `phi~_{n-1} = phi_{n-1} - phi_{n+1}`, `phi~_n = phi_n + 2 phi_{n+1}`.
    pub fn eval_modified(&self, m: usize, x: f64, order: u8) -> Result<f64> {
        let n = self.nodes.len();
        let mut value = self.eval(m, x, order)?;
        if m == 1 {
            value += 2.0 * self.eval(0, x, order)?;
        }
        if m == 2 {
            value -= self.eval(0, x, order)?;
        }
        if m == n - 1 {
            value -= self.eval(n + 1, x, order)?;
        }
        if m == n {
            value += 2.0 * self.eval(n + 1, x, order)?;
        }
        Ok(value)
    }
}

/// Free-function form of [`Basis1D::eval`].
pub fn eval_bspline(basis: &Basis1D, m: usize, x: f64, order: u8) -> Result<f64> {
    basis.eval(m, x, order)
}

// Piecewise cubic with 1/h^3 normalisation: 4 at the centre knot, 1 at its
// neighbours. `s` is the signed distance from the centre in units of h.
fn cubic(centre: f64, h: f64, x: f64, order: u8) -> f64 {
    let s = (x - centre) / h;
    let t = s.abs();
    let sign = s.signum();
    if t >= 2.0 {
        return 0.0;
    }
    if t >= 1.0 {
        let r = 2.0 - t;
        return match order {
            0 => r * r * r,
            1 => -3.0 * r * r * sign / h,
            _ => 6.0 * r / (h * h),
        };
    }
    let (p, q) = (2.0 - t, 1.0 - t);
    match order {
        0 => p * p * p - 4.0 * q * q * q,
        1 => sign * (-3.0 * p * p + 12.0 * q * q) / h,
        _ => (6.0 * p - 24.0 * q) / (h * h),
    }
}

/// Nodal tables of the modified basis: entry `(i, m)` holds `phi~_m(x_i)`
/// (first matrix) and `phi~'_m(x_i)` (second matrix), both 0-based.
pub fn modified_nodal_tables(basis: &Basis1D) -> (Array2<f64>, Array2<f64>) {
    let n = basis.len();
    let mut values = Array2::zeros((n, n));
    let mut derivs = Array2::zeros((n, n));
    for (i, &x) in basis.nodes().iter().enumerate() {
        for m in 1..=n {
            // orders 0 and 1 are always valid
            values[[i, m - 1]] = basis.eval_modified(m, x, 0).unwrap();
            derivs[[i, m - 1]] = basis.eval_modified(m, x, 1).unwrap();
        }
    }
    (values, derivs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn basis(n: usize, lo: f64, hi: f64) -> Basis1D {
        let h = (hi - lo) / (n - 1) as f64;
        Basis1D::new((0..n).map(|k| lo + k as f64 * h).collect()).unwrap()
    }

    #[test]
    fn nodal_values_of_standard_spline() {
        let b = basis(11, 0.0, 1.0);
        let h = b.spacing();
        for m in 2..=9 {
            let at = |k: usize, o: u8| b.eval(m, b.knot(k), o).unwrap();
            assert_abs_diff_eq!(at(m, 0), 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(at(m - 1, 0), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(at(m + 1, 0), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(at(m, 1), 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(at(m - 1, 1), 3.0 / h, epsilon = 1e-9);
            assert_abs_diff_eq!(at(m + 1, 1), -3.0 / h, epsilon = 1e-9);
            assert_abs_diff_eq!(at(m, 2), -12.0 / (h * h), epsilon = 1e-8);
            assert_abs_diff_eq!(at(m - 1, 2), 6.0 / (h * h), epsilon = 1e-8);
            assert_abs_diff_eq!(at(m + 1, 2), 6.0 / (h * h), epsilon = 1e-8);
            for o in 0..=2 {
                assert_abs_diff_eq!(b.eval(m, b.knot(m + 2), o).unwrap(), 0.0, epsilon = 1e-9);
                assert_abs_diff_eq!(b.eval(m, b.knot(m - 2), o).unwrap(), 0.0, epsilon = 1e-9);
                assert_eq!(b.eval(m, b.knot(m) + 2.5 * h, o).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn rejects_third_derivative() {
        let b = basis(5, 0.0, 1.0);
        assert!(matches!(b.eval(2, 0.5, 3), Err(Error::DerivativeOrder(3))));
    }

    #[test]
    fn rejects_short_or_uneven_nodes() {
        assert!(Basis1D::new(vec![0.0, 0.5, 1.0]).is_err());
        assert!(Basis1D::new(vec![0.0, 0.1, 0.5, 1.0]).is_err());
        assert!(Basis1D::new(vec![0.0, 1.0, 2.0, 2.0]).is_err());
    }

    // The pieces join with matching value, slope and curvature.
    #[test]
    fn spline_is_c2_at_knots() {
        let b = basis(9, 0.0, 1.0);
        let h = b.spacing();
        let m = 4;
        for k in (m - 2)..=(m + 2) {
            let x = b.knot(k);
            for o in 0..=2u8 {
                let left = b.eval(m, x - 1e-9 * h, o).unwrap();
                let right = b.eval(m, x + 1e-9 * h, o).unwrap();
                let scale = [1.0, 1.0 / h, 1.0 / (h * h)][o as usize];
                assert!((left - right).abs() <= 1e-6 * scale, "k={k} o={o}");
            }
        }
    }

    // Central differences of the value agree with the analytic derivative.
    #[test]
    fn derivatives_match_finite_differences() {
        let b = basis(9, 0.0, 1.0);
        let eps = 1e-6;
        for &x in &[0.21, 0.3, 0.37, 0.44, 0.52, 0.58] {
            let fd1 =
                (b.eval(4, x + eps, 0).unwrap() - b.eval(4, x - eps, 0).unwrap()) / (2.0 * eps);
            let fd2 =
                (b.eval(4, x + eps, 1).unwrap() - b.eval(4, x - eps, 1).unwrap()) / (2.0 * eps);
            assert!((fd1 - b.eval(4, x, 1).unwrap()).abs() < 1e-4);
            assert!((fd2 - b.eval(4, x, 2).unwrap()).abs() < 1e-2);
        }
    }

    #[test]
    fn modified_tables_structure() {
        let n = 8;
        let b = basis(n, 0.0, 1.0);
        let (values, _) = modified_nodal_tables(&b);
        for i in 2..n - 2 {
            for m in 0..n {
                let expect = match m as isize - i as isize {
                    0 => 4.0,
                    -1 | 1 => 1.0,
                    _ => 0.0,
                };
                assert_abs_diff_eq!(values[[i, m]], expect, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(values[[0, 0]], 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(values[[0, 1]], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(values[[n - 1, n - 1]], 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(values[[n - 1, n - 2]], 0.0, epsilon = 1e-12);
        for i in 0..n {
            assert_abs_diff_eq!(values.row(i).sum(), 6.0, epsilon = 1e-12);
            for m in 0..n {
                if (i as isize - m as isize).abs() > 1 {
                    assert!(values[[i, m]].abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn modified_boundary_derivatives() {
        let b = basis(6, 0.0, 1.0);
        let h = b.spacing();
        let (_, d) = modified_nodal_tables(&b);
        // phi~_1' = phi_1' + 2 phi_0', phi~_2' = phi_2' - phi_0'
        assert_abs_diff_eq!(d[[0, 0]], -6.0 / h, epsilon = 1e-9);
        assert_abs_diff_eq!(d[[0, 1]], 6.0 / h, epsilon = 1e-9);
        assert_abs_diff_eq!(d[[1, 0]], -3.0 / h, epsilon = 1e-9);
        assert_abs_diff_eq!(d[[5, 5]], 6.0 / h, epsilon = 1e-9);
        assert_abs_diff_eq!(d[[5, 4]], -6.0 / h, epsilon = 1e-9);
        // the derivative of a constant combination vanishes
        for i in 0..6 {
            assert_abs_diff_eq!(d.row(i).sum(), 0.0, epsilon = 1e-9);
        }
    }
}
