//! Benchmark problems: initial data, Dirichlet data and exact solutions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::Grid2D;

pub type SpatialFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type BoundaryFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
pub type ExactFn = Arc<dyn Fn(f64, f64, f64) -> (f64, f64) + Send + Sync>;

/// Largest mismatch tolerated between initial and boundary data at t = 0.
pub const COMPATIBILITY_TOL: f64 = 1e-12;

/// A coupled Burgers problem on a rectangle.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    /// `(a, b, c, d)` for `[a, b] x [c, d]`.
    pub domain: (f64, f64, f64, f64),
    re: f64,
    ic_u: SpatialFn,
    ic_v: SpatialFn,
    bc_u: BoundaryFn,
    bc_v: BoundaryFn,
    exact: Option<ExactFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("re", &self.re)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    /// Builds a problem and checks that initial and boundary data agree on
    /// a sampling of the boundary (65 points per side).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        domain: (f64, f64, f64, f64),
        re: f64,
        ic_u: SpatialFn,
        ic_v: SpatialFn,
        bc_u: BoundaryFn,
        bc_v: BoundaryFn,
        exact: Option<ExactFn>,
    ) -> Result<Self> {
        check_re(re)?;
        let p = Self {
            name: name.into(),
            domain,
            re,
            ic_u,
            ic_v,
            bc_u,
            bc_v,
            exact,
        };
        let (a, b, c, d) = domain;
        let probe = Grid2D::new(a, b, c, d, 64, 64)?;
        p.check_compatibility(&probe)?;
        Ok(p)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    /// Same problem with another Reynolds number. Problems whose data depend
    /// on `Re` should be rebuilt through their constructor instead.
    pub fn with_re(mut self, re: f64) -> Result<Self> {
        check_re(re)?;
        self.re = re;
        Ok(self)
    }

    pub fn ic(&self, x: f64, y: f64) -> (f64, f64) {
        ((self.ic_u)(x, y), (self.ic_v)(x, y))
    }

    pub fn ic_u(&self, x: f64, y: f64) -> f64 {
        (self.ic_u)(x, y)
    }

    pub fn ic_v(&self, x: f64, y: f64) -> f64 {
        (self.ic_v)(x, y)
    }

    pub fn bc_u(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.bc_u)(x, y, t)
    }

    pub fn bc_v(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.bc_v)(x, y, t)
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact(&self, x: f64, y: f64, t: f64) -> Option<(f64, f64)> {
        self.exact.as_ref().map(|f| f(x, y, t))
    }

    /// Initial and boundary data must agree on every boundary node of `grid`.
    pub fn check_compatibility(&self, grid: &Grid2D) -> Result<()> {
        let xs = grid.x_nodes();
        let ys = grid.y_nodes();
        for (i, j) in grid.boundary_nodes() {
            let (x, y) = (xs[i], ys[j]);
            let gap = (self.ic_u(x, y) - self.bc_u(x, y, 0.0))
                .abs()
                .max((self.ic_v(x, y) - self.bc_v(x, y, 0.0)).abs());
            if !(gap <= COMPATIBILITY_TOL) {
                return Err(Error::IncompatibleData { x, y, gap });
            }
        }
        Ok(())
    }
}

fn check_re(re: f64) -> Result<()> {
    if re > 0.0 && re.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidReynolds(re))
    }
}

/// `1 / (1 + e^z)` without overflow for large `|z|`.
fn logistic_complement(z: f64) -> f64 {
    if z > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

/// Closed-form solution of the travelling-front problem on the unit square.
///
/// `u + v = 3/2` holds exactly: both components share one logistic term.
pub fn fletcher_exact(x: f64, y: f64, t: f64, re: f64) -> (f64, f64) {
    let z = (-4.0 * x + 4.0 * y - t) * re / 32.0;
    let q = 0.25 * logistic_complement(z);
    (0.75 - q, 0.75 + q)
}

/// Travelling front on `[0, 1]^2`; initial and boundary data taken from
/// [`fletcher_exact`].
pub fn make_problem_fletcher(re: f64) -> Result<ProblemSpec> {
    check_re(re)?;
    ProblemSpec::new(
        "fletcher",
        (0.0, 1.0, 0.0, 1.0),
        re,
        Arc::new(move |x, y| fletcher_exact(x, y, 0.0, re).0),
        Arc::new(move |x, y| fletcher_exact(x, y, 0.0, re).1),
        Arc::new(move |x, y, t| fletcher_exact(x, y, t, re).0),
        Arc::new(move |x, y, t| fletcher_exact(x, y, t, re).1),
        Some(Arc::new(move |x, y, t| fletcher_exact(x, y, t, re))),
    )
}

/// Default Reynolds number of the sin/cos problem.
pub const SINCOS_DEFAULT_RE: f64 = 50.0;

const SINCOS_EDGE: f64 = 0.5;

/// Which side of `[0, 0.5]^2` a boundary point lies on. Sides on x take
/// precedence; at corners both formulas agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

fn sincos_side(x: f64, y: f64) -> Option<Side> {
    let tol = 1e-12;
    if x.abs() <= tol {
        Some(Side::Left)
    } else if (x - SINCOS_EDGE).abs() <= tol {
        Some(Side::Right)
    } else if y.abs() <= tol {
        Some(Side::Bottom)
    } else if (y - SINCOS_EDGE).abs() <= tol {
        Some(Side::Top)
    } else {
        None
    }
}

fn sincos_bc_u(x: f64, y: f64, _t: f64) -> f64 {
    match sincos_side(x, y) {
        Some(Side::Left) => (PI * y).cos(),
        Some(Side::Right) => 1.0 + (PI * y).cos(),
        Some(Side::Bottom) => 1.0 + (PI * x).sin(),
        Some(Side::Top) => (PI * x).sin(),
        // off the boundary the data are not defined; fall back to the
        // initial state, which satisfies every side formula.
        None => (PI * x).sin() + (PI * y).cos(),
    }
}

fn sincos_bc_v(x: f64, y: f64, _t: f64) -> f64 {
    match sincos_side(x, y) {
        Some(Side::Left) => y,
        Some(Side::Right) => 0.5 + y,
        Some(Side::Bottom) => x,
        Some(Side::Top) => x + 0.5,
        None => x + y,
    }
}

/// The sin/cos problem on `[0, 0.5]^2` with time-independent boundary data.
/// Uses `Re = 50` unless changed with [`ProblemSpec::with_re`].
pub fn make_problem_sincos() -> ProblemSpec {
    ProblemSpec::new(
        "sincos",
        (0.0, SINCOS_EDGE, 0.0, SINCOS_EDGE),
        SINCOS_DEFAULT_RE,
        Arc::new(|x, y| (PI * x).sin() + (PI * y).cos()),
        Arc::new(|x, y| x + y),
        Arc::new(sincos_bc_u),
        Arc::new(sincos_bc_v),
        None,
    )
    .expect("sin/cos data are compatible")
}

/// Looks up a problem by its CLI name.
pub fn problem_by_name(name: &str, re: f64) -> Result<ProblemSpec> {
    match name {
        "fletcher" => make_problem_fletcher(re),
        "sincos" => make_problem_sincos().with_re(re),
        other => Err(Error::Config(format!(
            "unknown problem '{other}' (expected 'fletcher' or 'sincos')"
        ))),
    }
}
