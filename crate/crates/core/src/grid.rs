//! Uniform tensor-product grids over a rectangle.
//!
//! Indices in the public API are 1-based: node `(1, 1)` is the lower-left
//! corner `(a, c)` and node `(M, N)` is the upper-right corner `(b, d)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    m: usize,
    n: usize,
    dx: f64,
    dy: f64,
}

impl Grid2D {
    /// Builds a grid with `intervals_x + 1` nodes in x and `intervals_y + 1`
    /// nodes in y.
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        intervals_x: usize,
        intervals_y: usize,
    ) -> Result<Self> {
        if !(b > a) || !(d > c) || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::DegenerateDomain { a, b, c, d });
        }
        for (axis, intervals) in [('x', intervals_x), ('y', intervals_y)] {
            if intervals < 3 {
                return Err(Error::TooFewIntervals { axis, intervals });
            }
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            m: intervals_x + 1,
            n: intervals_y + 1,
            dx: (b - a) / intervals_x as f64,
            dy: (d - c) / intervals_y as f64,
        })
    }

    /// Unit-square style constructor with the same interval count on both axes.
    pub fn square(lo: f64, hi: f64, intervals: usize) -> Result<Self> {
        Self::new(lo, hi, lo, hi, intervals, intervals)
    }

    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Node count in x.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Node count in y.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn intervals(&self) -> (usize, usize) {
        (self.m - 1, self.n - 1)
    }

    /// Coordinates of node `(i, j)`, 1-based.
    pub fn node(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        if i == 0 || j == 0 || i > self.m || j > self.n {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                m: self.m,
                n: self.n,
            });
        }
        Ok((self.x(i - 1), self.y(j - 1)))
    }

    /// x coordinate of the 0-based column `k`. The last node is pinned to `b`.
    pub(crate) fn x(&self, k: usize) -> f64 {
        axis_coord(self.a, self.b, self.dx, k, self.m)
    }

    pub(crate) fn y(&self, k: usize) -> f64 {
        axis_coord(self.c, self.d, self.dy, k, self.n)
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        (0..self.m).map(|k| self.x(k)).collect()
    }

    pub fn y_nodes(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.y(k)).collect()
    }

    /// 0-based position of a coordinate that lies on a node, within
    /// `1e-9` of the spacing.
    pub fn locate(&self, x: f64, y: f64) -> Result<(usize, usize)> {
        let snap = |v: f64, lo: f64, h: f64, count: usize| -> Option<usize> {
            let s = (v - lo) / h;
            let k = s.round();
            if k < 0.0 || k as usize >= count || (s - k).abs() > 1e-9 {
                None
            } else {
                Some(k as usize)
            }
        };
        match (
            snap(x, self.a, self.dx, self.m),
            snap(y, self.c, self.dy, self.n),
        ) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(Error::OffNode { x, y }),
        }
    }

    /// True when the 0-based node `(i, j)` lies on the domain boundary.
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i + 1 == self.m || j + 1 == self.n
    }

    /// 0-based indices of all boundary nodes, each corner listed once.
    pub fn boundary_nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.is_boundary(i, j))
    }
}

fn axis_coord(lo: f64, hi: f64, h: f64, k: usize, count: usize) -> f64 {
    if k + 1 == count {
        hi
    } else {
        lo + k as f64 * h
    }
}
