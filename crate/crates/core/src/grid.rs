//! Uniform Cartesian grids, cell-average storage and Gauss quadrature.

use crate::error::{Error, Result};
use crate::poly::sym_sum;

/// Uniform 1D grid of `n` cells on `[x_lo, x_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::config(format!("1D grid needs at least 3 cells, got {n}")));
        }
        if !(x_hi > x_lo) || !x_lo.is_finite() || !x_hi.is_finite() {
            return Err(Error::config(format!("bad 1D bounds [{x_lo}, {x_hi}]")));
        }
        Ok(Self {
            x_lo,
            x_hi,
            n,
            dx: (x_hi - x_lo) / n as f64,
        })
    }

    pub fn center(&self, j: usize) -> f64 {
        self.x_lo + (j as f64 + 0.5) * self.dx
    }

    pub fn cell_bounds(&self, j: usize) -> (f64, f64) {
        let xc = self.center(j);
        (xc - 0.5 * self.dx, xc + 0.5 * self.dx)
    }

    pub fn ncells(&self) -> usize {
        self.n
    }
}

/// Uniform 2D grid with square cells. Cell `(i, j)` is stored at `j * nx + i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
}

impl Grid2D {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::config(format!("2D grid needs at least 3x3 cells, got {nx}x{ny}")));
        }
        if !(x_hi > x_lo && y_hi > y_lo) {
            return Err(Error::config("bad 2D bounds"));
        }
        let dx = (x_hi - x_lo) / nx as f64;
        let dy = (y_hi - y_lo) / ny as f64;
        if ((dx - dy) / dx).abs() > 1e-12 {
            return Err(Error::config(format!(
                "2D cells must be square: dx = {dx}, dy = {dy}"
            )));
        }
        Ok(Self {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
            nx,
            ny,
            dx,
        })
    }

    pub fn ncells(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x_lo + (i as f64 + 0.5) * self.dx,
            self.y_lo + (j as f64 + 0.5) * self.dx,
        )
    }
}

/// Cell averages of `m` conserved components, stored cell-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    m: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(ncells: usize, m: usize) -> Self {
        Self {
            m,
            data: vec![0.0; ncells * m],
        }
    }

    pub fn from_vec(m: usize, data: Vec<f64>) -> Result<Self> {
        if m == 0 || !data.len().is_multiple_of(m) {
            return Err(Error::config(format!(
                "field data length {} is not a multiple of {m} components",
                data.len()
            )));
        }
        Ok(Self { m, data })
    }

    pub fn components(&self) -> usize {
        self.m
    }

    pub fn ncells(&self) -> usize {
        self.data.len() / self.m
    }

    #[inline]
    pub fn cell(&self, c: usize) -> &[f64] {
        &self.data[c * self.m..(c + 1) * self.m]
    }

    #[inline]
    pub fn cell_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.data[c * self.m..(c + 1) * self.m]
    }

    #[inline]
    pub fn get(&self, c: usize, k: usize) -> f64 {
        self.data[c * self.m + k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: f64, other: &Field) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (s, o) in self.data.iter_mut().zip(&other.data) {
            *s += a * o;
        }
    }

    /// Sum of each component over all cells, times `volume`, in cell order.
    pub fn totals(&self, volume: f64) -> Vec<f64> {
        let mut t = vec![0.0; self.m];
        for cell in self.data.chunks(self.m) {
            for (acc, v) in t.iter_mut().zip(cell) {
                *acc += v * volume;
            }
        }
        t
    }
}

/// Gauss-Legendre rule on the reference interval `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// `k`-point Gauss-Legendre rule, exact for polynomials of degree `2k - 1`.
    pub fn legendre(k: usize) -> Self {
        assert!(k >= 1, "Gauss rule needs at least one node");
        let mut nodes = vec![0.0; k];
        let mut weights = vec![0.0; k];
        // Newton iteration on P_k over [-1, 1], then map to [-1/2, 1/2].
        for i in 0..k.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(k, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(k, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -0.5 * x;
            nodes[k - 1 - i] = 0.5 * x;
            weights[i] = 0.5 * w;
            weights[k - 1 - i] = 0.5 * w;
        }
        if k % 2 == 1 {
            nodes[k / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn legendre_with_derivative(k: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for n in 2..=k {
        let p2 = ((2 * n - 1) as f64 * x * p1 - (n - 1) as f64 * p0) / n as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature approximation of the mean of `f` over the cell `[lo, hi]`.
pub fn cell_average_of_function<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rule: &GaussRule) -> f64 {
    let xc = 0.5 * (lo + hi);
    let h = hi - lo;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&s, &w)| w * f(xc + s * h))
        .sum()
}

/// Tensor-product mean of `f` over the square cell centered at `(xc, yc)` with side `h`.
pub fn cell_average_2d<F: Fn(f64, f64) -> f64>(f: F, xc: f64, yc: f64, h: f64, rule: &GaussRule) -> f64 {
    let mut acc = 0.0;
    for (&sy, &wy) in rule.nodes.iter().zip(&rule.weights) {
        for (&sx, &wx) in rule.nodes.iter().zip(&rule.weights) {
            acc += wx * wy * f(xc + sx * h, yc + sy * h);
        }
    }
    acc
}

/// Vector-valued version of [`cell_average_of_function`]: `f` writes `m` values.
pub fn cell_average_vec_1d<F: Fn(f64, &mut [f64])>(f: F, lo: f64, hi: f64, rule: &GaussRule, out: &mut [f64]) {
    let xc = 0.5 * (lo + hi);
    let h = hi - lo;
    let mut tmp = vec![0.0; out.len()];
    out.iter_mut().for_each(|v| *v = 0.0);
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        f(xc + s * h, &mut tmp);
        for (o, t) in out.iter_mut().zip(&tmp) {
            *o += w * t;
        }
    }
}

/// Vector-valued tensor-product cell mean: `f` writes `m` values.
///
/// The per-node terms are summed with [`sym_sum`], so transposed data give
/// bitwise-transposed averages.
pub fn cell_average_vec_2d<F: Fn(f64, f64, &mut [f64])>(
    f: F,
    xc: f64,
    yc: f64,
    h: f64,
    rule: &GaussRule,
    out: &mut [f64],
) {
    let m = out.len();
    let nq = rule.len() * rule.len();
    let mut terms = vec![0.0; m * nq];
    let mut tmp = vec![0.0; m];
    let mut q = 0;
    for (&sy, &wy) in rule.nodes.iter().zip(&rule.weights) {
        for (&sx, &wx) in rule.nodes.iter().zip(&rule.weights) {
            f(xc + sx * h, yc + sy * h, &mut tmp);
            for (k, t) in tmp.iter().enumerate() {
                terms[k * nq + q] = (wx * wy) * t;
            }
            q += 1;
        }
    }
    for (k, o) in out.iter_mut().enumerate() {
        *o = sym_sum(&mut terms[k * nq..(k + 1) * nq]);
    }
}

/// Side of a 2D cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    N,
    S,
    E,
    W,
}

/// Offset of the 2-point Gauss nodes from an edge midpoint, in units of the cell size.
pub const GAUSS2_OFFSET: f64 = 0.288_675_134_594_812_9; // 1 / (2 sqrt 3)

/// The two Gauss-Legendre points on a side of the square cell centered at
/// `(xc, yc)` with size `dx`, ordered by increasing tangential coordinate.
pub fn edge_gauss_points_2d(xc: f64, yc: f64, dx: f64, side: Side) -> [(f64, f64); 2] {
    let h = 0.5 * dx;
    let g = GAUSS2_OFFSET * dx;
    match side {
        Side::E => [(xc + h, yc - g), (xc + h, yc + g)],
        Side::W => [(xc - h, yc - g), (xc - h, yc + g)],
        Side::N => [(xc - g, yc + h), (xc + g, yc + h)],
        Side::S => [(xc - g, yc - h), (xc + g, yc - h)],
    }
}
