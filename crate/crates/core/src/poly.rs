//! Degree ≤ 2 polynomials anchored on a cell, stencil fits and Jiang-Shu
//! oscillation indicators.
//!
//! Polynomials are stored in the scaled basis `ξ = (x - x_c)/dx`,
//! `η = (y - y_c)/dy`:
//!
//! ```text
//! 1D:  {1, ξ, ξ² - 1/12}
//! 2D:  {1, ξ, η, ξ² - 1/12, ξη, η² - 1/12}
//! ```
//!
//! Every non-constant basis function has zero mean on the anchor cell, so the
//! anchor-average constraint of a constrained least-squares fit pins `c0`.
//! On the neighbour cell with integer offset `(k, l)` the basis averages are
//! `(1, k, l, k², kl, l²)`, which makes all fitting matrices integral.

use num_rational::Ratio;

use crate::error::{Error, Result};

const Q: f64 = 1.0 / 12.0;

/// Sums `terms` in a value-determined order.
///
/// Two callers holding the same multiset of terms get bitwise-identical
/// results, and negating every term negates the result exactly: positive and
/// negative parts are accumulated separately in increasing magnitude. This
/// keeps the 2D scheme exactly invariant under the grid symmetries
/// (reflections and the diagonal swap).
#[inline]
pub fn sym_sum(terms: &mut [f64]) -> f64 {
    for i in 1..terms.len() {
        let mut k = i;
        while k > 0 && terms[k - 1].abs() > terms[k].abs() {
            terms.swap(k - 1, k);
            k -= 1;
        }
    }
    let (mut pos, mut neg) = (0.0, 0.0);
    for &t in terms.iter() {
        if t > 0.0 {
            pos += t;
        } else if t < 0.0 {
            neg -= t;
        }
    }
    pos - neg
}

/// Quadratic polynomial on a 1D cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellPoly1D {
    pub center: f64,
    pub dx: f64,
    pub c: [f64; 3],
}

impl CellPoly1D {
    pub fn new(center: f64, dx: f64, c: [f64; 3]) -> Self {
        Self { center, dx, c }
    }

    pub fn constant(center: f64, dx: f64, v: f64) -> Self {
        Self::new(center, dx, [v, 0.0, 0.0])
    }

    /// Converts a monomial `a0 + a1 x + a2 x²` to the scaled basis of the cell.
    pub fn from_monomial(center: f64, dx: f64, a: [f64; 3]) -> Self {
        // x = xc + dx ξ
        let c2 = a[2] * dx * dx;
        let c1 = (a[1] + 2.0 * a[2] * center) * dx;
        let c0 = a[0] + a[1] * center + a[2] * center * center + c2 * Q;
        Self::new(center, dx, [c0, c1, c2])
    }

    #[inline]
    pub fn eval_local(&self, xi: f64) -> f64 {
        self.c[0] + self.c[1] * xi + self.c[2] * (xi * xi - Q)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_local((x - self.center) / self.dx)
    }

    /// Value at the left (`ξ = -1/2`) and right (`ξ = 1/2`) faces.
    #[inline]
    pub fn face_values(&self) -> (f64, f64) {
        let even = self.c[0] + self.c[2] / 6.0;
        let odd = 0.5 * self.c[1];
        (even - odd, even + odd)
    }

    /// Exact mean over the cell whose center is `k` cell widths away.
    pub fn average_on_offset(&self, k: i64) -> f64 {
        let k = k as f64;
        self.c[0] + self.c[1] * k + self.c[2] * k * k
    }

    /// Exact mean over the interval `[lo, hi]`.
    pub fn average_over(&self, lo: f64, hi: f64) -> f64 {
        let a = (lo - self.center) / self.dx;
        let b = (hi - self.center) / self.dx;
        let m1 = 0.5 * (a + b);
        let m2 = (a * a + a * b + b * b) / 3.0 - Q;
        self.c[0] + self.c[1] * m1 + self.c[2] * m2
    }

    /// Jiang-Shu indicator `Σ_ℓ dx^(2ℓ-1) ∫ (d^ℓ P / dx^ℓ)²` over the anchor cell,
    /// which in the scaled basis reduces to `c1² + 13/3 c2²`.
    #[inline]
    pub fn osc(&self) -> f64 {
        self.c[1] * self.c[1] + (13.0 / 3.0) * self.c[2] * self.c[2]
    }

    /// Physical derivative `dP/dx` at `x`.
    pub fn derivative(&self, x: f64) -> f64 {
        let xi = (x - self.center) / self.dx;
        (self.c[1] + 2.0 * self.c[2] * xi) / self.dx
    }
}

/// Quadratic polynomial on a square 2D cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellPoly2D {
    pub center: (f64, f64),
    pub dx: f64,
    pub c: [f64; 6],
}

impl CellPoly2D {
    pub fn new(center: (f64, f64), dx: f64, c: [f64; 6]) -> Self {
        Self { center, dx, c }
    }

    pub fn constant(center: (f64, f64), dx: f64, v: f64) -> Self {
        Self::new(center, dx, [v, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Evaluates at scaled coordinates. The grouping pairs the x/y mirror
    /// terms so the result is invariant under the grid symmetries.
    #[inline]
    pub fn eval_local(&self, xi: f64, eta: f64) -> f64 {
        let c = &self.c;
        let lin = c[1] * xi + c[2] * eta;
        let quad = (c[3] * (xi * xi - Q) + c[5] * (eta * eta - Q)) + c[4] * (xi * eta);
        c[0] + (lin + quad)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_local((x - self.center.0) / self.dx, (y - self.center.1) / self.dx)
    }

    /// Exact mean over the cell offset by `(k, l)` cells.
    pub fn average_on_offset(&self, k: i64, l: i64) -> f64 {
        let (k, l) = (k as f64, l as f64);
        let c = &self.c;
        c[0] + c[1] * k + c[2] * l + c[3] * k * k + c[4] * k * l + c[5] * l * l
    }

    /// Multidimensional Jiang-Shu indicator
    /// `Σ_{1≤|α|≤2} dx^(2|α|-2) ∫∫_Ω (D^α P)²`, i.e.
    /// `c1² + c2² + 13/3 (c3² + c5²) + 7/6 c4²`.
    #[inline]
    pub fn osc(&self) -> f64 {
        let c = &self.c;
        (c[1] * c[1] + c[2] * c[2]) + (13.0 / 3.0) * (c[3] * c[3] + c[5] * c[5]) + (7.0 / 6.0) * (c[4] * c[4])
    }
}

/// Polynomial space a stencil fit is sought in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subspace {
    Constant,
    /// `{1, ξ}`: linear in x, constant in y.
    XLinear,
    /// `{1, η}`: linear in y, constant in x.
    YLinear,
    /// `{1, ξ, η}`.
    Linear,
    /// `{1, ξ, ξ²-1/12}` (1D quadratics).
    XQuadratic,
    /// Full 2D quadratics.
    Quadratic,
}

impl Subspace {
    /// Indices (into the 6-coefficient 2D layout) of the non-constant basis functions.
    pub fn basis(self) -> &'static [usize] {
        match self {
            Subspace::Constant => &[],
            Subspace::XLinear => &[1],
            Subspace::YLinear => &[2],
            Subspace::Linear => &[1, 2],
            Subspace::XQuadratic => &[1, 3],
            Subspace::Quadratic => &[1, 2, 3, 4, 5],
        }
    }

    pub fn dim(self) -> usize {
        self.basis().len() + 1
    }

    /// The subspace seen after exchanging the x and y axes.
    pub fn transposed(self) -> Self {
        match self {
            Subspace::XLinear => Subspace::YLinear,
            Subspace::YLinear => Subspace::XLinear,
            other => other,
        }
    }
}

/// Mean of 2D basis function `b` over the cell at offset `(k, l)`.
fn basis_average(b: usize, k: i64, l: i64) -> i64 {
    match b {
        0 => 1,
        1 => k,
        2 => l,
        3 => k * k,
        4 => k * l,
        5 => l * l,
        _ => unreachable!("basis index {b}"),
    }
}

/// Cells (as offsets from the anchor) feeding one polynomial fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stencil {
    pub offsets: Vec<(i32, i32)>,
    pub subspace: Subspace,
}

impl Stencil {
    pub fn new(offsets: Vec<(i32, i32)>, subspace: Subspace) -> Self {
        Self { offsets, subspace }
    }

    /// 1D stencil: offsets along x only.
    pub fn line(offsets: &[i32], subspace: Subspace) -> Self {
        Self::new(offsets.iter().map(|&k| (k, 0)).collect(), subspace)
    }

    /// Rectangular block of offsets `[k0, k1] × [l0, l1]`, row by row.
    pub fn block(k0: i32, k1: i32, l0: i32, l1: i32, subspace: Subspace) -> Self {
        let mut offsets = Vec::new();
        for l in l0..=l1 {
            for k in k0..=k1 {
                offsets.push((k, l));
            }
        }
        Self::new(offsets, subspace)
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Applies a linear map on offsets; `swaps_axes` tells whether x and y are exchanged.
    pub fn mapped(&self, map: impl Fn(i32, i32) -> (i32, i32), swaps_axes: bool) -> Self {
        Self {
            offsets: self.offsets.iter().map(|&(k, l)| map(k, l)).collect(),
            subspace: if swaps_axes {
                self.subspace.transposed()
            } else {
                self.subspace
            },
        }
    }

    fn describe(&self) -> String {
        format!("{:?} on {:?}", self.subspace, self.offsets)
    }
}

/// Precomputed anchored fit: `c_b = Σ_k R[b][k] (ū_k − ū_anchor)`, `c0 = ū_anchor`.
///
/// `R` is the pseudo-inverse of the reduced (anchor-eliminated) system,
/// evaluated in exact rational arithmetic and rounded once, so that
/// geometrically equivalent stencils get identical weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOp {
    stencil: Stencil,
    anchor: usize,
    /// `(basis index, weight per stencil cell)`
    rows: Vec<(usize, Vec<f64>)>,
}

type Rat = Ratio<i128>;

impl FitOp {
    pub fn new(stencil: &Stencil) -> Result<Self> {
        let anchor = stencil
            .offsets
            .iter()
            .position(|&o| o == (0, 0))
            .ok_or_else(|| Error::config(format!("stencil without anchor cell: {}", stencil.describe())))?;
        let basis = stencil.subspace.basis();
        let nb = basis.len();
        if stencil.len() < stencil.subspace.dim() {
            return Err(Error::config(format!(
                "stencil has {} cells but the subspace has dimension {}",
                stencil.len(),
                stencil.subspace.dim()
            )));
        }
        if nb == 0 {
            return Ok(Self {
                stencil: stencil.clone(),
                anchor,
                rows: Vec::new(),
            });
        }
        let a: Vec<Vec<i128>> = stencil
            .offsets
            .iter()
            .map(|&(k, l)| basis.iter().map(|&b| basis_average(b, k as i64, l as i64) as i128).collect())
            .collect();
        // Normal matrix augmented with Aᵀ, reduced by Gauss-Jordan.
        let ncell = stencil.len();
        let mut m: Vec<Vec<Rat>> = (0..nb)
            .map(|r| {
                let mut row: Vec<Rat> = (0..nb)
                    .map(|c| Rat::from_integer(a.iter().map(|ar| ar[r] * ar[c]).sum()))
                    .collect();
                row.extend(a.iter().map(|ar| Rat::from_integer(ar[r])));
                row
            })
            .collect();
        for col in 0..nb {
            let piv = (col..nb)
                .find(|&r| m[r][col] != Rat::from_integer(0))
                .ok_or_else(|| Error::SingularStencil(stencil.describe()))?;
            m.swap(col, piv);
            let p = m[col][col];
            for v in m[col].iter_mut() {
                *v /= p;
            }
            for r in 0..nb {
                if r != col && m[r][col] != Rat::from_integer(0) {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let rows = basis
            .iter()
            .enumerate()
            .map(|(r, &b)| {
                let w = (0..ncell)
                    .map(|k| {
                        let q = m[r][nb + k];
                        *q.numer() as f64 / *q.denom() as f64
                    })
                    .collect();
                (b, w)
            })
            .collect();
        Ok(Self {
            stencil: stencil.clone(),
            anchor,
            rows,
        })
    }

    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    /// Weight of stencil cell `k` in coefficient `b`, if `b` is in the subspace.
    pub fn weight(&self, b: usize, k: usize) -> Option<f64> {
        self.rows.iter().find(|(bb, _)| *bb == b).map(|(_, w)| w[k])
    }

    /// Fits from the averages `values` (aligned with the stencil offsets).
    #[inline]
    pub fn apply(&self, values: &[f64]) -> [f64; 6] {
        debug_assert_eq!(values.len(), self.stencil.len());
        let a = values[self.anchor];
        let mut c = [0.0; 6];
        c[0] = a;
        let mut buf = [0.0f64; 16];
        for (b, w) in &self.rows {
            let n = w.len();
            for k in 0..n {
                buf[k] = w[k] * (values[k] - a);
            }
            c[*b] = sym_sum(&mut buf[..n]);
        }
        c
    }
}

/// Polynomial in `stencil.subspace` whose averages match `values` on every stencil cell.
pub fn fit_interpolating(stencil: &Stencil, values: &[f64]) -> Result<[f64; 6]> {
    if stencil.len() != stencil.subspace.dim() {
        return Err(Error::config(format!(
            "interpolating fit needs exactly {} cells, got {}",
            stencil.subspace.dim(),
            stencil.len()
        )));
    }
    check_values(stencil, values)?;
    Ok(FitOp::new(stencil)?.apply(values))
}

/// Least-squares fit over the stencil with the anchor-cell average imposed exactly.
pub fn fit_constrained_lsq(stencil: &Stencil, values: &[f64]) -> Result<[f64; 6]> {
    if stencil.len() <= stencil.subspace.dim() {
        return Err(Error::config(format!(
            "constrained least squares needs more than {} cells, got {}",
            stencil.subspace.dim(),
            stencil.len()
        )));
    }
    check_values(stencil, values)?;
    Ok(FitOp::new(stencil)?.apply(values))
}

fn check_values(stencil: &Stencil, values: &[f64]) -> Result<()> {
    if values.len() != stencil.len() {
        return Err(Error::config(format!(
            "{} values for a {}-cell stencil",
            values.len(),
            stencil.len()
        )));
    }
    Ok(())
}

/// 1D polynomial from the 2D coefficient layout (uses `c0, c1, c3`).
pub fn to_1d(center: f64, dx: f64, c: &[f64; 6]) -> CellPoly1D {
    CellPoly1D::new(center, dx, [c[0], c[1], c[3]])
}
