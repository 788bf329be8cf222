//! Third-order reconstructions in one space dimension.
//!
//! Interior cells use `CWENOZ(P2; PL, PR)` (or the Jiang-Shu-weight
//! `CWENO` variant). The ghost-free modes replace the first and last cell
//! with an adaptive-order blend of a one-sided parabola, a one-sided line
//! and the constant cell average, the latter with an infinitesimal linear
//! weight. In `Cwzb3` mode the end cells reuse the global smoothness
//! indicator of their inward neighbour.

use crate::error::{Error, Result};
use crate::grid::{Field, Grid1D};
use crate::par::{self, ExecPolicy};
use crate::poly::{sym_sum, CellPoly1D};

/// Reconstruction family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recon1DMode {
    /// CWENOZ3 everywhere, end cells fed by ghost cells.
    CwenozGhost,
    /// CWENO3 (Jiang-Shu weights) everywhere, end cells fed by ghost cells.
    CwenoGhost,
    /// CWENOZ3 inside, ghost-free CWENOZ-AO end cells with copied τ.
    Cwzb3,
    /// CWENO3 inside, ghost-free CWENO-AO end cells.
    Cwb3,
    /// Second-order minmod-limited linear reconstruction.
    Minmod,
}

impl Recon1DMode {
    pub fn uses_ghosts(self) -> bool {
        matches!(self, Recon1DMode::CwenozGhost | Recon1DMode::CwenoGhost)
    }

    fn z_weights(self) -> bool {
        matches!(self, Recon1DMode::CwenozGhost | Recon1DMode::Cwzb3)
    }
}

/// Linear weight of the constant polynomial in the end cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum D0Law {
    Dx,
    Dx2,
    /// `min(dx^m, 0.01)`
    Capped(f64),
}

impl D0Law {
    pub fn weight(self, dx: f64) -> f64 {
        match self {
            D0Law::Dx => dx,
            D0Law::Dx2 => dx * dx,
            D0Law::Capped(m) => dx.powf(m).min(0.01),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconSpec {
    pub mode: Recon1DMode,
    /// Exponent in the nonlinear weight formulas.
    pub p: f64,
    /// ε = dx^eps_exp
    pub eps_exp: f64,
    pub d0_law: D0Law,
    /// `(d_opt, d_L, d_R)` for interior cells.
    pub interior_weights: [f64; 3],
    /// Linear weight of the one-sided line in the end cells.
    pub boundary_d1: f64,
}

impl Default for ReconSpec {
    fn default() -> Self {
        Self {
            mode: Recon1DMode::Cwzb3,
            p: 1.0,
            eps_exp: 2.0,
            d0_law: D0Law::Dx,
            interior_weights: [0.75, 0.125, 0.125],
            boundary_d1: 0.25,
        }
    }
}

impl ReconSpec {
    pub fn with_mode(mode: Recon1DMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self, dx: f64) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::config(format!("p must be >= 1, got {}", self.p)));
        }
        if !(1.0..=3.0).contains(&self.eps_exp) {
            return Err(Error::config(format!(
                "epsilon exponent must lie in [1, 3], got {}",
                self.eps_exp
            )));
        }
        let w = self.interior_weights;
        if w.iter().any(|&d| !(d > 0.0)) || ((w[0] + w[1] + w[2]) - 1.0).abs() > 1e-14 {
            return Err(Error::config(format!("interior linear weights {w:?} must be positive and sum to 1")));
        }
        if matches!(self.mode, Recon1DMode::Cwzb3 | Recon1DMode::Cwb3) {
            let (d_opt, d1, d0) = self.boundary_weights(dx);
            if !(d_opt > 0.0 && d1 > 0.0 && d0 > 0.0) {
                return Err(Error::config(format!(
                    "boundary linear weights ({d_opt}, {d1}, {d0}) are not all positive at dx = {dx}"
                )));
            }
        }
        Ok(())
    }

    pub fn eps(&self, dx: f64) -> f64 {
        dx.powf(self.eps_exp)
    }

    /// `(d_opt, d1, d0)` for the end cells.
    pub fn boundary_weights(&self, dx: f64) -> (f64, f64, f64) {
        let d0 = self.d0_law.weight(dx);
        let d1 = self.boundary_d1;
        (1.0 - d1 - d0, d1, d0)
    }
}

/// How the nonlinear weights are formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightRule {
    /// `α_k = d_k / (I_k + ε)^p`
    JiangShu,
    /// `α_k = d_k [1 + (τ / (I_k + ε))^p]`
    Z { tau: f64 },
}

#[inline]
fn powp(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

/// Nonlinear weights from linear weights `d` and indicators `ind`
/// (index 0 is the optimal polynomial). Writes into `omega`.
#[inline]
pub fn nonlinear_weights(d: &[f64], ind: &[f64], rule: WeightRule, eps: f64, p: f64, omega: &mut [f64]) {
    let n = d.len();
    debug_assert!(n <= 8 && ind.len() == n && omega.len() == n);
    let mut alpha = [0.0f64; 8];
    for k in 0..n {
        alpha[k] = match rule {
            WeightRule::JiangShu => d[k] / powp(ind[k] + eps, p),
            WeightRule::Z { tau } => d[k] * (1.0 + powp(tau / (ind[k] + eps), p)),
        };
    }
    let mut buf = alpha;
    let total = sym_sum(&mut buf[..n]);
    for k in 0..n {
        omega[k] = alpha[k] / total;
    }
}

/// `ω_opt (P_opt − Σ d_i P_i) / d_opt + Σ ω_i P_i`, coefficient-wise.
#[inline]
pub fn combine<const N: usize>(opt: &[f64; N], cands: &[[f64; N]], d: &[f64], omega: &[f64]) -> [f64; N] {
    let nc = cands.len();
    debug_assert!(d.len() == nc + 1 && omega.len() == nc + 1 && nc <= 7);
    let scale = omega[0] / d[0];
    let mut out = [0.0; N];
    let mut lin = [0.0f64; 8];
    let mut non = [0.0f64; 8];
    for b in 0..N {
        for i in 0..nc {
            lin[i] = d[i + 1] * cands[i][b];
            non[i] = omega[i + 1] * cands[i][b];
        }
        let s_lin = sym_sum(&mut lin[..nc]);
        let s_non = sym_sum(&mut non[..nc]);
        out[b] = scale * (opt[b] - s_lin) + s_non;
    }
    out
}

/// Inputs of one CWENO/CWENOZ blend.
#[derive(Debug, Clone)]
pub struct BlendInput {
    pub opt: CellPoly1D,
    pub candidates: Vec<CellPoly1D>,
    /// Linear weights, `d[0]` for the optimal polynomial.
    pub d: Vec<f64>,
    /// Oscillation indicators, `indicators[0]` for the optimal polynomial.
    pub indicators: Vec<f64>,
    pub tau: f64,
    pub eps: f64,
    pub p: f64,
}

impl BlendInput {
    fn run(&self, rule: WeightRule) -> CellPoly1D {
        let n = self.d.len();
        let mut omega = vec![0.0; n];
        nonlinear_weights(&self.d, &self.indicators, rule, self.eps, self.p, &mut omega);
        let cands: Vec<[f64; 3]> = self.candidates.iter().map(|c| c.c).collect();
        CellPoly1D::new(self.opt.center, self.opt.dx, combine(&self.opt.c, &cands, &self.d, &omega))
    }

    pub fn weights(&self, rule: WeightRule) -> Vec<f64> {
        let mut omega = vec![0.0; self.d.len()];
        nonlinear_weights(&self.d, &self.indicators, rule, self.eps, self.p, &mut omega);
        omega
    }
}

/// CWENO blend with Jiang-Shu weights (τ is ignored).
pub fn blend_cweno(input: &BlendInput) -> CellPoly1D {
    input.run(WeightRule::JiangShu)
}

/// CWENOZ blend with Z-weights driven by `input.tau`.
pub fn blend_cwenoz(input: &BlendInput) -> CellPoly1D {
    input.run(WeightRule::Z { tau: input.tau })
}

/// `|2 I_opt − I_L − I_R|`
#[inline]
pub fn tau_interior(i_opt: f64, i_l: f64, i_r: f64) -> f64 {
    (2.0 * i_opt - i_l - i_r).abs()
}

/// The three interior candidates from `(ū_{j-1}, ū_j, ū_{j+1})`: parabola, left and right lines.
#[inline]
pub fn interior_candidates(um: f64, u0: f64, up: f64) -> [[f64; 3]; 3] {
    [
        [u0, 0.5 * (up - um), 0.5 * (up - 2.0 * u0 + um)],
        [u0, u0 - um, 0.0],
        [u0, up - u0, 0.0],
    ]
}

fn osc3(c: &[f64; 3]) -> f64 {
    c[1] * c[1] + (13.0 / 3.0) * c[2] * c[2]
}

/// Interior kernel on a 3-cell window. Returns `(coefficients, τ)`.
#[inline]
pub fn interior_kernel(um: f64, u0: f64, up: f64, spec: &ReconSpec, eps: f64) -> ([f64; 3], f64) {
    let [opt, pl, pr] = interior_candidates(um, u0, up);
    let ind = [osc3(&opt), osc3(&pl), osc3(&pr)];
    let tau = tau_interior(ind[0], ind[1], ind[2]);
    let rule = if spec.mode.z_weights() {
        WeightRule::Z { tau }
    } else {
        WeightRule::JiangShu
    };
    let mut omega = [0.0; 3];
    nonlinear_weights(&spec.interior_weights, &ind, rule, eps, spec.p, &mut omega);
    (combine(&opt, &[pl, pr], &spec.interior_weights, &omega), tau)
}

/// Ghost-free end-cell kernel. `u` holds the averages of the end cell and its
/// two inward neighbours, ordered outward-in; `dir` is +1 for the first cell
/// (neighbours to the right) and -1 for the last one.
#[inline]
fn boundary_kernel(u: [f64; 3], dir: f64, tau: f64, spec: &ReconSpec, dx: f64, eps: f64) -> [f64; 3] {
    let [u0, u1, u2] = u;
    let c2 = 0.5 * (u2 - 2.0 * u1 + u0);
    let opt = [u0, dir * ((u1 - u0) - c2), c2];
    let line = [u0, dir * (u1 - u0), 0.0];
    let cst = [u0, 0.0, 0.0];
    let (d_opt, d1, d0) = spec.boundary_weights(dx);
    let d = [d_opt, d1, d0];
    let ind = [osc3(&opt), osc3(&line), 0.0];
    let rule = if spec.mode.z_weights() {
        WeightRule::Z { tau }
    } else {
        WeightRule::JiangShu
    };
    let mut omega = [0.0; 3];
    nonlinear_weights(&d, &ind, rule, eps, spec.p, &mut omega);
    combine(&opt, &[line, cst], &d, &omega)
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// Reconstruction in interior cell `j` (`1 ≤ j ≤ n-2`) of component `k`.
pub fn reconstruct_interior(j: usize, u: &Field, k: usize, grid: &Grid1D, spec: &ReconSpec) -> CellPoly1D {
    assert!(j >= 1 && j + 1 < u.ncells(), "cell {j} has no two-sided neighbourhood");
    let (c, _) = interior_kernel(u.get(j - 1, k), u.get(j, k), u.get(j + 1, k), spec, spec.eps(grid.dx));
    CellPoly1D::new(grid.center(j), grid.dx, c)
}

/// Interior τ of cell `j`.
pub fn interior_tau(j: usize, u: &Field, k: usize) -> f64 {
    let [opt, pl, pr] = interior_candidates(u.get(j - 1, k), u.get(j, k), u.get(j + 1, k));
    tau_interior(osc3(&opt), osc3(&pl), osc3(&pr))
}

/// Ghost-free reconstruction in the first cell using τ from the second cell.
pub fn reconstruct_boundary_first(u: &Field, k: usize, tau_second: f64, grid: &Grid1D, spec: &ReconSpec) -> Result<CellPoly1D> {
    if u.ncells() < 3 {
        return Err(Error::config("boundary reconstruction needs at least 3 cells"));
    }
    let c = boundary_kernel([u.get(0, k), u.get(1, k), u.get(2, k)], 1.0, tau_second, spec, grid.dx, spec.eps(grid.dx));
    Ok(CellPoly1D::new(grid.center(0), grid.dx, c))
}

/// Ghost-free reconstruction in the last cell using τ from the penultimate cell.
pub fn reconstruct_boundary_last(u: &Field, k: usize, tau_penultimate: f64, grid: &Grid1D, spec: &ReconSpec) -> Result<CellPoly1D> {
    let n = u.ncells();
    if n < 3 {
        return Err(Error::config("boundary reconstruction needs at least 3 cells"));
    }
    let c = boundary_kernel(
        [u.get(n - 1, k), u.get(n - 2, k), u.get(n - 3, k)],
        -1.0,
        tau_penultimate,
        spec,
        grid.dx,
        spec.eps(grid.dx),
    );
    Ok(CellPoly1D::new(grid.center(n - 1), grid.dx, c))
}

/// Minmod-limited linear reconstruction; one-sided difference in the end cells.
pub fn reconstruct_minmod(j: usize, u: &Field, k: usize, grid: &Grid1D) -> CellPoly1D {
    let n = u.ncells();
    let u0 = u.get(j, k);
    let s = if j == 0 {
        u.get(1, k) - u0
    } else if j == n - 1 {
        u0 - u.get(n - 2, k)
    } else {
        minmod(u0 - u.get(j - 1, k), u.get(j + 1, k) - u0)
    };
    CellPoly1D::new(grid.center(j), grid.dx, [u0, s, 0.0])
}

/// Per-cell, per-component polynomials of a whole 1D field.
#[derive(Debug, Clone)]
pub struct Reconstruction1D {
    pub m: usize,
    pub dx: f64,
    pub x_lo: f64,
    /// `coeffs[j * m + k]`
    pub coeffs: Vec<[f64; 3]>,
    /// τ used in each cell (0 for minmod).
    pub tau: Vec<f64>,
}

impl Reconstruction1D {
    pub fn ncells(&self) -> usize {
        self.coeffs.len() / self.m
    }

    pub fn poly(&self, j: usize, k: usize) -> CellPoly1D {
        CellPoly1D::new(self.x_lo + (j as f64 + 0.5) * self.dx, self.dx, self.coeffs[j * self.m + k])
    }

    pub fn tau(&self, j: usize, k: usize) -> f64 {
        self.tau[j * self.m + k]
    }

    /// `(left face, right face)` values of component `k` in cell `j`.
    #[inline]
    pub fn traces(&self, j: usize, k: usize) -> (f64, f64) {
        let c = &self.coeffs[j * self.m + k];
        let even = c[0] + c[2] / 6.0;
        let odd = 0.5 * c[1];
        (even - odd, even + odd)
    }
}

/// Number of ghost cells per side in ghost-extended 1D arrays.
pub const GHOSTS_1D: usize = 2;

const BLOCK: usize = 256;

/// Reconstructs all cells of `u`.
///
/// `ghosts` must be the ghost-extended array (`GHOSTS_1D` cells per side,
/// cell-major) exactly when the mode is a ghosted one.
pub fn reconstruct_field_1d(
    u: &Field,
    grid: &Grid1D,
    spec: &ReconSpec,
    ghosts: Option<&[f64]>,
    policy: ExecPolicy,
) -> Result<Reconstruction1D> {
    let n = u.ncells();
    let m = u.components();
    if n != grid.n {
        return Err(Error::config(format!("field has {n} cells, grid has {}", grid.n)));
    }
    if n < 3 {
        return Err(Error::config("1D reconstruction needs at least 3 cells"));
    }
    match (spec.mode.uses_ghosts(), ghosts) {
        (true, None) => return Err(Error::config(format!("{:?} needs ghost cells", spec.mode))),
        (false, Some(_)) => return Err(Error::config(format!("{:?} does not use ghost cells", spec.mode))),
        (true, Some(g)) if g.len() != (n + 2 * GHOSTS_1D) * m => {
            return Err(Error::config("ghost-extended array has the wrong length"))
        }
        _ => {}
    }
    let dx = grid.dx;
    let eps = spec.eps(dx);
    let mut out: Vec<([f64; 3], f64)> = vec![([0.0; 3], 0.0); n * m];
    let src = |j: isize, k: usize| -> f64 {
        match ghosts {
            Some(g) => g[(j + GHOSTS_1D as isize) as usize * m + k],
            None => u.get(j as usize, k),
        }
    };
    let ghost_free = matches!(spec.mode, Recon1DMode::Cwzb3 | Recon1DMode::Cwb3);
    par::for_each_chunk(policy, &mut out, BLOCK * m, |blk, chunk| {
        let j0 = blk * BLOCK;
        for (off, slot) in chunk.iter_mut().enumerate() {
            let j = j0 + off / m;
            let k = off % m;
            *slot = match spec.mode {
                Recon1DMode::Minmod => (reconstruct_minmod(j, u, k, grid).c, 0.0),
                _ if ghost_free && (j == 0 || j == n - 1) => ([0.0; 3], 0.0),
                _ => {
                    let ji = j as isize;
                    interior_kernel(src(ji - 1, k), src(ji, k), src(ji + 1, k), spec, eps)
                }
            };
        }
    });
    if ghost_free {
        for k in 0..m {
            let tau2 = out[m + k].1;
            let first = boundary_kernel([u.get(0, k), u.get(1, k), u.get(2, k)], 1.0, tau2, spec, dx, eps);
            out[k] = (first, tau2);
            let tau_pen = out[(n - 2) * m + k].1;
            let last = boundary_kernel([u.get(n - 1, k), u.get(n - 2, k), u.get(n - 3, k)], -1.0, tau_pen, spec, dx, eps);
            out[(n - 1) * m + k] = (last, tau_pen);
        }
    }
    let (coeffs, tau) = out.into_iter().unzip();
    Ok(Reconstruction1D {
        m,
        dx,
        x_lo: grid.x_lo,
        coeffs,
        tau,
    })
}
