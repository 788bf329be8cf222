//! Third-order reconstruction on square-cell Cartesian grids.
//!
//! Interior cells: `CWENOZ(P_opt; P_NE, P_SE, P_SW, P_NW)` with `P_opt` the
//! anchored least-squares quadratic on the 3×3 block and the four linear
//! polynomials fitted (anchored least squares) on the 2×2 blocks.
//!
//! Without ghost cells, edge cells use an inward-shifted 3×3 block, the two
//! inward 2×2 linears and two polynomials linear along the edge and constant
//! across it; corner cells add a constant polynomial and use
//! infinitesimal weights for the one-dimensional and constant candidates.
//! Edge and corner cells reuse τ of an interior neighbour.
//!
//! Everything is set up on the bottom edge and the south-west corner and
//! carried to the other sides by the grid symmetries, so the scheme commutes
//! exactly with reflections and the diagonal swap.

use crate::error::{Error, Result};
use crate::grid::{Field, Grid2D, Side, GAUSS2_OFFSET};
use crate::par::{self, ExecPolicy};
use crate::poly::{sym_sum, CellPoly2D, FitOp, Stencil, Subspace};
use crate::recon1d::{combine, nonlinear_weights, D0Law, WeightRule};

pub use crate::bc::{fill_ghosts_2d, GHOST_DEPTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recon2DMode {
    /// Interior operator everywhere, boundary cells fed by ghost layers.
    CwenozGhost,
    /// Ghost-free edge and corner reconstructions with copied τ.
    Cwzb,
}

impl Recon2DMode {
    pub fn uses_ghosts(self) -> bool {
        self == Recon2DMode::CwenozGhost
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recon2DSpec {
    pub mode: Recon2DMode,
    pub p: f64,
    pub eps_exp: f64,
    /// Linear weight of the optimal polynomial in interior and edge cells;
    /// the four candidates share the rest equally.
    pub d_opt: f64,
    /// Linear weight of the 2×2 linear polynomial in corner cells.
    pub corner_d_ne: f64,
    /// Weight law of the one-dimensional and constant corner candidates.
    pub corner_d0: D0Law,
}

impl Default for Recon2DSpec {
    fn default() -> Self {
        Self {
            mode: Recon2DMode::Cwzb,
            p: 1.0,
            eps_exp: 2.0,
            d_opt: 0.75,
            corner_d_ne: 1.0 / 16.0,
            corner_d0: D0Law::Dx2,
        }
    }
}

impl Recon2DSpec {
    pub fn with_mode(mode: Recon2DMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn eps(&self, dx: f64) -> f64 {
        dx.powf(self.eps_exp)
    }

    /// `(d_opt, d_NE, d_small)` for corner cells.
    pub fn corner_weights(&self, dx: f64) -> (f64, f64, f64) {
        let small = self.corner_d0.weight(dx);
        (1.0 - self.corner_d_ne - 3.0 * small, self.corner_d_ne, small)
    }

    pub fn validate(&self, dx: f64) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::config(format!("p must be >= 1, got {}", self.p)));
        }
        if !(1.0..=3.0).contains(&self.eps_exp) {
            return Err(Error::config(format!("epsilon exponent must lie in [1, 3], got {}", self.eps_exp)));
        }
        if !(self.d_opt > 0.0 && self.d_opt < 1.0) {
            return Err(Error::config(format!("optimal linear weight must lie in (0, 1), got {}", self.d_opt)));
        }
        let (d_opt, d_ne, small) = self.corner_weights(dx);
        if !(d_opt > 0.0 && d_ne > 0.0 && small > 0.0) {
            return Err(Error::config(format!(
                "corner linear weights ({d_opt}, {d_ne}, {small}) are not all positive at dx = {dx}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    SW,
    SE,
    NW,
    NE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::SW, Corner::SE, Corner::NW, Corner::NE];

    /// Offset map taking the south-west layout to this corner.
    fn map(self, k: i32, l: i32) -> (i32, i32) {
        match self {
            Corner::SW => (k, l),
            Corner::SE => (-k, l),
            Corner::NW => (k, -l),
            Corner::NE => (-k, -l),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

const SIDES: [Side; 4] = [Side::S, Side::N, Side::W, Side::E];

fn side_index(s: Side) -> usize {
    match s {
        Side::S => 0,
        Side::N => 1,
        Side::W => 2,
        Side::E => 3,
    }
}

/// Offset map taking the bottom-edge layout to `side`, and whether it swaps axes.
fn side_map(s: Side, k: i32, l: i32) -> (i32, i32) {
    match s {
        Side::S => (k, l),
        Side::N => (k, -l),
        Side::W => (l, k),
        Side::E => (-l, k),
    }
}

fn side_swaps(s: Side) -> bool {
    matches!(s, Side::W | Side::E)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    Interior,
    Edge(Side),
    Corner(Corner),
}

/// Classifies cell `(i, j)` of an `nx × ny` grid.
pub fn classify(i: usize, j: usize, nx: usize, ny: usize) -> CellClass {
    let (w, e, s, n) = (i == 0, i + 1 == nx, j == 0, j + 1 == ny);
    match (w, e, s, n) {
        (true, _, true, _) => CellClass::Corner(Corner::SW),
        (_, true, true, _) => CellClass::Corner(Corner::SE),
        (true, _, _, true) => CellClass::Corner(Corner::NW),
        (_, true, _, true) => CellClass::Corner(Corner::NE),
        (_, _, true, _) => CellClass::Edge(Side::S),
        (_, _, _, true) => CellClass::Edge(Side::N),
        (true, _, _, _) => CellClass::Edge(Side::W),
        (_, true, _, _) => CellClass::Edge(Side::E),
        _ => CellClass::Interior,
    }
}

/// `|4 I_opt − I_NE − I_SE − I_SW − I_NW|`
pub fn tau_2d(i_opt: f64, i_ne: f64, i_se: f64, i_sw: f64, i_nw: f64) -> f64 {
    let mut lin = [i_ne, i_se, i_sw, i_nw];
    (4.0 * i_opt - sym_sum(&mut lin)).abs()
}

#[inline]
fn osc(c: &[f64; 6]) -> f64 {
    (c[1] * c[1] + c[2] * c[2]) + (13.0 / 3.0) * (c[3] * c[3] + c[5] * c[5]) + (7.0 / 6.0) * (c[4] * c[4])
}

/// One fitted polynomial: operator plus positions of its cells in the kernel window.
#[derive(Debug, Clone)]
struct Fit {
    op: FitOp,
    slots: Vec<usize>,
}

/// Precomputed blend for one cell class.
#[derive(Debug, Clone)]
pub struct Kernel {
    /// Cell offsets whose averages the kernel reads.
    window: Vec<(i32, i32)>,
    opt: Fit,
    cands: Vec<Fit>,
    /// Linear weights, `d[0]` for the optimal polynomial.
    d: Vec<f64>,
    /// Offset of the cell whose τ is reused (`None`: compute own τ).
    tau_from: Option<(i32, i32)>,
}

impl Kernel {
    fn new(opt: Stencil, cands: Vec<Stencil>, d: Vec<f64>, tau_from: Option<(i32, i32)>) -> Result<Self> {
        let mut window: Vec<(i32, i32)> = Vec::new();
        let mut fit = |s: &Stencil| -> Result<Fit> {
            let slots = s
                .offsets
                .iter()
                .map(|o| match window.iter().position(|w| w == o) {
                    Some(p) => p,
                    None => {
                        window.push(*o);
                        window.len() - 1
                    }
                })
                .collect();
            Ok(Fit { op: FitOp::new(s)?, slots })
        };
        let opt = fit(&opt)?;
        let cands = cands.iter().map(&mut fit).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            window,
            opt,
            cands,
            d,
            tau_from,
        })
    }

    fn window(&self) -> &[(i32, i32)] {
        &self.window
    }

    fn apply_fit(f: &Fit, vals: &[f64]) -> [f64; 6] {
        let mut buf = [0.0; 16];
        for (b, &s) in buf.iter_mut().zip(&f.slots) {
            *b = vals[s];
        }
        f.op.apply(&buf[..f.slots.len()])
    }

    /// Blends from the window values; `tau = None` computes the interior τ.
    /// Returns `(coefficients, τ used)`.
    fn run(&self, vals: &[f64], tau: Option<f64>, eps: f64, p: f64) -> ([f64; 6], f64) {
        let opt = Self::apply_fit(&self.opt, vals);
        let n = self.cands.len();
        let mut cands = [[0.0; 6]; 4];
        let mut ind = [0.0; 5];
        ind[0] = osc(&opt);
        for (k, f) in self.cands.iter().enumerate() {
            cands[k] = Self::apply_fit(f, vals);
            ind[k + 1] = osc(&cands[k]);
        }
        let tau = tau.unwrap_or_else(|| tau_2d(ind[0], ind[1], ind[2], ind[3], ind[4]));
        let mut omega = [0.0; 5];
        nonlinear_weights(&self.d, &ind[..n + 1], WeightRule::Z { tau }, eps, p, &mut omega[..n + 1]);
        (combine(&opt, &cands[..n], &self.d, &omega[..n + 1]), tau)
    }
}

/// Precomputed kernels for every cell class at a given cell size.
#[derive(Debug, Clone)]
pub struct Recon2D {
    spec: Recon2DSpec,
    dx: f64,
    interior: Kernel,
    edges: Vec<Kernel>,
    corners: Vec<Kernel>,
}

impl Recon2D {
    pub fn new(spec: Recon2DSpec, dx: f64) -> Result<Self> {
        spec.validate(dx)?;
        let q = 0.25 * (1.0 - spec.d_opt);
        let quad = Subspace::Quadratic;
        let lin = Subspace::Linear;
        let interior = Kernel::new(
            Stencil::block(-1, 1, -1, 1, quad),
            vec![
                Stencil::block(0, 1, 0, 1, lin),
                Stencil::block(0, 1, -1, 0, lin),
                Stencil::block(-1, 0, -1, 0, lin),
                Stencil::block(-1, 0, 0, 1, lin),
            ],
            vec![spec.d_opt, q, q, q, q],
            None,
        )?;
        let edges = SIDES
            .iter()
            .map(|&s| {
                let m = |st: Stencil| st.mapped(|k, l| side_map(s, k, l), side_swaps(s));
                Kernel::new(
                    m(Stencil::block(-1, 1, 0, 2, quad)),
                    vec![
                        m(Stencil::block(0, 1, 0, 1, lin)),
                        m(Stencil::block(-1, 0, 0, 1, lin)),
                        m(Stencil::new(vec![(0, 0), (1, 0)], Subspace::XLinear)),
                        m(Stencil::new(vec![(-1, 0), (0, 0)], Subspace::XLinear)),
                    ],
                    vec![spec.d_opt, q, q, q, q],
                    Some(side_map(s, 0, 1)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let (c_opt, c_ne, small) = spec.corner_weights(dx);
        let corners = Corner::ALL
            .iter()
            .map(|&c| {
                // corner maps never swap axes
                let m = |st: Stencil| st.mapped(|k, l| c.map(k, l), false);
                Kernel::new(
                    m(Stencil::block(0, 2, 0, 2, quad)),
                    vec![
                        m(Stencil::block(0, 1, 0, 1, lin)),
                        m(Stencil::new(vec![(0, 0), (1, 0)], Subspace::XLinear)),
                        m(Stencil::new(vec![(0, 0), (0, 1)], Subspace::YLinear)),
                        m(Stencil::new(vec![(0, 0)], Subspace::Constant)),
                    ],
                    vec![c_opt, c_ne, small, small, small],
                    Some(c.map(1, 1)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            dx,
            interior,
            edges,
            corners,
        })
    }

    pub fn spec(&self) -> &Recon2DSpec {
        &self.spec
    }

    fn kernel(&self, class: CellClass) -> &Kernel {
        match class {
            CellClass::Interior => &self.interior,
            CellClass::Edge(s) => &self.edges[side_index(s)],
            CellClass::Corner(c) => &self.corners[c.index()],
        }
    }

    /// Offset of the interior cell whose τ a boundary cell of `class` reuses.
    pub fn tau_source(&self, class: CellClass) -> Option<(i32, i32)> {
        self.kernel(class).tau_from
    }

    /// Runs the kernel of `class` on averages read through `value(k, l)`
    /// (offsets relative to the cell). `tau` must be given for edge and
    /// corner classes. Returns `(coefficients, τ)`.
    pub fn reconstruct_cell(
        &self,
        class: CellClass,
        value: impl Fn(i32, i32) -> f64,
        tau: Option<f64>,
    ) -> Result<([f64; 6], f64)> {
        let ker = self.kernel(class);
        if ker.tau_from.is_some() && tau.is_none() {
            return Err(Error::config(format!("{class:?} cell needs a copied τ")));
        }
        let mut vals = [0.0; 16];
        for (v, &(k, l)) in vals.iter_mut().zip(ker.window()) {
            *v = value(k, l);
        }
        Ok(ker.run(&vals[..ker.window.len()], tau, self.spec.eps(self.dx), self.spec.p))
    }

    /// Reconstructs every cell and component of `u`.
    ///
    /// `ghosts` is the extended array from [`fill_ghosts_2d`], required
    /// exactly in the ghosted mode.
    pub fn reconstruct(&self, u: &Field, grid: &Grid2D, ghosts: Option<&[f64]>, policy: ExecPolicy) -> Result<Reconstruction2D> {
        let (nx, ny) = (grid.nx, grid.ny);
        let m = u.components();
        if u.ncells() != nx * ny {
            return Err(Error::config(format!("field has {} cells, grid has {}", u.ncells(), nx * ny)));
        }
        if nx < 3 || ny < 3 {
            return Err(Error::config("2D reconstruction needs at least 3x3 cells"));
        }
        if (grid.dx - self.dx).abs() > 1e-14 * self.dx {
            return Err(Error::config("reconstruction kernels were built for another cell size"));
        }
        let g = GHOST_DEPTH as isize;
        let w = nx + 2 * GHOST_DEPTH;
        match (self.spec.mode.uses_ghosts(), ghosts) {
            (true, None) => return Err(Error::config("ghosted reconstruction needs ghost layers")),
            (false, Some(_)) => return Err(Error::config("ghost-free reconstruction does not take ghost layers")),
            (true, Some(e)) if e.len() != w * (ny + 2 * GHOST_DEPTH) * m => {
                return Err(Error::config("ghost-extended array has the wrong length"))
            }
            _ => {}
        }
        let data = u.as_slice();
        let eps = self.spec.eps(self.dx);
        let p = self.spec.p;
        let ghosted = self.spec.mode.uses_ghosts();
        let mut out: Vec<([f64; 6], f64)> = vec![([0.0; 6], 0.0); nx * ny * m];
        let ker = &self.interior;
        par::for_each_chunk(policy, &mut out, nx * m, |j, row| {
            let mut vals = [0.0; 16];
            for i in 0..nx {
                let interior = i >= 1 && j >= 1 && i + 1 < nx && j + 1 < ny;
                if !(ghosted || interior) {
                    continue;
                }
                for k in 0..m {
                    for (v, &(di, dj)) in vals.iter_mut().zip(ker.window()) {
                        let (ii, jj) = (i as isize + di as isize, j as isize + dj as isize);
                        *v = match ghosts {
                            Some(e) => e[(((jj + g) as usize) * w + (ii + g) as usize) * m + k],
                            None => data[(jj as usize * nx + ii as usize) * m + k],
                        };
                    }
                    row[i * m + k] = ker.run(&vals[..ker.window.len()], None, eps, p);
                }
            }
        });
        if !ghosted {
            let mut boundary = Vec::with_capacity(2 * (nx + ny));
            for i in 0..nx {
                boundary.push((i, 0));
                boundary.push((i, ny - 1));
            }
            for j in 1..ny - 1 {
                boundary.push((0, j));
                boundary.push((nx - 1, j));
            }
            for (i, j) in boundary {
                let class = classify(i, j, nx, ny);
                let ker = self.kernel(class);
                let (ti, tj) = ker.tau_from.expect("boundary kernel without τ source");
                let src = ((j as isize + tj as isize) as usize) * nx + (i as isize + ti as isize) as usize;
                for k in 0..m {
                    let tau = out[src * m + k].1;
                    let mut vals = [0.0; 16];
                    for (v, &(di, dj)) in vals.iter_mut().zip(ker.window()) {
                        let c = ((j as isize + dj as isize) as usize) * nx + (i as isize + di as isize) as usize;
                        *v = data[c * m + k];
                    }
                    out[(j * nx + i) * m + k] = ker.run(&vals[..ker.window.len()], Some(tau), eps, p);
                }
            }
        }
        let (coeffs, tau) = out.into_iter().unzip();
        Ok(Reconstruction2D {
            nx,
            ny,
            m,
            dx: grid.dx,
            x_lo: grid.x_lo,
            y_lo: grid.y_lo,
            coeffs,
            tau,
        })
    }
}

/// Per-cell, per-component polynomials of a 2D field.
#[derive(Debug, Clone)]
pub struct Reconstruction2D {
    pub nx: usize,
    pub ny: usize,
    pub m: usize,
    pub dx: f64,
    pub x_lo: f64,
    pub y_lo: f64,
    /// `coeffs[(j * nx + i) * m + k]`
    pub coeffs: Vec<[f64; 6]>,
    pub tau: Vec<f64>,
}

/// Scaled coordinates of the two Gauss points on a side of the reference
/// cell, ordered by increasing tangential coordinate.
pub fn side_points(side: Side) -> [(f64, f64); 2] {
    let g = GAUSS2_OFFSET;
    match side {
        Side::E => [(0.5, -g), (0.5, g)],
        Side::W => [(-0.5, -g), (-0.5, g)],
        Side::N => [(-g, 0.5), (g, 0.5)],
        Side::S => [(-g, -0.5), (g, -0.5)],
    }
}

impl Reconstruction2D {
    pub fn poly(&self, i: usize, j: usize, k: usize) -> CellPoly2D {
        let center = (
            self.x_lo + (i as f64 + 0.5) * self.dx,
            self.y_lo + (j as f64 + 0.5) * self.dx,
        );
        CellPoly2D::new(center, self.dx, self.coeffs[(j * self.nx + i) * self.m + k])
    }

    pub fn tau(&self, i: usize, j: usize, k: usize) -> f64 {
        self.tau[(j * self.nx + i) * self.m + k]
    }

    /// Values of component `k` at the two Gauss points of `side`.
    #[inline]
    pub fn side_traces(&self, cell: usize, k: usize, side: Side) -> [f64; 2] {
        let p = CellPoly2D::new((0.0, 0.0), 1.0, self.coeffs[cell * self.m + k]);
        let [a, b] = side_points(side);
        [p.eval_local(a.0, a.1), p.eval_local(b.0, b.1)]
    }

    /// The eight reconstruction-point values, ordered E, W, N, S (two each).
    pub fn traces(&self, i: usize, j: usize, k: usize) -> [f64; 8] {
        let c = j * self.nx + i;
        let mut out = [0.0; 8];
        for (n, s) in [Side::E, Side::W, Side::N, Side::S].into_iter().enumerate() {
            let t = self.side_traces(c, k, s);
            out[2 * n] = t[0];
            out[2 * n + 1] = t[1];
        }
        out
    }
}

/// One-shot convenience wrapper around [`Recon2D::reconstruct`].
pub fn reconstruct_field_2d(
    u: &Field,
    grid: &Grid2D,
    spec: &Recon2DSpec,
    ghosts: Option<&[f64]>,
    policy: ExecPolicy,
) -> Result<Reconstruction2D> {
    Recon2D::new(*spec, grid.dx)?.reconstruct(u, grid, ghosts, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(a: f64, b: f64, c: f64) -> impl Fn(i32, i32) -> f64 {
        move |k, l| a + b * k as f64 + c * l as f64
    }

    fn all_classes() -> Vec<CellClass> {
        let mut v = vec![CellClass::Interior];
        v.extend(SIDES.iter().map(|&s| CellClass::Edge(s)));
        v.extend(Corner::ALL.iter().map(|&c| CellClass::Corner(c)));
        v
    }

    #[test]
    fn classification() {
        assert_eq!(classify(0, 0, 5, 4), CellClass::Corner(Corner::SW));
        assert_eq!(classify(4, 3, 5, 4), CellClass::Corner(Corner::NE));
        assert_eq!(classify(2, 0, 5, 4), CellClass::Edge(Side::S));
        assert_eq!(classify(4, 2, 5, 4), CellClass::Edge(Side::E));
        assert_eq!(classify(0, 1, 5, 4), CellClass::Edge(Side::W));
        assert_eq!(classify(2, 3, 5, 4), CellClass::Edge(Side::N));
        assert_eq!(classify(2, 2, 5, 4), CellClass::Interior);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_2d(1.5, 1.5, 1.5, 1.5, 1.5), 0.0);
        assert_eq!(tau_2d(1.0, 0.0, 0.0, 0.0, 0.0), 4.0);
    }

    #[test]
    fn constants_and_planes_are_exact() {
        let r = Recon2D::new(Recon2DSpec::default(), 0.1).unwrap();
        for class in all_classes() {
            let tau = r.tau_source(class).map(|_| 0.0);
            let (c, _) = r.reconstruct_cell(class, |_, _| 2.5, tau).unwrap();
            assert_eq!(c, [2.5, 0.0, 0.0, 0.0, 0.0, 0.0], "{class:?}");
            let (c, t) = r.reconstruct_cell(class, plane(1.0, 0.3, -0.7), tau).unwrap();
            let expect = [1.0, 0.3, -0.7, 0.0, 0.0, 0.0];
            for b in 0..6 {
                assert!((c[b] - expect[b]).abs() < 1e-12, "{class:?} {c:?}");
            }
            assert!(t.abs() < 1e-12);
        }
    }

    #[test]
    fn anchor_average_is_kept() {
        let r = Recon2D::new(Recon2DSpec::default(), 0.05).unwrap();
        let f = |k: i32, l: i32| ((k * 7 + l * 3) as f64).sin() + (k * l) as f64 * 0.1;
        for class in all_classes() {
            let tau = r.tau_source(class).map(|_| 0.37);
            let (c, _) = r.reconstruct_cell(class, f, tau).unwrap();
            assert_eq!(c[0], f(0, 0));
        }
    }

    #[test]
    fn boundary_cells_need_tau() {
        let r = Recon2D::new(Recon2DSpec::default(), 0.1).unwrap();
        assert!(r.reconstruct_cell(CellClass::Edge(Side::N), |_, _| 1.0, None).is_err());
    }

    #[test]
    fn tau_sources_point_inward() {
        let r = Recon2D::new(Recon2DSpec::default(), 0.1).unwrap();
        assert_eq!(r.tau_source(CellClass::Edge(Side::S)), Some((0, 1)));
        assert_eq!(r.tau_source(CellClass::Edge(Side::E)), Some((-1, 0)));
        assert_eq!(r.tau_source(CellClass::Corner(Corner::NE)), Some((-1, -1)));
        assert_eq!(r.tau_source(CellClass::Interior), None);
    }

    #[test]
    fn corner_weights_split() {
        let s = Recon2DSpec::default();
        let (a, b, c) = s.corner_weights(0.1);
        assert!((a + b + 3.0 * c - 1.0).abs() < 1e-15);
        assert!((c - 0.01).abs() < 1e-16);
        assert!(s.validate(0.1).is_ok());
        assert!(s.validate(0.6).is_err());
    }

    #[test]
    fn side_points_match_grid_helper() {
        use crate::grid::edge_gauss_points_2d;
        for s in [Side::E, Side::W, Side::N, Side::S] {
            let phys = edge_gauss_points_2d(0.5, 0.5, 1.0, s);
            let loc = side_points(s);
            for k in 0..2 {
                assert!((phys[k].0 - 0.5 - loc[k].0).abs() < 1e-15);
                assert!((phys[k].1 - 0.5 - loc[k].1).abs() < 1e-15);
            }
        }
    }
}
