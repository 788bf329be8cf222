//! Boundary conditions: outer states for boundary-face fluxes and ghost-layer
//! filling for the ghosted reconstructions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Field, Grid1D, Grid2D};
use crate::models::{Direction, Model};

/// Boundary data `g(t, position, out)`; 1D callers pass `[x, 0.0]`.
pub type DirichletFn = Arc<dyn Fn(f64, [f64; 2], &mut [f64]) + Send + Sync>;

#[derive(Clone)]
pub enum BoundaryKind {
    Periodic,
    Dirichlet { name: String, g: DirichletFn },
    Wall,
    /// Same treatment as [`BoundaryKind::Wall`]; kept separate for reporting.
    Symmetry,
    FreeFlow,
}

impl fmt::Debug for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryKind::Periodic => write!(f, "Periodic"),
            BoundaryKind::Dirichlet { name, .. } => write!(f, "Dirichlet({name})"),
            BoundaryKind::Wall => write!(f, "Wall"),
            BoundaryKind::Symmetry => write!(f, "Symmetry"),
            BoundaryKind::FreeFlow => write!(f, "FreeFlow"),
        }
    }
}

impl BoundaryKind {
    pub fn dirichlet(name: impl Into<String>, g: impl Fn(f64, [f64; 2], &mut [f64]) + Send + Sync + 'static) -> Self {
        BoundaryKind::Dirichlet {
            name: name.into(),
            g: Arc::new(g),
        }
    }

    fn is_periodic(&self) -> bool {
        matches!(self, BoundaryKind::Periodic)
    }

    fn is_reflecting(&self) -> bool {
        matches!(self, BoundaryKind::Wall | BoundaryKind::Symmetry)
    }
}

#[derive(Debug, Clone)]
pub struct Boundary1D {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl Boundary1D {
    pub fn new(left: BoundaryKind, right: BoundaryKind) -> Self {
        Self { left, right }
    }

    pub fn periodic() -> Self {
        Self::new(BoundaryKind::Periodic, BoundaryKind::Periodic)
    }

    pub fn validate(&self, model: &Model) -> Result<()> {
        if self.left.is_periodic() != self.right.is_periodic() {
            return Err(Error::config("periodic boundaries must be set on both sides"));
        }
        for k in [&self.left, &self.right] {
            if k.is_reflecting() && model.normal_momentum(Direction::X).is_none() {
                return Err(Error::config("wall boundaries need a model with momentum"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Boundary2D {
    pub x_lo: BoundaryKind,
    pub x_hi: BoundaryKind,
    pub y_lo: BoundaryKind,
    pub y_hi: BoundaryKind,
}

impl Boundary2D {
    pub fn periodic() -> Self {
        Self::uniform(BoundaryKind::Periodic)
    }

    pub fn uniform(kind: BoundaryKind) -> Self {
        Self {
            x_lo: kind.clone(),
            x_hi: kind.clone(),
            y_lo: kind.clone(),
            y_hi: kind,
        }
    }

    pub fn validate(&self, model: &Model) -> Result<()> {
        if self.x_lo.is_periodic() != self.x_hi.is_periodic() || self.y_lo.is_periodic() != self.y_hi.is_periodic() {
            return Err(Error::config("periodic boundaries must be set on both paired sides"));
        }
        for k in [&self.x_lo, &self.x_hi, &self.y_lo, &self.y_hi] {
            if k.is_reflecting() && !model.is_euler() {
                return Err(Error::config("wall boundaries need a model with momentum"));
            }
        }
        Ok(())
    }
}

/// Outer state at a boundary face.
///
/// `opposite` is the inner trace at the paired point of the opposite boundary;
/// it is required for periodic sides and ignored otherwise.
#[allow(clippy::too_many_arguments)]
pub fn outer_state(
    kind: &BoundaryKind,
    inner: &[f64],
    opposite: Option<&[f64]>,
    t: f64,
    position: [f64; 2],
    model: &Model,
    dir: Direction,
    out: &mut [f64],
) -> Result<()> {
    match kind {
        BoundaryKind::Periodic => {
            let o = opposite.ok_or_else(|| Error::config("periodic boundary without paired trace"))?;
            out.copy_from_slice(o);
        }
        BoundaryKind::Dirichlet { g, .. } => g(t, position, out),
        BoundaryKind::Wall | BoundaryKind::Symmetry => {
            out.copy_from_slice(inner);
            let n = model
                .normal_momentum(dir)
                .ok_or_else(|| Error::config("wall boundary on a model without momentum"))?;
            out[n] = -out[n];
        }
        BoundaryKind::FreeFlow => out.copy_from_slice(inner),
    }
    Ok(())
}

/// Ghost cells per side in ghost-extended arrays.
pub const GHOST_DEPTH: usize = 2;

/// Ghost-extended copy of a 1D field (`GHOST_DEPTH` cells per side).
pub fn fill_ghosts_1d(u: &Field, grid: &Grid1D, bcs: &Boundary1D, t: f64, model: &Model) -> Result<Vec<f64>> {
    let n = u.ncells();
    let m = u.components();
    let g = GHOST_DEPTH;
    let mut ext = vec![0.0; (n + 2 * g) * m];
    ext[g * m..(g + n) * m].copy_from_slice(u.as_slice());
    for layer in 0..g {
        // left ghost at cell index -(layer + 1)
        let dst = (g - 1 - layer) * m;
        fill_one(&bcs.left, u, n, m, layer, true, t, [grid.x_lo, 0.0], model, Direction::X, &mut ext[dst..dst + m])?;
        let dst = (g + n + layer) * m;
        fill_one(&bcs.right, u, n, m, layer, false, t, [grid.x_hi, 0.0], model, Direction::X, &mut ext[dst..dst + m])?;
    }
    Ok(ext)
}

#[allow(clippy::too_many_arguments)]
fn fill_one(
    kind: &BoundaryKind,
    u: &Field,
    n: usize,
    m: usize,
    layer: usize,
    low_side: bool,
    t: f64,
    pos: [f64; 2],
    model: &Model,
    dir: Direction,
    out: &mut [f64],
) -> Result<()> {
    let _ = m;
    let src = match kind {
        BoundaryKind::Periodic => {
            if low_side {
                n - 1 - layer
            } else {
                layer
            }
        }
        BoundaryKind::Wall | BoundaryKind::Symmetry => {
            if low_side {
                layer
            } else {
                n - 1 - layer
            }
        }
        BoundaryKind::FreeFlow => {
            if low_side {
                0
            } else {
                n - 1
            }
        }
        BoundaryKind::Dirichlet { g, .. } => {
            g(t, pos, out);
            return Ok(());
        }
    };
    out.copy_from_slice(u.cell(src));
    if matches!(kind, BoundaryKind::Wall | BoundaryKind::Symmetry) {
        let k = model
            .normal_momentum(dir)
            .ok_or_else(|| Error::config("wall boundary on a model without momentum"))?;
        out[k] = -out[k];
    }
    Ok(())
}

/// Ghost-extended copy of a 2D field, `GHOST_DEPTH` layers on every side.
///
/// Layout: `(j + 2) * (nx + 4) + (i + 2)` for `i ∈ [-2, nx+2)`, `j ∈ [-2, ny+2)`.
/// The x sides are filled first (for the physical rows), then the y sides
/// over the full extended width, so corner ghosts combine both rules.
pub fn fill_ghosts_2d(u: &Field, grid: &Grid2D, bcs: &Boundary2D, t: f64, model: &Model) -> Result<Vec<f64>> {
    let (nx, ny) = (grid.nx, grid.ny);
    let m = u.components();
    let g = GHOST_DEPTH;
    let w = nx + 2 * g;
    let h = ny + 2 * g;
    let mut ext = vec![0.0; w * h * m];
    let at = |i: usize, j: usize| (j * w + i) * m;
    for j in 0..ny {
        for i in 0..nx {
            let d = at(i + g, j + g);
            ext[d..d + m].copy_from_slice(u.cell(grid.index(i, j)));
        }
    }
    let mut tmp = vec![0.0; m];
    // x sides
    for j in 0..ny {
        let yc = grid.center(0, j).1;
        for layer in 0..g {
            for (kind, low) in [(&bcs.x_lo, true), (&bcs.x_hi, false)] {
                let (src_i, pos_x) = side_source(kind, nx, layer, low, grid.x_lo, grid.x_hi);
                let dst_i = if low { g - 1 - layer } else { g + nx + layer };
                match kind {
                    BoundaryKind::Dirichlet { g: f, .. } => f(t, [pos_x, yc], &mut tmp),
                    _ => {
                        let s = at(src_i + g, j + g);
                        tmp.copy_from_slice(&ext[s..s + m]);
                        if kind.is_reflecting() {
                            let k = model.normal_momentum(Direction::X).ok_or_else(|| Error::config("wall without momentum"))?;
                            tmp[k] = -tmp[k];
                        }
                    }
                }
                let d = at(dst_i, j + g);
                ext[d..d + m].copy_from_slice(&tmp);
            }
        }
    }
    // y sides over the extended width
    for ie in 0..w {
        let xc = grid.x_lo + (ie as f64 - g as f64 + 0.5) * grid.dx;
        for layer in 0..g {
            for (kind, low) in [(&bcs.y_lo, true), (&bcs.y_hi, false)] {
                let (src_j, pos_y) = side_source(kind, ny, layer, low, grid.y_lo, grid.y_hi);
                let dst_j = if low { g - 1 - layer } else { g + ny + layer };
                match kind {
                    BoundaryKind::Dirichlet { g: f, .. } => f(t, [xc, pos_y], &mut tmp),
                    _ => {
                        let s = at(ie, src_j + g);
                        tmp.copy_from_slice(&ext[s..s + m]);
                        if kind.is_reflecting() {
                            let k = model.normal_momentum(Direction::Y).ok_or_else(|| Error::config("wall without momentum"))?;
                            tmp[k] = -tmp[k];
                        }
                    }
                }
                let d = at(ie, dst_j);
                ext[d..d + m].copy_from_slice(&tmp);
            }
        }
    }
    Ok(ext)
}

/// Interior source index (and face coordinate) feeding ghost `layer` of a side.
fn side_source(kind: &BoundaryKind, n: usize, layer: usize, low: bool, lo: f64, hi: f64) -> (usize, f64) {
    let pos = if low { lo } else { hi };
    let idx = match kind {
        BoundaryKind::Periodic => {
            if low {
                n - 1 - layer
            } else {
                layer
            }
        }
        BoundaryKind::Wall | BoundaryKind::Symmetry => {
            if low {
                layer
            } else {
                n - 1 - layer
            }
        }
        BoundaryKind::FreeFlow | BoundaryKind::Dirichlet { .. } => {
            if low {
                0
            } else {
                n - 1
            }
        }
    };
    (idx, pos)
}
