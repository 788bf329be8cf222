//! Semi-discrete operators `L(ū, t)` in one and two space dimensions.

use crate::bc::{fill_ghosts_1d, fill_ghosts_2d, outer_state, Boundary1D, Boundary2D};
use crate::error::{Error, Result};
use crate::grid::{Field, Grid1D, Grid2D, Side, GAUSS2_OFFSET};
use crate::models::{llf_flux, spherical_source, Direction, InvalidState, Model, MAX_COMPONENTS};
use crate::par::{self, ExecPolicy};
use crate::recon1d::{reconstruct_field_1d, ReconSpec};
use crate::recon2d::{Recon2D, Recon2DSpec};

use super::SphericalSource;

const BLOCK: usize = 256;

fn state_error(cell: usize, what: &str, e: impl std::fmt::Display) -> Error {
    Error::State {
        cell,
        stage: String::new(),
        reason: format!("{what}: {e}"),
    }
}

/// 1D flux divergence (plus optional spherical source).
#[derive(Debug, Clone)]
pub struct Rhs1D {
    pub grid: Grid1D,
    pub model: Model,
    pub bcs: Boundary1D,
    pub spec: ReconSpec,
    pub source: Option<SphericalSource>,
    pub policy: ExecPolicy,
}

impl Rhs1D {
    /// Returns `L` and the net inflow `F_left − F_right` through the two
    /// boundary faces, per component.
    pub fn eval(&self, u: &Field, t: f64) -> Result<(Field, Vec<f64>)> {
        let grid = &self.grid;
        let model = &self.model;
        let n = grid.n;
        let m = u.components();
        let ghosts = if self.spec.mode.uses_ghosts() {
            Some(fill_ghosts_1d(u, grid, &self.bcs, t, model)?)
        } else {
            None
        };
        let rec = reconstruct_field_1d(u, grid, &self.spec, ghosts.as_deref(), self.policy)?;
        let trace = |j: usize, right: bool, out: &mut [f64]| {
            for (k, o) in out.iter_mut().enumerate() {
                let (l, r) = rec.traces(j, k);
                *o = if right { r } else { l };
            }
        };

        // face f sits between cells f-1 and f
        let mut flux = vec![0.0; (n + 1) * m];
        par::try_for_each_chunk(self.policy, &mut flux, BLOCK * m, |blk, chunk| -> Result<()> {
            let mut ul = [0.0; MAX_COMPONENTS];
            let mut ur = [0.0; MAX_COMPONENTS];
            let mut opp = [0.0; MAX_COMPONENTS];
            let (ul, ur, opp) = (&mut ul[..m], &mut ur[..m], &mut opp[..m]);
            for (off, out) in chunk.chunks_mut(m).enumerate() {
                let f = blk * BLOCK + off;
                if f == 0 {
                    trace(0, false, ur);
                    trace(n - 1, true, opp);
                    outer_state(&self.bcs.left, ur, Some(opp), t, [grid.x_lo, 0.0], model, Direction::X, ul)?;
                } else if f == n {
                    trace(n - 1, true, ul);
                    trace(0, false, opp);
                    outer_state(&self.bcs.right, ul, Some(opp), t, [grid.x_hi, 0.0], model, Direction::X, ur)?;
                } else {
                    trace(f - 1, true, ul);
                    trace(f, false, ur);
                }
                llf_flux(model, ul, ur, Direction::X, out).map_err(|e| state_error(f.min(n - 1), "face flux", e))?;
            }
            Ok(())
        })?;

        let mut l = Field::zeros(n, m);
        let inv_dx = 1.0 / grid.dx;
        let source = self.source;
        par::try_for_each_chunk(self.policy, l.as_mut_slice(), BLOCK * m, |blk, chunk| -> Result<()> {
            let mut s = [0.0; MAX_COMPONENTS];
            let mut acc = [0.0; MAX_COMPONENTS];
            let mut v = [0.0; MAX_COMPONENTS];
            for (off, out) in chunk.chunks_mut(m).enumerate() {
                let j = blk * BLOCK + off;
                for k in 0..m {
                    out[k] = -(flux[(j + 1) * m + k] - flux[j * m + k]) * inv_dx;
                }
                if let Some(src) = source {
                    acc[..m].iter_mut().for_each(|a| *a = 0.0);
                    for xi in [-GAUSS2_OFFSET, GAUSS2_OFFSET] {
                        for (k, vk) in v[..m].iter_mut().enumerate() {
                            *vk = rec.poly(j, k).eval_local(xi);
                        }
                        let x = grid.center(j) + xi * grid.dx;
                        spherical_source(model, &v[..m], x, src.d, src.energy, &mut s[..m])
                            .map_err(|e| state_error(j, "source", e))?;
                        for k in 0..m {
                            acc[k] += 0.5 * s[k];
                        }
                    }
                    for k in 0..m {
                        out[k] += acc[k];
                    }
                }
            }
            Ok(())
        })?;
        let inflow = (0..m).map(|k| flux[k] - flux[n * m + k]).collect();
        Ok((l, inflow))
    }
}

/// 2D flux divergence with two-point Gauss quadrature on every edge.
#[derive(Debug, Clone)]
pub struct Rhs2D {
    pub grid: Grid2D,
    pub model: Model,
    pub bcs: Boundary2D,
    pub recon: Recon2D,
    pub policy: ExecPolicy,
}

impl Rhs2D {
    pub fn new(grid: Grid2D, model: Model, bcs: Boundary2D, spec: Recon2DSpec, policy: ExecPolicy) -> Result<Self> {
        Ok(Self {
            grid,
            model,
            bcs,
            recon: Recon2D::new(spec, grid.dx)?,
            policy,
        })
    }

    /// Returns `L` and the net inflow through the domain boundary, per
    /// component (flux integrated along the boundary, per unit time).
    pub fn eval(&self, u: &Field, t: f64) -> Result<(Field, Vec<f64>)> {
        let grid = &self.grid;
        let model = &self.model;
        let (nx, ny) = (grid.nx, grid.ny);
        let m = u.components();
        let ghosts = if self.recon.spec().mode.uses_ghosts() {
            Some(fill_ghosts_2d(u, grid, &self.bcs, t, model)?)
        } else {
            None
        };
        let rec = self.recon.reconstruct(u, grid, ghosts.as_deref(), self.policy)?;
        // traces at Gauss point g of `side` of cell (i, j), all components
        let trace = |i: usize, j: usize, side: Side, g: usize, out: &mut [f64]| {
            let c = j * nx + i;
            for (k, o) in out.iter_mut().enumerate() {
                *o = rec.side_traces(c, k, side)[g];
            }
        };
        let goff = [-GAUSS2_OFFSET * grid.dx, GAUSS2_OFFSET * grid.dx];

        // x-faces: (j * (nx + 1) + f), face f between cells f-1 and f of row j
        let mut fx = vec![0.0; (nx + 1) * ny * m];
        par::try_for_each_chunk(self.policy, &mut fx, (nx + 1) * m, |j, row| -> Result<()> {
            let yc = grid.center(0, j).1;
            let mut buf = [[0.0; MAX_COMPONENTS]; 5];
            for (f, out) in row.chunks_mut(m).enumerate() {
                let mut pts = [[0.0; MAX_COMPONENTS]; 2];
                for g in 0..2 {
                    let [ul, ur, opp, fl, _] = &mut buf;
                    let (ul, ur, opp) = (&mut ul[..m], &mut ur[..m], &mut opp[..m]);
                    let pos_y = yc + goff[g];
                    if f == 0 {
                        trace(0, j, Side::W, g, ur);
                        trace(nx - 1, j, Side::E, g, opp);
                        outer_state(&self.bcs.x_lo, ur, Some(opp), t, [grid.x_lo, pos_y], model, Direction::X, ul)?;
                    } else if f == nx {
                        trace(nx - 1, j, Side::E, g, ul);
                        trace(0, j, Side::W, g, opp);
                        outer_state(&self.bcs.x_hi, ul, Some(opp), t, [grid.x_hi, pos_y], model, Direction::X, ur)?;
                    } else {
                        trace(f - 1, j, Side::E, g, ul);
                        trace(f, j, Side::W, g, ur);
                    }
                    llf_flux(model, ul, ur, Direction::X, &mut fl[..m])
                        .map_err(|e: InvalidState| state_error(j * nx + f.min(nx - 1), "x-face flux", e))?;
                    pts[g][..m].copy_from_slice(&fl[..m]);
                }
                for k in 0..m {
                    out[k] = 0.5 * (pts[0][k] + pts[1][k]);
                }
            }
            Ok(())
        })?;

        // y-faces: (f * nx + i), face f between rows f-1 and f of column i
        let mut fy = vec![0.0; nx * (ny + 1) * m];
        par::try_for_each_chunk(self.policy, &mut fy, nx * m, |f, row| -> Result<()> {
            let mut buf = [[0.0; MAX_COMPONENTS]; 4];
            for (i, out) in row.chunks_mut(m).enumerate() {
                let xc = grid.center(i, 0).0;
                let mut pts = [[0.0; MAX_COMPONENTS]; 2];
                for g in 0..2 {
                    let [ul, ur, opp, fl] = &mut buf;
                    let (ul, ur, opp) = (&mut ul[..m], &mut ur[..m], &mut opp[..m]);
                    let pos_x = xc + goff[g];
                    if f == 0 {
                        trace(i, 0, Side::S, g, ur);
                        trace(i, ny - 1, Side::N, g, opp);
                        outer_state(&self.bcs.y_lo, ur, Some(opp), t, [pos_x, grid.y_lo], model, Direction::Y, ul)?;
                    } else if f == ny {
                        trace(i, ny - 1, Side::N, g, ul);
                        trace(i, 0, Side::S, g, opp);
                        outer_state(&self.bcs.y_hi, ul, Some(opp), t, [pos_x, grid.y_hi], model, Direction::Y, ur)?;
                    } else {
                        trace(i, f - 1, Side::N, g, ul);
                        trace(i, f, Side::S, g, ur);
                    }
                    llf_flux(model, ul, ur, Direction::Y, &mut fl[..m])
                        .map_err(|e| state_error(f.min(ny - 1) * nx + i, "y-face flux", e))?;
                    pts[g][..m].copy_from_slice(&fl[..m]);
                }
                for k in 0..m {
                    out[k] = 0.5 * (pts[0][k] + pts[1][k]);
                }
            }
            Ok(())
        })?;

        let mut l = Field::zeros(nx * ny, m);
        let inv_dx = 1.0 / grid.dx;
        par::for_each_chunk(self.policy, l.as_mut_slice(), nx * m, |j, row| {
            for (i, out) in row.chunks_mut(m).enumerate() {
                for k in 0..m {
                    let fw = fx[(j * (nx + 1) + i) * m + k];
                    let fe = fx[(j * (nx + 1) + i + 1) * m + k];
                    let fs = fy[(j * nx + i) * m + k];
                    let fn_ = fy[((j + 1) * nx + i) * m + k];
                    out[k] = -((fe - fw) + (fn_ - fs)) * inv_dx;
                }
            }
        });

        let mut inflow = vec![0.0; m];
        for (k, acc) in inflow.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..ny {
                s += fx[(j * (nx + 1)) * m + k] - fx[(j * (nx + 1) + nx) * m + k];
            }
            for i in 0..nx {
                s += fy[i * m + k] - fy[(ny * nx + i) * m + k];
            }
            *acc = s * grid.dx;
        }
        Ok((l, inflow))
    }
}
