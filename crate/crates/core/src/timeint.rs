//! Three-stage SSP Runge-Kutta stepping and CFL step control.

use crate::error::{Error, Result};
use crate::grid::Field;
use crate::models::{Direction, Model};

/// Stage abscissae of the SSP-RK3 scheme, as fractions of `dt`.
pub const STAGE_TIMES: [f64; 3] = [0.0, 1.0, 0.5];

/// One SSP-RK3 step of `u' = L(u, t)`.
///
/// `rhs(u, t)` returns `L`; errors get the stage index attached.
pub fn ssp_rk3_step<F>(u: &Field, mut rhs: F, t: f64, dt: f64) -> Result<Field>
where
    F: FnMut(&Field, f64) -> Result<Field>,
{
    if !(dt > 0.0) {
        return Err(Error::config(format!("time step must be positive, got {dt}")));
    }
    let stage = |k: usize| move |e: Error| e.at_stage(&format!("stage {k} at t={:.6e}", t + STAGE_TIMES[k - 1] * dt));

    let l0 = rhs(u, t).map_err(stage(1))?;
    let mut u1 = u.clone();
    u1.axpy(dt, &l0);

    let l1 = rhs(&u1, t + dt).map_err(stage(2))?;
    let mut u2 = u1;
    u2.axpy(dt, &l1);
    combine_into(&mut u2, 0.75, u, 0.25);

    let l2 = rhs(&u2, t + 0.5 * dt).map_err(stage(3))?;
    let mut un = u2;
    un.axpy(dt, &l2);
    combine_into(&mut un, 1.0 / 3.0, u, 2.0 / 3.0);
    Ok(un)
}

/// `v ← a·u + b·v`
fn combine_into(v: &mut Field, a: f64, u: &Field, b: f64) {
    for (x, &y) in v.as_mut_slice().iter_mut().zip(u.as_slice()) {
        *x = a * y + b * *x;
    }
}

/// Largest characteristic speed over all cells and the model's directions.
pub fn max_wavespeed(u: &Field, model: &Model) -> Result<f64> {
    let dirs: &[Direction] = if model.dimension() == 2 {
        &[Direction::X, Direction::Y]
    } else {
        &[Direction::X]
    };
    let mut s: f64 = 0.0;
    for c in 0..u.ncells() {
        for &d in dirs {
            let w = model.max_wavespeed(u.cell(c), d).map_err(|e| Error::State {
                cell: c,
                stage: String::new(),
                reason: e.to_string(),
            })?;
            s = s.max(w);
        }
    }
    Ok(s)
}

/// `cfl · dx / max wavespeed`; falls back to `cfl · dx` when nothing moves.
pub fn compute_dt(u: &Field, model: &Model, dx: f64, cfl: f64) -> Result<f64> {
    let s = max_wavespeed(u, model)?;
    if s > 0.0 {
        Ok(cfl * dx / s)
    } else {
        log::warn!("zero wavespeed everywhere, using unit-speed time step");
        Ok(cfl * dx)
    }
}

/// Shortens `dt` so that `t + dt` does not step past the next target time
/// (`targets` sorted ascending; entries ≤ t are ignored).
pub fn clip_dt(t: f64, dt: f64, targets: &[f64]) -> f64 {
    match targets.iter().find(|&&s| s > t) {
        Some(&s) if t + dt >= s => s - t,
        _ => dt,
    }
}
