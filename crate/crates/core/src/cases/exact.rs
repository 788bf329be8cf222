//! Closed-form solutions and initial profiles of the test problems.

use std::f64::consts::PI;

/// `sin(πx − sin(πx)/π)`, the periodic transport profile with a
/// first-order critical point.
pub fn sin_critical(x: f64) -> f64 {
    (PI * x - (PI * x).sin() / PI).sin()
}

/// `0.25 + 0.5 sin(πx)`
pub fn shifted_sine(x: f64) -> f64 {
    0.25 + 0.5 * (PI * x).sin()
}

/// Maps `x` into the periodic interval `[lo, hi)`.
pub fn wrap(x: f64, lo: f64, hi: f64) -> f64 {
    lo + (x - lo).rem_euclid(hi - lo)
}

/// Inflow value of the discontinuous Dirichlet transport test.
pub fn step_inflow(t: f64) -> f64 {
    if t <= 1.0 {
        0.25
    } else {
        -1.0
    }
}

/// Solution of `u_t + u_x = 0` on `x ≥ x_lo` with data `u0` and inflow
/// `g(t)` at `x_lo`.
pub fn transport_with_inflow(t: f64, x: f64, x_lo: f64, u0: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> f64 {
    let foot = x - t;
    if foot >= x_lo {
        u0(foot)
    } else {
        g(t - (x - x_lo))
    }
}

/// Burgers initial profile `1 − sin(πx)`.
pub fn burgers_initial(x: f64) -> f64 {
    1.0 - (PI * x).sin()
}

/// First shock time of `u_t + (u²)_x = 0` with `u0 = 1 − sin(πx)`:
/// `1 / (2 max(−u0'))`.
pub const BURGERS_BREAKING_TIME: f64 = 1.0 / (2.0 * PI);

/// Pre-shock Burgers solution by fixed-point iteration on the foot of the
/// characteristic, `x = ξ + 2 t u0(ξ)`.
pub fn burgers_exact(t: f64, x: f64) -> Option<f64> {
    if t >= BURGERS_BREAKING_TIME {
        return None;
    }
    // Newton on φ(ξ) = ξ + 2t u0(ξ) − x, monotone before breaking.
    let mut xi = x - 2.0 * t * burgers_initial(x);
    for _ in 0..100 {
        let phi = xi + 2.0 * t * burgers_initial(xi) - x;
        let dphi = 1.0 - 2.0 * t * PI * (PI * xi).cos();
        let step = phi / dphi;
        xi -= step;
        if step.abs() < 1e-14 {
            return Some(burgers_initial(xi));
        }
    }
    None
}

/// Density-pressure pulse of the incoming wave test.
pub fn incoming_pulse(t: f64) -> f64 {
    if (0.0..=0.5).contains(&t) {
        0.01 * (2.0 * PI * t).sin().powi(3)
    } else {
        0.0
    }
}

/// Isentropic vortex of strength `beta` centred at the origin on a unit
/// ambient state moving with velocity `(1, 1)`: primitive `(ρ, u, v, p)`.
pub fn vortex_primitive(x: f64, y: f64, beta: f64, gamma: f64) -> [f64; 4] {
    let r2 = x * x + y * y;
    let a = beta / (2.0 * PI) * ((1.0 - r2) / 2.0).exp();
    let dt = -(gamma - 1.0) * beta * beta / (8.0 * gamma * PI * PI) * (1.0 - r2).exp();
    let temp = 1.0 + dt;
    let rho = temp.powf(1.0 / (gamma - 1.0));
    [rho, 1.0 - a * y, 1.0 + a * x, rho * temp]
}
