//! Conservation laws, the Local Lax-Friedrichs flux and the geometric source
//! term for spherically symmetric gas dynamics.

use std::fmt;

/// Coordinate direction of a flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

/// A state that the model cannot evaluate (nonpositive density or pressure, NaN).
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidState {
    pub reason: &'static str,
    pub value: f64,
}

impl fmt::Display for InvalidState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.reason, self.value)
    }
}

pub type StateResult<T> = std::result::Result<T, InvalidState>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// `u_t + a u_x = 0`
    Advection { a: f64 },
    /// `u_t + (u²)_x = 0`
    Burgers,
    /// Euler equations in `(ρ, ρu, E)`.
    Euler1D { gamma: f64 },
    /// Euler equations in `(ρ, ρu, ρv, E)`.
    Euler2D { gamma: f64 },
}

pub const GAMMA_AIR: f64 = 1.4;

impl Model {
    pub fn components(&self) -> usize {
        match self {
            Model::Advection { .. } | Model::Burgers => 1,
            Model::Euler1D { .. } => 3,
            Model::Euler2D { .. } => 4,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Model::Euler2D { .. } => 2,
            _ => 1,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            Model::Euler1D { gamma } | Model::Euler2D { gamma } => Some(*gamma),
            _ => None,
        }
    }

    pub fn is_euler(&self) -> bool {
        self.gamma().is_some()
    }

    pub fn component_names(&self) -> &'static [&'static str] {
        match self {
            Model::Advection { .. } | Model::Burgers => &["u"],
            Model::Euler1D { .. } => &["rho", "rhou", "E"],
            Model::Euler2D { .. } => &["rho", "rhou", "rhov", "E"],
        }
    }

    /// Index of the momentum component normal to a face in direction `dir`.
    pub fn normal_momentum(&self, dir: Direction) -> Option<usize> {
        match (self, dir) {
            (Model::Euler1D { .. }, Direction::X) => Some(1),
            (Model::Euler2D { .. }, Direction::X) => Some(1),
            (Model::Euler2D { .. }, Direction::Y) => Some(2),
            _ => None,
        }
    }

    /// Pressure of a conserved Euler state.
    #[inline]
    pub fn pressure(&self, u: &[f64]) -> StateResult<f64> {
        let (gamma, rho, kinetic2, e) = match *self {
            Model::Euler1D { gamma } => (gamma, u[0], u[1] * u[1], u[2]),
            Model::Euler2D { gamma } => (gamma, u[0], u[1] * u[1] + u[2] * u[2], u[3]),
            _ => return Err(InvalidState { reason: "pressure of a scalar model", value: f64::NAN }),
        };
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(InvalidState { reason: "nonpositive density", value: rho });
        }
        let p = (gamma - 1.0) * (e - 0.5 * kinetic2 / rho);
        if !(p > 0.0) || !p.is_finite() {
            return Err(InvalidState { reason: "nonpositive pressure", value: p });
        }
        Ok(p)
    }

    /// Exact physical flux in direction `dir`.
    #[inline]
    pub fn flux(&self, u: &[f64], dir: Direction, out: &mut [f64]) -> StateResult<()> {
        match *self {
            Model::Advection { a } => {
                check_finite(u[0])?;
                out[0] = a * u[0];
            }
            Model::Burgers => {
                check_finite(u[0])?;
                out[0] = u[0] * u[0];
            }
            Model::Euler1D { .. } => {
                let p = self.pressure(u)?;
                let vel = u[1] / u[0];
                out[0] = u[1];
                out[1] = u[1] * vel + p;
                out[2] = vel * (u[2] + p);
            }
            Model::Euler2D { .. } => {
                let p = self.pressure(u)?;
                let (n, t) = match dir {
                    Direction::X => (1, 2),
                    Direction::Y => (2, 1),
                };
                let vn = u[n] / u[0];
                out[0] = u[n];
                out[n] = u[n] * vn + p;
                out[t] = u[t] * vn;
                out[3] = vn * (u[3] + p);
            }
        }
        Ok(())
    }

    /// Largest characteristic speed magnitude in direction `dir`.
    #[inline]
    pub fn max_wavespeed(&self, u: &[f64], dir: Direction) -> StateResult<f64> {
        match *self {
            Model::Advection { a } => Ok(a.abs()),
            Model::Burgers => {
                check_finite(u[0])?;
                Ok(2.0 * u[0].abs())
            }
            Model::Euler1D { gamma } => {
                let p = self.pressure(u)?;
                Ok((u[1] / u[0]).abs() + (gamma * p / u[0]).sqrt())
            }
            Model::Euler2D { gamma } => {
                let p = self.pressure(u)?;
                let n = if dir == Direction::X { 1 } else { 2 };
                Ok((u[n] / u[0]).abs() + (gamma * p / u[0]).sqrt())
            }
        }
    }

    pub fn validate(&self, u: &[f64]) -> StateResult<()> {
        if self.is_euler() {
            self.pressure(u).map(|_| ())
        } else {
            check_finite(u[0])
        }
    }
}

fn check_finite(v: f64) -> StateResult<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(InvalidState { reason: "non-finite value", value: v })
    }
}

/// Maximum number of components of any model.
pub const MAX_COMPONENTS: usize = 4;

/// Local Lax-Friedrichs flux `½(f(L) + f(R)) − ½ α (R − L)`,
/// `α = max(λ(L), λ(R))`.
#[inline]
pub fn llf_flux(model: &Model, ul: &[f64], ur: &[f64], dir: Direction, out: &mut [f64]) -> StateResult<()> {
    let m = model.components();
    let mut fl = [0.0; MAX_COMPONENTS];
    let mut fr = [0.0; MAX_COMPONENTS];
    model.flux(ul, dir, &mut fl[..m])?;
    model.flux(ur, dir, &mut fr[..m])?;
    let alpha = model.max_wavespeed(ul, dir)?.max(model.max_wavespeed(ur, dir)?);
    for k in 0..m {
        out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * alpha * (ur[k] - ul[k]);
    }
    Ok(())
}

/// Energy entry of the spherical-symmetry source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceEnergy {
    /// `u (E + p)`
    #[default]
    EnthalpyFlux,
    /// `u p`, the literal alternative reading.
    PressureWork,
}

/// Geometric source `−(d−1)/x · (ρu, ρu², u(E+p))` of radially symmetric
/// flow in `d` dimensions, for a 1D Euler state.
pub fn spherical_source(
    model: &Model,
    u: &[f64],
    x: f64,
    d: u32,
    energy: SourceEnergy,
    out: &mut [f64],
) -> std::result::Result<(), SourceError> {
    if !(x > 0.0) {
        return Err(SourceError::Radius(x));
    }
    let p = model.pressure(u).map_err(SourceError::State)?;
    let vel = u[1] / u[0];
    let f = -((d as f64) - 1.0) / x;
    out[0] = f * u[1];
    out[1] = f * u[1] * vel;
    out[2] = f * match energy {
        SourceEnergy::EnthalpyFlux => vel * (u[2] + p),
        SourceEnergy::PressureWork => vel * p,
    };
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum SourceError {
    Radius(f64),
    State(InvalidState),
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceError::Radius(x) => write!(f, "source evaluated at nonpositive radius {x}"),
            SourceError::State(s) => s.fmt(f),
        }
    }
}

/// `(ρ, u[, v], p)` → `(ρ, ρu[, ρv], E)`.
pub fn primitive_to_conserved(prim: &[f64], gamma: f64) -> StateResult<Vec<f64>> {
    let rho = prim[0];
    let p = *prim.last().unwrap();
    if !(rho > 0.0) {
        return Err(InvalidState { reason: "nonpositive density", value: rho });
    }
    if !(p > 0.0) {
        return Err(InvalidState { reason: "nonpositive pressure", value: p });
    }
    let vel = &prim[1..prim.len() - 1];
    let ke: f64 = 0.5 * rho * vel.iter().map(|v| v * v).sum::<f64>();
    let mut out = Vec::with_capacity(prim.len());
    out.push(rho);
    out.extend(vel.iter().map(|v| rho * v));
    out.push(p / (gamma - 1.0) + ke);
    Ok(out)
}

/// `(ρ, ρu[, ρv], E)` → `(ρ, u[, v], p)`.
pub fn conserved_to_primitive(cons: &[f64], gamma: f64) -> StateResult<Vec<f64>> {
    let rho = cons[0];
    if !(rho > 0.0) {
        return Err(InvalidState { reason: "nonpositive density", value: rho });
    }
    let mom = &cons[1..cons.len() - 1];
    let e = *cons.last().unwrap();
    let ke: f64 = 0.5 * mom.iter().map(|m| m * m).sum::<f64>() / rho;
    let p = (gamma - 1.0) * (e - ke);
    if !(p > 0.0) {
        return Err(InvalidState { reason: "nonpositive pressure", value: p });
    }
    let mut out = Vec::with_capacity(cons.len());
    out.push(rho);
    out.extend(mom.iter().map(|m| m / rho));
    out.push(p);
    Ok(out)
}
