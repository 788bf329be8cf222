//! Test-problem registry, semi-discrete operators, the time loop and error
//! measurement.

pub mod exact;
mod rhs;
mod run;

use std::fmt;
use std::sync::Arc;

use crate::bc::{Boundary1D, Boundary2D, BoundaryKind};
use crate::error::{Error, Result};
use crate::grid::{Grid1D, Grid2D};
use crate::models::{primitive_to_conserved, Model, SourceEnergy, GAMMA_AIR};
use crate::recon1d::{Recon1DMode, ReconSpec};
use crate::recon2d::{Recon2DMode, Recon2DSpec};

pub use rhs::{Rhs1D, Rhs2D};
pub use run::{error_norm_1, generate_reference, run_case, sample_cell_averages, ErrorTable, RunOptions, RunOutcome, Snapshot};

/// Initial data `f(x, y, out)` in conserved variables (`y = 0` in 1D).
pub type InitFn = Arc<dyn Fn(f64, f64, &mut [f64]) + Send + Sync>;
/// Exact solution `f(t, x, y, out)` in conserved variables.
pub type ExactFn = Arc<dyn Fn(f64, f64, f64, &mut [f64]) + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Line { x_lo: f64, x_hi: f64 },
    /// `ny` follows from `nx` and the aspect ratio.
    Rect { x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64 },
}

#[derive(Debug, Clone)]
pub enum Boundaries {
    OneD(Boundary1D),
    TwoD(Boundary2D),
}

/// Reconstruction choice for either dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Recon {
    OneD(ReconSpec),
    TwoD(Recon2DSpec),
}

impl Recon {
    pub fn label(&self) -> &'static str {
        match self {
            Recon::OneD(s) => match s.mode {
                Recon1DMode::CwenozGhost => "cwenoz-ghost",
                Recon1DMode::CwenoGhost => "cweno-ghost",
                Recon1DMode::Cwzb3 => "cwzb3",
                Recon1DMode::Cwb3 => "cwb3",
                Recon1DMode::Minmod => "minmod",
            },
            Recon::TwoD(s) => match s.mode {
                Recon2DMode::CwenozGhost => "cwenoz-ghost",
                Recon2DMode::Cwzb => "cwzb3",
            },
        }
    }
}

/// Radially symmetric flow in `d` dimensions solved along the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalSource {
    pub d: u32,
    pub energy: SourceEnergy,
}

/// Spatial mesh of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mesh {
    OneD(Grid1D),
    TwoD(Grid2D),
}

impl Mesh {
    pub fn dx(&self) -> f64 {
        match self {
            Mesh::OneD(g) => g.dx,
            Mesh::TwoD(g) => g.dx,
        }
    }

    pub fn ncells(&self) -> usize {
        match self {
            Mesh::OneD(g) => g.n,
            Mesh::TwoD(g) => g.ncells(),
        }
    }

    pub fn cell_volume(&self) -> f64 {
        match self {
            Mesh::OneD(g) => g.dx,
            Mesh::TwoD(g) => g.dx * g.dx,
        }
    }
}

/// A named test problem.
#[derive(Clone)]
pub struct CaseConfig {
    pub name: String,
    pub model: Model,
    pub geometry: Geometry,
    pub boundaries: Boundaries,
    pub initial: InitFn,
    pub exact: Option<ExactFn>,
    pub t_final: f64,
    pub cfl: f64,
    pub snapshots: Vec<f64>,
    pub source: Option<SphericalSource>,
    pub recon: Recon,
    /// Cells along x when no resolution is requested.
    pub default_n: usize,
    /// Resolution of the minmod reference solution.
    pub reference_n: usize,
}

impl fmt::Debug for CaseConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseConfig")
            .field("name", &self.name)
            .field("model", &self.model)
            .field("geometry", &self.geometry)
            .field("boundaries", &self.boundaries)
            .field("t_final", &self.t_final)
            .field("cfl", &self.cfl)
            .field("snapshots", &self.snapshots)
            .field("source", &self.source)
            .field("recon", &self.recon)
            .finish_non_exhaustive()
    }
}

/// Default CFL number of every problem.
pub const DEFAULT_CFL: f64 = 0.45;

/// Names accepted by [`case_by_name`].
pub const CASE_NAMES: &[&str] = &[
    "lintra-sin",
    "lintra-smooth-dirichlet",
    "lintra-disc-dirichlet",
    "burgers",
    "incoming-wave",
    "sod-wall",
    "sod-spherical",
    "vortex",
    "riemann2d-b",
    "radial-sod",
    "implosion",
    "shock-bubble",
];

impl CaseConfig {
    pub fn dimension(&self) -> usize {
        match self.geometry {
            Geometry::Line { .. } => 1,
            Geometry::Rect { .. } => 2,
        }
    }

    /// Mesh with `n` cells along x.
    pub fn mesh(&self, n: usize) -> Result<Mesh> {
        match self.geometry {
            Geometry::Line { x_lo, x_hi } => Ok(Mesh::OneD(Grid1D::new(x_lo, x_hi, n)?)),
            Geometry::Rect { x_lo, x_hi, y_lo, y_hi } => {
                let ny_f = n as f64 * (y_hi - y_lo) / (x_hi - x_lo);
                let ny = ny_f.round() as usize;
                if (ny_f - ny as f64).abs() > 1e-9 {
                    return Err(Error::config(format!(
                        "{} cells along x do not give square cells on this domain",
                        n
                    )));
                }
                Ok(Mesh::TwoD(Grid2D::new(x_lo, x_hi, y_lo, y_hi, n, ny)?))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0) {
            return Err(Error::config(format!("final time must be positive, got {}", self.t_final)));
        }
        if !(self.cfl > 0.0) {
            return Err(Error::config(format!("CFL number must be positive, got {}", self.cfl)));
        }
        match (&self.boundaries, self.dimension(), &self.recon) {
            (Boundaries::OneD(b), 1, Recon::OneD(_)) => b.validate(&self.model)?,
            (Boundaries::TwoD(b), 2, Recon::TwoD(_)) => b.validate(&self.model)?,
            _ => return Err(Error::config("dimension mismatch between geometry, boundaries and reconstruction")),
        }
        if self.model.dimension() != self.dimension() {
            return Err(Error::config("model dimension does not match the geometry"));
        }
        if let Some(s) = self.source {
            if !matches!(self.model, Model::Euler1D { .. }) {
                return Err(Error::config("the spherical source needs the 1D Euler model"));
            }
            if s.d < 1 {
                return Err(Error::config("spherical source needs d >= 1"));
            }
            if let Geometry::Line { x_lo, .. } = self.geometry {
                if x_lo < 0.0 {
                    return Err(Error::config("spherical source needs a nonnegative radius"));
                }
            }
        }
        Ok(())
    }

    /// Replaces the reconstruction mode by name, keeping the parameters.
    pub fn set_recon_mode(&mut self, mode: &str) -> Result<()> {
        self.recon = match self.recon {
            Recon::OneD(s) => {
                let m = match mode {
                    "cwenoz-ghost" => Recon1DMode::CwenozGhost,
                    "cweno-ghost" => Recon1DMode::CwenoGhost,
                    "cwzb3" => Recon1DMode::Cwzb3,
                    "cwb3" => Recon1DMode::Cwb3,
                    "minmod" => Recon1DMode::Minmod,
                    other => return Err(Error::config(format!("unknown reconstruction '{other}'"))),
                };
                Recon::OneD(ReconSpec { mode: m, ..s })
            }
            Recon::TwoD(s) => {
                let m = match mode {
                    "cwenoz-ghost" => Recon2DMode::CwenozGhost,
                    "cwzb3" => Recon2DMode::Cwzb,
                    other => {
                        return Err(Error::config(format!(
                            "reconstruction '{other}' is not available in 2D (use cwzb3 or cwenoz-ghost)"
                        )))
                    }
                };
                Recon::TwoD(Recon2DSpec { mode: m, ..s })
            }
        };
        Ok(())
    }
}

fn scalar_init(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> InitFn {
    Arc::new(move |x, _, out| out[0] = f(x))
}

fn euler1d_init(f: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static) -> InitFn {
    Arc::new(move |x, _, out| {
        let c = primitive_to_conserved(&f(x), GAMMA_AIR).expect("admissible initial state");
        out.copy_from_slice(&c);
    })
}

fn euler2d_init(f: impl Fn(f64, f64) -> [f64; 4] + Send + Sync + 'static) -> InitFn {
    Arc::new(move |x, y, out| {
        let c = primitive_to_conserved(&f(x, y), GAMMA_AIR).expect("admissible initial state");
        out.copy_from_slice(&c);
    })
}

fn base_1d(name: &str, model: Model, x_lo: f64, x_hi: f64, bcs: Boundary1D, init: InitFn, t_final: f64) -> CaseConfig {
    CaseConfig {
        name: name.to_string(),
        model,
        geometry: Geometry::Line { x_lo, x_hi },
        boundaries: Boundaries::OneD(bcs),
        initial: init,
        exact: None,
        t_final,
        cfl: DEFAULT_CFL,
        snapshots: Vec::new(),
        source: None,
        recon: Recon::OneD(ReconSpec::default()),
        default_n: 100,
        reference_n: 10_000,
    }
}

#[allow(clippy::too_many_arguments)]
fn base_2d(
    name: &str,
    bounds: (f64, f64, f64, f64),
    bcs: Boundary2D,
    init: InitFn,
    t_final: f64,
    default_n: usize,
) -> CaseConfig {
    let (x_lo, x_hi, y_lo, y_hi) = bounds;
    CaseConfig {
        name: name.to_string(),
        model: Model::Euler2D { gamma: GAMMA_AIR },
        geometry: Geometry::Rect { x_lo, x_hi, y_lo, y_hi },
        boundaries: Boundaries::TwoD(bcs),
        initial: init,
        exact: None,
        t_final,
        cfl: DEFAULT_CFL,
        snapshots: Vec::new(),
        source: None,
        recon: Recon::TwoD(Recon2DSpec::default()),
        default_n,
        reference_n: default_n,
    }
}

const SOD_LEFT: [f64; 3] = [1.0, 0.0, 1.0];
const SOD_RIGHT: [f64; 3] = [0.125, 0.0, 0.1];

fn sod(x: f64) -> [f64; 3] {
    if x < 0.5 {
        SOD_LEFT
    } else {
        SOD_RIGHT
    }
}

/// Looks up a registered test problem.
pub fn case_by_name(name: &str) -> Result<CaseConfig> {
    use exact::*;
    let adv = Model::Advection { a: 1.0 };
    let euler1 = Model::Euler1D { gamma: GAMMA_AIR };
    let cfg = match name {
        "lintra-sin" => {
            let mut c = base_1d(name, adv, -1.0, 1.0, Boundary1D::periodic(), scalar_init(sin_critical), 2.0);
            c.exact = Some(Arc::new(|t, x, _, out| out[0] = sin_critical(wrap(x - t, -1.0, 1.0))));
            c.default_n = 160;
            c
        }
        "lintra-smooth-dirichlet" | "lintra-disc-dirichlet" => {
            let smooth = name == "lintra-smooth-dirichlet";
            let g = move |t: f64| {
                if smooth {
                    0.25 - 0.5 * (std::f64::consts::PI * (1.0 + t)).sin()
                } else {
                    step_inflow(t)
                }
            };
            let left = BoundaryKind::dirichlet(if smooth { "smooth-inflow" } else { "step-inflow" }, move |t, _, out| {
                out[0] = g(t)
            });
            let bcs = Boundary1D::new(left, BoundaryKind::FreeFlow);
            let mut c = base_1d(name, adv, -1.0, 1.0, bcs, scalar_init(shifted_sine), if smooth { 1.0 } else { 1.5 });
            c.exact = Some(Arc::new(move |t, x, _, out| {
                out[0] = transport_with_inflow(t, x, -1.0, shifted_sine, g)
            }));
            c.default_n = if smooth { 160 } else { 100 };
            c
        }
        "burgers" => {
            let mut c = base_1d(name, Model::Burgers, -1.0, 1.0, Boundary1D::periodic(), scalar_init(burgers_initial), 1.0);
            c.exact = Some(Arc::new(|t, x, _, out| out[0] = burgers_exact(t, x).unwrap_or(f64::NAN)));
            c.default_n = 25;
            c
        }
        "incoming-wave" => {
            let left = BoundaryKind::dirichlet("pulse", |t, _, out| {
                let d = incoming_pulse(t);
                let s = primitive_to_conserved(&[1.0 + d, 0.0, 1.0 + GAMMA_AIR * d], GAMMA_AIR).expect("admissible pulse");
                out.copy_from_slice(&s);
            });
            let bcs = Boundary1D::new(left, BoundaryKind::Wall);
            let mut c = base_1d(name, euler1, 0.0, 1.0, bcs, euler1d_init(|_| [1.0, 0.0, 1.0]), 1.25);
            c.default_n = 50;
            c
        }
        "sod-wall" => {
            let bcs = Boundary1D::new(BoundaryKind::Wall, BoundaryKind::Wall);
            let mut c = base_1d(name, euler1, 0.0, 1.0, bcs, euler1d_init(sod), 0.6);
            c.snapshots = vec![0.2];
            c.default_n = 400;
            c
        }
        "sod-spherical" => {
            let bcs = Boundary1D::new(BoundaryKind::Wall, BoundaryKind::Wall);
            let mut c = base_1d(name, euler1, 0.0, 1.0, bcs, euler1d_init(sod), 0.65);
            c.snapshots = vec![0.5];
            c.source = Some(SphericalSource { d: 3, energy: SourceEnergy::EnthalpyFlux });
            c.default_n = 400;
            c.reference_n = 4000;
            c
        }
        "vortex" => {
            let init = euler2d_init(|x, y| vortex_primitive(x, y, 5.0, GAMMA_AIR));
            let mut c = base_2d(name, (-5.0, 5.0, -5.0, 5.0), Boundary2D::periodic(), init, 10.0, 50);
            c.exact = Some(Arc::new(|t, x, y, out| {
                let p = vortex_primitive(wrap(x - t, -5.0, 5.0), wrap(y - t, -5.0, 5.0), 5.0, GAMMA_AIR);
                out.copy_from_slice(&primitive_to_conserved(&p, GAMMA_AIR).expect("admissible vortex"));
            }));
            c
        }
        "riemann2d-b" => {
            let init = euler2d_init(|x, y| match (x < 0.0, y < 0.0) {
                (true, false) => [2.0, 0.75, 0.5, 1.0],
                (false, false) => [1.0, 0.75, -0.5, 1.0],
                (true, true) => [1.0, -0.75, 0.5, 1.0],
                (false, true) => [3.0, -0.75, -0.5, 1.0],
            });
            let bcs = Boundary2D::uniform(BoundaryKind::FreeFlow);
            base_2d(name, (-0.5, 0.5, -0.5, 0.5), bcs, init, 0.3, 200)
        }
        "radial-sod" => {
            let init = euler2d_init(|x, y| {
                if (x * x + y * y).sqrt() < 0.5 {
                    [1.0, 0.0, 0.0, 1.0]
                } else {
                    [0.125, 0.0, 0.0, 0.1]
                }
            });
            let bcs = Boundary2D {
                x_lo: BoundaryKind::Symmetry,
                x_hi: BoundaryKind::Wall,
                y_lo: BoundaryKind::Symmetry,
                y_hi: BoundaryKind::Wall,
            };
            base_2d(name, (0.0, 1.0, 0.0, 1.0), bcs, init, 0.2, 200)
        }
        "implosion" => {
            let init = euler2d_init(|x, y| {
                if x + y < 0.15 {
                    [0.125, 0.0, 0.0, 0.14]
                } else {
                    [1.0, 0.0, 0.0, 1.0]
                }
            });
            let bcs = Boundary2D {
                x_lo: BoundaryKind::Symmetry,
                x_hi: BoundaryKind::Wall,
                y_lo: BoundaryKind::Symmetry,
                y_hi: BoundaryKind::Wall,
            };
            let mut c = base_2d(name, (0.0, 0.3, 0.0, 0.3), bcs, init, 0.1, 200);
            c.snapshots = (1..20).map(|k| 0.005 * k as f64).collect();
            c
        }
        "shock-bubble" => {
            let post = [11.0 / 3.0, 2.713_602_101_199_872_2, 0.0, 10.0];
            let state = move |x: f64, y: f64| {
                if x < 0.0 {
                    post
                } else if (x - 0.3).powi(2) + y * y < 0.04 {
                    [0.1, 0.0, 0.0, 1.0]
                } else {
                    [1.0, 0.0, 0.0, 1.0]
                }
            };
            let inflow = primitive_to_conserved(&post, GAMMA_AIR).expect("admissible inflow");
            let bcs = Boundary2D {
                x_lo: BoundaryKind::dirichlet("post-shock", move |_, _, out| out.copy_from_slice(&inflow)),
                x_hi: BoundaryKind::FreeFlow,
                y_lo: BoundaryKind::Symmetry,
                y_hi: BoundaryKind::Wall,
            };
            base_2d(name, (-0.1, 1.6, 0.0, 0.5), bcs, euler2d_init(state), 0.4, 340)
        }
        other => {
            return Err(Error::config(format!(
                "unknown case '{other}'; known cases: {}",
                CASE_NAMES.join(", ")
            )))
        }
    };
    cfg.validate()?;
    Ok(cfg)
}
