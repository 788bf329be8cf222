//! Time loop, error norms and convergence tables.

use crate::error::{Error, Result};
use crate::grid::{cell_average_vec_1d, cell_average_vec_2d, Field, GaussRule};
use crate::par::ExecPolicy;
use crate::recon1d::{Recon1DMode, ReconSpec};
use crate::timeint::{compute_dt, ssp_rk3_step};

use super::{Boundaries, CaseConfig, ExactFn, InitFn, Mesh, Recon, Rhs1D, Rhs2D};

/// Effective weights of the three stage derivatives in one SSP-RK3 step.
const STAGE_WEIGHTS: [f64; 3] = [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0];

const MAX_STEPS: usize = 50_000_000;

/// Per-run overrides of a case.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub n: usize,
    pub policy: ExecPolicy,
    /// Replaces the case's final time.
    pub t_final: Option<f64>,
    /// Replaces the case's CFL number.
    pub cfl: Option<f64>,
}

impl RunOptions {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            policy: ExecPolicy::default(),
            t_final: None,
            cfl: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub field: Field,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub mesh: Mesh,
    pub field: Field,
    pub t: f64,
    pub steps: usize,
    pub snapshots: Vec<Snapshot>,
    /// Component totals (`Σ ū · volume`) of the initial data.
    pub initial_totals: Vec<f64>,
    /// Time integral of the net boundary inflow, per component.
    pub boundary_inflow: Vec<f64>,
    /// 1-norm errors against the exact solution at the final time, if known.
    pub errors: Option<Vec<f64>>,
}

impl RunOutcome {
    pub fn final_totals(&self) -> Vec<f64> {
        self.field.totals(self.mesh.cell_volume())
    }
}

/// Exact cell averages of `f` on `mesh` (3-point Gauss, tensor in 2D).
pub fn sample_cell_averages(mesh: &Mesh, m: usize, f: impl Fn(f64, f64, &mut [f64])) -> Field {
    let rule = GaussRule::legendre(3);
    let mut u = Field::zeros(mesh.ncells(), m);
    match mesh {
        Mesh::OneD(g) => {
            for j in 0..g.n {
                let (lo, hi) = g.cell_bounds(j);
                cell_average_vec_1d(|x, out| f(x, 0.0, out), lo, hi, &rule, u.cell_mut(j));
            }
        }
        Mesh::TwoD(g) => {
            for j in 0..g.ny {
                for i in 0..g.nx {
                    let (xc, yc) = g.center(i, j);
                    cell_average_vec_2d(&f, xc, yc, g.dx, &rule, u.cell_mut(g.index(i, j)));
                }
            }
        }
    }
    u
}

fn initial_field(mesh: &Mesh, m: usize, init: &InitFn) -> Field {
    sample_cell_averages(mesh, m, |x, y, out| init(x, y, out))
}

/// `Σ |ū − ⟨exact⟩| · volume` per component, in cell order.
pub fn error_norm_1(u: &Field, mesh: &Mesh, exact: &ExactFn, t: f64) -> Vec<f64> {
    let m = u.components();
    let ex = sample_cell_averages(mesh, m, |x, y, out| exact(t, x, y, out));
    let vol = mesh.cell_volume();
    (0..m)
        .map(|k| (0..u.ncells()).map(|c| (u.get(c, k) - ex.get(c, k)).abs()).sum::<f64>() * vol)
        .collect()
}

enum Operator {
    OneD(Box<Rhs1D>),
    TwoD(Box<Rhs2D>),
}

impl Operator {
    fn eval(&self, u: &Field, t: f64) -> Result<(Field, Vec<f64>)> {
        match self {
            Operator::OneD(r) => r.eval(u, t),
            Operator::TwoD(r) => r.eval(u, t),
        }
    }
}

fn build_operator(cfg: &CaseConfig, mesh: &Mesh, policy: ExecPolicy) -> Result<Operator> {
    match (mesh, &cfg.boundaries, cfg.recon) {
        (Mesh::OneD(g), Boundaries::OneD(b), Recon::OneD(spec)) => {
            spec.validate(g.dx)?;
            Ok(Operator::OneD(Box::new(Rhs1D {
                grid: *g,
                model: cfg.model,
                bcs: b.clone(),
                spec,
                source: cfg.source,
                policy,
            })))
        }
        (Mesh::TwoD(g), Boundaries::TwoD(b), Recon::TwoD(spec)) => Ok(Operator::TwoD(Box::new(Rhs2D::new(
            *g,
            cfg.model,
            b.clone(),
            spec,
            policy,
        )?))),
        _ => Err(Error::config("dimension mismatch between mesh, boundaries and reconstruction")),
    }
}

/// Runs a case to its final time, recording scheduled snapshots.
pub fn run_case(cfg: &CaseConfig, opts: &RunOptions) -> Result<RunOutcome> {
    cfg.validate()?;
    let t_final = opts.t_final.unwrap_or(cfg.t_final);
    let cfl = opts.cfl.unwrap_or(cfg.cfl);
    if !(t_final > 0.0) || !(cfl > 0.0) {
        return Err(Error::config("final time and CFL number must be positive"));
    }
    let mesh = cfg.mesh(opts.n)?;
    let m = cfg.model.components();
    let op = build_operator(cfg, &mesh, opts.policy)?;
    let mut u = initial_field(&mesh, m, &cfg.initial);
    for c in 0..u.ncells() {
        cfg.model.validate(u.cell(c)).map_err(|e| Error::State {
            cell: c,
            stage: "initial data".into(),
            reason: e.to_string(),
        })?;
    }
    let initial_totals = u.totals(mesh.cell_volume());

    let mut targets: Vec<f64> = cfg.snapshots.iter().copied().filter(|&s| s > 0.0 && s < t_final).collect();
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    targets.push(t_final);

    let dx = mesh.dx();
    let mut t = 0.0;
    let mut steps = 0;
    let mut snapshots = Vec::new();
    let mut inflow = vec![0.0; m];
    let mut next = 0;
    while next < targets.len() {
        let target = targets[next];
        let mut dt = compute_dt(&u, &cfg.model, dx, cfl).map_err(|e| e.at_stage(&format!("step {steps}")))?;
        let hits = t + dt >= target;
        if hits {
            dt = target - t;
        }
        let mut stage_inflow: Vec<Vec<f64>> = Vec::with_capacity(3);
        u = ssp_rk3_step(
            &u,
            |v, ts| {
                let (l, f) = op.eval(v, ts)?;
                stage_inflow.push(f);
                Ok(l)
            },
            t,
            dt,
        )
        .map_err(|e| e.at_stage(&format!("step {steps}")))?;
        for (w, f) in STAGE_WEIGHTS.iter().zip(&stage_inflow) {
            for k in 0..m {
                inflow[k] += dt * w * f[k];
            }
        }
        steps += 1;
        if !u.is_finite() {
            return Err(Error::State {
                cell: (0..u.ncells()).find(|&c| u.cell(c).iter().any(|v| !v.is_finite())).unwrap_or(0),
                stage: format!("after step {steps} at t={:.6e}", t + dt),
                reason: "non-finite cell average".into(),
            });
        }
        if hits {
            t = target;
            next += 1;
            if t < t_final {
                log::info!("{}: snapshot at t={t}", cfg.name);
                snapshots.push(Snapshot { t, field: u.clone() });
            }
        } else {
            t += dt;
        }
        if steps >= MAX_STEPS {
            return Err(Error::config(format!("step limit reached at t={t}")));
        }
    }
    log::info!("{}: {} steps to t={t}", cfg.name, steps);
    // an exact solution may be undefined at t (Burgers past breaking)
    let errors = cfg
        .exact
        .as_ref()
        .map(|ex| error_norm_1(&u, &mesh, ex, t))
        .filter(|e| e.iter().all(|v| v.is_finite()));
    Ok(RunOutcome {
        mesh,
        field: u,
        t,
        steps,
        snapshots,
        initial_totals,
        boundary_inflow: inflow,
        errors,
    })
}

/// Second-order minmod run of a 1D case at `n_ref` cells, used as a
/// high-resolution comparison solution.
pub fn generate_reference(cfg: &CaseConfig, n_ref: usize, policy: ExecPolicy) -> Result<RunOutcome> {
    let mut c = cfg.clone();
    match c.recon {
        Recon::OneD(s) => {
            c.recon = Recon::OneD(ReconSpec {
                mode: Recon1DMode::Minmod,
                ..s
            })
        }
        Recon::TwoD(_) => return Err(Error::config("reference solutions are available for 1D cases only")),
    }
    let mut opts = RunOptions::new(n_ref);
    opts.policy = policy;
    run_case(&c, &opts)
}

/// 1-norm errors at a sequence of resolutions.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub components: Vec<String>,
    /// `(N, errors per component)`, sorted by `N`.
    pub rows: Vec<(usize, Vec<f64>)>,
}

impl ErrorTable {
    pub fn new(components: Vec<String>) -> Self {
        Self {
            components,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, n: usize, errors: Vec<f64>) {
        self.rows.push((n, errors));
        self.rows.sort_by_key(|r| r.0);
    }

    /// `log2(e(N_prev) / e(N))` for row `i ≥ 1`.
    pub fn rates(&self, i: usize) -> Option<Vec<f64>> {
        if i == 0 || i >= self.rows.len() {
            return None;
        }
        let (n0, e0) = &self.rows[i - 1];
        let (n1, e1) = &self.rows[i];
        let ratio = (*n1 as f64 / *n0 as f64).log2();
        Some(e0.iter().zip(e1).map(|(a, b)| (a / b).log2() / ratio).collect())
    }
}
