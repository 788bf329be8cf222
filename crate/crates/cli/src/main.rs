use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cwfv::cases::{case_by_name, generate_reference, run_case, CaseConfig, ErrorTable, Mesh, Recon, RunOptions, CASE_NAMES};
use cwfv::grid::Field;
use cwfv::output::{write_error_table, write_snapshot, SnapshotMeta};
use cwfv::recon1d::D0Law;
use cwfv::ExecPolicy;

#[derive(Parser, Debug)]
#[command(name = "cwfv", version, about = "Third-order CWENOZ finite-volume runs and convergence tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a test case at one or more resolutions.
    Run(RunArgs),
    /// List the available test cases.
    Cases,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReconArg {
    CwenozGhost,
    CwenoGhost,
    Cwzb3,
    Cwb3,
    Minmod,
}

impl ReconArg {
    fn name(self) -> &'static str {
        match self {
            ReconArg::CwenozGhost => "cwenoz-ghost",
            ReconArg::CwenoGhost => "cweno-ghost",
            ReconArg::Cwzb3 => "cwzb3",
            ReconArg::Cwb3 => "cwb3",
            ReconArg::Minmod => "minmod",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum D0Arg {
    Dx,
    Dx2,
    /// min(dx, 0.01)
    Capped,
}

impl D0Arg {
    fn law(self) -> D0Law {
        match self {
            D0Arg::Dx => D0Law::Dx,
            D0Arg::Dx2 => D0Law::Dx2,
            D0Arg::Capped => D0Law::Capped(1.0),
        }
    }
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Test case name (see `cwfv cases`).
    #[arg(long)]
    case: String,
    /// Cells along x, comma separated and ascending for a convergence sweep.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Reconstruction (default: the case's own)
    #[arg(long, value_enum)]
    recon: Option<ReconArg>,
    /// Linear weight law of the constant boundary candidate.
    #[arg(long, value_enum)]
    d0: Option<D0Arg>,
    /// Exponent m in ε = dx^m.
    #[arg(long = "eps-exp")]
    eps_exp: Option<f64>,
    /// Power p of the nonlinear weights.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Final time (default: the case's own)
    #[arg(long)]
    tfinal: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also compute a minmod reference solution (1D only), optionally at the given resolution.
    #[arg(long, num_args = 0..=1, default_missing_value = "0")]
    reference: Option<usize>,
    /// Run the data-parallel loops sequentially.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<cwfv::Error> for Failure {
    fn from(e: cwfv::Error) -> Self {
        match e {
            cwfv::Error::Config(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn configure(args: &RunArgs) -> Result<CaseConfig, Failure> {
    let mut cfg = case_by_name(&args.case)
        .map_err(|_| Failure::Usage(format!("unknown case '{}'; known cases: {}", args.case, CASE_NAMES.join(", "))))?;
    if let Some(r) = args.recon {
        cfg.set_recon_mode(r.name())?;
    }
    match &mut cfg.recon {
        Recon::OneD(s) => {
            if let Some(d) = args.d0 {
                s.d0_law = d.law();
            }
            if let Some(e) = args.eps_exp {
                s.eps_exp = e;
            }
            if let Some(p) = args.p {
                s.p = p;
            }
        }
        Recon::TwoD(s) => {
            if let Some(d) = args.d0 {
                s.corner_d0 = d.law();
            }
            if let Some(e) = args.eps_exp {
                s.eps_exp = e;
            }
            if let Some(p) = args.p {
                s.p = p;
            }
        }
    }
    if let Some(c) = args.cfl {
        cfg.cfl = c;
    }
    if let Some(t) = args.tfinal {
        cfg.t_final = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn resolutions(args: &RunArgs, cfg: &CaseConfig) -> Result<Vec<usize>, Failure> {
    if args.n.is_empty() {
        return Ok(vec![cfg.default_n]);
    }
    if args.n.iter().any(|&n| n < 3) {
        return Err(Failure::Usage("every resolution needs at least 3 cells".into()));
    }
    if args.n.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Usage("resolutions must be strictly ascending".into()));
    }
    Ok(args.n.clone())
}

fn snapshot_name(case: &str, recon: &str, n: usize, t: f64) -> String {
    format!("{case}_{recon}_n{n}_t{t:.4}.csv")
}

fn write_field(cfg: &CaseConfig, recon: &str, field: &Field, mesh: &Mesh, t: f64, dir: &Path, name: &str) -> Result<(), Failure> {
    let meta = SnapshotMeta {
        case: cfg.name.clone(),
        recon: recon.to_string(),
        t,
        gamma: cfg.model.gamma(),
        components: cfg.model.component_names().iter().map(|s| s.to_string()).collect(),
    };
    let path = dir.join(name);
    write_snapshot(field, mesh, &meta, &path)?;
    log::info!("wrote {}", path.display());
    Ok(())
}

/// 1-norm distance to a reference run on a grid `ratio` times finer.
fn reference_errors(u: &Field, dx: f64, reference: &Field, ratio: usize) -> Vec<f64> {
    let m = u.components();
    (0..m)
        .map(|k| {
            (0..u.ncells())
                .map(|j| {
                    let avg = (0..ratio).map(|r| reference.get(j * ratio + r, k)).sum::<f64>() / ratio as f64;
                    (u.get(j, k) - avg).abs()
                })
                .sum::<f64>()
                * dx
        })
        .collect()
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let cfg = configure(&args)?;
    let ns = resolutions(&args, &cfg)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Failure::Runtime(format!("{}: {e}", args.out.display())))?;
    let policy = if args.sequential {
        ExecPolicy::Sequential
    } else {
        ExecPolicy::Parallel
    };
    let recon = cfg.recon.label();

    let reference = match args.reference {
        None => None,
        Some(nr) => {
            let nr = if nr == 0 { cfg.reference_n } else { nr };
            eprintln!("{}: minmod reference with {nr} cells", cfg.name);
            let r = generate_reference(&cfg, nr, policy)?;
            write_field(&cfg, "minmod", &r.field, &r.mesh, r.t, &args.out, &format!("{}_reference_n{nr}.csv", cfg.name))?;
            Some((nr, r))
        }
    };

    let components = cfg.model.component_names().iter().map(|s| s.to_string()).collect();
    let mut table = ErrorTable::new(components);
    for &n in &ns {
        let mut opts = RunOptions::new(n);
        opts.policy = policy;
        let out = run_case(&cfg, &opts)?;
        for s in &out.snapshots {
            write_field(&cfg, recon, &s.field, &out.mesh, s.t, &args.out, &snapshot_name(&cfg.name, recon, n, s.t))?;
        }
        write_field(&cfg, recon, &out.field, &out.mesh, out.t, &args.out, &snapshot_name(&cfg.name, recon, n, out.t))?;
        let errors = match (&out.errors, &reference) {
            (Some(e), _) => Some(e.clone()),
            (None, Some((nr, r))) if nr % n == 0 => Some(reference_errors(&out.field, out.mesh.dx(), &r.field, nr / n)),
            (None, Some((nr, _))) => {
                log::warn!("reference resolution {nr} is not a multiple of {n}; no errors for this run");
                None
            }
            (None, None) => None,
        };
        match errors {
            Some(e) => {
                eprintln!("{} n={n}: {} steps, errors {:?}", cfg.name, out.steps, e);
                table.push(n, e);
            }
            None => eprintln!("{} n={n}: {} steps to t={}", cfg.name, out.steps, out.t),
        }
    }
    if !table.rows.is_empty() {
        let path = args.out.join(format!("{}_{recon}_errors.csv", cfg.name));
        write_error_table(&table, &path)?;
        print!("{}", cwfv::output::format_error_table(&table)?);
    }
    Ok(())
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CWFV_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("CWFV_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = init_threads().and_then(|_| match cli.command {
        Command::Run(args) => run(args),
        Command::Cases => {
            for name in CASE_NAMES {
                println!("{name}");
            }
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
