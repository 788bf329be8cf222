//! CSV error tables and field snapshots.
//!
//! Snapshot layout:
//!
//! ```text
//! 1D:  x,<component...>          one row per cell
//! 2D:  i,j,x,y,<component...>    row-major (j outer, i inner)
//! ```
//!
//! Values are printed with 17 significant digits so that reading a snapshot
//! back reproduces the field exactly. Each snapshot has a sidecar
//! `<path>.meta` with one `key=value` per line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::cases::{ErrorTable, Mesh};
use crate::error::{Error, Result};
use crate::grid::{Field, Grid1D, Grid2D};

/// Renders an error table: `N,err_<c>...,rate_<c>...`, errors in
/// scientific notation with 6 significant digits, rates with 2 decimals
/// (empty on the first row).
pub fn format_error_table(table: &ErrorTable) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::config("empty error table"));
    }
    let mut s = String::from("N");
    for c in &table.components {
        write!(s, ",err_{c}").unwrap();
    }
    for c in &table.components {
        write!(s, ",rate_{c}").unwrap();
    }
    s.push('\n');
    for (i, (n, errs)) in table.rows.iter().enumerate() {
        write!(s, "{n}").unwrap();
        for e in errs {
            write!(s, ",{e:.5e}").unwrap();
        }
        match table.rates(i) {
            Some(r) => r.iter().for_each(|v| write!(s, ",{v:.2}").unwrap()),
            None => errs.iter().for_each(|_| s.push(',')),
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn write_error_table(table: &ErrorTable, path: &Path) -> Result<()> {
    fs::write(path, format_error_table(table)?)?;
    Ok(())
}

/// Metadata stored next to a snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotMeta {
    pub case: String,
    pub recon: String,
    pub t: f64,
    pub gamma: Option<f64>,
    pub components: Vec<String>,
}

pub fn meta_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".meta");
    PathBuf::from(p)
}

fn format_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_snapshot(field: &Field, mesh: &Mesh, meta: &SnapshotMeta, path: &Path) -> Result<()> {
    let m = field.components();
    if meta.components.len() != m {
        return Err(Error::config("component names do not match the field"));
    }
    let mut s = String::new();
    let mut kv = String::new();
    match mesh {
        Mesh::OneD(g) => {
            s.push('x');
            for c in &meta.components {
                write!(s, ",{c}").unwrap();
            }
            s.push('\n');
            for j in 0..g.n {
                s.push_str(&format_f(g.center(j)));
                for v in field.cell(j) {
                    write!(s, ",{}", format_f(*v)).unwrap();
                }
                s.push('\n');
            }
            writeln!(kv, "dim=1\nn={}\nx_lo={}\nx_hi={}", g.n, format_f(g.x_lo), format_f(g.x_hi)).unwrap();
        }
        Mesh::TwoD(g) => {
            s.push_str("i,j,x,y");
            for c in &meta.components {
                write!(s, ",{c}").unwrap();
            }
            s.push('\n');
            for j in 0..g.ny {
                for i in 0..g.nx {
                    let (x, y) = g.center(i, j);
                    write!(s, "{i},{j},{},{}", format_f(x), format_f(y)).unwrap();
                    for v in field.cell(g.index(i, j)) {
                        write!(s, ",{}", format_f(*v)).unwrap();
                    }
                    s.push('\n');
                }
            }
            writeln!(
                kv,
                "dim=2\nnx={}\nny={}\nx_lo={}\nx_hi={}\ny_lo={}\ny_hi={}",
                g.nx,
                g.ny,
                format_f(g.x_lo),
                format_f(g.x_hi),
                format_f(g.y_lo),
                format_f(g.y_hi)
            )
            .unwrap();
        }
    }
    writeln!(kv, "t={}", format_f(meta.t)).unwrap();
    if let Some(g) = meta.gamma {
        writeln!(kv, "gamma={}", format_f(g)).unwrap();
    }
    writeln!(kv, "case={}\nrecon={}\ncomponents={}", meta.case, meta.recon, meta.components.join(";")).unwrap();
    fs::write(path, s)?;
    fs::write(meta_path(path), kv)?;
    Ok(())
}

fn parse_f(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("{what}: '{s}': {e}")))
}

/// Reads a snapshot and its sidecar back.
pub fn read_snapshot(path: &Path) -> Result<(Field, Mesh, SnapshotMeta)> {
    let kv_text = fs::read_to_string(meta_path(path))?;
    let get = |key: &str| -> Result<&str> {
        kv_text
            .lines()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| Error::Parse(format!("missing '{key}' in snapshot metadata")))
    };
    let parse_n = |key: &str| -> Result<usize> {
        get(key)?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("{key}: {e}")))
    };
    let mesh = match get("dim")? {
        "1" => Mesh::OneD(Grid1D::new(parse_f(get("x_lo")?, "x_lo")?, parse_f(get("x_hi")?, "x_hi")?, parse_n("n")?)?),
        "2" => Mesh::TwoD(Grid2D::new(
            parse_f(get("x_lo")?, "x_lo")?,
            parse_f(get("x_hi")?, "x_hi")?,
            parse_f(get("y_lo")?, "y_lo")?,
            parse_f(get("y_hi")?, "y_hi")?,
            parse_n("nx")?,
            parse_n("ny")?,
        )?),
        other => return Err(Error::Parse(format!("unknown dimension '{other}'"))),
    };
    let components: Vec<String> = get("components")?.split(';').map(String::from).collect();
    let meta = SnapshotMeta {
        case: get("case")?.to_string(),
        recon: get("recon")?.to_string(),
        t: parse_f(get("t")?, "t")?,
        gamma: get("gamma").ok().map(|g| parse_f(g, "gamma")).transpose()?,
        components,
    };
    let m = meta.components.len();
    let skip = match mesh {
        Mesh::OneD(_) => 1,
        Mesh::TwoD(_) => 4,
    };
    let text = fs::read_to_string(path)?;
    let mut data = Vec::with_capacity(mesh.ncells() * m);
    for (ln, line) in text.lines().enumerate().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != skip + m {
            return Err(Error::Parse(format!("line {}: expected {} columns", ln + 1, skip + m)));
        }
        for f in &fields[skip..] {
            data.push(parse_f(f, "value")?);
        }
    }
    if data.len() != mesh.ncells() * m {
        return Err(Error::Parse(format!(
            "snapshot has {} values, expected {}",
            data.len(),
            mesh.ncells() * m
        )));
    }
    Ok((Field::from_vec(m, data)?, mesh, meta))
}
