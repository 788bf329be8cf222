//! Reconstructions against independent transliteration oracles and
//! refinement studies.

mod common;

use common::{blend_oracle_1d, blend_oracle_2d, class_layout};
use cwfv::cases::{case_by_name, sample_cell_averages, Mesh};
use cwfv::grid::{Field, Grid2D, Side};
use cwfv::models::primitive_to_conserved;
use cwfv::par::ExecPolicy;
use cwfv::recon1d::{interior_kernel, reconstruct_field_1d, Recon1DMode, ReconSpec};
use cwfv::recon2d::{side_points, CellClass, Corner, Recon2D, Recon2DSpec};

#[test]
fn interior_jump_matches_oracle_and_stays_bounded() {
    let spec = ReconSpec::with_mode(Recon1DMode::CwenozGhost);
    let eps = 0.01;
    let (c, _) = interior_kernel(0.0, 0.0, 1.0, &spec, eps);
    let oracle = blend_oracle_1d(0.0, 0.0, 1.0, eps);
    for b in 0..3 {
        assert!((c[b] - oracle[b]).abs() < 1e-13);
    }
    let left = c[0] - 0.5 * c[1] + c[2] / 6.0;
    let right = c[0] + 0.5 * c[1] + c[2] / 6.0;
    assert!(left.abs() <= 0.05, "left face {left}");
    assert!((-0.25..=1.25).contains(&right));
}

#[test]
fn one_dimensional_traces_converge_at_third_order() {
    let f = |x: f64| (std::f64::consts::PI * x - (std::f64::consts::PI * x).sin() / std::f64::consts::PI).sin();
    let max_err = |n: usize| {
        let cfg = case_by_name("lintra-sin").unwrap();
        let mesh = cfg.mesh(n).unwrap();
        let Mesh::OneD(g) = mesh else { unreachable!() };
        let u = sample_cell_averages(&mesh, 1, |x, _, o| o[0] = f(x));
        let rec = reconstruct_field_1d(&u, &g, &ReconSpec::default(), None, ExecPolicy::Sequential).unwrap();
        (0..n)
            .map(|j| {
                let (lo, hi) = g.cell_bounds(j);
                let (l, r) = rec.traces(j, 0);
                (l - f(lo)).abs().max((r - f(hi)).abs())
            })
            .fold(0.0, f64::max)
    };
    let ratio = max_err(80) / max_err(160);
    assert!((6.0..=10.0).contains(&ratio), "refinement ratio {ratio}");
}

fn random_table(seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..25).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[test]
fn every_cell_class_matches_the_oracle() {
    let dx = 0.1;
    let rec = Recon2D::new(Recon2DSpec::default(), dx).unwrap();
    let classes = [
        CellClass::Interior,
        CellClass::Edge(Side::S),
        CellClass::Edge(Side::N),
        CellClass::Edge(Side::W),
        CellClass::Edge(Side::E),
        CellClass::Corner(Corner::SW),
        CellClass::Corner(Corner::SE),
        CellClass::Corner(Corner::NW),
        CellClass::Corner(Corner::NE),
    ];
    for (s, class) in classes.into_iter().enumerate() {
        let t = random_table(s as u64);
        let value = |k: i32, l: i32| t[((l + 2) * 5 + k + 2) as usize];
        let layout = class_layout(class, dx);
        let tau = layout.tau_from.map(|_| 0.3);
        let (c, _) = rec.reconstruct_cell(class, value, tau).unwrap();
        let o = blend_oracle_2d(&layout, &value, tau, dx);
        for b in 0..6 {
            assert!((c[b] - o[b]).abs() < 1e-12, "{class:?} coefficient {b}: {} vs {}", c[b], o[b]);
        }
    }
}

#[test]
fn corner_step_across_the_diagonal_is_bounded() {
    let dx = 0.05;
    let rec = Recon2D::new(Recon2DSpec::default(), dx).unwrap();
    // jump of height 1 across the anti-diagonal k + l = 3/2: the corner
    // cell and its two side neighbours are on the low side
    let value = |k: i32, l: i32| if k + l >= 2 { 1.0 } else { 0.0 };
    // τ as the interior neighbour (1, 1) would compute it
    let (_, tau) = rec
        .reconstruct_cell(CellClass::Interior, |k, l| value(k + 1, l + 1), None)
        .unwrap();
    let class = CellClass::Corner(Corner::SW);
    let (c, _) = rec.reconstruct_cell(class, value, Some(tau)).unwrap();
    let o = blend_oracle_2d(&class_layout(class, dx), &value, Some(tau), dx);
    for b in 0..6 {
        assert!((c[b] - o[b]).abs() < 1e-12);
    }
    let p = cwfv::poly::CellPoly2D::new((0.0, 0.0), 1.0, c);
    for side in [Side::E, Side::W, Side::N, Side::S] {
        for (xi, eta) in side_points(side) {
            let v = p.eval_local(xi, eta);
            assert!((-0.25..=1.25).contains(&v), "{side:?} value {v}");
        }
    }
}

#[test]
fn vortex_traces_converge_at_third_order() {
    let gamma = 1.4;
    let rho = |x: f64, y: f64| cwfv::cases::exact::vortex_primitive(x, y, 5.0, gamma)[0];
    let max_err = |n: usize| {
        let g = Grid2D::new(-5.0, 5.0, -5.0, 5.0, n, n).unwrap();
        let mesh = Mesh::TwoD(g);
        let u: Field = sample_cell_averages(&mesh, 4, |x, y, o| {
            let p = cwfv::cases::exact::vortex_primitive(x, y, 5.0, gamma);
            o.copy_from_slice(&primitive_to_conserved(&p, gamma).unwrap());
        });
        let rec = Recon2D::new(Recon2DSpec::default(), g.dx)
            .unwrap()
            .reconstruct(&u, &g, None, ExecPolicy::Sequential)
            .unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let (xc, yc) = g.center(i, j);
                let t = rec.side_traces(g.index(i, j), 0, Side::E);
                for (v, (xi, eta)) in t.iter().zip(side_points(Side::E)) {
                    worst = worst.max((v - rho(xc + xi * g.dx, yc + eta * g.dx)).abs());
                }
            }
        }
        worst
    };
    let (e50, e100) = (max_err(50), max_err(100));
    let ratio = e50 / e100;
    assert!(ratio > 5.5, "refinement ratio {ratio} ({e50:.3e} -> {e100:.3e})");
}

#[test]
fn boundary_cells_keep_one_dimensional_data_one_dimensional() {
    // data varying only along x must give polynomials with no y dependence
    let n = 9;
    let g = Grid2D::new(0.0, 0.9, 0.0, 0.9, n, n).unwrap();
    let t = random_table(7);
    let data: Vec<f64> = (0..n * n).map(|c| t[c % n]).collect();
    let u = Field::from_vec(1, data).unwrap();
    let rec = Recon2D::new(Recon2DSpec::default(), g.dx)
        .unwrap()
        .reconstruct(&u, &g, None, ExecPolicy::Sequential)
        .unwrap();
    for j in 0..n {
        for i in 0..n {
            let c = rec.poly(i, j, 0).c;
            assert!(c[2].abs() < 1e-13 && c[4].abs() < 1e-13 && c[5].abs() < 1e-13, "cell ({i}, {j}): {c:?}");
        }
    }
}
