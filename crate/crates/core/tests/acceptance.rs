//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.

mod support;

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfecc::assembly::{assemble_global, AssemblyOptions};
use pfecc::linsolve::{check_spd, infsup_estimate};
use pfecc::mesh::{distorted_quad, structured_quad, Meshes, SubTriangle};
use pfecc::operators::{
    beta_coefficients, discrete_divergence, discrete_gradient, flux_residual, NodalValues, Transmission,
};
use pfecc::problem::{solve_stokes, SolveOptions};
use pfecc::verify::{
    consistency_divergence_defect, defect_summary, dual_divergence, run_convergence, CaseId, ConvergenceTable,
    CubicBubble, ManufacturedCase, SineBubble, SmoothField,
};
use pfecc::Point2;
use support::{dense_solve, flatten, relative_difference};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn unit_viscosity(meshes: &Meshes) -> Transmission {
    Transmission::compute(meshes, vec![1.0; meshes.primal.num_cells()]).unwrap()
}

fn random_sub_triangle(rng: &mut ChaCha8Rng) -> SubTriangle {
    let xs = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let rot = phi + rng.gen_range(0.3..2.8);
    let along = Point2::new(phi.cos(), phi.sin());
    let d = Point2::new(rot.cos(), rot.sin());
    let (r, tk, tl) = (rng.gen_range(0.2..2.0), rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
    SubTriangle::from_points(xs - d * tk, Some(xs + d * tl), xs, xs + along * r)
}

fn c1_beta() -> Verdict {
    let st = |xl: f64| {
        SubTriangle::from_points(Point2::new(-1.0, 0.0), Some(Point2::new(xl, 0.0)), Point2::ZERO, Point2::new(0.0, 1.0))
    };
    let sym = beta_coefficients(&st(1.0), 1.0, 1.0).unwrap().unwrap();
    let jump = beta_coefficients(&st(1.0), 1.0, 10.0).unwrap().unwrap();
    let close = |b: &pfecc::operators::Beta, e: [f64; 3]| {
        (b.k - e[0]).abs() <= 1e-13 && (b.l - e[1]).abs() <= 1e-13 && (b.dual - e[2]).abs() <= 1e-13
    };
    let hand = close(&sym, [0.5, 0.5, 0.0]) && close(&jump, [1.0 / 11.0, 10.0 / 11.0, 0.0]);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut valid, mut exact) = (0, 0);
    while valid < 10_000 {
        let st = random_sub_triangle(&mut rng);
        let (mk, ml) = (rng.gen_range(0.01..100.0), rng.gen_range(0.01..100.0));
        if let Ok(Some(b)) = beta_coefficients(&st, mk, ml) {
            valid += 1;
            if b.k + b.l + b.dual == 1.0 {
                exact += 1;
            }
        }
    }
    verdict(hand && exact == valid, format!("hand cases {hand}, exact sums {exact}/{valid}"))
}

fn c2_flux() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut n, mut worst) = (0, 0.0f64);
    while n < 1000 {
        let st = random_sub_triangle(&mut rng);
        let (mk, ml) = (rng.gen_range(0.01..100.0), rng.gen_range(0.01..100.0));
        let Ok(Some(b)) = beta_coefficients(&st, mk, ml) else { continue };
        n += 1;
        let vals = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
        let r = flux_residual(&st, Some(&b), mk, ml, NodalValues::new(vals[0], vals[1], vals[2]));
        let len = st.half_k.n_sigma_dual.norm();
        let scale = mk.max(ml)
            * vals.iter().fold(0.0f64, |m, x| m.max(x.abs()))
            * len
            * len
            / st.half_k.area.min(st.half_l.unwrap().area);
        worst = worst.max(r / scale);
    }
    verdict(worst < 1e-12, format!("max scaled residual {worst:.2e} over {n} draws"))
}

fn c3_linear() -> Verdict {
    let meshes = Meshes::build(structured_quad(8)).unwrap();
    let trans = unit_viscosity(&meshes);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let c: f64 = rng.gen_range(-5.0..5.0);
        let f = |p: Point2| g.dot(p) + c;
        for (s, st) in meshes.tri.sub_triangles().iter().enumerate() {
            let Some(xl) = st.x_l() else { continue };
            let v = NodalValues::new(f(st.x_k()), f(xl), f(st.x_dual));
            let dg = discrete_gradient(st, trans.beta(s), v);
            for gh in [dg.k, dg.l.unwrap()] {
                worst = worst.max((gh - g).norm() / g.norm());
            }
        }
    }
    let mut div = 0.0f64;
    for (s, st) in meshes.tri.sub_triangles().iter().enumerate() {
        let Some(xl) = st.x_l() else { continue };
        let u1 = NodalValues::new(st.x_k().x, xl.x, st.x_dual.x);
        let u2 = NodalValues::new(-st.x_k().y, -xl.y, -st.x_dual.y);
        let (dk, dl) = discrete_divergence(st, trans.beta(s), u1, u2);
        div = div.max(dk.abs()).max(dl.unwrap().abs());
    }
    verdict(
        worst < 1e-12 && div < 1e-12,
        format!("max relative gradient error {worst:.2e}, max |div (x,-y)| {div:.2e} (interior sub-triangles)"),
    )
}

fn c4_structure() -> Verdict {
    let lambda = 1.0;
    let (mut asym, mut diag_exact, mut spd_all) = (0.0f64, true, true);
    let mut min_ev = f64::INFINITY;
    for n in [4, 8, 16, 32] {
        let meshes = Meshes::build(structured_quad(n)).unwrap();
        let trans = unit_viscosity(&meshes);
        let opts = AssemblyOptions { lambda, boundary_pressure: false };
        let sys = assemble_global(&meshes, &trans, &|_| [0.0, 0.0], opts).unwrap();
        asym = asym.max(sys.matrix.max_asymmetry() / sys.matrix.max_abs());
        let h = meshes.h();
        for (k, &d) in sys.pressure_duals().iter().enumerate() {
            let row = sys.num_velocity() + k;
            diag_exact &= sys.matrix.get(row, row) == -lambda * h * meshes.dual.area(d);
        }
        let spd = check_spd(&sys.velocity_block());
        spd_all &= spd.is_spd;
        min_ev = min_ev.min(spd.min_eigenvalue.unwrap_or(f64::NAN));
    }
    verdict(
        asym < 1e-12 && diag_exact && spd_all,
        format!("asymmetry {asym:.1e}, penalty diagonal bit-exact {diag_exact}, B SPD {spd_all} (min eig {min_ev:.3e})"),
    )
}

fn c5_oracle() -> Verdict {
    let mut worst = 0.0f64;
    for primal in [structured_quad(3), distorted_quad(3, 0.2)] {
        let meshes = Meshes::build(primal).unwrap();
        let case = ManufacturedCase::new(CaseId::Ms2);
        let f = |p| case.forcing(p);
        let sol = solve_stokes(&meshes, &case.viscosity, &f, SolveOptions::default()).unwrap();
        let dense = dense_solve(&meshes, &sol.transmission, &f, 1.0, false);
        worst = worst
            .max(relative_difference(&flatten(&sol.velocity.cells), &flatten(&dense.velocity.cells)))
            .max(relative_difference(&flatten(&sol.velocity.vertices), &flatten(&dense.velocity.vertices)))
            .max(relative_difference(&sol.pressure.values, &dense.pressure.values));
    }
    verdict(worst < 1e-10, format!("max relative difference {worst:.2e} on quad:3 and distorted 3x3"))
}

fn c6_consistency() -> Verdict {
    let fields: [(&str, &dyn SmoothField); 2] = [("cubic", &CubicBubble), ("sine", &SineBubble)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, field) in fields {
        let mut rows = Vec::new();
        for n in [8, 16] {
            let m = Meshes::build(structured_quad(n)).unwrap();
            let (raw, rel) = defect_summary(&consistency_divergence_defect(&m, &unit_viscosity(&m), field));
            rows.push((m.h(), raw, rel));
        }
        let rate = |a: f64, b: f64| (a / b).ln() / (rows[0].0 / rows[1].0).ln();
        let order = rate(rows[0].2, rows[1].2);
        pass &= (1.6..=2.6).contains(&order);
        parts.push(format!("{name}: order {order:.2} (unnormalized {:.2})", rate(rows[0].1, rows[1].1)));
    }
    verdict(pass, parts.join(", "))
}

/// Integral of |div u_h| over each dual cell: the size of the terms that
/// cancel in the net divergence.
fn divergence_magnitude(meshes: &Meshes, trans: &Transmission, u: &pfecc::operators::DiscreteVelocity) -> Vec<f64> {
    let mut out = vec![0.0; meshes.dual.len()];
    for (s, st) in meshes.tri.sub_triangles().iter().enumerate() {
        let (dk, dl) = discrete_divergence(st, trans.beta(s), u.nodal(st, 0), u.nodal(st, 1));
        out[st.dual] += st.half_k.area * dk.abs() + st.half_l.map_or(0.0, |h| h.area) * dl.map_or(0.0, f64::abs);
    }
    out
}

fn c7_penalty() -> Verdict {
    let meshes = Meshes::build(structured_quad(16)).unwrap();
    let case = ManufacturedCase::new(CaseId::Ms1);
    let mut worst = 0.0f64;
    for lambda in [0.1, 1.0, 10.0] {
        let opts = SolveOptions { assembly: AssemblyOptions { lambda, boundary_pressure: false }, viscosity_depth: 0 };
        let sol = solve_stokes(&meshes, &case.viscosity, &|p| case.forcing(p), opts).unwrap();
        let div = dual_divergence(&meshes, &sol.transmission, &sol.velocity);
        let size = divergence_magnitude(&meshes, &sol.transmission, &sol.velocity);
        let scale = size.iter().copied().fold(0.0, f64::max);
        let h = meshes.h();
        for &d in sol.system.pressure_duals() {
            let penalty = -lambda * h * meshes.dual.area(d) * sol.pressure.values[d];
            worst = worst.max((div[d] - penalty).abs() / scale);
        }
    }
    verdict(
        worst < 1e-10,
        format!("max per-cell mismatch {worst:.2e} relative to max cell integral of |div u_h|, lambda in {{0.1, 1, 10}}"),
    )
}

fn study(id: CaseId, boundary_pressure: bool) -> ConvergenceTable {
    let opts = SolveOptions { assembly: AssemblyOptions { lambda: 1.0, boundary_pressure }, viscosity_depth: 0 };
    run_convergence(&ManufacturedCase::new(id), structured_quad(8), 4, opts).unwrap()
}

fn c8_velocity(tables: &[(CaseId, ConvergenceTable)]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, t) in tables {
        let order = t.last_orders().unwrap()[0];
        let norms: Vec<f64> = t.rows.iter().map(|r| r.norm_u_h1).collect();
        let bounded = norms.iter().all(|&n| n.is_finite() && n <= 1.5 * norms[0]);
        pass &= t.velocity_decreasing() && order >= 1.0 && bounded;
        parts.push(format!(
            "{id}: decreasing {}, last order {order:.2}, H1 norms {:.3}..{:.3}",
            t.velocity_decreasing(),
            norms.iter().copied().fold(f64::INFINITY, f64::min),
            norms.iter().copied().fold(0.0, f64::max)
        ));
    }
    verdict(pass, parts.join("; "))
}

fn c9_pressure(tables: &[(CaseId, ConvergenceTable)]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, t) in tables {
        let order = t.last_orders().unwrap()[1];
        pass &= t.pressure_decreasing() && order >= 0.4;
        parts.push(format!("{id}: decreasing {}, last order {order:.2}", t.pressure_decreasing()));
    }
    verdict(pass, parts.join("; "))
}

fn c10_infsup() -> Verdict {
    let estimates: Vec<f64> = [4, 8, 16]
        .iter()
        .map(|&n| {
            let m = Meshes::build(structured_quad(n)).unwrap();
            let t = unit_viscosity(&m);
            let s = assemble_global(&m, &t, &|_| [0.0, 0.0], AssemblyOptions::default()).unwrap();
            infsup_estimate(&m, &t, &s).unwrap()
        })
        .collect();
    let ratios: Vec<f64> = estimates.windows(2).map(|w| w[1] / w[0]).collect();
    let pass = estimates.iter().all(|&e| e > 0.0) && ratios.iter().all(|&r| r >= 0.5);
    verdict(pass, format!("estimates {estimates:.4?}, level ratios {ratios:.3?}"))
}

fn c11_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(format!("t{threads}"));
        let status = Command::new(env!("CARGO_BIN_EXE_pfecc"))
            .args(["convergence", "--mesh", "quad:8", "--case", "MS-2", "--levels", "4", "--out"])
            .arg(&out)
            .env("PFECC_THREADS", threads)
            .output()
            .unwrap()
            .status;
        outputs.push((status.code(), std::fs::read(out.join("convergence.csv")).unwrap_or_default()));
    }
    let same = !outputs[0].1.is_empty() && outputs[0].1 == outputs[1].1;
    verdict(same, format!("exit codes {:?}/{:?}, CSVs byte-identical {same}", outputs[0].0, outputs[1].0))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let tables: Vec<(CaseId, ConvergenceTable)> =
        [CaseId::Ms1, CaseId::Ms2].into_iter().map(|id| (id, study(id, false))).collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("transmission coefficients", Box::new(c1_beta)),
        ("flux conservation", Box::new(c2_flux)),
        ("linear exactness", Box::new(c3_linear)),
        ("matrix structure", Box::new(c4_structure)),
        ("dense-oracle equivalence", Box::new(c5_oracle)),
        ("divergence consistency rate", Box::new(c6_consistency)),
        ("penalty identity", Box::new(c7_penalty)),
        ("velocity convergence", Box::new(|| c8_velocity(&tables))),
        ("pressure convergence", Box::new(|| c9_pressure(&tables))),
        ("stability diagnostic", Box::new(c10_infsup)),
        ("determinism", Box::new(c11_determinism)),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {name}: {} ({:.2} s)", i + 1, v.detail, t.elapsed().as_secs_f64());
    }

    let bp: Vec<String> = [CaseId::Ms1, CaseId::Ms2]
        .into_iter()
        .map(|id| {
            let o = study(id, true).last_orders().unwrap();
            format!("{id} u {:.2}, p {:.2}", o[0], o[1])
        })
        .collect();
    println!("note: last-interval orders with boundary pressures: {}", bp.join("; "));
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
