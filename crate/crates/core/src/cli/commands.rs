use std::fs;
use std::path::Path;

use crate::cli::config::{FieldId, RunConfig};
use crate::cli::output::{solution_csv, solution_vtk};
use crate::cli::{EXIT_CHECK_FAILED, EXIT_NUMERICAL, EXIT_OK};
use crate::error::{Error, Result};
use crate::linsolve::check_spd;
use crate::mesh::{refine_uniform, regularity_report, Meshes};
use crate::operators::{cell_averages, Transmission};
use crate::problem::{solve_stokes, SolveOptions};
use crate::verify::{
    consistency_divergence_defect, defect_summary, measure, run_convergence, Affine, CubicBubble, SineBubble,
    SmoothField,
};

/// Accepted interval for the observed consistency order.
pub const CONSISTENCY_ORDER: (f64, f64) = (1.6, 2.6);
/// Defects below this are reported as exact.
const EXACT: f64 = 1e-12;

fn options(cfg: &RunConfig) -> SolveOptions {
    let mut opts = SolveOptions::default();
    opts.assembly.lambda = cfg.lambda;
    opts.assembly.boundary_pressure = cfg.boundary_pressure;
    opts.viscosity_depth = cfg.viscosity_depth;
    opts
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn check_mesh(cfg: &RunConfig) -> Result<i32> {
    let primal = cfg.mesh.load()?;
    println!(
        "mesh: {} cells, {} vertices ({} interior)",
        primal.num_cells(),
        primal.num_vertices(),
        primal.num_interior_vertices()
    );
    let meshes = Meshes::build(primal)?;
    println!("intersection assumption: ok");
    println!("{}", regularity_report(&meshes));
    let mu = cell_averages(&cfg.viscosity(), &meshes.primal, cfg.viscosity_depth)?;
    Transmission::compute(&meshes, mu)?;
    println!("flux-conservation denominators: ok");
    Ok(EXIT_OK)
}

pub fn solve(cfg: &RunConfig) -> Result<i32> {
    let meshes = Meshes::build(cfg.mesh.load()?)?;
    let forcing = cfg.forcing_fn();
    let sol = solve_stokes(&meshes, &cfg.viscosity(), &*forcing, options(cfg))?;
    let r = &sol.report;
    println!(
        "unknowns: {} ({} velocity, {} pressure), nnz: {}",
        sol.system.dim(),
        sol.system.num_velocity(),
        sol.system.pressure_duals().len(),
        r.nnz
    );
    println!(
        "residual: {:.3e} after {} refinement steps ({:.3} s)",
        r.residual,
        r.refinement_steps,
        r.wall_time.as_secs_f64()
    );
    let spd = check_spd(&sol.system.velocity_block());
    match spd.min_eigenvalue {
        Some(ev) if spd.is_spd => println!("velocity block: SPD, smallest eigenvalue {ev:.6e}"),
        _ => println!("velocity block: not SPD"),
    }
    if let Some(case) = cfg.manufactured() {
        let row = measure(&meshes, &case, &sol);
        println!(
            "errors vs {}: u L2 {:.6e}, p L2 {:.6e}, u H1 {:.6e}",
            case.id, row.err_u_l2, row.err_p_l2, row.err_u_h1
        );
    }

    write_file(&cfg.out, "solution.csv", &solution_csv(&meshes, &sol.velocity, &sol.pressure))?;
    if cfg.vtk {
        write_file(&cfg.out, "solution.vtk", &solution_vtk(&meshes, &sol.velocity, &sol.pressure))?;
    }
    if cfg.export_matrix {
        fs::create_dir_all(&cfg.out)?;
        let path = cfg.out.join("matrix.txt");
        sol.system.export_matrix(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(if spd.is_spd { EXIT_OK } else { EXIT_NUMERICAL })
}

pub fn convergence(cfg: &RunConfig) -> Result<i32> {
    if cfg.levels < 3 {
        return Err(Error::Usage(format!("convergence needs --levels >= 3, got {}", cfg.levels)));
    }
    let case = cfg
        .manufactured()
        .ok_or_else(|| Error::Usage("convergence needs a manufactured case".into()))?;
    let table = run_convergence(&case, cfg.mesh.load()?, cfg.levels, options(cfg))?;
    let csv = table.to_csv();
    print!("{csv}");
    write_file(&cfg.out, "convergence.csv", &csv)?;

    let norms: Vec<String> = table.rows.iter().map(|r| format!("{:.4}", r.norm_u_h1)).collect();
    println!("discrete H1 norm of u_h: {}", norms.join(", "));
    let (u_ok, p_ok) = (table.velocity_decreasing(), table.pressure_decreasing());
    println!("velocity error decreasing: {}", if u_ok { "yes" } else { "no" });
    println!("pressure error decreasing: {}", if p_ok { "yes" } else { "no" });
    Ok(if u_ok && p_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn consistency(cfg: &RunConfig) -> Result<i32> {
    let coarse = Meshes::build(cfg.mesh.load()?)?;
    if coarse.dual.num_interior() == 0 {
        return Err(Error::Usage("mesh has no interior dual cells".into()));
    }
    let fine = Meshes::build(refine_uniform(&coarse.primal)?)?;
    let affine = Affine { a: 0.3, b: crate::Point2::new(1.1, -0.7) };
    let field: &dyn SmoothField = match cfg.field {
        FieldId::Cubic => &CubicBubble,
        FieldId::Sine => &SineBubble,
        FieldId::Linear => &affine,
    };

    let mut levels = Vec::new();
    for m in [&coarse, &fine] {
        let mu = cell_averages(&cfg.viscosity(), &m.primal, cfg.viscosity_depth)?;
        let trans = Transmission::compute(m, mu)?;
        let (raw, rel) = defect_summary(&consistency_divergence_defect(m, &trans, field));
        println!("h = {:.6e}: max defect {raw:.6e}, max relative defect {rel:.6e}", m.h());
        levels.push((m.h(), raw, rel));
    }
    let [(h0, raw0, rel0), (h1, raw1, rel1)] = [levels[0], levels[1]];
    if raw0.max(raw1) < EXACT {
        println!("exact");
        return Ok(EXIT_OK);
    }
    let rate = |a: f64, b: f64| (a / b).ln() / (h0 / h1).ln();
    let order = rate(rel0, rel1);
    println!("observed order: {order:.4} (unnormalized {:.4})", rate(raw0, raw1));
    let ok = order >= CONSISTENCY_ORDER.0 && order <= CONSISTENCY_ORDER.1;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}
