use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mesh::{refine_uniform, Meshes, PrimalMesh};
use crate::problem::{solve_stokes, Solution, SolveOptions};
use crate::verify::cases::ManufacturedCase;
use crate::verify::norms::{h1_error_velocity, h1disc_norm, l2_error_pressure, l2_error_velocity};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub dof: usize,
    pub err_u_l2: f64,
    pub err_p_l2: f64,
    pub err_u_h1: f64,
    /// Discrete H1 norm of the computed velocity.
    pub norm_u_h1: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

fn order(e0: f64, e1: f64, h0: f64, h1: f64) -> f64 {
    (e0 / e1).ln() / (h0 / h1).ln()
}

impl ConvergenceTable {
    /// Observed orders (u_l2, p_l2, u_h1) between row `i - 1` and row `i`.
    pub fn orders(&self, i: usize) -> [f64; 3] {
        let (a, b) = (&self.rows[i - 1], &self.rows[i]);
        [
            order(a.err_u_l2, b.err_u_l2, a.h, b.h),
            order(a.err_p_l2, b.err_p_l2, a.h, b.h),
            order(a.err_u_h1, b.err_u_h1, a.h, b.h),
        ]
    }

    pub fn last_orders(&self) -> Option<[f64; 3]> {
        (self.rows.len() >= 2).then(|| self.orders(self.rows.len() - 1))
    }

    pub fn velocity_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].err_u_l2 < w[0].err_u_l2)
    }

    pub fn pressure_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].err_p_l2 < w[0].err_p_l2)
    }

    /// Rows as CSV with 10 significant digits; orders are empty on the first row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,dof,err_u_l2,err_p_l2,err_u_h1,ord_u_l2,ord_p_l2,ord_u_h1\n");
        for (i, r) in self.rows.iter().enumerate() {
            let _ = write!(s, "{:.9e},{},{:.9e},{:.9e},{:.9e}", r.h, r.dof, r.err_u_l2, r.err_p_l2, r.err_u_h1);
            if i == 0 {
                s.push_str(",,,\n");
            } else {
                let o = self.orders(i);
                let _ = writeln!(s, ",{:.9e},{:.9e},{:.9e}", o[0], o[1], o[2]);
            }
        }
        s
    }
}

/// Errors of one solve against a manufactured case.
pub fn measure(meshes: &Meshes, case: &ManufacturedCase, sol: &Solution) -> ConvergenceRow {
    ConvergenceRow {
        h: meshes.h(),
        dof: sol.system.dim(),
        err_u_l2: l2_error_velocity(meshes, &sol.transmission, &sol.velocity, |p| case.velocity(p)),
        err_p_l2: l2_error_pressure(meshes, &sol.pressure, |p| case.pressure(p)),
        err_u_h1: h1_error_velocity(meshes, &sol.velocity, |p| case.velocity(p)),
        norm_u_h1: h1disc_norm(meshes, &sol.velocity),
        residual: sol.report.residual,
    }
}

pub fn solve_case(meshes: &Meshes, case: &ManufacturedCase, opts: SolveOptions) -> Result<Solution> {
    solve_stokes(meshes, &case.viscosity, &|p| case.forcing(p), opts)
}

/// Solves `case` on `levels` meshes, starting from `base` and refining
/// uniformly between levels.
pub fn run_convergence(
    case: &ManufacturedCase,
    base: PrimalMesh,
    levels: usize,
    opts: SolveOptions,
) -> Result<ConvergenceTable> {
    if levels < 2 {
        return Err(Error::Usage(format!("a convergence study needs at least 2 levels, got {levels}")));
    }
    let mut rows = Vec::with_capacity(levels);
    let mut primal = base;
    for level in 0..levels {
        if level > 0 {
            primal = refine_uniform(&primal)?;
        }
        let meshes = Meshes::build(primal.clone())?;
        let sol = solve_case(&meshes, case, opts)?;
        rows.push(measure(&meshes, case, &sol));
    }
    Ok(ConvergenceTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::structured_quad;
    use crate::verify::cases::CaseId;

    #[test]
    fn zero_case_is_solved_exactly() {
        let t = run_convergence(&ManufacturedCase::new(CaseId::Zero), structured_quad(4), 3, SolveOptions::default())
            .unwrap();
        for r in &t.rows {
            assert!(r.err_u_l2 < 1e-12 && r.err_p_l2 < 1e-12 && r.err_u_h1 < 1e-12);
        }
    }

    #[test]
    fn csv_layout() {
        let t = run_convergence(&ManufacturedCase::new(CaseId::Ms1), structured_quad(4), 2, SolveOptions::default())
            .unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "h,dof,err_u_l2,err_p_l2,err_u_h1,ord_u_l2,ord_p_l2,ord_u_h1");
        assert!(lines[1].ends_with(",,,"));
        assert_eq!(lines[2].split(',').count(), 8);
        assert!(t.rows[1].h < t.rows[0].h);
    }

    #[test]
    fn one_level_is_a_usage_error() {
        let r = run_convergence(&ManufacturedCase::new(CaseId::Ms1), structured_quad(4), 1, SolveOptions::default());
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
