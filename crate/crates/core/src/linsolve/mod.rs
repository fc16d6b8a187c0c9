//! Direct solution of the condensed system and stability diagnostics.

pub mod direct;
pub mod infsup;

pub use direct::{check_spd, solve_sparse, SolveReport, SpdCheck, RESIDUAL_TOLERANCE};
pub use infsup::{infsup_estimate, INFSUP_CELL_LIMIT};

use crate::assembly::GlobalSystem;
use crate::error::SolveError;

pub fn solve_direct(system: &GlobalSystem) -> Result<SolveReport, SolveError> {
    solve_sparse(&system.matrix, &system.rhs)
}
