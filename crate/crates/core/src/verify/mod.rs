//! Manufactured solutions, error norms, the divergence consistency defect
//! and convergence studies.

pub mod cases;
pub mod consistency;
pub mod convergence;
pub mod norms;

pub use cases::{CaseId, ManufacturedCase};
pub use consistency::{
    consistency_divergence_defect, defect_summary, Affine, CubicBubble, DualDefect, SineBubble, SmoothField,
};
pub use convergence::{measure, run_convergence, solve_case, ConvergenceRow, ConvergenceTable};
pub use norms::{dual_divergence, h1_error_velocity, h1disc_norm, l2_error_pressure, l2_error_velocity};
