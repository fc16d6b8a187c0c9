//! End-to-end solve: viscosity averages, transmission coefficients,
//! condensed assembly, direct solve and vertex recovery.

use crate::assembly::{assemble_global, recover_vertex_velocities, AssemblyOptions, Forcing, GlobalSystem};
use crate::error::Result;
use crate::linsolve::{solve_direct, SolveReport};
use crate::mesh::Meshes;
use crate::operators::{cell_averages, DiscretePressure, DiscreteVelocity, Transmission, ViscosityField};

#[derive(Debug, Clone)]
pub struct Solution {
    pub transmission: Transmission,
    pub system: GlobalSystem,
    pub report: SolveReport,
    pub velocity: DiscreteVelocity,
    pub pressure: DiscretePressure,
}

/// Settings shared by every solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub assembly: AssemblyOptions,
    /// Midpoint-subdivision depth for the cell viscosity averages.
    pub viscosity_depth: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { assembly: AssemblyOptions::default(), viscosity_depth: 0 }
    }
}

pub fn solve_stokes(
    meshes: &Meshes,
    viscosity: &dyn ViscosityField,
    f: Forcing<'_>,
    opts: SolveOptions,
) -> Result<Solution> {
    let mu = cell_averages(viscosity, &meshes.primal, opts.viscosity_depth)?;
    let transmission = Transmission::compute(meshes, mu)?;
    let system = assemble_global(meshes, &transmission, f, opts.assembly)?;
    let report = solve_direct(&system)?;
    let velocity = recover_vertex_velocities(&system, &report.solution);
    let pressure = system.pressure(&report.solution);
    Ok(Solution { transmission, system, report, velocity, pressure })
}
