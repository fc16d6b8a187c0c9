//! Static condensation of the vertex velocities and assembly of the global
//! system over cell velocities and dual-cell pressures.

pub mod global;
pub mod local;

pub use global::{assemble_global, assemble_rhs, recover_vertex_velocities, AssemblyOptions, GlobalSystem, NodeLoads};
pub use local::{local_vertex_elimination, node_moments, DualCellOperator, EliminationRecord, Forcing};
