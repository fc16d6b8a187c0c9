//! Penalty cell-centered finite elements for two-dimensional Stokes flow with
//! variable viscosity on general polygonal meshes.

pub mod assembly;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod linsolve;
pub mod mesh;
pub mod operators;
pub mod problem;
pub mod quadrature;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::Point2;
