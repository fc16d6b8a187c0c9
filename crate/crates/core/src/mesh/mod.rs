//! The primal mesh, its dual around vertices, and the third (sub-triangle)
//! mesh built from both.

pub mod dual;
pub mod generate;
pub mod io;
pub mod primal;
pub mod refine;
pub mod regularity;
pub mod third;

pub use dual::{DualFace, DualMesh};
pub use generate::{distorted_quad, from_spec, skewed_pair, structured_quad, structured_tri};
pub use io::{load_mesh, save_mesh};
pub use primal::{Edge, PrimalMesh};
pub use refine::refine_uniform;
pub use regularity::{regularity_report, RegularityReport};
pub use third::{Half, SubTriangle, TriMesh};

use crate::error::MeshError;

/// A primal mesh together with the dual and third meshes derived from it.
#[derive(Debug, Clone)]
pub struct Meshes {
    pub primal: PrimalMesh,
    pub dual: DualMesh,
    pub tri: TriMesh,
}

impl Meshes {
    pub fn build(primal: PrimalMesh) -> Result<Self, MeshError> {
        let dual = DualMesh::new(&primal);
        let tri = TriMesh::new(&primal, &dual)?;
        Ok(Meshes { primal, dual, tri })
    }

    pub fn h(&self) -> f64 {
        self.tri.h()
    }
}
