use crate::geometry::{signed_area, Point2};
use crate::mesh::primal::PrimalMesh;

/// One piece of a dual cell: the triangle (x_K, x_L, x_{K*}) spanned by an
/// interior primal edge, or the half (x_K, x_sigma, x_{K*}) cut from a
/// boundary edge at its midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualFace {
    Interior { edge: usize, k: usize, l: usize },
    Boundary { edge: usize, k: usize },
}

impl DualFace {
    pub fn edge(&self) -> usize {
        match *self {
            DualFace::Interior { edge, .. } | DualFace::Boundary { edge, .. } => edge,
        }
    }
}

/// Cells built around the primal vertices. Dual point `i` is primal vertex `i`.
#[derive(Debug, Clone)]
pub struct DualMesh {
    points: Vec<Point2>,
    boundary: Vec<bool>,
    areas: Vec<f64>,
    faces: Vec<Vec<DualFace>>,
}

impl DualMesh {
    pub fn new(primal: &PrimalMesh) -> Self {
        let nv = primal.num_vertices();
        let centers = primal.centers();
        let mut faces = vec![Vec::new(); nv];
        let mut areas = vec![0.0; nv];
        for (v, incident) in primal.vertex_edges().iter().enumerate() {
            let xv = primal.vertices()[v];
            for &e in incident {
                let edge = &primal.edges()[e];
                let k = edge.cells[0];
                match edge.neighbor() {
                    Some(l) => {
                        areas[v] += signed_area(centers[k], centers[l], xv).abs();
                        faces[v].push(DualFace::Interior { edge: e, k, l });
                    }
                    None => {
                        let [a, b] = edge.vertices;
                        let mid = primal.vertices()[a].midpoint(primal.vertices()[b]);
                        areas[v] += signed_area(centers[k], mid, xv).abs();
                        faces[v].push(DualFace::Boundary { edge: e, k });
                    }
                }
            }
        }
        let boundary = (0..nv).map(|v| primal.is_boundary_vertex(v)).collect();
        DualMesh { points: primal.vertices().to_vec(), boundary, areas, faces }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_boundary(&self, d: usize) -> bool {
        self.boundary[d]
    }

    /// m(K*).
    pub fn area(&self, d: usize) -> f64 {
        self.areas[d]
    }

    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn faces(&self, d: usize) -> &[DualFace] {
        &self.faces[d]
    }

    /// card(E*_{K*}): boundary segments of the dual cell, counting each
    /// piece on either side of x_sigma separately.
    pub fn edge_count(&self, d: usize) -> usize {
        2 * self.faces[d].len()
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&d| !self.boundary[d])
    }

    pub fn num_interior(&self) -> usize {
        self.boundary.iter().filter(|b| !**b).count()
    }

    /// Vertices of the dual cell boundary (cell centers and edge midpoints).
    pub fn cell_outline(&self, d: usize, primal: &PrimalMesh) -> Vec<Point2> {
        let c = primal.centers();
        let mut pts = vec![self.points[d]];
        for f in &self.faces[d] {
            match *f {
                DualFace::Interior { k, l, .. } => {
                    pts.push(c[k]);
                    pts.push(c[l]);
                }
                DualFace::Boundary { edge, k } => {
                    let [a, b] = primal.edges()[edge].vertices;
                    pts.push(c[k]);
                    pts.push(primal.vertices()[a].midpoint(primal.vertices()[b]));
                }
            }
        }
        pts
    }
}
