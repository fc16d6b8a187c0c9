use std::collections::HashMap;

use crate::error::MeshError;
use crate::geometry::{
    point_strictly_inside, polygon_centroid, polygon_signed_area, segments_cross, Point2,
};

/// An edge of the primal mesh. `cells[0]` traverses `vertices` in its own
/// counter-clockwise order; `cells[1]` is the neighbour across the edge, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub cells: [usize; 2],
    pub boundary: bool,
}

impl Edge {
    pub fn neighbor(&self) -> Option<usize> {
        (!self.boundary).then_some(self.cells[1])
    }
}

/// The user-supplied polygonal partition of the domain.
#[derive(Debug, Clone)]
pub struct PrimalMesh {
    vertices: Vec<Point2>,
    cells: Vec<Vec<usize>>,
    centers: Vec<Point2>,
    areas: Vec<f64>,
    edges: Vec<Edge>,
    cell_edges: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
    boundary_vertex: Vec<bool>,
}

impl PrimalMesh {
    /// Validates the polygons and derives centers, adjacency and boundary flags.
    pub fn new(vertices: Vec<Point2>, cells: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        if vertices.len() < 3 {
            return Err(MeshError::TooFewVertices(vertices.len()));
        }
        if cells.is_empty() {
            return Err(MeshError::NoCells);
        }
        if let Some(v) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(MeshError::NonFiniteVertex { vertex: v });
        }

        let nv = vertices.len();
        let mut used = vec![false; nv];
        let mut centers = Vec::with_capacity(cells.len());
        let mut areas = Vec::with_capacity(cells.len());
        for (c, poly) in cells.iter().enumerate() {
            if let Some(&v) = poly.iter().find(|&&v| v >= nv) {
                return Err(MeshError::InvalidVertexIndex { cell: c, vertex: v, count: nv });
            }
            if poly.len() < 3 {
                return Err(MeshError::NonSimplePolygon { cell: c });
            }
            let pts: Vec<Point2> = poly.iter().map(|&v| vertices[v]).collect();
            if !is_simple(&pts) {
                return Err(MeshError::NonSimplePolygon { cell: c });
            }
            let area = polygon_signed_area(&pts);
            let scale = crate::geometry::point_set_diameter(&pts);
            if !(area > 1e-14 * scale * scale) {
                return Err(MeshError::ZeroAreaCell { cell: c, area });
            }
            let center = polygon_centroid(&pts);
            if !point_strictly_inside(center, &pts) {
                return Err(MeshError::CenterOutsideCell { cell: c, center });
            }
            for &v in poly {
                used[v] = true;
            }
            centers.push(center);
            areas.push(area);
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(MeshError::UnusedVertex { vertex: v });
        }

        // Edges in first-seen order: cells in order, each cell's edges in order.
        let mut edges: Vec<Edge> = Vec::new();
        let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cell_edges = Vec::with_capacity(cells.len());
        for (c, poly) in cells.iter().enumerate() {
            let k = poly.len();
            let mut ce = Vec::with_capacity(k);
            for i in 0..k {
                let (a, b) = (poly[i], poly[(i + 1) % k]);
                let key = (a.min(b), a.max(b));
                match lookup.get(&key) {
                    None => {
                        lookup.insert(key, edges.len());
                        ce.push(edges.len());
                        edges.push(Edge { vertices: [a, b], cells: [c, c], boundary: true });
                    }
                    Some(&e) => {
                        let edge = &mut edges[e];
                        // A consistent neighbour traverses the edge in the opposite direction.
                        if !edge.boundary || edge.vertices != [b, a] {
                            return Err(MeshError::DanglingEdge { a, b, cell: c });
                        }
                        edge.cells[1] = c;
                        edge.boundary = false;
                        ce.push(e);
                    }
                }
            }
            cell_edges.push(ce);
        }

        let mut vertex_edges = vec![Vec::new(); nv];
        let mut boundary_vertex = vec![false; nv];
        for (e, edge) in edges.iter().enumerate() {
            for &v in &edge.vertices {
                vertex_edges[v].push(e);
                if edge.boundary {
                    boundary_vertex[v] = true;
                }
            }
        }

        Ok(PrimalMesh {
            vertices,
            cells,
            centers,
            areas,
            edges,
            cell_edges,
            vertex_edges,
            boundary_vertex,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn centers(&self) -> &[Point2] {
        &self.centers
    }

    pub fn cell_areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge ids of each cell, in the cell's vertex order.
    pub fn cell_edges(&self) -> &[Vec<usize>] {
        &self.cell_edges
    }

    /// Edge ids incident to each vertex.
    pub fn vertex_edges(&self) -> &[Vec<usize>] {
        &self.vertex_edges
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_boundary_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.boundary).count()
    }

    pub fn num_interior_vertices(&self) -> usize {
        self.boundary_vertex.iter().filter(|b| !**b).count()
    }

    pub fn cell_polygon(&self, c: usize) -> Vec<Point2> {
        self.cells[c].iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }
}

fn is_simple(pts: &[Point2]) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i] == pts[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges may only share their common vertex; reject folds.
                let (p, q, r) = if j == i + 1 { (a, b, d) } else { (c, a, b) };
                let u = q - p;
                let v = r - q;
                if u.cross(v) == 0.0 && u.dot(v) < 0.0 {
                    return false;
                }
                continue;
            }
            if segments_cross(a, b, c, d) {
                return false;
            }
        }
    }
    true
}
