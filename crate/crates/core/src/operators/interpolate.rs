use crate::error::OperatorError;
use crate::geometry::{signed_area, Point2};
use crate::mesh::{Meshes, SubTriangle};
use crate::operators::gradient::{sigma_value, NodalValues};
use crate::operators::transmission::Transmission;

/// Velocity unknowns at the primal cell centers and the dual points. Values
/// at boundary dual points are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteVelocity {
    pub cells: Vec<[f64; 2]>,
    pub vertices: Vec<[f64; 2]>,
}

impl DiscreteVelocity {
    pub fn zeros(meshes: &Meshes) -> Self {
        DiscreteVelocity {
            cells: vec![[0.0; 2]; meshes.primal.num_cells()],
            vertices: vec![[0.0; 2]; meshes.dual.len()],
        }
    }

    /// Samples `f` at every node, leaving boundary dual points at zero.
    pub fn sample(meshes: &Meshes, f: impl Fn(Point2) -> [f64; 2]) -> Self {
        let cells = meshes.primal.centers().iter().map(|&p| f(p)).collect();
        let vertices = (0..meshes.dual.len())
            .map(|d| if meshes.dual.is_boundary(d) { [0.0; 2] } else { f(meshes.dual.points()[d]) })
            .collect();
        DiscreteVelocity { cells, vertices }
    }

    /// Nodal values of component `i` on a sub-triangle.
    pub fn nodal(&self, st: &SubTriangle, i: usize) -> NodalValues {
        NodalValues {
            k: self.cells[st.cell_k][i],
            l: st.cell_l.map_or(0.0, |l| self.cells[l][i]),
            dual: self.vertices[st.dual][i],
        }
    }
}

/// Piecewise-constant pressure on the dual cells. `active[d]` tells whether
/// dual cell `d` carries an unknown; inactive cells hold zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePressure {
    pub values: Vec<f64>,
    pub active: Vec<bool>,
}

fn barycentric(p: Point2, tri: [Point2; 3]) -> [f64; 3] {
    let [a, b, c] = tri;
    let area = signed_area(a, b, c);
    [signed_area(p, b, c) / area, signed_area(a, p, c) / area, signed_area(a, b, p) / area]
}

fn locate<T>(
    meshes: &Meshes,
    p: Point2,
    mut candidates: impl FnMut(usize, &SubTriangle) -> Vec<([Point2; 3], T)>,
) -> Result<([f64; 3], T), OperatorError> {
    const SLACK: f64 = 1e-12;
    for (idx, st) in meshes.tri.sub_triangles().iter().enumerate() {
        for (tri, tag) in candidates(idx, st) {
            let lam = barycentric(p, tri);
            if lam.iter().all(|&l| l >= -SLACK) {
                return Ok((lam, tag));
            }
        }
    }
    Err(OperatorError::PointOutsideDomain(p))
}

/// The interpolant P: linear on each half (x_{K*}, x_C, x_sigma) with the
/// value at x_sigma reconstructed from the transmission coefficients.
pub fn interpolate_p(meshes: &Meshes, trans: &Transmission, u: &DiscreteVelocity, p: Point2) -> Result<[f64; 2], OperatorError> {
    let subs = meshes.tri.sub_triangles();
    let (lam, (sub, is_k)) = locate(meshes, p, |idx, st| {
        let mut v = vec![([st.x_dual, st.x_k(), st.x_sigma], (idx, true))];
        if let Some(xl) = st.x_l() {
            v.push(([st.x_dual, xl, st.x_sigma], (idx, false)));
        }
        v
    })?;
    let st = &subs[sub];
    let mut out = [0.0; 2];
    for (i, o) in out.iter_mut().enumerate() {
        let v = u.nodal(st, i);
        let center = if is_k { v.k } else { v.l };
        *o = lam[0] * v.dual + lam[1] * center + lam[2] * sigma_value(trans.beta(sub), v);
    }
    Ok(out)
}

/// The standard P1 interpolant on the third mesh: linear on (x_K, x_L, x_{K*})
/// and, at the boundary, on (x_K, x_sigma, x_{K*}) with zero at x_sigma.
pub fn interpolate_p1(meshes: &Meshes, u: &DiscreteVelocity, p: Point2) -> Result<[f64; 2], OperatorError> {
    let subs = meshes.tri.sub_triangles();
    let (lam, sub) = locate(meshes, p, |idx, st| vec![(st.element(), idx)])?;
    let st = &subs[sub];
    let mut out = [0.0; 2];
    for (i, o) in out.iter_mut().enumerate() {
        let v = u.nodal(st, i);
        let second = if st.is_boundary() { 0.0 } else { v.l };
        *o = lam[0] * v.k + lam[1] * second + lam[2] * v.dual;
    }
    Ok(out)
}
