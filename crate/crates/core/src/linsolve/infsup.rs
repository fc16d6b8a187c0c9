use nalgebra::{DMatrix, SymmetricEigen};

use crate::assembly::{DualCellOperator, GlobalSystem};
use crate::error::SolveError;
use crate::geometry::signed_area;
use crate::mesh::Meshes;
use crate::operators::Transmission;

/// Largest mesh (in primal cells) accepted by the dense diagnostic.
pub const INFSUP_CELL_LIMIT: usize = 600;

/// Scalar P1 Gram matrix (H1 seminorm plus L2) on the third mesh over the
/// unknowns (cells, then interior vertices); boundary nodes carry zero.
fn p1_gram(meshes: &Meshes, vertex_slot: &[Option<usize>]) -> DMatrix<f64> {
    let nc = meshes.primal.num_cells();
    let nv = vertex_slot.iter().flatten().count();
    let mut g = DMatrix::<f64>::zeros(nc + nv, nc + nv);
    for st in meshes.tri.sub_triangles() {
        let pts = st.element();
        let nodes = [
            Some(st.cell_k),
            st.cell_l,
            vertex_slot[st.dual].map(|v| nc + v),
        ];
        let area = signed_area(pts[0], pts[1], pts[2]).abs();
        let grads: Vec<_> = (0..3)
            .map(|j| {
                let (b, c) = (pts[(j + 1) % 3], pts[(j + 2) % 3]);
                let s = signed_area(pts[0], pts[1], pts[2]);
                (c - b).rot_cw() * (-1.0 / (2.0 * s))
            })
            .collect();
        for a in 0..3 {
            for b in 0..3 {
                if let (Some(i), Some(j)) = (nodes[a], nodes[b]) {
                    let mass = area / 12.0 * if a == b { 2.0 } else { 1.0 };
                    g[(i, j)] += area * grads[a].dot(grads[b]) + mass;
                }
            }
        }
    }
    g
}

/// Discrete inf-sup constant: the smallest singular value of the divergence
/// pairing, measured in the P1 H1 norm for velocities and the L2 norm for
/// dual-cell pressures.
pub fn infsup_estimate(meshes: &Meshes, trans: &Transmission, system: &GlobalSystem) -> Result<f64, SolveError> {
    let nc = meshes.primal.num_cells();
    if nc > INFSUP_CELL_LIMIT {
        return Err(SolveError::MeshTooLarge { cells: nc, limit: INFSUP_CELL_LIMIT });
    }
    let pressures = system.pressure_duals();
    if pressures.is_empty() {
        return Err(SolveError::NoPressureUnknowns);
    }
    let mut vertex_slot = vec![None; meshes.dual.len()];
    let mut nv = 0;
    for d in meshes.dual.interior_indices() {
        vertex_slot[d] = Some(nv);
        nv += 1;
    }
    let n = nc + nv;
    let np = pressures.len();

    // per component: div pairing D_i (np x n)
    let mut div = [DMatrix::<f64>::zeros(np, n), DMatrix::<f64>::zeros(np, n)];
    for (k, &d) in pressures.iter().enumerate() {
        let op = DualCellOperator::new(meshes, trans, d, &|_| [0.0, 0.0]);
        for i in 0..2 {
            for (c, g) in op.cells.iter().zip(&op.grad_cells) {
                div[i][(k, *c)] += g[i];
            }
            if let Some(v) = vertex_slot[d] {
                div[i][(k, nc + v)] += op.grad_vertex[i];
            }
        }
    }

    let gram = p1_gram(meshes, &vertex_slot);
    let chol = gram
        .cholesky()
        .ok_or_else(|| SolveError::SingularMatrix("velocity Gram matrix is not positive definite".into()))?;
    let mut s = DMatrix::<f64>::zeros(np, np);
    for d in &div {
        let x = chol.solve(&d.transpose());
        s += d * x;
    }
    let qinv: Vec<f64> = pressures.iter().map(|&d| 1.0 / meshes.dual.area(d).sqrt()).collect();
    for i in 0..np {
        for j in 0..np {
            s[(i, j)] *= qinv[i] * qinv[j];
        }
    }
    let s = (&s + s.transpose()) * 0.5;
    let eig = SymmetricEigen::new(s);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(min.max(0.0).sqrt())
}
