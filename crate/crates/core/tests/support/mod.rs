//! Dense un-eliminated reference system: every cell velocity, interior vertex
//! velocity and dual-cell pressure is an unknown, and every equation is
//! assembled half by half from the discrete gradient stencils.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use pfecc::mesh::Meshes;
use pfecc::operators::{half_stencils, DiscretePressure, DiscreteVelocity, Transmission};
use pfecc::quadrature::TRI3;
use pfecc::Point2;

pub struct DenseSolution {
    pub velocity: DiscreteVelocity,
    pub pressure: DiscretePressure,
}

/// Scalar node of the third mesh.
#[derive(Clone, Copy)]
enum Node {
    Cell(usize),
    Vertex(usize),
}

pub fn dense_solve(
    meshes: &Meshes,
    trans: &Transmission,
    f: &dyn Fn(Point2) -> [f64; 2],
    lambda: f64,
    boundary_pressure: bool,
) -> DenseSolution {
    let nc = meshes.primal.num_cells();
    let nd = meshes.dual.len();
    let mut vslot = vec![None; nd];
    let mut pslot = vec![None; nd];
    let (mut nv, mut np) = (0, 0);
    for d in 0..nd {
        if !meshes.dual.is_boundary(d) {
            vslot[d] = Some(nv);
            nv += 1;
        }
        if boundary_pressure || !meshes.dual.is_boundary(d) {
            pslot[d] = Some(np);
            np += 1;
        }
    }
    let nscalar = nc + nv;
    let n = 2 * nscalar + np;
    let index = |node: Node, i: usize| -> Option<usize> {
        match node {
            Node::Cell(c) => Some(2 * c + i),
            Node::Vertex(d) => vslot[d].map(|v| 2 * (nc + v) + i),
        }
    };
    let h = meshes.h();
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);

    for (s, st) in meshes.tri.sub_triangles().iter().enumerate() {
        let beta = trans.beta(s);
        let mu = trans.mu();
        let mu_l = st.cell_l.map_or(0.0, |l| mu[l]);
        let prow = pslot[st.dual].map(|p| 2 * nscalar + p);
        for hs in half_stencils(st, beta, mu[st.cell_k], mu_l) {
            let mut nodes = vec![(Node::Cell(st.cell_k), hs.w_k), (Node::Vertex(st.dual), hs.w_dual)];
            if let Some(l) = st.cell_l {
                nodes.push((Node::Cell(l), hs.w_l));
            }
            for i in 0..2 {
                for &(na, wa) in &nodes {
                    let Some(r) = index(na, i) else { continue };
                    for &(nb, wb) in &nodes {
                        if let Some(c) = index(nb, i) {
                            a[(r, c)] += hs.mu * hs.area * wa.dot(wb);
                        }
                    }
                    if let Some(p) = prow {
                        let w = if i == 0 { wa.x } else { wa.y };
                        a[(r, p)] -= hs.area * w;
                        a[(p, r)] -= hs.area * w;
                    }
                }
            }
        }

        // load: integral of f against the piecewise-linear basis on each half
        let halves = std::iter::once((st.cell_k, &st.half_k)).chain(st.cell_l.zip(st.half_l.as_ref()));
        for (cell, half) in halves {
            let pts = [st.x_dual, half.center, st.x_sigma];
            let mut load = [[0.0; 2]; 3];
            for (lam, w) in TRI3 {
                let x = pts[0] * lam[0] + pts[1] * lam[1] + pts[2] * lam[2];
                let fx = f(x);
                for j in 0..3 {
                    for i in 0..2 {
                        load[j][i] += w * half.area * lam[j] * fx[i];
                    }
                }
            }
            for i in 0..2 {
                if let Some(r) = index(Node::Vertex(st.dual), i) {
                    rhs[r] += load[0][i];
                }
                rhs[2 * cell + i] += load[1][i];
                if let Some(b) = beta {
                    rhs[2 * st.cell_k + i] += b.k * load[2][i];
                    rhs[2 * st.cell_l.unwrap() + i] += b.l * load[2][i];
                    if let Some(r) = index(Node::Vertex(st.dual), i) {
                        rhs[r] += b.dual * load[2][i];
                    }
                }
            }
        }
    }
    for d in 0..nd {
        if let Some(p) = pslot[d] {
            a[(2 * nscalar + p, 2 * nscalar + p)] = -lambda * h * meshes.dual.area(d);
        }
    }

    let x = a.lu().solve(&rhs).expect("dense system is nonsingular");
    let cells = (0..nc).map(|c| [x[2 * c], x[2 * c + 1]]).collect();
    let vertices = (0..nd)
        .map(|d| vslot[d].map_or([0.0; 2], |v| [x[2 * (nc + v)], x[2 * (nc + v) + 1]]))
        .collect();
    let values = pslot.iter().map(|p| p.map_or(0.0, |p| x[2 * nscalar + p])).collect();
    let active = pslot.iter().map(Option::is_some).collect();
    DenseSolution { velocity: DiscreteVelocity { cells, vertices }, pressure: DiscretePressure { values, active } }
}

/// Largest entry-wise difference relative to the largest entry of `b`.
pub fn relative_difference(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

pub fn flatten(v: &[[f64; 2]]) -> Vec<f64> {
    v.iter().flatten().copied().collect()
}
