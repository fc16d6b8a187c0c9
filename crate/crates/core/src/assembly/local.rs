use crate::error::AssemblyError;
use crate::geometry::Point2;
use crate::mesh::Meshes;
use crate::operators::{half_stencils, Transmission};
use crate::quadrature::TRI3;

/// A forcing term f(x) = (f1, f2).
pub type Forcing<'a> = &'a (dyn Fn(Point2) -> [f64; 2] + Sync);

/// Everything one dual cell contributes, before elimination. The stiffness
/// entries are shared by both velocity components.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCellOperator {
    pub dual: usize,
    pub boundary: bool,
    /// Primal cells touching the dual cell, in order of first appearance.
    pub cells: Vec<usize>,
    /// Cell-cell stiffness, row-major over `cells`.
    pub s_cc: Vec<f64>,
    /// Cell-vertex stiffness.
    pub s_cv: Vec<f64>,
    /// Vertex-vertex stiffness.
    pub s_vv: f64,
    /// Integral over the dual cell of the discrete gradient of each cell basis function.
    pub grad_cells: Vec<[f64; 2]>,
    /// Same for the vertex basis function.
    pub grad_vertex: [f64; 2],
    /// Loads on the cell basis functions from this dual cell.
    pub load_cells: Vec<[f64; 2]>,
    pub load_vertex: [f64; 2],
}

impl DualCellOperator {
    pub fn new(meshes: &Meshes, trans: &Transmission, d: usize, f: Forcing<'_>) -> Self {
        let mu = trans.mu();
        let mut cells: Vec<usize> = Vec::new();
        let local = |c: usize, cells: &mut Vec<usize>| match cells.iter().position(|&x| x == c) {
            Some(i) => i,
            None => {
                cells.push(c);
                cells.len() - 1
            }
        };
        for &s in meshes.tri.of_dual(d) {
            let st = &meshes.tri.sub_triangles()[s];
            local(st.cell_k, &mut cells);
            if let Some(l) = st.cell_l {
                local(l, &mut cells);
            }
        }
        let n = cells.len();
        let mut op = DualCellOperator {
            dual: d,
            boundary: meshes.dual.is_boundary(d),
            cells: Vec::new(),
            s_cc: vec![0.0; n * n],
            s_cv: vec![0.0; n],
            s_vv: 0.0,
            grad_cells: vec![[0.0; 2]; n],
            grad_vertex: [0.0; 2],
            load_cells: vec![[0.0; 2]; n],
            load_vertex: [0.0; 2],
        };

        for &s in meshes.tri.of_dual(d) {
            let st = &meshes.tri.sub_triangles()[s];
            let beta = trans.beta(s);
            let ik = local(st.cell_k, &mut cells);
            let il = st.cell_l.map(|l| local(l, &mut cells));
            let stencils = half_stencils(st, beta, mu[st.cell_k], st.cell_l.map_or(0.0, |l| mu[l]));
            for h in &stencils {
                let mut nodes: Vec<(usize, Point2)> = vec![(ik, h.w_k)];
                if let Some(il) = il {
                    nodes.push((il, h.w_l));
                }
                let weight = h.area * h.mu;
                for &(a, wa) in &nodes {
                    for &(b, wb) in &nodes {
                        op.s_cc[a * n + b] += weight * wa.dot(wb);
                    }
                    op.s_cv[a] += weight * wa.dot(h.w_dual);
                    op.grad_cells[a][0] += h.area * wa.x;
                    op.grad_cells[a][1] += h.area * wa.y;
                }
                op.s_vv += weight * h.w_dual.dot(h.w_dual);
                op.grad_vertex[0] += h.area * h.w_dual.x;
                op.grad_vertex[1] += h.area * h.w_dual.y;
            }

            let (bk, bl, bd) = beta.map_or((0.0, 0.0, 0.0), |b| (b.k, b.l, b.dual));
            for (cell, half) in st.halves() {
                let own = if cell == st.cell_k { ik } else { il.expect("L-half has a cell") };
                let [m_dual, m_center, m_sigma] = node_moments(f, st.x_dual, half.center, st.x_sigma, half.area);
                for i in 0..2 {
                    op.load_cells[own][i] += m_center[i];
                    op.load_cells[ik][i] += bk * m_sigma[i];
                    if let Some(il) = il {
                        op.load_cells[il][i] += bl * m_sigma[i];
                    }
                    op.load_vertex[i] += m_dual[i] + bd * m_sigma[i];
                }
            }
        }
        op.cells = cells;
        op
    }
}

/// Integrals of f times each barycentric coordinate over one half.
pub fn node_moments(f: Forcing<'_>, a: Point2, b: Point2, c: Point2, area: f64) -> [[f64; 2]; 3] {
    let mut m = [[0.0; 2]; 3];
    for (lam, w) in TRI3 {
        let p = a * lam[0] + b * lam[1] + c * lam[2];
        let v = f(p);
        for (node, l) in lam.iter().enumerate() {
            for i in 0..2 {
                m[node][i] += w * area * l * v[i];
            }
        }
    }
    m
}

/// Vertex velocity u^(i)_{K*} as an affine function of the neighboring cell
/// velocities and the dual-cell pressure:
/// u^(i)_{K*} = sum_C cell_coeffs[C] u^(i)_C + pressure_coeff[i] p_{K*} + constant[i].
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationRecord {
    pub dual: usize,
    /// The diagonal of the (scalar multiple of identity) 2x2 vertex system.
    pub diagonal: f64,
    pub cell_coeffs: Vec<(usize, f64)>,
    pub pressure_coeff: [f64; 2],
    pub constant: [f64; 2],
}

/// Relative threshold below which the vertex system is treated as singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-14;

impl EliminationRecord {
    pub fn from_operator(op: &DualCellOperator) -> Result<Self, AssemblyError> {
        let a = op.s_vv;
        let scale = op.s_cc.iter().fold(a.abs(), |m, v| m.max(v.abs()));
        if !(a > SINGULAR_TOLERANCE * scale) {
            return Err(AssemblyError::SingularLocalSystem { dual: op.dual, diagonal: a });
        }
        Ok(EliminationRecord {
            dual: op.dual,
            diagonal: a,
            cell_coeffs: op.cells.iter().zip(&op.s_cv).map(|(&c, &s)| (c, -s / a)).collect(),
            pressure_coeff: [op.grad_vertex[0] / a, op.grad_vertex[1] / a],
            constant: [op.load_vertex[0] / a, op.load_vertex[1] / a],
        })
    }

    pub fn vertex_velocity(&self, cells: &[[f64; 2]], pressure: f64) -> [f64; 2] {
        let mut u = [0.0; 2];
        for (i, ui) in u.iter_mut().enumerate() {
            let mut acc = self.constant[i] + self.pressure_coeff[i] * pressure;
            for &(c, w) in &self.cell_coeffs {
                acc += w * cells[c][i];
            }
            *ui = acc;
        }
        u
    }
}

pub fn local_vertex_elimination(
    meshes: &Meshes,
    trans: &Transmission,
    d: usize,
    f: Forcing<'_>,
) -> Result<EliminationRecord, AssemblyError> {
    EliminationRecord::from_operator(&DualCellOperator::new(meshes, trans, d, f))
}
