use crate::error::OperatorError;
use crate::mesh::{Meshes, SubTriangle};

/// Relative threshold for the flux-conservation denominator.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-12;

/// Weights expressing u_sigma = beta_k u_K + beta_l u_L + beta_dual u_{K*}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta {
    pub k: f64,
    pub l: f64,
    pub dual: f64,
    /// Denominator of the quotients defining `k` and `l`.
    pub denominator: f64,
}

/// Solves the flux-continuity condition across [x_sigma, x_{K*}] for u_sigma.
///
/// Both halves use the same interface segment, with normals of opposite sign.
/// Returns `None` for boundary sub-triangles, where u_sigma = 0.
pub fn beta_coefficients(st: &SubTriangle, mu_k: f64, mu_l: f64) -> Result<Option<Beta>, OperatorError> {
    let Some(half_l) = st.half_l.as_ref() else {
        return Ok(None);
    };
    let terms = |mu: f64, h: &crate::mesh::Half| {
        let b = h.n_sigma_dual;
        let a = h.n_dual_center;
        let t = mu * b.dot(b) / (2.0 * h.area);
        let s = -mu * b.dot(a) / (2.0 * h.area);
        (t, s)
    };
    let (t_k, s_k) = terms(mu_k, &st.half_k);
    let (t_l, s_l) = terms(mu_l, half_l);
    let denominator = s_k + s_l;
    if !(denominator.abs() > HYPOTHESIS_TOLERANCE * (s_k.abs() + s_l.abs())) {
        return Err(OperatorError::HypothesisViolation { dual: st.dual, edge: st.edge, denominator });
    }
    let (k, l) = snap_pair(t_k / denominator, t_l / denominator);
    Ok(Some(Beta { k, l, dual: 1.0 - (k + l), denominator }))
}

/// Rounds both values to a common power-of-two grid, coarse enough that
/// k + l and 1 - (k + l) are representable, so (k + l) + (1 - (k + l)) == 1.
fn snap_pair(k: f64, l: f64) -> (f64, f64) {
    let m = k.abs().max(l.abs()).max(1.0);
    let exp = m.log2().ceil() as i32 + 2;
    let q = 2f64.powi(exp - 52);
    ((k / q).round() * q, (l / q).round() * q)
}

/// Cell viscosities and transmission coefficients for every sub-triangle of
/// a mesh, indexed like [`crate::mesh::TriMesh::sub_triangles`].
#[derive(Debug, Clone)]
pub struct Transmission {
    mu: Vec<f64>,
    betas: Vec<Option<Beta>>,
}

impl Transmission {
    pub fn compute(meshes: &Meshes, mu_cells: Vec<f64>) -> Result<Self, OperatorError> {
        assert_eq!(mu_cells.len(), meshes.primal.num_cells());
        if let Some((c, &v)) = mu_cells.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(OperatorError::NonPositiveViscosity { value: v, at: meshes.primal.centers()[c] });
        }
        let betas = meshes
            .tri
            .sub_triangles()
            .iter()
            .map(|st| beta_coefficients(st, mu_cells[st.cell_k], st.cell_l.map_or(0.0, |l| mu_cells[l])))
            .collect::<Result<_, _>>()?;
        Ok(Transmission { mu: mu_cells, betas })
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn beta(&self, sub: usize) -> Option<&Beta> {
        self.betas[sub].as_ref()
    }
}
