use crate::geometry::Point2;
use crate::mesh::{Half, SubTriangle};
use crate::operators::transmission::Beta;

/// One velocity component at the three nodes of a sub-triangle. `l` is
/// ignored on boundary pieces.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodalValues {
    pub k: f64,
    pub l: f64,
    pub dual: f64,
}

impl NodalValues {
    pub fn new(k: f64, l: f64, dual: f64) -> Self {
        NodalValues { k, l, dual }
    }
}

/// Constant gradients on the K-half and (for interior pieces) the L-half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubTriangleGradient {
    pub k: Point2,
    pub l: Option<Point2>,
}

/// The reconstructed value at x_sigma; zero on the domain boundary.
pub fn sigma_value(beta: Option<&Beta>, v: NodalValues) -> f64 {
    beta.map_or(0.0, |b| b.k * v.k + b.l * v.l + b.dual * v.dual)
}

fn half_gradient(h: &Half, u_center: f64, u_sigma: f64, u_dual: f64) -> Point2 {
    (h.n_dual_center * u_sigma + h.n_sigma_dual * u_center + h.n_sigma_center * u_dual) * (-1.0 / (2.0 * h.area))
}

pub fn discrete_gradient(st: &SubTriangle, beta: Option<&Beta>, v: NodalValues) -> SubTriangleGradient {
    let us = sigma_value(beta, v);
    SubTriangleGradient {
        k: half_gradient(&st.half_k, v.k, us, v.dual),
        l: st.half_l.as_ref().map(|h| half_gradient(h, v.l, us, v.dual)),
    }
}

/// Divergence of a velocity field on each half.
pub fn discrete_divergence(st: &SubTriangle, beta: Option<&Beta>, u1: NodalValues, u2: NodalValues) -> (f64, Option<f64>) {
    let g1 = discrete_gradient(st, beta, u1);
    let g2 = discrete_gradient(st, beta, u2);
    (g1.k.x + g2.k.y, g1.l.zip(g2.l).map(|(a, b)| a.x + b.y))
}

/// Mismatch of the viscous normal fluxes across [x_sigma, x_{K*}]. Zero on
/// boundary pieces, which have no interface.
pub fn flux_residual(st: &SubTriangle, beta: Option<&Beta>, mu_k: f64, mu_l: f64, v: NodalValues) -> f64 {
    let g = discrete_gradient(st, beta, v);
    match (g.l, st.half_l.as_ref()) {
        (Some(gl), Some(hl)) => (mu_k * g.k.dot(st.half_k.n_sigma_dual) + mu_l * gl.dot(hl.n_sigma_dual)).abs(),
        _ => 0.0,
    }
}

/// The gradient on one half as a linear map of the nodal values:
/// grad = w_k u_K + w_l u_L + w_dual u_{K*}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfStencil {
    pub cell: usize,
    pub area: f64,
    pub mu: f64,
    pub w_k: Point2,
    pub w_l: Point2,
    pub w_dual: Point2,
}

impl HalfStencil {
    pub fn apply(&self, v: NodalValues) -> Point2 {
        self.w_k * v.k + self.w_l * v.l + self.w_dual * v.dual
    }
}

/// Stencils of both halves of a sub-triangle, K-half first.
pub fn half_stencils(st: &SubTriangle, beta: Option<&Beta>, mu_k: f64, mu_l: f64) -> Vec<HalfStencil> {
    let (bk, bl, bd) = beta.map_or((0.0, 0.0, 0.0), |b| (b.k, b.l, b.dual));
    let make = |h: &Half, cell: usize, mu: f64, is_k: bool| {
        let s = -1.0 / (2.0 * h.area);
        let a = h.n_dual_center;
        let own = h.n_sigma_dual;
        let (mut w_k, mut w_l) = (a * (bk * s), a * (bl * s));
        if is_k {
            w_k += own * s;
        } else {
            w_l += own * s;
        }
        HalfStencil { cell, area: h.area, mu, w_k, w_l, w_dual: (a * bd + h.n_sigma_center) * s }
    };
    let mut out = vec![make(&st.half_k, st.cell_k, mu_k, true)];
    if let (Some(h), Some(l)) = (st.half_l.as_ref(), st.cell_l) {
        out.push(make(h, l, mu_l, false));
    }
    out
}
