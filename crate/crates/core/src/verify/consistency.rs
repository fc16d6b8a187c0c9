use crate::geometry::Point2;
use crate::mesh::Meshes;
use crate::operators::{discrete_gradient, NodalValues, Transmission};
use crate::quadrature::{integrate_segment, TRI3};

/// A smooth scalar test function with its gradient and Hessian.
pub trait SmoothField: Sync {
    fn value(&self, p: Point2) -> f64;
    fn gradient(&self, p: Point2) -> Point2;
    /// [u_xx, u_xy, u_yy]
    fn hessian(&self, p: Point2) -> [f64; 3];
}

/// x^2 (1 - x) y (1 - y)
#[derive(Debug, Clone, Copy)]
pub struct CubicBubble;

impl SmoothField for CubicBubble {
    fn value(&self, p: Point2) -> f64 {
        p.x * p.x * (1.0 - p.x) * p.y * (1.0 - p.y)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        let gx = (2.0 * p.x - 3.0 * p.x * p.x) * p.y * (1.0 - p.y);
        let gy = p.x * p.x * (1.0 - p.x) * (1.0 - 2.0 * p.y);
        Point2::new(gx, gy)
    }
    fn hessian(&self, p: Point2) -> [f64; 3] {
        let (x, y) = (p.x, p.y);
        [(2.0 - 6.0 * x) * y * (1.0 - y), (2.0 * x - 3.0 * x * x) * (1.0 - 2.0 * y), -2.0 * x * x * (1.0 - x)]
    }
}

/// sin(pi x) sin(pi y)
#[derive(Debug, Clone, Copy)]
pub struct SineBubble;

impl SmoothField for SineBubble {
    fn value(&self, p: Point2) -> f64 {
        use std::f64::consts::PI;
        (PI * p.x).sin() * (PI * p.y).sin()
    }
    fn gradient(&self, p: Point2) -> Point2 {
        use std::f64::consts::PI;
        let (sx, cx, sy, cy) = ((PI * p.x).sin(), (PI * p.x).cos(), (PI * p.y).sin(), (PI * p.y).cos());
        Point2::new(PI * cx * sy, PI * sx * cy)
    }
    fn hessian(&self, p: Point2) -> [f64; 3] {
        use std::f64::consts::PI;
        let (sx, cx, sy, cy) = ((PI * p.x).sin(), (PI * p.x).cos(), (PI * p.y).sin(), (PI * p.y).cos());
        let k = PI * PI;
        [-k * sx * sy, k * cx * cy, -k * sx * sy]
    }
}

/// An affine field a + b.x, for exactness checks.
#[derive(Debug, Clone, Copy)]
pub struct Affine {
    pub a: f64,
    pub b: Point2,
}

impl SmoothField for Affine {
    fn value(&self, p: Point2) -> f64 {
        self.a + self.b.dot(p)
    }
    fn gradient(&self, _: Point2) -> Point2 {
        self.b
    }
    fn hessian(&self, _: Point2) -> [f64; 3] {
        [0.0; 3]
    }
}

/// Divergence consistency on one interior dual cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualDefect {
    pub dual: usize,
    /// |integral of the discrete derivative - boundary flux|, per direction.
    pub defect: [f64; 2],
    /// |u|_{H2(K*)} + ||grad u||_{L2(K*)}.
    pub local_norm: f64,
}

impl DualDefect {
    pub fn max(&self) -> f64 {
        self.defect[0].max(self.defect[1])
    }
}

/// For every interior dual cell, compares the integral of the discrete
/// partial derivatives of the nodal sample of `u` with the boundary integral
/// of u n over the dual cell (5-point Gauss on each boundary segment).
pub fn consistency_divergence_defect(meshes: &Meshes, trans: &Transmission, u: &dyn SmoothField) -> Vec<DualDefect> {
    let centers = meshes.primal.centers();
    meshes
        .dual
        .interior_indices()
        .map(|d| {
            let mut discrete = Point2::ZERO;
            let mut flux = Point2::ZERO;
            let mut h2 = 0.0;
            let mut g2 = 0.0;
            for &s in meshes.tri.of_dual(d) {
                let st = &meshes.tri.sub_triangles()[s];
                let v = NodalValues {
                    k: u.value(centers[st.cell_k]),
                    l: st.cell_l.map_or(0.0, |l| u.value(centers[l])),
                    dual: u.value(st.x_dual),
                };
                let g = discrete_gradient(st, trans.beta(s), v);
                discrete += g.k * st.half_k.area;
                if let (Some(gl), Some(hl)) = (g.l, st.half_l) {
                    discrete += gl * hl.area;
                }
                for (a, b, n) in st.dual_boundary_segments() {
                    let len = a.distance(b);
                    let along = integrate_segment(a, b, |p| u.value(p));
                    flux += n * (along / len);
                }
                for (_, half) in st.halves() {
                    for (lam, w) in TRI3 {
                        let p = st.x_dual * lam[0] + half.center * lam[1] + st.x_sigma * lam[2];
                        let hs = u.hessian(p);
                        h2 += w * half.area * (hs[0] * hs[0] + 2.0 * hs[1] * hs[1] + hs[2] * hs[2]);
                        g2 += w * half.area * u.gradient(p).norm_squared();
                    }
                }
            }
            DualDefect {
                dual: d,
                defect: [(discrete.x - flux.x).abs(), (discrete.y - flux.y).abs()],
                local_norm: h2.sqrt() + g2.sqrt(),
            }
        })
        .collect()
}

/// Largest raw defect and largest defect relative to the local norm.
pub fn defect_summary(defects: &[DualDefect]) -> (f64, f64) {
    defects.iter().fold((0.0f64, 0.0f64), |(raw, rel), d| {
        let m = d.max();
        let r = if d.local_norm > 0.0 { m / d.local_norm } else { 0.0 };
        (raw.max(m), rel.max(r))
    })
}
