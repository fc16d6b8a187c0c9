//! Gauss rules on triangles and segments.

use crate::geometry::{signed_area, Point2};

/// Barycentric coordinates and weights (summing to 1) of the symmetric
/// 3-point interior Gauss rule, exact for quadratics.
pub const TRI3: [([f64; 3], f64); 3] = [
    ([2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0], 1.0 / 3.0),
    ([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0], 1.0 / 3.0),
    ([1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0], 1.0 / 3.0),
];

/// Integrates `f` over the triangle (a, b, c) with the 3-point rule. The
/// callback also receives the barycentric coordinates of each point so that
/// nodal interpolants can be evaluated without a point location.
pub fn integrate_triangle<F>(a: Point2, b: Point2, c: Point2, mut f: F) -> f64
where
    F: FnMut(Point2, [f64; 3]) -> f64,
{
    let area = signed_area(a, b, c).abs();
    let mut acc = 0.0;
    for (lam, w) in TRI3 {
        let p = a * lam[0] + b * lam[1] + c * lam[2];
        acc += w * f(p, lam);
    }
    acc * area
}

/// Vector-valued variant of [`integrate_triangle`].
pub fn integrate_triangle_vec<F, const N: usize>(a: Point2, b: Point2, c: Point2, mut f: F) -> [f64; N]
where
    F: FnMut(Point2, [f64; 3]) -> [f64; N],
{
    let area = signed_area(a, b, c).abs();
    let mut acc = [0.0; N];
    for (lam, w) in TRI3 {
        let p = a * lam[0] + b * lam[1] + c * lam[2];
        let v = f(p, lam);
        for k in 0..N {
            acc[k] += w * v[k];
        }
    }
    for v in acc.iter_mut() {
        *v *= area;
    }
    acc
}

/// 5-point Gauss-Legendre nodes on [-1, 1] and weights (summing to 2); exact
/// up to degree 9.
pub const GAUSS5: [(f64, f64); 5] = [
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.0, 0.568_888_888_888_888_9),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Integrates `f` along the segment [a, b] with respect to arc length.
pub fn integrate_segment<F>(a: Point2, b: Point2, mut f: F) -> f64
where
    F: FnMut(Point2) -> f64,
{
    let half = 0.5 * a.distance(b);
    let mid = a.midpoint(b);
    let dir = (b - a) * 0.5;
    let mut acc = 0.0;
    for (t, w) in GAUSS5 {
        acc += w * f(mid + dir * t);
    }
    acc * half
}
