//! Fixtures shared by the operator unit tests.

use proptest::prelude::*;

use crate::geometry::Point2;
use crate::mesh::SubTriangle;

/// x_K = (-1, 0), x_L = (1, 0), x_sigma = 0, x_{K*} = (0, 1).
pub fn mirror() -> SubTriangle {
    SubTriangle::from_points(
        Point2::new(-1.0, 0.0),
        Some(Point2::new(1.0, 0.0)),
        Point2::new(0.0, 0.0),
        Point2::new(0.0, 1.0),
    )
}

/// Interior sub-triangles with x_sigma on [x_K, x_L] and halves that are
/// not needle-thin.
pub fn random_sub_triangle() -> impl Strategy<Value = SubTriangle> {
    (
        -1.0f64..1.0,
        -1.0f64..1.0,
        0.0f64..std::f64::consts::TAU,
        0.2f64..2.0,
        0.3f64..2.8,
        0.1f64..2.0,
        0.1f64..2.0,
    )
        .prop_map(|(sx, sy, phi, r, cross, tk, tl)| {
            let xs = Point2::new(sx, sy);
            let along = Point2::new(phi.cos(), phi.sin());
            let rot = phi + cross;
            let d = Point2::new(rot.cos(), rot.sin());
            SubTriangle::from_points(xs - d * tk, Some(xs + d * tl), xs, xs + along * r)
        })
}
