//! Planar points and the handful of vector operations the scheme needs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Rotation by 90 degrees clockwise. Applied to a counter-clockwise edge
    /// vector this yields the outward normal with the edge's length.
    #[inline]
    pub fn rot_cw(self) -> Point2 {
        Point2::new(self.y, -self.x)
    }

    #[inline]
    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, rhs: Point2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

/// Signed area of the triangle (a, b, c); positive when counter-clockwise.
#[inline]
pub fn signed_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * (b - a).cross(c - a)
}

/// Signed area of a polygon via the shoelace formula.
pub fn polygon_signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * twice
}

/// Area centroid of a simple polygon. Falls back to the vertex mean when the
/// area vanishes.
pub fn polygon_centroid(pts: &[Point2]) -> Point2 {
    let n = pts.len();
    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    // Shift by the first vertex for conditioning.
    let o = pts[0];
    for i in 0..n {
        let p = pts[i] - o;
        let q = pts[(i + 1) % n] - o;
        let w = p.cross(q);
        twice_area += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if twice_area == 0.0 {
        let mut s = Point2::ZERO;
        for p in pts {
            s += *p;
        }
        return s * (1.0 / n as f64);
    }
    let denom = 3.0 * twice_area;
    Point2::new(o.x + cx / denom, o.y + cy / denom)
}

/// Diameter of the circumscribed circle of a triangle.
pub fn circumdiameter(a: Point2, b: Point2, c: Point2) -> f64 {
    let ba = b - a;
    let ca = c - a;
    let d = 2.0 * ba.cross(ca);
    if d == 0.0 {
        return f64::INFINITY;
    }
    let b2 = ba.norm_squared();
    let c2 = ca.norm_squared();
    let ux = (ca.y * b2 - ba.y * c2) / d;
    let uy = (ba.x * c2 - ca.x * b2) / d;
    2.0 * ux.hypot(uy)
}

/// Largest distance between any two points of the set.
pub fn point_set_diameter(pts: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            d = d.max(pts[i].distance(pts[j]));
        }
    }
    d
}

/// Interior angles of a triangle in radians.
pub fn triangle_angles(a: Point2, b: Point2, c: Point2) -> [f64; 3] {
    let angle = |p: Point2, q: Point2, r: Point2| {
        let u = q - p;
        let v = r - p;
        u.cross(v).abs().atan2(u.dot(v))
    };
    [angle(a, b, c), angle(b, c, a), angle(c, a, b)]
}

/// Proper intersection test of the closed segments [p1,p2] and [q1,q2],
/// excluding intersections at shared endpoints.
pub fn segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = (p2 - p1).cross(q1 - p1);
    let d2 = (p2 - p1).cross(q2 - p1);
    let d3 = (q2 - q1).cross(p1 - q1);
    let d4 = (q2 - q1).cross(p2 - q1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |a: Point2, b: Point2, p: Point2| {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    let shared = |p: Point2| p == p1 || p == p2;
    (d1 == 0.0 && on_segment(p1, p2, q1) && !shared(q1))
        || (d2 == 0.0 && on_segment(p1, p2, q2) && !shared(q2))
        || (d3 == 0.0 && on_segment(q1, q2, p1) && !(p1 == q1 || p1 == q2))
        || (d4 == 0.0 && on_segment(q1, q2, p2) && !(p2 == q1 || p2 == q2))
}

/// Strict point-in-polygon test (points on the boundary count as outside).
pub fn point_strictly_inside(p: Point2, poly: &[Point2]) -> bool {
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let e = b - a;
        if e.cross(p - a) == 0.0 && (p - a).dot(p - b) <= 0.0 {
            return false;
        }
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (pi, pj) = (poly[i], poly[j]);
        if (pi.y > p.y) != (pj.y > p.y) {
            let xint = pj.x + (p.y - pj.y) * (pi.x - pj.x) / (pi.y - pj.y);
            if p.x < xint {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroid_of_unit_square() {
        let sq = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        assert_eq!(polygon_centroid(&sq), Point2::new(0.5, 0.5));
        assert_eq!(polygon_signed_area(&sq), 1.0);
    }

    #[test]
    fn circumdiameter_of_right_triangle_is_hypotenuse() {
        let d = circumdiameter(Point2::new(0.0, 0.0), Point2::new(3.0, 0.0), Point2::new(0.0, 4.0));
        assert!((d - 5.0).abs() < 1e-14);
    }

    #[test]
    fn rot_cw_gives_outward_normal_of_ccw_edge() {
        // bottom edge of the unit square, traversed left to right
        let n = (Point2::new(1.0, 0.0) - Point2::new(0.0, 0.0)).rot_cw();
        assert_eq!(n, Point2::new(0.0, -1.0));
    }

    #[test]
    fn crossing_segments() {
        let o = Point2::new(0.0, 0.0);
        assert!(segments_cross(o, Point2::new(1.0, 1.0), Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)));
        assert!(!segments_cross(o, Point2::new(1.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)));
    }

    #[test]
    fn inside_test_excludes_boundary() {
        let tri = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
        assert!(point_strictly_inside(Point2::new(0.2, 0.2), &tri));
        assert!(!point_strictly_inside(Point2::new(0.5, 0.0), &tri));
        assert!(!point_strictly_inside(Point2::new(1.0, 1.0), &tri));
    }
}
