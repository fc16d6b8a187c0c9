use std::fmt;

use crate::geometry::{circumdiameter, point_set_diameter, signed_area, triangle_angles};
use crate::mesh::Meshes;

/// Shape constants of a mesh triplet. Larger values mean a less regular mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityReport {
    /// Largest number of boundary segments of a dual cell.
    pub c1: usize,
    /// max diam(K*)^2 / m(K*).
    pub c2: f64,
    /// max diam(T)^2 / m(T) over third-mesh elements.
    pub c3: f64,
    /// h / min diam(T) over third-mesh elements.
    pub zeta: f64,
    /// Smallest interior angle of a third-mesh element, in radians.
    pub min_angle: f64,
    pub h: f64,
}

pub fn regularity_report(meshes: &Meshes) -> RegularityReport {
    let dual = &meshes.dual;
    let mut c1 = 0;
    let mut c2: f64 = 0.0;
    for d in 0..dual.len() {
        c1 = c1.max(dual.edge_count(d));
        let diam = point_set_diameter(&dual.cell_outline(d, &meshes.primal));
        c2 = c2.max(diam * diam / dual.area(d));
    }

    let h = meshes.tri.h();
    let mut c3: f64 = 0.0;
    let mut min_diam = f64::INFINITY;
    let mut min_angle = f64::INFINITY;
    for st in meshes.tri.sub_triangles() {
        let [a, b, c] = st.element();
        let diam = circumdiameter(a, b, c);
        c3 = c3.max(diam * diam / signed_area(a, b, c).abs());
        min_diam = min_diam.min(diam);
        for (_, half) in st.halves() {
            let [p, q, r] = half.nodes(st.x_dual, st.x_sigma);
            min_angle = triangle_angles(p, q, r).into_iter().fold(min_angle, f64::min);
        }
    }
    RegularityReport { c1, c2, c3, zeta: h / min_diam, min_angle, h }
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h         = {:.6e}", self.h)?;
        writeln!(f, "C1        = {}", self.c1)?;
        writeln!(f, "C2        = {:.6}", self.c2)?;
        writeln!(f, "C3        = {:.6}", self.c3)?;
        writeln!(f, "zeta      = {:.6}", self.zeta)?;
        write!(f, "min angle = {:.4} deg", self.min_angle.to_degrees())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generate::{distorted_quad, structured_quad};
    use crate::mesh::refine::refine_uniform;

    #[test]
    fn structured_quad_c1() {
        let r = regularity_report(&Meshes::build(structured_quad(4)).unwrap());
        assert_eq!(r.c1, 8);
        assert!(r.zeta >= 1.0);
    }

    #[test]
    fn ratios_invariant_under_refinement() {
        let mut m = structured_quad(4);
        let base = regularity_report(&Meshes::build(m.clone()).unwrap());
        for _ in 0..2 {
            m = refine_uniform(&m).unwrap();
            let r = regularity_report(&Meshes::build(m.clone()).unwrap());
            assert_eq!(r.c1, base.c1);
            for (a, b) in [(r.c2, base.c2), (r.c3, base.c3), (r.zeta, base.zeta), (r.min_angle, base.min_angle)] {
                assert!((a - b).abs() < 1e-10 * b, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn entries_finite_and_positive() {
        let r = regularity_report(&Meshes::build(distorted_quad(6, 0.25)).unwrap());
        assert!(r.c1 > 0);
        for v in [r.c2, r.c3, r.zeta, r.min_angle, r.h] {
            assert!(v.is_finite() && v > 0.0);
        }
        assert!(r.zeta >= 1.0);
    }
}
