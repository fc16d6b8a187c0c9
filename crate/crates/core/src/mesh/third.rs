use crate::error::MeshError;
use crate::geometry::{circumdiameter, signed_area, Point2};
use crate::mesh::dual::{DualFace, DualMesh};
use crate::mesh::primal::PrimalMesh;

/// Margin kept between x_sigma and the endpoints of both segments it splits.
pub const INTERSECTION_MARGIN: f64 = 1e-10;
/// Minimum sub-triangle area relative to h^2.
pub const AREA_TOLERANCE: f64 = 1e-12;

/// One half of a sub-triangle: the triangle (x_{K*}, x_C, x_sigma) where C is
/// K or L. Normals are outward for this triangle and as long as their edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Half {
    pub center: Point2,
    pub area: f64,
    /// n_[x_{K*}, x_C], the edge opposite x_sigma.
    pub n_dual_center: Point2,
    /// n_[x_sigma, x_{K*}], the edge opposite x_C.
    pub n_sigma_dual: Point2,
    /// n_[x_sigma, x_C], the edge opposite x_{K*}.
    pub n_sigma_center: Point2,
}

impl Half {
    fn new(dual: Point2, center: Point2, sigma: Point2) -> Self {
        let area = signed_area(dual, center, sigma);
        // Outward normals for a counter-clockwise (p0, p1, p2) are rot_cw of
        // the edges p1->p2, p2->p0, p0->p1; a clockwise triangle flips them.
        let (n0, n1, n2) = (
            (sigma - center).rot_cw(),
            (dual - sigma).rot_cw(),
            (center - dual).rot_cw(),
        );
        let (n0, n1, n2) = if area > 0.0 { (n0, n1, n2) } else { (-n0, -n1, -n2) };
        Half { center, area: area.abs(), n_dual_center: n2, n_sigma_dual: n1, n_sigma_center: n0 }
    }

    /// Node coordinates in the order (x_{K*}, x_C, x_sigma).
    pub fn nodes(&self, dual: Point2, sigma: Point2) -> [Point2; 3] {
        [dual, self.center, sigma]
    }
}

/// The triangle T_{K*,sigma} = (x_K, x_L, x_{K*}) split at x_sigma into a
/// K-half and an L-half. Boundary edges carry only the K-half, cut at the
/// edge midpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct SubTriangle {
    pub cell_k: usize,
    pub cell_l: Option<usize>,
    pub dual: usize,
    pub edge: usize,
    pub x_dual: Point2,
    pub x_sigma: Point2,
    pub half_k: Half,
    pub half_l: Option<Half>,
}

impl SubTriangle {
    /// A free-standing sub-triangle with placeholder ids. Without `x_l` it is
    /// a boundary piece whose x_sigma lies on the domain boundary.
    pub fn from_points(x_k: Point2, x_l: Option<Point2>, x_sigma: Point2, x_dual: Point2) -> Self {
        SubTriangle {
            cell_k: 0,
            cell_l: x_l.map(|_| 1),
            dual: 0,
            edge: 0,
            x_dual,
            x_sigma,
            half_k: Half::new(x_dual, x_k, x_sigma),
            half_l: x_l.map(|xl| Half::new(x_dual, xl, x_sigma)),
        }
    }

    pub fn is_boundary(&self) -> bool {
        self.cell_l.is_none()
    }

    pub fn x_k(&self) -> Point2 {
        self.half_k.center
    }

    pub fn x_l(&self) -> Option<Point2> {
        self.half_l.map(|h| h.center)
    }

    pub fn area(&self) -> f64 {
        self.half_k.area + self.half_l.map_or(0.0, |h| h.area)
    }

    /// Halves paired with the cell they belong to.
    pub fn halves(&self) -> impl Iterator<Item = (usize, &Half)> {
        std::iter::once((self.cell_k, &self.half_k))
            .chain(self.cell_l.zip(self.half_l.as_ref()))
    }

    /// The element of the third mesh this piece stands for: the full
    /// triangle for interior edges, the half for boundary edges.
    pub fn element(&self) -> [Point2; 3] {
        match self.x_l() {
            Some(xl) => [self.x_k(), xl, self.x_dual],
            None => [self.x_k(), self.x_sigma, self.x_dual],
        }
    }

    /// Pieces of the dual cell boundary contributed by this sub-triangle,
    /// with scaled outward normals.
    pub fn dual_boundary_segments(&self) -> Vec<(Point2, Point2, Point2)> {
        let mut out = vec![(self.x_sigma, self.x_k(), self.half_k.n_sigma_center)];
        match self.half_l {
            Some(h) => out.push((self.x_sigma, h.center, h.n_sigma_center)),
            None => out.push((self.x_sigma, self.x_dual, self.half_k.n_sigma_dual)),
        }
        out
    }
}

/// The third mesh: sub-triangles grouped by dual cell.
#[derive(Debug, Clone)]
pub struct TriMesh {
    sub_triangles: Vec<SubTriangle>,
    by_dual: Vec<Vec<usize>>,
    h: f64,
}

impl TriMesh {
    pub fn new(primal: &PrimalMesh, dual: &DualMesh) -> Result<Self, MeshError> {
        let verts = primal.vertices();
        let centers = primal.centers();
        let mut subs = Vec::new();
        let mut by_dual = vec![Vec::new(); dual.len()];
        for d in 0..dual.len() {
            let xd = dual.points()[d];
            for face in dual.faces(d) {
                let st = match *face {
                    DualFace::Interior { edge, k, l } => {
                        let [a, b] = primal.edges()[edge].vertices;
                        let xs = intersect(centers[k], centers[l], verts[a], verts[b])
                            .ok_or(MeshError::NoIntersection { edge, k, l })?;
                        SubTriangle {
                            cell_k: k,
                            cell_l: Some(l),
                            dual: d,
                            edge,
                            x_dual: xd,
                            x_sigma: xs,
                            half_k: Half::new(xd, centers[k], xs),
                            half_l: Some(Half::new(xd, centers[l], xs)),
                        }
                    }
                    DualFace::Boundary { edge, k } => {
                        let [a, b] = primal.edges()[edge].vertices;
                        let xs = verts[a].midpoint(verts[b]);
                        SubTriangle {
                            cell_k: k,
                            cell_l: None,
                            dual: d,
                            edge,
                            x_dual: xd,
                            x_sigma: xs,
                            half_k: Half::new(xd, centers[k], xs),
                            half_l: None,
                        }
                    }
                };
                by_dual[d].push(subs.len());
                subs.push(st);
            }
        }

        let h = subs
            .iter()
            .map(|s| {
                let [a, b, c] = s.element();
                circumdiameter(a, b, c)
            })
            .fold(0.0, f64::max);

        let min_area = AREA_TOLERANCE * h * h;
        for s in &subs {
            for (_, half) in s.halves() {
                if !(half.area > min_area) {
                    return Err(MeshError::DegenerateSubTriangle { dual: s.dual, edge: s.edge, area: half.area });
                }
            }
        }
        Ok(TriMesh { sub_triangles: subs, by_dual, h })
    }

    pub fn sub_triangles(&self) -> &[SubTriangle] {
        &self.sub_triangles
    }

    /// Indices into [`Self::sub_triangles`] of the pieces of dual cell `d`.
    pub fn of_dual(&self, d: usize) -> &[usize] {
        &self.by_dual[d]
    }

    /// Mesh size: the largest circumscribed diameter over the third mesh.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.sub_triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub_triangles.is_empty()
    }
}

/// Intersection of the segment [xk, xl] with the edge [a, b], or `None` when
/// it does not fall strictly inside both.
pub fn intersect(xk: Point2, xl: Point2, a: Point2, b: Point2) -> Option<Point2> {
    let d = xl - xk;
    let e = b - a;
    let denom = e.cross(d);
    if denom == 0.0 {
        return None;
    }
    let s = (xk - a).cross(d) / denom;
    let t = (xk - a).cross(e) / denom;
    let inside = |u: f64| u > INTERSECTION_MARGIN && u < 1.0 - INTERSECTION_MARGIN;
    if !(inside(s) && inside(t)) {
        return None;
    }
    Some(a + e * s)
}

/// Barycentric coordinate of x_sigma along its primal edge.
pub fn edge_coordinate(primal: &PrimalMesh, st: &SubTriangle) -> f64 {
    let [a, b] = primal.edges()[st.edge].vertices;
    let (pa, pb) = (primal.vertices()[a], primal.vertices()[b]);
    (st.x_sigma - pa).dot(pb - pa) / (pb - pa).norm_squared()
}
