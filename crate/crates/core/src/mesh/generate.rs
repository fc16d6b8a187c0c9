//! Built-in meshes of the unit square.

use crate::error::MeshError;
use crate::geometry::Point2;
use crate::mesh::primal::PrimalMesh;

fn grid_vertices(n: usize) -> Vec<Point2> {
    let mut v = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            v.push(Point2::new(i as f64 / n as f64, j as f64 / n as f64));
        }
    }
    v
}

fn grid_index(n: usize, i: usize, j: usize) -> usize {
    j * (n + 1) + i
}

/// Uniform n x n grid of squares.
pub fn structured_quad(n: usize) -> PrimalMesh {
    assert!(n >= 1);
    let mut cells = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push(vec![
                grid_index(n, i, j),
                grid_index(n, i + 1, j),
                grid_index(n, i + 1, j + 1),
                grid_index(n, i, j + 1),
            ]);
        }
    }
    PrimalMesh::new(grid_vertices(n), cells).expect("structured grid is valid")
}

/// Uniform grid with every square split along its rising diagonal.
pub fn structured_tri(n: usize) -> PrimalMesh {
    assert!(n >= 1);
    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (a, b) = (grid_index(n, i, j), grid_index(n, i + 1, j));
            let (c, d) = (grid_index(n, i + 1, j + 1), grid_index(n, i, j + 1));
            cells.push(vec![a, b, c]);
            cells.push(vec![a, c, d]);
        }
    }
    PrimalMesh::new(grid_vertices(n), cells).expect("structured grid is valid")
}

// Deterministic pseudo-random value in [-1, 1] for a grid node.
fn jitter(i: usize, j: usize, salt: u64) -> f64 {
    let mut z = (i as u64)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((j as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
        .wrapping_add(salt);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

/// n x n quadrilateral grid with interior vertices moved by up to
/// `amplitude` grid spacings in each direction.
pub fn distorted_quad(n: usize, amplitude: f64) -> PrimalMesh {
    assert!(n >= 1);
    let h = 1.0 / n as f64;
    let mut v = grid_vertices(n);
    for j in 1..n {
        for i in 1..n {
            let p = &mut v[grid_index(n, i, j)];
            p.x += amplitude * h * jitter(i, j, 1);
            p.y += amplitude * h * jitter(i, j, 2);
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push(vec![
                grid_index(n, i, j),
                grid_index(n, i + 1, j),
                grid_index(n, i + 1, j + 1),
                grid_index(n, i, j + 1),
            ]);
        }
    }
    PrimalMesh::new(v, cells).expect("distortion amplitude keeps cells valid")
}

/// Two convex quads whose center segment leaves the left cell through its
/// slanted top edge instead of the short common edge.
pub fn skewed_pair() -> PrimalMesh {
    let v = vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 0.1),
        Point2::new(0.0, 1.0),
        Point2::new(3.0, 0.0),
        Point2::new(3.0, 1.0),
    ];
    PrimalMesh::new(v, vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2]]).expect("both cells are convex")
}

/// Parses a generator spec such as `quad:8`, `tri:4` or `distorted:8:0.2`.
pub fn from_spec(spec: &str) -> Option<Result<PrimalMesh, MeshError>> {
    let mut parts = spec.split(':');
    let kind = parts.next()?;
    let n: usize = parts.next()?.parse().ok().filter(|n| *n >= 1)?;
    let mesh = match kind {
        "quad" => structured_quad(n),
        "tri" => structured_tri(n),
        "distorted" => {
            let amp = match parts.next() {
                Some(a) => a.parse().ok().filter(|a: &f64| (0.0..0.3).contains(a))?,
                None => 0.2,
            };
            distorted_quad(n, amp)
        }
        _ => return None,
    };
    if parts.next().is_some() {
        return None;
    }
    Some(Ok(mesh))
}
