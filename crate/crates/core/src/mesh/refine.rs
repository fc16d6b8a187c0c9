use crate::error::MeshError;
use crate::geometry::Point2;
use crate::mesh::primal::PrimalMesh;

/// Splits every cell into children: triangles into four through their edge
/// midpoints, every other polygon into one quadrilateral per vertex through
/// the edge midpoints and the cell center.
pub fn refine_uniform(primal: &PrimalMesh) -> Result<PrimalMesh, MeshError> {
    let verts = primal.vertices();
    let mut out: Vec<Point2> = verts.to_vec();
    let edge_mid: Vec<usize> = primal
        .edges()
        .iter()
        .map(|e| {
            out.push(verts[e.vertices[0]].midpoint(verts[e.vertices[1]]));
            out.len() - 1
        })
        .collect();

    let mut cells = Vec::new();
    for (c, poly) in primal.cells().iter().enumerate() {
        let k = poly.len();
        // midpoint of the edge leaving vertex i
        let mids: Vec<usize> = primal.cell_edges()[c].iter().map(|&e| edge_mid[e]).collect();
        if k == 3 {
            let (a, b, cc) = (poly[0], poly[1], poly[2]);
            let (mab, mbc, mca) = (mids[0], mids[1], mids[2]);
            cells.push(vec![a, mab, mca]);
            cells.push(vec![mab, b, mbc]);
            cells.push(vec![mca, mbc, cc]);
            cells.push(vec![mab, mbc, mca]);
        } else {
            out.push(primal.centers()[c]);
            let center = out.len() - 1;
            for i in 0..k {
                let prev = mids[(i + k - 1) % k];
                let child = vec![poly[i], mids[i], center, prev];
                let pts: Vec<Point2> = child.iter().map(|&v| out[v]).collect();
                if crate::geometry::polygon_signed_area(&pts) <= 0.0 {
                    return Err(MeshError::UnsupportedCellType { cell: c, vertices: k });
                }
                cells.push(child);
            }
        }
    }
    PrimalMesh::new(out, cells)
}
