//! Plain-text mesh format.
//!
//! ```text
//! # comment
//! nv nc
//! x y            (nv lines)
//! k i1 ... ik    (nc lines, 0-based, counter-clockwise)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::MeshError;
use crate::geometry::Point2;
use crate::mesh::primal::PrimalMesh;

pub fn load_mesh(path: impl AsRef<Path>) -> Result<PrimalMesh, MeshError> {
    let text = fs::read_to_string(path)?;
    parse_mesh(&text)
}

pub fn save_mesh(primal: &PrimalMesh, path: impl AsRef<Path>) -> Result<(), MeshError> {
    fs::write(path, format_mesh(primal))?;
    Ok(())
}

pub fn format_mesh(primal: &PrimalMesh) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", primal.num_vertices(), primal.num_cells());
    for p in primal.vertices() {
        let _ = writeln!(s, "{:.16e} {:.16e}", p.x, p.y);
    }
    for c in primal.cells() {
        let _ = write!(s, "{}", c.len());
        for v in c {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_mesh(text: &str) -> Result<PrimalMesh, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let err = |line: usize, message: String| MeshError::Parse { line, message };

    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let counts: Vec<&str> = header.split_whitespace().collect();
    if counts.len() != 2 {
        return Err(err(hline, format!("expected 'nv nc', found '{header}'")));
    }
    let nv: usize = counts[0].parse().map_err(|_| err(hline, format!("bad vertex count '{}'", counts[0])))?;
    let nc: usize = counts[1].parse().map_err(|_| err(hline, format!("bad cell count '{}'", counts[1])))?;
    if nc == 0 {
        return Err(err(hline, "mesh has no cells".into()));
    }

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines.next().ok_or_else(|| err(hline, format!("expected {nv} vertices")))?;
        let xy: Vec<f64> = l
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| err(ln, format!("bad coordinate '{t}'"))))
            .collect::<Result<_, _>>()?;
        if xy.len() != 2 {
            return Err(err(ln, format!("expected 2 coordinates, found {}", xy.len())));
        }
        vertices.push(Point2::new(xy[0], xy[1]));
    }

    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (ln, l) = lines.next().ok_or_else(|| err(hline, format!("expected {nc} cells")))?;
        let ids: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(ln, format!("bad index '{t}'"))))
            .collect::<Result<_, _>>()?;
        let (&k, rest) = ids.split_first().ok_or_else(|| err(ln, "empty cell line".into()))?;
        if k < 3 || rest.len() != k {
            return Err(err(ln, format!("cell declares {k} vertices but lists {}", rest.len())));
        }
        if let Some(&bad) = rest.iter().find(|&&v| v >= nv) {
            return Err(err(ln, format!("vertex index {bad} out of range (nv = {nv})")));
        }
        cells.push(rest.to_vec());
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected trailing content".into()));
    }
    PrimalMesh::new(vertices, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generate::distorted_quad;

    #[test]
    fn round_trip() {
        let m = distorted_quad(4, 0.2);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        save_mesh(&m, &path).unwrap();
        let back = load_mesh(&path).unwrap();
        assert_eq!(back.cells(), m.cells());
        for (a, b) in back.vertices().iter().zip(m.vertices()) {
            assert!((a.x - b.x).abs() <= 1e-15 && (a.y - b.y).abs() <= 1e-15);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# unit triangle\n3 1\n0 0\n\n1 0 # right\n0 1\n3 0 1 2\n";
        let m = parse_mesh(text).unwrap();
        assert_eq!(m.num_cells(), 1);
    }

    #[test]
    fn index_out_of_range_names_line() {
        let text = "3 1\n0 0\n1 0\n0 1\n3 0 1 3\n";
        match parse_mesh(text) {
            Err(MeshError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_cell_list_rejected() {
        let text = "3 0\n0 0\n1 0\n0 1\n";
        assert!(matches!(parse_mesh(text), Err(MeshError::Parse { line: 1, .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(load_mesh("/nonexistent/mesh.txt"), Err(MeshError::Io(_))));
    }
}
