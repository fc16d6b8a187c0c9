use std::fmt::Write as _;

use crate::mesh::Meshes;
use crate::operators::{DiscretePressure, DiscreteVelocity};

/// Per-cell velocities followed by per-dual-cell vertex velocities and
/// pressures. Dual cells without a pressure unknown leave `p` empty.
pub fn solution_csv(meshes: &Meshes, u: &DiscreteVelocity, p: &DiscretePressure) -> String {
    let mut s = String::from("kind,index,x,y,u1,u2,p\n");
    for (c, (x, v)) in meshes.primal.centers().iter().zip(&u.cells).enumerate() {
        let _ = writeln!(s, "cell,{c},{:.16e},{:.16e},{:.16e},{:.16e},", x.x, x.y, v[0], v[1]);
    }
    for (d, (x, v)) in meshes.dual.points().iter().zip(&u.vertices).enumerate() {
        let _ = write!(s, "dual,{d},{:.16e},{:.16e},{:.16e},{:.16e},", x.x, x.y, v[0], v[1]);
        if p.active[d] {
            let _ = write!(s, "{:.16e}", p.values[d]);
        }
        s.push('\n');
    }
    s
}

/// Legacy ASCII VTK unstructured grid of the third-mesh elements with the
/// nodal velocity as point data and the dual-cell pressure as cell data.
pub fn solution_vtk(meshes: &Meshes, u: &DiscreteVelocity, p: &DiscretePressure) -> String {
    let nc = meshes.primal.num_cells();
    let nd = meshes.dual.len();
    let sts = meshes.tri.sub_triangles();
    let boundary: Vec<usize> = (0..sts.len()).filter(|&i| sts[i].is_boundary()).collect();

    let mut points: Vec<(crate::Point2, [f64; 2])> = Vec::with_capacity(nc + nd + boundary.len());
    points.extend(meshes.primal.centers().iter().copied().zip(u.cells.iter().copied()));
    points.extend(meshes.dual.points().iter().copied().zip(u.vertices.iter().copied()));
    let mut sigma_node = vec![usize::MAX; sts.len()];
    for &i in &boundary {
        sigma_node[i] = points.len();
        points.push((sts[i].x_sigma, [0.0, 0.0]));
    }

    let mut s = String::from("# vtk DataFile Version 3.0\npfecc solution\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", points.len());
    for (x, _) in &points {
        let _ = writeln!(s, "{:.16e} {:.16e} 0", x.x, x.y);
    }
    let _ = writeln!(s, "CELLS {} {}", sts.len(), 4 * sts.len());
    for (i, st) in sts.iter().enumerate() {
        let second = st.cell_l.unwrap_or(sigma_node[i]);
        let _ = writeln!(s, "3 {} {} {}", st.cell_k, second, nc + st.dual);
    }
    let _ = writeln!(s, "CELL_TYPES {}", sts.len());
    for _ in sts {
        s.push_str("5\n");
    }
    let _ = writeln!(s, "POINT_DATA {}\nVECTORS velocity double", points.len());
    for (_, v) in &points {
        let _ = writeln!(s, "{:.16e} {:.16e} 0", v[0], v[1]);
    }
    let _ = writeln!(s, "CELL_DATA {}\nSCALARS pressure double 1\nLOOKUP_TABLE default", sts.len());
    for st in sts {
        let _ = writeln!(s, "{:.16e}", p.values[st.dual]);
    }
    s
}
