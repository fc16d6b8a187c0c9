use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::assembly::local::{DualCellOperator, EliminationRecord, Forcing};
use crate::error::AssemblyError;
use crate::mesh::Meshes;
use crate::operators::{DiscretePressure, DiscreteVelocity, Transmission};
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssemblyOptions {
    /// Penalty weight on the pressure, > 0.
    pub lambda: f64,
    /// Give boundary dual cells a pressure unknown as well.
    pub boundary_pressure: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions { lambda: 1.0, boundary_pressure: false }
    }
}

/// The condensed system over cell velocities and dual-cell pressures.
///
/// Unknown `2c + i` is component `i` of the velocity in cell `c`; unknown
/// `2 * num_cells + k` is the `k`-th pressure, see [`Self::pressure_duals`].
#[derive(Debug, Clone)]
pub struct GlobalSystem {
    pub matrix: SparseMatrix,
    pub rhs: Vec<f64>,
    pub lambda: f64,
    pub h: f64,
    num_cells: usize,
    pressure_duals: Vec<usize>,
    pressure_index: Vec<Option<usize>>,
    /// -lambda h m(K*) for each pressure unknown.
    penalty: Vec<f64>,
    records: Vec<Option<EliminationRecord>>,
}

struct Contribution {
    entries: Vec<(usize, usize, f64)>,
    rhs: Vec<(usize, f64)>,
    record: Option<EliminationRecord>,
}

fn contribution(
    op: &DualCellOperator,
    pressure: Option<usize>,
    penalty: f64,
) -> Result<Contribution, AssemblyError> {
    let n = op.cells.len();
    let mut entries = Vec::with_capacity(2 * n * n + 4 * n + 1);
    let mut rhs = Vec::with_capacity(2 * n + 1);
    let row = |c: usize, i: usize| 2 * op.cells[c] + i;

    if op.boundary {
        for a in 0..n {
            for b in 0..n {
                for i in 0..2 {
                    entries.push((row(a, i), row(b, i), op.s_cc[a * n + b]));
                }
            }
            for i in 0..2 {
                rhs.push((row(a, i), op.load_cells[a][i]));
            }
        }
        if let Some(p) = pressure {
            for a in 0..n {
                for i in 0..2 {
                    let c = -op.grad_cells[a][i];
                    entries.push((row(a, i), p, c));
                    entries.push((p, row(a, i), c));
                }
            }
            entries.push((p, p, penalty));
            rhs.push((p, 0.0));
        }
        return Ok(Contribution { entries, rhs, record: None });
    }

    let record = EliminationRecord::from_operator(op)?;
    let p = pressure.expect("interior dual cells always carry a pressure");
    let diag = op.s_vv;
    let d = op.grad_vertex;
    for a in 0..n {
        for b in 0..n {
            let v = op.s_cc[a * n + b] - op.s_cv[a] * op.s_cv[b] / diag;
            for i in 0..2 {
                entries.push((row(a, i), row(b, i), v));
            }
        }
        for i in 0..2 {
            let c = -op.grad_cells[a][i] + op.s_cv[a] * d[i] / diag;
            entries.push((row(a, i), p, c));
            entries.push((p, row(a, i), c));
            rhs.push((row(a, i), op.load_cells[a][i] - op.s_cv[a] * op.load_vertex[i] / diag));
        }
    }
    let correction = (d[0] * d[0] + d[1] * d[1]) / diag;
    entries.push((p, p, penalty - correction));
    rhs.push((p, (d[0] * op.load_vertex[0] + d[1] * op.load_vertex[1]) / diag));
    Ok(Contribution { entries, rhs, record: Some(record) })
}

/// Eliminates the vertex velocities dual cell by dual cell and assembles the
/// condensed saddle-point system.
pub fn assemble_global(
    meshes: &Meshes,
    trans: &Transmission,
    f: Forcing<'_>,
    opts: AssemblyOptions,
) -> Result<GlobalSystem, AssemblyError> {
    if !(opts.lambda > 0.0 && opts.lambda.is_finite()) {
        return Err(AssemblyError::InvalidPenalty(opts.lambda));
    }
    let nc = meshes.primal.num_cells();
    let nd = meshes.dual.len();
    let h = meshes.h();

    let mut pressure_duals = Vec::new();
    let mut pressure_index = vec![None; nd];
    for (d, slot) in pressure_index.iter_mut().enumerate() {
        if !meshes.dual.is_boundary(d) || opts.boundary_pressure {
            *slot = Some(2 * nc + pressure_duals.len());
            pressure_duals.push(d);
        }
    }
    if pressure_duals.is_empty() {
        return Err(AssemblyError::EmptySystem);
    }
    let penalty: Vec<f64> = pressure_duals.iter().map(|&d| -(opts.lambda * h * meshes.dual.area(d))).collect();

    let parts: Vec<Contribution> = (0..nd)
        .into_par_iter()
        .map(|d| {
            let op = DualCellOperator::new(meshes, trans, d, f);
            let pen = pressure_index[d].map_or(0.0, |p| penalty[p - 2 * nc]);
            contribution(&op, pressure_index[d], pen)
        })
        .collect::<Result<_, _>>()?;

    let dim = 2 * nc + pressure_duals.len();
    let mut entries = Vec::with_capacity(parts.iter().map(|p| p.entries.len()).sum());
    let mut rhs = vec![0.0; dim];
    let mut records = Vec::with_capacity(nd);
    for part in parts {
        entries.extend(part.entries);
        for (r, v) in part.rhs {
            rhs[r] += v;
        }
        records.push(part.record);
    }
    Ok(GlobalSystem {
        matrix: SparseMatrix::from_triplets(dim, dim, entries),
        rhs,
        lambda: opts.lambda,
        h,
        num_cells: nc,
        pressure_duals,
        pressure_index,
        penalty,
        records,
    })
}

impl GlobalSystem {
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn num_velocity(&self) -> usize {
        2 * self.num_cells
    }

    /// Dual cells carrying a pressure unknown, in unknown order.
    pub fn pressure_duals(&self) -> &[usize] {
        &self.pressure_duals
    }

    /// Row of the pressure unknown of dual cell `d`.
    pub fn pressure_index(&self, d: usize) -> Option<usize> {
        self.pressure_index[d]
    }

    /// The penalty block -lambda h m(K*), one entry per pressure unknown.
    pub fn penalty(&self) -> &[f64] {
        &self.penalty
    }

    /// Elimination record of dual cell `d` (`None` on the boundary).
    pub fn record(&self, d: usize) -> Option<&EliminationRecord> {
        self.records[d].as_ref()
    }

    /// The velocity-velocity block.
    pub fn velocity_block(&self) -> SparseMatrix {
        self.matrix.leading_block(self.num_velocity())
    }

    pub fn cell_velocities(&self, x: &[f64]) -> Vec<[f64; 2]> {
        (0..self.num_cells).map(|c| [x[2 * c], x[2 * c + 1]]).collect()
    }

    pub fn pressure(&self, x: &[f64]) -> DiscretePressure {
        let values = self.pressure_index.iter().map(|p| p.map_or(0.0, |p| x[p])).collect();
        let active = self.pressure_index.iter().map(Option::is_some).collect();
        DiscretePressure { values, active }
    }

    pub fn export_matrix(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.matrix.write_coordinate(&mut w)?;
        w.flush()
    }
}

/// Rebuilds the full discrete velocity from a solution of the condensed system.
pub fn recover_vertex_velocities(system: &GlobalSystem, x: &[f64]) -> DiscreteVelocity {
    let cells = system.cell_velocities(x);
    let pressure = system.pressure(x);
    let vertices = system
        .records
        .iter()
        .enumerate()
        .map(|(d, r)| r.as_ref().map_or([0.0; 2], |r| r.vertex_velocity(&cells, pressure.values[d])))
        .collect();
    DiscreteVelocity { cells, vertices }
}

/// Loads on every cell and vertex basis function before elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeLoads {
    pub cells: Vec<[f64; 2]>,
    pub vertices: Vec<[f64; 2]>,
}

/// The integrals of f against the interpolated basis functions, for every
/// cell- and vertex-supported test function.
pub fn assemble_rhs(meshes: &Meshes, trans: &Transmission, f: Forcing<'_>) -> NodeLoads {
    let mut loads = NodeLoads {
        cells: vec![[0.0; 2]; meshes.primal.num_cells()],
        vertices: vec![[0.0; 2]; meshes.dual.len()],
    };
    for d in 0..meshes.dual.len() {
        let op = DualCellOperator::new(meshes, trans, d, f);
        for (c, l) in op.cells.iter().zip(&op.load_cells) {
            loads.cells[*c][0] += l[0];
            loads.cells[*c][1] += l[1];
        }
        loads.vertices[d] = op.load_vertex;
    }
    loads
}
