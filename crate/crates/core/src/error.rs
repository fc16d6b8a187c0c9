use thiserror::Error;

use crate::geometry::Point2;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("mesh has no cells")]
    NoCells,
    #[error("vertex {vertex} has non-finite coordinates")]
    NonFiniteVertex { vertex: usize },
    #[error("cell {cell} references vertex {vertex}, but the mesh has {count} vertices")]
    InvalidVertexIndex { cell: usize, vertex: usize, count: usize },
    #[error("cell {cell} is not a simple polygon")]
    NonSimplePolygon { cell: usize },
    #[error("cell {cell} has zero (or negative) area {area:e}; cells must be counter-clockwise")]
    ZeroAreaCell { cell: usize, area: f64 },
    #[error("edge ({a}, {b}) is shared by more than two cells or traversed twice in the same direction (cell {cell})")]
    DanglingEdge { a: usize, b: usize, cell: usize },
    #[error("vertex {vertex} is not used by any cell")]
    UnusedVertex { vertex: usize },
    #[error("center of cell {cell} at {center} is not strictly inside the cell")]
    CenterOutsideCell { cell: usize, center: Point2 },
    #[error("segment between the centers of cells {k} and {l} does not cross their common edge {edge}")]
    NoIntersection { edge: usize, k: usize, l: usize },
    #[error("sub-triangle at dual point {dual} / edge {edge} is degenerate (area {area:e})")]
    DegenerateSubTriangle { dual: usize, edge: usize, area: f64 },
    #[error("cell {cell} has {vertices} vertices; uniform refinement only splits triangles and quadrilaterals")]
    UnsupportedCellType { cell: usize, vertices: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("viscosity {value} at {at} is not positive")]
    NonPositiveViscosity { value: f64, at: Point2 },
    #[error("flux-conservation denominator {denominator:e} too small at dual point {dual} / edge {edge}")]
    HypothesisViolation { dual: usize, edge: usize, denominator: f64 },
    #[error("point {0} lies outside the meshed domain")]
    PointOutsideDomain(Point2),
    #[error("unknown viscosity id '{0}'")]
    UnknownViscosity(String),
}

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("local vertex system at dual point {dual} is singular (diagonal {diagonal:e})")]
    SingularLocalSystem { dual: usize, diagonal: f64 },
    #[error("system has no pressure unknowns (no interior dual cells)")]
    EmptySystem,
    #[error("penalty parameter must be positive, got {0}")]
    InvalidPenalty(f64),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),
    #[error("numerical breakdown: relative residual {residual:e} exceeds {tolerance:e}")]
    NumericalBreakdown { residual: f64, tolerance: f64 },
    #[error("mesh too large for the dense stability diagnostic ({cells} cells, limit {limit})")]
    MeshTooLarge { cells: usize, limit: usize },
    #[error("stability diagnostic needs at least one pressure unknown")]
    NoPressureUnknowns,
}

/// Top-level error for the pipelines that chain meshing, assembly and solve.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
