use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::OperatorError;
use crate::geometry::Point2;
use crate::mesh::PrimalMesh;
use crate::quadrature::TRI3;

/// A scalar viscosity field mu(x) > 0.
pub trait ViscosityField: Sync {
    fn eval(&self, p: Point2) -> f64;

    /// Declared lower and upper bounds.
    fn bounds(&self) -> (f64, f64);
}

/// The built-in fields, selected by id: `const:<v>`, `smooth`, `jump:<v1>:<v2>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Viscosity {
    Constant(f64),
    /// 1 + 0.5 sin(pi x) sin(pi y)
    Smooth,
    /// `left` for x < 0.5, `right` otherwise.
    Jump { left: f64, right: f64 },
}

impl ViscosityField for Viscosity {
    fn eval(&self, p: Point2) -> f64 {
        match *self {
            Viscosity::Constant(v) => v,
            Viscosity::Smooth => 1.0 + 0.5 * (PI * p.x).sin() * (PI * p.y).sin(),
            Viscosity::Jump { left, right } => {
                if p.x < 0.5 {
                    left
                } else {
                    right
                }
            }
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match *self {
            Viscosity::Constant(v) => (v, v),
            Viscosity::Smooth => (0.5, 1.5),
            Viscosity::Jump { left, right } => (left.min(right), left.max(right)),
        }
    }
}

impl Viscosity {
    /// Gradient of the field where it is differentiable.
    pub fn gradient(&self, p: Point2) -> Point2 {
        match *self {
            Viscosity::Smooth => Point2::new(
                0.5 * PI * (PI * p.x).cos() * (PI * p.y).sin(),
                0.5 * PI * (PI * p.x).sin() * (PI * p.y).cos(),
            ),
            _ => Point2::ZERO,
        }
    }
}

impl FromStr for Viscosity {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || OperatorError::UnknownViscosity(s.to_string());
        let positive = |t: &str| t.parse::<f64>().ok().filter(|v| v.is_finite() && *v > 0.0);
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["smooth"] => Ok(Viscosity::Smooth),
            ["const", v] => positive(v).map(Viscosity::Constant).ok_or_else(unknown),
            ["jump", a, b] => match (positive(a), positive(b)) {
                (Some(left), Some(right)) => Ok(Viscosity::Jump { left, right }),
                _ => Err(unknown()),
            },
            _ => Err(unknown()),
        }
    }
}

/// Mean of `field` over a primal cell: the 3-point rule on each triangle of
/// the fan around the cell center, after `depth` levels of midpoint
/// subdivision of every fan triangle.
pub fn average_viscosity(
    field: &dyn ViscosityField,
    primal: &PrimalMesh,
    cell: usize,
    depth: u32,
) -> Result<f64, OperatorError> {
    let poly = primal.cell_polygon(cell);
    let center = primal.centers()[cell];
    let mut integral = 0.0;
    let mut area = 0.0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (q, m) = integrate_subdivided(field, center, a, b, depth)?;
        integral += q;
        area += m;
    }
    Ok(integral / area)
}

fn integrate_subdivided(
    field: &dyn ViscosityField,
    a: Point2,
    b: Point2,
    c: Point2,
    depth: u32,
) -> Result<(f64, f64), OperatorError> {
    if depth > 0 {
        let (ab, bc, ca) = (a.midpoint(b), b.midpoint(c), c.midpoint(a));
        let mut acc = (0.0, 0.0);
        for [p, q, r] in [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]] {
            let (s, m) = integrate_subdivided(field, p, q, r, depth - 1)?;
            acc.0 += s;
            acc.1 += m;
        }
        return Ok(acc);
    }
    let area = crate::geometry::signed_area(a, b, c).abs();
    let mut acc = 0.0;
    for (lam, w) in TRI3 {
        let p = a * lam[0] + b * lam[1] + c * lam[2];
        let v = field.eval(p);
        if !(v > 0.0) {
            return Err(OperatorError::NonPositiveViscosity { value: v, at: p });
        }
        acc += w * v;
    }
    Ok((acc * area, area))
}

/// Cell averages mu_K for every primal cell.
pub fn cell_averages(field: &dyn ViscosityField, primal: &PrimalMesh, depth: u32) -> Result<Vec<f64>, OperatorError> {
    (0..primal.num_cells()).map(|c| average_viscosity(field, primal, c, depth)).collect()
}
