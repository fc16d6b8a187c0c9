use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::geometry::Point2;
use crate::operators::{Viscosity, ViscosityField};

/// A function of one variable with its first three derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    /// sin^2(pi t)
    SinSquared,
    /// 1/16 - 3 s^4 + 8 s^6 with s = t - 1/2: vanishes with its first
    /// derivative at t = 0 and t = 1, and has zero first and second
    /// derivatives at t = 1/2.
    Flat,
    Zero,
}

impl Profile {
    fn eval(self, t: f64) -> [f64; 4] {
        match self {
            Profile::SinSquared => {
                let (s2, c2) = ((2.0 * PI * t).sin(), (2.0 * PI * t).cos());
                let s = (PI * t).sin();
                [s * s, PI * s2, 2.0 * PI * PI * c2, -4.0 * PI * PI * PI * s2]
            }
            Profile::Flat => {
                let s = t - 0.5;
                let (s2, s3) = (s * s, s * s * s);
                [
                    1.0 / 16.0 - 3.0 * s2 * s2 + 8.0 * s3 * s3,
                    -12.0 * s3 + 48.0 * s3 * s2,
                    -36.0 * s2 + 240.0 * s2 * s2,
                    -72.0 * s + 960.0 * s3,
                ]
            }
            Profile::Zero => [0.0; 4],
        }
    }
}

/// Identifier of a built-in manufactured solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    /// Stream function sin^2(pi x) sin^2(pi y), p = cos(pi x) cos(pi y), mu = 1.
    Ms1,
    /// As `Ms1` with mu = 1 + 0.5 sin(pi x) sin(pi y).
    Ms2,
    /// Viscosity 1 | 10 across x = 1/2 with a velocity whose normal flux
    /// vanishes on the interface.
    Jump,
    /// u = 0, p = 0, f = 0.
    Zero,
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ms-1" | "ms1" => Ok(CaseId::Ms1),
            "ms-2" | "ms2" => Ok(CaseId::Ms2),
            "jump" => Ok(CaseId::Jump),
            "zero" => Ok(CaseId::Zero),
            _ => Err(format!("unknown case '{s}' (expected MS-1, MS-2, jump or zero)")),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::Ms1 => "MS-1",
            CaseId::Ms2 => "MS-2",
            CaseId::Jump => "jump",
            CaseId::Zero => "zero",
        })
    }
}

/// A divergence-free velocity u = (d psi/dy, -d psi/dx) with separable
/// stream function psi = g(x) h(y), a pressure and a viscosity, with the
/// forcing f = -div(mu grad u) + grad p that makes them an exact solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedCase {
    pub id: CaseId,
    pub viscosity: Viscosity,
    gx: Profile,
    hy: Profile,
    pressure_on: bool,
}

impl ManufacturedCase {
    pub fn new(id: CaseId) -> Self {
        let (viscosity, gx, hy, pressure_on) = match id {
            CaseId::Ms1 => (Viscosity::Constant(1.0), Profile::SinSquared, Profile::SinSquared, true),
            CaseId::Ms2 => (Viscosity::Smooth, Profile::SinSquared, Profile::SinSquared, true),
            CaseId::Jump => (Viscosity::Jump { left: 1.0, right: 10.0 }, Profile::Flat, Profile::SinSquared, true),
            CaseId::Zero => (Viscosity::Constant(1.0), Profile::Zero, Profile::Zero, false),
        };
        ManufacturedCase { id, viscosity, gx, hy, pressure_on }
    }

    pub fn velocity(&self, p: Point2) -> [f64; 2] {
        let g = self.gx.eval(p.x);
        let h = self.hy.eval(p.y);
        [g[0] * h[1], -g[1] * h[0]]
    }

    /// Rows are components: `[i][j]` = d u_i / d x_j.
    pub fn velocity_gradient(&self, p: Point2) -> [[f64; 2]; 2] {
        let g = self.gx.eval(p.x);
        let h = self.hy.eval(p.y);
        [[g[1] * h[1], g[0] * h[2]], [-g[2] * h[0], -g[1] * h[1]]]
    }

    fn velocity_laplacian(&self, p: Point2) -> [f64; 2] {
        let g = self.gx.eval(p.x);
        let h = self.hy.eval(p.y);
        [g[2] * h[1] + g[0] * h[3], -g[3] * h[0] - g[1] * h[2]]
    }

    pub fn pressure(&self, p: Point2) -> f64 {
        if self.pressure_on {
            (PI * p.x).cos() * (PI * p.y).cos()
        } else {
            0.0
        }
    }

    pub fn pressure_gradient(&self, p: Point2) -> Point2 {
        if self.pressure_on {
            Point2::new(-PI * (PI * p.x).sin() * (PI * p.y).cos(), -PI * (PI * p.x).cos() * (PI * p.y).sin())
        } else {
            Point2::ZERO
        }
    }

    pub fn forcing(&self, p: Point2) -> [f64; 2] {
        let mu = self.viscosity.eval(p);
        let dmu = self.viscosity.gradient(p);
        let grad = self.velocity_gradient(p);
        let lap = self.velocity_laplacian(p);
        let dp = self.pressure_gradient(p);
        let dp = [dp.x, dp.y];
        let mut f = [0.0; 2];
        for i in 0..2 {
            let flux = dmu.x * grad[i][0] + dmu.y * grad[i][1] + mu * lap[i];
            f[i] = -flux + dp[i];
        }
        f
    }
}
