use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::expr::{EvalContext, Expr};
use crate::mesh::{TriMesh, Vec3, MIN_TRIANGLE_AREA};

/// Golden ratio and the first twelve Fibonacci numbers, usable by name
/// (`phi`, `fib1` .. `fib12`) in radial formulas.
pub fn surface_constants() -> Vec<(String, f64)> {
    let mut out = vec![("phi".to_string(), (1.0 + 5f64.sqrt()) / 2.0)];
    let (mut a, mut b) = (1u64, 1u64);
    for i in 1..=12 {
        out.push((format!("fib{i}"), a as f64));
        (a, b) = (b, a + b);
    }
    out
}

fn full_turn() -> [f64; 2] {
    [0.0, TAU]
}

fn half_turn() -> [f64; 2] {
    [0.0, PI]
}

/// Radial surface `rho(theta, psi)` in spherical coordinates:
/// `theta` is the azimuth and `psi` the angle from the +z axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametricSurfaceDef {
    pub rho: Expr,
    #[serde(default = "full_turn")]
    pub theta: [f64; 2],
    #[serde(default = "half_turn")]
    pub psi: [f64; 2],
}

impl ParametricSurfaceDef {
    pub fn sphere_like(rho: Expr) -> Self {
        ParametricSurfaceDef {
            rho,
            theta: full_turn(),
            psi: half_turn(),
        }
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        for (name, [lo, hi]) in [("theta", self.theta), ("psi", self.psi)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SurfaceError::DegenerateBounds(format!("{name} interval [{lo}, {hi}]")));
            }
        }
        let constants = surface_constants();
        if let Some(v) = self.rho.free_variables().into_iter().find(|v| {
            v != "theta" && v != "psi" && !constants.iter().any(|(n, _)| n == v)
        }) {
            return Err(SurfaceError::UnknownVariable(v));
        }
        Ok(())
    }
}

/// Samples the radial surface on an `n_theta` × `n_psi` grid and stitches it
/// into triangles facing outward for positive `rho`. A full azimuth turn
/// wraps around, rows that collapse to a point (the poles) become fans, and
/// degenerate triangles are dropped. Negative `rho` lands on the antipodal
/// point.
pub fn revolve_radial(def: &ParametricSurfaceDef, n_theta: usize, n_psi: usize) -> Result<TriMesh, SurfaceError> {
    def.validate()?;
    if n_theta < 4 || n_psi < 4 {
        return Err(SurfaceError::Resolution {
            min: 4,
            got: n_theta.min(n_psi),
        });
    }
    let mut ctx: EvalContext = surface_constants().into_iter().collect();
    let wraps = (def.theta[1] - def.theta[0] - TAU).abs() < 1e-9;
    let columns = if wraps { n_theta } else { n_theta + 1 };
    let angle = |range: [f64; 2], i: usize, n: usize| {
        if i == n {
            range[1]
        } else {
            range[0] + (range[1] - range[0]) * i as f64 / n as f64
        }
    };

    let mut vertices: Vec<Vec3> = Vec::new();
    // index[j][i] for row j (psi) and column i (theta)
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(n_psi + 1);
    for j in 0..=n_psi {
        let psi = angle(def.psi, j, n_psi);
        let mut row = Vec::with_capacity(columns);
        for i in 0..columns {
            let theta = angle(def.theta, i, n_theta);
            ctx.set("theta", theta);
            ctx.set("psi", psi);
            let rho = ctx
                .eval(&def.rho)
                .map_err(|source| SurfaceError::Radial { theta, psi, source })?;
            row.push([
                rho * psi.sin() * theta.cos(),
                rho * psi.sin() * theta.sin(),
                rho * psi.cos(),
            ]);
        }
        let collapsed = row.iter().all(|p| {
            p.iter().zip(&row[0]).all(|(a, b)| (a - b).abs() < 1e-12)
        });
        if collapsed {
            let id = vertices.len();
            vertices.push(row[0]);
            index.push(vec![id; columns]);
        } else {
            let base = vertices.len();
            vertices.extend(row);
            index.push((base..base + columns).collect());
        }
    }

    let mut mesh = TriMesh::new(vertices, Vec::new());
    let col = |i: usize| if wraps { i % n_theta } else { i };
    for j in 0..n_psi {
        for i in 0..n_theta {
            let a = index[j][col(i)];
            let b = index[j][col(i + 1)];
            let c = index[j + 1][col(i + 1)];
            let d = index[j + 1][col(i)];
            for tri in [[a, d, c], [a, c, b]] {
                if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                    continue;
                }
                mesh.triangles.push(tri);
                if mesh.triangle_area(mesh.triangles.len() - 1) <= MIN_TRIANGLE_AREA {
                    mesh.triangles.pop();
                }
            }
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::mesh::norm;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constants() {
        let c = surface_constants();
        assert!((c[0].1 - 1.618033988749895).abs() < 1e-15);
        assert_eq!(c[12], ("fib12".to_string(), 144.0));
    }

    #[test]
    fn unit_sphere_mesh() {
        let def = ParametricSurfaceDef::sphere_like(parse("1").unwrap());
        let m = revolve_radial(&def, 16, 16).unwrap();
        m.check().unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.vertices.iter().all(|v| (norm(*v) - 1.0).abs() < 1e-9));
        assert!(m.signed_volume() > 0.0);
    }

    #[test]
    fn flower_profile_on_equator() {
        let def = ParametricSurfaceDef {
            rho: parse("sin(4*theta)^2 + cos(4*theta)").unwrap(),
            theta: [0.0, TAU],
            psi: [FRAC_PI_2, PI],
        };
        let m = revolve_radial(&def, 32, 8).unwrap();
        let v = m.vertices[0];
        assert!((v[0] - 1.0).abs() < 1e-12 && v[1].abs() < 1e-12 && v[2].abs() < 1e-12);
    }

    #[test]
    fn golden_modulated_surface_builds() {
        let def = ParametricSurfaceDef::sphere_like(
            parse("1 + 0.2*sin(fib5*theta)*sin(psi)^phi").unwrap(),
        );
        let m = revolve_radial(&def, 40, 20).unwrap();
        m.check().unwrap();
        assert!(m.is_closed());
    }

    #[test]
    fn errors() {
        let def = ParametricSurfaceDef::sphere_like(parse("ln(theta)").unwrap());
        assert!(matches!(revolve_radial(&def, 8, 8), Err(SurfaceError::Radial { theta, .. }) if theta == 0.0));
        let def = ParametricSurfaceDef::sphere_like(parse("x").unwrap());
        assert_eq!(revolve_radial(&def, 8, 8), Err(SurfaceError::UnknownVariable("x".into())));
        let def = ParametricSurfaceDef::sphere_like(parse("1").unwrap());
        assert!(revolve_radial(&def, 3, 8).is_err());
    }
}
