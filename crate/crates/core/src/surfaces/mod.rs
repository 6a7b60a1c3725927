//! Implicit algebraic surfaces `F(x, y, z) = 0` and spherical-coordinate
//! radial surfaces.

mod polygonize;
mod radial;
mod raster;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{differentiate, simplify, BinOp, EvalContext, EvalError, Expr};
use crate::mesh::Vec3;

pub use polygonize::{polygonize, Polygonized};
pub use radial::{revolve_radial, surface_constants, ParametricSurfaceDef};
pub use raster::{raster_render, Camera, GrayImage, ViewAxis};

/// Default polygonizer resolution when a design does not specify one.
pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("empty zero set: F has no sign change on the grid ({skipped_cells} cells skipped)")]
    EmptyZeroSet { skipped_cells: usize },
    #[error("evaluation failed in every cell: {0}")]
    EvaluationFailed(EvalError),
    #[error("degenerate bounds: {0}")]
    DegenerateBounds(String),
    #[error("morph parameter must lie in [0, 1], got {0}")]
    MorphOutOfRange(f64),
    #[error("resolution must be at least {min}, got {got}")]
    Resolution { min: usize, got: usize },
    #[error("surface formula uses variable '{0}'; only x, y, z are allowed")]
    UnknownVariable(String),
    #[error("evaluation failed at (theta = {theta}, psi = {psi}): {source}")]
    Radial {
        theta: f64,
        psi: f64,
        #[source]
        source: EvalError,
    },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// Axis-aligned box `[lo, hi]` per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds(pub [[f64; 2]; 3]);

impl Bounds {
    pub fn cube(half: f64) -> Self {
        Bounds([[-half, half]; 3])
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        for (axis, [lo, hi]) in self.0.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SurfaceError::DegenerateBounds(format!(
                    "axis {axis} interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Bounds) -> Result<Bounds, SurfaceError> {
        let mut out = [[0.0; 2]; 3];
        for axis in 0..3 {
            out[axis] = [
                self.0[axis][0].max(other.0[axis][0]),
                self.0[axis][1].min(other.0[axis][1]),
            ];
        }
        let b = Bounds(out);
        b.validate()?;
        Ok(b)
    }

    pub fn diagonal(&self) -> f64 {
        self.0.iter().map(|[lo, hi]| (hi - lo).powi(2)).sum::<f64>().sqrt()
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::cube(2.0)
    }
}

fn default_bounds() -> Bounds {
    Bounds::default()
}

/// Zero set of `f` inside `bounds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicitSurface {
    pub f: Expr,
    #[serde(default = "default_bounds")]
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineMode {
    /// `F_a * F_b`: zero set is the union.
    Product,
    Sum,
    /// `(1 - s) F_a + s F_b`.
    Morph,
}

impl ImplicitSurface {
    pub fn new(f: Expr, bounds: Bounds) -> Result<Self, SurfaceError> {
        let s = ImplicitSurface { f, bounds };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        self.bounds.validate()?;
        if let Some(v) = self
            .f
            .free_variables()
            .into_iter()
            .find(|v| !matches!(v.as_str(), "x" | "y" | "z"))
        {
            return Err(SurfaceError::UnknownVariable(v));
        }
        Ok(())
    }

    pub fn eval(&self, p: Vec3) -> Result<f64, EvalError> {
        point_context(p).eval(&self.f)
    }

    /// Symbolic partial derivatives of `F`.
    pub fn gradient_exprs(&self) -> [Expr; 3] {
        ["x", "y", "z"].map(|v| simplify(&differentiate(&self.f, v)))
    }
}

pub(crate) fn point_context(p: Vec3) -> EvalContext {
    EvalContext::new()
        .with("x", p[0])
        .with("y", p[1])
        .with("z", p[2])
}

/// Gradient evaluator: symbolic partials with a central-difference fallback
/// for any component that fails to evaluate.
pub(crate) struct Gradient<'a> {
    surface: &'a ImplicitSurface,
    partials: [Expr; 3],
    step: f64,
}

impl<'a> Gradient<'a> {
    pub fn new(surface: &'a ImplicitSurface) -> Self {
        Gradient {
            surface,
            partials: surface.gradient_exprs(),
            step: 1e-6 * surface.bounds.diagonal(),
        }
    }

    pub fn at(&self, p: Vec3) -> Option<Vec3> {
        let ctx = point_context(p);
        let mut g = [0.0; 3];
        for axis in 0..3 {
            g[axis] = match ctx.eval(&self.partials[axis]) {
                Ok(v) => v,
                Err(_) => {
                    let (mut a, mut b) = (p, p);
                    a[axis] += self.step;
                    b[axis] -= self.step;
                    let fa = self.surface.eval(a).ok()?;
                    let fb = self.surface.eval(b).ok()?;
                    (fa - fb) / (2.0 * self.step)
                }
            };
        }
        Some(g)
    }
}

/// Combines two surfaces; the result lives on the intersection of their
/// bounds.
pub fn combine(
    a: &ImplicitSurface,
    b: &ImplicitSurface,
    mode: CombineMode,
    s: f64,
) -> Result<ImplicitSurface, SurfaceError> {
    let bounds = a.bounds.intersect(&b.bounds)?;
    let (fa, fb) = (a.f.clone(), b.f.clone());
    let f = match mode {
        CombineMode::Product => Expr::binary(BinOp::Mul, fa, fb),
        CombineMode::Sum => Expr::binary(BinOp::Add, fa, fb),
        CombineMode::Morph => {
            if !(0.0..=1.0).contains(&s) {
                return Err(SurfaceError::MorphOutOfRange(s));
            }
            Expr::binary(
                BinOp::Add,
                Expr::binary(BinOp::Mul, Expr::Const(1.0 - s), fa),
                Expr::binary(BinOp::Mul, Expr::Const(s), fb),
            )
        }
    };
    ImplicitSurface::new(f, bounds)
}
