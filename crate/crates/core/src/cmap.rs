//! Complex-function mappings of plane curves: `exp(z)`, the principal-branch
//! `(1/z)^α` and compositions of these.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{endpoints_coincide, CurveSource, PlaneCurve};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("pole of the map at ({x}, {y})")]
    Pole { x: f64, y: f64 },
    #[error("point ({x}, {y}) lies on the branch cut (negative real axis)")]
    BranchCut { x: f64, y: f64 },
    #[error("segment from ({x0}, {y0}) to ({x1}, {y1}) crosses the branch cut")]
    CrossesCut { x0: f64, y0: f64, x1: f64, y1: f64 },
    #[error("image of ({x}, {y}) is not finite")]
    NonFinite { x: f64, y: f64 },
    #[error("degenerate derivative at ({x}, {y}): image steps below 1e-12")]
    Degenerate { x: f64, y: f64 },
    #[error("exponent must be finite, got {0}")]
    BadExponent(f64),
    #[error("sample {index} (t = {t}): {source}")]
    AtSample {
        index: usize,
        t: f64,
        #[source]
        source: Box<MapError>,
    },
    #[error("curve has no points")]
    EmptyCurve,
}

/// A complex map applied to points `z = x + iy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexMap {
    Exp {},
    /// `w = exp(-α Log z)` with the principal logarithm, arg in (-π, π].
    RecipPower { alpha: f64 },
    /// `outer(inner(z))`.
    Compose {
        inner: Box<ComplexMap>,
        outer: Box<ComplexMap>,
    },
}

// Integer exponents bigger than this go through the logarithm anyway.
const MAX_INTEGER_POWER: f64 = 1e6;

fn integer_exponent(alpha: f64) -> Option<i32> {
    (alpha.fract() == 0.0 && alpha.abs() <= MAX_INTEGER_POWER).then_some(alpha as i32)
}

impl ComplexMap {
    pub fn recip_power(alpha: f64) -> Result<Self, MapError> {
        if alpha.is_finite() {
            Ok(ComplexMap::RecipPower { alpha })
        } else {
            Err(MapError::BadExponent(alpha))
        }
    }

    pub fn then(self, outer: ComplexMap) -> Self {
        ComplexMap::Compose {
            inner: Box::new(self),
            outer: Box::new(outer),
        }
    }

    pub fn validate(&self) -> Result<(), MapError> {
        match self {
            ComplexMap::Exp {} => Ok(()),
            ComplexMap::RecipPower { alpha } => Self::recip_power(*alpha).map(|_| ()),
            ComplexMap::Compose { inner, outer } => {
                inner.validate()?;
                outer.validate()
            }
        }
    }

    /// True when the map is single-valued on the whole punctured plane, so
    /// no branch cut applies at this stage.
    fn cut_free(&self) -> bool {
        match self {
            ComplexMap::Exp {} => true,
            ComplexMap::RecipPower { alpha } => integer_exponent(*alpha).is_some(),
            ComplexMap::Compose { .. } => true,
        }
    }

    fn apply(&self, z: Complex64) -> Result<Complex64, MapError> {
        let (x, y) = (z.re, z.im);
        let w = match self {
            ComplexMap::Exp {} => z.exp(),
            ComplexMap::RecipPower { alpha } => match integer_exponent(*alpha) {
                Some(0) => Complex64::new(1.0, 0.0),
                Some(k) if z == Complex64::new(0.0, 0.0) => {
                    if k > 0 {
                        return Err(MapError::Pole { x, y });
                    }
                    Complex64::new(0.0, 0.0)
                }
                Some(k) if k > 0 => z.inv().powi(k),
                Some(k) => z.powi(-k),
                None => {
                    if x == 0.0 && y == 0.0 {
                        return Err(MapError::Pole { x, y });
                    }
                    if y == 0.0 && x < 0.0 {
                        return Err(MapError::BranchCut { x, y });
                    }
                    (-alpha * z.ln()).exp()
                }
            },
            ComplexMap::Compose { inner, outer } => outer.apply(inner.apply(z)?)?,
        };
        if w.re.is_finite() && w.im.is_finite() {
            Ok(w)
        } else {
            Err(MapError::NonFinite { x, y })
        }
    }

    /// Rejects a segment whose interior crosses this map's branch cut.
    fn check_segment(&self, a: Complex64, b: Complex64) -> Result<(), MapError> {
        match self {
            ComplexMap::Compose { inner, outer } => {
                inner.check_segment(a, b)?;
                // the inner image of a short segment is approximated by its chord
                outer.check_segment(inner.apply(a)?, inner.apply(b)?)
            }
            m if m.cut_free() => Ok(()),
            _ => {
                if (a.im > 0.0 && b.im < 0.0) || (a.im < 0.0 && b.im > 0.0) {
                    let s = a.im / (a.im - b.im);
                    let x_cross = a.re + s * (b.re - a.re);
                    if x_cross < 0.0 {
                        return Err(MapError::CrossesCut {
                            x0: a.re,
                            y0: a.im,
                            x1: b.re,
                            y1: b.im,
                        });
                    }
                }
                Ok(())
            }
        }
    }
}

/// Image of the point `p` under `m`.
pub fn map_point(m: &ComplexMap, p: [f64; 2]) -> Result<[f64; 2], MapError> {
    m.validate()?;
    let w = m.apply(Complex64::new(p[0], p[1]))?;
    Ok([w.re, w.im])
}

/// Pointwise image of a curve, order preserved. The closed flag is
/// recomputed from the image endpoints. No resampling happens.
pub fn map_curve(m: &ComplexMap, c: &PlaneCurve) -> Result<PlaneCurve, MapError> {
    m.validate()?;
    if c.points.is_empty() {
        return Err(MapError::EmptyCurve);
    }
    let at = |index: usize, source: MapError| MapError::AtSample {
        index,
        t: c.params.get(index).copied().unwrap_or(index as f64),
        source: Box::new(source),
    };
    let zs: Vec<Complex64> = c.points.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    let images = zs
        .par_iter()
        .enumerate()
        .map(|(i, z)| m.apply(*z).map_err(|e| at(i, e)))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, pair) in zs.windows(2).enumerate() {
        m.check_segment(pair[0], pair[1]).map_err(|e| at(i + 1, e))?;
    }
    let points: Vec<[f64; 2]> = images.iter().map(|w| [w.re, w.im]).collect();
    Ok(PlaneCurve {
        closed: endpoints_coincide(&points),
        points,
        params: c.params.clone(),
        source: CurveSource::Mapped {
            map: m.clone(),
            preimage: Box::new(c.source.clone()),
        },
    })
}

/// Deviation from a right angle between the images of two orthogonal
/// central-difference steps of size `h` at `p`.
pub fn check_conformal(m: &ComplexMap, p: [f64; 2], h: f64) -> Result<f64, MapError> {
    let z = Complex64::new(p[0], p[1]);
    let f = |dz: Complex64| m.apply(z + dz);
    let along_x = f(Complex64::new(h, 0.0))? - f(Complex64::new(-h, 0.0))?;
    let along_y = f(Complex64::new(0.0, h))? - f(Complex64::new(0.0, -h))?;
    if along_x.norm() < 1e-12 || along_y.norm() < 1e-12 {
        return Err(MapError::Degenerate { x: p[0], y: p[1] });
    }
    let angle = (along_x.conj() * along_y).arg();
    Ok((angle.abs() - FRAC_PI_2).abs())
}
