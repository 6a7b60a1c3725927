//! Plane-curve families: polar curves, parametric pairs, the (modified)
//! hypocycloid family and derivative (hodograph) curves.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cmap::ComplexMap;
use crate::expr::{differentiate, simplify, BinOp, EvalContext, EvalError, Expr, Func};

/// Samples per full turn used when a caller does not choose a count.
pub const DEFAULT_SAMPLES_PER_TURN: usize = 720;

/// Endpoint distance under which a sampled curve counts as closed.
pub const CLOSURE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("evaluation failed at {param} = {t}: {source}")]
    Domain {
        param: String,
        t: f64,
        #[source]
        source: EvalError,
    },
    #[error("non-finite point at {param} = {t}")]
    NonFinite { param: String, t: f64 },
    #[error("need at least 2 sample intervals, got {0}")]
    TooFewSamples(usize),
    #[error("expected a {expected} curve, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid curve definition: {0}")]
    Invalid(String),
}

/// Generator of a plane curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveShape {
    /// `r(t)` rendered as `(r cos t, r sin t)`; negative radii land on the
    /// opposite ray.
    Polar { radius: Expr },
    Parametric { x: Expr, y: Expr },
    /// `x = (a-b) cos t + c cos((a-b)/b t)`, `y = (a-b) sin t - c sin((a-b)/b t)`.
    /// `c = b` is the classical hypocycloid; other `c` give the modified family.
    Hypocycloid { a: f64, b: f64, c: f64 },
}

impl CurveShape {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveShape::Polar { .. } => "polar",
            CurveShape::Parametric { .. } => "parametric",
            CurveShape::Hypocycloid { .. } => "hypocycloid",
        }
    }
}

fn default_param() -> String {
    "t".to_string()
}

/// A curve definition: shape plus parameter interval and parameter name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDef {
    pub shape: CurveShape,
    pub range: [f64; 2],
    #[serde(default = "default_param")]
    pub param: String,
}

impl CurveDef {
    pub fn polar(radius: Expr, t0: f64, t1: f64) -> Result<Self, CurveError> {
        CurveDef {
            shape: CurveShape::Polar { radius },
            range: [t0, t1],
            param: default_param(),
        }
        .validated()
    }

    pub fn parametric(x: Expr, y: Expr, t0: f64, t1: f64) -> Result<Self, CurveError> {
        CurveDef {
            shape: CurveShape::Parametric { x, y },
            range: [t0, t1],
            param: default_param(),
        }
        .validated()
    }

    pub fn with_param(mut self, name: &str) -> Result<Self, CurveError> {
        self.param = name.to_string();
        self.validated()
    }

    /// Checks the definition invariants.
    pub fn validated(self) -> Result<Self, CurveError> {
        let [t0, t1] = self.range;
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(CurveError::Invalid(format!(
                "parameter interval [{t0}, {t1}] must satisfy t0 < t1"
            )));
        }
        if !crate::expr::is_valid_variable(&self.param) {
            return Err(CurveError::Invalid(format!(
                "'{}' is not a valid parameter name",
                self.param
            )));
        }
        if let CurveShape::Hypocycloid { a, b, c } = self.shape {
            if b == 0.0 || !(a.is_finite() && b.is_finite() && c.is_finite()) {
                return Err(CurveError::Invalid(
                    "hypocycloid needs finite a, c and nonzero finite b".into(),
                ));
            }
        }
        Ok(self)
    }

    /// Component formulas `(x(t), y(t))` of this curve in its own parameter.
    pub fn components(&self) -> (Expr, Expr) {
        let t = Expr::var(self.param.clone());
        let mul = |a: Expr, b: Expr| Expr::binary(BinOp::Mul, a, b);
        match &self.shape {
            CurveShape::Polar { radius } => (
                mul(radius.clone(), Expr::call(Func::Cos, t.clone())),
                mul(radius.clone(), Expr::call(Func::Sin, t)),
            ),
            CurveShape::Parametric { x, y } => (x.clone(), y.clone()),
            CurveShape::Hypocycloid { a, b, c } => {
                let k = Expr::Const(a - b);
                let ratio = mul(Expr::Const((a - b) / b), t.clone());
                let cc = Expr::Const(*c);
                let x = Expr::binary(
                    BinOp::Add,
                    mul(k.clone(), Expr::call(Func::Cos, t.clone())),
                    mul(cc.clone(), Expr::call(Func::Cos, ratio.clone())),
                );
                let y = Expr::binary(
                    BinOp::Sub,
                    mul(k, Expr::call(Func::Sin, t)),
                    mul(cc, Expr::call(Func::Sin, ratio)),
                );
                (x, y)
            }
        }
    }

    fn point_at(&self, t: f64) -> Result<[f64; 2], CurveError> {
        let domain = |source| CurveError::Domain {
            param: self.param.clone(),
            t,
            source,
        };
        let p = match &self.shape {
            CurveShape::Polar { radius } => {
                let ctx = EvalContext::new().with(&self.param, t);
                let r = ctx.eval(radius).map_err(domain)?;
                [r * t.cos(), r * t.sin()]
            }
            CurveShape::Parametric { x, y } => {
                let ctx = EvalContext::new().with(&self.param, t);
                [ctx.eval(x).map_err(domain)?, ctx.eval(y).map_err(domain)?]
            }
            CurveShape::Hypocycloid { a, b, c } => {
                let k = (a - b) / b;
                [
                    (a - b) * t.cos() + c * (k * t).cos(),
                    (a - b) * t.sin() - c * (k * t).sin(),
                ]
            }
        };
        if p.iter().all(|v| v.is_finite()) {
            Ok(p)
        } else {
            Err(CurveError::NonFinite {
                param: self.param.clone(),
                t,
            })
        }
    }
}

/// Where a sampled curve came from.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Sampled(CurveDef),
    Mapped {
        map: ComplexMap,
        preimage: Box<CurveSource>,
    },
    Polyline,
}

/// A sampled plane curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    pub points: Vec<[f64; 2]>,
    /// Parameter value of each point (the index for raw polylines).
    pub params: Vec<f64>,
    pub closed: bool,
    pub source: CurveSource,
}

pub(crate) fn endpoints_coincide(points: &[[f64; 2]]) -> bool {
    match (points.first(), points.last()) {
        (Some(a), Some(b)) if points.len() > 2 => {
            (a[0] - b[0]).hypot(a[1] - b[1]) < CLOSURE_TOLERANCE
        }
        _ => false,
    }
}

impl PlaneCurve {
    /// Wraps raw points (at least two, all finite) as a curve.
    pub fn from_points(points: Vec<[f64; 2]>) -> Result<Self, CurveError> {
        if points.len() < 2 {
            return Err(CurveError::TooFewSamples(points.len().saturating_sub(1)));
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CurveError::Invalid("non-finite coordinate".into()));
        }
        Ok(PlaneCurve {
            params: (0..points.len()).map(|i| i as f64).collect(),
            closed: endpoints_coincide(&points),
            points,
            source: CurveSource::Polyline,
        })
    }

    /// Straight segment from `a` to `b` sampled with `n` intervals.
    pub fn segment(a: [f64; 2], b: [f64; 2], n: usize) -> Result<Self, CurveError> {
        let def = CurveDef::parametric(
            lerp_expr(a[0], b[0]),
            lerp_expr(a[1], b[1]),
            0.0,
            1.0,
        )?;
        sample(&def, n)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn lerp_expr(a: f64, b: f64) -> Expr {
    let t = Expr::var("t");
    simplify(&Expr::binary(
        BinOp::Add,
        Expr::Const(a),
        Expr::binary(BinOp::Mul, Expr::Const(b - a), t),
    ))
}

fn sample_uniform(def: &CurveDef, n: usize) -> Result<PlaneCurve, CurveError> {
    if n < 2 {
        return Err(CurveError::TooFewSamples(n));
    }
    let [t0, t1] = def.range;
    let step = (t1 - t0) / n as f64;
    let params: Vec<f64> = (0..=n)
        .map(|i| if i == n { t1 } else { t0 + i as f64 * step })
        .collect();
    let points = params
        .par_iter()
        .map(|&t| def.point_at(t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlaneCurve {
        closed: endpoints_coincide(&points),
        points,
        params,
        source: CurveSource::Sampled(def.clone()),
    })
}

/// Samples a polar curve at `n + 1` uniformly spaced parameter values.
pub fn sample_polar(def: &CurveDef, n: usize) -> Result<PlaneCurve, CurveError> {
    match def.shape {
        CurveShape::Polar { .. } => sample_uniform(def, n),
        ref other => Err(CurveError::WrongKind {
            expected: "polar",
            found: other.kind_name(),
        }),
    }
}

/// Samples a parametric curve at `n + 1` uniformly spaced parameter values.
pub fn sample_parametric(def: &CurveDef, n: usize) -> Result<PlaneCurve, CurveError> {
    match def.shape {
        CurveShape::Parametric { .. } => sample_uniform(def, n),
        ref other => Err(CurveError::WrongKind {
            expected: "parametric",
            found: other.kind_name(),
        }),
    }
}

/// Samples any curve kind at `n + 1` uniformly spaced parameter values.
pub fn sample(def: &CurveDef, n: usize) -> Result<PlaneCurve, CurveError> {
    sample_uniform(def, n)
}

/// Defines a (modified) hypocycloid traced over `turns` full turns.
pub fn make_hypocycloid(a: f64, b: f64, c: f64, turns: u32) -> Result<CurveDef, CurveError> {
    if b == 0.0 {
        return Err(CurveError::Invalid("hypocycloid rolling radius b must be nonzero".into()));
    }
    if turns == 0 {
        return Err(CurveError::Invalid("turns must be at least 1".into()));
    }
    CurveDef {
        shape: CurveShape::Hypocycloid { a, b, c },
        range: [0.0, TAU * turns as f64],
        param: default_param(),
    }
    .validated()
}

/// Smallest number of turns after which a hypocycloid with radii `a`, `b`
/// closes, when `(a - b) / b` is rational with denominator at most
/// `max_denominator`.
pub fn closing_turns(a: f64, b: f64, max_denominator: u32) -> Option<u32> {
    let ratio = (a - b) / b;
    (1..=max_denominator).find(|&q| {
        let scaled = ratio * q as f64;
        (scaled - scaled.round()).abs() < 1e-9
    })
}

/// The hodograph: a parametric curve whose components are the symbolic
/// derivatives of the input's components.
pub fn derivative_curve(def: &CurveDef) -> Result<CurveDef, CurveError> {
    let (x, y) = def.components();
    CurveDef {
        shape: CurveShape::Parametric {
            x: simplify(&differentiate(&x, &def.param)),
            y: simplify(&differentiate(&y, &def.param)),
        },
        range: def.range,
        param: def.param.clone(),
    }
    .validated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

    fn flower() -> CurveDef {
        CurveDef::polar(parse("sin(4*t)^2 + cos(4*t)").unwrap(), 0.0, TAU).unwrap()
    }

    fn near(p: [f64; 2], q: [f64; 2], tol: f64) -> bool {
        (p[0] - q[0]).abs() < tol && (p[1] - q[1]).abs() < tol
    }

    #[test]
    fn polar_samples() {
        let def = CurveDef::polar(parse("sin(4*t)^2 + cos(4*t)").unwrap(), 0.0, PI).unwrap();
        let c = sample_polar(&def, 8).unwrap();
        assert_eq!(c.len(), 9);
        assert!(near(c.points[0], [1.0, 0.0], 1e-15));
        // t = pi/8: r = 1
        let one_eighth = CurveDef { range: [0.0, FRAC_PI_8], ..def.clone() };
        let c = sample_polar(&one_eighth, 2).unwrap();
        assert!(near(c.points[2], [FRAC_PI_8.cos(), FRAC_PI_8.sin()], 1e-12));
        assert!(near(c.points[2], [0.92388, 0.38268], 1e-5));
        // t = pi/4: r = -1 lands on the opposite ray
        let quarter = CurveDef { range: [0.0, FRAC_PI_4], ..def };
        let c = sample_polar(&quarter, 2).unwrap();
        assert!(near(c.points[2], [-0.70711, -0.70711], 1e-5));
    }

    #[test]
    fn flower_closes() {
        let c = sample_polar(&flower(), 720).unwrap();
        assert!(c.closed);
        assert_eq!(c.len(), 721);
    }

    #[test]
    fn parametric_samples() {
        let circle = CurveDef::parametric(parse("cos(t)").unwrap(), parse("sin(t)").unwrap(), 0.0, TAU).unwrap();
        let c = sample_parametric(&circle, 64).unwrap();
        assert!(c.closed);
        assert!(c.points.iter().all(|p| (p[0].hypot(p[1]) - 1.0).abs() < 1e-12));

        let parabola = CurveDef::parametric(parse("t").unwrap(), parse("t^2").unwrap(), 0.0, 1.0).unwrap();
        let c = sample_parametric(&parabola, 2).unwrap();
        assert_eq!(c.points, vec![[0.0, 0.0], [0.5, 0.25], [1.0, 1.0]]);
        assert!(!c.closed);
    }

    #[test]
    fn kind_and_count_errors() {
        assert!(matches!(sample_parametric(&flower(), 10), Err(CurveError::WrongKind { .. })));
        assert!(matches!(sample_polar(&flower(), 1), Err(CurveError::TooFewSamples(1))));
        assert!(CurveDef::polar(parse("t").unwrap(), 1.0, 1.0).is_err());
        assert!(CurveDef::polar(parse("t").unwrap(), 0.0, 1.0).unwrap().with_param("pi").is_err());
    }

    #[test]
    fn domain_error_reports_parameter() {
        let def = CurveDef::polar(parse("ln(t)").unwrap(), 0.0, 1.0).unwrap();
        match sample_polar(&def, 4) {
            Err(CurveError::Domain { t, .. }) => assert_eq!(t, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hypocycloid_basics() {
        let d = make_hypocycloid(3.0, 1.0, 1.0, 1).unwrap();
        let c = sample(&d, 720).unwrap();
        assert!(near(c.points[0], [3.0, 0.0], 1e-15));
        assert!(c.closed);
        assert!(make_hypocycloid(3.0, 0.0, 1.0, 1).is_err());
        assert!(make_hypocycloid(3.0, 1.0, 1.0, 0).is_err());
        assert_eq!(closing_turns(5.0, 2.0, 100), Some(2));
        assert_eq!(closing_turns(3.0, 1.0, 100), Some(1));
        let open = sample(&make_hypocycloid(5.0, 2.0, 2.0, 1).unwrap(), 720).unwrap();
        assert!(!open.closed);
        let two = sample(&make_hypocycloid(5.0, 2.0, 2.0, 2).unwrap(), 1440).unwrap();
        assert!(two.closed);
    }

    #[test]
    fn derivative_curves() {
        let circle = CurveDef::parametric(parse("cos(t)").unwrap(), parse("sin(t)").unwrap(), 0.0, TAU).unwrap();
        let d = derivative_curve(&circle).unwrap();
        let c = sample(&d, 16).unwrap();
        for (p, t) in c.points.iter().zip(&c.params) {
            assert!(near(*p, [-t.sin(), t.cos()], 1e-12));
        }
        let line = CurveDef::parametric(parse("t").unwrap(), parse("2*t").unwrap(), 0.0, 1.0).unwrap();
        let c = sample(&derivative_curve(&line).unwrap(), 4).unwrap();
        assert!(c.points.iter().all(|p| *p == [1.0, 2.0]));
    }

    #[test]
    fn components_match_closed_form() {
        let d = make_hypocycloid(5.0, 2.0, 1.3, 2).unwrap();
        let (x, y) = d.components();
        for i in 0..50 {
            let t = i as f64 * 0.37;
            let ctx = EvalContext::new().with("t", t);
            let p = d.point_at(t).unwrap();
            assert!((ctx.eval(&x).unwrap() - p[0]).abs() < 1e-12);
            assert!((ctx.eval(&y).unwrap() - p[1]).abs() < 1e-12);
        }
    }
}
