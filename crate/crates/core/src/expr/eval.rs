use thiserror::Error;

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound variable '{0}'")]
    Unbound(String),
    #[error("domain error in {op} at {value}")]
    Domain { op: &'static str, value: f64 },
}

/// Variable bindings for evaluation.
///
/// Bindings are kept in insertion order; rebinding a name replaces its value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalContext {
    bindings: Vec<(String, f64)>,
}

impl EvalContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match self.bindings.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn eval(&self, e: &Expr) -> Result<f64, EvalError> {
        match e {
            Expr::Const(v) => Ok(*v),
            Expr::Var(name) => self
                .get(name)
                .ok_or_else(|| EvalError::Unbound(name.clone())),
            Expr::Neg(inner) => Ok(-self.eval(inner)?),
            Expr::Binary(op, l, r) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                apply_binary(*op, a, b)
            }
            Expr::Call(f, arg) => apply_func(*f, self.eval(arg)?),
        }
    }
}

impl<S: AsRef<str>> FromIterator<(S, f64)> for EvalContext {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        let mut ctx = EvalContext::new();
        for (n, v) in iter {
            ctx.set(n.as_ref(), v);
        }
        ctx
    }
}

fn finite(op: &'static str, input: f64, out: f64) -> Result<f64, EvalError> {
    if out.is_finite() {
        Ok(out)
    } else {
        Err(EvalError::Domain { op, value: input })
    }
}

pub(crate) fn apply_binary(op: BinOp, a: f64, b: f64) -> Result<f64, EvalError> {
    match op {
        BinOp::Add => finite("+", a, a + b),
        BinOp::Sub => finite("-", a, a - b),
        BinOp::Mul => finite("*", a, a * b),
        BinOp::Div => {
            if b == 0.0 {
                return Err(EvalError::Domain { op: "/", value: b });
            }
            finite("/", b, a / b)
        }
        BinOp::Pow => finite("^", a, a.powf(b)),
    }
}

pub(crate) fn apply_func(f: Func, x: f64) -> Result<f64, EvalError> {
    let out = match f {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Exp => x.exp(),
        Func::Ln => {
            if x <= 0.0 {
                return Err(EvalError::Domain { op: "ln", value: x });
            }
            x.ln()
        }
        Func::Sqrt => {
            if x < 0.0 {
                return Err(EvalError::Domain { op: "sqrt", value: x });
            }
            x.sqrt()
        }
        Func::Abs => x.abs(),
    };
    finite(f.name(), x, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    fn ev(src: &str, ctx: &EvalContext) -> Result<f64, EvalError> {
        ctx.eval(&parse(src).unwrap())
    }

    #[test]
    fn spec_values() {
        let origin = EvalContext::new().with("x", 0.0).with("y", 0.0).with("z", 0.0);
        assert_eq!(ev("x^2+y^2+z^2-1", &origin).unwrap(), -1.0);
        assert_eq!(ev("2+3*4", &EvalContext::new()).unwrap(), 14.0);
        let at = |t: f64| EvalContext::new().with("t", t);
        assert_eq!(ev("sin(4*t)^2+cos(4*t)", &at(0.0)).unwrap(), 1.0);
        let v = ev("sin(4*t)^2+cos(4*t)", &at(PI / 4.0)).unwrap();
        assert!((v + 1.0).abs() < 1e-15);
        assert_eq!(ev("2^3^2", &EvalContext::new()).unwrap(), 512.0);
        assert_eq!(ev("-2^2", &EvalContext::new()).unwrap(), -4.0);
    }

    #[test]
    fn unbound_names_variable() {
        assert_eq!(
            ev("x + q", &EvalContext::new().with("x", 1.0)),
            Err(EvalError::Unbound("q".into()))
        );
    }

    #[test]
    fn domain_errors_are_reported() {
        let ctx = EvalContext::new().with("x", -1.0).with("z", 0.0);
        assert_eq!(ev("ln(x)", &ctx), Err(EvalError::Domain { op: "ln", value: -1.0 }));
        assert_eq!(ev("ln(z)", &ctx), Err(EvalError::Domain { op: "ln", value: 0.0 }));
        assert_eq!(ev("sqrt(x)", &ctx), Err(EvalError::Domain { op: "sqrt", value: -1.0 }));
        assert_eq!(ev("1/z", &ctx), Err(EvalError::Domain { op: "/", value: 0.0 }));
        assert!(ev("x^0.5", &ctx).is_err());
        assert!(ev("exp(1000)", &ctx).is_err());
        assert_eq!(ev("sqrt(z)", &ctx), Ok(0.0));
    }

    #[test]
    fn rebinding_replaces() {
        let mut ctx = EvalContext::new().with("x", 1.0);
        ctx.set("x", 2.0);
        assert_eq!(ctx.get("x"), Some(2.0));
    }
}
