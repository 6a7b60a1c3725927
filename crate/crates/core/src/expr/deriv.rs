use super::simplify::{mk_binary, mk_call, mk_neg};
use super::{BinOp, Expr, Func};

fn add(a: Expr, b: Expr) -> Expr {
    mk_binary(BinOp::Add, a, b)
}
fn sub(a: Expr, b: Expr) -> Expr {
    mk_binary(BinOp::Sub, a, b)
}
fn mul(a: Expr, b: Expr) -> Expr {
    mk_binary(BinOp::Mul, a, b)
}
fn div(a: Expr, b: Expr) -> Expr {
    mk_binary(BinOp::Div, a, b)
}
fn pow(a: Expr, b: Expr) -> Expr {
    mk_binary(BinOp::Pow, a, b)
}
fn c(v: f64) -> Expr {
    Expr::Const(v)
}

/// Exact symbolic partial derivative of `e` with respect to `var`.
///
/// Every built-in function is differentiable, so this cannot fail. The
/// derivative of `abs(u)` is `u' * u / abs(u)`, which raises a domain error
/// (division by zero) when evaluated where `u = 0`.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    if !e.depends_on(var) {
        return c(0.0);
    }
    match e {
        Expr::Const(_) => c(0.0),
        Expr::Var(v) => c(if v == var { 1.0 } else { 0.0 }),
        Expr::Neg(u) => mk_neg(differentiate(u, var)),
        Expr::Binary(op, u, v) => {
            let du = differentiate(u, var);
            let dv = differentiate(v, var);
            let (u, v) = ((**u).clone(), (**v).clone());
            match op {
                BinOp::Add => add(du, dv),
                BinOp::Sub => sub(du, dv),
                BinOp::Mul => add(mul(du, v.clone()), mul(u, dv)),
                BinOp::Div => div(sub(mul(du, v.clone()), mul(u, dv)), pow(v, c(2.0))),
                BinOp::Pow if !v.depends_on(var) => {
                    // d(u^k) = k u^(k-1) u'
                    let lowered = pow(u, sub(v.clone(), c(1.0)));
                    mul(mul(v, lowered), du)
                }
                BinOp::Pow if !u.depends_on(var) => {
                    // d(a^v) = a^v ln(a) v'
                    let whole = pow(u.clone(), v);
                    mul(mul(whole, mk_call(Func::Ln, u)), dv)
                }
                BinOp::Pow => {
                    // d(u^v) = u^v (v' ln u + v u' / u)
                    let whole = pow(u.clone(), v.clone());
                    let inner = add(
                        mul(dv, mk_call(Func::Ln, u.clone())),
                        div(mul(v, du), u),
                    );
                    mul(whole, inner)
                }
            }
        }
        Expr::Call(f, u) => {
            let du = differentiate(u, var);
            let u = (**u).clone();
            let outer = match f {
                Func::Sin => mk_call(Func::Cos, u),
                Func::Cos => mk_neg(mk_call(Func::Sin, u)),
                Func::Tan => div(c(1.0), pow(mk_call(Func::Cos, u), c(2.0))),
                Func::Exp => mk_call(Func::Exp, u),
                Func::Ln => div(c(1.0), u),
                Func::Sqrt => div(c(1.0), mul(c(2.0), mk_call(Func::Sqrt, u))),
                Func::Abs => div(u.clone(), mk_call(Func::Abs, u)),
            };
            mul(outer, du)
        }
    }
}
