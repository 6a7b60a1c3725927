use super::eval::{apply_binary, apply_func};
use super::{BinOp, Expr};

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

/// Rebuilds a binary node applying local identities and constant folding.
pub(crate) fn mk_binary(op: BinOp, l: Expr, r: Expr) -> Expr {
    if let (Expr::Const(a), Expr::Const(b)) = (&l, &r) {
        if let Ok(v) = apply_binary(op, *a, *b) {
            return Expr::Const(v);
        }
    }
    match op {
        BinOp::Add if is_const(&l, 0.0) => r,
        BinOp::Add | BinOp::Sub if is_const(&r, 0.0) => l,
        BinOp::Sub if is_const(&l, 0.0) => mk_neg(r),
        BinOp::Mul if is_const(&l, 0.0) || is_const(&r, 0.0) => Expr::Const(0.0),
        BinOp::Mul if is_const(&l, 1.0) => r,
        BinOp::Mul | BinOp::Div if is_const(&r, 1.0) => l,
        BinOp::Div if is_const(&l, 0.0) => Expr::Const(0.0),
        BinOp::Pow if is_const(&r, 1.0) => l,
        BinOp::Pow if is_const(&r, 0.0) => Expr::Const(1.0),
        _ => Expr::binary(op, l, r),
    }
}

pub(crate) fn mk_neg(e: Expr) -> Expr {
    match e {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::neg(other),
    }
}

pub(crate) fn mk_call(f: super::Func, arg: Expr) -> Expr {
    if let Expr::Const(c) = arg {
        if let Ok(v) = apply_func(f, c) {
            return Expr::Const(v);
        }
    }
    Expr::call(f, arg)
}

/// Applies local rewrites bottom-up: additive and multiplicative identities,
/// multiplication by zero, double negation and constant folding.
///
/// The result evaluates to the same value as `e` wherever both are defined.
/// Rewrites like `x * 0 -> 0` can make the result defined where `e` was not.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(inner) => mk_neg(simplify(inner)),
        Expr::Call(f, arg) => mk_call(*f, simplify(arg)),
        Expr::Binary(op, l, r) => mk_binary(*op, simplify(l), simplify(r)),
    }
}
