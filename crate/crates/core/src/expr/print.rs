use std::f64::consts::PI;

use super::{BinOp, Expr};

// Binding strength of each printed form; higher binds tighter.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Const(v) if v.is_sign_negative() && *v != 0.0 => UNARY,
        Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => ATOM,
        Expr::Neg(_) => UNARY,
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => SUM,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => PRODUCT,
        // a power is only valid as an operand where `unary` is accepted
        Expr::Binary(BinOp::Pow, ..) => UNARY + 1,
    }
}

fn format_const(v: f64) -> String {
    if v == PI {
        "pi".to_string()
    } else if v == -PI {
        "-pi".to_string()
    } else if v == 0.0 {
        "0".to_string()
    } else {
        // Display gives the shortest string that round-trips
        format!("{v}")
    }
}

fn write(e: &Expr, min: u8, out: &mut String) {
    let wrap = strength(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Const(v) => out.push_str(&format_const(*v)),
        Expr::Var(name) => out.push_str(name),
        Expr::Neg(inner) => {
            out.push('-');
            write(inner, UNARY, out);
        }
        Expr::Call(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write(arg, SUM, out);
            out.push(')');
        }
        Expr::Binary(BinOp::Pow, base, exp) => {
            write(base, ATOM, out);
            out.push('^');
            write(exp, UNARY, out);
        }
        Expr::Binary(op, l, r) => {
            let level = strength(e);
            write(l, level, out);
            out.push(' ');
            out.push(op.symbol());
            out.push(' ');
            write(r, level + 1, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Renders `e` in formula syntax with the minimal parentheses needed for
/// [`parse`](super::parse) to rebuild the same tree.
///
/// Negative constants (which the parser never produces on its own) print as
/// `-c` and reparse as a negation of `c`, which evaluates identically.
pub fn pretty_print(e: &Expr) -> String {
    let mut out = String::new();
    write(e, SUM, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn round(src: &str) -> String {
        pretty_print(&parse(src).unwrap())
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("2+3*4"), "2 + 3 * 4");
        assert_eq!(round("(2+3)*4"), "(2 + 3) * 4");
        assert_eq!(round("x^2"), "x^2");
        assert_eq!(round("a-(b-c)"), "a - (b - c)");
        assert_eq!(round("(a-b)-c"), "a - b - c");
        assert_eq!(round("(2^3)^2"), "(2^3)^2");
        assert_eq!(round("2^3^2"), "2^3^2");
        assert_eq!(round("(-x)^2"), "(-x)^2");
        assert_eq!(round("-(x*y)"), "-(x * y)");
        assert_eq!(round("sin(4*t)^2 + cos(4*t)"), "sin(4 * t)^2 + cos(4 * t)");
        assert_eq!(round("2*pi"), "2 * pi");
        assert_eq!(round("x^-y"), "x^-y");
        assert_eq!(round("a/(b*c)"), "a / (b * c)");
    }

    #[test]
    fn negative_constant_stays_value_equal() {
        let e = Expr::binary(BinOp::Pow, Expr::Const(-2.0), Expr::Const(2.0));
        let text = pretty_print(&e);
        assert_eq!(text, "(-2)^2");
        let ctx = crate::expr::EvalContext::new();
        assert_eq!(ctx.eval(&parse(&text).unwrap()).unwrap(), 4.0);
    }
}
