//! Independent oracles shared by the integration tests. The oracles here do
//! not call into the library; `fixtures` builds library inputs and outputs.
#![allow(dead_code)]

use rand::Rng;

pub mod fixtures;

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// Formula tree built and evaluated on the test side only.
#[derive(Debug, Clone)]
pub enum Ast {
    Num(f64),
    Pi,
    Var(usize),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Call(&'static str, Box<Ast>),
}

const FUNCS: [&str; 7] = ["sin", "cos", "tan", "exp", "ln", "sqrt", "abs"];

fn bin(op: char, a: Ast, b: Ast) -> Ast {
    Ast::Bin(op, Box::new(a), Box::new(b))
}

fn random_num<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..3) {
        0 => rng.gen_range(0..10) as f64,
        1 => (rng.gen_range(0.0..10.0f64) * 1000.0).round() / 1000.0,
        _ => rng.gen_range(0.0..3.0),
    }
}

/// Any expression over the whole grammar, including domain-error prone ones.
pub fn random_ast<R: Rng>(rng: &mut R, depth: u32) -> Ast {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..6) {
            0 | 1 => Ast::Num(random_num(rng)),
            2 => Ast::Pi,
            _ => Ast::Var(rng.gen_range(0..VARS.len())),
        };
    }
    match rng.gen_range(0..8) {
        0 => Ast::Neg(Box::new(random_ast(rng, depth - 1))),
        1 => Ast::Call(FUNCS[rng.gen_range(0..FUNCS.len())], Box::new(random_ast(rng, depth - 1))),
        _ => {
            let op = ['+', '-', '*', '/', '^'][rng.gen_range(0..5)];
            bin(op, random_ast(rng, depth - 1), random_ast(rng, depth - 1))
        }
    }
}

/// Smooth everywhere: no division by zero, no ln/sqrt/abs, integer powers.
pub fn random_smooth_ast<R: Rng>(rng: &mut R, depth: u32) -> Ast {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 => Ast::Num(rng.gen_range(1..5) as f64 / 2.0),
            _ => Ast::Var(rng.gen_range(0..VARS.len())),
        };
    }
    let sub = |rng: &mut R| random_smooth_ast(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Ast::Neg(Box::new(sub(rng))),
        1 => Ast::Call(["sin", "cos"][rng.gen_range(0..2)], Box::new(sub(rng))),
        2 => Ast::Call("exp", Box::new(Ast::Call("sin", Box::new(sub(rng))))),
        3 => bin('^', sub(rng), Ast::Num(rng.gen_range(2..4) as f64)),
        4 => {
            let d = bin('+', Ast::Num(1.5), bin('^', sub(rng), Ast::Num(2.0)));
            bin('/', sub(rng), d)
        }
        _ => bin(['+', '-', '*'][rng.gen_range(0..3)], sub(rng), sub(rng)),
    }
}

fn precedence(a: &Ast) -> u8 {
    match a {
        Ast::Bin('+' | '-', ..) => 1,
        Ast::Bin('*' | '/', ..) => 2,
        Ast::Neg(_) => 3,
        Ast::Bin('^', ..) => 4,
        _ => 5,
    }
}

/// Minimal-parenthesis text with random spacing.
pub fn render<R: Rng>(a: &Ast, rng: &mut R) -> String {
    let sp = |rng: &mut R| if rng.gen_bool(0.3) { " " } else { "" };
    let wrap = |a: &Ast, min: u8, rng: &mut R| {
        let s = render(a, rng);
        if precedence(a) < min { format!("({s})") } else { s }
    };
    match a {
        Ast::Num(v) => format!("{v}"),
        Ast::Pi => "pi".into(),
        Ast::Var(i) => VARS[*i].into(),
        Ast::Neg(e) => format!("-{}", wrap(e, 3, rng)),
        Ast::Call(f, e) => format!("{f}({})", render(e, rng)),
        Ast::Bin(op, l, r) => {
            let (lmin, rmin) = match op {
                '+' | '-' => (1, 2),
                '*' | '/' => (2, 3),
                _ => (5, 3),
            };
            let (ls, s1) = (wrap(l, lmin, rng), sp(rng));
            let (s2, rs) = (sp(rng), wrap(r, rmin, rng));
            format!("{ls}{s1}{op}{s2}{rs}")
        }
    }
}

/// `None` where the library must report a domain error.
pub fn eval(a: &Ast, env: &[f64; 4]) -> Option<f64> {
    let ok = |v: f64| v.is_finite().then_some(v);
    match a {
        Ast::Num(v) => Some(*v),
        Ast::Pi => Some(std::f64::consts::PI),
        Ast::Var(i) => Some(env[*i]),
        Ast::Neg(e) => Some(-eval(e, env)?),
        Ast::Call(f, e) => {
            let x = eval(e, env)?;
            match *f {
                "ln" if x <= 0.0 => None,
                "sqrt" if x < 0.0 => None,
                "sin" => ok(x.sin()),
                "cos" => ok(x.cos()),
                "tan" => ok(x.tan()),
                "exp" => ok(x.exp()),
                "ln" => ok(x.ln()),
                "sqrt" => ok(x.sqrt()),
                _ => ok(x.abs()),
            }
        }
        Ast::Bin(op, l, r) => {
            let (x, y) = (eval(l, env)?, eval(r, env)?);
            match op {
                '+' => ok(x + y),
                '-' => ok(x - y),
                '*' => ok(x * y),
                '/' if y == 0.0 => None,
                '/' => ok(x / y),
                _ => ok(x.powf(y)),
            }
        }
    }
}

/// Like [`eval`] but also `None` once any intermediate value leaves
/// `[-bound, bound]`.
pub fn eval_bounded(a: &Ast, env: &[f64; 4], bound: f64) -> Option<f64> {
    let v = match a {
        Ast::Neg(e) => -eval_bounded(e, env, bound)?,
        Ast::Call(f, e) => {
            let x = eval_bounded(e, env, bound)?;
            eval(&Ast::Call(f, Box::new(Ast::Num(x))), env)?
        }
        Ast::Bin(op, l, r) => {
            let (x, y) = (eval_bounded(l, env, bound)?, eval_bounded(r, env, bound)?);
            eval(&Ast::Bin(*op, Box::new(Ast::Num(x)), Box::new(Ast::Num(y))), env)?
        }
        leaf => eval(leaf, env)?,
    };
    (v.abs() <= bound).then_some(v)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) };
    dist2(p, [a[0] + s * dx, a[1] + s * dy])
}

pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        / 2.0
}

/// Sutherland-Hodgman: `subject` clipped by the convex CCW `clip`.
pub fn clip_convex(subject: &[[f64; 2]], clip: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % m]);
        let side = |p: [f64; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let (p, q) = (input[j], input[(j + 1) % input.len()]);
            let (sp, sq) = (side(p), side(q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let k = sp / (sp - sq);
                out.push([p[0] + k * (q[0] - p[0]), p[1] + k * (q[1] - p[1])]);
            }
        }
    }
    out
}

/// Area shared by two convex CCW polygons.
pub fn overlap_area(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let c = clip_convex(a, b);
    if c.len() < 3 { 0.0 } else { polygon_area(&c).abs() }
}

pub type V3 = [f64; 3];

pub fn lerp3(a: V3, b: V3, s: f64) -> V3 {
    [0, 1, 2].map(|i| a[i] + s * (b[i] - a[i]))
}

pub fn dist3(a: V3, b: V3) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
}

fn ternary_min(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) { hi = m2 } else { lo = m1 }
    }
    let s = (lo + hi) / 2.0;
    (s, f(s))
}

/// Distance between segments by nested ternary search; the distance is
/// convex in both parameters, so this converges to the true minimum.
pub fn segment_distance(a0: V3, a1: V3, b0: V3, b1: V3) -> f64 {
    let inner = |s: f64| {
        let p = lerp3(a0, a1, s);
        ternary_min(0.0, 1.0, |u| dist3(p, lerp3(b0, b1, u))).1
    };
    ternary_min(0.0, 1.0, inner).1
}

/// Points on √x + √y = 1 with `n` intervals.
pub fn parabola_envelope(n: usize) -> Vec<[f64; 2]> {
    (0..=n)
        .map(|i| {
            let u = i as f64 / n as f64;
            [u * u, (1.0 - u) * (1.0 - u)]
        })
        .collect()
}

/// Platonic pairs by brute force: p-gons meeting q at a vertex with
/// angle sum below 360 degrees, compared exactly in integers:
/// q (p - 2) 180 / p < 360  <=>  q (p - 2) < 2 p.
pub fn brute_force_platonic(max: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for p in 3..=max {
        for q in 3..=max {
            if q * (p - 2) < 2 * p {
                v.push((p, q));
            }
        }
    }
    v
}
