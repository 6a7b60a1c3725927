//! Library-side fixtures: generated design documents and golden outputs.

use std::f64::consts::TAU;

use ornata::cmap::ComplexMap;
use ornata::curves::{make_hypocycloid, CurveDef};
use ornata::export::{self, DesignDoc, Entry, RenderSettings, SolidSpec, StitchSpec, SvgStyle};
use ornata::expr::parse;
use ornata::frame::{cut_list, FrameLayout, FrameSpec, StrutDims};
use ornata::solids::{build_solid, unfold_net, SchlafliPair, Spanning};
use ornata::stitch::two_rail_stitch;
use ornata::surfaces::{Bounds, CombineMode, ImplicitSurface, ParametricSurfaceDef, ViewAxis};
use rand::Rng;

use super::{dist3, random_ast, random_smooth_ast, render, segment_distance, Ast, V3};

pub const FLOWER: &str = "sin(4*t)^2+cos(4*t)";

fn formula<R: Rng>(rng: &mut R, ast: &Ast) -> ornata::expr::Expr {
    parse(&render(ast, rng)).expect("rendered formulas parse")
}

fn real<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn curve_def<R: Rng>(rng: &mut R) -> CurveDef {
    let t0 = real(rng, -3.0, 0.0);
    let t1 = t0 + real(rng, 0.5, 7.0);
    let a = random_smooth_ast(rng, 3);
    match rng.gen_range(0..3) {
        0 => CurveDef::polar(formula(rng, &a), t0, t1).unwrap(),
        1 => {
            let b = random_smooth_ast(rng, 3);
            CurveDef::parametric(formula(rng, &a), formula(rng, &b), t0, t1).unwrap()
        }
        _ => make_hypocycloid(rng.gen_range(3..9) as f64, rng.gen_range(1..3) as f64, real(rng, 0.1, 2.0), rng.gen_range(1..4))
            .unwrap(),
    }
}

fn bounds<R: Rng>(rng: &mut R) -> Bounds {
    Bounds([0, 1, 2].map(|_| {
        let lo = real(rng, -3.0, -0.5);
        [lo, lo + real(rng, 1.0, 5.0)]
    }))
}

fn strut<R: Rng>(rng: &mut R) -> StrutDims {
    let length = real(rng, 0.5, 10.0);
    StrutDims { length, width: length * real(rng, 0.01, 0.4), thickness: length * real(rng, 0.01, 0.2) }
}

/// A schema-valid document with `n` entries of every kind; references always
/// point at earlier entries of a compatible kind. Entries need not render.
pub fn random_doc<R: Rng>(rng: &mut R, n: usize) -> DesignDoc {
    let mut doc = DesignDoc::new();
    let mut curves: Vec<String> = Vec::new();
    let mut surfaces: Vec<String> = Vec::new();
    for i in 0..n {
        let name = format!("e{i}_{}", rng.gen_range(0..1000));
        let pick = |rng: &mut R, v: &[String]| v[rng.gen_range(0..v.len())].clone();
        let entry = match rng.gen_range(0..8) {
            1 if !curves.is_empty() => {
                let map = match rng.gen_range(0..3) {
                    0 => ComplexMap::Exp {},
                    1 => ComplexMap::recip_power(real(rng, -3.0, 3.0)).unwrap(),
                    _ => ComplexMap::Exp {}.then(ComplexMap::recip_power(rng.gen_range(1..4) as f64).unwrap()),
                };
                Entry::Map { map, source: pick(rng, &curves) }
            }
            2 => {
                let ast = random_ast(rng, 4);
                Entry::Surface { surface: ImplicitSurface { f: formula(rng, &ast), bounds: bounds(rng) } }
            }
            3 if !surfaces.is_empty() => Entry::Combine {
                a: pick(rng, &surfaces),
                b: pick(rng, &surfaces),
                mode: [CombineMode::Product, CombineMode::Sum, CombineMode::Morph][rng.gen_range(0..3)],
                s: real(rng, 0.0, 1.0),
            },
            4 => Entry::Radial {
                surface: ParametricSurfaceDef {
                    rho: parse(&format!("1+{}*sin({}*theta)*cos(psi)", real(rng, 0.0, 0.5), rng.gen_range(1..7))).unwrap(),
                    theta: [0.0, TAU],
                    psi: [0.0, real(rng, 1.0, 3.0)],
                },
            },
            5 => Entry::Stitch {
                stitch: match rng.gen_range(0..3) {
                    0 if !curves.is_empty() => StitchSpec::TwoRail {
                        rail_a: pick(rng, &curves),
                        rail_b: pick(rng, &curves),
                        n: rng.gen_range(2..200),
                        reversed: rng.gen_bool(0.5),
                    },
                    1 => StitchSpec::Multiplier { pins: rng.gen_range(3..400), factor: rng.gen_range(2..50), radius: real(rng, 0.1, 5.0) },
                    _ => StitchSpec::Circle { pins: rng.gen_range(3..400), step: rng.gen_range(1..50), radius: real(rng, 0.1, 5.0) },
                },
            },
            6 => {
                let schlafli = [(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)][rng.gen_range(0..5)];
                let net = match rng.gen_range(0..4) {
                    0 => None,
                    1 => Some(Spanning::BreadthFirst { root: rng.gen_range(0..4) }),
                    2 => Some(Spanning::Dress),
                    _ => Some(Spanning::Tree { folds: vec![[0, 1], [1, 2]] }),
                };
                Entry::Solid {
                    solid: SolidSpec { schlafli: SchlafliPair::new(schlafli.0, schlafli.1), elevate: rng.gen_bool(0.3), net, tabs: rng.gen_bool(0.5) },
                }
            }
            7 => Entry::Frame {
                frame: if rng.gen_bool(0.5) {
                    FrameSpec::Dome {
                        rings: rng.gen_range(1..5),
                        segments: rng.gen_range(3..20),
                        strut: strut(rng),
                        radius: rng.gen_bool(0.5).then(|| real(rng, 1.0, 20.0)),
                    }
                } else {
                    FrameSpec::Bridge { n: rng.gen_range(3..12), strut: strut(rng), span: rng.gen_bool(0.5).then(|| real(rng, 1.0, 50.0)) }
                },
            },
            _ => Entry::Curve { def: curve_def(rng), samples: rng.gen_bool(0.5).then(|| rng.gen_range(2..5000)) },
        };
        match entry {
            Entry::Curve { .. } | Entry::Map { .. } => curves.push(name.clone()),
            Entry::Surface { .. } | Entry::Combine { .. } => surfaces.push(name.clone()),
            _ => {}
        }
        doc.entries.insert(name, entry);
    }
    doc.render = RenderSettings {
        width: rng.gen_range(16..2048),
        height: rng.gen_range(16..2048),
        view: [ViewAxis::PosX, ViewAxis::NegX, ViewAxis::PosY, ViewAxis::NegY, ViewAxis::PosZ, ViewAxis::NegZ][rng.gen_range(0..6)],
        resolution: rng.gen_range(8..256),
        samples: rng.gen_range(2..10_000),
        svg: SvgStyle { size: real(rng, 64.0, 4096.0), stroke: real(rng, 0.0001, 0.01), pin_radius: real(rng, 0.001, 0.02) },
    };
    doc
}

/// The flower curve as a one-entry document.
pub fn flower_doc() -> DesignDoc {
    DesignDoc::new().with(
        "flower",
        Entry::Curve { def: CurveDef::polar(parse(FLOWER).unwrap(), 0.0, TAU).unwrap(), samples: Some(720) },
    )
}

/// Every golden artifact, by file name.
pub fn golden_outputs() -> Vec<(&'static str, Vec<u8>)> {
    let style = SvgStyle::default();
    let doc = flower_doc();
    let flower = doc.curve("flower").unwrap();
    let axis = |b: [f64; 2]| ornata::curves::PlaneCurve::segment([0.0, 0.0], b, 19).unwrap();
    let stitch = two_rail_stitch(&axis([1.0, 0.0]), &axis([0.0, 1.0]), 20, true).unwrap();
    let dodeca = build_solid(SchlafliPair::DODECAHEDRON).unwrap();
    let net = unfold_net(&dodeca, &Spanning::Dress).unwrap().with_tabs();
    let cube = build_solid(SchlafliPair::CUBE).unwrap();
    let bridge = FrameSpec::Bridge { n: 5, strut: StrutDims::default(), span: None }.build().unwrap();
    vec![
        ("flower.svg", export::curve_svg(&flower, &style).unwrap().into_bytes()),
        ("parabola_stitch.svg", export::stitch_svg(&stitch, &style).unwrap().into_bytes()),
        ("dodecahedron_net.svg", export::net_svg(&net, &style).unwrap().into_bytes()),
        ("cube.obj", export::to_obj(&cube.mesh).unwrap().into_bytes()),
        ("bridge.obj", export::to_obj(&bridge.to_mesh()).unwrap().into_bytes()),
        ("bridge_cut_list.csv", export::cut_list_csv(&cut_list(&bridge).unwrap()).unwrap().into_bytes()),
        ("design.json", export::save_design(&doc).into_bytes()),
    ]
}

/// Largest contact gap error, relative to strut length, measured with the
/// independent segment distance.
pub fn oracle_gaps(l: &FrameLayout) -> f64 {
    l.contacts
        .iter()
        .map(|c| {
            let (a, b) = (&l.struts[c.resting], &l.struts[c.support]);
            let g = segment_distance(a.start, a.end, b.start, b.end);
            (g - (a.thickness + b.thickness) / 2.0).abs() / a.length.max(b.length)
        })
        .fold(0.0, f64::max)
}

/// Matches every transformed strut to a distinct strut, endpoints in either order.
pub fn is_permutation(l: &FrameLayout, f: impl Fn(V3) -> V3) -> bool {
    let mut used = vec![false; l.struts.len()];
    l.struts.iter().all(|s| {
        let (p, q) = (f(s.start), f(s.end));
        let hit = l.struts.iter().enumerate().position(|(j, o)| {
            !used[j] && ((dist3(p, o.start) < 1e-9 && dist3(q, o.end) < 1e-9) || (dist3(p, o.end) < 1e-9 && dist3(q, o.start) < 1e-9))
        });
        hit.map(|j| used[j] = true).is_some()
    })
}
