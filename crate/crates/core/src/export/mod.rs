//! File formats: SVG for plane figures, OBJ for meshes, PNG for rasters,
//! CSV for cut lists and JSON for design documents.
//!
//! Every writer is deterministic: numbers go through [`fmt6`] and element
//! order follows the input.

mod design;

use std::fmt::Write as _;
use std::io::Cursor;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::PlaneCurve;
use crate::frame::CutClass;
use crate::mesh::{MeshError, TriMesh};
use crate::solids::{Net, PlacedPolygon};
use crate::stitch::StitchPattern;
use crate::surfaces::GrayImage;

pub use design::{load_design, save_design, DesignDoc, DocError, Entry, RenderSettings, SolidSpec, StitchSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExportError {
    #[error("nothing to export: {0} is empty")]
    Empty(&'static str),
    #[error("invalid mesh: {0}")]
    Mesh(#[from] MeshError),
    #[error("cut class {class} has {count} notches, the CSV holds at most 4")]
    TooManyNotches { class: usize, count: usize },
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),
    #[error("png encoding failed: {0}")]
    Png(String),
}

/// Rounds to 6 decimals and drops trailing zeros: `0.5`, `-1`, `0.333333`.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvgStyle {
    /// Pixel size of the longer side.
    pub size: f64,
    /// Stroke width as a fraction of the longer side of the content.
    pub stroke: f64,
    /// Pin radius as a fraction of the longer side of the content.
    pub pin_radius: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { size: 512.0, stroke: 0.003, pin_radius: 0.008 }
    }
}

type P = [f64; 2];

enum Item {
    Polyline(Vec<P>),
    Line(P, P),
    Circle(P),
    Polygon(Vec<P>),
    Path(Vec<P>),
}

struct Svg {
    items: Vec<(Item, String)>,
    comment: Option<String>,
}

impl Svg {
    fn new() -> Self {
        Svg { items: Vec::new(), comment: None }
    }

    fn push(&mut self, item: Item, class: impl Into<String>) {
        self.items.push((item, class.into()));
    }

    fn points(&self) -> impl Iterator<Item = &P> {
        self.items.iter().flat_map(|(it, _)| match it {
            Item::Polyline(v) | Item::Polygon(v) | Item::Path(v) => v.iter().collect::<Vec<_>>(),
            Item::Line(a, b) => vec![a, b],
            Item::Circle(c) => vec![c],
        })
    }

    fn finish(&self, style: &SvgStyle, what: &'static str) -> Result<String, ExportError> {
        if self.items.is_empty() {
            return Err(ExportError::Empty(what));
        }
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in self.points() {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(ExportError::NonFinite(what));
            }
            // y is flipped so figures keep their mathematical orientation
            let q = [p[0], -p[1]];
            for i in 0..2 {
                lo[i] = lo[i].min(q[i]);
                hi[i] = hi[i].max(q[i]);
            }
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let extent = if extent > 0.0 { extent } else { 1.0 };
        let margin = 0.05 * extent;
        let (vw, vh) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
        let scale = style.size / vw.max(vh);
        let sw = fmt6(style.stroke * extent);
        let xy = |p: &P| format!("{},{}", fmt6(p[0]), fmt6(-p[1]));
        let list = |v: &[P]| v.iter().map(xy).collect::<Vec<_>>().join(" ");

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
            fmt6(vw * scale),
            fmt6(vh * scale),
            fmt6(lo[0] - margin),
            fmt6(lo[1] - margin),
            fmt6(vw),
            fmt6(vh)
        );
        if let Some(c) = &self.comment {
            let _ = writeln!(out, "<!--\n{c}-->");
        }
        for (item, class) in &self.items {
            let line = match item {
                Item::Polyline(v) => format!(
                    "<polyline class=\"{class}\" fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\" points=\"{}\"/>",
                    list(v)
                ),
                Item::Line(a, b) => {
                    let dash = if class == "fold" { format!(" stroke-dasharray=\"{} {}\"", fmt6(4.0 * style.stroke * extent), fmt6(2.0 * style.stroke * extent)) } else { String::new() };
                    format!(
                        "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{sw}\"{dash}/>",
                        fmt6(a[0]),
                        fmt6(-a[1]),
                        fmt6(b[0]),
                        fmt6(-b[1])
                    )
                }
                Item::Circle(c) => format!(
                    "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
                    fmt6(c[0]),
                    fmt6(-c[1]),
                    fmt6(style.pin_radius * extent)
                ),
                Item::Polygon(v) => format!(
                    "<polygon class=\"{class}\" fill=\"#eeeeee\" stroke=\"none\" points=\"{}\"/>",
                    list(v)
                ),
                Item::Path(v) => {
                    let mut d = String::new();
                    for (i, p) in v.iter().enumerate() {
                        let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, fmt6(p[0]), fmt6(-p[1]));
                    }
                    d.push('Z');
                    format!("<path class=\"{class}\" fill=\"none\" stroke=\"gray\" stroke-width=\"{sw}\" d=\"{d}\"/>")
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

/// Each curve as one polyline.
pub fn curves_svg(curves: &[PlaneCurve], style: &SvgStyle) -> Result<String, ExportError> {
    let mut svg = Svg::new();
    for c in curves {
        if !c.points.is_empty() {
            svg.push(Item::Polyline(c.points.clone()), "curve");
        }
    }
    svg.finish(style, "curve")
}

pub fn curve_svg(curve: &PlaneCurve, style: &SvgStyle) -> Result<String, ExportError> {
    curves_svg(std::slice::from_ref(curve), style)
}

/// Pins as circles and chords as lines, with the threading order as a
/// comment.
pub fn stitch_svg(pattern: &StitchPattern, style: &SvgStyle) -> Result<String, ExportError> {
    let mut svg = Svg::new();
    let mut table = String::from("threading order (chord: pin - pin)\n");
    for (i, [a, b]) in pattern.chords.iter().enumerate() {
        svg.push(Item::Line(pattern.pins[*a], pattern.pins[*b]), "chord");
        let _ = writeln!(table, "{}: {} - {}", i + 1, a, b);
    }
    for p in &pattern.pins {
        svg.push(Item::Circle(*p), "pin");
    }
    svg.comment = Some(table);
    svg.finish(style, "stitch pattern")
}

/// Faces as filled polygons, cut edges solid (class `cut`), fold edges
/// dashed (class `fold`) and glue tabs as paths.
pub fn net_svg(net: &Net, style: &SvgStyle) -> Result<String, ExportError> {
    let mut svg = Svg::new();
    for f in &net.faces {
        svg.push(Item::Polygon(f.polygon.clone()), format!("face face-{}", f.face));
    }
    for t in &net.tabs {
        svg.push(Item::Path(t.clone()), "tab");
    }
    for (a, b) in net.cut_segments() {
        svg.push(Item::Line(a, b), "cut");
    }
    for (a, b) in net.fold_segments() {
        svg.push(Item::Line(a, b), "fold");
    }
    svg.finish(style, "net")
}

pub fn tiling_svg(tiles: &[PlacedPolygon], style: &SvgStyle) -> Result<String, ExportError> {
    let mut svg = Svg::new();
    for t in tiles {
        svg.push(Item::Polygon(t.vertices.clone()), format!("tile ring-{}", t.ring));
        let mut closed = t.vertices.clone();
        closed.push(t.vertices[0]);
        svg.push(Item::Polyline(closed), "edge");
    }
    svg.finish(style, "tiling")
}

/// ASCII OBJ: `v` lines, then `vn` lines when the mesh has normals, then
/// 1-based `f` lines.
pub fn to_obj(mesh: &TriMesh) -> Result<String, ExportError> {
    if mesh.triangles.is_empty() {
        return Err(ExportError::Empty("mesh"));
    }
    mesh.check()?;
    let mut out = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", fmt6(v[0]), fmt6(v[1]), fmt6(v[2]));
    }
    if let Some(normals) = &mesh.normals {
        for n in normals {
            let _ = writeln!(out, "vn {} {} {}", fmt6(n[0]), fmt6(n[1]), fmt6(n[2]));
        }
    }
    for t in &mesh.triangles {
        let [a, b, c] = t.map(|i| i + 1);
        if mesh.normals.is_some() {
            let _ = writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}");
        } else {
            let _ = writeln!(out, "f {a} {b} {c}");
        }
    }
    Ok(out)
}

/// 8-bit grayscale PNG.
pub fn to_png(image: &GrayImage) -> Result<Vec<u8>, ExportError> {
    let (w, h) = (image.width as u32, image.height as u32);
    let buf = image::GrayImage::from_raw(w, h, image.to_bytes())
        .ok_or_else(|| ExportError::Png("pixel count does not match size".into()))?;
    let mut out = Cursor::new(Vec::new());
    buf.write_to(&mut out, image::ImageFormat::Png).map_err(|e| ExportError::Png(e.to_string()))?;
    Ok(out.into_inner())
}

pub const CUT_LIST_HEADER: &str = "class,count,length,notch_1,notch_2,notch_3,notch_4,depth";

/// Columns: class, count, length, notch_1..notch_4 (blank when unused),
/// depth.
pub fn cut_list_csv(classes: &[CutClass]) -> Result<String, ExportError> {
    let mut out = String::from(CUT_LIST_HEADER);
    out.push('\n');
    for c in classes {
        if c.notches.len() > 4 {
            return Err(ExportError::TooManyNotches { class: c.class, count: c.notches.len() });
        }
        let notches: Vec<String> = (0..4).map(|i| c.notches.get(i).map(|v| fmt6(*v)).unwrap_or_default()).collect();
        let _ = writeln!(out, "{},{},{},{},{}", c.class, c.count, fmt6(c.length), notches.join(","), fmt6(c.depth));
    }
    Ok(out)
}
