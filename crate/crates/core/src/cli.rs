//! Command-line front end shared by the `ornata` binary. [`run`] returns the
//! process exit code: 0 on success, 2 on usage errors, 1 when a computation
//! fails. Outputs are computed in full before any file is written, and each
//! file is written to a temporary sibling and renamed into place.

use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cmap::{map_curve, ComplexMap};
use crate::curves::{closing_turns, derivative_curve, make_hypocycloid, sample, CurveDef};
use crate::export::{self, load_design, Entry, SvgStyle};
use crate::expr::{parse, EvalContext};
use crate::frame::{cut_list, leonardo_bridge, leonardo_dome, preset_span, StrutDims, PRESET_RADIUS_RATIO};
use crate::solids::{build_solid, elevate, enumerate_platonic, polygon_tiling, unfold_net, SchlafliPair, Spanning};
use crate::stitch::{circle_stitch, multiplier_stitch, two_rail_stitch};
use crate::surfaces::{polygonize, raster_render, revolve_radial, Bounds, Camera, ImplicitSurface, ParametricSurfaceDef, ViewAxis};

#[derive(Parser)]
#[command(name = "ornata", version, about = "Mathematical ornament toolkit", arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a polar, parametric or hypocycloid curve to SVG.
    Curve(CurveArgs),
    /// Map a curve through a complex function to SVG.
    Map(MapArgs),
    /// Polygonize (OBJ) or render (PNG) an implicit or radial surface.
    Surface(SurfaceArgs),
    /// Curve-stitching template to SVG.
    Stitch(StitchArgs),
    /// Platonic solids: enumeration, meshes, nets and tilings.
    Solid(SolidArgs),
    /// Leonardo dome or bridge: cut list, OBJ and layout JSON.
    Frame(FrameArgs),
    /// Render every entry (or one) of a design document.
    Render(RenderArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Args)]
struct CurveInput {
    /// Polar radius r(t).
    #[arg(long)]
    polar: Option<String>,
    /// Parametric x(t); needs --y.
    #[arg(long)]
    x: Option<String>,
    /// Parametric y(t); needs --x.
    #[arg(long)]
    y: Option<String>,
    /// Hypocycloid "a,b,c", traced until it closes.
    #[arg(long)]
    hypocycloid: Option<String>,
    /// Parameter range "t0:t1"; accepts forms like 2pi, pi/2, -pi.
    #[arg(long, default_value = "0:2pi", allow_hyphen_values = true)]
    range: String,
    /// Number of sample intervals (points = n + 1).
    #[arg(long, default_value_t = 720)]
    n: usize,
    /// Parameter variable name.
    #[arg(long, default_value = "t")]
    param: String,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    input: CurveInput,
    /// Draw the derivative curve (hodograph) instead.
    #[arg(long)]
    hodograph: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    input: CurveInput,
    /// Comma-separated maps applied left to right: "exp", "recip:ALPHA".
    #[arg(long)]
    map: String,
    /// Also draw the source curve.
    #[arg(long)]
    with_source: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Implicit f(x, y, z); the surface is f = 0.
    #[arg(long, conflicts_with = "rho")]
    f: Option<String>,
    /// Radial rho(theta, psi) for a sphere-like surface.
    #[arg(long)]
    rho: Option<String>,
    /// "lo:hi" for a cube or "x0:x1,y0:y1,z0:z1".
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    bounds: String,
    #[arg(long, default_value_t = crate::surfaces::DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Write the polygonized mesh as OBJ.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Write a ray-marched render as PNG.
    #[arg(long)]
    render: Option<PathBuf>,
    #[arg(long, default_value = "+z", allow_hyphen_values = true)]
    view: String,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 512)]
    size: usize,
}

#[derive(Args)]
struct StitchArgs {
    /// Perpendicular unit rails with N pins each (the parabola pattern).
    #[arg(long)]
    axes: Option<usize>,
    /// N pins on a circle, chord k to k + step.
    #[arg(long)]
    circle: Option<usize>,
    #[arg(long)]
    step: Option<usize>,
    /// N pins on a circle, chord k to factor * k.
    #[arg(long)]
    multiplier: Option<usize>,
    #[arg(long)]
    factor: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Take the pattern from a design document entry.
    #[arg(long, requires = "entry")]
    doc: Option<PathBuf>,
    #[arg(long)]
    entry: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolidArgs {
    /// Print the Platonic Schläfli pairs.
    #[arg(long)]
    enumerate: bool,
    /// "p,q", e.g. 4,3.
    #[arg(long)]
    schlafli: Option<String>,
    /// tetrahedron, cube, octahedron, dodecahedron or icosahedron.
    #[arg(long)]
    name: Option<String>,
    /// Raise a pyramid of equilateral triangles on every face.
    #[arg(long)]
    elevate: bool,
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Write the unfolded net as SVG.
    #[arg(long)]
    net: Option<PathBuf>,
    /// Net spanning tree: bfs, cross or dress.
    #[arg(long)]
    spanning: Option<String>,
    /// Add glue tabs to the net.
    #[arg(long)]
    tabs: bool,
    /// Regular tiling by p-gons (3, 4 or 6) to SVG; needs --out.
    #[arg(long, requires = "out")]
    tiling: Option<u32>,
    #[arg(long, default_value_t = 2)]
    rings: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameKindArg {
    Dome,
    Bridge,
}

#[derive(Args)]
struct FrameArgs {
    #[arg(long, value_enum)]
    kind: FrameKindArg,
    /// Dome rings.
    #[arg(long, default_value_t = 1)]
    rings: usize,
    /// Dome rotational order.
    #[arg(long, default_value_t = 8)]
    segments: usize,
    /// Dome crown sphere radius (preset: 4 strut lengths).
    #[arg(long)]
    radius: Option<f64>,
    /// Bridge rows.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Bridge span between the outer spreaders.
    #[arg(long)]
    span: Option<f64>,
    #[arg(long, default_value_t = StrutDims::default().length)]
    length: f64,
    #[arg(long, default_value_t = StrutDims::default().width)]
    width: f64,
    #[arg(long, default_value_t = StrutDims::default().thickness)]
    thickness: f64,
    /// Cut list as CSV.
    #[arg(long)]
    cut_list: Option<PathBuf>,
    /// One box per strut as OBJ.
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Solved layout as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    doc: PathBuf,
    /// Only this entry.
    #[arg(long)]
    entry: Option<String>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = crate::service::DEFAULT_PORT)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn compute(e: impl ToString) -> Failure {
    Failure::Compute(e.to_string())
}

type Outputs = Vec<(PathBuf, Vec<u8>)>;

/// Parses numbers such as `3`, `2pi`, `-pi`, `pi/2` or `2*pi/3`.
pub fn parse_number(text: &str) -> Result<f64, String> {
    let t = text.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    if let Some(coef) = t.strip_suffix("pi") {
        let c = match coef {
            "" => Some(1.0),
            "-" => Some(-1.0),
            c => c.parse::<f64>().ok(),
        };
        if let Some(c) = c {
            return Ok(c * std::f64::consts::PI);
        }
    }
    let e = parse(t).map_err(|e| format!("bad number {text:?}: {e}"))?;
    EvalContext::new().eval(&e).map_err(|e| format!("bad number {text:?}: {e}"))
}

fn parse_range(text: &str) -> Result<[f64; 2], Failure> {
    let (a, b) = text.split_once(':').ok_or_else(|| usage(format!("range {text:?} must look like t0:t1")))?;
    Ok([parse_number(a).map_err(usage)?, parse_number(b).map_err(usage)?])
}

fn parse_list(text: &str, len: usize) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = text.split(',').map(parse_number).collect::<Result<_, _>>().map_err(usage)?;
    if v.len() != len {
        return Err(usage(format!("{text:?} must have {len} comma-separated values")));
    }
    Ok(v)
}

fn formula(text: &str) -> Result<crate::expr::Expr, Failure> {
    parse(text).map_err(|e| usage(format!("{text:?}: {e}")))
}

fn curve_def(input: &CurveInput) -> Result<CurveDef, Failure> {
    let [t0, t1] = parse_range(&input.range)?;
    let def = match (&input.polar, &input.x, &input.y, &input.hypocycloid) {
        (Some(r), None, None, None) => CurveDef::polar(formula(r)?, t0, t1),
        (None, Some(x), Some(y), None) => CurveDef::parametric(formula(x)?, formula(y)?, t0, t1),
        (None, None, None, Some(h)) => {
            let v = parse_list(h, 3)?;
            let turns = closing_turns(v[0], v[1], 1000)
                .ok_or_else(|| compute(format!("hypocycloid a={} b={} does not close within 1000 turns", v[0], v[1])))?;
            return make_hypocycloid(v[0], v[1], v[2], turns).map_err(compute);
        }
        _ => return Err(usage("give exactly one of --polar, --x with --y, or --hypocycloid")),
    };
    def.and_then(|d| d.with_param(&input.param)).map_err(compute)
}

fn parse_maps(text: &str) -> Result<ComplexMap, Failure> {
    let mut out: Option<ComplexMap> = None;
    for part in text.split(',') {
        let m = match part.trim() {
            "exp" => ComplexMap::Exp {},
            p => match p.strip_prefix("recip:") {
                Some(a) => ComplexMap::recip_power(parse_number(a).map_err(usage)?).map_err(compute)?,
                None => return Err(usage(format!("unknown map {p:?}; use exp or recip:ALPHA"))),
            },
        };
        out = Some(match out {
            None => m,
            Some(prev) => prev.then(m),
        });
    }
    out.ok_or_else(|| usage("empty --map"))
}

fn parse_bounds(text: &str) -> Result<Bounds, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    let b = match parts.len() {
        1 => {
            let r = parse_range(parts[0])?;
            Bounds([r; 3])
        }
        3 => Bounds([parse_range(parts[0])?, parse_range(parts[1])?, parse_range(parts[2])?]),
        _ => return Err(usage(format!("bounds {text:?} must be lo:hi or x0:x1,y0:y1,z0:z1"))),
    };
    b.validate().map_err(|e| usage(e.to_string()))?;
    Ok(b)
}

fn parse_view(text: &str) -> Result<ViewAxis, Failure> {
    serde_json::from_value(serde_json::Value::String(text.to_string()))
        .map_err(|_| usage(format!("view {text:?} must be one of +x -x +y -y +z -z")))
}

fn schlafli(args: &SolidArgs) -> Result<SchlafliPair, Failure> {
    match (&args.schlafli, &args.name) {
        (Some(s), None) => {
            let v = parse_list(s, 2)?;
            Ok(SchlafliPair::new(v[0] as u32, v[1] as u32))
        }
        (None, Some(n)) => SchlafliPair::from_name(n).ok_or_else(|| usage(format!("unknown solid {n:?}"))),
        _ => Err(usage("give exactly one of --schlafli or --name")),
    }
}

fn curve_cmd(a: &CurveArgs) -> Result<Outputs, Failure> {
    let mut def = curve_def(&a.input)?;
    if a.hodograph {
        def = derivative_curve(&def).map_err(compute)?;
    }
    let c = sample(&def, a.input.n).map_err(compute)?;
    let svg = export::curve_svg(&c, &SvgStyle::default()).map_err(compute)?;
    Ok(vec![(a.out.clone(), svg.into_bytes())])
}

fn map_cmd(a: &MapArgs) -> Result<Outputs, Failure> {
    let def = curve_def(&a.input)?;
    let m = parse_maps(&a.map)?;
    let c = sample(&def, a.input.n).map_err(compute)?;
    let image = map_curve(&m, &c).map_err(compute)?;
    let curves = if a.with_source { vec![c, image] } else { vec![image] };
    let svg = export::curves_svg(&curves, &SvgStyle::default()).map_err(compute)?;
    Ok(vec![(a.out.clone(), svg.into_bytes())])
}

fn surface_cmd(a: &SurfaceArgs) -> Result<Outputs, Failure> {
    if a.mesh.is_none() && a.render.is_none() {
        return Err(usage("give --mesh and/or --render"));
    }
    let mut out = Vec::new();
    match (&a.f, &a.rho) {
        (Some(f), None) => {
            let s = ImplicitSurface::new(formula(f)?, parse_bounds(&a.bounds)?).map_err(compute)?;
            if let Some(p) = &a.mesh {
                let m = polygonize(&s, a.resolution).map_err(compute)?;
                out.push((p.clone(), export::to_obj(&m.mesh).map_err(compute)?.into_bytes()));
            }
            if let Some(p) = &a.render {
                let cam = Camera { axis: parse_view(&a.view)?, width: a.size, height: a.size };
                let img = raster_render(&s, &cam).map_err(compute)?;
                out.push((p.clone(), export::to_png(&img).map_err(compute)?));
            }
        }
        (None, Some(rho)) => {
            if a.render.is_some() {
                return Err(usage("--render needs an implicit --f surface"));
            }
            let def = ParametricSurfaceDef::sphere_like(formula(rho)?);
            let m = revolve_radial(&def, 2 * a.resolution, a.resolution).map_err(compute)?;
            out.push((a.mesh.clone().expect("checked above"), export::to_obj(&m).map_err(compute)?.into_bytes()));
        }
        _ => return Err(usage("give exactly one of --f or --rho")),
    }
    Ok(out)
}

fn stitch_cmd(a: &StitchArgs) -> Result<Outputs, Failure> {
    let pattern = match (a.axes, a.circle, a.multiplier, &a.doc) {
        (Some(n), None, None, None) => {
            let rail = |b: [f64; 2]| crate::curves::PlaneCurve::segment([0.0, 0.0], b, n.max(2) - 1).map_err(compute);
            two_rail_stitch(&rail([1.0, 0.0])?, &rail([0.0, 1.0])?, n, true).map_err(compute)?
        }
        (None, Some(pins), None, None) => {
            circle_stitch(pins, a.step.ok_or_else(|| usage("--circle needs --step"))?, a.radius).map_err(compute)?
        }
        (None, None, Some(pins), None) => {
            multiplier_stitch(pins, a.factor.ok_or_else(|| usage("--multiplier needs --factor"))?, a.radius)
                .map_err(compute)?
        }
        (None, None, None, Some(doc)) => {
            let d = read_doc(doc)?;
            d.stitch(a.entry.as_deref().unwrap_or_default()).map_err(compute)?
        }
        _ => return Err(usage("give exactly one of --axes, --circle, --multiplier or --doc")),
    };
    let svg = export::stitch_svg(&pattern, &SvgStyle::default()).map_err(compute)?;
    Ok(vec![(a.out.clone(), svg.into_bytes())])
}

fn solid_cmd(a: &SolidArgs, stdout: &mut dyn Write) -> Result<Outputs, Failure> {
    if a.enumerate {
        for s in enumerate_platonic() {
            let _ = writeln!(stdout, "{{{},{}}} {}", s.p, s.q, s.name().unwrap_or(""));
        }
        return Ok(Vec::new());
    }
    if let Some(p) = a.tiling {
        let tiles = polygon_tiling(p, a.rings).map_err(compute)?;
        let svg = export::tiling_svg(&tiles, &SvgStyle::default()).map_err(compute)?;
        return Ok(vec![(a.out.clone().expect("required by clap"), svg.into_bytes())]);
    }
    let pair = schlafli(a)?;
    if a.obj.is_none() && a.net.is_none() {
        return Err(usage("give --obj and/or --net"));
    }
    let mut solid = build_solid(pair).map_err(compute)?;
    if a.elevate {
        solid = elevate(&solid).map_err(compute)?;
    }
    let mut out = Vec::new();
    if let Some(p) = &a.obj {
        out.push((p.clone(), export::to_obj(&solid.mesh).map_err(compute)?.into_bytes()));
    }
    if let Some(p) = &a.net {
        let spanning = match &a.spanning {
            Some(name) => Spanning::preset(name).ok_or_else(|| usage(format!("unknown spanning tree {name:?}")))?,
            None if a.elevate => Spanning::BreadthFirst { root: 0 },
            None => Spanning::default_for(pair),
        };
        let mut net = unfold_net(&solid, &spanning).map_err(compute)?;
        if a.tabs {
            net = net.with_tabs();
        }
        out.push((p.clone(), export::net_svg(&net, &SvgStyle::default()).map_err(compute)?.into_bytes()));
    }
    Ok(out)
}

fn frame_cmd(a: &FrameArgs) -> Result<Outputs, Failure> {
    let dims = StrutDims { length: a.length, width: a.width, thickness: a.thickness };
    let layout = match a.kind {
        FrameKindArg::Dome => leonardo_dome(a.rings, a.segments, dims, a.radius.unwrap_or(PRESET_RADIUS_RATIO * a.length)),
        FrameKindArg::Bridge => leonardo_bridge(a.n, dims, a.span.unwrap_or_else(|| preset_span(a.n, dims))),
    }
    .map_err(compute)?;
    let mut out = Vec::new();
    if let Some(p) = &a.cut_list {
        let classes = cut_list(&layout).map_err(compute)?;
        out.push((p.clone(), export::cut_list_csv(&classes).map_err(compute)?.into_bytes()));
    }
    if let Some(p) = &a.obj {
        out.push((p.clone(), export::to_obj(&layout.to_mesh()).map_err(compute)?.into_bytes()));
    }
    if let Some(p) = &a.json {
        let mut s = serde_json::to_string_pretty(&layout).map_err(compute)?;
        s.push('\n');
        out.push((p.clone(), s.into_bytes()));
    }
    if out.is_empty() {
        return Err(usage("give at least one of --cut-list, --obj or --json"));
    }
    Ok(out)
}

fn read_doc(path: &Path) -> Result<export::DesignDoc, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| compute(format!("{}: {e}", path.display())))?;
    load_design(&text).map_err(compute)
}

/// Files produced for one design document entry, named after it.
pub fn render_entry(doc: &export::DesignDoc, name: &str) -> Result<Vec<(String, Vec<u8>)>, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let settings = &doc.render;
    let entry = doc.entries.get(name).ok_or_else(|| format!("no entry named {name:?}"))?;
    let mut out = Vec::new();
    match entry {
        Entry::Curve { .. } | Entry::Map { .. } => {
            let c = doc.curve(name).map_err(|x| e(&x))?;
            out.push((format!("{name}.svg"), export::curve_svg(&c, &settings.svg).map_err(|x| e(&x))?.into_bytes()));
        }
        Entry::Surface { .. } | Entry::Combine { .. } => {
            let s = doc.surface(name).map_err(|x| e(&x))?;
            let cam = Camera { axis: settings.view, width: settings.width, height: settings.height };
            let img = raster_render(&s, &cam).map_err(|x| e(&x))?;
            out.push((format!("{name}.png"), export::to_png(&img).map_err(|x| e(&x))?));
        }
        Entry::Radial { surface } => {
            let m = revolve_radial(surface, 2 * settings.resolution, settings.resolution).map_err(|x| e(&x))?;
            out.push((format!("{name}.obj"), export::to_obj(&m).map_err(|x| e(&x))?.into_bytes()));
        }
        Entry::Stitch { .. } => {
            let p = doc.stitch(name).map_err(|x| e(&x))?;
            out.push((format!("{name}.svg"), export::stitch_svg(&p, &settings.svg).map_err(|x| e(&x))?.into_bytes()));
        }
        Entry::Solid { solid: spec } => {
            let mut solid = build_solid(spec.schlafli).map_err(|x| e(&x))?;
            if spec.elevate {
                solid = elevate(&solid).map_err(|x| e(&x))?;
            }
            out.push((format!("{name}.obj"), export::to_obj(&solid.mesh).map_err(|x| e(&x))?.into_bytes()));
            if let Some(sp) = &spec.net {
                let mut net = unfold_net(&solid, sp).map_err(|x| e(&x))?;
                if spec.tabs {
                    net = net.with_tabs();
                }
                out.push((format!("{name}.net.svg"), export::net_svg(&net, &settings.svg).map_err(|x| e(&x))?.into_bytes()));
            }
        }
        Entry::Frame { frame } => {
            let layout = frame.build().map_err(|x| e(&x))?;
            let classes = cut_list(&layout).map_err(|x| e(&x))?;
            out.push((format!("{name}.obj"), export::to_obj(&layout.to_mesh()).map_err(|x| e(&x))?.into_bytes()));
            out.push((format!("{name}.csv"), export::cut_list_csv(&classes).map_err(|x| e(&x))?.into_bytes()));
        }
    }
    Ok(out)
}

fn render_cmd(a: &RenderArgs) -> Result<Outputs, Failure> {
    let doc = read_doc(&a.doc)?;
    let names: Vec<String> = match &a.entry {
        Some(n) => vec![n.clone()],
        None => doc.entries.keys().cloned().collect(),
    };
    let mut out = Vec::new();
    for n in names {
        for (file, bytes) in render_entry(&doc, &n).map_err(compute)? {
            out.push((a.out_dir.join(file), bytes));
        }
    }
    Ok(out)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("ORNATA_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists, which is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn serve_cmd(a: &ServeArgs) -> Result<Outputs, Failure> {
    let addr: SocketAddr = format!("{}:{}", a.host, a.port).parse().map_err(|e| usage(format!("bad address: {e}")))?;
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(compute)?;
    rt.block_on(crate::service::serve(addr)).map_err(compute)?;
    Ok(Vec::new())
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    let mut stdout = std::io::stdout();
    let result = match &cli.command {
        Command::Curve(a) => curve_cmd(a),
        Command::Map(a) => map_cmd(a),
        Command::Surface(a) => surface_cmd(a),
        Command::Stitch(a) => stitch_cmd(a),
        Command::Solid(a) => solid_cmd(a, &mut stdout),
        Command::Frame(a) => frame_cmd(a),
        Command::Render(a) => render_cmd(a),
        Command::Serve(a) => serve_cmd(a),
    };
    let outputs = match result {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return 2;
        }
        Err(Failure::Compute(m)) => {
            eprintln!("{m}");
            return 1;
        }
    };
    for (path, bytes) in outputs {
        if let Err(e) = write_atomic(&path, &bytes) {
            eprintln!("{}: {e}", path.display());
            return 1;
        }
    }
    0
}
