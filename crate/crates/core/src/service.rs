//! Stateless JSON HTTP API. Every handler is a pure function of its request
//! body; heavy work runs on the blocking pool.
//!
//! Status codes: 400 malformed JSON, 422 schema or formula errors, 409 when
//! the computation itself fails, 413 over the size limits. Error bodies are
//! `{code, message, location}`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::net::SocketAddr;

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::{Json, Router};
use base64::Engine;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tower_http::cors::CorsLayer;

use crate::cmap::{map_curve, ComplexMap};
use crate::curves::{sample, CurveDef, PlaneCurve, DEFAULT_SAMPLES_PER_TURN};
use crate::export::{self, SolidSpec, StitchSpec, SvgStyle};
use crate::expr::{parse, pretty_print};
use crate::frame::{cut_list, FrameSpec};
use crate::solids::{build_solid, elevate, enumerate_platonic, unfold_net};
use crate::stitch::{circle_stitch, multiplier_stitch, two_rail_stitch};
use crate::surfaces::{
    polygonize, raster_render, revolve_radial, Camera, ImplicitSurface, ParametricSurfaceDef, ViewAxis,
    DEFAULT_RESOLUTION,
};

pub const DEFAULT_PORT: u16 = 8787;
pub const MAX_SAMPLES: usize = 100_000;
pub const MAX_RESOLUTION: usize = 256;
pub const MAX_IMAGE_SIDE: usize = 2048;
/// Struts in one frame request.
pub const MAX_STRUTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: String,
    pub message: String,
    pub location: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: impl Into<String>, message: impl Into<String>) -> Self {
        ApiError { status, code: code.into(), message: message.into(), location: Value::Null }
    }

    fn at(mut self, location: Value) -> Self {
        self.location = location;
        self
    }

    fn limit(what: &str, got: usize, max: usize) -> Self {
        Self::new(StatusCode::PAYLOAD_TOO_LARGE, "limit", format!("{what} {got} exceeds the limit of {max}"))
            .at(json!({ "field": what }))
    }

    /// A failed computation; the code is `module.variant`.
    fn compute<E: Debug + std::fmt::Display>(module: &str, e: E) -> Self {
        Self::new(StatusCode::CONFLICT, format!("{module}.{}", variant_code(&e)), e.to_string())
    }

    /// A body that parsed but does not describe a valid input.
    fn invalid<E: Debug + std::fmt::Display>(module: &str, e: E) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, format!("{module}.{}", variant_code(&e)), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

/// `EmptyZeroSet { .. }` becomes `empty_zero_set`.
fn variant_code<E: Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    let head: String = dbg.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in head.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

type ApiResult = Result<Value, ApiError>;

/// Decodes a request body; syntax errors are 400, schema errors 422 with
/// the JSON path of the offending field.
pub fn decode<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let malformed = |e: serde_json::Error| {
        ApiError::new(StatusCode::BAD_REQUEST, "malformed_json", e.to_string())
            .at(json!({ "line": e.line(), "column": e.column() }))
    };
    let de = &mut serde_json::Deserializer::from_slice(body);
    let value = serde_path_to_error::deserialize(&mut *de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "schema", inner.to_string()).at(json!({ "path": path }))
            }
            _ => malformed(inner),
        }
    })?;
    de.end().map_err(malformed)?;
    Ok(value)
}

/// Adds a SHA-256 `hash` of the canonical payload JSON.
fn with_hash(mut payload: Value) -> Value {
    let digest = Sha256::digest(serde_json::to_vec(&payload).expect("values serialize"));
    if let Value::Object(map) = &mut payload {
        map.insert("hash".into(), Value::String(hex::encode(digest)));
    }
    payload
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParseRequest {
    pub formula: String,
}

pub fn parse_formula(req: ParseRequest) -> ApiResult {
    match parse(&req.formula) {
        Ok(e) => Ok(json!({
            "ok": true,
            "variables": e.free_variables(),
            "normalized": pretty_print(&e),
            "size": e.size(),
        })),
        Err(err) => Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, format!("parse.{}", variant_code(&err.kind)), err.to_string())
            .at(json!({ "offset": err.offset }))),
    }
}

/// A curve entry: definition plus optional sample count (`n` is accepted
/// as an alias).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveBody {
    pub def: CurveDef,
    #[serde(default, alias = "n")]
    pub samples: Option<usize>,
}

impl CurveBody {
    fn sample(&self) -> Result<PlaneCurve, ApiError> {
        let n = self.samples.unwrap_or(DEFAULT_SAMPLES_PER_TURN);
        if n > MAX_SAMPLES {
            return Err(ApiError::limit("samples", n, MAX_SAMPLES));
        }
        let def = self.def.clone().validated().map_err(|e| ApiError::invalid("curve", e))?;
        sample(&def, n).map_err(|e| ApiError::compute("curve", e))
    }
}

fn curve_payload(c: &PlaneCurve, style: &SvgStyle) -> ApiResult {
    let svg = export::curve_svg(c, style).map_err(|e| ApiError::compute("export", e))?;
    Ok(with_hash(json!({ "points": c.points, "closed": c.closed, "svg": svg })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRequest {
    #[serde(flatten)]
    pub curve: CurveBody,
    #[serde(default)]
    pub svg: SvgStyle,
}

pub fn curve(req: CurveRequest) -> ApiResult {
    curve_payload(&req.curve.sample()?, &req.svg)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRequest {
    pub map: ComplexMap,
    pub source: CurveBody,
    #[serde(default)]
    pub svg: SvgStyle,
}

pub fn map(req: MapRequest) -> ApiResult {
    req.map.validate().map_err(|e| ApiError::invalid("map", e))?;
    let base = req.source.sample()?;
    let image = map_curve(&req.map, &base).map_err(|e| ApiError::compute("map", e))?;
    curve_payload(&image, &req.svg)
}

fn check_surface(s: &ImplicitSurface) -> Result<(), ApiError> {
    s.validate().map_err(|e| ApiError::invalid("surface", e))
}

fn default_side() -> usize {
    512
}
fn default_view() -> ViewAxis {
    ViewAxis::PosZ
}
fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RasterRequest {
    pub surface: ImplicitSurface,
    #[serde(default = "default_side")]
    pub width: usize,
    #[serde(default = "default_side")]
    pub height: usize,
    #[serde(default = "default_view")]
    pub view: ViewAxis,
}

pub fn surface_raster(req: RasterRequest) -> ApiResult {
    for (what, v) in [("width", req.width), ("height", req.height)] {
        if v > MAX_IMAGE_SIDE {
            return Err(ApiError::limit(what, v, MAX_IMAGE_SIDE));
        }
    }
    check_surface(&req.surface)?;
    let cam = Camera { axis: req.view, width: req.width, height: req.height };
    let img = raster_render(&req.surface, &cam).map_err(|e| ApiError::compute("surface", e))?;
    let png = export::to_png(&img).map_err(|e| ApiError::compute("export", e))?;
    Ok(with_hash(json!({
        "width": img.width,
        "height": img.height,
        "png": base64::engine::general_purpose::STANDARD.encode(png),
    })))
}

/// Exactly one of `surface` (implicit) or `radial`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshRequest {
    #[serde(default)]
    pub surface: Option<ImplicitSurface>,
    #[serde(default)]
    pub radial: Option<ParametricSurfaceDef>,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

pub fn surface_mesh(req: MeshRequest) -> ApiResult {
    if req.resolution > MAX_RESOLUTION {
        return Err(ApiError::limit("resolution", req.resolution, MAX_RESOLUTION));
    }
    let (mesh, skipped) = match (&req.surface, &req.radial) {
        (Some(s), None) => {
            check_surface(s)?;
            let p = polygonize(s, req.resolution).map_err(|e| ApiError::compute("surface", e))?;
            (p.mesh, p.skipped_cells)
        }
        (None, Some(r)) => {
            r.validate().map_err(|e| ApiError::invalid("surface", e))?;
            let m = revolve_radial(r, 2 * req.resolution, req.resolution).map_err(|e| ApiError::compute("surface", e))?;
            (m, 0)
        }
        _ => {
            return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "schema", "give exactly one of surface or radial"))
        }
    };
    let obj = export::to_obj(&mesh).map_err(|e| ApiError::compute("export", e))?;
    Ok(with_hash(json!({
        "vertices": mesh.vertices.len(),
        "triangles": mesh.triangles.len(),
        "skipped_cells": skipped,
        "obj": obj,
    })))
}

/// A stitch entry; two-rail patterns name their rails in `curves`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StitchRequest {
    pub stitch: StitchSpec,
    #[serde(default)]
    pub curves: BTreeMap<String, CurveBody>,
    #[serde(default)]
    pub svg: SvgStyle,
}

pub fn stitch(req: StitchRequest) -> ApiResult {
    let rail = |name: &str| -> Result<PlaneCurve, ApiError> {
        req.curves
            .get(name)
            .ok_or_else(|| {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "schema", format!("rail {name:?} is not in curves"))
                    .at(json!({ "path": format!("curves.{name}") }))
            })?
            .sample()
    };
    let pattern = match &req.stitch {
        StitchSpec::TwoRail { rail_a, rail_b, n, reversed } => {
            if *n > MAX_SAMPLES {
                return Err(ApiError::limit("n", *n, MAX_SAMPLES));
            }
            two_rail_stitch(&rail(rail_a)?, &rail(rail_b)?, *n, *reversed)
        }
        StitchSpec::Circle { pins, step, radius } => {
            if *pins > MAX_SAMPLES {
                return Err(ApiError::limit("pins", *pins, MAX_SAMPLES));
            }
            circle_stitch(*pins, *step, *radius)
        }
        StitchSpec::Multiplier { pins, factor, radius } => {
            if *pins > MAX_SAMPLES {
                return Err(ApiError::limit("pins", *pins, MAX_SAMPLES));
            }
            multiplier_stitch(*pins, *factor, *radius)
        }
    }
    .map_err(|e| ApiError::compute("stitch", e))?;
    let svg = export::stitch_svg(&pattern, &req.svg).map_err(|e| ApiError::compute("export", e))?;
    Ok(with_hash(json!({ "pins": pattern.pins, "chords": pattern.chords, "rails": pattern.rails, "svg": svg })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidRequest {
    #[serde(default)]
    pub enumerate: bool,
    #[serde(default)]
    pub solid: Option<SolidSpec>,
    #[serde(default)]
    pub svg: SvgStyle,
}

pub fn solid(req: SolidRequest) -> ApiResult {
    if req.enumerate {
        let pairs: Vec<Value> = enumerate_platonic()
            .into_iter()
            .map(|s| json!({ "p": s.p, "q": s.q, "name": s.name() }))
            .collect();
        return Ok(with_hash(json!({ "pairs": pairs })));
    }
    let spec = req.solid.ok_or_else(|| {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "schema", "give enumerate: true or a solid")
    })?;
    let mut s = build_solid(spec.schlafli).map_err(|e| ApiError::compute("solid", e))?;
    if spec.elevate {
        s = elevate(&s).map_err(|e| ApiError::compute("solid", e))?;
    }
    let obj = export::to_obj(&s.mesh).map_err(|e| ApiError::compute("export", e))?;
    let mut payload = json!({
        "vertices": s.vertex_count(),
        "edges": s.edges().len(),
        "faces": s.face_count(),
        "obj": obj,
    });
    if let Some(sp) = &spec.net {
        let mut net = unfold_net(&s, sp).map_err(|e| ApiError::compute("solid", e))?;
        if spec.tabs {
            net = net.with_tabs();
        }
        let svg = export::net_svg(&net, &req.svg).map_err(|e| ApiError::compute("export", e))?;
        payload["net"] = json!({
            "faces": net.faces.len(),
            "folds": net.folds.len(),
            "overlap": net.overlap,
            "svg": svg,
        });
    }
    Ok(with_hash(payload))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameRequest {
    pub frame: FrameSpec,
}

pub fn frame(req: FrameRequest) -> ApiResult {
    let struts = match req.frame {
        FrameSpec::Dome { rings, segments, .. } => rings.saturating_mul(segments),
        FrameSpec::Bridge { n, .. } => n.saturating_mul(2).saturating_add(2),
    };
    if struts > MAX_STRUTS {
        return Err(ApiError::limit("struts", struts, MAX_STRUTS));
    }
    let layout = req.frame.build().map_err(|e| ApiError::compute("frame", e))?;
    let classes = cut_list(&layout).map_err(|e| ApiError::compute("frame", e))?;
    let csv = export::cut_list_csv(&classes).map_err(|e| ApiError::compute("export", e))?;
    let obj = export::to_obj(&layout.to_mesh()).map_err(|e| ApiError::compute("export", e))?;
    Ok(with_hash(json!({
        "residual": layout.residual(),
        "layout": layout,
        "cut_list": classes,
        "csv": csv,
        "obj": obj,
    })))
}

/// Wraps a pure handler: decode, run on the blocking pool, encode.
async fn endpoint<T, F>(body: Bytes, handler: F) -> Response
where
    T: DeserializeOwned + Send + 'static,
    F: FnOnce(T) -> ApiResult + Send + 'static,
{
    let req = match decode::<T>(&body) {
        Ok(r) => r,
        Err(e) => return e.into_response(),
    };
    match tokio::task::spawn_blocking(move || handler(req)).await {
        Ok(Ok(v)) => (StatusCode::OK, Json(v)).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(e) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()).into_response(),
    }
}

pub fn router() -> Router {
    Router::new()
        .route("/api/parse", post(|b: Bytes| endpoint(b, parse_formula)))
        .route("/api/curve", post(|b: Bytes| endpoint(b, curve)))
        .route("/api/map", post(|b: Bytes| endpoint(b, map)))
        .route("/api/surface/raster", post(|b: Bytes| endpoint(b, surface_raster)))
        .route("/api/surface/mesh", post(|b: Bytes| endpoint(b, surface_mesh)))
        .route("/api/stitch", post(|b: Bytes| endpoint(b, stitch)))
        .route("/api/solid", post(|b: Bytes| endpoint(b, solid)))
        .route("/api/frame", post(|b: Bytes| endpoint(b, frame)))
        .layer(CorsLayer::permissive())
}

/// Serves on an already bound listener until the process ends.
pub async fn serve_on(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    serve_on(listener).await
}
