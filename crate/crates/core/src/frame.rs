//! Reciprocal frames: Leonardo bridge and dome layouts, contact solving and
//! cut lists.
//!
//! A contact's `gap` is the distance between the two strut centerlines at
//! their closest points. Struts of thickness `t` that touch have gap `t`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{cross, dot, norm, sub, TriMesh, Vec3};

pub const MAX_ITERATIONS: usize = 10_000;
/// Solver convergence, relative to strut length.
pub const SOLVE_TOLERANCE: f64 = 1e-8;
/// Largest gap residual a layout may carry into a cut list, relative to
/// strut length.
pub const GAP_TOLERANCE: f64 = 1e-6;
const DAMPING: f64 = 0.5;
const BRIDGE_SCAN: usize = 256;
const NOTCH_MERGE: f64 = 1e-9;

// where contacts sit on dome struts, as offsets from the middle in units of
// strut length
const DOME_TOP_FAN: f64 = 0.25;
const DOME_REST: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("invalid frame: {0}")]
    Invalid(String),
    #[error("infeasible frame: {reason} (best residual {residual:.3e})")]
    Infeasible { reason: String, residual: f64 },
    #[error("layout is not solved: gap residual {residual:.3e} exceeds {tolerance:.3e}")]
    Unsolved { residual: f64, tolerance: f64 },
}

fn infeasible(reason: impl Into<String>, residual: f64) -> FrameError {
    FrameError::Infeasible { reason: reason.into(), residual }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrutDims {
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
}

impl Default for StrutDims {
    fn default() -> Self {
        StrutDims { length: 1.0, width: 0.08, thickness: 0.04 }
    }
}

impl StrutDims {
    pub fn validate(&self) -> Result<(), FrameError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.length) && ok(self.width) && ok(self.thickness)) {
            return Err(FrameError::Invalid("strut dimensions must be positive and finite".into()));
        }
        if self.thickness >= self.length / 4.0 || self.width >= self.length / 2.0 {
            return Err(FrameError::Invalid("strut cross-section is too large for its length".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strut {
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
    pub start: Vec3,
    pub end: Vec3,
    /// Distances from `start`, ascending.
    pub notches: Vec<f64>,
}

impl Strut {
    fn new(dims: StrutDims, start: Vec3, end: Vec3) -> Self {
        Strut {
            length: dims.length,
            width: dims.width,
            thickness: dims.thickness,
            start,
            end,
            notches: Vec::new(),
        }
    }

    pub fn direction(&self) -> Vec3 {
        let d = sub(self.end, self.start);
        let l = norm(d);
        d.map(|c| c / l)
    }

    pub fn point_at(&self, s: f64) -> Vec3 {
        let u = self.direction();
        [0, 1, 2].map(|i| self.start[i] + s * u[i])
    }

    /// Unit vector across the thickness: world up with the strut axis
    /// removed (or world x for a vertical strut).
    pub fn thickness_axis(&self) -> Vec3 {
        let u = self.direction();
        let up = if u[2].abs() > 1.0 - 1e-9 { [1.0, 0.0, 0.0] } else { [0.0, 0.0, 1.0] };
        let d = dot(up, u);
        let v = [0, 1, 2].map(|i| up[i] - d * u[i]);
        let l = norm(v);
        v.map(|c| c / l)
    }

    /// Box corners: index bits are (along, across width, across thickness).
    pub fn corners(&self) -> [Vec3; 8] {
        let n = self.thickness_axis();
        let w = cross(self.direction(), n);
        std::array::from_fn(|i| {
            let base = if i & 1 == 0 { self.start } else { self.end };
            let sw = if i & 2 == 0 { -0.5 } else { 0.5 } * self.width;
            let st = if i & 4 == 0 { -0.5 } else { 0.5 } * self.thickness;
            [0, 1, 2].map(|a| base[a] + sw * w[a] + st * n[a])
        })
    }

    fn add_notch(&mut self, s: f64) {
        if !self.notches.iter().any(|n| (n - s).abs() < NOTCH_MERGE * self.length) {
            self.notches.push(s);
            self.notches.sort_by(f64::total_cmp);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    Dome,
    Bridge,
}

/// `resting` lies on top of `support` at `point`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contact {
    pub resting: usize,
    pub support: usize,
    pub point: Vec3,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameLayout {
    pub kind: FrameKind,
    pub struts: Vec<Strut>,
    pub contacts: Vec<Contact>,
    /// Rotational order for domes, 2 (one mirror) for bridges.
    pub symmetry: usize,
    /// Struts that stand on the ground.
    pub grounded: Vec<usize>,
}

/// Closest-point parameters in [0, 1] between segments p1-q1 and p2-q2.
pub(crate) fn closest_segment_params(p1: Vec3, q1: Vec3, p2: Vec3, q2: Vec3) -> (f64, f64) {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let (a, e, f) = (dot(d1, d1), dot(d2, d2), dot(d2, r));
    let (b, c) = (dot(d1, d2), dot(d1, r));
    let denom = a * e - b * b;
    let mut s = if denom > 1e-300 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    (s, t)
}

impl FrameLayout {
    /// Largest deviation of a contact gap from touching.
    pub fn residual(&self) -> f64 {
        self.contacts
            .iter()
            .map(|c| {
                let target = 0.5 * (self.struts[c.resting].thickness + self.struts[c.support].thickness);
                (c.gap - target).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Per strut: (number of struts it rests on, number resting on it).
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); self.struts.len()];
        for c in &self.contacts {
            d[c.resting].0 += 1;
            d[c.support].1 += 1;
        }
        d
    }

    /// Every strut rests on something (a strut or the ground) and carries
    /// at least one strut.
    pub fn is_glueless(&self) -> bool {
        self.degrees()
            .iter()
            .enumerate()
            .all(|(i, &(on, under))| (on > 0 || self.grounded.contains(&i)) && under > 0)
    }

    pub fn max_strut_length(&self) -> f64 {
        self.struts.iter().map(|s| s.length).fold(0.0, f64::max)
    }

    /// One closed box per strut.
    pub fn to_mesh(&self) -> TriMesh {
        // faces of the corner cube, counter-clockwise seen from outside
        const QUADS: [[usize; 4]; 6] =
            [[0, 4, 6, 2], [1, 3, 7, 5], [0, 1, 5, 4], [2, 6, 7, 3], [0, 2, 3, 1], [4, 5, 7, 6]];
        let mut mesh = TriMesh::new(Vec::new(), Vec::new());
        for s in &self.struts {
            let c = s.corners();
            let v: Vec<Vec3> = c.to_vec();
            let tris = QUADS.iter().flat_map(|q| [[q[0], q[1], q[2]], [q[0], q[2], q[3]]]).collect();
            let mut b = TriMesh::new(v, tris);
            if b.signed_volume() < 0.0 {
                for t in b.triangles.iter_mut() {
                    t.swap(1, 2);
                }
            }
            mesh.append(&b);
        }
        mesh
    }

    fn connect(&mut self, resting: usize, support: usize) {
        let (a, b) = (&self.struts[resting], &self.struts[support]);
        let (s, t) = closest_segment_params(a.start, a.end, b.start, b.end);
        let pa = a.point_at(s * a.length);
        let pb = b.point_at(t * b.length);
        let point = [0, 1, 2].map(|i| 0.5 * (pa[i] + pb[i]));
        let gap = norm(sub(pa, pb));
        let (la, lb) = (a.length, b.length);
        self.struts[resting].add_notch(s * la);
        self.struts[support].add_notch(t * lb);
        self.contacts.push(Contact { resting, support, point, gap });
    }

    /// Contacts whose resting strut is not above its support.
    fn inverted_contacts(&self) -> usize {
        self.contacts
            .iter()
            .filter(|c| {
                let (a, b) = (&self.struts[c.resting], &self.struts[c.support]);
                let (s, t) = closest_segment_params(a.start, a.end, b.start, b.end);
                let pa = a.point_at(s * a.length);
                let pb = b.point_at(t * b.length);
                dot(sub(pa, pb), b.thickness_axis()) <= 0.0
            })
            .count()
    }
}

struct BridgeProfile {
    /// Row middles and unit directions in the (x, z) plane.
    middles: Vec<[f64; 2]>,
    dirs: Vec<[f64; 2]>,
    /// Spreader centres, one more than rows at each end.
    spreaders: Vec<[f64; 2]>,
}

impl BridgeProfile {
    fn span(&self) -> f64 {
        self.spreaders[self.spreaders.len() - 1][0] - self.spreaders[0][0]
    }
}

/// Turning angle between consecutive rows whose contacts sit `a` either
/// side of the middle, centerlines `t` apart.
fn bridge_turn(a: f64, t: f64) -> f64 {
    2.0 * (2.0 * t / a).atan()
}

/// Smallest contact offset at which `n` rows do not turn past vertical.
fn min_contact_offset(n: usize, t: f64) -> f64 {
    2.0 * t / (PI / (2.0 * (n - 1) as f64)).tan() * (1.0 + 1e-6)
}

fn bridge_profile(n: usize, t: f64, a: f64) -> BridgeProfile {
    let turn = bridge_turn(a, t);
    let dirs: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            let th = turn * ((n - 1) as f64 / 2.0 - k as f64);
            [th.cos(), th.sin()]
        })
        .collect();
    let up = |u: [f64; 2]| [-u[1], u[0]];
    let mut middles = vec![[0.0, 0.0]];
    for k in 0..n - 1 {
        let (m, u0, u1) = (middles[k], dirs[k], dirs[k + 1]);
        let (n0, n1) = (up(u0), up(u1));
        middles.push([0, 1].map(|i| m[i] + t * n0[i] + a * u1[i] + t * n1[i]));
    }
    let mut spreaders = Vec::with_capacity(n + 2);
    for k in 0..n {
        let (m, u, nn) = (middles[k], dirs[k], up(dirs[k]));
        if k == 0 {
            spreaders.push([0, 1].map(|i| m[i] - a * u[i] - t * nn[i]));
        }
        spreaders.push([0, 1].map(|i| m[i] + t * nn[i]));
    }
    let (m, u, nn) = (middles[n - 1], dirs[n - 1], up(dirs[n - 1]));
    spreaders.push([0, 1].map(|i| m[i] + a * u[i] - t * nn[i]));
    BridgeProfile { middles, dirs, spreaders }
}

/// A Leonardo bridge of `n` longitudinal rows woven through `n + 2`
/// transverse spreaders.
///
/// Row k rests on spreaders k and k + 2 and carries spreader k + 1 at its
/// middle, so consecutive rows turn by `2 atan(2t / a)` where `a` is the
/// distance from a row's middle to its end contacts. The solver adjusts `a`
/// until the outer spreaders are `span` apart. The bridge runs along x, is
/// symmetric about x = 0 and its end spreaders lie on the ground (z = 0).
/// Struts 0..n are rows, n..2n+2 spreaders.
pub fn leonardo_bridge(n: usize, dims: StrutDims, span: f64) -> Result<FrameLayout, FrameError> {
    dims.validate()?;
    if n < 3 {
        return Err(FrameError::Invalid(format!("a bridge needs at least 3 rows, got {n}")));
    }
    let (l, t) = (dims.length, dims.thickness);
    if !(span.is_finite() && span > l) {
        return Err(FrameError::Invalid(format!("span {span} must exceed the strut length {l}")));
    }
    let a_min = min_contact_offset(n, t);
    let a_max = l / 2.0;
    if a_min >= a_max {
        return Err(infeasible(format!("{n} rows of thickness {t} turn past vertical"), f64::INFINITY));
    }
    // span(a) need not be monotone once rows curl, so bracket on a grid
    // and take the flattest root (largest a)
    let miss = |a: f64| bridge_profile(n, t, a).span() - span;
    let grid: Vec<f64> = (0..=BRIDGE_SCAN).map(|i| a_max - (a_max - a_min) * i as f64 / BRIDGE_SCAN as f64).collect();
    let misses: Vec<f64> = grid.iter().map(|&a| miss(a)).collect();
    let best = misses.iter().fold(f64::INFINITY, |b, m| b.min(m.abs()));
    let bracket = (0..BRIDGE_SCAN).find(|&i| misses[i] == 0.0 || misses[i].signum() != misses[i + 1].signum());
    let Some(i) = bracket else {
        return Err(infeasible(format!("span {span} is out of reach of {n} rows"), best));
    };
    let (mut hi, mut lo, mut m_hi) = (grid[i], grid[i + 1], misses[i]);
    for _ in 0..MAX_ITERATIONS {
        if m_hi.abs() < SOLVE_TOLERANCE * l || hi - lo < f64::EPSILON * hi {
            break;
        }
        let mid = 0.5 * (hi + lo);
        let m = miss(mid);
        if m.signum() == m_hi.signum() {
            (hi, m_hi) = (mid, m);
        } else {
            lo = mid;
        }
    }
    if m_hi.abs() >= SOLVE_TOLERANCE * l {
        return Err(infeasible(format!("span {span} is out of reach of {n} rows"), m_hi.abs()));
    }
    let p = bridge_profile(n, t, hi);
    let first = p.spreaders[0];
    let last = p.spreaders[n + 1];
    let shift = [-(first[0] + last[0]) / 2.0, t / 2.0 - first[1]];
    let to3 = |q: [f64; 2], y: f64| [q[0] + shift[0], y, q[1] + shift[1]];
    let mut struts = Vec::with_capacity(2 * n + 2);
    for k in 0..n {
        let (m, u) = (p.middles[k], p.dirs[k]);
        let h = l / 2.0;
        struts.push(Strut::new(dims, to3([m[0] - h * u[0], m[1] - h * u[1]], 0.0), to3([m[0] + h * u[0], m[1] + h * u[1]], 0.0)));
    }
    for c in &p.spreaders {
        struts.push(Strut::new(dims, to3(*c, -l / 2.0), to3(*c, l / 2.0)));
    }
    let mut layout = FrameLayout {
        kind: FrameKind::Bridge,
        struts,
        contacts: Vec::new(),
        symmetry: 2,
        grounded: vec![n, 2 * n + 1],
    };
    for k in 0..n {
        layout.connect(k, n + k);
        layout.connect(n + k + 1, k);
        layout.connect(k, n + k + 2);
    }
    check_solved(&layout)?;
    Ok(layout)
}

fn check_solved(layout: &FrameLayout) -> Result<(), FrameError> {
    let r = layout.residual();
    let l = layout.max_strut_length();
    if r >= GAP_TOLERANCE * l {
        return Err(infeasible("contacts do not close", r));
    }
    if layout.inverted_contacts() > 0 {
        return Err(infeasible("the over/under weave inverts", r));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct RingPose {
    /// Horizontal distance of the strut middles from the axis.
    h: f64,
    /// Azimuth of strut 0's middle.
    phi: f64,
    z: f64,
    /// Rise of the strut axis above horizontal.
    tau: f64,
}

impl RingPose {
    fn from_vec(x: &[f64]) -> Self {
        RingPose { h: x[0], phi: x[1], z: x[2], tau: x[3] }
    }

    fn line(&self, k: usize, segments: usize) -> (Vec3, Vec3) {
        let b = self.phi + 2.0 * PI * k as f64 / segments as f64;
        let (s, c) = b.sin_cos();
        let (st, ct) = self.tau.sin_cos();
        ([self.h * c, self.h * s, self.z], [-s * ct, c * ct, st])
    }
}

/// Distance between two lines (unit directions) and the closest-point
/// parameters along each.
fn line_closest(p1: Vec3, u1: Vec3, p2: Vec3, u2: Vec3) -> (f64, f64, f64) {
    let w = sub(p1, p2);
    let b = dot(u1, u2);
    let (d, e) = (dot(u1, w), dot(u2, w));
    let den = 1.0 - b * b;
    let s = (b * e - d) / den;
    let t = (e - b * d) / den;
    let pa = [0, 1, 2].map(|i| p1[i] + s * u1[i]);
    let pb = [0, 1, 2].map(|i| p2[i] + t * u2[i]);
    (norm(sub(pa, pb)), s, t)
}

/// Damped Newton iteration with a central-difference Jacobian. Returns the
/// solution or the best residual seen.
fn damped_solve(mut x: Vec<f64>, f: impl Fn(&[f64]) -> Vec<f64>, tol: f64) -> Result<Vec<f64>, f64> {
    let n = x.len();
    let mut best = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let r = f(&x);
        let size = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !size.is_finite() {
            return Err(best);
        }
        best = best.min(size);
        if size < tol {
            return Ok(x);
        }
        let mut jac = DMatrix::zeros(n, n);
        for j in 0..n {
            let h = 1e-7 * x[j].abs().max(1.0);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (fp, fm) = (f(&xp), f(&xm));
            for i in 0..n {
                jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let Some(step) = jac.lu().solve(&-DVector::from_vec(r)) else {
            return Err(best);
        };
        for j in 0..n {
            x[j] += DAMPING * step[j];
        }
    }
    Err(best)
}

/// A Leonardo dome of nested reciprocal fans.
///
/// Ring 0 crowns the dome on a sphere of the given radius; each further
/// ring lies outside and below the previous one. Within a ring every strut
/// rests on its successor. The low end of each strut also rests on the
/// middle of the matching strut of the next ring out. The solver finds, per
/// ring, the tilt and the radial placement that make every gap equal to the
/// strut thickness. Strut `r * segments + k` is strut k of ring r.
pub fn leonardo_dome(rings: usize, segments: usize, dims: StrutDims, radius: f64) -> Result<FrameLayout, FrameError> {
    dims.validate()?;
    if segments < 4 {
        return Err(FrameError::Invalid(format!("a dome needs at least 4 segments, got {segments}")));
    }
    if rings < 1 {
        return Err(FrameError::Invalid("a dome needs at least one ring".into()));
    }
    let (l, t) = (dims.length, dims.thickness);
    if !(radius.is_finite() && radius > l / 2.0) {
        return Err(FrameError::Invalid(format!("radius {radius} must exceed half the strut length")));
    }
    let s = segments;
    let tol = SOLVE_TOLERANCE * l;
    let fan = |p: &RingPose| {
        let (a, b) = (p.line(0, s), p.line(1, s));
        line_closest(a.0, a.1, b.0, b.1)
    };

    let crown = damped_solve(
        vec![DOME_TOP_FAN * l / (PI / s as f64).tan(), 2.0 * t / l],
        |x| {
            let p = RingPose { h: x[0], phi: 0.0, z: 0.0, tau: x[1] };
            let (g, s1, _) = fan(&p);
            vec![g - t, s1 - DOME_TOP_FAN * l]
        },
        tol,
    )
    .map_err(|best| infeasible("the crown ring does not close", best))?;
    if crown[0] >= radius {
        return Err(infeasible(format!("radius {radius} is too small for the crown ring"), 0.0));
    }
    let mut poses = vec![RingPose {
        h: crown[0],
        phi: 0.0,
        z: (radius * radius - crown[0] * crown[0]).sqrt(),
        tau: crown[1],
    }];
    for r in 1..rings {
        let inner = poses[r - 1];
        let (ti, ui) = inner.line(0, s);
        let rest = [0, 1, 2].map(|i| ti[i] - DOME_REST * l * ui[i]);
        let guess = vec![rest[0].hypot(rest[1]), rest[1].atan2(rest[0]), rest[2] - t, inner.tau];
        let x = damped_solve(
            guess,
            |x| {
                let p = RingPose::from_vec(x);
                let (g, _, _) = fan(&p);
                let (to, uo) = p.line(0, s);
                let (gi, si, so) = line_closest(ti, ui, to, uo);
                vec![g - t, gi - t, si + DOME_REST * l, so]
            },
            tol,
        )
        .map_err(|best| infeasible(format!("ring {r} does not close"), best))?;
        poses.push(RingPose::from_vec(&x));
    }
    for (r, p) in poses.iter().enumerate() {
        let (_, s1, _) = fan(p);
        if s1.abs() > l / 2.0 {
            return Err(infeasible(format!("ring {r} is too wide for its struts"), 0.0));
        }
    }

    let mut struts = Vec::with_capacity(rings * s);
    for p in &poses {
        for k in 0..s {
            let (c, u) = p.line(k, s);
            let h = l / 2.0;
            struts.push(Strut::new(
                dims,
                [0, 1, 2].map(|i| c[i] - h * u[i]),
                [0, 1, 2].map(|i| c[i] + h * u[i]),
            ));
        }
    }
    let mut layout = FrameLayout {
        kind: FrameKind::Dome,
        struts,
        contacts: Vec::new(),
        symmetry: s,
        grounded: ((rings - 1) * s..rings * s).collect(),
    };
    for r in 0..rings {
        for k in 0..s {
            layout.connect(r * s + k, r * s + (k + 1) % s);
            if r + 1 < rings {
                layout.connect(r * s + k, (r + 1) * s + k);
            }
        }
    }
    check_solved(&layout)?;
    Ok(layout)
}

/// Identical cut specs merged, in order of first appearance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutClass {
    pub class: usize,
    pub count: usize,
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
    /// Notch positions from the strut's reference end.
    pub notches: Vec<f64>,
    /// Half-lap depth.
    pub depth: f64,
    pub members: Vec<usize>,
}

fn flipped_notches(s: &Strut) -> Vec<f64> {
    s.notches.iter().rev().map(|p| s.length - p).collect()
}

fn same_notch(a: f64, b: f64) -> bool {
    (a - b).abs() <= NOTCH_MERGE * a.abs().max(1.0)
}

/// The lexicographically smaller orientation; positions within the merge
/// tolerance count as equal so near-palindromes pick a stable side.
fn canonical_notches(s: &Strut) -> Vec<f64> {
    let flipped = flipped_notches(s);
    let smaller = flipped
        .iter()
        .zip(&s.notches)
        .find(|(a, b)| !same_notch(**a, **b))
        .is_some_and(|(a, b)| a < b);
    if smaller { flipped } else { s.notches.clone() }
}

pub fn cut_list(layout: &FrameLayout) -> Result<Vec<CutClass>, FrameError> {
    let tolerance = GAP_TOLERANCE * layout.max_strut_length();
    let residual = layout.residual();
    if !(residual < tolerance) {
        return Err(FrameError::Unsolved { residual, tolerance });
    }
    let same = same_notch;
    let mut classes: Vec<CutClass> = Vec::new();
    for (i, s) in layout.struts.iter().enumerate() {
        let notches = canonical_notches(s);
        let flipped = flipped_notches(s);
        let found = classes.iter_mut().find(|c| {
            let matches = |n: &[f64]| c.notches.len() == n.len() && c.notches.iter().zip(n).all(|(a, b)| same(*a, *b));
            same(c.length, s.length)
                && same(c.width, s.width)
                && same(c.thickness, s.thickness)
                && (matches(&s.notches) || matches(&flipped))
        });
        match found {
            Some(c) => {
                c.count += 1;
                c.members.push(i);
            }
            None => classes.push(CutClass {
                class: classes.len() + 1,
                count: 1,
                length: s.length,
                width: s.width,
                thickness: s.thickness,
                notches,
                depth: s.thickness / 2.0,
                members: vec![i],
            }),
        }
    }
    Ok(classes)
}

/// Dome radius preset, in strut lengths.
pub const PRESET_RADIUS_RATIO: f64 = 4.0;
/// Bridge preset: end contacts this far (in strut lengths) from the middle.
pub const PRESET_CONTACT_OFFSET: f64 = 0.4;

/// The span a bridge has when its end contacts sit at the preset offset.
/// Long bridges that would curl past vertical at that offset use the
/// middle of the feasible range instead.
pub fn preset_span(n: usize, dims: StrutDims) -> f64 {
    let n = n.max(2);
    let a_max = dims.length / 2.0;
    let a = (PRESET_CONTACT_OFFSET * dims.length).max(0.5 * (min_contact_offset(n, dims.thickness) + a_max));
    bridge_profile(n, dims.thickness, a.min(a_max)).span()
}

/// A frame as stored in design documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FrameSpec {
    Dome {
        rings: usize,
        segments: usize,
        #[serde(default)]
        strut: StrutDims,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
    },
    Bridge {
        n: usize,
        #[serde(default)]
        strut: StrutDims,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        span: Option<f64>,
    },
}

impl FrameSpec {
    pub fn build(&self) -> Result<FrameLayout, FrameError> {
        match *self {
            FrameSpec::Dome { rings, segments, strut, radius } => {
                leonardo_dome(rings, segments, strut, radius.unwrap_or(PRESET_RADIUS_RATIO * strut.length))
            }
            FrameSpec::Bridge { n, strut, span } => {
                leonardo_bridge(n, strut, span.unwrap_or_else(|| preset_span(n, strut)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims() -> StrutDims {
        StrutDims::default()
    }

    #[test]
    fn bridge_closes() {
        for n in 3..=8 {
            let span = preset_span(n, dims());
            let b = leonardo_bridge(n, dims(), span).unwrap();
            assert_eq!(b.struts.len(), 2 * n + 2);
            assert_eq!(b.contacts.len(), 3 * n);
            assert!(b.residual() < 1e-6);
            assert!(b.is_glueless());
            let (first, last) = (&b.struts[n], &b.struts[2 * n + 1]);
            assert!((last.start[0] - first.start[0] - span).abs() < 1e-7);
            assert!((first.start[2] - dims().thickness / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bridge_rejects() {
        assert!(matches!(leonardo_bridge(2, dims(), 2.0), Err(FrameError::Invalid(_))));
        assert!(matches!(leonardo_bridge(3, dims(), 0.5), Err(FrameError::Invalid(_))));
        assert!(matches!(leonardo_bridge(3, dims(), 50.0), Err(FrameError::Infeasible { .. })));
    }

    #[test]
    fn crown_only_dome() {
        let d = leonardo_dome(1, 8, dims(), 4.0).unwrap();
        assert_eq!(d.struts.len(), 8);
        assert!(d.residual() < 1e-6);
        assert!(d.is_glueless());
        assert!(d.degrees().iter().all(|&x| x == (1, 1)));
        assert_eq!(cut_list(&d).unwrap().len(), 1);
    }

    #[test]
    fn nested_dome() {
        let d = leonardo_dome(3, 8, dims(), 4.0).unwrap();
        assert_eq!(d.struts.len(), 24);
        assert!(d.residual() < 1e-6, "{}", d.residual());
        assert!(d.is_glueless());
        let deg = d.degrees();
        // middle ring: rests on two, carries two
        assert!(deg[8..16].iter().all(|&x| x == (2, 2)));
        for s in &d.struts[8..16] {
            assert_eq!(s.notches.len(), 4);
        }
    }

    #[test]
    fn one_class_per_dome_ring() {
        for rings in 2..=3 {
            let d = leonardo_dome(rings, 8, dims(), 4.0).unwrap();
            let c = cut_list(&d).unwrap();
            assert_eq!(c.len(), rings, "{c:?}");
            assert!(c.iter().all(|c| c.count == 8));
        }
    }

    #[test]
    fn bridge_classes_and_depth() {
        let b = leonardo_bridge(5, StrutDims { length: 10.0, width: 1.0, thickness: 0.5 }, 20.0).unwrap();
        let c = cut_list(&b).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].count, 5);
        assert_eq!(c[1].count, 7);
        assert!(c.iter().all(|c| c.depth == 0.25));
    }

    #[test]
    fn unsolved_rejected() {
        let mut b = leonardo_bridge(3, dims(), 1.6).unwrap();
        b.contacts[0].gap += 0.01;
        assert!(matches!(cut_list(&b), Err(FrameError::Unsolved { .. })));
    }

    #[test]
    fn boxes_are_closed() {
        let b = leonardo_bridge(3, dims(), 1.6).unwrap();
        let m = b.to_mesh();
        assert_eq!(m.triangles.len(), 12 * b.struts.len());
        m.check().unwrap();
        let l = dims();
        assert!((m.signed_volume() - b.struts.len() as f64 * l.length * l.width * l.thickness).abs() < 1e-9);
    }

    #[test]
    fn segment_params() {
        let (s, t) = closest_segment_params([0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [1.0, -1.0, 1.0], [1.0, 1.0, 1.0]);
        assert!((s - 0.5).abs() < 1e-12 && (t - 0.5).abs() < 1e-12);
        let (s, t) = closest_segment_params([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [3.0, 0.0, 1.0], [3.0, 1.0, 1.0]);
        assert_eq!((s, t), (1.0, 0.0));
    }
}
