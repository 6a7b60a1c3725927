//! Marching cubes with an asymptotic decider on ambiguous faces.
//!
//! Instead of a 256-entry case table, each cube's surface loops are traced
//! from face segments. Every face contributes the segments between its edge
//! crossings, oriented so that the positive side of `F` lies on the left when
//! the face is seen from outside the cube. Ambiguous faces (alternating corner
//! signs) are split by the sign of the bilinear saddle value, which depends
//! only on the face's four corner values, so the two cubes sharing a face
//! always agree and the mesh has no cracks. The traced loops are fanned into
//! triangles whose normals point along the gradient of `F`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Gradient, ImplicitSurface, SurfaceError};
use crate::expr::EvalError;
use crate::mesh::{norm, TriMesh, Vec3, MIN_TRIANGLE_AREA};

/// Bisection steps used to refine each edge crossing.
pub const BISECTION_STEPS: usize = 20;

/// Smallest accepted grid resolution.
pub const MIN_RESOLUTION: usize = 8;

// Cube corner c sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
// Faces list their corners counter-clockwise seen from outside the cube.
const FACES: [[usize; 4]; 6] = [
    [0, 4, 6, 2],
    [1, 3, 7, 5],
    [0, 1, 5, 4],
    [2, 6, 7, 3],
    [0, 2, 3, 1],
    [4, 5, 7, 6],
];

fn corner_offset(c: usize) -> [usize; 3] {
    [c & 1, (c >> 1) & 1, (c >> 2) & 1]
}

#[inline]
fn positive(v: f64) -> bool {
    v > 0.0
}

/// Result of polygonizing a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygonized {
    pub mesh: TriMesh,
    /// Cells skipped because a corner failed to evaluate.
    pub skipped_cells: usize,
}

struct Grid {
    n: usize,
    origin: Vec3,
    step: Vec3,
}

impl Grid {
    fn points_per_axis(&self) -> usize {
        self.n + 1
    }

    fn index(&self, p: [usize; 3]) -> usize {
        let m = self.points_per_axis();
        p[0] + m * (p[1] + m * p[2])
    }

    fn position(&self, p: [usize; 3]) -> Vec3 {
        [0, 1, 2].map(|a| self.origin[a] + p[a] as f64 * self.step[a])
    }
}

fn refine_crossing(surface: &ImplicitSurface, a: Vec3, b: Vec3, fa: f64, fb: f64) -> Vec3 {
    let at = |s: f64| [0, 1, 2].map(|i| a[i] + s * (b[i] - a[i]));
    let (mut lo, mut hi, mut flo, mut fhi) = (0.0, 1.0, fa, fb);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let Ok(fm) = surface.eval(at(mid)) else {
            break;
        };
        if positive(fm) == positive(flo) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    let s = if flo == fhi {
        0.5 * (lo + hi)
    } else {
        lo + (hi - lo) * flo / (flo - fhi)
    };
    // exact zeros at corners land exactly on the grid point, so they weld
    match s.clamp(lo, hi) {
        0.0 => a,
        1.0 => b,
        s => at(s),
    }
}

/// Polygonizes `surface` on a `resolution`³ cell grid over its bounds.
///
/// Cells with a corner that fails to evaluate are skipped and counted.
/// Triangles that collapse (area at most 1e-12, which only happens when `F`
/// is exactly zero at grid corners) are dropped.
pub fn polygonize(surface: &ImplicitSurface, resolution: usize) -> Result<Polygonized, SurfaceError> {
    surface.validate()?;
    if resolution < MIN_RESOLUTION {
        return Err(SurfaceError::Resolution {
            min: MIN_RESOLUTION,
            got: resolution,
        });
    }
    let b = surface.bounds.0;
    let grid = Grid {
        n: resolution,
        origin: [b[0][0], b[1][0], b[2][0]],
        step: [0, 1, 2].map(|a| (b[a][1] - b[a][0]) / resolution as f64),
    };
    let m = grid.points_per_axis();

    let evaluated: Vec<Result<f64, EvalError>> = (0..m * m * m)
        .into_par_iter()
        .map(|lin| {
            let p = [lin % m, (lin / m) % m, lin / (m * m)];
            surface.eval(grid.position(p))
        })
        .collect();
    let first_error = evaluated.iter().find_map(|r| r.as_ref().err().cloned());
    let values: Vec<f64> = evaluated.into_iter().map(|r| r.unwrap_or(f64::NAN)).collect();

    // Crossing edges in deterministic order: point index, then axis.
    let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut crossings: Vec<([usize; 3], usize)> = Vec::new();
    for k in 0..m {
        for j in 0..m {
            for i in 0..m {
                let p = [i, j, k];
                let va = values[grid.index(p)];
                if va.is_nan() {
                    continue;
                }
                for axis in 0..3 {
                    if p[axis] == grid.n {
                        continue;
                    }
                    let mut q = p;
                    q[axis] += 1;
                    let vb = values[grid.index(q)];
                    if !vb.is_nan() && positive(va) != positive(vb) {
                        edge_ids.insert((grid.index(p), axis), crossings.len());
                        crossings.push((p, axis));
                    }
                }
            }
        }
    }

    let raw: Vec<Vec3> = crossings
        .par_iter()
        .map(|&(p, axis)| {
            let mut q = p;
            q[axis] += 1;
            refine_crossing(
                surface,
                grid.position(p),
                grid.position(q),
                values[grid.index(p)],
                values[grid.index(q)],
            )
        })
        .collect();
    // A zero at a grid corner is the crossing of every edge leaving it.
    let mut welded: HashMap<[u64; 3], usize> = HashMap::new();
    let mut vertices: Vec<Vec3> = Vec::new();
    let remap: Vec<usize> = raw
        .iter()
        .map(|v| {
            *welded.entry(v.map(f64::to_bits)).or_insert_with(|| {
                vertices.push(*v);
                vertices.len() - 1
            })
        })
        .collect();

    let n = grid.n;
    let per_slab: Vec<(Vec<[usize; 3]>, usize)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut tris = Vec::new();
            let mut skipped = 0;
            for j in 0..n {
                for i in 0..n {
                    let base = [i, j, k];
                    let corner_point = |c: usize| {
                        let o = corner_offset(c);
                        [base[0] + o[0], base[1] + o[1], base[2] + o[2]]
                    };
                    let v: [f64; 8] = std::array::from_fn(|c| values[grid.index(corner_point(c))]);
                    if v.iter().any(|x| x.is_nan()) {
                        skipped += 1;
                        continue;
                    }
                    let pos_count = v.iter().filter(|x| positive(**x)).count();
                    if pos_count == 0 || pos_count == 8 {
                        continue;
                    }
                    let edge_vertex = |ca: usize, cb: usize| {
                        let (lo, hi) = (ca.min(cb), ca.max(cb));
                        let axis = (hi ^ lo).trailing_zeros() as usize;
                        edge_ids[&(grid.index(corner_point(lo)), axis)]
                    };
                    trace_cube(&v, edge_vertex, |id| remap[id], &mut tris);
                }
            }
            (tris, skipped)
        })
        .collect();

    let skipped_cells = per_slab.iter().map(|(_, s)| s).sum();
    let mut mesh = TriMesh::new(vertices, per_slab.into_iter().flat_map(|(t, _)| t).collect());
    mesh.triangles.retain(|t| {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return false;
        }
        let [a, b, c] = t.map(|i| mesh.vertices[i]);
        let n = crate::mesh::cross(crate::mesh::sub(b, a), crate::mesh::sub(c, a));
        0.5 * norm(n) > MIN_TRIANGLE_AREA
    });

    if mesh.triangles.is_empty() {
        if skipped_cells == n * n * n {
            if let Some(e) = first_error {
                return Err(SurfaceError::EvaluationFailed(e));
            }
        }
        return Err(SurfaceError::EmptyZeroSet { skipped_cells });
    }
    mesh.normals = Some(vertex_normals(surface, &mesh));
    Ok(Polygonized { mesh, skipped_cells })
}

/// Emits the triangles of one cube given its corner values. Loops are
/// traced over per-edge crossings and only then mapped to welded vertices.
fn trace_cube(
    v: &[f64; 8],
    edge_vertex: impl Fn(usize, usize) -> usize,
    weld: impl Fn(usize) -> usize,
    out: &mut Vec<[usize; 3]>,
) {
    // next[vertex] = vertex that follows it on the cube's surface loops
    let mut next: Vec<(usize, usize)> = Vec::with_capacity(12);
    for face in FACES {
        let fv = face.map(|c| v[c]);
        let mut crossing: Vec<(usize, bool)> = Vec::with_capacity(4);
        for e in 0..4 {
            let (a, b) = (e, (e + 1) % 4);
            if positive(fv[a]) != positive(fv[b]) {
                let entry = positive(fv[b]);
                crossing.push((edge_vertex(face[a], face[b]), entry));
            }
        }
        match crossing.len() {
            0 => {}
            2 => {
                let (exit, entry) = if crossing[0].1 {
                    (crossing[1].0, crossing[0].0)
                } else {
                    (crossing[0].0, crossing[1].0)
                };
                next.push((exit, entry));
            }
            4 => {
                let numer = fv[0] * fv[2] - fv[1] * fv[3];
                let denom = (fv[0] + fv[2]) - (fv[1] + fv[3]);
                let positives_joined = (numer > 0.0) == (denom > 0.0) && numer != 0.0;
                for idx in 0..4 {
                    let (vertex, entry) = crossing[idx];
                    if entry {
                        continue;
                    }
                    let partner = if positives_joined { (idx + 1) % 4 } else { (idx + 3) % 4 };
                    next.push((vertex, crossing[partner].0));
                }
            }
            _ => unreachable!("a face has an even number of sign changes"),
        }
    }
    let mut used = vec![false; next.len()];
    for start in 0..next.len() {
        if used[start] {
            continue;
        }
        let mut ring = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            ring.push(next[cur].0);
            let target = next[cur].1;
            match next.iter().position(|(from, _)| *from == target) {
                Some(n) if !used[n] => cur = n,
                _ => break,
            }
        }
        emit_ring(ring.into_iter().map(&weld).collect(), out);
    }
}

/// Fans a loop after dropping repeated neighbours; a loop that passes a
/// welded vertex twice is split there first.
fn emit_ring(ring: Vec<usize>, out: &mut Vec<[usize; 3]>) {
    let mut r: Vec<usize> = Vec::with_capacity(ring.len());
    for v in ring {
        if r.last() != Some(&v) {
            r.push(v);
        }
    }
    while r.len() > 1 && r.first() == r.last() {
        r.pop();
    }
    let repeat = (0..r.len()).find_map(|i| (i + 1..r.len()).find(|&j| r[j] == r[i]).map(|j| (i, j)));
    if let Some((i, j)) = repeat {
        let mut rest = r[..i].to_vec();
        rest.extend_from_slice(&r[j..]);
        emit_ring(r[i..j].to_vec(), out);
        emit_ring(rest, out);
        return;
    }
    for w in 1..r.len().saturating_sub(1) {
        out.push([r[0], r[w], r[w + 1]]);
    }
}

fn vertex_normals(surface: &ImplicitSurface, mesh: &TriMesh) -> Vec<Vec3> {
    let gradient = Gradient::new(surface);
    let mut accumulated = vec![[0.0; 3]; mesh.vertices.len()];
    for t in 0..mesh.triangles.len() {
        let fnorm = mesh.face_normal(t);
        for &i in &mesh.triangles[t] {
            for a in 0..3 {
                accumulated[i][a] += fnorm[a];
            }
        }
    }
    mesh.vertices
        .par_iter()
        .zip(accumulated.par_iter())
        .map(|(p, fallback)| {
            let g = gradient.at(*p).filter(|g| norm(*g) > 1e-300).unwrap_or(*fallback);
            let len = norm(g);
            if len > 0.0 {
                g.map(|c| c / len)
            } else {
                [0.0, 0.0, 1.0]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::mesh::dot;
    use crate::surfaces::Bounds;

    fn surf(src: &str, half: f64) -> ImplicitSurface {
        ImplicitSurface::new(parse(src).unwrap(), Bounds::cube(half)).unwrap()
    }

    #[test]
    fn unit_sphere() {
        let out = polygonize(&surf("x^2+y^2+z^2-1", 1.5), 32).unwrap();
        let m = &out.mesh;
        m.check().unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
        for v in &m.vertices {
            assert!((norm(*v) - 1.0).abs() < 0.02);
        }
        assert!(m.signed_volume() > 4.0);
        for t in 0..m.triangles.len() {
            let c = m.triangles[t].map(|i| m.vertices[i]);
            let centroid = [0, 1, 2].map(|a| (c[0][a] + c[1][a] + c[2][a]) / 3.0);
            assert!(dot(m.face_normal(t), centroid) > 0.0);
        }
    }

    #[test]
    fn zeros_on_grid_points_weld() {
        // spacing 0.125 puts the poles exactly on grid points
        let m = polygonize(&surf("x^2+y^2+z^2-1", 2.0), 32).unwrap().mesh;
        m.check().unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn torus_has_genus_one() {
        let out = polygonize(&surf("(sqrt(x^2+y^2)-1)^2 + z^2 - 0.16", 1.6), 40).unwrap();
        out.mesh.check().unwrap();
        assert!(out.mesh.is_closed());
        assert_eq!(out.mesh.euler_characteristic(), 0);
    }

    #[test]
    fn empty_and_failing() {
        assert_eq!(
            polygonize(&surf("x^2+y^2+z^2+1", 1.5), 16),
            Err(SurfaceError::EmptyZeroSet { skipped_cells: 0 })
        );
        assert!(matches!(
            polygonize(&surf("ln(-1-x^2) + x", 1.0), 8),
            Err(SurfaceError::EvaluationFailed(_))
        ));
        assert!(matches!(
            polygonize(&surf("x", 1.0), 4),
            Err(SurfaceError::Resolution { .. })
        ));
    }

    #[test]
    fn skipped_cells_are_counted() {
        // sqrt fails for x < 0, the plane x = 0.5 still comes out
        let out = polygonize(&surf("sqrt(x) - sqrt(0.5)", 1.0), 8).unwrap();
        assert!(out.skipped_cells > 0);
        assert!(out.mesh.vertices.iter().all(|v| (v[0] - 0.5).abs() < 1e-9));
    }

    #[test]
    fn ambiguous_saddle_is_crack_free() {
        // hyperboloid of one sheet creates ambiguous faces near the waist
        let out = polygonize(&surf("x^2+y^2-z^2-0.05", 1.0), 17).unwrap();
        out.mesh.check().unwrap();
    }
}
