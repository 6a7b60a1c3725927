//! Platonic solids: enumeration by the vertex-angle criterion, construction
//! with unit edges, net unfolding, face elevation and regular tilings.

mod elevate;
mod net;
mod tiling;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{cross, dot, norm, sub, TriMesh, Vec3};

pub use elevate::elevate;
pub use net::{unfold_net, Fold, Net, PlacedFace, Spanning, TAB_WIDTH};
pub use tiling::{polygon_tiling, PlacedPolygon};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolidError {
    #[error("{{{p}, {q}}} is not a platonic solid")]
    NotPlatonic { p: u32, q: u32 },
    #[error("face {face}: circumradius {circumradius} is not below the edge length, no equilateral apex exists")]
    NoApex { face: usize, circumradius: f64 },
    #[error("face {face} has edges that are not of unit length")]
    NotUnitEdges { face: usize },
    #[error("invalid spanning tree: {0}")]
    BadSpanning(String),
    #[error("{0}-gons do not tile the plane")]
    NoTiling(u32),
}

/// `{p, q}`: p-gon faces, q of them meeting at each vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SchlafliPair {
    pub p: u32,
    pub q: u32,
}

impl SchlafliPair {
    pub const TETRAHEDRON: SchlafliPair = SchlafliPair { p: 3, q: 3 };
    pub const OCTAHEDRON: SchlafliPair = SchlafliPair { p: 3, q: 4 };
    pub const ICOSAHEDRON: SchlafliPair = SchlafliPair { p: 3, q: 5 };
    pub const CUBE: SchlafliPair = SchlafliPair { p: 4, q: 3 };
    pub const DODECAHEDRON: SchlafliPair = SchlafliPair { p: 5, q: 3 };

    pub fn new(p: u32, q: u32) -> Self {
        SchlafliPair { p, q }
    }

    /// Interior angle of the regular p-gon in degrees.
    pub fn face_angle_degrees(&self) -> f64 {
        180.0 * (self.p as f64 - 2.0) / self.p as f64
    }

    /// Whether `q` copies of the face angle stay below a full turn. Uses the
    /// exact integer form `q (p - 2) < 2 p`.
    pub fn is_platonic(&self) -> bool {
        self.p >= 3 && self.q >= 3 && self.q * (self.p - 2) < 2 * self.p
    }

    pub fn name(&self) -> Option<&'static str> {
        Some(match (self.p, self.q) {
            (3, 3) => "tetrahedron",
            (3, 4) => "octahedron",
            (3, 5) => "icosahedron",
            (4, 3) => "cube",
            (5, 3) => "dodecahedron",
            _ => return None,
        })
    }

    pub fn from_name(name: &str) -> Option<Self> {
        enumerate_platonic()
            .into_iter()
            .find(|s| s.name() == Some(name))
    }
}

/// All `{p, q}` with `p, q >= 3` whose vertex angle sum is below 360°.
///
/// For `p >= 6` the face angle is at least 120°, so three faces already make
/// a full turn; likewise for `q >= 6`. Searching `3..=6` is therefore
/// exhaustive.
pub fn enumerate_platonic() -> Vec<SchlafliPair> {
    let mut out = Vec::new();
    for p in 3..=6 {
        for q in 3..=6 {
            let s = SchlafliPair { p, q };
            if s.is_platonic() {
                out.push(s);
            }
        }
    }
    out
}

/// One polygonal face of a solid.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// Vertex ids counter-clockwise seen from outside.
    pub vertices: Vec<usize>,
    /// Range of this face's fan triangles in the mesh.
    pub triangles: std::ops::Range<usize>,
}

/// Triangulated solid that remembers its polygonal faces.
#[derive(Debug, Clone, PartialEq)]
pub struct SolidMesh {
    pub mesh: TriMesh,
    pub faces: Vec<Face>,
}

impl SolidMesh {
    fn from_faces(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Self {
        let mut mesh = TriMesh::new(vertices, Vec::new());
        let faces = faces
            .into_iter()
            .map(|f| {
                let start = mesh.triangles.len();
                for w in 1..f.len() - 1 {
                    mesh.triangles.push([f[0], f[w], f[w + 1]]);
                }
                Face {
                    vertices: f,
                    triangles: start..mesh.triangles.len(),
                }
            })
            .collect();
        SolidMesh { mesh, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.mesh.vertices.len()
    }

    /// Polygon edges (not the fan diagonals), as sorted vertex pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| {
                let n = f.vertices.len();
                (0..n).map(move |i| {
                    let (a, b) = (f.vertices[i], f.vertices[(i + 1) % n]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_points(&self, face: usize) -> Vec<Vec3> {
        self.faces[face].vertices.iter().map(|&i| self.mesh.vertices[i]).collect()
    }

    pub fn face_centroid(&self, face: usize) -> Vec3 {
        let pts = self.face_points(face);
        let n = pts.len() as f64;
        [0, 1, 2].map(|a| pts.iter().map(|p| p[a]).sum::<f64>() / n)
    }

    /// Unit outward normal of a face.
    pub fn face_normal(&self, face: usize) -> Vec3 {
        let pts = self.face_points(face);
        let n = cross(sub(pts[1], pts[0]), sub(pts[2], pts[1]));
        let len = norm(n);
        n.map(|c| c / len)
    }

    pub fn face_area(&self, face: usize) -> f64 {
        self.faces[face]
            .triangles
            .clone()
            .map(|t| self.mesh.triangle_area(t))
            .sum()
    }

    /// Faces sharing an edge, as `(face, face, [edge vertices])` with the
    /// lower face id first, in deterministic order.
    pub fn adjacency(&self) -> Vec<(usize, usize, [usize; 2])> {
        let mut by_edge: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (fi, f) in self.faces.iter().enumerate() {
            let n = f.vertices.len();
            for i in 0..n {
                let (a, b) = (f.vertices[i], f.vertices[(i + 1) % n]);
                by_edge.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        let mut out: Vec<_> = by_edge
            .into_iter()
            .filter(|(_, fs)| fs.len() == 2)
            .map(|((a, b), fs)| (fs[0].min(fs[1]), fs[0].max(fs[1]), [a, b]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Largest deviation of any face vertex from its face plane.
    pub fn planarity_error(&self) -> f64 {
        (0..self.faces.len())
            .flat_map(|f| {
                let n = self.face_normal(f);
                let c = self.face_centroid(f);
                self.face_points(f).into_iter().map(move |p| dot(sub(p, c), n).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Minimum and maximum polygon edge length.
    pub fn edge_length_range(&self) -> (f64, f64) {
        self.edges().iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(a, b)| {
            let l = norm(sub(self.mesh.vertices[a], self.mesh.vertices[b]));
            (lo.min(l), hi.max(l))
        })
    }
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn raw_vertices(s: SchlafliPair) -> Vec<Vec3> {
    let g = golden();
    let signs = [1.0, -1.0];
    let mut v = Vec::new();
    match (s.p, s.q) {
        (3, 3) => v.extend([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]),
        (3, 4) => v.extend([
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, -1.0],
        ]),
        (4, 3) => {
            for z in [-1.0, 1.0] {
                for y in [-1.0, 1.0] {
                    for x in [-1.0, 1.0] {
                        v.push([x, y, z]);
                    }
                }
            }
        }
        (3, 5) => {
            for a in signs {
                for b in signs {
                    v.push([0.0, a, b * g]);
                    v.push([a, b * g, 0.0]);
                    v.push([b * g, 0.0, a]);
                }
            }
        }
        (5, 3) => {
            for x in signs {
                for y in signs {
                    for z in signs {
                        v.push([x, y, z]);
                    }
                }
            }
            for a in signs {
                for b in signs {
                    v.push([0.0, a / g, b * g]);
                    v.push([a / g, b * g, 0.0]);
                    v.push([b * g, 0.0, a / g]);
                }
            }
        }
        _ => unreachable!("only called for platonic pairs"),
    }
    v
}

/// Rotation taking unit vector `from` onto +z (Rodrigues form).
fn rotate_onto_z(points: &mut [Vec3], from: Vec3) {
    let z = [0.0, 0.0, 1.0];
    let axis = cross(from, z);
    let s = norm(axis);
    let c = dot(from, z);
    if s < 1e-15 {
        return;
    }
    let k = axis.map(|a| a / s);
    for p in points.iter_mut() {
        let kxp = cross(k, *p);
        let kdp = dot(k, *p);
        *p = [0, 1, 2].map(|i| p[i] * c + kxp[i] * s + k[i] * kdp * (1.0 - c));
    }
}

/// Supporting planes of a convex point set: the hull's faces with their
/// vertices ordered counter-clockwise around the outward normal.
fn hull_faces(v: &[Vec3]) -> Vec<Vec<usize>> {
    let n = v.len();
    let eps = 1e-9;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut normal = cross(sub(v[j], v[i]), sub(v[k], v[i]));
                let len = norm(normal);
                if len < eps {
                    continue;
                }
                normal = normal.map(|c| c / len);
                let d = dot(normal, v[i]);
                let side: Vec<f64> = v.iter().map(|p| dot(normal, *p) - d).collect();
                let (above, below) = (
                    side.iter().any(|s| *s > eps),
                    side.iter().any(|s| *s < -eps),
                );
                if above && below {
                    continue;
                }
                if above {
                    normal = normal.map(|c| -c);
                }
                let mut members: Vec<usize> = (0..n).filter(|&m| side[m].abs() <= eps).collect();
                members.sort_unstable();
                if faces.iter().any(|f| {
                    let mut s = f.clone();
                    s.sort_unstable();
                    s == members
                }) {
                    continue;
                }
                let centroid = [0, 1, 2].map(|a| members.iter().map(|&m| v[m][a]).sum::<f64>() / members.len() as f64);
                let u = sub(v[members[0]], centroid);
                let w = cross(normal, u);
                members.sort_by(|&a, &b| {
                    let ang = |m: usize| {
                        let r = sub(v[m], centroid);
                        dot(r, w).atan2(dot(r, u)).rem_euclid(std::f64::consts::TAU)
                    };
                    ang(a).total_cmp(&ang(b))
                });
                faces.push(members);
            }
        }
    }
    faces
}

/// Builds the platonic solid `{p, q}` with unit edges centered at the
/// origin. The cube is axis-aligned; the others have a vertex on +z.
pub fn build_solid(s: SchlafliPair) -> Result<SolidMesh, SolidError> {
    if !s.is_platonic() {
        return Err(SolidError::NotPlatonic { p: s.p, q: s.q });
    }
    let mut v = raw_vertices(s);
    let edge = v
        .iter()
        .skip(1)
        .map(|p| norm(sub(*p, v[0])))
        .fold(f64::INFINITY, f64::min);
    for p in v.iter_mut() {
        *p = p.map(|c| c / edge);
    }
    if s != SchlafliPair::CUBE {
        let top = v[0];
        let len = norm(top);
        rotate_onto_z(&mut v, top.map(|c| c / len));
        // snap the rotated apex exactly onto the axis
        v[0] = [0.0, 0.0, len];
    }
    let faces = hull_faces(&v);
    Ok(SolidMesh::from_faces(v, faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_pairs() {
        let all = enumerate_platonic();
        assert_eq!(all.len(), 5);
        for s in [(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)] {
            assert!(all.contains(&SchlafliPair::new(s.0, s.1)));
        }
        assert!(!SchlafliPair::new(3, 6).is_platonic());
        assert!(SchlafliPair::new(5, 3).is_platonic());
        assert_eq!(SchlafliPair::new(5, 3).face_angle_degrees() * 3.0, 324.0);
    }

    #[test]
    fn classical_counts() {
        let expected = [((3, 3), (4, 6, 4)), ((3, 4), (6, 12, 8)), ((3, 5), (12, 30, 20)), ((4, 3), (8, 12, 6)), ((5, 3), (20, 30, 12))];
        for ((p, q), (v, e, f)) in expected {
            let s = build_solid(SchlafliPair::new(p, q)).unwrap();
            assert_eq!((s.vertex_count(), s.edges().len(), s.face_count()), (v, e, f), "{p},{q}");
            assert_eq!(v as i64 - e as i64 + f as i64, 2);
            s.mesh.check().unwrap();
            assert!(s.mesh.is_closed());
            assert!(s.mesh.signed_volume() > 0.0);
            let (lo, hi) = s.edge_length_range();
            assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
            assert!(s.planarity_error() < 1e-9);
            assert!(s.faces.iter().all(|f| f.vertices.len() == p as usize));
        }
    }

    #[test]
    fn canonical_orientation() {
        let cube = build_solid(SchlafliPair::CUBE).unwrap();
        assert!(cube.mesh.vertices.iter().all(|v| v.iter().all(|c| (c.abs() - 0.5).abs() < 1e-12)));
        for s in [SchlafliPair::TETRAHEDRON, SchlafliPair::OCTAHEDRON, SchlafliPair::ICOSAHEDRON, SchlafliPair::DODECAHEDRON] {
            let m = build_solid(s).unwrap();
            let v0 = m.mesh.vertices[0];
            assert!(v0[0] == 0.0 && v0[1] == 0.0 && v0[2] > 0.0);
        }
    }

    #[test]
    fn rejects_non_platonic() {
        assert_eq!(build_solid(SchlafliPair::new(6, 3)), Err(SolidError::NotPlatonic { p: 6, q: 3 }));
    }
}
