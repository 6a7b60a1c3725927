//! Indexed triangle meshes shared by the polygonizer, the solids and the
//! frame builder.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub type Vec3 = [f64; 3];

/// Triangles with area at or below this are degenerate.
pub const MIN_TRIANGLE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {index} but the mesh has {count} vertices")]
    IndexOutOfRange {
        triangle: usize,
        index: usize,
        count: usize,
    },
    #[error("triangle {0} is degenerate")]
    Degenerate(usize),
    #[error("directed edge {0}->{1} is used by more than one triangle")]
    InconsistentOrientation(usize, usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("normal count {normals} does not match vertex count {vertices}")]
    NormalCount { normals: usize, vertices: usize },
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
    pub normals: Option<Vec<Vec3>>,
}

impl TriMesh {
    pub fn new(vertices: Vec<Vec3>, triangles: Vec<[usize; 3]>) -> Self {
        TriMesh {
            vertices,
            triangles,
            normals: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Unnormalized face normal (length is twice the area).
    pub fn face_normal(&self, t: usize) -> Vec3 {
        let [a, b, c] = self.triangles[t].map(|i| self.vertices[i]);
        cross(sub(b, a), sub(c, a))
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        0.5 * norm(self.face_normal(t))
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Undirected edges as sorted index pairs.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        self.triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    /// V - E + F counting only vertices referenced by a triangle.
    pub fn euler_characteristic(&self) -> i64 {
        let used: BTreeSet<usize> = self.triangles.iter().flatten().copied().collect();
        used.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    /// True when every edge is shared by exactly two triangles.
    pub fn is_closed(&self) -> bool {
        let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        uses.values().all(|&n| n == 2)
    }

    /// Checks index range, finiteness, non-degeneracy and consistent
    /// orientation (each directed edge used at most once, so an edge shared
    /// by two triangles is traversed once in each direction).
    pub fn check(&self) -> Result<(), MeshError> {
        if let Some(i) = self
            .vertices
            .iter()
            .position(|v| v.iter().any(|c| !c.is_finite()))
        {
            return Err(MeshError::NonFinite(i));
        }
        if let Some(n) = &self.normals {
            if n.len() != self.vertices.len() {
                return Err(MeshError::NormalCount {
                    normals: n.len(),
                    vertices: self.vertices.len(),
                });
            }
        }
        let count = self.vertices.len();
        let mut directed = BTreeSet::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            if let Some(&index) = t.iter().find(|&&i| i >= count) {
                return Err(MeshError::IndexOutOfRange {
                    triangle: ti,
                    index,
                    count,
                });
            }
            if self.triangle_area(ti) <= MIN_TRIANGLE_AREA {
                return Err(MeshError::Degenerate(ti));
            }
            for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                if !directed.insert(e) {
                    return Err(MeshError::InconsistentOrientation(e.0, e.1));
                }
            }
        }
        Ok(())
    }

    /// Signed volume enclosed by a closed mesh (positive when outward).
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i]);
                dot(a, cross(b, c)) / 6.0
            })
            .sum()
    }

    /// Appends another mesh, offsetting its indices.
    pub fn append(&mut self, other: &TriMesh) {
        let base = self.vertices.len();
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles
            .extend(other.triangles.iter().map(|t| t.map(|i| i + base)));
        self.normals = None;
    }
}
