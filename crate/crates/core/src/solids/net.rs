use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{SchlafliPair, SolidError, SolidMesh};
use crate::mesh::{cross, dot, norm, sub, Vec3};

/// Glue-tab width as a fraction of the edge length.
pub const TAB_WIDTH: f64 = 0.1;

// Separating-axis slack: polygons that only touch are not overlapping.
const OVERLAP_EPS: f64 = 1e-9;

/// How the spanning tree of the face-adjacency graph is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Spanning {
    /// Breadth-first from `root`, neighbors visited in adjacency order.
    BreadthFirst { root: usize },
    /// The classic six-square cross; cube only.
    Cross,
    /// The preset used for the dodecahedron dress pattern (breadth-first
    /// from face 0, checked overlap-free).
    Dress,
    /// Explicit fold edges as `[parent, child]` pairs; the first parent is the root.
    Tree { folds: Vec<[usize; 2]> },
}

impl Default for Spanning {
    fn default() -> Self {
        Spanning::BreadthFirst { root: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedFace {
    pub face: usize,
    /// Solid vertex ids matching `polygon` point for point.
    pub vertex_ids: Vec<usize>,
    /// Counter-clockwise polygon in the plane.
    pub polygon: Vec<[f64; 2]>,
}

impl PlacedFace {
    fn side_of(&self, edge: [usize; 2]) -> Option<usize> {
        let n = self.vertex_ids.len();
        (0..n).find(|&i| {
            let (a, b) = (self.vertex_ids[i], self.vertex_ids[(i + 1) % n]);
            (a, b) == (edge[0], edge[1]) || (a, b) == (edge[1], edge[0])
        })
    }

    fn side(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        (self.polygon[i], self.polygon[(i + 1) % self.polygon.len()])
    }

    pub fn centroid(&self) -> [f64; 2] {
        let n = self.polygon.len() as f64;
        [
            self.polygon.iter().map(|p| p[0]).sum::<f64>() / n,
            self.polygon.iter().map(|p| p[1]).sum::<f64>() / n,
        ]
    }
}

/// A fold between two placed faces along the solid edge `edge`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fold {
    pub parent: usize,
    pub child: usize,
    pub edge: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Net {
    /// Placed faces in placement order (parents before children).
    pub faces: Vec<PlacedFace>,
    pub folds: Vec<Fold>,
    pub tabs: Vec<Vec<[f64; 2]>>,
    /// First pair of overlapping faces, if any. Such a net is still
    /// returned but cannot be cut out in one piece.
    pub overlap: Option<(usize, usize)>,
}

pub(crate) fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

impl Net {
    pub fn is_valid(&self) -> bool {
        self.overlap.is_none()
    }

    pub fn placed(&self, face: usize) -> Option<&PlacedFace> {
        self.faces.iter().find(|f| f.face == face)
    }

    pub fn total_area(&self) -> f64 {
        self.faces.iter().map(|f| polygon_area(&f.polygon)).sum()
    }

    fn is_fold(&self, face: &PlacedFace, side: usize) -> bool {
        self.folds.iter().any(|f| {
            (f.parent == face.face || f.child == face.face) && face.side_of(f.edge) == Some(side)
        })
    }

    /// Outline edges (every polygon side that is not a fold) in placement order.
    pub fn cut_segments(&self) -> Vec<([f64; 2], [f64; 2])> {
        self.faces
            .iter()
            .flat_map(|pf| (0..pf.polygon.len()).map(move |i| (pf, i)))
            .filter(|(pf, i)| !self.is_fold(pf, *i))
            .map(|(pf, i)| pf.side(i))
            .collect()
    }

    /// Fold lines, taken from each fold's parent placement.
    pub fn fold_segments(&self) -> Vec<([f64; 2], [f64; 2])> {
        self.folds
            .iter()
            .map(|f| {
                let pf = self.placed(f.parent).expect("fold parent is placed");
                pf.side(pf.side_of(f.edge).expect("fold edge lies on its parent"))
            })
            .collect()
    }

    /// Adds trapezoidal glue tabs (width `TAB_WIDTH` of the edge length) on
    /// one side of every cut edge: the side whose face has the smaller id.
    pub fn with_tabs(mut self) -> Net {
        let mut tabs = Vec::new();
        for pf in &self.faces {
            let n = pf.vertex_ids.len();
            for i in 0..n {
                if self.is_fold(pf, i) {
                    continue;
                }
                let edge = [pf.vertex_ids[i], pf.vertex_ids[(i + 1) % n]];
                let other = self
                    .faces
                    .iter()
                    .find(|o| o.face != pf.face && o.side_of(edge).is_some())
                    .map(|o| o.face);
                if other.is_some_and(|o| o < pf.face) {
                    continue;
                }
                let (a, b) = pf.side(i);
                let d = [b[0] - a[0], b[1] - a[1]];
                let len = d[0].hypot(d[1]);
                let w = TAB_WIDTH * len;
                // outward normal of a CCW polygon side is to the right
                let out = [d[1] / len * w, -d[0] / len * w];
                let along = [d[0] / len * w, d[1] / len * w];
                tabs.push(vec![
                    a,
                    [a[0] + out[0] + along[0], a[1] + out[1] + along[1]],
                    [b[0] + out[0] - along[0], b[1] + out[1] - along[1]],
                    b,
                ]);
            }
        }
        self.tabs = tabs;
        self
    }
}

fn project_axis(poly: &[[f64; 2]], axis: [f64; 2]) -> (f64, f64) {
    poly.iter()
        .map(|p| p[0] * axis[0] + p[1] * axis[1])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Positive-area overlap test for convex polygons (separating axes).
pub(crate) fn convex_overlap(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    for poly in [a, b] {
        let n = poly.len();
        for i in 0..n {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            let len = (q[0] - p[0]).hypot(q[1] - p[1]);
            let axis = [-(q[1] - p[1]) / len, (q[0] - p[0]) / len];
            let (alo, ahi) = project_axis(a, axis);
            let (blo, bhi) = project_axis(b, axis);
            if ahi.min(bhi) - alo.max(blo) <= OVERLAP_EPS {
                return false;
            }
        }
    }
    true
}

fn place(solid: &SolidMesh, face: usize, anchor: Option<(Vec3, Vec3, [f64; 2], [f64; 2])>) -> PlacedFace {
    let ids = solid.faces[face].vertices.clone();
    let pts = solid.face_points(face);
    let normal = solid.face_normal(face);
    // 3D anchor edge (a, b) lands on 2D (a2, b2)
    let (a, b, a2, b2) = anchor.unwrap_or((pts[0], pts[1], [0.0, 0.0], [1.0, 0.0]));
    let e1 = {
        let d = sub(b, a);
        let l = norm(d);
        d.map(|c| c / l)
    };
    let e2 = cross(normal, e1);
    let d2 = [b2[0] - a2[0], b2[1] - a2[1]];
    let l2 = d2[0].hypot(d2[1]);
    let f1 = [d2[0] / l2, d2[1] / l2];
    let f2 = [-f1[1], f1[0]];
    let polygon = pts
        .iter()
        .map(|p| {
            let r = sub(*p, a);
            let (s, t) = (dot(r, e1), dot(r, e2));
            [a2[0] + s * f1[0] + t * f2[0], a2[1] + s * f1[1] + t * f2[1]]
        })
        .collect();
    PlacedFace {
        face,
        vertex_ids: ids,
        polygon,
    }
}

fn cube_cross(solid: &SolidMesh) -> Result<Vec<[usize; 2]>, SolidError> {
    let by_normal = |axis: usize, sign: f64| {
        (0..solid.face_count())
            .find(|&f| (solid.face_normal(f)[axis] - sign).abs() < 1e-9)
            .ok_or_else(|| SolidError::BadSpanning("cross layout needs an axis-aligned cube".into()))
    };
    let front = by_normal(1, -1.0)?;
    let top = by_normal(2, 1.0)?;
    let bottom = by_normal(2, -1.0)?;
    let back = by_normal(1, 1.0)?;
    let left = by_normal(0, -1.0)?;
    let right = by_normal(0, 1.0)?;
    Ok(vec![[front, top], [front, bottom], [bottom, back], [front, left], [front, right]])
}

fn breadth_first(solid: &SolidMesh, root: usize) -> Result<Vec<[usize; 2]>, SolidError> {
    if root >= solid.face_count() {
        return Err(SolidError::BadSpanning(format!("root face {root} out of range")));
    }
    let adjacency = solid.adjacency();
    let mut seen = vec![false; solid.face_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(f) = queue.pop_front() {
        for &(a, b, _) in &adjacency {
            let other = if a == f { b } else if b == f { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                tree.push([f, other]);
                queue.push_back(other);
            }
        }
    }
    Ok(tree)
}

/// Unfolds a solid into the plane along a spanning tree of its faces.
///
/// Each child face is attached to its parent across their shared edge,
/// preserving edge lengths and orientation (faces are seen from outside).
/// The result records the first overlapping face pair, if any.
pub fn unfold_net(solid: &SolidMesh, spanning: &Spanning) -> Result<Net, SolidError> {
    let tree = match spanning {
        Spanning::BreadthFirst { root } => breadth_first(solid, *root)?,
        Spanning::Dress => breadth_first(solid, 0)?,
        Spanning::Cross => cube_cross(solid)?,
        Spanning::Tree { folds } => folds.clone(),
    };
    let count = solid.face_count();
    if tree.len() + 1 != count {
        return Err(SolidError::BadSpanning(format!(
            "{} folds cannot span {count} faces",
            tree.len()
        )));
    }
    let root = if count == 1 { 0 } else { tree[0][0] };
    let adjacency = solid.adjacency();
    let mut placed: Vec<Option<PlacedFace>> = vec![None; count];
    let mut order = vec![root];
    placed[root] = Some(place(solid, root, None));
    let mut folds = Vec::new();
    let mut pending: Vec<[usize; 2]> = tree.clone();
    while !pending.is_empty() {
        let before = pending.len();
        let mut rest = Vec::new();
        for [parent, child] in pending {
            if parent >= count || child >= count {
                return Err(SolidError::BadSpanning(format!("face id out of range in fold {parent}->{child}")));
            }
            let Some(pf) = placed[parent].clone() else {
                rest.push([parent, child]);
                continue;
            };
            if placed[child].is_some() {
                return Err(SolidError::BadSpanning(format!("face {child} placed twice")));
            }
            let edge = adjacency
                .iter()
                .find(|(a, b, _)| (*a, *b) == (parent.min(child), parent.max(child)))
                .map(|(_, _, e)| *e)
                .ok_or_else(|| SolidError::BadSpanning(format!("faces {parent} and {child} are not adjacent")))?;
            let side = pf.side_of(edge).expect("shared edge lies on the parent");
            let (p0, p1) = pf.side(side);
            let (v0, v1) = (pf.vertex_ids[side], pf.vertex_ids[(side + 1) % pf.vertex_ids.len()]);
            let anchor = (solid.mesh.vertices[v0], solid.mesh.vertices[v1], p0, p1);
            placed[child] = Some(place(solid, child, Some(anchor)));
            order.push(child);
            folds.push(Fold { parent, child, edge });
        }
        if rest.len() == before {
            return Err(SolidError::BadSpanning("fold list is not a tree rooted at its first parent".into()));
        }
        pending = rest;
    }
    let faces: Vec<PlacedFace> = order.into_iter().map(|f| placed[f].take().expect("placed")).collect();
    let mut overlap = None;
    'outer: for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if convex_overlap(&faces[i].polygon, &faces[j].polygon) {
                overlap = Some((faces[i].face.min(faces[j].face), faces[i].face.max(faces[j].face)));
                break 'outer;
            }
        }
    }
    Ok(Net {
        faces,
        folds,
        tabs: Vec::new(),
        overlap,
    })
}

impl Spanning {
    /// Named presets: `bfs`, `cross`, `dress`.
    pub fn preset(name: &str) -> Option<Spanning> {
        match name {
            "bfs" | "default" => Some(Spanning::default()),
            "cross" => Some(Spanning::Cross),
            "dress" => Some(Spanning::Dress),
            _ => None,
        }
    }

    /// Default strategy for a solid: the dress preset for the dodecahedron,
    /// the cross for the cube, breadth-first otherwise.
    pub fn default_for(s: SchlafliPair) -> Spanning {
        match s {
            SchlafliPair::DODECAHEDRON => Spanning::Dress,
            SchlafliPair::CUBE => Spanning::Cross,
            _ => Spanning::default(),
        }
    }
}
