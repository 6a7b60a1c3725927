use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::SolidError;

/// A tile in a regular tiling, with unit edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedPolygon {
    /// 0 for the central tile, k for the k-th ring around it.
    pub ring: usize,
    /// Counter-clockwise vertices.
    pub vertices: Vec<[f64; 2]>,
}

impl PlacedPolygon {
    pub fn center(&self) -> [f64; 2] {
        let n = self.vertices.len() as f64;
        [
            self.vertices.iter().map(|v| v[0]).sum::<f64>() / n,
            self.vertices.iter().map(|v| v[1]).sum::<f64>() / n,
        ]
    }
}

fn key(p: [f64; 2]) -> (i64, i64) {
    ((p[0] * 1e6).round() as i64, (p[1] * 1e6).round() as i64)
}

fn candidates(p: u32, rings: usize) -> Vec<Vec<[f64; 2]>> {
    let reach = 2 * rings as i64 + 3;
    let mut out = Vec::new();
    match p {
        3 => {
            let h = 3f64.sqrt() / 2.0;
            let lattice = |a: i64, b: i64| [a as f64 + b as f64 / 2.0, b as f64 * h];
            // shift so the central up-triangle has its centroid at the origin
            let shift = [0.5, h / 3.0];
            let at = |a, b| {
                let q: [f64; 2] = lattice(a, b);
                [q[0] - shift[0], q[1] - shift[1]]
            };
            for b in -reach..=reach {
                for a in -reach..=reach {
                    out.push(vec![at(a, b), at(a + 1, b), at(a, b + 1)]);
                    out.push(vec![at(a + 1, b), at(a + 1, b + 1), at(a, b + 1)]);
                }
            }
        }
        4 => {
            for j in -reach..=reach {
                for i in -reach..=reach {
                    let (x, y) = (i as f64, j as f64);
                    out.push(vec![[x - 0.5, y - 0.5], [x + 0.5, y - 0.5], [x + 0.5, y + 0.5], [x - 0.5, y + 0.5]]);
                }
            }
        }
        6 => {
            let s3 = 3f64.sqrt();
            for r in -reach..=reach {
                for q in -reach..=reach {
                    let c = [1.5 * q as f64, s3 * (r as f64 + q as f64 / 2.0)];
                    out.push(
                        (0..6)
                            .map(|k| {
                                let a = std::f64::consts::PI / 3.0 * k as f64;
                                [c[0] + a.cos(), c[1] + a.sin()]
                            })
                            .collect(),
                    );
                }
            }
        }
        _ => {}
    }
    out
}

/// A central regular p-gon and `rings` rings of copies around it, edge to
/// edge. Ring k holds the tiles k vertex-steps from the centre (tiles
/// sharing a corner are neighbors), so hexagon ring k has 6k tiles and square
/// ring k has 8k. Only triangles, squares and hexagons tile the plane.
pub fn polygon_tiling(p: u32, rings: usize) -> Result<Vec<PlacedPolygon>, SolidError> {
    if !matches!(p, 3 | 4 | 6) {
        return Err(SolidError::NoTiling(p));
    }
    let tiles = candidates(p, rings);
    let mut by_vertex: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (t, poly) in tiles.iter().enumerate() {
        for v in poly {
            by_vertex.entry(key(*v)).or_default().push(t);
        }
    }
    let center = tiles
        .iter()
        .position(|poly| {
            let n = poly.len() as f64;
            let c = [poly.iter().map(|v| v[0]).sum::<f64>() / n, poly.iter().map(|v| v[1]).sum::<f64>() / n];
            c[0].hypot(c[1]) < 1e-9
        })
        .expect("a tile is centred at the origin");
    let mut ring = vec![usize::MAX; tiles.len()];
    ring[center] = 0;
    let mut queue = VecDeque::from([center]);
    while let Some(t) = queue.pop_front() {
        if ring[t] == rings {
            continue;
        }
        for v in &tiles[t] {
            for &o in &by_vertex[&key(*v)] {
                if ring[o] == usize::MAX {
                    ring[o] = ring[t] + 1;
                    queue.push_back(o);
                }
            }
        }
    }
    let mut out: Vec<PlacedPolygon> = tiles
        .into_iter()
        .zip(ring)
        .filter(|(_, r)| *r <= rings)
        .map(|(vertices, ring)| PlacedPolygon { ring, vertices })
        .collect();
    out.sort_by(|a, b| {
        let (ca, cb) = (a.center(), b.center());
        a.ring
            .cmp(&b.ring)
            .then(ca[1].atan2(ca[0]).total_cmp(&cb[1].atan2(cb[0])))
            .then(ca[0].hypot(ca[1]).total_cmp(&cb[0].hypot(cb[1])))
    });
    Ok(out)
}
