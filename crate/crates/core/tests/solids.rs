mod common;

use std::collections::{BTreeMap, VecDeque};

use common::{brute_force_platonic, dist2, dist3, overlap_area, polygon_area};
use ornata::solids::{
    build_solid, elevate, enumerate_platonic, polygon_tiling, unfold_net, Net, SchlafliPair, SolidError, SolidMesh, Spanning,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random spanning tree of the face graph (shuffled Kruskal), oriented
/// breadth-first from its first face.
fn random_tree(solid: &SolidMesh, seed: u64) -> Spanning {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = solid.adjacency().into_iter().map(|(a, b, _)| (a, b)).collect();
    edges.shuffle(&mut rng);
    let n = solid.face_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let root = rng.gen_range(0..n);
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut folds = Vec::new();
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                folds.push([f, g]);
                queue.push_back(g);
            }
        }
    }
    Spanning::Tree { folds }
}

fn check_net(solid: &SolidMesh, net: &Net) -> Result<(), TestCaseError> {
    let f = solid.face_count();
    prop_assert_eq!(net.faces.len(), f);
    prop_assert_eq!(net.folds.len(), f - 1);
    // every placed face is an isometric copy of its solid face
    for pf in &net.faces {
        let ids = &pf.vertex_ids;
        prop_assert_eq!(ids.len(), pf.polygon.len());
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                let d3 = dist3(solid.mesh.vertices[ids[i]], solid.mesh.vertices[ids[j]]);
                let d2 = dist2(pf.polygon[i], pf.polygon[j]);
                prop_assert!((d3 - d2).abs() < 1e-9, "face {} side {}-{}: {} vs {}", pf.face, i, j, d3, d2);
            }
        }
        prop_assert!(polygon_area(&pf.polygon) > 0.0, "face {} is not counter-clockwise", pf.face);
    }
    // folds glue parent and child along the same placed segment
    for fold in &net.folds {
        let at = |face: usize, v: usize| {
            let pf = net.placed(face).unwrap();
            pf.polygon[pf.vertex_ids.iter().position(|&x| x == v).unwrap()]
        };
        for v in fold.edge {
            prop_assert!(dist2(at(fold.parent, v), at(fold.child, v)) < 1e-9);
        }
    }
    let area: f64 = (0..f).map(|i| solid.face_area(i)).sum();
    prop_assert!((net.total_area() - area).abs() < 1e-9 * area.max(1.0));
    // detector against the clipping oracle
    let mut worst = (0.0, None);
    for (i, a) in net.faces.iter().enumerate() {
        for b in &net.faces[i + 1..] {
            let o = overlap_area(&a.polygon, &b.polygon);
            if o > worst.0 {
                worst = (o, Some((a.face.min(b.face), a.face.max(b.face))));
            }
        }
    }
    match net.overlap {
        None => prop_assert!(worst.0 < 1e-9, "missed overlap {:?}", worst),
        Some((i, j)) => {
            let o = overlap_area(&net.placed(i).unwrap().polygon, &net.placed(j).unwrap().polygon);
            prop_assert!(o > 1e-12, "reported ({}, {}) overlap only {}", i, j, o);
        }
    }
    Ok(())
}

fn platonic() -> impl Strategy<Value = SchlafliPair> {
    prop::sample::select(enumerate_platonic())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn random_unfoldings_are_isometric(s in platonic(), seed: u64) {
        let solid = build_solid(s).unwrap();
        let net = unfold_net(&solid, &random_tree(&solid, seed)).unwrap();
        check_net(&solid, &net)?;
        prop_assert!(net.is_valid(), "{:?} overlaps at {:?}", s, net.overlap);
    }

    #[test]
    fn elevated_unfoldings_agree_with_the_oracle(s in platonic(), seed: u64) {
        let solid = elevate(&build_solid(s).unwrap()).unwrap();
        let net = unfold_net(&solid, &random_tree(&solid, seed)).unwrap();
        check_net(&solid, &net)?;
    }

    #[test]
    fn breadth_first_from_any_root(s in platonic(), root_seed: usize) {
        let solid = build_solid(s).unwrap();
        let root = root_seed % solid.face_count();
        check_net(&solid, &unfold_net(&solid, &Spanning::BreadthFirst { root }).unwrap())?;
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let got: Vec<(u32, u32)> = enumerate_platonic().iter().map(|s| (s.p, s.q)).collect();
    assert_eq!(got, brute_force_platonic(40));
    assert!(matches!(build_solid(SchlafliPair::new(6, 3)), Err(SolidError::NotPlatonic { p: 6, q: 3 })));
    for s in enumerate_platonic() {
        assert_eq!(SchlafliPair::from_name(s.name().unwrap()), Some(s));
    }
}

#[test]
fn solids_are_regular() {
    for s in enumerate_platonic() {
        let m = build_solid(s).unwrap();
        let (v, e, f) = (m.vertex_count(), m.edges().len(), m.face_count());
        assert_eq!(v as i64 - e as i64 + f as i64, 2, "{s:?}");
        assert_eq!(2 * e, f * s.p as usize);
        assert_eq!(2 * e, v * s.q as usize);
        let (lo, hi) = m.edge_length_range();
        assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9, "{s:?}: {lo}..{hi}");
        assert!(m.planarity_error() < 1e-9);
        assert!(m.mesh.is_closed() && m.mesh.signed_volume() > 0.0);
    }
}

#[test]
fn elevation_adds_one_apex_per_face() {
    for s in enumerate_platonic() {
        let base = build_solid(s).unwrap();
        let up = elevate(&base).unwrap();
        assert_eq!(up.vertex_count(), base.vertex_count() + base.face_count());
        assert_eq!(up.face_count(), base.face_count() * s.p as usize);
        assert_eq!(up.edges().len(), base.edges().len() + base.face_count() * s.p as usize);
        let (lo, hi) = up.edge_length_range();
        assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
        assert!(up.mesh.is_closed());
        assert_eq!(up.mesh.euler_characteristic(), 2);
        assert!(up.mesh.signed_volume() > base.mesh.signed_volume());
    }
}

#[test]
fn tilings_are_edge_to_edge() {
    for p in [3, 4, 6] {
        let tiles = polygon_tiling(p, 3).unwrap();
        let mut per_ring = BTreeMap::new();
        for t in &tiles {
            *per_ring.entry(t.ring).or_insert(0) += 1;
            assert_eq!(t.vertices.len(), p as usize);
            assert!(polygon_area(&t.vertices) > 0.0);
            for i in 0..t.vertices.len() {
                assert!((dist2(t.vertices[i], t.vertices[(i + 1) % t.vertices.len()]) - 1.0).abs() < 1e-9);
            }
        }
        assert_eq!(per_ring.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3], "{p}");
        for (i, a) in tiles.iter().enumerate() {
            for b in &tiles[i + 1..] {
                assert!(overlap_area(&a.vertices, &b.vertices) < 1e-9, "{p}-gons overlap");
                let shared: Vec<usize> = (0..a.vertices.len())
                    .filter(|&k| b.vertices.iter().any(|v| dist2(*v, a.vertices[k]) < 1e-9))
                    .collect();
                let n = a.vertices.len();
                match shared[..] {
                    [] | [_] => {}
                    [x, y] => assert!(y == x + 1 || (x == 0 && y == n - 1), "{p}: tiles meet at a non-edge"),
                    _ => panic!("{p}: tiles share {} vertices", shared.len()),
                }
                // vertices of one tile never sit inside an edge of another
                for v in &b.vertices {
                    for k in 0..n {
                        let d = common::point_segment_distance(*v, a.vertices[k], a.vertices[(k + 1) % n]);
                        let at_end = dist2(*v, a.vertices[k]) < 1e-9 || dist2(*v, a.vertices[(k + 1) % n]) < 1e-9;
                        assert!(d > 1e-9 || at_end, "{p}: T-junction");
                    }
                }
            }
        }
    }
    assert!(matches!(polygon_tiling(5, 1), Err(SolidError::NoTiling(5))));
}
