use std::f64::consts::PI;

use super::{SolidError, SolidMesh};
use crate::mesh::{norm, sub};

/// Replaces every face by an outward pyramid of equilateral triangles.
///
/// The apex of a p-gon face sits on the face normal at height
/// `sqrt(1 - R^2)`, `R` being the face circumradius, so every new edge has
/// unit length. Faces with `R >= 1` (hexagons and up) have no such apex.
pub fn elevate(solid: &SolidMesh) -> Result<SolidMesh, SolidError> {
    let mut vertices = solid.mesh.vertices.clone();
    let mut faces = Vec::new();
    for (fi, face) in solid.faces.iter().enumerate() {
        let pts = solid.face_points(fi);
        let n = pts.len();
        if (0..n).any(|i| (norm(sub(pts[(i + 1) % n], pts[i])) - 1.0).abs() > 1e-9) {
            return Err(SolidError::NotUnitEdges { face: fi });
        }
        let circumradius = 1.0 / (2.0 * (PI / n as f64).sin());
        if circumradius >= 1.0 {
            return Err(SolidError::NoApex { face: fi, circumradius });
        }
        let height = (1.0 - circumradius * circumradius).sqrt();
        let c = solid.face_centroid(fi);
        let normal = solid.face_normal(fi);
        let apex = vertices.len();
        vertices.push([0, 1, 2].map(|a| c[a] + height * normal[a]));
        for i in 0..n {
            faces.push(vec![face.vertices[i], face.vertices[(i + 1) % n], apex]);
        }
    }
    Ok(SolidMesh::from_faces(vertices, faces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::dot;
    use crate::solids::{build_solid, enumerate_platonic, SchlafliPair};

    fn apex_height(s: &SolidMesh, elevated: &SolidMesh, face: usize) -> f64 {
        let apex = elevated.mesh.vertices[s.vertex_count() + face];
        dot(sub(apex, s.face_centroid(face)), s.face_normal(face))
    }

    #[test]
    fn elevated_cube() {
        let cube = build_solid(SchlafliPair::CUBE).unwrap();
        let e = elevate(&cube).unwrap();
        assert_eq!(e.face_count(), 24);
        assert_eq!(e.vertex_count(), 8 + 6);
        for f in 0..6 {
            assert!((apex_height(&cube, &e, f) - 2f64.sqrt() / 2.0).abs() < 1e-9);
        }
        let (lo, hi) = e.edge_length_range();
        assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
        e.mesh.check().unwrap();
        assert!(e.mesh.is_closed());
    }

    #[test]
    fn elevated_tetrahedron() {
        let t = build_solid(SchlafliPair::TETRAHEDRON).unwrap();
        let e = elevate(&t).unwrap();
        for f in 0..4 {
            assert!((apex_height(&t, &e, f) - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn all_elevations_are_unit_and_outward() {
        for s in enumerate_platonic() {
            let solid = build_solid(s).unwrap();
            let e = elevate(&solid).unwrap();
            assert_eq!(e.vertex_count(), solid.vertex_count() + solid.face_count());
            let (lo, hi) = e.edge_length_range();
            assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
            assert!(e.planarity_error() < 1e-9);
            assert!(e.mesh.signed_volume() > solid.mesh.signed_volume());
            e.mesh.check().unwrap();
        }
    }

    #[test]
    fn rejects_scaled_faces() {
        let mut cube = build_solid(SchlafliPair::CUBE).unwrap();
        for v in cube.mesh.vertices.iter_mut() {
            *v = v.map(|c| c * 2.0);
        }
        assert!(matches!(elevate(&cube), Err(SolidError::NotUnitEdges { .. })));
    }
}
