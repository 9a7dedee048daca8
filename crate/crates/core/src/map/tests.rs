use super::*;

fn unit_square() -> RigidQuadMap {
    RigidQuadMap::Disk(Disk::from_faces(&[vec![0, 1, 2, 3]], (1, 0), &[], false).unwrap())
}

/// Grid vertex id for a `w`-wide block.
fn gv(w: usize, x: usize, y: usize) -> usize {
    y * (w + 1) + x
}

fn block(w: usize, h: usize, open_top: bool, base_open: bool) -> RigidQuadMap {
    let mut faces = Vec::new();
    for y in 0..h {
        for x in 0..w {
            faces.push(vec![gv(w, x, y), gv(w, x + 1, y), gv(w, x + 1, y + 1), gv(w, x, y + 1)]);
        }
    }
    let open: Vec<(usize, usize)> = if open_top { vec![(gv(w, 0, h), gv(w, 1, h))] } else { vec![] };
    RigidQuadMap::Disk(Disk::from_faces(&faces, (gv(w, w, 0), gv(w, w - 1, 0)), &open, base_open).unwrap())
}

#[test]
fn unit_square_is_rigid() {
    let m = unit_square();
    assert!(m.is_rigid());
    assert_eq!(m.base_length(), Ok(1));
    assert_eq!(m.degree(), 2);
    let c = m.census();
    assert_eq!((c.convex, c.concave, c.straight, c.inner_vertices, c.faces), (4, 0, 0, 0, 1));
    assert!(m.rays().unwrap().is_empty());
    let sides = m.sides();
    assert_eq!(sides.len(), 4);
    assert_eq!(sides[0].kind, SideKind::Bottom);
    assert_eq!(sides[1].kind, SideKind::Vertical);
    assert_eq!(sides[2].kind, SideKind::Top);
}

#[test]
fn two_by_two_block_has_untyped_rays() {
    let m = block(2, 2, false, false);
    let v = m.violations();
    assert!(v.iter().any(|x| matches!(x, MapViolation::UntypedRay { .. })));
    assert_eq!(m.rays().unwrap_err().to_string().contains("UntypedRay"), true);
}

#[test]
fn open_top_makes_vertical_rays_downward() {
    let m = block(3, 1, true, false);
    assert!(m.is_rigid(), "{:?}", m.violations());
    let rays = m.rays().unwrap();
    assert_eq!(rays.len(), 2);
    assert!(rays.iter().all(|r| !r.closed && r.direction == RayDirection::Down && r.len() == 1));
    assert_eq!(m.base_length(), Ok(3));
}

#[test]
fn open_base_length_counts_rays() {
    let m = block(3, 1, false, true);
    assert!(m.is_rigid(), "{:?}", m.violations());
    assert_eq!(m.base_length(), Ok(-3));
    assert!(m.rays().unwrap().iter().all(|r| r.direction == RayDirection::Down && !r.closed));
}

#[test]
fn degree_three_inner_vertex_is_not_flat() {
    // three quads around vertex 0
    let faces = vec![vec![0, 1, 2, 3], vec![0, 3, 4, 5], vec![0, 5, 6, 1]];
    let m = RigidQuadMap::Disk(Disk::from_faces(&faces, (2, 1), &[], false).unwrap());
    assert!(m
        .violations()
        .iter()
        .any(|v| matches!(v, MapViolation::InnerVertexDegree { degree: 3, .. })));
}

#[test]
fn json_round_trip_and_canonical_labels() {
    let m = block(3, 1, true, false);
    let back = RigidQuadMap::from_json(&m.to_json()).unwrap();
    assert_eq!(back, m);
    assert_eq!(RigidQuadMap::from_json(&RigidQuadMap::Corner.to_json()).unwrap(), RigidQuadMap::Corner);
    assert!(RigidQuadMap::from_json(r#"{"num_half_edges":2,"opposite":[0,1],"next":[0,1],"root":0,"open_sides":[]}"#).is_err());
}

#[test]
fn malformed_arrays_rejected() {
    assert!(Disk::new(vec![1, 0], vec![0, 0], 0, vec![]).is_err());
    assert!(Disk::new(vec![1, 0, 3], vec![0, 1, 2], 0, vec![]).is_err());
}
