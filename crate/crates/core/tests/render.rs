use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidquad::bijection::h_tree_to_quad;
use rigidquad::enumerate::{enumerate_quads, sample_rigid_quad, SampleOptions};
use rigidquad::render::immerse;
use rigidquad::map::Disk;
use rigidquad::{PartitionTree, RigidQuadMap};

#[test]
fn immersions_of_all_small_maps_are_consistent() {
    for p in -3..=3i64 {
        for n in 1..=5 {
            for m in enumerate_quads(n, p).unwrap() {
                let g = immerse(&m).unwrap();
                assert_eq!(g.overlaps.values().sum::<usize>(), m.num_faces());
                assert_eq!(g.turning_number(), 4, "p={p} n={n}");
                assert!(g.boundary_closes());
                assert_eq!(g.vertices[g.root], (0, 0));
            }
        }
    }
}

#[test]
fn two_by_two_block() {
    // vertices v = x + 3y on a 3x3 lattice
    let faces: Vec<Vec<usize>> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(x, y)| {
            let v = x + 3 * y;
            vec![v, v + 1, v + 4, v + 3]
        })
        .collect();
    let m = RigidQuadMap::Disk(Disk::from_faces(&faces, (2, 1), &[], false).unwrap());
    let g = immerse(&m).unwrap();
    let mut cells = g.faces.clone();
    cells.sort();
    assert_eq!(cells, vec![(-2, 0), (-2, 1), (-1, 0), (-1, 1)]);
    assert_eq!(g.max_overlap(), 1);
    assert_eq!(g.turning_number(), 4);
}

#[test]
fn large_samples_overlap_and_conserve_mass() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut overlapped = false;
    for _ in 0..40 {
        let s = sample_rigid_quad(1, SampleOptions::new(150), &mut rng).unwrap();
        let g = immerse(&s.map).unwrap();
        assert_eq!(g.overlaps.values().sum::<usize>(), s.map.num_faces());
        assert_eq!(g.turning_number(), 4);
        overlapped |= g.max_overlap() >= 2;
    }
    assert!(overlapped, "no self-overlapping sample among 40 large maps");
}

#[test]
fn svg_matches_golden_files() {
    let cases = [
        ("unit_square", PartitionTree::new(&[true, false, false], &[1, 0, 0]).unwrap()),
        ("g_3_1_1", PartitionTree::new(&[true, true, false, false, true, false, false], &[3, 1, 0, 0, 1, 0, 0]).unwrap()),
    ];
    for (name, t) in cases {
        let svg = immerse(&h_tree_to_quad(&t).unwrap()).unwrap().to_svg();
        let path = format!("{}/tests/golden/{name}.svg", env!("CARGO_MANIFEST_DIR"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &svg).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap();
        assert_eq!(svg, golden, "{name}");
    }
}
