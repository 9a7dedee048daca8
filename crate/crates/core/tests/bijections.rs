use proptest::prelude::*;
use rigidquad::bijection::{h_tree_to_quad, quad_to_h_tree};
use rigidquad::enumerate::{sample_pre_q_tree, sample_rigid_quad, seeded_rng, SampleOptions};
use rigidquad::tree::{compose_phi_inv, decompose_phi, psi, psi_hat, psi_hat_inv, psi_inv};
use rigidquad::{PartitionTree, RigidQuadMap, TreeClass};

fn base() -> impl Strategy<Value = i64> {
    prop_oneof![-6i64..=-1, 1i64..=6]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quads_survive_the_tree_round_trip(p in base(), n_max in 8usize..60, seed in any::<u64>()) {
        let s = sample_rigid_quad(p, SampleOptions::new(n_max), &mut seeded_rng(seed)).unwrap();
        let h = quad_to_h_tree(&s.map).unwrap();
        prop_assert!(h.is_class(TreeClass::H));
        prop_assert_eq!(&h, &s.h_tree);
        prop_assert_eq!(h_tree_to_quad(&h).unwrap(), s.map);
    }

    #[test]
    fn psi_inverts(p in base(), n_max in 8usize..60, seed in any::<u64>()) {
        let s = sample_rigid_quad(p, SampleOptions::new(n_max), &mut seeded_rng(seed)).unwrap();
        if s.base == p {
            prop_assert_eq!(psi_inv(&psi(&s.h_tree).unwrap()).unwrap(), s.h_tree.clone());
        }
        if p < 0 {
            let q = psi_hat(&s.h_tree, p).unwrap();
            prop_assert!(q.is_class(TreeClass::Q));
            prop_assert_eq!(psi_hat_inv(&q).unwrap(), s.h_tree);
        }
    }

    #[test]
    fn phi_inverts(p in -5i64..=5, n in 1usize..40, seed in any::<u64>()) {
        prop_assume!(n as i64 > p);
        let t = sample_pre_q_tree(n, p, &mut seeded_rng(seed)).unwrap();
        let d = decompose_phi(&t).unwrap();
        prop_assert!(d.core.is_class(TreeClass::Q));
        prop_assert_eq!(compose_phi_inv(&d.core, &d.removed).unwrap(), t);
    }

    #[test]
    fn json_round_trips(p in base(), seed in any::<u64>()) {
        let s = sample_rigid_quad(p, SampleOptions::new(30), &mut seeded_rng(seed)).unwrap();
        let (t, class) = PartitionTree::from_json(&s.h_tree.to_json(TreeClass::H)).unwrap();
        prop_assert_eq!(class, TreeClass::H);
        prop_assert_eq!(t, s.h_tree);
        prop_assert_eq!(RigidQuadMap::from_json(&s.map.to_json()).unwrap(), s.map);
    }
}
