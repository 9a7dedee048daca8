use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rigidquad::enumerate::*;
use rigidquad::series::{b_series, c_series, delta_series, h_series, q_series};
use rigidquad::{Rational, TreeClass};

fn coeff(s: &rigidquad::Series, n: usize) -> usize {
    s.coeff(n).to_integer().to_usize().unwrap()
}

#[test]
fn pre_q_counts_match_closed_form() {
    for n in 1..=6 {
        for p in -4..=4 {
            let got = enumerate_pre_q_trees(n, p);
            assert_eq!(BigUint::from(got.len()), count_pre_q_trees(n, p), "n={n} p={p}");
            assert!(got.iter().all(|t| t.is_class(TreeClass::PreQ)));
        }
    }
}

#[test]
fn q_and_h_counts_match_series() {
    for p in -3..=3i64 {
        let q = q_series::<Rational>(p, 7);
        let h = h_series::<Rational>(p, 7);
        for n in 1..=6 {
            assert_eq!(enumerate_q_trees(n, p).len(), coeff(&q, n), "Q n={n} p={p}");
            let hs = enumerate_h_trees(n, p).unwrap();
            assert_eq!(hs.len(), coeff(&h, n), "H n={n} p={p}");
            assert_eq!(enumerate_well_based_q_trees(n, p).len(), hs.len());
            assert!(hs.iter().all(|t| t.is_class(TreeClass::H)));
        }
    }
}

#[test]
fn both_h_enumerators_agree() {
    for p in -3..=3i64 {
        for n in 1..=5 {
            let mut a = enumerate_h_trees(n, p).unwrap();
            let mut b = enumerate_h_trees_recursive(n, p);
            a.sort_by_key(|t| (t.shape(), t.edge_labels()));
            b.sort_by_key(|t| (t.shape(), t.edge_labels()));
            assert_eq!(a, b, "n={n} p={p}");
        }
    }
}

#[test]
fn grouping_by_base_recovers_h_trees() {
    for p in -3..=-1i64 {
        for n in 2..=5 {
            let groups = enumerate_h_trees_by_base(n, p).unwrap();
            for (&base, trees) in &groups {
                assert!((p..=0).contains(&base));
                let key = |t: &rigidquad::PartitionTree| (t.shape(), t.edge_labels());
                let mut direct = enumerate_h_trees(n, base).unwrap();
                let mut got = trees.clone();
                direct.sort_by_key(key);
                got.sort_by_key(key);
                assert_eq!(got, direct, "n={n} p={p} base={base}");
            }
        }
    }
}

#[test]
fn recursive_oracle_matches_series() {
    for p in -4..=4i64 {
        let f = h_series::<Rational>(p, 8);
        for n in 1..=7 {
            assert_eq!(count_quads_recursive(p, n), BigUint::from(coeff(&f, n)), "n={n} p={p}");
        }
    }
}

#[test]
fn quads_are_rigid_with_the_right_parameters() {
    for p in -2..=3i64 {
        for n in 1..=5 {
            for m in enumerate_quads(n, p).unwrap() {
                m.validate().unwrap();
                assert_eq!(m.base_length().unwrap(), p);
                assert_eq!(m.degree(), n);
            }
        }
    }
}

#[test]
fn bcd_counts_match_series() {
    let order = 4;
    let series = [
        (SpineKind::Delta, delta_series::<Rational>(order)),
        (SpineKind::B, b_series::<Rational>(order)),
        (SpineKind::C, c_series::<Rational>(order)),
    ];
    for (kind, s) in &series {
        for n in 1..=3 {
            for p in 1..=n as i64 + 1 {
                for q in 1..=n + 1 {
                    let maps = enumerate_bcd(*kind, p, q, n).unwrap();
                    let weight: Rational = maps
                        .iter()
                        .map(|m| {
                            if *kind == SpineKind::Delta {
                                Rational::new(1.into(), m.degeneracy.into())
                            } else {
                                Rational::from_integer(1.into())
                            }
                        })
                        .fold(Rational::zero(), |a, b| a + b);
                    assert_eq!(weight, s.coeff(n, q as u32, p as u32), "{kind} n={n} p={p} q={q}");
                }
            }
        }
    }
}

#[test]
fn bcd_membership_is_geometric() {
    for n in 1..=4 {
        for p in 1..=n as i64 {
            for m in enumerate_quads(n + 1, p).unwrap() {
                for q in 1..=n + 1 {
                    for kind in [SpineKind::B, SpineKind::C, SpineKind::Delta] {
                        let by_map = map_spine_kind_holds(kind, &m, p, q).unwrap();
                        let h = rigidquad::bijection::quad_to_h_tree(&m).unwrap();
                        let labels = spine_labels(&rigidquad::tree::psi(&h).unwrap());
                        let by_tree = labels.len() == q + 1 && kind.holds(&labels);
                        assert_eq!(by_map, by_tree, "{kind} n={n} p={p} q={q} labels={labels:?}");
                        if by_tree && kind == SpineKind::Delta {
                            assert_eq!(map_degeneracy(&m, p, q).unwrap(), degeneracy(&labels));
                        }
                    }
                }
            }
        }
    }
}
