use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidquad::enumerate::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SIGNIFICANCE: f64 = 0.001;

/// p-value of Pearson's test of `observed` against `expected` probabilities.
fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let e = e * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    1.0 - ChiSquared::new((observed.len() - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn pre_q_sampler_is_uniform() {
    let all = enumerate_pre_q_trees(4, 0);
    assert_eq!(all.len(), 100);
    let index: HashMap<_, _> = all.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = vec![0u64; all.len()];
    for _ in 0..100_000 {
        counts[index[&sample_pre_q_tree(4, 0, &mut rng).unwrap()]] += 1;
    }
    let p = chi_square_p(&counts, &vec![0.01; 100]);
    assert!(p > SIGNIFICANCE, "p-value {p}");
}

#[test]
fn same_seed_same_tree() {
    let a = sample_pre_q_tree(12, -2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let b = sample_pre_q_tree(12, -2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn conditioned_quad_sampler_is_uniform() {
    let all = enumerate_quads(4, 1).unwrap();
    assert_eq!(all.len(), 10);
    let index: HashMap<_, _> = all.iter().enumerate().map(|(i, m)| (m.to_json(), i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut counts = vec![0u64; all.len()];
    for _ in 0..100_000 {
        let s = sample_rigid_quad(1, SampleOptions::new(4).target(4), &mut rng).unwrap();
        counts[index[&s.map.to_json()]] += 1;
    }
    let p = chi_square_p(&counts, &vec![0.1; 10]);
    assert!(p > SIGNIFICANCE, "p-value {p}");
}

#[test]
fn negative_base_with_exact_base_is_uniform() {
    let all = enumerate_quads(3, -1).unwrap();
    let index: HashMap<_, _> = all.iter().enumerate().map(|(i, m)| (m.to_json(), i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut counts = vec![0u64; all.len()];
    for _ in 0..20_000 {
        let s = sample_rigid_quad(-1, SampleOptions::new(4).target(3).exact_base(true), &mut rng).unwrap();
        assert_eq!(s.base, -1);
        counts[index[&s.map.to_json()]] += 1;
    }
    let p = chi_square_p(&counts, &vec![1.0 / all.len() as f64; all.len()]);
    assert!(p > SIGNIFICANCE, "p-value {p}");
}

#[test]
fn sampled_maps_are_rigid() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for p in [-3i64, -1, 1, 2, 5] {
        for _ in 0..30 {
            let s = sample_rigid_quad(p, SampleOptions::new(30), &mut rng).unwrap();
            s.map.validate().unwrap();
            assert_eq!(s.map.base_length().unwrap(), s.base);
            assert_eq!(s.map.degree(), s.n);
            if p > 0 {
                assert_eq!(s.base, p);
            } else {
                assert!((p..=0).contains(&s.base));
            }
        }
    }
}

fn check_delta_law(p: i64, q: usize, n: usize, draws: usize, seed: u64) {
    let maps = enumerate_bcd(SpineKind::Delta, p, q, n).unwrap();
    let index: HashMap<_, _> = maps.iter().enumerate().map(|(i, m)| (m.map.to_json(), i)).collect();
    let weights: Vec<f64> = maps.iter().map(|m| 1.0 / m.degeneracy as f64).collect();
    let total: f64 = weights.iter().sum();
    let expected: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; maps.len()];
    for _ in 0..draws {
        let s = sample_delta_type(p, q, SampleOptions::new(n).target(n), &mut rng).unwrap();
        let i = index[&s.map.to_json()];
        assert_eq!(s.degeneracy, maps[i].degeneracy);
        counts[i] += 1;
    }
    let pv = chi_square_p(&counts, &expected);
    assert!(pv > SIGNIFICANCE, "p={p} q={q} n={n} counts={counts:?} expected={expected:?} p-value {pv}");
}

#[test]
fn delta_sampler_follows_inverse_degeneracy() {
    // smallest size with more than one map
    let n = (1..6).find(|&n| enumerate_bcd(SpineKind::Delta, 2, 2, n).unwrap().len() > 1).unwrap();
    check_delta_law(2, 2, n, 100_000, 15);
}

#[test]
fn delta_sampler_with_mixed_degeneracies() {
    let maps = enumerate_bcd(SpineKind::Delta, 3, 3, 4).unwrap();
    assert!(maps.iter().any(|m| m.degeneracy == 1) && maps.iter().any(|m| m.degeneracy == 2));
    check_delta_law(3, 3, 4, 100_000, 17);
    check_delta_law(4, 2, 5, 100_000, 18);
}

#[test]
fn sampled_delta_maps_have_the_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (p, q) in [(1i64, 1usize), (2, 2), (3, 2), (4, 6)] {
        for _ in 0..20 {
            let s = sample_delta_type(p, q, SampleOptions::new(20), &mut rng).unwrap();
            s.map.validate().unwrap();
            assert!(map_spine_kind_holds(SpineKind::Delta, &s.map, p, q).unwrap());
            assert_eq!(map_degeneracy(&s.map, p, q).unwrap(), s.degeneracy);
        }
    }
}
