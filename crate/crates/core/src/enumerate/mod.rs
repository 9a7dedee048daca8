//! Exhaustive enumeration of tree and map families, an independent recursive
//! counting oracle, and uniform samplers.

mod sample;
mod spine;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bijection::{h_tree_to_quad, Signature};
use crate::error::{bad_arg, Result};
use crate::map::RigidQuadMap;
use crate::tree::{psi_hat_inv, psi_inv, PartitionTree, Sub, TreeClass};

pub use sample::{
    sample_composition, sample_delta_type, sample_forest_code, sample_pre_q_tree, sample_rigid_quad,
    sample_shape, seeded_rng, DeltaSample, QuadSample, SampleOptions, DEFAULT_MAX_ATTEMPTS,
};
pub use spine::{
    cycle_subtrees, degeneracy, enumerate_bcd, map_degeneracy, map_spine_kind_holds, rotate_spine, spine_labels,
    SpineKind, SpineMap,
};

/// Families that can be counted by exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PreQ,
    Q,
    WellBasedQ,
    H,
    QuadViaTree,
    QuadViaRecursion,
}

/// Family, degree `n` and base `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub family: Family,
    pub n: usize,
    pub p: i64,
}

impl EnumerationQuery {
    pub fn count(&self) -> Result<BigUint> {
        if self.n == 0 {
            return bad_arg("degree must be at least 1");
        }
        let (n, p) = (self.n, self.p);
        Ok(match self.family {
            Family::PreQ => BigUint::from(count_filtered(n, p, |_| true)),
            Family::Q => BigUint::from(count_filtered(n, p, |t| t.is_class(TreeClass::Q))),
            Family::WellBasedQ => BigUint::from(count_filtered(n, p, |t| t.is_class(TreeClass::WellBasedQ))),
            Family::H => BigUint::from(enumerate_h_trees(n, p)?.len()),
            Family::QuadViaTree => BigUint::from(enumerate_quads(n, p)?.len()),
            Family::QuadViaRecursion => count_quads_recursive(p, n),
        })
    }
}

/// All binary tree shapes with `n` leaves as preorder strings (`true` for an
/// internal vertex), in lexicographic order.
pub fn binary_shapes(n: usize) -> Vec<Vec<bool>> {
    fn rec(n: usize, memo: &mut HashMap<usize, Vec<Vec<bool>>>) -> Vec<Vec<bool>> {
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let out = if n == 1 {
            vec![vec![false]]
        } else {
            let mut out = Vec::new();
            for i in 1..n {
                let left = rec(i, memo);
                let right = rec(n - i, memo);
                for l in &left {
                    for r in &right {
                        let mut s = Vec::with_capacity(2 * n - 1);
                        s.push(true);
                        s.extend(l);
                        s.extend(r);
                        out.push(s);
                    }
                }
            }
            out
        };
        memo.insert(n, out.clone());
        out
    }
    if n == 0 {
        return vec![];
    }
    let mut shapes = rec(n, &mut HashMap::new());
    shapes.sort();
    shapes
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers, in colexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            out.push(vec![total]);
            return;
        }
        for last in 0..=total {
            let start = out.len();
            rec(total - last, parts - 1, out);
            for c in &mut out[start..] {
                c.push(last);
            }
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut out);
    } else if total == 0 {
        out.push(vec![]);
    }
    out
}

/// Leaf label vectors of all pre-Q-trees with `n` leaves and base `p`:
/// non-positive and summing to `p - (n - 1)`.
fn leaf_labelings(n: usize, p: i64) -> Vec<Vec<i64>> {
    let deficit = n as i64 - 1 - p;
    if deficit < 0 {
        return vec![];
    }
    compositions(deficit as usize, n)
        .into_iter()
        .map(|c| c.into_iter().map(|x| -(x as i64)).collect())
        .collect()
}

/// Visits every pre-Q-tree of degree `n` and base `p`, shapes outermost.
pub fn for_each_pre_q_tree(n: usize, p: i64, mut f: impl FnMut(PartitionTree)) {
    let labelings = leaf_labelings(n, p);
    if labelings.is_empty() {
        return;
    }
    for shape in binary_shapes(n) {
        for leaves in &labelings {
            f(PartitionTree::from_leaf_labels(&shape, leaves).expect("zero-excess trees are partition trees"));
        }
    }
}

fn count_filtered(n: usize, p: i64, pred: impl Fn(&PartitionTree) -> bool) -> usize {
    let mut c = 0;
    for_each_pre_q_tree(n, p, |t| c += pred(&t) as usize);
    c
}

fn collect_filtered(n: usize, p: i64, pred: impl Fn(&PartitionTree) -> bool) -> Vec<PartitionTree> {
    let mut out = Vec::new();
    for_each_pre_q_tree(n, p, |t| {
        if pred(&t) {
            out.push(t)
        }
    });
    out
}

pub fn enumerate_pre_q_trees(n: usize, p: i64) -> Vec<PartitionTree> {
    collect_filtered(n, p, |_| true)
}

/// `(1/n) C(2n-2, n-1) C(2n-2-p, n-1)`.
pub fn count_pre_q_trees(n: usize, p: i64) -> BigUint {
    if n == 0 || p > n as i64 - 1 {
        return BigUint::zero();
    }
    let m = n as i64 - 1;
    let c = crate::series::binomial(2 * m, m) * crate::series::binomial(2 * m - p, m);
    (c / num_bigint::BigInt::from(n)).to_biguint().expect("nonnegative")
}

pub fn enumerate_q_trees(n: usize, p: i64) -> Vec<PartitionTree> {
    collect_filtered(n, p, |t| t.is_class(TreeClass::Q))
}

pub fn enumerate_well_based_q_trees(n: usize, p: i64) -> Vec<PartitionTree> {
    collect_filtered(n, p, |t| t.is_class(TreeClass::WellBasedQ))
}

/// H-trees of degree `n` and base `p`, as images of well-based Q-trees.
pub fn enumerate_h_trees(n: usize, p: i64) -> Result<Vec<PartitionTree>> {
    enumerate_well_based_q_trees(n, p).iter().map(psi_inv).collect()
}

/// For `p < 0`: images of all Q-trees with base `p` under the inverse
/// root-path shift, grouped by the base they land on (`p..=0`).
pub fn enumerate_h_trees_by_base(n: usize, p: i64) -> Result<BTreeMap<i64, Vec<PartitionTree>>> {
    if p >= 0 {
        return bad_arg("grouping by base needs p < 0");
    }
    let mut out: BTreeMap<i64, Vec<PartitionTree>> = BTreeMap::new();
    for q in enumerate_q_trees(n, p) {
        let h = psi_hat_inv(&q)?;
        out.entry(h.base_length()).or_default().push(h);
    }
    Ok(out)
}

/// Rigid quadrangulations of degree `n` and base `p`, via H-trees.
pub fn enumerate_quads(n: usize, p: i64) -> Result<Vec<RigidQuadMap>> {
    enumerate_h_trees(n, p)?.iter().map(h_tree_to_quad).collect()
}

/// Candidate child labels below an edge with label `p` in a tree of degree `n`.
fn child_label_range(p: i64, n: usize) -> std::ops::RangeInclusive<i64> {
    p - n as i64 - 1..=n as i64
}

/// Number of H-trees (equivalently rigid quadrangulations) with base `p` and
/// degree `n`, by recursion over the signature of the root vertex.
pub fn count_quads_recursive(p: i64, n: usize) -> BigUint {
    fn rec(p: i64, n: usize, memo: &mut HashMap<(i64, usize), BigUint>) -> BigUint {
        if n == 1 || p == 0 {
            return if n == 1 && p == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if let Some(v) = memo.get(&(p, n)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for a in child_label_range(p, n) {
            for b in child_label_range(p, n) {
                if !Signature::from_labels(p, a, b).is_allowed() {
                    continue;
                }
                for na in 1..n {
                    let left = rec(a, na, memo);
                    if left.is_zero() {
                        continue;
                    }
                    total += left * rec(b, n - na, memo);
                }
            }
        }
        memo.insert((p, n), total.clone());
        total
    }
    if n == 0 {
        return BigUint::zero();
    }
    rec(p, n, &mut HashMap::new())
}

/// H-trees of degree `n` and base `p`, built top-down from allowed
/// signatures without passing through Q-trees.
pub fn enumerate_h_trees_recursive(n: usize, p: i64) -> Vec<PartitionTree> {
    fn rec(p: i64, n: usize, memo: &mut HashMap<(i64, usize), Vec<Sub>>) -> Vec<Sub> {
        if n == 1 || p == 0 {
            return if n == 1 && p == 0 { vec![Sub::leaf(0)] } else { vec![] };
        }
        if let Some(v) = memo.get(&(p, n)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for a in child_label_range(p, n) {
            for b in child_label_range(p, n) {
                if !Signature::from_labels(p, a, b).is_allowed() {
                    continue;
                }
                for na in 1..n {
                    let left = rec(a, na, memo);
                    if left.is_empty() {
                        continue;
                    }
                    let right = rec(b, n - na, memo);
                    for l in &left {
                        for r in &right {
                            out.push(Sub::node(p, l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        memo.insert((p, n), out.clone());
        out
    }
    if n == 0 {
        return vec![];
    }
    rec(p, n, &mut HashMap::new())
        .iter()
        .map(|s| PartitionTree::from_sub(s).expect("allowed signatures give nonnegative vertex labels"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_catalan_and_sorted() {
        let counts: Vec<usize> = (1..=6).map(|n| binary_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(binary_shapes(3), vec![vec![true, false, true, false, false], vec![true, true, false, false, false]]);
    }

    #[test]
    fn compositions_colex() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn small_pre_q_counts() {
        assert_eq!(enumerate_pre_q_trees(1, 0), vec![PartitionTree::single_edge(0)]);
        let two = enumerate_pre_q_trees(2, 0);
        let leaves: Vec<Vec<i64>> = two.iter().map(|t| t.leaves().map(|v| t.edge_label(v)).collect()).collect();
        assert_eq!(leaves, vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(enumerate_pre_q_trees(3, 0).len(), 12);
        assert!(enumerate_pre_q_trees(2, 2).is_empty());
    }

    #[test]
    fn recursive_oracle_small_values() {
        assert_eq!(count_quads_recursive(0, 1), BigUint::one());
        assert_eq!(count_quads_recursive(1, 2), BigUint::one());
        assert_eq!(count_quads_recursive(1, 4), BigUint::from(10u32));
        assert_eq!(enumerate_h_trees_recursive(2, 1).len(), 1);
    }

    #[test]
    fn query_dispatch() {
        let q = EnumerationQuery { family: Family::H, n: 4, p: 1 };
        assert_eq!(q.count().unwrap(), BigUint::from(10u32));
        let q = EnumerationQuery { family: Family::PreQ, n: 0, p: 1 };
        assert!(q.count().is_err());
    }
}
