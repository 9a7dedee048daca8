//! Trees with a spine of left children below the root edge, and the B, C and
//! Δ families of doubly based quadrangulations they encode.

use std::fmt;

use crate::bijection::h_tree_to_quad;
use crate::error::{bad_arg, Result};
use crate::map::{Corner, RigidQuadMap};
use crate::tree::{psi_inv, PartitionTree, Sub, ROOT_EDGE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpineKind {
    B,
    C,
    Delta,
}

impl SpineKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "b" => SpineKind::B,
            "c" => SpineKind::C,
            "delta" | "d" => SpineKind::Delta,
            other => return bad_arg(format!("unknown family '{other}'")),
        })
    }

    /// Whether spine labels `a_0..=a_q` satisfy this family's condition.
    pub fn holds(self, labels: &[i64]) -> bool {
        let q = labels.len() as i64 - 1;
        if q < 1 || labels[0] <= 0 || labels[q as usize] != 0 {
            return false;
        }
        let p = labels[0];
        labels[1..q as usize].iter().enumerate().all(|(j, &a)| {
            let i = j as i64 + 1;
            match self {
                SpineKind::B => a > 0,
                SpineKind::C => a >= p,
                SpineKind::Delta => q * a >= p * (q - i),
            }
        })
    }
}

impl fmt::Display for SpineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpineKind::B => "B",
            SpineKind::C => "C",
            SpineKind::Delta => "Delta",
        })
    }
}

/// Labels of the root edge and of the maximal run of left children below it.
pub fn spine_labels(t: &PartitionTree) -> Vec<i64> {
    let mut out = vec![t.edge_label(ROOT_EDGE)];
    let mut v = ROOT_EDGE;
    while let Some((l, _)) = t.children(v) {
        out.push(t.edge_label(l));
        v = l;
    }
    out
}

/// The right subtrees hanging off the spine, top to bottom.
fn spine_blocks(t: &PartitionTree) -> Vec<Sub> {
    let mut out = Vec::new();
    let mut v = ROOT_EDGE;
    while let Some((l, r)) = t.children(v) {
        out.push(t.sub(r));
        v = l;
    }
    out
}

/// Hangs `blocks` off a spine below a root edge labelled `p`, with zero
/// vertex labels along the spine.
pub(crate) fn spine_tree(p: i64, blocks: &[Sub]) -> Result<PartitionTree> {
    let mut labels = vec![p];
    for b in blocks {
        labels.push(labels.last().unwrap() - b.label - 1);
    }
    let mut sub = Sub::leaf(*labels.last().unwrap());
    for (b, &a) in blocks.iter().zip(&labels).rev() {
        sub = Sub::node(a, sub, b.clone());
    }
    PartitionTree::from_sub(&sub)
}

/// Number of spine edges meeting the Δ bound `q a_k >= p (q - k)` with equality.
pub fn degeneracy(labels: &[i64]) -> usize {
    let q = labels.len() as i64 - 1;
    let p = labels[0];
    (1..=q).filter(|&k| q * labels[k as usize] == p * (q - k)).count()
}

fn check_spine(t: &PartitionTree, p: i64, q: usize) -> Result<()> {
    let labels = spine_labels(t);
    if labels.len() != q + 1 || labels[0] != p {
        return bad_arg(format!("tree does not have base {p} and a spine of length {q}"));
    }
    Ok(())
}

/// Cyclic shifts `r` of the spine subtrees (block `i` replaced by block
/// `i + r mod q`) after which the spine satisfies the Δ bound.
pub fn cycle_subtrees(t: &PartitionTree, p: i64, q: usize) -> Result<Vec<usize>> {
    check_spine(t, p, q)?;
    let steps: Vec<i64> = spine_blocks(t).iter().map(|b| b.label + 1).collect();
    let qi = q as i64;
    let valid = (0..q)
        .filter(|&r| {
            let mut a = p;
            (1..=q).all(|k| {
                a -= steps[(k - 1 + r) % q];
                qi * a >= p * (qi - k as i64)
            })
        })
        .collect();
    Ok(valid)
}

/// The tree with its spine subtrees cyclically shifted by `r`.
pub fn rotate_spine(t: &PartitionTree, r: usize) -> Result<PartitionTree> {
    let mut blocks = spine_blocks(t);
    if blocks.is_empty() {
        return bad_arg("tree has no spine");
    }
    let len = blocks.len();
    blocks.rotate_left(r % len);
    spine_tree(t.base_length(), &blocks)
}

/// A member of a B, C or Δ family with its trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineMap {
    pub q_tree: PartitionTree,
    pub h_tree: PartitionTree,
    pub map: RigidQuadMap,
    /// Δ degeneracy of the spine (1 unless the bound is met early).
    pub degeneracy: usize,
}

/// All maps of the given family with base `p`, co-base `q` and `n` convex
/// corners away from the base and co-base.
pub fn enumerate_bcd(kind: SpineKind, p: i64, q: usize, n: usize) -> Result<Vec<SpineMap>> {
    if p < 1 || q < 1 || n < 1 {
        return bad_arg("p, q and n must be positive");
    }
    let mut out = Vec::new();
    for t in super::enumerate_q_trees(n + 1, p) {
        let labels = spine_labels(&t);
        if labels.len() != q + 1 || !kind.holds(&labels) {
            continue;
        }
        let h = psi_inv(&t)?;
        let map = h_tree_to_quad(&h)?;
        out.push(SpineMap { degeneracy: degeneracy(&labels), q_tree: t, h_tree: h, map });
    }
    Ok(out)
}

/// Geometric membership test on the map itself, for base `p` and co-base `q`.
pub fn map_spine_kind_holds(kind: SpineKind, m: &RigidQuadMap, p: i64, q: usize) -> Result<bool> {
    Ok(match base_ray_profile(m, p, q)? {
        None => false,
        Some(lengths) => lengths.iter().enumerate().all(|(j, &len)| {
            let (k, len, qi) = (j as i64 + 1, len as i64, q as i64);
            match kind {
                SpineKind::B => true,
                SpineKind::C => len >= qi,
                SpineKind::Delta => p * len >= k * qi,
            }
        }),
    })
}

/// Lengths of the rays ending on the base, from the root, if `m` is doubly
/// based with the given side lengths.
fn base_ray_profile(m: &RigidQuadMap, p: i64, q: usize) -> Result<Option<Vec<usize>>> {
    let sides = m.sides();
    let doubly_based = sides.len() >= 2
        && !sides[0].open
        && !sides[1].open
        && sides[0].len() as i64 == p
        && sides[1].len() == q
        && m.corner(sides[1].end) == Some(Corner::Convex);
    if !doubly_based {
        return Ok(None);
    }
    Ok(Some(m.rays_ending_on(0)?.iter().map(|r| r.len()).collect()))
}

/// Degeneracy read off the map: rays into the base meeting the hypotenuse,
/// plus one.
pub fn map_degeneracy(m: &RigidQuadMap, p: i64, q: usize) -> Result<usize> {
    let Some(lengths) = base_ray_profile(m, p, q)? else {
        return bad_arg("map is not doubly based with these side lengths");
    };
    let exact = lengths
        .iter()
        .enumerate()
        .filter(|&(j, &len)| p * len as i64 == (j as i64 + 1) * q as i64)
        .count();
    Ok(exact + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::TreeClass;

    #[test]
    fn trivial_spine_has_one_rotation() {
        let t = spine_tree(1, &[Sub::leaf(0)]).unwrap();
        assert_eq!(spine_labels(&t), vec![1, 0]);
        assert_eq!(cycle_subtrees(&t, 1, 1).unwrap(), vec![0]);
        assert!(t.is_class(TreeClass::PreQ));
    }

    #[test]
    fn diagonal_walk_is_fully_degenerate() {
        let t = spine_tree(3, &[Sub::leaf(0), Sub::leaf(0), Sub::leaf(0)]).unwrap();
        assert_eq!(spine_labels(&t), vec![3, 2, 1, 0]);
        assert_eq!(degeneracy(&spine_labels(&t)), 3);
        assert_eq!(cycle_subtrees(&t, 3, 3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn rotation_moves_blocks() {
        let t = spine_tree(2, &[Sub::leaf(-1), Sub::leaf(0), Sub::leaf(0)]).unwrap();
        assert_eq!(spine_labels(&t), vec![2, 2, 1, 0]);
        let r = rotate_spine(&t, 1).unwrap();
        assert_eq!(spine_labels(&r), vec![2, 1, 0, 0]);
        assert_eq!(cycle_subtrees(&t, 2, 3).unwrap(), vec![0]);
        assert!(cycle_subtrees(&t, 2, 2).is_err());
    }

    #[test]
    fn kinds() {
        assert!(SpineKind::B.holds(&[3, 1, 0]));
        assert!(!SpineKind::C.holds(&[3, 1, 0]));
        assert!(!SpineKind::Delta.holds(&[3, 1, 0]));
        assert!(SpineKind::Delta.holds(&[3, 2, 0]));
        assert!(!SpineKind::B.holds(&[3, 1, -1]));
    }

    #[test]
    fn unit_square_is_in_every_family() {
        for kind in [SpineKind::B, SpineKind::C, SpineKind::Delta] {
            let all = enumerate_bcd(kind, 1, 1, 1).unwrap();
            assert_eq!(all.len(), 1);
            assert!(map_spine_kind_holds(kind, &all[0].map, 1, 1).unwrap());
            assert_eq!(map_degeneracy(&all[0].map, 1, 1).unwrap(), 1);
        }
    }
}
