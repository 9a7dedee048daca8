//! Exact uniform samplers. Every function takes the random stream explicitly.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spine::{cycle_subtrees, rotate_spine, spine_labels, spine_tree, SpineKind};
use crate::bijection::h_tree_to_quad;
use crate::error::{bad_arg, internal, Error, Result};
use crate::map::RigidQuadMap;
use crate::tree::{decompose_phi, psi_hat_inv, psi_inv, PartitionTree, ROOT_EDGE};

pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000_000;

/// The random stream used throughout, seeded from a single integer.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size and conditioning parameters shared by the map samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// Size of the uniformly drawn pre-Q-tree.
    pub n_max: usize,
    /// Resample until the output has exactly this size.
    pub target: Option<usize>,
    /// For negative bases: resample until the map has exactly the requested base.
    pub exact_base: bool,
    pub max_attempts: u64,
}

impl SampleOptions {
    pub fn new(n_max: usize) -> Self {
        Self { n_max, target: None, exact_base: false, max_attempts: DEFAULT_MAX_ATTEMPTS }
    }

    pub fn target(mut self, n: usize) -> Self {
        self.target = Some(n);
        self
    }

    pub fn exact_base(mut self, yes: bool) -> Self {
        self.exact_base = yes;
        self
    }

    pub fn max_attempts(mut self, attempts: u64) -> Self {
        self.max_attempts = attempts;
        self
    }

    fn check(&self) -> Result<()> {
        if self.n_max == 0 {
            return bad_arg("n_max must be at least 1");
        }
        if let Some(t) = self.target {
            if t == 0 || t > self.n_max {
                return bad_arg(format!("target size {t} must lie in 1..={}", self.n_max));
            }
        }
        if self.max_attempts == 0 {
            return bad_arg("attempt budget must be positive");
        }
        Ok(())
    }
}

/// Uniform preorder code (`true` = internal vertex) of an ordered forest of
/// `trees` binary trees with `leaves` leaves in total, by the cycle lemma.
pub fn sample_forest_code<R: Rng + ?Sized>(leaves: usize, trees: usize, rng: &mut R) -> Result<Vec<bool>> {
    if trees == 0 || leaves < trees {
        return bad_arg(format!("no forest of {trees} trees with {leaves} leaves"));
    }
    let len = 2 * leaves - trees;
    let mut seq = vec![false; len];
    for i in index::sample(rng, len, leaves - trees) {
        seq[i] = true;
    }
    let mut sums = Vec::with_capacity(len + 1);
    sums.push(0i64);
    for &x in &seq {
        sums.push(sums.last().unwrap() + if x { 1 } else { -1 });
    }
    // A start r is good when S_r is a strict prefix minimum and no later
    // proper prefix drops `trees` below it.
    let mut suffix_min = vec![i64::MAX; len + 1];
    for i in (1..len).rev() {
        suffix_min[i] = suffix_min[i + 1].min(sums[i]);
    }
    let mut good = Vec::with_capacity(trees);
    let mut prefix_min = i64::MAX;
    for r in 0..len {
        if sums[r] < prefix_min && suffix_min[r + 1] > sums[r] - trees as i64 {
            good.push(r);
        }
        prefix_min = prefix_min.min(sums[r]);
    }
    if good.len() != trees {
        return internal(format!("cycle lemma found {} good shifts, expected {trees}", good.len()));
    }
    seq.rotate_left(good[rng.gen_range(0..trees)]);
    Ok(seq)
}

/// Uniform binary tree shape with `n` leaves.
pub fn sample_shape<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<bool>> {
    sample_forest_code(n, 1, rng)
}

/// Uniform composition of `total` into `parts` nonnegative parts (stars and bars).
pub fn sample_composition<R: Rng + ?Sized>(total: usize, parts: usize, rng: &mut R) -> Result<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { Ok(vec![]) } else { bad_arg("cannot split a positive total into no parts") };
    }
    let mut bars = index::sample(rng, total + parts - 1, parts - 1).into_vec();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for (i, &b) in bars.iter().enumerate() {
        out.push(b - i - prev);
        prev = b - i;
    }
    out.push(total - prev);
    Ok(out)
}

fn leaf_labels<R: Rng + ?Sized>(n: usize, p: i64, rng: &mut R) -> Result<Vec<i64>> {
    let deficit = n as i64 - 1 - p;
    if deficit < 0 {
        return bad_arg(format!("no pre-Q-tree with {n} leaves and base {p}"));
    }
    Ok(sample_composition(deficit as usize, n, rng)?.into_iter().map(|c| -(c as i64)).collect())
}

/// Uniform pre-Q-tree with `n` leaves and base `p`.
pub fn sample_pre_q_tree<R: Rng + ?Sized>(n: usize, p: i64, rng: &mut R) -> Result<PartitionTree> {
    if n == 0 {
        return bad_arg("a tree has at least one leaf");
    }
    let labels = leaf_labels(n, p, rng)?;
    let shape = sample_shape(n, rng)?;
    PartitionTree::from_leaf_labels(&shape, &labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSample {
    pub map: RigidQuadMap,
    pub h_tree: PartitionTree,
    /// Core of the sampled pre-Q-tree.
    pub q_tree: PartitionTree,
    /// Degree of the map.
    pub n: usize,
    /// Base-length of the map; may exceed the requested negative base.
    pub base: i64,
    pub attempts: u64,
}

/// Random rigid quadrangulation with base `p`: the core of a uniform
/// pre-Q-tree, mapped to an H-tree and glued. Conditioned on its degree the
/// output is uniform.
pub fn sample_rigid_quad<R: Rng + ?Sized>(p: i64, opts: SampleOptions, rng: &mut R) -> Result<QuadSample> {
    opts.check()?;
    if p > opts.n_max as i64 - 1 {
        return bad_arg(format!("base {p} needs n_max >= {}", p + 1));
    }
    if let Some(t) = opts.target {
        let empty = match p {
            0 => t != 1,
            p if p > 0 => t <= p as usize,
            _ => t < 2,
        };
        if empty {
            return bad_arg(format!("no rigid quadrangulation with base {p} and degree {t}"));
        }
    }
    for attempt in 1..=opts.max_attempts {
        let tree = sample_pre_q_tree(opts.n_max, p, rng)?;
        let core = decompose_phi(&tree)?.core;
        let n = core.degree();
        if opts.target.is_some_and(|t| t != n) {
            continue;
        }
        let h = if p < 0 { psi_hat_inv(&core)? } else { psi_inv(&core)? };
        let base = h.base_length();
        if opts.exact_base && base != p {
            continue;
        }
        let map = h_tree_to_quad(&h)?;
        return Ok(QuadSample { map, h_tree: h, q_tree: core, n, base, attempts: attempt });
    }
    Err(Error::RejectionExhausted { attempts: opts.max_attempts })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSample {
    pub map: RigidQuadMap,
    pub h_tree: PartitionTree,
    pub q_tree: PartitionTree,
    /// Convex corners away from the base and co-base.
    pub n: usize,
    pub degeneracy: usize,
    pub attempts: u64,
}

/// Random Δ-type quadrangulation with base `p` and co-base `q`. Conditioned
/// on `n`, a map is drawn with probability proportional to the inverse of
/// its degeneracy. `opts.n_max` is the number of leaves hanging off the spine.
pub fn sample_delta_type<R: Rng + ?Sized>(p: i64, q: usize, opts: SampleOptions, rng: &mut R) -> Result<DeltaSample> {
    opts.check()?;
    if p < 1 || q < 1 {
        return bad_arg("base and co-base must be positive");
    }
    let s = opts.n_max;
    if s < q || (s as i64) < p {
        return bad_arg(format!("n_max must be at least max(p, q) = {}", (p as usize).max(q)));
    }
    for attempt in 1..=opts.max_attempts {
        let code = sample_forest_code(s, q, rng)?;
        let labels = leaf_labels(s, p - 1, rng)?;
        let blocks = split_forest(&code, &labels)?;
        let tree = spine_tree(p, &blocks)?;
        let valid = cycle_subtrees(&tree, p, q)?;
        if valid.is_empty() {
            return internal("a spine walk always has a good rotation");
        }
        let tree = rotate_spine(&tree, valid[rng.gen_range(0..valid.len())])?;
        let labels = spine_labels(&tree);
        let core = decompose_phi(&tree)?.core;
        let n = core.degree() - 1;
        if opts.target.is_some_and(|t| t != n) {
            continue;
        }
        if spine_labels(&core) != labels || !SpineKind::Delta.holds(&labels) {
            return internal("decomposition cut into the spine");
        }
        let h = psi_inv(&core)?;
        let map = h_tree_to_quad(&h)?;
        return Ok(DeltaSample { map, h_tree: h, q_tree: core, n, degeneracy: valid.len(), attempts: attempt });
    }
    Err(Error::RejectionExhausted { attempts: opts.max_attempts })
}

/// Splits a forest code and its leaf labels into zero-excess subtrees.
fn split_forest(code: &[bool], labels: &[i64]) -> Result<Vec<crate::tree::Sub>> {
    let mut out = Vec::new();
    let (mut start, mut leaf_start, mut depth, mut leaves) = (0, 0, 0i64, 0);
    for (i, &x) in code.iter().enumerate() {
        depth += if x { 1 } else { -1 };
        leaves += !x as usize;
        if depth == -1 {
            let t = PartitionTree::from_leaf_labels(&code[start..=i], &labels[leaf_start..leaves])?;
            out.push(t.sub(ROOT_EDGE));
            start = i + 1;
            leaf_start = leaves;
            depth = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn composition_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let c = sample_composition(7, 4, &mut rng).unwrap();
            assert_eq!(c.len(), 4);
            assert_eq!(c.iter().sum::<usize>(), 7);
        }
        assert_eq!(sample_composition(0, 0, &mut rng).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn forest_codes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let code = sample_forest_code(9, 3, &mut rng).unwrap();
            let blocks = split_forest(&code, &[0; 9]).unwrap();
            assert_eq!(blocks.len(), 3);
        }
    }

    #[test]
    fn shapes_cover_all_catalan_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        for _ in 0..2000 {
            *seen.entry(sample_shape(4, &mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn single_edge_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(sample_pre_q_tree(1, 0, &mut rng).unwrap(), PartitionTree::single_edge(0));
        assert!(sample_pre_q_tree(2, 2, &mut rng).is_err());
    }

    #[test]
    fn unit_square_at_minimal_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = sample_rigid_quad(1, SampleOptions::new(4).target(2), &mut rng).unwrap();
        assert_eq!(s.map.num_faces(), 1);
        let d = sample_delta_type(1, 1, SampleOptions::new(1), &mut rng).unwrap();
        assert_eq!(d.map, s.map);
        assert_eq!(d.degeneracy, 1);
    }

    #[test]
    fn budget_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let err = sample_rigid_quad(1, SampleOptions::new(30).target(30).max_attempts(3), &mut rng).unwrap_err();
        assert_eq!(err, Error::RejectionExhausted { attempts: 3 });
        assert!(sample_rigid_quad(2, SampleOptions::new(4).target(2), &mut rng).is_err());
    }
}
