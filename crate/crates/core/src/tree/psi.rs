use super::paths::build_paths;
use super::{PartitionTree, PathKind, TreeClass};
use crate::error::{bad_arg, internal, Result};

fn shift(t: &mut PartitionTree, edges: &[usize], by: i64) {
    for &e in edges {
        t.set_edge_label(e, t.edge_label(e) + by);
    }
}

fn finish(mut t: PartitionTree, class: TreeClass) -> Result<PartitionTree> {
    t.rebalance()?;
    if !t.is_class(class) {
        return internal(format!("path transform did not produce a {class} tree"));
    }
    Ok(t)
}

/// H-tree to well-based Q-tree: every Regular path is lowered by the vertex
/// label of the bottom vertex it starts at.
pub fn psi(h: &PartitionTree) -> Result<PartitionTree> {
    h.validate(TreeClass::H)?;
    let paths = build_paths(h)?;
    let mut out = h.clone();
    for p in &paths.paths {
        if let PathKind::Regular(v) = p.kind {
            shift(&mut out, &p.edges, -h.vertex_label(v));
        }
    }
    finish(out, TreeClass::WellBasedQ)
}

/// Inverse of [`psi`]: Regular paths are raised until they end on a zero
/// edge, and the amount becomes the vertex label.
pub fn psi_inv(q: &PartitionTree) -> Result<PartitionTree> {
    q.validate(TreeClass::WellBasedQ)?;
    let paths = build_paths(q)?;
    let mut out = q.clone();
    for p in &paths.paths {
        if let PathKind::Regular(_) = p.kind {
            shift(&mut out, &p.edges, -q.edge_label(p.last_edge()));
        }
    }
    finish(out, TreeClass::H)
}

/// H-tree with base `p'` in `[p, 0]` to a Q-tree with base `p < 0`: [`psi`]
/// followed by lowering the Root path by `p' - p`.
pub fn psi_hat(h: &PartitionTree, p: i64) -> Result<PartitionTree> {
    let base = h.base_length();
    if p >= 0 || base < p || base > 0 {
        return bad_arg(format!("need p < 0 and p <= base <= 0, got p = {p}, base = {base}"));
    }
    let mut out = psi(h)?;
    let paths = build_paths(&out)?;
    let root = paths.root_path().expect("non-positive base has a root path");
    shift(&mut out, &root.edges, p - base);
    finish(out, TreeClass::Q)
}

/// Inverse of [`psi_hat`]; the base of the returned H-tree is
/// `p - f_E(last edge of the Root path)`.
pub fn psi_hat_inv(q: &PartitionTree) -> Result<PartitionTree> {
    q.validate(TreeClass::Q)?;
    if q.base_length() >= 0 {
        return bad_arg("psi_hat_inv needs a negative base");
    }
    let paths = build_paths(q)?;
    let root = paths.root_path().expect("negative base has a root path");
    let mut out = q.clone();
    shift(&mut out, &root.edges, -q.edge_label(root.last_edge()));
    psi_inv(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cherry_example() {
        let h = PartitionTree::new(&[true, false, false], &[-1, 0, 0]).unwrap();
        let q = psi(&h).unwrap();
        assert_eq!(q.edge_labels(), vec![-1, 0, -2]);
        assert_eq!(psi_inv(&q).unwrap(), h);
    }

    #[test]
    fn psi_hat_lowers_the_root_path() {
        let h = PartitionTree::new(&[true, false, false], &[-1, 0, 0]).unwrap();
        let q = psi_hat(&h, -3).unwrap();
        assert_eq!(q.base_length(), -3);
        assert!(!q.is_class(TreeClass::WellBasedQ));
        assert_eq!(psi_hat_inv(&q).unwrap(), h);
    }

    #[test]
    fn rejects_wrong_class() {
        let not_h = PartitionTree::new(&[true, false, false], &[0, 0, -1]).unwrap();
        assert!(psi(&not_h).is_err());
        let h = PartitionTree::single_edge(0);
        assert!(psi_hat(&h, 1).is_err());
    }
}
