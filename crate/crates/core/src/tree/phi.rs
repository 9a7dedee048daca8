use std::collections::HashSet;

use super::paths::{build_paths, descend};
use super::{EdgeId, PartitionTree, Sub, TreeClass, ROOT_EDGE};
use crate::error::{bad_arg, internal, Result};

/// A pre-Q-tree split into a Q-tree core and one base-0 pre-Q-tree per core leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub core: PartitionTree,
    /// Left to right, one per leaf of `core`.
    pub removed: Vec<PartitionTree>,
}

fn shift_root_path(t: &mut PartitionTree, by: i64) -> Result<()> {
    for e in descend(t, ROOT_EDGE)? {
        t.set_edge_label(e, t.edge_label(e) + by);
    }
    Ok(())
}

/// Cuts a pre-Q-tree at the strongest edges reachable from the root without
/// crossing another strongest edge.
pub fn decompose_phi(q: &PartitionTree) -> Result<Decomposition> {
    q.validate(TreeClass::PreQ)?;
    let paths = build_paths(q)?;
    let strongest: HashSet<EdgeId> = paths.paths.iter().map(|p| p.strongest_edge(q)).collect();
    let mut cuts = Vec::new();
    let core = cut(q, ROOT_EDGE, &strongest, &mut cuts)?;
    let mut removed = Vec::with_capacity(cuts.len());
    for e in cuts {
        let mut t = PartitionTree::from_sub(&q.sub(e))?;
        shift_root_path(&mut t, -q.edge_label(e))?;
        removed.push(t);
    }
    let core = PartitionTree::from_sub(&core)?;
    if !core.is_class(TreeClass::Q) {
        return internal("decomposition core is not a Q-tree");
    }
    Ok(Decomposition { core, removed })
}

fn cut(q: &PartitionTree, e: EdgeId, strongest: &HashSet<EdgeId>, cuts: &mut Vec<EdgeId>) -> Result<Sub> {
    if strongest.contains(&e) {
        cuts.push(e);
        return Ok(Sub::leaf(q.edge_label(e)));
    }
    match q.children(e) {
        Some((l, r)) => {
            let l = cut(q, l, strongest, cuts)?;
            let r = cut(q, r, strongest, cuts)?;
            Ok(Sub::node(q.edge_label(e), l, r))
        }
        None => internal(format!("leaf edge {e} is not below any strongest edge")),
    }
}

/// Inverse of [`decompose_phi`]: grafts the `i`-th removed tree onto the
/// `i`-th leaf of `core` after raising its Root path by that leaf's label.
pub fn compose_phi_inv(core: &PartitionTree, removed: &[PartitionTree]) -> Result<PartitionTree> {
    core.validate(TreeClass::Q)?;
    if removed.len() != core.degree() {
        return bad_arg(format!("core has {} leaves but {} trees were given", core.degree(), removed.len()));
    }
    let mut grafts = Vec::with_capacity(removed.len());
    for (t, leaf) in removed.iter().zip(core.leaves()) {
        t.validate(TreeClass::PreQ)?;
        if t.base_length() != 0 {
            return bad_arg("removed trees must have base label 0");
        }
        let mut t = t.clone();
        shift_root_path(&mut t, core.edge_label(leaf))?;
        grafts.push(t.sub(ROOT_EDGE));
    }
    let mut it = grafts.into_iter();
    let sub = graft(core, ROOT_EDGE, &mut it);
    PartitionTree::from_sub(&sub)
}

fn graft(core: &PartitionTree, e: EdgeId, it: &mut impl Iterator<Item = Sub>) -> Sub {
    match core.children(e) {
        Some((l, r)) => {
            let l = graft(core, l, it);
            let r = graft(core, r, it);
            Sub::node(core.edge_label(e), l, r)
        }
        None => it.next().expect("one graft per leaf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_tree_decomposes_into_single_edges() {
        let q = PartitionTree::new(&[true, false, false], &[-1, 0, -2]).unwrap();
        let d = decompose_phi(&q).unwrap();
        assert_eq!(d.core, q);
        assert!(d.removed.iter().all(|t| *t == PartitionTree::single_edge(0)));
        assert_eq!(compose_phi_inv(&d.core, &d.removed).unwrap(), q);
    }

    #[test]
    fn weak_root_path_is_cut() {
        let q = PartitionTree::from_leaf_labels(&[true, true, false, false, false], &[0, -1, -2]).unwrap();
        let d = decompose_phi(&q).unwrap();
        assert_eq!(d.core.degree(), 2);
        assert_eq!(d.removed[0].degree(), 2);
        assert_eq!(compose_phi_inv(&d.core, &d.removed).unwrap(), q);
    }
}
