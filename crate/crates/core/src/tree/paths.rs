use super::{EdgeId, PartitionTree, VertexId, VertexKind, ROOT_EDGE};
use crate::error::{precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Starts at a bottom vertex with its rightmost non-positive child edge.
    Regular(VertexId),
    /// Starts with the root edge; exists when the base label is non-positive.
    Root,
    /// Starts with the left child edge of a bottom vertex whose parent edge is
    /// positive and whose child edges are both non-positive.
    Special(VertexId),
}

/// A descending chain of non-positive edges ending on a leaf edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub kind: PathKind,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn last_edge(&self) -> EdgeId {
        *self.edges.last().expect("paths are nonempty")
    }

    /// The maximal-label edge closest to the root.
    pub fn strongest_edge(&self, t: &PartitionTree) -> EdgeId {
        let mut best = self.edges[0];
        for &e in &self.edges[1..] {
            if t.edge_label(e) > t.edge_label(best) {
                best = e;
            }
        }
        best
    }

    /// The last edge carries the unique maximal label.
    pub fn is_strong(&self, t: &PartitionTree) -> bool {
        self.strongest_edge(t) == self.last_edge()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn root_path(&self) -> Option<&Path> {
        self.paths.iter().find(|p| p.kind == PathKind::Root)
    }

    pub fn regular_path(&self, v: VertexId) -> Option<&Path> {
        self.paths.iter().find(|p| p.kind == PathKind::Regular(v))
    }

    pub fn special_path(&self, v: VertexId) -> Option<&Path> {
        self.paths.iter().find(|p| p.kind == PathKind::Special(v))
    }
}

/// Follows leftmost non-positive child edges from `e` down to a leaf.
pub(crate) fn descend(t: &PartitionTree, e: EdgeId) -> Result<Vec<EdgeId>> {
    let mut out = vec![e];
    let mut cur = e;
    while let Some((l, r)) = t.children(cur) {
        cur = if t.edge_label(l) <= 0 {
            l
        } else if t.edge_label(r) <= 0 {
            r
        } else {
            return precondition(format!("vertex {cur} below a non-positive edge has no non-positive child"));
        };
        out.push(cur);
    }
    Ok(out)
}

/// All Regular, Root and Special paths of an H-tree or pre-Q-tree.
/// Order: Root path first, then per internal vertex in preorder its Regular
/// and Special paths.
pub fn build_paths(t: &PartitionTree) -> Result<PathSystem> {
    let mut paths = Vec::new();
    if t.base_length() <= 0 {
        paths.push(Path { kind: PathKind::Root, edges: descend(t, ROOT_EDGE)? });
    }
    for v in t.internal_vertices() {
        if t.classify_vertex(v)? != VertexKind::Bottom {
            continue;
        }
        let (l, r) = t.children(v).unwrap();
        let start = if t.edge_label(r) <= 0 { r } else { l };
        paths.push(Path { kind: PathKind::Regular(v), edges: descend(t, start)? });
        if t.edge_label(v) > 0 && t.edge_label(l) <= 0 && t.edge_label(r) <= 0 {
            paths.push(Path { kind: PathKind::Special(v), edges: descend(t, l)? });
        }
    }
    paths_checked(t, paths)
}

fn paths_checked(t: &PartitionTree, paths: Vec<Path>) -> Result<PathSystem> {
    let mut seen = vec![false; t.len()];
    for p in &paths {
        for &e in &p.edges {
            if std::mem::replace(&mut seen[e], true) {
                return precondition(format!("edge {e} lies on two paths"));
            }
        }
    }
    if let Some(e) = t.edges().find(|&e| t.edge_label(e) <= 0 && !seen[e]) {
        return precondition(format!("non-positive edge {e} lies on no path"));
    }
    Ok(PathSystem { paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cherry_below_negative_root() {
        let t = PartitionTree::new(&[true, false, false], &[-1, 0, 0]).unwrap();
        let ps = build_paths(&t).unwrap();
        assert_eq!(ps.root_path().unwrap().edges, vec![1, 2]);
        assert_eq!(ps.regular_path(1).unwrap().edges, vec![3]);
        assert!(ps.special_path(1).is_none());
    }

    #[test]
    fn special_path_under_positive_parent() {
        let t = PartitionTree::new(&[true, false, false], &[1, 0, 0]).unwrap();
        let ps = build_paths(&t).unwrap();
        assert!(ps.root_path().is_none());
        assert_eq!(ps.regular_path(1).unwrap().edges, vec![3]);
        assert_eq!(ps.special_path(1).unwrap().edges, vec![2]);
    }

    #[test]
    fn strongest_edge_prefers_the_top() {
        let t = PartitionTree::from_leaf_labels(&[true, true, false, false, false], &[0, -1, -2]).unwrap();
        let ps = build_paths(&t).unwrap();
        let root = ps.root_path().unwrap();
        assert_eq!(root.edges, vec![1, 2, 3]);
        assert_eq!(root.strongest_edge(&t), 2);
        assert!(!root.is_strong(&t));
    }
}
