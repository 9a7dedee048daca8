//! Labelled binary trees: partition trees and the H, pre-Q and Q subclasses.
//!
//! A tree of degree `n` has `n` leaves, `n - 1` internal vertices of degree
//! three and a root vertex `v0` of degree one. Vertices are numbered in
//! preorder: `0` is `v0`, `1` is the far end of the root edge `e0`. An edge is
//! identified with its child vertex, so edge `e0` has id `1`.

mod paths;
mod phi;
mod psi;
mod serial;

use std::fmt;

use crate::error::{bad_arg, Error, Result};

pub use paths::{build_paths, Path, PathKind, PathSystem};
pub use phi::{compose_phi_inv, decompose_phi, Decomposition};
pub use psi::{psi, psi_hat, psi_hat_inv, psi_inv};
pub use serial::TreeDoc;

pub type VertexId = usize;
/// Edges are named by their child vertex.
pub type EdgeId = usize;

pub const ROOT: VertexId = 0;
pub const ROOT_EDGE: EdgeId = 1;

/// Recursive form of a subtree hanging below an edge, used for surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sub {
    pub label: i64,
    pub kids: Option<Box<(Sub, Sub)>>,
}

impl Sub {
    pub fn leaf(label: i64) -> Self {
        Self { label, kids: None }
    }

    pub fn node(label: i64, left: Sub, right: Sub) -> Self {
        Self { label, kids: Some(Box::new((left, right))) }
    }
}

/// A partition tree: edge labels `f_E` and nonnegative vertex labels `f_V`
/// with `f_V(v) = f_E(l) + f_E(r) - f_E(parent) + 1` at every internal vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionTree {
    parent: Vec<VertexId>,
    kids: Vec<Option<[VertexId; 2]>>,
    label: Vec<i64>,
    excess: Vec<i64>,
}

/// Top or bottom, for internal vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Top,
    Bottom,
}

/// Tree classes, each contained in the previous except that H and pre-Q are
/// incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeClass {
    Partition,
    H,
    PreQ,
    Q,
    WellBasedQ,
}

impl TreeClass {
    pub fn name(self) -> &'static str {
        match self {
            TreeClass::Partition => "partition",
            TreeClass::H => "h",
            TreeClass::PreQ => "pre-q",
            TreeClass::Q => "q",
            TreeClass::WellBasedQ => "well-based-q",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "partition" => TreeClass::Partition,
            "h" => TreeClass::H,
            "pre-q" | "preq" => TreeClass::PreQ,
            "q" => TreeClass::Q,
            "well-based-q" | "wellbasedq" | "well-based" => TreeClass::WellBasedQ,
            other => return bad_arg(format!("unknown tree class '{other}'")),
        })
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which defining property a tree fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// An edge label is zero exactly on leaf edges.
    LeafEdgesZero,
    /// Top vertices carry vertex label zero.
    TopVerticesZero,
    /// Leaf edges carry non-positive labels.
    LeafEdgesNonPositive,
    /// All vertex labels vanish.
    VertexLabelsZero,
    /// Every path is strong.
    StrongPaths,
    /// The base is positive or the root path ends on a zero edge.
    WellBased,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    /// Offending vertex or edge, when there is one.
    pub location: Option<VertexId>,
}

impl PartitionTree {
    /// The one-edge tree.
    pub fn single_edge(label: i64) -> Self {
        Self::from_sub(&Sub::leaf(label)).expect("a single edge is always a partition tree")
    }

    /// Builds a tree from a preorder shape (`true` = internal vertex, starting
    /// at the far end of `e0`) and preorder edge labels (`e0` first).
    /// Vertex labels are derived; negative ones are rejected.
    pub fn new(shape: &[bool], edge_labels: &[i64]) -> Result<Self> {
        if shape.len() != edge_labels.len() {
            return bad_arg("shape and edge labels differ in length");
        }
        let mut pos = 0;
        let sub = parse_shape(shape, edge_labels, &mut pos)?;
        if pos != shape.len() {
            return bad_arg("shape string has trailing symbols");
        }
        Self::from_sub(&sub)
    }

    /// Like [`PartitionTree::new`] but with explicit vertex labels (one per
    /// internal vertex, in preorder) that must satisfy the balance relation.
    pub fn with_vertex_labels(shape: &[bool], edge_labels: &[i64], vertex_labels: &[i64]) -> Result<Self> {
        let t = Self::new(shape, edge_labels)?;
        let derived: Vec<i64> = t.internal_vertices().map(|v| t.excess[v]).collect();
        if derived.len() != vertex_labels.len() {
            return bad_arg("wrong number of vertex labels");
        }
        if derived != vertex_labels {
            return Err(Error::Malformed("vertex labels violate the balance relation".into()));
        }
        Ok(t)
    }

    /// Builds a tree with all vertex labels zero from a shape and its leaf labels.
    pub fn from_leaf_labels(shape: &[bool], leaf_labels: &[i64]) -> Result<Self> {
        let mut pos = 0;
        let mut leaf = 0;
        let sub = zero_excess_sub(shape, leaf_labels, &mut pos, &mut leaf)?;
        if pos != shape.len() || leaf != leaf_labels.len() {
            return bad_arg("shape and leaf labels do not match");
        }
        Self::from_sub(&sub)
    }

    pub(crate) fn from_sub(sub: &Sub) -> Result<Self> {
        let mut t = PartitionTree {
            parent: vec![usize::MAX],
            kids: vec![None],
            label: vec![0],
            excess: vec![0],
        };
        t.push_sub(sub, ROOT);
        for v in 1..t.len() {
            if let Some([l, r]) = t.kids[v] {
                let e = t.label[l] + t.label[r] - t.label[v] + 1;
                if e < 0 {
                    return Err(Error::Malformed(format!("vertex {v} would get negative label {e}")));
                }
                t.excess[v] = e;
            }
        }
        Ok(t)
    }

    fn push_sub(&mut self, sub: &Sub, parent: VertexId) -> VertexId {
        let v = self.parent.len();
        self.parent.push(parent);
        self.kids.push(None);
        self.label.push(sub.label);
        self.excess.push(0);
        if let Some(k) = &sub.kids {
            let l = self.push_sub(&k.0, v);
            let r = self.push_sub(&k.1, v);
            self.kids[v] = Some([l, r]);
        }
        v
    }

    pub(crate) fn sub(&self, v: VertexId) -> Sub {
        match self.kids[v] {
            None => Sub::leaf(self.label[v]),
            Some([l, r]) => Sub::node(self.label[v], self.sub(l), self.sub(r)),
        }
    }

    /// Number of vertices including `v0`.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        self.len() / 2
    }

    /// Label of the root edge.
    pub fn base_length(&self) -> i64 {
        self.label[ROOT_EDGE]
    }

    /// `f_E` of the edge whose child is `e`.
    pub fn edge_label(&self, e: EdgeId) -> i64 {
        self.label[e]
    }

    /// `f_V`; zero for leaves.
    pub fn vertex_label(&self, v: VertexId) -> i64 {
        self.excess[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        (v != ROOT).then(|| self.parent[v])
    }

    /// Left and right children of an internal vertex.
    pub fn children(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        self.kids[v].map(|[l, r]| (l, r))
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        v != ROOT && self.kids[v].is_none()
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        self.kids[v].is_some()
    }

    /// Internal vertices in preorder.
    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (1..self.len()).filter(move |&v| self.kids[v].is_some())
    }

    /// Leaves, left to right.
    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        (1..self.len()).filter(move |&v| self.kids[v].is_none())
    }

    /// Edges in preorder (`e0` first).
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        1..self.len()
    }

    /// Preorder shape string over vertices `1..`, `true` for internal.
    pub fn shape(&self) -> Vec<bool> {
        (1..self.len()).map(|v| self.kids[v].is_some()).collect()
    }

    pub fn edge_labels(&self) -> Vec<i64> {
        self.label[1..].to_vec()
    }

    /// Vertex labels of internal vertices in preorder.
    pub fn vertex_labels(&self) -> Vec<i64> {
        self.internal_vertices().map(|v| self.excess[v]).collect()
    }

    pub(crate) fn set_edge_label(&mut self, e: EdgeId, label: i64) {
        self.label[e] = label;
    }

    /// Recomputes vertex labels from edge labels, failing if one is negative.
    pub(crate) fn rebalance(&mut self) -> Result<()> {
        for v in 1..self.len() {
            if let Some([l, r]) = self.kids[v] {
                let e = self.label[l] + self.label[r] - self.label[v] + 1;
                if e < 0 {
                    return Err(Error::Internal(format!("negative vertex label at {v}")));
                }
                self.excess[v] = e;
            }
        }
        Ok(())
    }

    /// Whether the balance relation and nonnegativity hold.
    pub fn is_balanced(&self) -> bool {
        self.internal_vertices().all(|v| {
            let [l, r] = self.kids[v].unwrap();
            self.excess[v] >= 0 && self.excess[v] == self.label[l] + self.label[r] - self.label[v] + 1
        })
    }

    /// Top/bottom type of an internal vertex.
    pub fn classify_vertex(&self, v: VertexId) -> Result<VertexKind> {
        if v >= self.len() {
            return bad_arg(format!("vertex {v} does not exist"));
        }
        let Some([l, r]) = self.kids[v] else {
            return bad_arg(format!("vertex {v} is not an internal vertex"));
        };
        let ind = |e: EdgeId| (self.label[e] <= 0) as u8;
        Ok(if ind(v) < ind(l) + ind(r) { VertexKind::Bottom } else { VertexKind::Top })
    }

    /// All violated defining properties of `class`.
    pub fn violations(&self, class: TreeClass) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |clause, location| out.push(Violation { clause, location });
        match class {
            TreeClass::Partition => {}
            TreeClass::H => {
                for e in self.edges() {
                    if (self.label[e] == 0) != self.is_leaf(e) {
                        push(Clause::LeafEdgesZero, Some(e));
                    }
                }
                for v in self.internal_vertices() {
                    if self.classify_vertex(v) == Ok(VertexKind::Top) && self.excess[v] != 0 {
                        push(Clause::TopVerticesZero, Some(v));
                    }
                }
            }
            TreeClass::PreQ | TreeClass::Q | TreeClass::WellBasedQ => {
                for e in self.leaves() {
                    if self.label[e] > 0 {
                        push(Clause::LeafEdgesNonPositive, Some(e));
                    }
                }
                for v in self.internal_vertices() {
                    if self.excess[v] != 0 {
                        push(Clause::VertexLabelsZero, Some(v));
                    }
                }
                if class != TreeClass::PreQ && out.is_empty() {
                    let paths = build_paths(self).expect("pre-Q trees have path systems");
                    for p in &paths.paths {
                        if !p.is_strong(self) {
                            out.push(Violation { clause: Clause::StrongPaths, location: Some(p.edges[0]) });
                        }
                    }
                    if class == TreeClass::WellBasedQ && out.is_empty() && !is_well_based_unchecked(self, &paths) {
                        out.push(Violation { clause: Clause::WellBased, location: Some(ROOT_EDGE) });
                    }
                }
            }
        }
        out
    }

    pub fn is_class(&self, class: TreeClass) -> bool {
        self.violations(class).is_empty()
    }

    pub fn validate(&self, class: TreeClass) -> Result<()> {
        match self.violations(class).first() {
            None => Ok(()),
            Some(v) => Err(Error::Precondition(format!(
                "tree is not of class {class}: {:?} fails at {:?}",
                v.clause, v.location
            ))),
        }
    }
}

fn is_well_based_unchecked(t: &PartitionTree, paths: &PathSystem) -> bool {
    t.base_length() > 0 || paths.root_path().is_some_and(|p| t.edge_label(p.last_edge()) == 0)
}

fn parse_shape(shape: &[bool], labels: &[i64], pos: &mut usize) -> Result<Sub> {
    let Some(&internal) = shape.get(*pos) else {
        return bad_arg("shape string ends early");
    };
    let label = labels[*pos];
    *pos += 1;
    if internal {
        let l = parse_shape(shape, labels, pos)?;
        let r = parse_shape(shape, labels, pos)?;
        Ok(Sub::node(label, l, r))
    } else {
        Ok(Sub::leaf(label))
    }
}

fn zero_excess_sub(shape: &[bool], leaf_labels: &[i64], pos: &mut usize, leaf: &mut usize) -> Result<Sub> {
    let Some(&internal) = shape.get(*pos) else {
        return bad_arg("shape string ends early");
    };
    *pos += 1;
    if internal {
        let l = zero_excess_sub(shape, leaf_labels, pos, leaf)?;
        let r = zero_excess_sub(shape, leaf_labels, pos, leaf)?;
        let label = l.label + r.label + 1;
        Ok(Sub::node(label, l, r))
    } else {
        let Some(&label) = leaf_labels.get(*leaf) else {
            return bad_arg("not enough leaf labels");
        };
        *leaf += 1;
        Ok(Sub::leaf(label))
    }
}
