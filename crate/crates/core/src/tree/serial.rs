use serde::{Deserialize, Serialize};

use super::{PartitionTree, TreeClass};
use crate::error::{Error, Result};

/// Canonical JSON form of a labelled tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub class: String,
    pub degree: usize,
    pub base_length: i64,
    /// Preorder from the far end of the root edge, `1` internal, `0` leaf.
    pub shape: String,
    /// Preorder, root edge first.
    pub edge_labels: Vec<i64>,
    /// Internal vertices in preorder.
    pub vertex_labels: Vec<i64>,
}

impl PartitionTree {
    pub fn to_doc(&self, class: TreeClass) -> TreeDoc {
        TreeDoc {
            class: class.name().to_string(),
            degree: self.degree(),
            base_length: self.base_length(),
            shape: self.shape().iter().map(|&b| if b { '1' } else { '0' }).collect(),
            edge_labels: self.edge_labels(),
            vertex_labels: self.vertex_labels(),
        }
    }

    pub fn to_json(&self, class: TreeClass) -> String {
        serde_json::to_string(&self.to_doc(class)).expect("tree documents always serialize")
    }

    /// Parses and validates a tree document, including its declared class.
    pub fn from_doc(doc: &TreeDoc) -> Result<(Self, TreeClass)> {
        let class = TreeClass::parse(&doc.class)?;
        let shape = doc
            .shape
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::Malformed(format!("bad shape symbol '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let t = PartitionTree::with_vertex_labels(&shape, &doc.edge_labels, &doc.vertex_labels)?;
        if t.degree() != doc.degree || t.base_length() != doc.base_length {
            return Err(Error::Malformed("degree or base length disagrees with the tree".into()));
        }
        t.validate(class)?;
        Ok((t, class))
    }

    pub fn from_json(s: &str) -> Result<(Self, TreeClass)> {
        let doc: TreeDoc = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }
}
