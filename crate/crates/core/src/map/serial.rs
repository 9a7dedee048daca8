use serde::{Deserialize, Serialize};

use super::{Disk, RigidQuadMap};
use crate::error::{Error, Result};

/// JSON form of a map. The corner object has no half-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub num_half_edges: usize,
    pub opposite: Vec<usize>,
    pub next: Vec<usize>,
    pub root: usize,
    pub open_sides: Vec<usize>,
}

impl RigidQuadMap {
    pub fn to_doc(&self) -> MapDoc {
        match self {
            RigidQuadMap::Corner => MapDoc { num_half_edges: 0, opposite: vec![], next: vec![], root: 0, open_sides: vec![] },
            RigidQuadMap::Disk(d) => MapDoc {
                num_half_edges: d.num_half_edges(),
                opposite: d.opposite.clone(),
                next: d.next.clone(),
                root: d.root,
                open_sides: d.open_sides.clone(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("map documents always serialize")
    }

    /// Parses a map document and checks rigidity.
    pub fn from_doc(doc: &MapDoc) -> Result<Self> {
        if doc.num_half_edges == 0 {
            return Ok(RigidQuadMap::Corner);
        }
        if doc.opposite.len() != doc.num_half_edges || doc.next.len() != doc.num_half_edges {
            return Err(Error::Malformed("array lengths disagree with num_half_edges".into()));
        }
        let d = Disk::new(doc.opposite.clone(), doc.next.clone(), doc.root, doc.open_sides.clone())?;
        let m = RigidQuadMap::Disk(d);
        m.validate()?;
        Ok(m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MapDoc = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }
}
