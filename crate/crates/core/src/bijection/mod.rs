//! The recursive bijection between H-trees and rigid quadrangulations.
//!
//! Each internal vertex of an H-tree with signature `(p, a, b, k)` becomes a
//! minimal submap; the maps of its two subtrees are glued onto the submap's
//! seams. Conversely a rigid quadrangulation has exactly one minimal submap
//! containing its base, and ungluing it yields the two children.

mod cells;
mod glue;
mod signature;
mod submap;

use crate::error::{bad_arg, precondition, Error, Result};
use crate::map::{Analysis, RigidQuadMap, SideKind};
use crate::tree::{PartitionTree, Sub, TreeClass, VertexId, ROOT_EDGE};

pub(crate) use cells::{Cells, Dir};
use glue::{glue_seam, unglue, Locator};
pub use signature::{Signature, SubmapType};
use submap::{build_minimal_submap, Seam, Submap};

/// The minimal submap with signature `sig`, open seams marked.
pub fn minimal_submap(sig: Signature) -> Result<RigidQuadMap> {
    build_minimal_submap(sig)?.cells.to_map()
}

/// Seams in the order their children are glued: seams where the submap is
/// the combinatorially lower piece come first.
fn glue_order(sub: &Submap) -> Vec<(usize, &Seam)> {
    let up = sub.cells.comb_down().opp();
    let mut seams: Vec<(usize, &Seam)> =
        [&sub.left, &sub.right].into_iter().enumerate().filter_map(|(i, s)| s.as_ref().map(|s| (i, s))).collect();
    seams.sort_by_key(|(_, s)| s.dir != up);
    seams
}

fn build(t: &PartitionTree, v: VertexId) -> Result<Option<Cells>> {
    let Some((l, r)) = t.children(v) else {
        return Ok(None);
    };
    let sig = Signature::new(t.edge_label(v), t.edge_label(l), t.edge_label(r), t.vertex_label(v));
    let sub = build_minimal_submap(sig)?;
    let mut cells = sub.cells.clone();
    for (slot, seam) in glue_order(&sub) {
        let child = build(t, if slot == 0 { l } else { r })?
            .ok_or_else(|| Error::Internal(format!("signature {sig} has a seam for a leaf child")))?;
        glue_seam(&mut cells, seam, &child)?;
    }
    cells.compact();
    Ok(Some(cells))
}

/// Converts an H-tree to its rigid quadrangulation.
pub fn h_tree_to_quad(t: &PartitionTree) -> Result<RigidQuadMap> {
    t.validate(TreeClass::H)?;
    match build(t, ROOT_EDGE)? {
        None => Ok(RigidQuadMap::Corner),
        Some(c) => c.to_map(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CornerType {
    Convex,
    Straight,
    Concave,
}

/// The ungluing steps of a map: which seams exist, in unglue order.
fn plan(r: &Cells) -> Result<Vec<(usize, Locator)>> {
    let row = r.base_row();
    let classify = |f: usize, side: Dir| match r.nb(f, Dir::N) {
        None => CornerType::Convex,
        Some(x) if r.nb(x, side).is_none() => CornerType::Straight,
        Some(_) => CornerType::Concave,
    };
    let vl = classify(row[0], Dir::W);
    let vr = classify(*row.last().unwrap(), Dir::E);
    let mut steps = match (vl, vr) {
        (CornerType::Concave, CornerType::Concave) => {
            return Err(Error::NotRigid("both base corners are concave".into()))
        }
        (_, CornerType::Concave) => vec![(0, Locator::BarEast), (1, Locator::LegEast)],
        (CornerType::Concave, _) => vec![(0, Locator::LegWest), (1, Locator::BarWest)],
        _ => {
            let mut v = vec![];
            if vl == CornerType::Straight {
                v.push((0, Locator::LeftArm));
            }
            if vr == CornerType::Straight {
                v.push((1, Locator::RightArm));
            }
            v
        }
    };
    let down = r.comb_down();
    steps.sort_by_key(|(_, loc)| loc.dir() != down);
    Ok(steps)
}

struct Split {
    sig: Signature,
    kind: SubmapType,
    submap: Cells,
    children: [Option<Cells>; 2],
}

fn split(mut r: Cells) -> Result<Split> {
    let p = r.base_length()?;
    let steps = plan(&r)?;
    let mut children: [Option<Cells>; 2] = [None, None];
    for (slot, loc) in &steps {
        if matches!(loc, Locator::LegEast | Locator::LegWest) {
            // the leg may be absent (degenerate child)
            let bar = if *loc == Locator::LegEast { Locator::BarEast } else { Locator::BarWest }.locate(&r)?;
            let end = if *loc == Locator::LegEast { *bar.last().unwrap() } else { bar[0] };
            if r.nb(end, Dir::S).is_none() {
                continue;
            }
        }
        let strip = loc.locate(&r)?;
        children[*slot] = Some(unglue(&mut r, &strip, loc.dir())?);
    }
    let label = |c: &Option<Cells>| c.as_ref().map_or(Ok(0), |c| c.base_length());
    let (a, b) = (label(&children[0])?, label(&children[1])?);
    let sig = Signature::from_labels(p, a, b);
    let kind = sig.submap_type().map_err(|_| Error::NotRigid(format!("unglued signature {sig} is not allowed")))?;
    Ok(Split { sig, kind, submap: r, children })
}

fn to_sub(r: Option<Cells>) -> Result<Sub> {
    let Some(r) = r else {
        return Ok(Sub::leaf(0));
    };
    let s = split(r)?;
    let [l, rr] = s.children;
    Ok(Sub::node(s.sig.p, to_sub(l)?, to_sub(rr)?))
}

/// Converts a rigid quadrangulation to its H-tree.
pub fn quad_to_h_tree(m: &RigidQuadMap) -> Result<PartitionTree> {
    m.validate()?;
    let sub = to_sub(Cells::from_map(m)?)?;
    let t = PartitionTree::from_sub(&sub)?;
    if !t.is_class(TreeClass::H) {
        return Err(Error::Internal("decoded tree is not an H-tree".into()));
    }
    Ok(t)
}

/// The result of removing the children from a map's minimal submap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unglued {
    pub signature: Signature,
    pub kind: SubmapType,
    pub submap: RigidQuadMap,
    /// Child on seam `a`; the corner object when degenerate.
    pub left: RigidQuadMap,
    pub right: RigidQuadMap,
}

/// Finds the minimal submap containing the base and unglues both children.
pub fn find_minimal_submap(m: &RigidQuadMap) -> Result<Unglued> {
    m.validate()?;
    let Some(cells) = Cells::from_map(m)? else {
        return bad_arg("the corner object has no minimal submap");
    };
    let s = split(cells)?;
    let conv = |c: &Option<Cells>| c.as_ref().map_or(Ok(RigidQuadMap::Corner), |c| c.to_map());
    Ok(Unglued {
        signature: s.sig,
        kind: s.kind,
        submap: s.submap.to_map()?,
        left: conv(&s.children[0])?,
        right: conv(&s.children[1])?,
    })
}

fn glue_on_side(e: &RigidQuadMap, side: usize, u: &RigidQuadMap, want: SideKind) -> Result<RigidQuadMap> {
    let Some(d) = e.disk() else {
        return bad_arg("cannot glue onto the corner object");
    };
    let a = Analysis::new(d);
    let Some(s) = a.sides.get(side) else {
        return bad_arg(format!("side {side} does not exist"));
    };
    if !s.open || s.kind != want || side == 0 {
        return precondition(format!("side {side} is not an open {want:?} side"));
    }
    let Some(uc) = Cells::from_map(u)? else {
        return bad_arg("cannot glue the corner object");
    };
    if uc.base_open != (want == SideKind::Bottom) {
        return precondition("base of the glued map has the wrong sign");
    }
    let (mut cells, lookup) = Cells::from_map_indexed(e)?;
    let mut faces = Vec::new();
    let mut dir = Dir::N;
    for &h in &s.edges {
        let (f, dh) = lookup[&h];
        faces.push(f);
        dir = dh;
    }
    if dir == Dir::S {
        faces.reverse();
    }
    glue_seam(&mut cells, &Seam { faces, dir }, &uc)?;
    cells.compact();
    cells.to_map()
}

/// Glues `u` (positive base-length) onto the open top side `side` of `e`.
pub fn glue_top(e: &RigidQuadMap, side: usize, u: &RigidQuadMap) -> Result<RigidQuadMap> {
    glue_on_side(e, side, u, SideKind::Top)
}

/// Glues `u` (negative base-length) onto the open bottom side `side` of `e`.
pub fn glue_bottom(e: &RigidQuadMap, side: usize, u: &RigidQuadMap) -> Result<RigidQuadMap> {
    glue_on_side(e, side, u, SideKind::Bottom)
}
