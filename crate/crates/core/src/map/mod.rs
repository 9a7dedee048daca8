//! Rigid quadrangulations of the disk as half-edge maps.
//!
//! A map is stored through two permutations of its half-edges: `opposite`
//! (the edge involution) and `next`, the clockwise rotation around the
//! origin vertex. The face to the left of `h` is traced by
//! `fnext(h) = next[opposite[h]]`. The root half-edge lies on the boundary
//! with the outer face on its left and starts at the convex corner ending
//! the base; walking `fnext` from it visits the boundary clockwise.

mod analysis;
mod serial;

use std::collections::{HashMap, VecDeque};

use crate::error::{bad_arg, Error, Result};

pub use analysis::{
    Corner, CornerCensus, MapViolation, Ray, RayDirection, Side, SideKind,
};
pub(crate) use analysis::Analysis;
pub use serial::MapDoc;

pub type HalfEdge = usize;

/// A rooted quadrangulated disk with marked open sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disk {
    opposite: Vec<HalfEdge>,
    next: Vec<HalfEdge>,
    root: HalfEdge,
    /// Side indices, counted clockwise from the base (side 0).
    open_sides: Vec<usize>,
}

/// A rigid quadrangulation, or the degenerate single corner of base-length 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RigidQuadMap {
    Corner,
    Disk(Disk),
}

impl Disk {
    /// Checks the permutation data, connectivity and planarity, then
    /// relabels half-edges canonically. Rigidity is checked separately by
    /// [`RigidQuadMap::violations`].
    pub fn new(opposite: Vec<HalfEdge>, next: Vec<HalfEdge>, root: HalfEdge, open_sides: Vec<usize>) -> Result<Self> {
        let n = opposite.len();
        if n == 0 || n % 2 != 0 || next.len() != n {
            return bad_arg("half-edge arrays must be nonempty, of equal and even length");
        }
        if root >= n {
            return bad_arg("root half-edge out of range");
        }
        for h in 0..n {
            let o = opposite[h];
            if o >= n || o == h || opposite[o] != h {
                return Err(Error::Malformed(format!("opposite is not a fixed-point-free involution at {h}")));
            }
        }
        let mut seen = vec![false; n];
        for &x in &next {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Malformed("next is not a permutation".into()));
            }
        }
        let mut d = Disk { opposite, next, root, open_sides };
        d.open_sides.sort_unstable();
        d.open_sides.dedup();
        let order = d.bfs_order();
        if order.len() != n {
            return Err(Error::Malformed("map is not connected".into()));
        }
        let a = Analysis::new(&d);
        let euler = a.num_vertices as i64 - (n / 2) as i64 + a.faces.len() as i64;
        if euler != 2 {
            return Err(Error::Malformed(format!("map is not planar (Euler characteristic {euler})")));
        }
        if let Some(&s) = d.open_sides.last() {
            if s >= a.sides.len() {
                return bad_arg(format!("open side {s} does not exist"));
            }
        }
        Ok(d.relabel(&order))
    }

    /// Builds a disk from quadrilateral faces given as counterclockwise vertex
    /// lists. `root` is a boundary edge `(u, v)` traversed with the interior
    /// on its right; `open_edges` are boundary edges (same orientation) whose
    /// sides are open, and `base_open` marks the base.
    pub fn from_faces(
        faces: &[Vec<usize>],
        root: (usize, usize),
        open_edges: &[(usize, usize)],
        base_open: bool,
    ) -> Result<Self> {
        let mut origin = Vec::new();
        let mut dest = Vec::new();
        let mut fnext = Vec::new();
        let mut by_ends: HashMap<(usize, usize), HalfEdge> = HashMap::new();
        for f in faces {
            let k = f.len();
            if k < 3 {
                return bad_arg("faces need at least three vertices");
            }
            let first = origin.len();
            for i in 0..k {
                let (a, b) = (f[i], f[(i + 1) % k]);
                if by_ends.insert((a, b), first + i).is_some() {
                    return Err(Error::Malformed(format!("directed edge {a}->{b} used twice")));
                }
                origin.push(a);
                dest.push(b);
                fnext.push(first + (i + 1) % k);
            }
        }
        let inner = origin.len();
        let mut opposite = vec![usize::MAX; inner];
        let mut outer_from: HashMap<usize, HalfEdge> = HashMap::new();
        for h in 0..inner {
            if let Some(&o) = by_ends.get(&(dest[h], origin[h])) {
                opposite[h] = o;
            } else {
                let o = origin.len();
                origin.push(dest[h]);
                dest.push(origin[h]);
                opposite[h] = o;
                opposite.push(h);
                fnext.push(usize::MAX);
                if outer_from.insert(dest[h], o).is_some() {
                    return Err(Error::Malformed(format!("vertex {} is pinched on the boundary", dest[h])));
                }
                by_ends.insert((dest[h], origin[h]), o);
            }
        }
        for o in inner..origin.len() {
            fnext[o] = *outer_from
                .get(&dest[o])
                .ok_or_else(|| Error::Malformed("boundary is not a closed walk".into()))?;
        }
        let next: Vec<HalfEdge> = (0..origin.len()).map(|h| fnext[opposite[h]]).collect();
        let Some(&root_he) = by_ends.get(&root).filter(|&&h| h >= inner) else {
            return bad_arg("root is not a boundary edge traversed with the interior on its right");
        };
        let raw = Disk { opposite, next, root: root_he, open_sides: vec![] };
        let a = Analysis::new(&raw);
        let mut open = Vec::new();
        if base_open {
            open.push(0);
        }
        for e in open_edges {
            match by_ends.get(e).filter(|&&h| h >= inner) {
                Some(&h) => open.push(a.side_of_edge[h].expect("outer half-edges lie on sides")),
                None => return bad_arg(format!("open edge {e:?} is not on the boundary")),
            }
        }
        Disk::new(raw.opposite, raw.next, raw.root, open)
    }

    fn bfs_order(&self) -> Vec<HalfEdge> {
        let n = self.opposite.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(h) = queue.pop_front() {
            order.push(h);
            for x in [self.opposite[h], self.next[h]] {
                if !seen[x] {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        order
    }

    fn relabel(&self, order: &[HalfEdge]) -> Self {
        let mut new_id = vec![0; order.len()];
        for (i, &h) in order.iter().enumerate() {
            new_id[h] = i;
        }
        let map = |v: &Vec<HalfEdge>| order.iter().map(|&h| new_id[v[h]]).collect::<Vec<_>>();
        Disk {
            opposite: map(&self.opposite),
            next: map(&self.next),
            root: new_id[self.root],
            open_sides: self.open_sides.clone(),
        }
    }

    pub fn num_half_edges(&self) -> usize {
        self.opposite.len()
    }

    pub fn opposite(&self) -> &[HalfEdge] {
        &self.opposite
    }

    pub fn next(&self) -> &[HalfEdge] {
        &self.next
    }

    pub fn root(&self) -> HalfEdge {
        self.root
    }

    pub fn open_sides(&self) -> &[usize] {
        &self.open_sides
    }

    pub fn fnext(&self, h: HalfEdge) -> HalfEdge {
        self.next[self.opposite[h]]
    }

    pub fn base_open(&self) -> bool {
        self.open_sides.first() == Some(&0)
    }
}

impl RigidQuadMap {
    pub fn is_corner(&self) -> bool {
        matches!(self, RigidQuadMap::Corner)
    }

    pub fn disk(&self) -> Option<&Disk> {
        match self {
            RigidQuadMap::Corner => None,
            RigidQuadMap::Disk(d) => Some(d),
        }
    }

    /// Every violated rigidity condition; empty for rigid maps.
    pub fn violations(&self) -> Vec<MapViolation> {
        match self {
            RigidQuadMap::Corner => vec![],
            RigidQuadMap::Disk(d) => Analysis::new(d).violations(d),
        }
    }

    pub fn is_rigid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::NotRigid(format!("{v:?}"))),
        }
    }

    /// Base-length: the number of base edges for a closed base, minus the
    /// size of the base for an open one, zero for the corner.
    pub fn base_length(&self) -> Result<i64> {
        match self {
            RigidQuadMap::Corner => Ok(0),
            RigidQuadMap::Disk(d) => {
                self.validate()?;
                let a = Analysis::new(d);
                let sides = a.sides.clone();
                let rays = a.rays(d, &sides)?;
                let base = &sides[0];
                Ok(if d.base_open() {
                    -(a.rays_starting_on(&rays, 0) as i64 + 1)
                } else {
                    base.edges.len() as i64
                })
            }
        }
    }

    /// Half the number of corners; the corner object has degree one.
    pub fn degree(&self) -> usize {
        match self {
            RigidQuadMap::Corner => 1,
            RigidQuadMap::Disk(d) => {
                let c = Analysis::new(d).census();
                (c.convex + c.concave) / 2
            }
        }
    }

    pub fn sides(&self) -> Vec<Side> {
        match self {
            RigidQuadMap::Corner => vec![],
            RigidQuadMap::Disk(d) => Analysis::new(d).sides,
        }
    }

    /// All rays, oriented; fails on maps with untypable rays.
    pub fn rays(&self) -> Result<Vec<Ray>> {
        match self {
            RigidQuadMap::Corner => Ok(vec![]),
            RigidQuadMap::Disk(d) => {
                let a = Analysis::new(d);
                let sides = a.sides.clone();
                a.rays(d, &sides)
            }
        }
    }

    /// Rays ending at inner vertices of `side`, ordered from the side's start.
    pub fn rays_ending_on(&self, side: usize) -> Result<Vec<Ray>> {
        let RigidQuadMap::Disk(d) = self else { return Ok(vec![]) };
        let a = Analysis::new(d);
        let sides = a.sides.clone();
        let s = sides.get(side).ok_or_else(|| Error::InvalidArgument(format!("no side {side}")))?;
        let rays = a.rays(d, &sides)?;
        Ok(s.edges[1..]
            .iter()
            .filter_map(|&h| rays.iter().find(|r| r.end == a.vert[h]).cloned())
            .collect())
    }

    /// Corner type of a boundary vertex.
    pub fn corner(&self, v: usize) -> Option<Corner> {
        let RigidQuadMap::Disk(d) = self else { return Some(Corner::Convex) };
        let a = Analysis::new(d);
        (v < a.num_vertices && a.on_boundary[v]).then(|| a.corner(v))
    }

    pub fn census(&self) -> CornerCensus {
        match self {
            RigidQuadMap::Corner => CornerCensus { convex: 1, ..Default::default() },
            RigidQuadMap::Disk(d) => Analysis::new(d).census(),
        }
    }

    pub fn num_faces(&self) -> usize {
        self.census().faces
    }
}

#[cfg(test)]
mod tests;
