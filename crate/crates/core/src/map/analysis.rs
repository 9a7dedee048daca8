use super::{Disk, HalfEdge};
use crate::error::{Error, Result};

/// A maximal boundary segment between two corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub index: usize,
    /// Outer half-edges in clockwise order.
    pub edges: Vec<HalfEdge>,
    pub start: usize,
    pub end: usize,
    /// Quarter turns from the base direction, in `0..4`.
    pub turn: u8,
    pub open: bool,
    pub kind: SideKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideKind {
    Top,
    Bottom,
    Vertical,
}

impl Side {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayDirection {
    Up,
    Down,
    Horizontal,
}

/// A maximal straight chain of inner edges, oriented from its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub edges: Vec<HalfEdge>,
    pub start: usize,
    pub end: usize,
    /// Starts at a concave corner.
    pub closed: bool,
    pub direction: RayDirection,
}

impl Ray {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CornerCensus {
    pub convex: usize,
    pub concave: usize,
    pub straight: usize,
    pub inner_vertices: usize,
    pub faces: usize,
    pub edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    Convex,
    Straight,
    Concave,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    RootFaceNotSimple,
    FaceDegree { face: usize, degree: usize },
    InnerVertexDegree { vertex: usize, degree: usize },
    BoundaryVertexDegree { vertex: usize, degree: usize },
    RootNotAtConvexCorner,
    BaseEndNotConvex,
    UntypedRay { from: usize, to: usize },
    OpenSideNotHorizontal { side: usize },
    OpenSideCorners { side: usize },
}

pub(crate) struct Analysis {
    /// Origin vertex of each half-edge.
    pub vert: Vec<usize>,
    pub num_vertices: usize,
    pub degree: Vec<usize>,
    pub face_of: Vec<usize>,
    pub faces: Vec<Vec<HalfEdge>>,
    pub root_face: usize,
    /// Root face cycle starting at the root.
    pub boundary: Vec<HalfEdge>,
    pub on_boundary: Vec<bool>,
    pub sides: Vec<Side>,
    pub side_of_edge: Vec<Option<usize>>,
    /// For straight boundary vertices, the side containing them.
    pub side_of_vertex: Vec<Option<usize>>,
}

impl Analysis {
    pub fn new(d: &Disk) -> Self {
        let n = d.opposite.len();
        let mut vert = vec![usize::MAX; n];
        let mut degree = Vec::new();
        for h in 0..n {
            if vert[h] != usize::MAX {
                continue;
            }
            let v = degree.len();
            let mut k = 0;
            let mut x = h;
            loop {
                vert[x] = v;
                k += 1;
                x = d.next[x];
                if x == h {
                    break;
                }
            }
            degree.push(k);
        }
        let num_vertices = degree.len();
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for h in 0..n {
            if face_of[h] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut cyc = Vec::new();
            let mut x = h;
            loop {
                face_of[x] = f;
                cyc.push(x);
                x = d.fnext(x);
                if x == h {
                    break;
                }
            }
            faces.push(cyc);
        }
        let root_face = face_of[d.root];
        let mut boundary = vec![d.root];
        let mut x = d.fnext(d.root);
        while x != d.root {
            boundary.push(x);
            x = d.fnext(x);
        }
        let mut on_boundary = vec![false; num_vertices];
        for &h in &boundary {
            on_boundary[vert[h]] = true;
        }
        let mut a = Analysis {
            vert,
            num_vertices,
            degree,
            face_of,
            faces,
            root_face,
            boundary,
            on_boundary,
            sides: vec![],
            side_of_edge: vec![None; n],
            side_of_vertex: vec![None; num_vertices],
        };
        a.build_sides(d);
        a
    }

    pub fn dest(&self, d: &Disk, h: HalfEdge) -> usize {
        self.vert[d.opposite[h]]
    }

    pub fn corner(&self, v: usize) -> Corner {
        match self.degree[v] {
            2 => Corner::Convex,
            3 => Corner::Straight,
            _ => Corner::Concave,
        }
    }

    fn build_sides(&mut self, d: &Disk) {
        let mut sides: Vec<Side> = Vec::new();
        let mut turn: i64 = 0;
        for &h in &self.boundary {
            let v = self.vert[h];
            let is_corner = self.degree[v] != 3;
            if sides.is_empty() || is_corner {
                if !sides.is_empty() {
                    turn += match self.degree[v] {
                        2 => 1,
                        4 => -1,
                        _ => 0,
                    };
                }
                let index = sides.len();
                sides.push(Side {
                    index,
                    edges: vec![],
                    start: v,
                    end: v,
                    turn: turn.rem_euclid(4) as u8,
                    open: d.open_sides.binary_search(&index).is_ok(),
                    kind: SideKind::Vertical,
                });
            } else {
                self.side_of_vertex[v] = Some(sides.len() - 1);
            }
            let s = sides.last_mut().unwrap();
            s.edges.push(h);
            s.end = self.vert[d.opposite[h]];
            self.side_of_edge[h] = Some(s.index);
        }
        let base_open = d.base_open();
        for s in &mut sides {
            s.kind = match (s.turn, base_open) {
                (1 | 3, _) => SideKind::Vertical,
                (0, false) | (2, true) => SideKind::Bottom,
                _ => SideKind::Top,
            };
        }
        self.sides = sides;
    }

    fn is_inner_edge(&self, d: &Disk, h: HalfEdge) -> bool {
        self.face_of[h] != self.root_face && self.face_of[d.opposite[h]] != self.root_face
    }

    /// Unoriented rays as `(half-edges, first vertex, last vertex)`.
    fn trace(&self, d: &Disk) -> Result<Vec<(Vec<HalfEdge>, usize, usize)>> {
        let n = d.opposite.len();
        let mut used = vec![false; n];
        let mut out = Vec::new();
        for &b in &self.boundary {
            let v = self.vert[b];
            let mut h = b;
            loop {
                if self.is_inner_edge(d, h) && !used[h] {
                    let mut chain = Vec::new();
                    let mut cur = h;
                    let end = loop {
                        used[cur] = true;
                        used[d.opposite[cur]] = true;
                        chain.push(cur);
                        if chain.len() > n {
                            return Err(Error::NotRigid("ray does not terminate".into()));
                        }
                        let w = self.dest(d, cur);
                        if self.on_boundary[w] {
                            break w;
                        }
                        if self.degree[w] != 4 {
                            return Err(Error::NotRigid(format!("inner vertex {w} is not flat")));
                        }
                        cur = d.next[d.next[d.opposite[cur]]];
                    };
                    out.push((chain, v, end));
                }
                h = d.next[h];
                if h == b {
                    break;
                }
            }
        }
        Ok(out)
    }

    fn type_ray(&self, d: &Disk, sides: &[Side], chain: Vec<HalfEdge>, a: usize, b: usize) -> std::result::Result<Ray, MapViolation> {
        let untyped = MapViolation::UntypedRay { from: a, to: b };
        let flip = |chain: Vec<HalfEdge>| chain.iter().rev().map(|&h| d.opposite[h]).collect::<Vec<_>>();
        let concave = |v: usize| self.corner(v) == Corner::Concave;
        let side = |v: usize| self.side_of_vertex[v].map(|s| &sides[s]);
        let (chain, start, end, closed) = match (concave(a), concave(b)) {
            (true, true) => return Err(untyped),
            (true, false) => (chain, a, b, true),
            (false, true) => (flip(chain), b, a, true),
            (false, false) => {
                let (sa, sb) = (side(a).ok_or(untyped.clone())?, side(b).ok_or(untyped.clone())?);
                let top = |s: &Side| s.open && s.kind == SideKind::Top;
                let bottom = |s: &Side| s.open && s.kind == SideKind::Bottom;
                if top(sa) || (!top(sb) && bottom(sa)) {
                    (chain, a, b, false)
                } else if top(sb) || bottom(sb) {
                    (flip(chain), b, a, false)
                } else {
                    return Err(untyped);
                }
            }
        };
        let direction = match side(end).ok_or(untyped.clone())?.kind {
            SideKind::Top => RayDirection::Up,
            SideKind::Bottom => RayDirection::Down,
            SideKind::Vertical => RayDirection::Horizontal,
        };
        Ok(Ray { edges: chain, start, end, closed, direction })
    }

    pub fn rays(&self, d: &Disk, sides: &[Side]) -> Result<Vec<Ray>> {
        self.trace(d)?
            .into_iter()
            .map(|(c, a, b)| self.type_ray(d, sides, c, a, b).map_err(|v| Error::NotRigid(format!("{v:?}"))))
            .collect()
    }

    pub fn rays_starting_on(&self, rays: &[Ray], side: usize) -> usize {
        rays.iter().filter(|r| self.side_of_vertex[r.start] == Some(side)).count()
    }

    pub fn census(&self) -> CornerCensus {
        let mut c = CornerCensus {
            faces: self.faces.len() - 1,
            edges: self.vert.len() / 2,
            ..Default::default()
        };
        for v in 0..self.num_vertices {
            if !self.on_boundary[v] {
                c.inner_vertices += 1;
                continue;
            }
            match self.corner(v) {
                Corner::Convex => c.convex += 1,
                Corner::Straight => c.straight += 1,
                Corner::Concave => c.concave += 1,
            }
        }
        c
    }

    pub fn violations(&self, d: &Disk) -> Vec<MapViolation> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.num_vertices];
        for &h in &self.boundary {
            if std::mem::replace(&mut seen[self.vert[h]], true) {
                out.push(MapViolation::RootFaceNotSimple);
                return out;
            }
        }
        for (f, cyc) in self.faces.iter().enumerate() {
            if f != self.root_face && cyc.len() != 4 {
                out.push(MapViolation::FaceDegree { face: f, degree: cyc.len() });
            }
        }
        for v in 0..self.num_vertices {
            let degree = self.degree[v];
            if self.on_boundary[v] {
                if !(2..=4).contains(&degree) {
                    out.push(MapViolation::BoundaryVertexDegree { vertex: v, degree });
                }
            } else if degree != 4 {
                out.push(MapViolation::InnerVertexDegree { vertex: v, degree });
            }
        }
        if self.degree[self.vert[d.root]] != 2 {
            out.push(MapViolation::RootNotAtConvexCorner);
        }
        if self.degree[self.sides[0].end] != 2 {
            out.push(MapViolation::BaseEndNotConvex);
        }
        for s in &self.sides {
            if s.open && s.kind == SideKind::Vertical {
                out.push(MapViolation::OpenSideNotHorizontal { side: s.index });
            }
            if s.open && (self.degree[s.start] != 2 || self.degree[s.end] != 2) {
                out.push(MapViolation::OpenSideCorners { side: s.index });
            }
        }
        if !out.is_empty() {
            return out;
        }
        match self.trace(d) {
            Err(_) => out.push(MapViolation::UntypedRay { from: usize::MAX, to: usize::MAX }),
            Ok(raw) => {
                for (c, a, b) in raw {
                    if let Err(v) = self.type_ray(d, &self.sides, c, a, b) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}
