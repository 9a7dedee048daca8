//! Immersion of rigid quadrangulations into the square grid, with JSON and
//! SVG output.
//!
//! Coordinates have the y-axis pointing up. The root vertex sits at the
//! origin. A closed base runs from the root towards `-x` with the interior
//! above it; an open base runs towards `+x` with the interior below.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde_json::json;

use crate::error::{internal, Result};
use crate::map::{Analysis, RigidQuadMap};

pub type Point = (i64, i64);

const UNIT: [Point; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// A locally isometric drawing of a map in the square grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridImmersion {
    /// Position of every vertex.
    pub vertices: Vec<Point>,
    /// Lower-left corner of the unit cell covered by each inner face.
    pub faces: Vec<Point>,
    /// Number of faces covering each covered cell.
    pub overlaps: BTreeMap<Point, usize>,
    /// Boundary vertices, clockwise from the root.
    pub boundary: Vec<usize>,
    pub root: usize,
    /// Second vertex of the root edge, if there is one.
    pub root_next: Option<usize>,
}

impl GridImmersion {
    /// Sum of the quarter turns along the boundary, traversed with the
    /// interior on the left.
    pub fn turning_number(&self) -> i64 {
        let k = self.boundary.len();
        if k < 2 {
            return 4;
        }
        let dir = |i: usize| {
            let (a, b) = (self.vertices[self.boundary[i]], self.vertices[self.boundary[(i + 1) % k]]);
            UNIT.iter().position(|&u| u == (b.0 - a.0, b.1 - a.1)).unwrap_or(0) as i64
        };
        let clockwise: i64 = (0..k)
            .map(|i| match (dir((i + 1) % k) - dir(i)).rem_euclid(4) {
                1 => 1,
                3 => -1,
                _ => 0,
            })
            .sum();
        -clockwise
    }

    /// Whether walking the boundary edges returns to the start.
    pub fn boundary_closes(&self) -> bool {
        let k = self.boundary.len();
        let (mut x, mut y) = (0i64, 0i64);
        for i in 0..k {
            let (a, b) = (self.vertices[self.boundary[i]], self.vertices[self.boundary[(i + 1) % k]]);
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 && k > 1 {
                return false;
            }
            x += b.0 - a.0;
            y += b.1 - a.1;
        }
        (x, y) == (0, 0)
    }

    pub fn max_overlap(&self) -> usize {
        self.overlaps.values().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let pts = |v: &[Point]| v.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>();
        let overlaps: Vec<_> = self.overlaps.iter().map(|(&(x, y), &c)| json!([[x, y], c])).collect();
        let doc = json!({
            "vertices": pts(&self.vertices),
            "faces": pts(&self.faces),
            "overlaps": overlaps,
            "boundary": self.boundary,
            "root": self.root,
        });
        serde_json::to_string_pretty(&doc).expect("json values serialize")
    }

    /// An SVG drawing: faces shaded by how many faces cover their cell, the
    /// boundary, and the root edge in red.
    pub fn to_svg(&self) -> String {
        const S: i64 = 20;
        const M: i64 = 1;
        let xs = self.vertices.iter().map(|p| p.0);
        let ys = self.vertices.iter().map(|p| p.1);
        let (x0, x1) = (xs.clone().min().unwrap_or(0) - M, xs.max().unwrap_or(0) + M);
        let (y0, y1) = (ys.clone().min().unwrap_or(0) - M, ys.max().unwrap_or(0) + M);
        let sx = |x: i64| (x - x0) * S;
        let sy = |y: i64| (y1 - y) * S;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = (x1 - x0) * S,
            h = (y1 - y0) * S
        );
        let _ = writeln!(out, r#"<g stroke="gray" stroke-width="1">"#);
        for &(x, y) in &self.faces {
            let g = shade(self.overlaps[&(x, y)]);
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{S}" height="{S}" fill="rgb({g},{g},{g})"/>"#,
                sx(x),
                sy(y + 1)
            );
        }
        let _ = writeln!(out, "</g>");
        if self.boundary.len() > 1 {
            let pts: Vec<String> = self
                .boundary
                .iter()
                .map(|&v| format!("{},{}", sx(self.vertices[v].0), sy(self.vertices[v].1)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
                pts.join(" ")
            );
        }
        let (rx, ry) = self.vertices[self.root];
        if let Some(v) = self.root_next {
            let (ax, ay) = self.vertices[v];
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="3"/>"#,
                sx(rx),
                sy(ry),
                sx(ax),
                sy(ay)
            );
        }
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="red"/>"#, sx(rx), sy(ry));
        out.push_str("</svg>\n");
        out
    }
}

/// Gray level for a cell covered `k` times; strictly darker as `k` grows.
pub fn shade(k: usize) -> u8 {
    let k = k.clamp(1, 12) as u32;
    (235 - 17 * (k - 1)) as u8
}

/// Draws the map in the grid by propagating edge directions: a quarter turn
/// left along each face, a half turn across each edge.
pub fn immerse(m: &RigidQuadMap) -> Result<GridImmersion> {
    let d = match m {
        RigidQuadMap::Corner => {
            return Ok(GridImmersion {
                vertices: vec![(0, 0)],
                faces: vec![],
                overlaps: BTreeMap::new(),
                boundary: vec![0],
                root: 0,
                root_next: None,
            })
        }
        RigidQuadMap::Disk(d) => d,
    };
    let a = Analysis::new(d);
    let n = d.num_half_edges();
    let mut dir: Vec<Option<u8>> = vec![None; n];
    let root_dir = if d.base_open() { 0 } else { 2 };
    dir[d.root()] = Some(root_dir);
    let mut queue = VecDeque::from([d.root()]);
    let mut prev = vec![0; n];
    for h in 0..n {
        prev[d.fnext(h)] = h;
    }
    while let Some(h) = queue.pop_front() {
        let v = dir[h].unwrap();
        assign(&mut dir, d.opposite()[h], (v + 2) % 4, &mut queue)?;
        if a.face_of[h] != a.root_face {
            assign(&mut dir, d.fnext(h), (v + 1) % 4, &mut queue)?;
            assign(&mut dir, prev[h], (v + 3) % 4, &mut queue)?;
        }
    }
    let mut pos: Vec<Option<Point>> = vec![None; a.num_vertices];
    let root = a.vert[d.root()];
    pos[root] = Some((0, 0));
    let mut stack = vec![root];
    let mut out_edges: Vec<Vec<usize>> = vec![vec![]; a.num_vertices];
    for h in 0..n {
        out_edges[a.vert[h]].push(h);
    }
    while let Some(v) = stack.pop() {
        let (x, y) = pos[v].unwrap();
        for &h in &out_edges[v] {
            let (dx, dy) = UNIT[dir[h].ok_or_else(|| crate::Error::Internal("unreached half-edge".into()))? as usize];
            let w = a.dest(d, h);
            let p = (x + dx, y + dy);
            match pos[w] {
                None => {
                    pos[w] = Some(p);
                    stack.push(w);
                }
                Some(q) if q == p => {}
                Some(_) => return internal(format!("position conflict at vertex {w}")),
            }
        }
    }
    let vertices: Vec<Point> = pos.into_iter().map(|p| p.expect("connected")).collect();
    let mut faces = Vec::new();
    let mut overlaps = BTreeMap::new();
    for (f, cyc) in a.faces.iter().enumerate() {
        if f == a.root_face {
            continue;
        }
        let cell = cyc
            .iter()
            .map(|&h| vertices[a.vert[h]])
            .min()
            .expect("faces are nonempty");
        faces.push(cell);
        *overlaps.entry(cell).or_insert(0) += 1;
    }
    Ok(GridImmersion {
        boundary: a.boundary.iter().map(|&h| a.vert[h]).collect(),
        root,
        root_next: Some(a.dest(d, d.root())),
        vertices,
        faces,
        overlaps,
    })
}

fn assign(dir: &mut [Option<u8>], h: usize, v: u8, queue: &mut VecDeque<usize>) -> Result<()> {
    match dir[h] {
        None => {
            dir[h] = Some(v);
            queue.push_back(h);
            Ok(())
        }
        Some(w) if w == v => Ok(()),
        Some(_) => internal(format!("direction conflict at half-edge {h}; the map is not flat")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{h_tree_to_quad, minimal_submap, Signature};
    use crate::PartitionTree;

    fn unit_square() -> RigidQuadMap {
        h_tree_to_quad(&PartitionTree::new(&[true, false, false], &[1, 0, 0]).unwrap()).unwrap()
    }

    #[test]
    fn unit_square_corners() {
        let g = immerse(&unit_square()).unwrap();
        let mut v = g.vertices.clone();
        v.sort();
        assert_eq!(v, vec![(-1, 0), (-1, 1), (0, 0), (0, 1)]);
        assert_eq!(g.vertices[g.root], (0, 0));
        assert_eq!(g.faces, vec![(-1, 0)]);
        assert_eq!(g.max_overlap(), 1);
        assert_eq!(g.turning_number(), 4);
        assert!(g.boundary_closes());
    }

    #[test]
    fn open_base_hangs_below() {
        let m = minimal_submap(Signature::from_labels(-2, 0, 0)).unwrap();
        let g = immerse(&m).unwrap();
        assert_eq!(g.vertices[g.root_next.unwrap()], (1, 0));
        assert!(g.faces.iter().all(|&(_, y)| y < 0));
        assert_eq!(g.turning_number(), 4);
    }

    #[test]
    fn corner_is_a_point() {
        let g = immerse(&RigidQuadMap::Corner).unwrap();
        assert_eq!(g.vertices, vec![(0, 0)]);
        assert!(g.to_svg().contains("<circle"));
    }

    #[test]
    fn shading_darkens() {
        assert!((1..12).all(|k| shade(k + 1) < shade(k)));
        assert_eq!(shade(40), shade(12));
    }

    #[test]
    fn svg_has_one_rect_per_face() {
        let svg = immerse(&unit_square()).unwrap().to_svg();
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(svg.contains("<polygon") && svg.contains("<line"));
    }
}
