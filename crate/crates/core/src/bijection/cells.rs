//! Flat square complexes with a global compass frame.
//!
//! Every face knows its neighbour across each of its four sides. In the
//! standard frame the base lies along the bottom (south) of the complex and
//! the root face is the easternmost base face.

use std::collections::{HashMap, VecDeque};

use crate::error::{internal, Error, Result};
use crate::map::{Analysis, Disk, RigidQuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Dir {
    E = 0,
    N = 1,
    W = 2,
    S = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn idx(self) -> usize {
        self as usize
    }

    pub fn opp(self) -> Dir {
        Dir::ALL[(self.idx() + 2) % 4]
    }

    fn ccw(self) -> Dir {
        Dir::ALL[(self.idx() + 1) % 4]
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Cell {
    pub nb: [Option<usize>; 4],
    /// Boundary sides that belong to an open side other than the base.
    pub open: [bool; 4],
    pub alive: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Cells {
    pub cells: Vec<Cell>,
    pub root: usize,
    pub base_open: bool,
}

impl Cells {
    pub fn nb(&self, f: usize, d: Dir) -> Option<usize> {
        self.cells[f].nb[d.idx()]
    }

    /// Sets `f`'s neighbour across `d`, and the back pointer.
    pub fn link(&mut self, f: usize, d: Dir, g: Option<usize>) {
        self.cells[f].nb[d.idx()] = g;
        if let Some(g) = g {
            self.cells[g].nb[d.opp().idx()] = Some(f);
        }
    }

    fn set_open(&mut self, f: usize, d: Dir, v: bool) {
        self.cells[f].open[d.idx()] = v;
    }

    fn is_open(&self, f: usize, d: Dir) -> bool {
        self.cells[f].open[d.idx()]
    }

    fn new_cell(&mut self) -> usize {
        self.cells.push(Cell { alive: true, ..Default::default() });
        self.cells.len() - 1
    }

    /// Direction pointing from the base into the complex, combinatorially downward.
    pub fn comb_down(&self) -> Dir {
        if self.base_open {
            Dir::N
        } else {
            Dir::S
        }
    }

    /// Builds a complex from unit grid cells given by their south-west corners.
    pub fn from_grid(
        coords: &[(i64, i64)],
        root: (i64, i64),
        base_open: bool,
        open: &[((i64, i64), Dir)],
    ) -> (Cells, HashMap<(i64, i64), usize>) {
        let ids: HashMap<(i64, i64), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut cells = Cells {
            cells: vec![Cell { alive: true, ..Default::default() }; coords.len()],
            root: ids[&root],
            base_open,
        };
        for (i, &(x, y)) in coords.iter().enumerate() {
            for (d, (dx, dy)) in Dir::ALL.into_iter().zip([(1, 0), (0, 1), (-1, 0), (0, -1)]) {
                cells.cells[i].nb[d.idx()] = ids.get(&(x + dx, y + dy)).copied();
            }
        }
        for &(c, d) in open {
            cells.set_open(ids[&c], d, true);
        }
        (cells, ids)
    }

    /// Rotates the frame by a half turn.
    pub fn rotate180(&mut self) {
        for c in &mut self.cells {
            c.nb = [c.nb[2], c.nb[3], c.nb[0], c.nb[1]];
            c.open = [c.open[2], c.open[3], c.open[0], c.open[1]];
        }
    }

    /// Appends another complex's cells; returns the id offset.
    pub fn absorb(&mut self, other: &Cells) -> usize {
        let off = self.cells.len();
        for c in &other.cells {
            let mut c = c.clone();
            for n in c.nb.iter_mut().flatten() {
                *n += off;
            }
            self.cells.push(c);
        }
        off
    }

    /// `f` followed by its successive neighbours in direction `d`.
    pub fn walk(&self, f: usize, d: Dir) -> Vec<usize> {
        let mut out = vec![f];
        let mut cur = f;
        while let Some(g) = self.nb(cur, d) {
            out.push(g);
            cur = g;
            if out.len() > self.cells.len() {
                break;
            }
        }
        out
    }

    pub fn to_end(&self, f: usize, d: Dir) -> usize {
        *self.walk(f, d).last().unwrap()
    }

    /// Row of faces `f` belongs to, west to east, restricted to `f`'s W/E chain.
    pub fn row_through(&self, f: usize) -> Vec<usize> {
        self.walk(self.to_end(f, Dir::W), Dir::E)
    }

    /// Follows the line between the adjacent faces `l` (west) and `r` (east)
    /// in direction `d`. Returns whether it ends at a concave corner.
    pub fn ray_ends_concave(&self, mut l: usize, mut r: usize, d: Dir) -> Result<bool> {
        loop {
            match (self.nb(l, d), self.nb(r, d)) {
                (Some(ln), Some(rn)) => {
                    if self.nb(ln, Dir::E) != Some(rn) {
                        return Err(Error::NotRigid("vertex surrounded by four faces is not flat".into()));
                    }
                    l = ln;
                    r = rn;
                }
                (None, None) => return Ok(false),
                _ => return Ok(true),
            }
        }
    }

    /// Base faces, west to east.
    pub fn base_row(&self) -> Vec<usize> {
        self.walk(self.to_end(self.root, Dir::W), Dir::E)
    }

    /// Number of D rays meeting the seam whose faces are `row`, followed in `d`.
    fn count_straight_ends(&self, row: &[usize], d: Dir) -> Result<usize> {
        let mut k = 0;
        for w in row.windows(2) {
            if !self.ray_ends_concave(w[0], w[1], d)? {
                k += 1;
            }
        }
        Ok(k)
    }

    pub fn base_length(&self) -> Result<i64> {
        let row = self.base_row();
        if self.base_open {
            Ok(-(self.count_straight_ends(&row, Dir::N)? as i64 + 1))
        } else {
            Ok(row.len() as i64)
        }
    }

    /// Splits the column starting at `start` and running in `d` into `k`
    /// side-by-side columns. The original ids stay on the east pieces.
    /// Returns the pieces of `start`, west to east.
    pub fn split_column(&mut self, start: usize, d: Dir, k: usize) -> Vec<usize> {
        let col = self.walk(start, d);
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(col.len());
        for &c in &col {
            let mut pieces: Vec<usize> = (0..k - 1).map(|_| self.new_cell()).collect();
            pieces.push(c);
            let old_w = self.nb(c, Dir::W);
            let w_open = self.is_open(c, Dir::W);
            self.link(pieces[0], Dir::W, old_w);
            self.set_open(pieces[0], Dir::W, w_open);
            for i in 0..k - 1 {
                self.link(pieces[i], Dir::E, Some(pieces[i + 1]));
            }
            if k > 1 {
                self.set_open(c, Dir::W, false);
            }
            let (d_open, b_open) = (self.is_open(c, d), self.is_open(c, d.opp()));
            for &p in &pieces[..k - 1] {
                self.set_open(p, d, d_open);
                self.set_open(p, d.opp(), b_open);
            }
            rows.push(pieces);
        }
        for t in 0..rows.len() {
            for i in 0..k - 1 {
                let up = rows.get(t + 1).map(|r| r[i]);
                self.cells[rows[t][i]].nb[d.idx()] = up;
                let down = if t > 0 { Some(rows[t - 1][i]) } else { self.nb(col[0], d.opp()) };
                self.cells[rows[t][i]].nb[d.opp().idx()] = down;
            }
        }
        rows.swap_remove(0)
    }

    /// Merges the adjacent columns starting at `l` (west) and `r` (east) and
    /// running in `d`; the east ids survive.
    pub fn merge_column(&mut self, mut l: usize, mut r: usize, d: Dir) -> Result<()> {
        loop {
            if self.nb(l, Dir::E) != Some(r) {
                return internal("columns to merge are not adjacent");
            }
            let w = self.nb(l, Dir::W);
            self.cells[r].nb[Dir::W.idx()] = None;
            self.link(r, Dir::W, w);
            let w_open = self.is_open(l, Dir::W);
            self.set_open(r, Dir::W, w_open);
            let (ln, rn) = (self.nb(l, d), self.nb(r, d));
            self.cells[l].alive = false;
            match (ln, rn) {
                (None, None) => {
                    let o = self.is_open(l, d) || self.is_open(r, d);
                    self.set_open(r, d, o);
                    return Ok(());
                }
                (Some(a), Some(b)) => {
                    l = a;
                    r = b;
                }
                _ => return internal("column merge ran into a corner"),
            }
        }
    }

    /// Identifies `keep[i]` with `drop[i]`, where `drop` lies across `toward` from `keep`.
    pub fn merge_rows(&mut self, keep: &[usize], drop: &[usize], toward: Dir) -> Result<()> {
        if keep.len() != drop.len() {
            return internal("seam rows differ in length");
        }
        for (&k, &x) in keep.iter().zip(drop) {
            let far = self.nb(x, toward);
            self.cells[k].nb[toward.idx()] = None;
            self.link(k, toward, far);
            let o = self.is_open(x, toward);
            self.set_open(k, toward, o);
            self.cells[x].alive = false;
        }
        Ok(())
    }

    /// Duplicates the strip: the originals keep the `e_dir` side, new faces
    /// take the other side. Returns the new faces, west to east.
    pub fn cut_strip(&mut self, strip: &[usize], e_dir: Dir) -> Vec<usize> {
        let o = e_dir.opp();
        let new: Vec<usize> = strip.iter().map(|_| self.new_cell()).collect();
        for (i, (&t, &n)) in strip.iter().zip(&new).enumerate() {
            let far = self.nb(t, o);
            let far_open = self.is_open(t, o);
            self.link(n, o, far);
            self.set_open(n, o, far_open);
            self.cells[t].nb[o.idx()] = None;
            self.set_open(t, o, true);
            if i > 0 {
                self.link(n, Dir::W, Some(new[i - 1]));
            }
        }
        new
    }

    pub fn component(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.cells.len()];
        let mut out = vec![];
        let mut q = VecDeque::from([start]);
        seen[start] = true;
        while let Some(f) = q.pop_front() {
            out.push(f);
            for g in self.cells[f].nb.iter().flatten() {
                if !seen[*g] {
                    seen[*g] = true;
                    q.push_back(*g);
                }
            }
        }
        out
    }

    /// Moves the listed faces into a new complex (root set to the first one).
    pub fn extract(&mut self, ids: &[usize]) -> (Cells, HashMap<usize, usize>) {
        let map: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut out = Cells { cells: Vec::with_capacity(ids.len()), root: 0, base_open: false };
        for &f in ids {
            let mut c = self.cells[f].clone();
            for n in c.nb.iter_mut() {
                *n = n.and_then(|g| map.get(&g).copied());
            }
            out.cells.push(c);
            self.cells[f].alive = false;
        }
        (out, map)
    }

    /// Drops dead faces and renumbers the rest.
    pub fn compact(&mut self) {
        let mut map = vec![usize::MAX; self.cells.len()];
        let mut k = 0;
        for (i, c) in self.cells.iter().enumerate() {
            if c.alive {
                map[i] = k;
                k += 1;
            }
        }
        let cells = std::mem::take(&mut self.cells);
        self.cells = cells
            .into_iter()
            .filter(|c| c.alive)
            .map(|mut c| {
                for n in c.nb.iter_mut() {
                    *n = n.map(|g| map[g]).filter(|&g| g != usize::MAX);
                }
                c
            })
            .collect();
        self.root = map[self.root];
    }

    /// Converts to a canonical half-edge map.
    pub fn to_map(&self) -> Result<RigidQuadMap> {
        let alive: Vec<usize> = (0..self.cells.len()).filter(|&f| self.cells[f].alive).collect();
        if alive.is_empty() {
            return Ok(RigidQuadMap::Corner);
        }
        let idx: HashMap<usize, usize> = alive.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        // corners: 0 SW, 1 SE, 2 NE, 3 NW
        let mut uf: Vec<usize> = (0..4 * alive.len()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            uf[ra] = rb;
        };
        for (i, &f) in alive.iter().enumerate() {
            if let Some(g) = self.nb(f, Dir::E) {
                let j = idx[&g];
                union(&mut uf, 4 * i + 1, 4 * j);
                union(&mut uf, 4 * i + 2, 4 * j + 3);
            }
            if let Some(g) = self.nb(f, Dir::N) {
                let j = idx[&g];
                union(&mut uf, 4 * i + 3, 4 * j);
                union(&mut uf, 4 * i + 2, 4 * j + 1);
            }
        }
        let v = |uf: &mut Vec<usize>, i: usize, c: usize| find(uf, 4 * i + c);
        let mut faces = Vec::with_capacity(alive.len());
        let mut open = Vec::new();
        for (i, &f) in alive.iter().enumerate() {
            let q: Vec<usize> = (0..4).map(|c| v(&mut uf, i, c)).collect();
            for (d, (a, b)) in [(Dir::S, (1, 0)), (Dir::E, (2, 1)), (Dir::N, (3, 2)), (Dir::W, (0, 3))] {
                if self.nb(f, d).is_none() && self.is_open(f, d) {
                    open.push((q[a], q[b]));
                }
            }
            faces.push(q);
        }
        let r = idx[&self.root];
        let root = (faces[r][1], faces[r][0]);
        Ok(RigidQuadMap::Disk(Disk::from_faces(&faces, root, &open, self.base_open)?))
    }

    /// Recovers the frame of a flat map. Fails when faces do not fit a
    /// consistent compass frame.
    pub fn from_map(map: &RigidQuadMap) -> Result<Option<Cells>> {
        match map {
            RigidQuadMap::Corner => Ok(None),
            _ => Ok(Some(Self::from_map_indexed(map)?.0)),
        }
    }

    /// Like [`Cells::from_map`], also returning the face and direction on the
    /// inner side of every outer half-edge.
    pub fn from_map_indexed(map: &RigidQuadMap) -> Result<(Cells, HashMap<usize, (usize, Dir)>)> {
        let RigidQuadMap::Disk(d) = map else {
            return Err(Error::InvalidArgument("the corner object has no faces".into()));
        };
        let a = Analysis::new(d);
        let n = d.num_half_edges();
        let mut dir: Vec<Option<Dir>> = vec![None; n];
        let mut cell_of_face = vec![usize::MAX; a.faces.len()];
        let mut order = Vec::new();
        let start = d.opposite()[d.root()];
        let assign = |dir: &mut Vec<Option<Dir>>, h: usize, dh: Dir| -> Result<()> {
            let cyc = &a.faces[a.face_of[h]];
            if cyc.len() != 4 {
                return Err(Error::NotRigid("inner face is not a quadrilateral".into()));
            }
            let mut x = h;
            let mut dx = dh;
            for _ in 0..4 {
                dir[x] = Some(dx);
                x = d.fnext(x);
                dx = dx.ccw();
            }
            Ok(())
        };
        assign(&mut dir, start, Dir::S)?;
        cell_of_face[a.face_of[start]] = 0;
        order.push(a.face_of[start]);
        let mut q = VecDeque::from([a.face_of[start]]);
        while let Some(f) = q.pop_front() {
            for &x in &a.faces[f] {
                let y = d.opposite()[x];
                let g = a.face_of[y];
                if g == a.root_face {
                    continue;
                }
                let want = dir[x].unwrap().opp();
                match dir[y] {
                    Some(dy) if dy != want => return Err(Error::NotRigid("map is not flat".into())),
                    Some(_) => {}
                    None => {
                        assign(&mut dir, y, want)?;
                        cell_of_face[g] = order.len();
                        order.push(g);
                        q.push_back(g);
                    }
                }
            }
        }
        let mut cells = Cells {
            cells: vec![Cell { alive: true, ..Default::default() }; order.len()],
            root: 0,
            base_open: d.base_open(),
        };
        let mut outer = HashMap::new();
        for (ci, &f) in order.iter().enumerate() {
            for &x in &a.faces[f] {
                let y = d.opposite()[x];
                let dx = dir[x].unwrap().idx();
                if a.face_of[y] == a.root_face {
                    outer.insert(y, (ci, dir[x].unwrap()));
                    let side = a.side_of_edge[y].expect("outer half-edges lie on sides");
                    cells.cells[ci].open[dx] = side != 0 && a.sides[side].open;
                } else {
                    cells.cells[ci].nb[dx] = Some(cell_of_face[a.face_of[y]]);
                }
            }
        }
        if order.len() + 1 != a.faces.len() {
            return Err(Error::NotRigid("map has unreachable faces".into()));
        }
        Ok((cells, outer))
    }
}
