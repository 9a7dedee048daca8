//! Minimal submaps as grid polyominoes in the standard frame: the base is
//! the bottom row, open seams are marked on the sides where children attach.

use super::cells::{Cells, Dir};
use super::signature::{Signature, SubmapType};
use crate::error::Result;

#[derive(Clone, Debug)]
pub(crate) struct Seam {
    /// Faces along the seam, west to east.
    pub faces: Vec<usize>,
    /// Direction from those faces to the open side.
    pub dir: Dir,
}

#[derive(Clone, Debug)]
pub(crate) struct Submap {
    pub cells: Cells,
    /// Seam of the child `a`.
    pub left: Option<Seam>,
    /// Seam of the child `b`.
    pub right: Option<Seam>,
}

type Strip = (Vec<(i64, i64)>, Dir);

struct Layout {
    cells: Vec<(i64, i64)>,
    /// x of the easternmost base cell
    root_x: i64,
    left: Option<Strip>,
    right: Option<Strip>,
}

fn row(y: i64, xs: std::ops::Range<i64>) -> Vec<(i64, i64)> {
    xs.map(|x| (x, y)).collect()
}

fn strip(y: i64, xs: std::ops::Range<i64>, d: Dir) -> Option<Strip> {
    (!xs.is_empty()).then(|| (row(y, xs), d))
}

fn layout_g(p: i64, a: i64) -> Layout {
    let mut cells = row(0, 0..p);
    cells.extend(row(1, 0..a));
    cells.extend(row(1, a + 1..p));
    Layout { cells, root_x: p - 1, left: strip(1, 0..a, Dir::N), right: strip(1, a + 1..p, Dir::N) }
}

fn layout_r(p: i64, b: i64, k: i64) -> Layout {
    let (x3, x_end) = if b < 0 { (p + k + 1, p + k + 1 - b) } else { (p + k, p + k) };
    let mut cells = row(0, 0..p);
    cells.extend(row(0, x3..x_end));
    cells.extend(row(1, 0..x_end));
    Layout { cells, root_x: p - 1, left: strip(1, 0..x_end, Dir::N), right: strip(0, x3..x_end, Dir::S) }
}

fn layout_gbar(a: i64, b: i64, k: i64) -> Layout {
    let deg = (a == 0) as i64 + (b == 0) as i64;
    let x1 = -a;
    let x2 = x1 + (k - deg) + 1;
    let w = x2 - b;
    let mut cells = row(0, 0..w);
    cells.extend(row(1, 0..x1));
    cells.extend(row(1, x2..w));
    Layout { cells, root_x: w - 1, left: strip(1, 0..x1, Dir::N), right: strip(1, x2..w, Dir::N) }
}

fn layout_rbar(p: i64, b: i64) -> Layout {
    let w = -p;
    let x3 = w + 1;
    let x_end = x3 + b;
    let mut cells = row(0, 0..w);
    cells.extend(row(0, x3..x_end));
    cells.extend(row(1, 0..x_end));
    Layout { cells, root_x: w - 1, left: strip(1, 0..x_end, Dir::N), right: strip(0, x3..x_end, Dir::S) }
}

fn mirror(l: Layout) -> Layout {
    let x_max = l.cells.iter().map(|c| c.0).max().unwrap_or(0);
    let m = |s: Option<Strip>| s.map(|(cs, d)| (cs.into_iter().map(|(x, y)| (x_max - x, y)).collect(), d));
    // the base starts at x = 0 before mirroring
    Layout {
        cells: l.cells.iter().map(|&(x, y)| (x_max - x, y)).collect(),
        root_x: x_max,
        left: m(l.right),
        right: m(l.left),
    }
}

/// The minimal submap with the given signature, in the standard frame.
pub(crate) fn build_minimal_submap(sig: Signature) -> Result<Submap> {
    let kind = sig.submap_type()?;
    let Signature { p, a, b, k } = sig;
    let layout = match kind {
        SubmapType::G => layout_g(p, a),
        SubmapType::R => layout_r(p, b, k),
        SubmapType::L => mirror(layout_r(p, a, k)),
        SubmapType::GBar => layout_gbar(a, b, k),
        SubmapType::RBar => layout_rbar(p, b),
        SubmapType::LBar => mirror(layout_rbar(p, a)),
    };
    let mut open = Vec::new();
    for (cs, d) in layout.left.iter().chain(layout.right.iter()) {
        open.extend(cs.iter().map(|&c| (c, *d)));
    }
    let (cells, ids) = Cells::from_grid(&layout.cells, (layout.root_x, 0), p < 0, &open);
    let seam = |s: Option<Strip>| {
        s.map(|(mut cs, dir)| {
            cs.sort();
            Seam { faces: cs.iter().map(|c| ids[c]).collect(), dir }
        })
    };
    Ok(Submap { cells, left: seam(layout.left), right: seam(layout.right) })
}
