//! Gluing a child map onto an open seam of a minimal submap, and the reverse.

use super::cells::{Cells, Dir};
use super::submap::Seam;
use crate::error::{internal, precondition, Error, Result};

/// Glues `u` onto the open seam of `e`. The child is placed on the far side
/// of the seam (rotated a half turn when the seam faces south), rays of the
/// combinatorially lower piece that end at a concave corner are extended
/// through the upper piece, and the seam rows are identified.
pub(crate) fn glue_seam(e: &mut Cells, seam: &Seam, u: &Cells) -> Result<()> {
    let down = e.comb_down();
    let up = down.opp();
    let mut placed = u.clone();
    let mut u_row = u.base_row();
    if seam.dir == Dir::S {
        placed.rotate180();
        u_row.reverse();
    }
    let off = e.absorb(&placed);
    let u_row: Vec<usize> = u_row.iter().map(|f| f + off).collect();
    let e_lower = seam.dir == up;
    let (lower, upper) = if e_lower { (seam.faces.clone(), u_row) } else { (u_row, seam.faces.clone()) };
    let mut gaps = vec![0usize; upper.len()];
    let mut g = 0;
    for w in lower.windows(2) {
        if e.ray_ends_concave(w[0], w[1], down)? {
            *gaps.get_mut(g).ok_or_else(|| Error::Precondition("seam sizes do not match".into()))? += 1;
        } else {
            g += 1;
        }
    }
    if g + 1 != upper.len() {
        return precondition(format!(
            "seam sizes do not match: lower side has {} straight rays, upper side has {} faces",
            g,
            upper.len()
        ));
    }
    let mut split_upper = Vec::with_capacity(lower.len());
    for (&f, &j) in upper.iter().zip(&gaps) {
        if j > 0 {
            split_upper.extend(e.split_column(f, up, j + 1));
        } else {
            split_upper.push(f);
        }
    }
    if e_lower {
        e.merge_rows(&lower, &split_upper, seam.dir)
    } else {
        e.merge_rows(&split_upper, &lower, seam.dir)
    }
}

/// Cuts `r` along `strip` (a merged seam row, west to east) whose child
/// lies across `seam_dir`, undoes ray extensions, and returns the child in
/// its own standard frame. `r` keeps the remainder, compacted.
pub(crate) fn unglue(r: &mut Cells, strip: &[usize], seam_dir: Dir) -> Result<Cells> {
    let down = r.comb_down();
    let up = down.opp();
    let e_dir = seam_dir.opp();
    let mut extended = Vec::new();
    for (i, w) in strip.windows(2).enumerate() {
        if r.ray_ends_concave(w[0], w[1], down)? {
            extended.push(i);
        }
    }
    let halves = r.cut_strip(strip, e_dir);
    let upside: Vec<usize> = if e_dir == up { strip.to_vec() } else { halves.clone() };
    for &i in &extended {
        r.merge_column(upside[i], upside[i + 1], up)?;
    }
    let Some(&anchor) = halves.last() else {
        return internal("empty seam");
    };
    let comp = r.component(anchor);
    let (mut u, map) = r.extract(&comp);
    u.base_open = e_dir == up;
    if seam_dir == Dir::S {
        u.rotate180();
    }
    u.root = u.to_end(map[&anchor], Dir::E);
    r.compact();
    Ok(u)
}

/// Where a seam sits relative to the base of a glued map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Locator {
    LeftArm,
    RightArm,
    /// Bar above the base, extending east (R families).
    BarEast,
    /// Leg hanging from the east end of that bar.
    LegEast,
    /// Bar above the base, extending west (L families).
    BarWest,
    LegWest,
}

impl Locator {
    pub fn dir(self) -> Dir {
        match self {
            Locator::LegEast | Locator::LegWest => Dir::S,
            _ => Dir::N,
        }
    }

    /// Seam faces west to east.
    pub fn locate(self, r: &Cells) -> Result<Vec<usize>> {
        let row = r.base_row();
        let (first, last) = (row[0], *row.last().unwrap());
        let above = |f: usize| r.nb(f, Dir::N).ok_or_else(|| Error::NotRigid("seam not found".into()));
        Ok(match self {
            Locator::LeftArm => r.walk(above(first)?, Dir::E),
            Locator::RightArm => {
                let mut v = r.walk(above(last)?, Dir::W);
                v.reverse();
                v
            }
            Locator::BarEast => r.row_through(above(first)?),
            Locator::BarWest => r.row_through(above(last)?),
            Locator::LegEast => {
                let bar = Locator::BarEast.locate(r)?;
                let leg = r.nb(*bar.last().unwrap(), Dir::S).ok_or_else(|| Error::NotRigid("leg not found".into()))?;
                let mut v = r.walk(leg, Dir::W);
                v.reverse();
                v
            }
            Locator::LegWest => {
                let bar = Locator::BarWest.locate(r)?;
                let leg = r.nb(bar[0], Dir::S).ok_or_else(|| Error::NotRigid("leg not found".into()))?;
                r.walk(leg, Dir::E)
            }
        })
    }
}
