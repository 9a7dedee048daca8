use std::fmt;

use crate::error::{bad_arg, Result};

/// Labels around an internal tree vertex: parent edge `p`, child edges `a`
/// and `b`, vertex label `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub p: i64,
    pub a: i64,
    pub b: i64,
    pub k: i64,
}

/// The six families of minimal submaps. The barred ones have negative base-length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubmapType {
    G,
    R,
    L,
    GBar,
    RBar,
    LBar,
}

impl fmt::Display for SubmapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubmapType::G => "G",
            SubmapType::R => "R",
            SubmapType::L => "L",
            SubmapType::GBar => "G-bar",
            SubmapType::RBar => "R-bar",
            SubmapType::LBar => "L-bar",
        })
    }
}

impl Signature {
    pub fn new(p: i64, a: i64, b: i64, k: i64) -> Self {
        Self { p, a, b, k }
    }

    /// Signature with `k` derived from the balance relation.
    pub fn from_labels(p: i64, a: i64, b: i64) -> Self {
        Self { p, a, b, k: a + b - p + 1 }
    }

    /// Whether some H-tree has a vertex with these labels.
    pub fn is_allowed(&self) -> bool {
        let Signature { p, a, b, k } = *self;
        if p == 0 || k < 0 || p != a + b - k + 1 {
            return false;
        }
        let lhs = (p < 0) as u8;
        let rhs = (a <= 0) as u8 + (b <= 0) as u8;
        !(lhs >= rhs && k != 0)
    }

    pub fn submap_type(&self) -> Result<SubmapType> {
        if !self.is_allowed() {
            return bad_arg(format!("signature {self} is not allowed"));
        }
        let Signature { p, a, b, k } = *self;
        Ok(if p > 0 {
            match (a > 0, b > 0) {
                (true, true) => SubmapType::G,
                (true, false) if b == 0 && k == 0 => SubmapType::G,
                (true, false) => SubmapType::R,
                (false, true) if a == 0 && k == 0 => SubmapType::G,
                (false, true) => SubmapType::L,
                (false, false) => SubmapType::G,
            }
        } else if a < 0 && b < 0 {
            SubmapType::GBar
        } else if a <= 0 && b <= 0 && k > 0 {
            SubmapType::GBar
        } else if a < 0 {
            SubmapType::RBar
        } else {
            SubmapType::LBar
        })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, a={}, b={}, k={})", self.p, self.a, self.b, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SubmapType::*;

    #[test]
    fn table_cells() {
        let cases = [
            ((3, 1, 1, 0), G),
            ((1, 0, 0, 0), G),
            ((2, 1, 0, 0), G),
            ((2, 0, 1, 0), G),
            ((2, 3, -1, 1), R),
            ((2, 2, 0, 1), R),
            ((2, -1, 3, 1), L),
            ((1, 0, 1, 1), L),
            ((-1, -1, -1, 0), GBar),
            ((-2, 0, 0, 3), GBar),
            ((-2, -1, 0, 2), GBar),
            ((-2, -2, 0, 1), GBar),
            ((-2, -3, 0, 0), RBar),
            ((-2, -4, 1, 0), RBar),
            ((-2, 0, -3, 0), LBar),
            ((-2, 1, -4, 0), LBar),
        ];
        for ((p, a, b, k), ty) in cases {
            let s = Signature::new(p, a, b, k);
            assert_eq!(s.submap_type().unwrap(), ty, "{s}");
        }
    }

    #[test]
    fn disallowed() {
        for (p, a, b, k) in [(0, 0, 0, 1), (2, 1, 1, 1), (-2, -1, 0, 1), (3, 1, 1, -1), (-1, -1, 1, 1)] {
            let s = Signature::new(p, a, b, k);
            assert!(!s.is_allowed(), "{s}");
            assert!(s.submap_type().is_err());
        }
    }
}
