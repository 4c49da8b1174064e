use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Gaussian-integer index `(m, n)` addressing the lattice point `m + i n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeIndex {
    pub m: i64,
    pub n: i64,
}

impl LatticeIndex {
    pub const ORIGIN: LatticeIndex = LatticeIndex { m: 0, n: 0 };

    pub fn new(m: i64, n: i64) -> Self {
        LatticeIndex { m, n }
    }

    pub fn point(&self) -> Complex64 {
        Complex64::new(self.m as f64, self.n as f64)
    }

    pub fn norm_sqr(&self) -> i64 {
        self.m * self.m + self.n * self.n
    }

    pub fn norm(&self) -> f64 {
        (self.norm_sqr() as f64).sqrt()
    }

    pub fn arg(&self) -> f64 {
        (self.n as f64).atan2(self.m as f64)
    }

    pub fn is_origin(&self) -> bool {
        self.m == 0 && self.n == 0
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl Ord for LatticeIndex {
    /// Orders by `|lambda|` and then by `arg lambda`. Distinct indices on the
    /// same circle have distinct arguments, so this is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm_sqr()
            .cmp(&other.norm_sqr())
            .then_with(|| self.arg().total_cmp(&other.arg()))
    }
}

impl PartialOrd for LatticeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All indices with `m^2 + n^2 <= radius^2`, in canonical order.
pub fn enumerate_lattice(radius: f64) -> Vec<LatticeIndex> {
    if !(radius >= 0.0) {
        return Vec::new();
    }
    let r2 = radius * radius;
    let bound = radius.floor() as i64;
    let mut out = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            if ((m * m + n * n) as f64) <= r2 {
                out.push(LatticeIndex::new(m, n));
            }
        }
    }
    out.sort();
    out
}

/// Nearest lattice point to `w`; the fundamental cell is `[-1/2, 1/2)^2`.
pub fn nearest_index(w: Complex64) -> LatticeIndex {
    LatticeIndex::new((w.re + 0.5).floor() as i64, (w.im + 0.5).floor() as i64)
}

/// Euclidean distance from `w` to the integer lattice.
pub fn dist_to_lattice(w: Complex64) -> f64 {
    (w - nearest_index(w).point()).norm()
}
