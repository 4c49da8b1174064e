//! Tails of the lattice sums `sum_{|lambda| > R} lambda^{-k}`.
//!
//! The disc `|lambda| <= R` is invariant under multiplication by `i`, so the
//! tail vanishes unless `4 | k`, and for those `k` it is real. The genus-2
//! factor expands as `log(1 - w/lambda) + w/lambda + w^2/(2 lambda^2) =
//! -sum_{k>=3} (w/lambda)^k / k`, so the contribution of every lattice point
//! outside the disc collapses to `-sum_{4|k} T_k(R) w^k / k`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::sequences::{enumerate_lattice, LatticeIndex};

/// `sum_{n>=1} n^{-k}` for `k >= 2`, Euler-Maclaurin tail after 32 terms.
pub fn zeta_int(k: u32) -> f64 {
    assert!(k >= 2);
    let n = 32.0f64;
    let kf = k as f64;
    let mut s = 0.0;
    for j in (1..32).rev() {
        s += (j as f64).powf(-kf);
    }
    s + n.powf(1.0 - kf) / (kf - 1.0) + 0.5 * n.powf(-kf) + kf * n.powf(-kf - 1.0) / 12.0
        - kf * (kf + 1.0) * (kf + 2.0) * n.powf(-kf - 3.0) / 720.0
        + kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) * n.powf(-kf - 5.0) / 30240.0
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// `G_k = sum'_{lambda} lambda^{-k}` over `Z + iZ`, for `k` a positive
/// multiple of 4, from the Lipschitz summation of each row:
/// `G_k = 2 zeta(k) + 2 (2 pi)^k / (k-1)! sum_{r>=1} r^{k-1} / (e^{2 pi r} - 1)`.
pub fn eisenstein(k: u32) -> f64 {
    assert!(k >= 4 && k.is_multiple_of(4), "lattice sum vanishes unless 4 | k");
    let kf = k as f64;
    let log_pref = std::f64::consts::LN_2 + kf * (2.0 * PI).ln() - ln_factorial(k - 1);
    let peak = (kf - 1.0) / (2.0 * PI);
    let mut s = 0.0;
    let mut r = 1u32;
    loop {
        let rf = r as f64;
        let t = (log_pref + (kf - 1.0) * rf.ln() - 2.0 * PI * rf).exp() / -(-2.0 * PI * rf).exp_m1();
        s += t;
        if rf > peak + 4.0 && t <= 1e-18 * s {
            break;
        }
        r += 1;
    }
    2.0 * zeta_int(k) + s
}

/// Upper bound on `sum_{|lambda| > radius} |lambda|^{-k}` for `k >= 3`.
///
/// Each unit cell centred at `lambda` lies in `|w| > radius - 1/sqrt 2`, and
/// `|lambda|^{-k} <= (|w| - 1/sqrt 2)^{-k}` on it.
pub fn abs_tail_bound(k: u32, radius: f64) -> f64 {
    let s = FRAC_1_SQRT_2;
    let a = radius - SQRT_2;
    if a <= 0.0 {
        return f64::INFINITY;
    }
    let kf = k as f64;
    2.0 * PI * (a.powf(2.0 - kf) / (kf - 2.0) + s * a.powf(1.0 - kf) / (kf - 1.0))
}

/// Bound on `sum_{k >= k_start, 4|k} w^k / k * sum_{|lambda|>R} |lambda|^{-k}`.
pub fn omitted_terms_bound(w_abs: f64, radius: f64, k_start: u32) -> f64 {
    let rho = w_abs / (radius - SQRT_2);
    if !(rho < 1.0) {
        return f64::INFINITY;
    }
    if w_abs == 0.0 {
        return 0.0;
    }
    let first = w_abs.powi(k_start as i32) / k_start as f64 * abs_tail_bound(k_start, radius);
    first / (1.0 - rho.powi(4))
}

fn g4() -> f64 {
    static G4: OnceLock<f64> = OnceLock::new();
    *G4.get_or_init(|| eisenstein(4))
}

/// Real part of `lambda^{-k}` summed over non-zero `lambda` with
/// `r_lo < |lambda| <= r_hi`. Columns `m` and `-m` contribute equally
/// for even `k`.
fn annulus_sum(k: u32, r_lo: f64, r_hi: f64) -> f64 {
    let lo2 = r_lo * r_lo;
    let hi2 = r_hi * r_hi;
    let b = r_hi.floor() as i64;
    // outermost columns first so small terms accumulate before large ones
    let mut s = 0.0;
    for m in (0..=b).rev() {
        let mut col = 0.0;
        for n in -b..=b {
            let q = (m * m + n * n) as f64;
            if q > lo2 && q <= hi2 && q > 0.0 {
                let t = LatticeIndex::new(m, n).point().inv().powi(k as i32).re;
                col += if m == 0 { t } else { 2.0 * t };
            }
        }
        s += col;
    }
    s
}

/// Tail coefficients `T_k(R)` for the disc of radius `R`, sufficient for
/// arguments with `|w| <= w_max` at absolute accuracy `tol`.
#[derive(Clone, Debug)]
pub struct LatticeTail {
    pub radius: f64,
    pub w_max: f64,
    /// `(k, T_k(R))` for `k = 4, 8, ...`.
    pub coefficients: Vec<(u32, f64)>,
    /// Bound on the error of [`LatticeTail::log_correction`] for `|w| <= w_max`.
    pub error_bound: f64,
}

impl LatticeTail {
    /// Panics if `w_max >= radius - sqrt 2` (the expansion does not converge).
    pub fn new(radius: f64, w_max: f64, tol: f64) -> Self {
        assert!(w_max < radius - SQRT_2, "tail expansion needs |w| < R - sqrt 2");
        let target = tol.max(1e-16);
        let mut coefficients = Vec::new();
        let mut error_bound = 0.0;
        let mut k = 4u32;
        while omitted_terms_bound(w_max, radius, k) > 0.01 * target && k <= 200 {
            let scale = w_max.powi(k as i32) / k as f64;
            let closed_form_ok = k == 4 || scale * 1e-15 * (4.0 + g4()) <= 1e-3 * target;
            let t = if closed_form_ok {
                let g = if k == 4 { g4() } else { eisenstein(k) };
                g - annulus_sum(k, 0.0, radius)
            } else {
                // direct summation out to r_hi, remainder bounded separately
                let mut r_hi = 2.0 * radius;
                while scale * abs_tail_bound(k, r_hi) > 1e-2 * target {
                    r_hi *= 1.5;
                }
                error_bound += scale * abs_tail_bound(k, r_hi);
                annulus_sum(k, radius, r_hi)
            };
            coefficients.push((k, t));
            k += 4;
        }
        error_bound += omitted_terms_bound(w_max, radius, k);
        LatticeTail {
            radius,
            w_max,
            coefficients,
            error_bound,
        }
    }

    /// `-sum_k T_k w^k / k`: the log of the product over `|lambda| > R`.
    pub fn log_correction(&self, w: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for &(k, t) in self.coefficients.iter().rev() {
            s -= w.powi(k as i32) * (t / k as f64);
        }
        s
    }

    /// `-sum_k T_k w^{k-1}`: the derivative of [`LatticeTail::log_correction`].
    pub fn derivative_correction(&self, w: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for &(k, t) in self.coefficients.iter().rev() {
            s -= w.powi(k as i32 - 1) * t;
        }
        s
    }
}

/// Non-zero lattice points with `|lambda| <= radius`, canonical order.
pub fn lattice_points(radius: f64) -> Vec<Complex64> {
    enumerate_lattice(radius)
        .into_iter()
        .filter(|i| !i.is_origin())
        .map(|i| i.point())
        .collect()
}
