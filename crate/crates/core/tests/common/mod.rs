//! Oracles independent of the library's evaluation paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Nome of the square lattice, `e^{-pi}`.
fn nome() -> f64 {
    (-PI).exp()
}

/// `theta_1(v) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v)`.
pub fn theta1(v: Complex64) -> Complex64 {
    let q = nome();
    let mut s = Complex64::new(0.0, 0.0);
    for n in 0..16 {
        let nf = n as f64;
        let c = q.powf((nf + 0.5) * (nf + 0.5)) * if n % 2 == 0 { 2.0 } else { -2.0 };
        s += ((2.0 * nf + 1.0) * v).sin() * c;
    }
    s
}

pub fn theta1_prime_zero() -> f64 {
    let q = nome();
    (0..16)
        .map(|n| {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            sign * (2.0 * nf + 1.0) * q.powf((nf + 0.5) * (nf + 0.5))
        })
        .sum()
}

/// `sigma(z) = (1/pi) e^{pi z^2 / 2} theta_1(pi z) / theta_1'(0)` for the
/// lattice `Z + iZ`.
pub fn theta_sigma(z: Complex64) -> Complex64 {
    (0.5 * PI * z * z).exp() * theta1(PI * z) / (PI * theta1_prime_zero())
}

/// `|sigma(z)| e^{-pi |z|^2 / 2}`.
pub fn theta_g(z: Complex64) -> f64 {
    theta_sigma(z).norm() * (-0.5 * PI * z.norm_sqr()).exp()
}

/// `e_k(z) = sqrt(pi^k / k!) z^k`.
pub fn monomial(k: u32, z: Complex64) -> Complex64 {
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    z.powu(k) * (PI.powi(k as i32) / fact).sqrt()
}

/// Physicists' Hermite polynomials in closed form, `k <= 5`.
pub fn hermite_poly(k: usize, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0 * x,
        2 => 4.0 * x * x - 2.0,
        3 => 8.0 * x.powi(3) - 12.0 * x,
        4 => 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
        5 => 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x,
        _ => panic!("closed form only up to degree 5"),
    }
}

/// `2^{1/4} H_k(sqrt(2 pi) t) e^{-pi t^2} / sqrt(2^k k!)`.
pub fn hermite_fn(k: usize, t: f64) -> f64 {
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    let x = (2.0 * PI).sqrt() * t;
    2f64.powf(0.25) * hermite_poly(k, x) * (-PI * t * t).exp() / (2f64.powi(k as i32) * fact).sqrt()
}

/// Regularized lower incomplete gamma `P(k+1, x)` for integer `k`.
pub fn lower_gamma_ratio(k: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..=k {
        term *= x / j as f64;
        sum += term;
    }
    1.0 - (-x).exp() * sum
}

/// Midpoint polar rule for `int_{|z| <= R} e^{2 log|f| - pi |z|^2} dA`.
pub fn midpoint_norm<F: Fn(Complex64) -> f64>(log_abs_f: F, radius: f64, nr: usize, nt: usize) -> f64 {
    let dr = radius / nr as f64;
    let dt = 2.0 * PI / nt as f64;
    let mut s = 0.0;
    for i in 0..nr {
        let r = (i as f64 + 0.5) * dr;
        for j in 0..nt {
            let z = Complex64::from_polar(r, (j as f64 + 0.5) * dt);
            s += (2.0 * log_abs_f(z) - PI * r * r).exp() * r;
        }
    }
    s * dr * dt
}

/// Smallest eigenvalue of the Hermitian positive definite `g` (row-major,
/// `n x n`) by inverse iteration with a Cholesky factor.
pub fn min_eigenvalue_hpd(g: &[Complex64], n: usize) -> f64 {
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut diag = g[j * n + j].re;
        for k in 0..j {
            diag -= l[j * n + k].norm_sqr();
        }
        assert!(diag > 0.0, "matrix not positive definite");
        let ljj = diag.sqrt();
        l[j * n + j] = Complex64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = g[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    let solve = |b: &[Complex64]| -> Vec<Complex64> {
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] = y[i] - l[i * n + k] * y[k];
            }
            y[i] /= l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] = y[i] - l[k * n + i].conj() * y[k];
            }
            y[i] /= l[i * n + i];
        }
        y
    };
    let mut x: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0, (i as f64).sin())).collect();
    let mut mu = 0.0;
    for _ in 0..20000 {
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        x.iter_mut().for_each(|c| *c /= norm);
        let y = solve(&x);
        // Rayleigh quotient of the inverse
        let next: f64 = x.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum();
        let done = (next - mu).abs() <= 1e-15 * next;
        mu = next;
        x = y;
        if done {
            break;
        }
    }
    1.0 / mu
}
