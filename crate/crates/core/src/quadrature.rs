//! Gauss-Legendre rules and the polar product grid used for Fock-space
//! integrals.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Polar quadrature on discs: Gauss-Legendre in the radius on unit-width
/// bands, uniform trapezoid in the angle.
#[derive(Clone, Debug)]
pub struct PolarQuadrature {
    pub radial_nodes_per_unit: usize,
    pub angular_nodes: usize,
}

impl Default for PolarQuadrature {
    fn default() -> Self {
        PolarQuadrature {
            radial_nodes_per_unit: 128,
            angular_nodes: 256,
        }
    }
}

impl PolarQuadrature {
    pub fn new(radial_nodes_per_unit: usize, angular_nodes: usize) -> Self {
        PolarQuadrature {
            radial_nodes_per_unit,
            angular_nodes,
        }
    }

    /// Doubles both node counts.
    pub fn refined(&self) -> Self {
        PolarQuadrature::new(2 * self.radial_nodes_per_unit, 2 * self.angular_nodes)
    }

    /// Splits `[0, max(radii)]` at every integer and at every requested
    /// radius. Returns the sorted band edges.
    pub fn band_edges(radii: &[f64]) -> Vec<f64> {
        let top = radii.iter().cloned().fold(0.0, f64::max);
        let mut edges: Vec<f64> = (0..=top.ceil() as usize)
            .map(|k| k as f64)
            .filter(|&e| e < top)
            .collect();
        edges.extend(radii.iter().cloned().filter(|&r| r > 0.0));
        edges.push(top);
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        edges
    }

    /// Integrates a real function of `z` over each annulus between
    /// consecutive band edges. `log_integrand` returns the natural log of the
    /// integrand at `z` (without the area element); `-inf` means zero.
    ///
    /// Radial nodes are evaluated in parallel and reduced in radial order.
    pub fn annulus_integrals<F>(&self, edges: &[f64], log_integrand: F) -> Result<Vec<f64>, Complex64>
    where
        F: Fn(Complex64) -> f64 + Sync,
    {
        let angles: Vec<(f64, f64)> = (0..self.angular_nodes)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / self.angular_nodes as f64;
                (t.cos(), t.sin())
            })
            .collect();
        let dtheta = 2.0 * PI / self.angular_nodes as f64;
        let mut out = Vec::with_capacity(edges.len().saturating_sub(1));
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let n = ((b - a) * self.radial_nodes_per_unit as f64).ceil().max(1.0) as usize;
            let rule = GaussLegendre::new(n);
            let nodes: Vec<(f64, f64)> = rule.mapped(a, b).collect();
            let per_node: Vec<Result<f64, Complex64>> = nodes
                .par_iter()
                .map(|&(r, w)| {
                    let mut s = 0.0;
                    for &(c, si) in &angles {
                        let z = Complex64::new(r * c, r * si);
                        let l = log_integrand(z);
                        if l.is_nan() || l == f64::INFINITY {
                            return Err(z);
                        }
                        s += l.exp();
                    }
                    Ok(w * r * s * dtheta)
                })
                .collect();
            let mut total = 0.0;
            for v in per_node {
                total += v?;
            }
            out.push(total);
        }
        Ok(out)
    }

    /// Integrates a complex function over the disc of radius `radius`.
    pub fn integrate_complex<F>(&self, radius: f64, f: F) -> Complex64
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        let edges = Self::band_edges(&[radius]);
        let dtheta = 2.0 * PI / self.angular_nodes as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for pair in edges.windows(2) {
            let n = ((pair[1] - pair[0]) * self.radial_nodes_per_unit as f64)
                .ceil()
                .max(1.0) as usize;
            let rule = GaussLegendre::new(n);
            let nodes: Vec<(f64, f64)> = rule.mapped(pair[0], pair[1]).collect();
            let parts: Vec<Complex64> = nodes
                .par_iter()
                .map(|&(r, w)| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for j in 0..self.angular_nodes {
                        let t = dtheta * j as f64;
                        s += f(Complex64::from_polar(r, t));
                    }
                    s * (w * r * dtheta)
                })
                .collect();
            for p in parts {
                total += p;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 20, 128, 257] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights.iter().sum();
            assert_relative_eq!(s, 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let r = GaussLegendre::new(6);
        // degree 11 is the limit for 6 nodes
        let v = r.integrate(0.0, 2.0, |x| x.powi(11));
        assert_relative_eq!(v, 2f64.powi(12) / 12.0, max_relative = 1e-13);
    }

    #[test]
    fn gaussian_disc_integral() {
        let q = PolarQuadrature::default();
        let edges = PolarQuadrature::band_edges(&[2.0]);
        let parts = q.annulus_integrals(&edges, |z| -PI * z.norm_sqr()).unwrap();
        let total: f64 = parts.iter().sum();
        assert_relative_eq!(total, 1.0 - (-4.0 * PI).exp(), epsilon = 1e-13);
    }

    #[test]
    fn band_edges_include_requested_radii() {
        let e = PolarQuadrature::band_edges(&[1.5, 3.0]);
        assert_eq!(e, vec![0.0, 1.0, 1.5, 2.0, 3.0]);
    }
}
