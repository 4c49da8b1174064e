use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use super::onb_monomial_log;
use crate::error::{Error, Result};
use crate::sequences::DRegularSequence;
use crate::SCHEMA_VERSION;

/// Rows `e_k(gamma_j) e^{-pi |gamma_j|^2 / 2}`, `k = 0..K`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationMatrix {
    points: Vec<Complex64>,
    cols: usize,
    /// Row-major.
    entries: Vec<Complex64>,
}

impl EvaluationMatrix {
    /// Builds the matrix for explicit points, in the given order.
    pub fn from_points(points: Vec<Complex64>, degree_count: usize) -> Result<Self> {
        if degree_count == 0 {
            return Err(Error::InvalidArgument("degree count must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptySequence);
        }
        if degree_count - 1 > super::MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree_count - 1));
        }
        let rows: Vec<Vec<Complex64>> = points
            .par_iter()
            .map(|&g| {
                let w = -0.5 * PI * g.norm_sqr();
                (0..degree_count)
                    .map(|k| {
                        onb_monomial_log(k, g)
                            .expect("degree checked above")
                            .scale_log(w)
                            .to_complex()
                    })
                    .collect()
            })
            .collect();
        Ok(EvaluationMatrix {
            points,
            cols: degree_count,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn degree_count(&self) -> usize {
        self.cols
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.cols + k]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Column `k` as a vector over the rows.
    fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.points.len()).map(|j| self.get(j, k)).collect()
    }
}

/// Points of `seq` with `|gamma| <= radius` (canonical order), `K` columns.
pub fn evaluation_matrix(seq: &DRegularSequence, radius: f64, degree_count: usize) -> Result<EvaluationMatrix> {
    let points: Vec<Complex64> = seq
        .points()
        .iter()
        .map(|p| p.gamma)
        .filter(|g| g.norm() <= radius)
        .collect();
    EvaluationMatrix::from_points(points, degree_count)
}

/// Writes `j,k,re,im` rows.
pub fn write_matrix_csv<W: Write>(a: &EvaluationMatrix, mut out: W) -> Result<()> {
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "k", "re", "im"])?;
    for j in 0..a.point_count() {
        for k in 0..a.degree_count() {
            let v = a.get(j, k);
            w.serialize((j, k, v.re, v.im))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Sweep limit for [`smallest_singular_value`].
pub const MAX_SWEEPS: usize = 60;

/// Smallest singular value of the `J x K` map, i.e. the square root of the
/// smallest eigenvalue of `A* A`. Zero when `J < K`.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually orthogonal
/// to relative level `1e-15`; the singular values are then the column norms.
pub fn smallest_singular_value(a: &EvaluationMatrix) -> Result<f64> {
    if a.point_count() < a.degree_count() {
        return Ok(0.0);
    }
    let k = a.degree_count();
    let mut cols: Vec<Vec<Complex64>> = (0..k).map(|c| a.column(c)).collect();
    let eps = 1e-15;
    for sweep in 0..MAX_SWEEPS {
        let mut residual: f64 = 0.0;
        for p in 0..k {
            for q in (p + 1)..k {
                let (left, right) = cols.split_at_mut(q);
                let ap = &mut left[p];
                let aq = &mut right[0];
                let alpha: f64 = ap.iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = aq.iter().map(|x| x.norm_sqr()).sum();
                let gamma: Complex64 = ap.iter().zip(aq.iter()).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                residual = residual.max(g / (alpha * beta).sqrt());
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
                    let yq = *y * phase.conj();
                    let nx = *x * c - yq * s;
                    let ny = *x * s + yq * c;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if residual == 0.0 {
            let smallest = cols
                .iter()
                .map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
                .fold(f64::INFINITY, f64::min);
            return Ok(smallest);
        }
        if sweep + 1 == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps: MAX_SWEEPS,
                residual,
            });
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_scaled_lattice, LatticeIndex, PhiProfile, SeqPoint};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn raw(rows: usize, cols: usize, data: Vec<Complex64>) -> EvaluationMatrix {
        EvaluationMatrix {
            points: vec![Complex64::new(0.0, 0.0); rows],
            cols,
            entries: data,
        }
    }

    #[test]
    fn origin_only() {
        let pts = vec![SeqPoint {
            index: LatticeIndex::ORIGIN,
            gamma: Complex64::new(0.0, 0.0),
        }];
        let seq = DRegularSequence::from_points(1.0, 1.0, PhiProfile::zero(), 0.0, pts).unwrap();
        let a = evaluation_matrix(&seq, 1.0, 1).unwrap();
        assert_eq!(a.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(smallest_singular_value(&a).unwrap(), 1.0);
        assert!(evaluation_matrix(&seq, 1.0, 0).is_err());
    }

    #[test]
    fn lattice_matrix_shape_and_bound() {
        let seq = make_scaled_lattice(1.0, 6.0).unwrap();
        let a = evaluation_matrix(&seq, 3.0, 29).unwrap();
        assert_eq!(a.point_count(), 29);
        assert!(a.entries().iter().all(|v| v.norm() <= 1.0));
        assert!(smallest_singular_value(&a).unwrap() > 0.0);
    }

    #[test]
    fn two_by_two_gram_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let data: Vec<Complex64> = (0..6)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let a = raw(3, 2, data.clone());
            let col = |k: usize| -> Vec<Complex64> { (0..3).map(|j| data[2 * j + k]).collect() };
            let (c0, c1) = (col(0), col(1));
            let g00: f64 = c0.iter().map(|x| x.norm_sqr()).sum();
            let g11: f64 = c1.iter().map(|x| x.norm_sqr()).sum();
            let g01: Complex64 = c0.iter().zip(&c1).map(|(x, y)| x.conj() * y).sum();
            // smallest root of x^2 - (g00 + g11) x + (g00 g11 - |g01|^2)
            let tr = g00 + g11;
            let det = g00 * g11 - g01.norm_sqr();
            let lmin = 0.5 * (tr - (tr * tr - 4.0 * det).sqrt());
            let s = smallest_singular_value(&a).unwrap();
            assert!((s - lmin.sqrt()).abs() < 1e-8);
        }
    }

    #[test]
    fn appending_rows_never_decreases() {
        let seq = make_scaled_lattice(1.0, 8.0).unwrap();
        let pts: Vec<Complex64> = seq.points().iter().map(|p| p.gamma).collect();
        let mut prev = 0.0;
        for n in [20, 30, 45, 60] {
            let a = EvaluationMatrix::from_points(pts[..n].to_vec(), 12).unwrap();
            let s = smallest_singular_value(&a).unwrap();
            assert!(s >= prev * (1.0 - 1e-9));
            prev = s;
        }
        let mut dup = pts[..20].to_vec();
        dup.push(pts[3]);
        let base = smallest_singular_value(&EvaluationMatrix::from_points(pts[..20].to_vec(), 12).unwrap()).unwrap();
        let with_dup = smallest_singular_value(&EvaluationMatrix::from_points(dup, 12).unwrap()).unwrap();
        assert!(with_dup >= base * (1.0 - 1e-9));
        let one = EvaluationMatrix::from_points(vec![pts[2]], 1).unwrap();
        let two = EvaluationMatrix::from_points(vec![pts[2], pts[2]], 1).unwrap();
        let r = smallest_singular_value(&two).unwrap() / smallest_singular_value(&one).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wide_matrix_is_singular() {
        let seq = make_scaled_lattice(1.0, 2.0).unwrap();
        let a = evaluation_matrix(&seq, 1.0, 10).unwrap();
        assert_eq!(smallest_singular_value(&a).unwrap(), 0.0);
    }
}
