//! Monic characteristic polynomial det(zI - A) via the Faddeev-LeVerrier
//! trace recursion.
//!
//! The recursion needs nothing beyond matrix products and is exact on small
//! integer matrices (every intermediate stays an integer below 2^53).
//! Accuracy envelope: order <= 32 and norm_inf(A) <= 1e3; beyond that the
//! coefficient conditioning degrades and callers should warn.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexSquareMatrix, RealSquareMatrix};
use crate::poly::Polynomial;

/// Order/norm envelope within which the coefficients are trustworthy.
pub fn within_accuracy_envelope(a: &RealSquareMatrix) -> bool {
    a.order() <= 32 && a.norm_inf() <= 1e3
}

/// Monic characteristic polynomial of a real square matrix, degree exactly
/// `a.order()`. Coefficients are stored complex for uniformity but carry
/// exactly zero imaginary parts; the constant term is `(-1)^n det(A)` and
/// the `z^(n-1)` coefficient is `-trace(A)`.
pub fn characteristic_polynomial(a: &RealSquareMatrix) -> Result<Polynomial> {
    let n = a.order();
    let ac = a.to_complex();

    // Faddeev-LeVerrier: M_0 = I, c_n = 1, and for k = 1..n
    //   c_{n-k} = -trace(A M_{k-1}) / k,  M_k = A M_{k-1} + c_{n-k} I.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexSquareMatrix::identity(n);
    for k in 1..=n {
        let am = ac.mul(&m);
        let c = -am.trace() / k as f64;
        coeffs[n - k] = c;
        m = am.shift_diagonal(c);
    }

    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::CharPolyOverflow);
    }
    debug_assert!(coeffs.iter().all(|c| c.im == 0.0));
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_poly_eval;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn example_two_by_two() {
        let a = RealSquareMatrix::from_rows(&[vec![1.0, 2.0], vec![4.0, 3.0]]).unwrap();
        let p = characteristic_polynomial(&a).unwrap();
        assert_eq!(p.coeffs(), &[c(-5.0), c(-4.0), c(1.0)]);
    }

    #[test]
    fn zero_matrix_gives_pure_power() {
        let p = characteristic_polynomial(&RealSquareMatrix::zero(2)).unwrap();
        assert_eq!(p.coeffs(), &[c(0.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = RealSquareMatrix::from_rows(&[
            vec![1e300, 1e300],
            vec![1e300, 1e300],
        ])
        .unwrap();
        assert!(matches!(characteristic_polynomial(&a), Err(Error::CharPolyOverflow)));
    }

    /// Cofactor-expansion determinant of an integer matrix, exact for the
    /// small sizes used here.
    fn det_cofactor(n: usize, m: &[f64]) -> f64 {
        if n == 1 {
            return m[0];
        }
        let mut det = 0.0;
        let mut sign = 1.0;
        for col in 0..n {
            let minor: Vec<f64> = (1..n)
                .flat_map(|i| (0..n).filter(|&j| j != col).map(move |j| (i, j)))
                .map(|(i, j)| m[i * n + j])
                .collect();
            det += sign * m[col] * det_cofactor(n - 1, &minor);
            sign = -sign;
        }
        det
    }

    /// Independent oracle: evaluate det(zI - A) at n+1 integer sample points
    /// by cofactor expansion and interpolate with divided differences.
    fn charpoly_by_interpolation(a: &RealSquareMatrix) -> Vec<f64> {
        let n = a.order();
        let points: Vec<f64> = (0..=n).map(|k| k as f64 - (n as f64 / 2.0).floor()).collect();
        let values: Vec<f64> = points
            .iter()
            .map(|&z| {
                let shifted: Vec<f64> = (0..n * n)
                    .map(|idx| {
                        let (i, j) = (idx / n, idx % n);
                        if i == j { z - a.get(i, j) } else { -a.get(i, j) }
                    })
                    .collect();
                det_cofactor(n, &shifted)
            })
            .collect();
        // Newton form via divided differences, then expand to monomials.
        let mut dd = values.clone();
        for level in 1..=n {
            for i in (level..=n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - level]);
            }
        }
        let mut coeffs = vec![0.0; n + 1];
        for k in (0..=n).rev() {
            // coeffs = coeffs * (z - points[k]) + dd[k]
            for j in (1..=n).rev() {
                coeffs[j] = coeffs[j - 1] - points[k] * coeffs[j];
            }
            coeffs[0] = dd[k] - points[k] * coeffs[0];
        }
        coeffs
    }

    #[test]
    fn matches_cofactor_interpolation_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let entries: Vec<f64> = (0..16).map(|_| rng.random_range(-5..=5) as f64).collect();
            let a = RealSquareMatrix::new(4, entries).unwrap();
            let p = characteristic_polynomial(&a).unwrap();
            let want = charpoly_by_interpolation(&a);
            for (k, &w) in want.iter().enumerate() {
                let got = p.coeff(k).re;
                assert!(
                    (got - w).abs() <= 1e-10 * (1.0 + w.abs()),
                    "coefficient {k}: got {got}, oracle {w}"
                );
            }
        }
    }

    #[test]
    fn cayley_hamilton_residual_is_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(1..=6);
            let entries: Vec<f64> = (0..n * n).map(|_| rng.random_range(-5..=5) as f64).collect();
            let a = RealSquareMatrix::new(n, entries).unwrap();
            let p = characteristic_polynomial(&a).unwrap();
            let residual = matrix_poly_eval(&p, &a.to_complex()).norm_inf();
            let scale = 1.0 + a.norm_inf().powi(n as i32);
            assert!(residual / scale <= 1e-8, "residual {residual} at order {n}");
        }
    }

    #[test]
    fn subleading_coefficient_is_negative_trace() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let n = rng.random_range(1..=6);
            let entries: Vec<f64> = (0..n * n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let a = RealSquareMatrix::new(n, entries).unwrap();
            let p = characteristic_polynomial(&a).unwrap();
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            assert!(p.is_monic());
            assert_eq!(p.leading(), Complex64::new(1.0, 0.0));
            let got = p.coeff(n - 1).re;
            assert!((got + trace).abs() <= 1e-12 * (1.0 + trace.abs()));
        }
    }
}
