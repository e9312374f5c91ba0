//! Complex-coefficient polynomials stored densely, ascending by degree.
//!
//! One type serves every role in the pipeline: characteristic polynomials,
//! deflated cofactors, basis polynomials and test numerators.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense polynomial; `coeffs[k]` holds the z^k coefficient. Never empty,
/// trailing coefficients that are exactly zero are trimmed away (the zero
/// polynomial keeps a single zero coefficient).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite polynomial coefficient {c}")));
        }
        Ok(Self::from_unchecked(coeffs))
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    /// Expands the product of `(z - lambda)^multiplicity` factors.
    pub fn from_roots(roots: &[(Complex64, usize)]) -> Self {
        let mut p = Self::one();
        for &(lambda, multiplicity) in roots {
            let factor = Self { coeffs: vec![-lambda, ONE] };
            for _ in 0..multiplicity {
                p = p.mul(&factor);
            }
        }
        p
    }

    fn from_unchecked(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// z^k coefficient; zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("polynomial is never empty")
    }

    pub fn is_monic(&self) -> bool {
        (self.leading() - ONE).norm() <= 1e-12
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation together with the magnitude sum sum_k |c_k||z|^k,
    /// the scale at which rounding noise drowns the value.
    pub fn eval_with_magnitude(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let mut acc = ZERO;
        let mut mag = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
            mag = mag * r + c.norm();
        }
        (acc, mag)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self::from_unchecked(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_unchecked(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_unchecked(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Synthetic division by `(z - center)`: returns the quotient and the
    /// remainder, which equals `self.eval(center)` up to rounding.
    pub fn deflate(&self, center: Complex64) -> (Self, Complex64) {
        let m = self.degree();
        if m == 0 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut quotient = vec![ZERO; m];
        let mut acc = self.coeffs[m];
        for k in (0..m).rev() {
            quotient[k] = acc;
            acc = self.coeffs[k] + center * acc;
        }
        (Self::from_unchecked(quotient), acc)
    }

    /// Long division: `self = quotient * divisor + remainder` with
    /// `degree(remainder) < degree(divisor)`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree();
        if self.degree() < dd || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            let q = rem[k] / lead;
            quot[k - dd] = q;
            if q == ZERO {
                continue;
            }
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= q * c;
            }
            rem[k] = ZERO;
        }
        rem.truncate(dd.max(1));
        (Self::from_unchecked(quot), Self::from_unchecked(rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_trailing_zeros_but_keeps_one() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
        let z = Polynomial::from_real(&[0.0, 0.0]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(Polynomial::from_real(&[1.0, f64::NAN]).is_err());
        assert!(Polynomial::new(vec![]).is_err());
    }

    #[test]
    fn eval_matches_expansion() {
        // (z+1)(z-5) = z^2 - 4z - 5
        let p = Polynomial::from_real(&[-5.0, -4.0, 1.0]).unwrap();
        assert_eq!(p.eval(c(-1.0, 0.0)), c(0.0, 0.0));
        assert_eq!(p.eval(c(5.0, 0.0)), c(0.0, 0.0));
        assert_eq!(p.eval(c(0.0, 0.0)), c(-5.0, 0.0));
    }

    #[test]
    fn from_roots_expands_example_polynomial() {
        let p = Polynomial::from_roots(&[(c(-1.0, 0.0), 1), (c(5.0, 0.0), 1)]);
        assert_eq!(p.coeffs(), &[c(-5.0, 0.0), c(-4.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn deflate_splits_off_linear_factor() {
        let p = Polynomial::from_real(&[-5.0, -4.0, 1.0]).unwrap();
        let (q, rem) = p.deflate(c(5.0, 0.0));
        assert_eq!(rem, c(0.0, 0.0));
        assert_eq!(q.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0)]); // z + 1
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = Polynomial::from_real(&[3.0, 1.0, -2.0, 0.0, 1.0]).unwrap();
        let d = Polynomial::from_real(&[1.0, 1.0, 1.0]).unwrap();
        let (q, r) = p.div_rem(&d);
        assert!(r.degree() < d.degree());
        let back = q.mul(&d);
        for k in 0..=p.degree() {
            let got = back.coeff(k) + r.coeff(k);
            assert!((got - p.coeff(k)).norm() <= 1e-12, "coeff {k}: {got}");
        }
    }

    #[test]
    fn derivative_drops_degree() {
        let p = Polynomial::from_real(&[-5.0, -4.0, 1.0]).unwrap();
        assert_eq!(p.derivative().coeffs(), &[c(-4.0, 0.0), c(2.0, 0.0)]);
        assert!(Polynomial::one().derivative().is_zero());
    }
}
