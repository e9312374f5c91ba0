//! Truncated Taylor jets at a complex center.
//!
//! A jet stores c_r = f^(r)(center)/r!, r = 0..=K. Multiplication is the
//! truncated Cauchy product and the reciprocal follows the standard series
//! inversion recursion, so the derivative bookkeeping of the partial
//! fraction coefficients never touches symbolic differentiation. The
//! exponential factor e^{tz} is deliberately not a jet primitive; it is
//! split off analytically where the coefficients are assembled.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl TaylorJet {
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("jet needs at least one coefficient".into()));
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(&center) || !coeffs.iter().all(|c| finite(c)) {
            return Err(Error::InvalidInput("jet center and coefficients must be finite".into()));
        }
        Ok(Self { center, coeffs })
    }

    /// Taylor expansion of a polynomial at `center`, exact up to rounding.
    /// Recentering runs by repeated synthetic division by `(z - center)`,
    /// which is gentler than binomial expansion and exact on integer input.
    pub fn from_polynomial(p: &Polynomial, center: Complex64, order: usize) -> Self {
        let mut work = p.clone();
        let mut coeffs = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            let (quotient, remainder) = work.deflate(center);
            coeffs.push(remainder);
            work = quotient;
        }
        Self { center, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient c_r = f^(r)(center)/r!; zero beyond the stored order.
    pub fn coeff(&self, r: usize) -> Complex64 {
        self.coeffs.get(r).copied().unwrap_or(ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Truncated Cauchy product; both jets must share the same center and
    /// the result keeps the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::JetCenterMismatch { a: self.center, b: other.center });
        }
        let order = self.order().min(other.order());
        let mut coeffs = vec![ZERO; order + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            for i in 0..=k {
                *c += self.coeffs[i] * other.coeffs[k - i];
            }
        }
        Ok(Self { center: self.center, coeffs })
    }

    /// Series inversion: d_0 = 1/c_0, d_k = -(1/c_0) sum_{i=1..k} c_i d_{k-i}.
    /// Fails when the leading coefficient vanishes, which means the center is
    /// a zero of the series — for cofactor jets, a collided spectrum.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() < 1e-300 {
            return Err(Error::ReciprocalAtZero);
        }
        let inv = c0.inv();
        let mut coeffs = vec![ZERO; self.coeffs.len()];
        coeffs[0] = inv;
        for k in 1..self.coeffs.len() {
            let mut acc = ZERO;
            for i in 1..=k {
                acc += self.coeffs[i] * coeffs[k - i];
            }
            coeffs[k] = -inv * acc;
        }
        Ok(Self { center: self.center, coeffs })
    }
}
