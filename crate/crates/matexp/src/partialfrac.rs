//! Partial fraction decomposition with repeated roots.
//!
//! For a monic p with distinct zeros lambda_j of multiplicities m_j, the
//! decomposition constants of r(z)/p(z) are
//!
//!   C_{jk} = g_j^{(m_j - k)}(lambda_j) / (m_j - k)!,
//!   g_j(z) = r(z) / prod_{l != j} (z - lambda_l)^{m_l},
//!
//! computed here without symbolic differentiation: the needed derivative of
//! g_j is a coefficient of the product of the r-jet with the reciprocal
//! cofactor jet at lambda_j. The same machinery serves the exponential
//! numerator e^{tz}, where the Leibniz rule splits the derivatives into
//! powers of t (handled analytically, t stays symbolic) times cofactor jet
//! coefficients, so one decomposition serves every evaluation time.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::TaylorJet;
use crate::poly::Polynomial;
use crate::rootfind::Spectrum;

/// p_A(z) / (z - lambda_j)^k for one eigenvalue index j and one power
/// k in 1..=m_j; degree is n - k.
#[derive(Debug, Clone)]
pub struct BasisPolynomial {
    pub eigen_index: usize,
    pub power: usize,
    pub poly: Polynomial,
}

/// The time-dependent coefficient attached to basis polynomial (j, k):
/// C_{jk}(t) = e^{lambda t} * sum_i t_poly[i] * t^i.
#[derive(Debug, Clone)]
pub struct ExpCoefficient {
    pub eigen_index: usize,
    pub power: usize,
    pub lambda: Complex64,
    pub t_poly: Vec<Complex64>,
}

impl ExpCoefficient {
    pub fn eval(&self, t: f64) -> Complex64 {
        let mut poly = Complex64::new(0.0, 0.0);
        for &d in self.t_poly.iter().rev() {
            poly = poly * t + d;
        }
        (self.lambda * t).exp() * poly
    }
}

/// Partial fraction constants as a map (j, k) -> C_{jk}, stored per
/// eigenvalue in the spectrum order with k ascending from 1.
#[derive(Debug, Clone)]
pub struct PartialFractionCoefficients {
    per_eigenvalue: Vec<Vec<Complex64>>,
}

impl PartialFractionCoefficients {
    /// C_{jk}; `j` indexes the spectrum, `k` counts from 1 to m_j.
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.per_eigenvalue[j][k - 1]
    }

    pub fn per_eigenvalue(&self) -> &[Vec<Complex64>] {
        &self.per_eigenvalue
    }

    /// sum_{j,k} C_{jk} / (z - lambda_j)^k, the decomposition side of the
    /// identity; diagnostic helper for recombination checks.
    pub fn eval_sum(&self, spectrum: &Spectrum, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, item) in spectrum.items().iter().enumerate() {
            let shift = z - item.lambda;
            let mut power = Complex64::new(1.0, 0.0);
            for k in 1..=item.multiplicity {
                power *= shift;
                acc += self.per_eigenvalue[j][k - 1] / power;
            }
        }
        acc
    }
}

/// Deflates `p` by `(z - lambda)` exactly `times` times, checking that each
/// remainder is small relative to the coefficients of `p`. A large remainder
/// means the spectrum does not describe this polynomial.
fn deflate_checked(p: &Polynomial, lambda: Complex64, times: usize, scale: f64) -> Result<Vec<Polynomial>> {
    let mut work = p.clone();
    let mut stages = Vec::with_capacity(times);
    for stage in 1..=times {
        let (quotient, remainder) = work.deflate(lambda);
        if remainder.norm() > 1e-6 * scale {
            return Err(Error::SpectrumInconsistent(format!(
                "deflation remainder {:.3e} at eigenvalue {} (stage {stage}) exceeds 1e-6 * {:.3e}",
                remainder.norm(),
                lambda,
                scale
            )));
        }
        stages.push(quotient.clone());
        work = quotient;
    }
    Ok(stages)
}

/// The n basis polynomials p_{jk} = p_A / (z - lambda_j)^k, ordered by
/// eigenvalue index ascending, then k ascending.
pub fn basis_polynomials(p_a: &Polynomial, spectrum: &Spectrum) -> Result<Vec<BasisPolynomial>> {
    let n = p_a.degree();
    if spectrum.source_degree() != n {
        return Err(Error::SpectrumInconsistent(format!(
            "spectrum describes degree {}, polynomial has degree {n}",
            spectrum.source_degree()
        )));
    }
    let scale = p_a.max_coeff_norm();
    let mut out = Vec::with_capacity(n);
    for (j, item) in spectrum.items().iter().enumerate() {
        let stages = deflate_checked(p_a, item.lambda, item.multiplicity, scale)?;
        for (k1, poly) in stages.into_iter().enumerate() {
            out.push(BasisPolynomial { eigen_index: j, power: k1 + 1, poly });
        }
    }
    Ok(out)
}

/// Unique partial fraction constants of r(z)/p_A(z) for a polynomial
/// numerator with degree(r) < degree(p_A).
pub fn pf_rational(
    r: &Polynomial,
    p_a: &Polynomial,
    spectrum: &Spectrum,
) -> Result<PartialFractionCoefficients> {
    if !r.is_zero() && r.degree() >= p_a.degree() {
        return Err(Error::DegreeViolation { numerator: r.degree(), denominator: p_a.degree() });
    }
    if spectrum.source_degree() != p_a.degree() {
        return Err(Error::SpectrumInconsistent(format!(
            "spectrum describes degree {}, polynomial has degree {}",
            spectrum.source_degree(),
            p_a.degree()
        )));
    }
    let scale = p_a.max_coeff_norm();
    let mut per_eigenvalue = Vec::with_capacity(spectrum.items().len());
    for item in spectrum.items() {
        let m = item.multiplicity;
        let cofactor = cofactor_polynomial(p_a, item.lambda, m, scale)?;
        let r_jet = TaylorJet::from_polynomial(r, item.lambda, m - 1);
        let h_jet = reciprocal_cofactor_jet(&cofactor, item.lambda, m - 1)?;
        let g_jet = r_jet.mul(&h_jet).expect("jets share their center by construction");
        per_eigenvalue.push((1..=m).map(|k| g_jet.coeff(m - k)).collect());
    }
    Ok(PartialFractionCoefficients { per_eigenvalue })
}

/// Time-symbolic coefficients C_{jk}(t) for the exponential numerator at
/// eigenvalue index `j`, k = 1..=m_j.
///
/// With h_j the reciprocal cofactor and s = m_j - k, the Leibniz rule gives
/// C_{jk}(t) = e^{lambda_j t} sum_{i=0..s} (h_j jet coefficient (s - i)) / i! * t^i.
pub fn exp_coefficients(
    p_a: &Polynomial,
    spectrum: &Spectrum,
    j: usize,
) -> Result<Vec<ExpCoefficient>> {
    let item = spectrum.items()[j];
    let m = item.multiplicity;
    let scale = p_a.max_coeff_norm();
    let cofactor = cofactor_polynomial(p_a, item.lambda, m, scale)?;
    let h_jet = reciprocal_cofactor_jet(&cofactor, item.lambda, m - 1)?;

    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let s = m - k;
        let mut t_poly = Vec::with_capacity(s + 1);
        let mut inv_factorial = 1.0;
        for i in 0..=s {
            if i > 0 {
                inv_factorial /= i as f64;
            }
            t_poly.push(h_jet.coeff(s - i) * inv_factorial);
        }
        out.push(ExpCoefficient { eigen_index: j, power: k, lambda: item.lambda, t_poly });
    }
    Ok(out)
}

/// prod_{l != j} (z - lambda_l)^{m_l}, obtained by deflating p_A at
/// lambda_j m_j times.
fn cofactor_polynomial(p_a: &Polynomial, lambda: Complex64, m: usize, scale: f64) -> Result<Polynomial> {
    let stages = deflate_checked(p_a, lambda, m, scale)?;
    Ok(stages.into_iter().last().expect("multiplicity >= 1"))
}

fn reciprocal_cofactor_jet(cofactor: &Polynomial, lambda: Complex64, order: usize) -> Result<TaylorJet> {
    TaylorJet::from_polynomial(cofactor, lambda, order)
        .reciprocal()
        .map_err(|e| match e {
            Error::ReciprocalAtZero => Error::SpectrumInconsistent(
                "cofactor vanishes at the eigenvalue; two spectrum entries collided".into(),
            ),
            other => other,
        })
}
