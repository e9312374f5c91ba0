//! Dense real and complex square matrices.
//!
//! Everything downstream of the characteristic polynomial works in complex
//! arithmetic, because eigenvalues of a real matrix may be complex and the
//! basis polynomials shift by them; realification happens once, at the very
//! end. All values are immutable after construction and all operations are
//! pure functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Real n x n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSquareMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl RealSquareMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for an order-{order} matrix, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidInput("matrix not square".into()));
        }
        Self::new(order, rows.concat())
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1.0;
        }
        Self { order, entries }
    }

    pub fn zero(order: usize) -> Self {
        Self { order, entries: vec![0.0; order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    /// Maximum over rows of the sum of entry magnitudes.
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| self.entries[i * self.order..(i + 1) * self.order].iter().map(|e| e.abs()).sum())
            .fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> ComplexSquareMatrix {
        ComplexSquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&e| Complex64::new(e, 0.0)).collect(),
        }
    }

    /// Matrix-vector product. The vector length must equal the order.
    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.order, "vector length does not match matrix order");
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Complex n x n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSquareMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl ComplexSquareMatrix {
    pub fn new(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for an order-{order} matrix, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { order, entries })
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); order * order];
        for i in 0..order {
            entries[i * order + i] = Complex64::new(1.0, 0.0);
        }
        Self { order, entries }
    }

    pub fn zero(order: usize) -> Self {
        Self { order, entries: vec![Complex64::new(0.0, 0.0); order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.order + col]
    }

    /// Standard matrix product. Mismatched orders are a caller bug and panic.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "matrix product with mismatched orders");
        let n = self.order;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Self { order: n, entries }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "matrix sum with mismatched orders");
        Self {
            order: self.order,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|&e| e * s).collect() }
    }

    /// `self + s * I`; shifting by `-lambda` forms `A - lambda I`.
    pub fn shift_diagonal(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.entries[i * self.order + i] += s;
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|e| e.conj()).collect() }
    }

    /// Maximum over rows of the sum of entry moduli.
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| {
                self.entries[i * self.order..(i + 1) * self.order]
                    .iter()
                    .map(|e| e.norm())
                    .sum()
            })
            .fold(0.0, f64::max)
    }

    /// Row-sum norm of the imaginary part alone.
    pub fn imag_norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| {
                self.entries[i * self.order..(i + 1) * self.order]
                    .iter()
                    .map(|e| e.im.abs())
                    .sum()
            })
            .fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> Result<RealSquareMatrix> {
        RealSquareMatrix::new(self.order, self.entries.iter().map(|e| e.re).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.re == 0.0 && e.im == 0.0)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.order).map(|i| self.entries[i * self.order + i]).sum()
    }
}

/// Evaluates `p(A)` by Horner's scheme, highest coefficient first, using
/// exactly `degree(p)` matrix products.
pub fn matrix_poly_eval(p: &Polynomial, a: &ComplexSquareMatrix) -> ComplexSquareMatrix {
    let d = p.degree();
    let mut acc = ComplexSquareMatrix::identity(a.order()).scale(p.coeff(d));
    for k in (0..d).rev() {
        acc = acc.mul(a).shift_diagonal(p.coeff(k));
    }
    acc
}
