//! Matrix exponentials e^{tA} through the characteristic polynomial.
//!
//! The pipeline factors e^{tA} into a short symbolic form
//!
//! ```text
//! e^{tA} = sum_j e^{lambda_j t} sum_i t^i M_{j,i}
//! ```
//!
//! with constant matrices M_{j,i}, built once per matrix and evaluable at
//! any real t. The steps: Faddeev-LeVerrier characteristic polynomial,
//! Aberth-Ehrlich root finding, clustering of numeric roots into distinct
//! eigenvalues with multiplicities, partial fraction decomposition with
//! repeated poles (derivatives handled by truncated Taylor jets), and
//! matrix assembly through the Cayley-Hamilton identity. No Jordan form,
//! no eigenvectors, no matrix inversion.
//!
//! An independent scaling-and-squaring oracle ([`expm_oracle`]) provides a
//! second route for verification, [`solve_ivp`] applies the exponential to
//! linear initial value problems x' = Ax, and [`stability_report`]
//! certifies exponential decay bounds for Hurwitz matrices.
//!
//! ```
//! use matexp::{build_symbolic_exponential, RealSquareMatrix};
//!
//! let a = RealSquareMatrix::from_rows(&[vec![1.0, 2.0], vec![4.0, 3.0]]).unwrap();
//! let e = build_symbolic_exponential(&a, None).unwrap();
//! let at_one = e.evaluate(1.0).unwrap();
//! assert!((at_one.get(0, 0) - (2.0 * 5f64.exp() + 4.0 * (-1f64).exp()) / 6.0).abs() < 1e-10);
//! ```

pub mod charpoly;
pub mod engine;
pub mod error;
pub mod jets;
pub mod matrix;
pub mod partialfrac;
pub mod poly;
pub mod rootfind;

pub use num_complex::Complex64;

pub use charpoly::characteristic_polynomial;
pub use engine::{
    build_symbolic_exponential, build_symbolic_exponential_with, expm_oracle, solve_ivp,
    solve_ivp_with, stability_report, stability_report_for, BuildConfig, BuildWarning,
    ExponentialTerm, StabilityReport, SymbolicExponential, Trajectory,
};
pub use error::{Error, Result};
pub use jets::TaylorJet;
pub use matrix::{matrix_poly_eval, ComplexSquareMatrix, RealSquareMatrix};
pub use partialfrac::{
    basis_polynomials, exp_coefficients, pf_rational, BasisPolynomial, ExpCoefficient,
    PartialFractionCoefficients,
};
pub use poly::Polynomial;
pub use rootfind::{
    cluster_spectrum, default_cluster_tol, find_roots, find_roots_seeded, refine_spectrum,
    Spectrum, SpectrumItem,
};
