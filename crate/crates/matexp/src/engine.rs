//! Assembly and evaluation of the symbolic exponential
//!
//!   e^{tA} = sum_j e^{lambda_j t} sum_i t^i M_{j,i},
//!
//! plus an independent scaling-and-squaring oracle, the linear IVP solver
//! x' = Ax, and the exponential stability certificate.
//!
//! Regrouping the decomposition sum_{j,k} C_{jk}(t) p_{jk}(A) into constant
//! matrices M_{j,i} front-loads all matrix work: each evaluation afterwards
//! costs O(#terms n^2), which is what trajectory sampling and stability
//! certification want.

use std::fmt;

use num_complex::Complex64;

use crate::charpoly::characteristic_polynomial;
use crate::error::{Error, Result};
use crate::matrix::{ComplexSquareMatrix, RealSquareMatrix};
use crate::partialfrac::{basis_polynomials, exp_coefficients};
use crate::rootfind::{cluster_spectrum, default_cluster_tol, find_roots_seeded, refine_spectrum, Spectrum};

/// Below this eigenvalue separation the decomposition coefficients carry
/// denominators (lambda - mu)^k that amplify rounding; builds attach a
/// warning instead of failing.
pub const CONDITIONING_SEPARATION_LIMIT: f64 = 1e-3;

/// One additive term e^{lambda t} t^power * matrix.
#[derive(Debug, Clone)]
pub struct ExponentialTerm {
    pub lambda: Complex64,
    pub power: usize,
    pub matrix: ComplexSquareMatrix,
}

/// Non-fatal diagnostics attached to a build.
#[derive(Debug, Clone, PartialEq)]
pub enum BuildWarning {
    /// Distinct eigenvalues closer than [`CONDITIONING_SEPARATION_LIMIT`].
    CloseEigenvalues { min_separation: f64 },
}

impl fmt::Display for BuildWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildWarning::CloseEigenvalues { min_separation } => write!(
                f,
                "eigenvalues separated by only {min_separation:.3e}; decomposition coefficients \
                 may be ill-conditioned. Consider a larger cluster tolerance so near-equal \
                 eigenvalues merge into one of higher multiplicity."
            ),
        }
    }
}

/// Knobs for [`build_symbolic_exponential_with`].
#[derive(Debug, Clone)]
pub struct BuildConfig {
    /// Clustering radius; `None` picks the scaled default.
    pub cluster_tol: Option<f64>,
    /// Seed for the root finder's deterministic initial perturbation.
    pub root_seed: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self { cluster_tol: None, root_seed: crate::rootfind::DEFAULT_SEED }
    }
}

/// The computed exponential in regrouped form, reusable for any t.
#[derive(Debug, Clone)]
pub struct SymbolicExponential {
    order: usize,
    terms: Vec<ExponentialTerm>,
    spectrum: Spectrum,
    warnings: Vec<BuildWarning>,
}

impl SymbolicExponential {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[ExponentialTerm] {
        &self.terms
    }

    /// The spectrum the terms were built from.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn warnings(&self) -> &[BuildWarning] {
        &self.warnings
    }

    /// Numeric e^{tA}: the real part of sum e^{lambda_j t} t^i M_{j,i}.
    ///
    /// The imaginary parts of conjugate term pairs cancel; a residue above
    /// 1e-8 (1 + norm) means the pairing broke upstream and is an error, as
    /// is overflow of e^{Re(lambda) t}.
    pub fn evaluate(&self, t: f64) -> Result<RealSquareMatrix> {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("evaluation time must be finite, got {t}")));
        }
        let mut acc = ComplexSquareMatrix::zero(self.order);
        for term in &self.terms {
            let weight = (term.lambda * t).exp() * t.powi(term.power as i32);
            if !weight.re.is_finite() || !weight.im.is_finite() {
                return Err(Error::ExponentialOverflow { t });
            }
            acc = acc.add(&term.matrix.scale(weight));
        }
        if acc.entries().iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::ExponentialOverflow { t });
        }
        let real = acc.real_part()?;
        let residue = acc.imag_norm_inf();
        let limit = 1e-8 * (1.0 + real.norm_inf());
        if residue > limit {
            return Err(Error::RealificationFailed { residue, limit });
        }
        Ok(real)
    }
}

/// Builds the symbolic exponential of a real matrix with an optional
/// clustering tolerance override.
pub fn build_symbolic_exponential(
    a: &RealSquareMatrix,
    cluster_tol: Option<f64>,
) -> Result<SymbolicExponential> {
    build_symbolic_exponential_with(a, &BuildConfig { cluster_tol, ..BuildConfig::default() })
}

/// Full pipeline: characteristic polynomial, roots, clustering, basis
/// polynomials, exponential coefficients, regrouped matrix terms.
pub fn build_symbolic_exponential_with(
    a: &RealSquareMatrix,
    config: &BuildConfig,
) -> Result<SymbolicExponential> {
    let n = a.order();
    let p = characteristic_polynomial(a)?;
    let roots = find_roots_seeded(&p, config.root_seed)?;
    let tol = match config.cluster_tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => {
            return Err(Error::InvalidInput(format!("cluster tolerance must be positive, got {t}")))
        }
        None => default_cluster_tol(&roots),
    };
    let spectrum = cluster_spectrum(&roots, tol)?;
    let spectrum = refine_spectrum(&p, &spectrum);

    let mut warnings = Vec::new();
    if let Some(sep) = spectrum.min_separation() {
        if sep < CONDITIONING_SEPARATION_LIMIT {
            warnings.push(BuildWarning::CloseEigenvalues { min_separation: sep });
        }
    }

    // The basis polynomials double as a consistency check between the
    // spectrum and the characteristic polynomial (deflation remainders).
    let _basis = basis_polynomials(&p, &spectrum)?;
    let ac = a.to_complex();
    let mut terms = Vec::new();
    let mut families: Vec<Vec<ComplexSquareMatrix>> = Vec::with_capacity(spectrum.items().len());
    for (j, item) in spectrum.items().iter().enumerate() {
        let m = item.multiplicity;
        // p_{j,k}(A) family: the cofactor product B_j = prod_{l != j}
        // (A - lambda_l I)^{m_l} evaluated as a product of shifted factors
        // (cheaper and better conditioned than Horner on the expanded
        // coefficients), then m - 1 right-multiplications by
        // (A - lambda_j I) for the lower powers.
        //
        // A conjugate partner reuses the representative's family entrywise
        // conjugated, which keeps the pairing exact and realification clean.
        let partner = spectrum.items()[..j]
            .iter()
            .position(|it| it.lambda == item.lambda.conj() && it.multiplicity == m && it.lambda.im != 0.0);
        let mut family = vec![ComplexSquareMatrix::zero(n); m];
        if let Some(pj) = partner.filter(|_| item.lambda.im != 0.0) {
            for (k, mat) in families[pj].iter().enumerate() {
                family[k] = mat.conj();
            }
        } else {
            let mut b = ComplexSquareMatrix::identity(n);
            for (l, other) in spectrum.items().iter().enumerate() {
                if l == j {
                    continue;
                }
                let factor = ac.shift_diagonal(-other.lambda);
                for _ in 0..other.multiplicity {
                    b = b.mul(&factor);
                }
            }
            family[m - 1] = b;
            if m > 1 {
                let shifted = ac.shift_diagonal(-item.lambda);
                for k in (1..m).rev() {
                    family[k - 1] = family[k].mul(&shifted);
                }
            }
        }
        let coefficients = exp_coefficients(&p, &spectrum, j)?;
        for i in 0..m {
            let mut matrix = ComplexSquareMatrix::zero(n);
            for ec in &coefficients {
                // t^i appears in C_{jk}(t) only while i <= m - k
                if i + ec.power <= m {
                    matrix = matrix.add(&family[ec.power - 1].scale(ec.t_poly[i]));
                }
            }
            if !matrix.is_zero() {
                terms.push(ExponentialTerm { lambda: item.lambda, power: i, matrix });
            }
        }
        families.push(family);
    }

    Ok(SymbolicExponential { order: n, terms, spectrum, warnings })
}

/// Independent verification path: scaling and squaring with a degree-20
/// Taylor series on tA/2^s, where s is the smallest scaling exponent that
/// brings the row-sum norm at or below one half.
pub fn expm_oracle(a: &RealSquareMatrix, t: f64) -> Result<RealSquareMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("evaluation time must be finite, got {t}")));
    }
    let n = a.order();
    let scaled_norm = a.norm_inf() * t.abs();
    let squarings = if scaled_norm <= 0.5 { 0 } else { (scaled_norm / 0.5).log2().ceil() as i32 };
    let factor = t / 2f64.powi(squarings);
    let b: Vec<f64> = a.entries().iter().map(|&e| e * factor).collect();

    let mut acc = identity_entries(n);
    let mut term = identity_entries(n);
    for k in 1..=20 {
        term = real_mul(n, &term, &b);
        let inv_k = 1.0 / k as f64;
        for x in &mut term {
            *x *= inv_k;
        }
        for (a_entry, t_entry) in acc.iter_mut().zip(&term) {
            *a_entry += t_entry;
        }
    }
    for _ in 0..squarings {
        acc = real_mul(n, &acc, &acc);
    }
    RealSquareMatrix::new(n, acc).map_err(|_| Error::ExponentialOverflow { t })
}

fn identity_entries(n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        e[i * n + i] = 1.0;
    }
    e
}

fn real_mul(n: usize, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let xv = x[i * n + k];
            if xv == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += xv * y[k * n + j];
            }
        }
    }
    out
}

/// Sampled states of x' = Ax, x(0) = x0.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

/// Solves the IVP by building the exponential once and evaluating it at
/// every requested time. Times must be finite and strictly increasing.
pub fn solve_ivp(a: &RealSquareMatrix, x0: &[f64], times: &[f64]) -> Result<Trajectory> {
    solve_ivp_with(a, x0, times, &BuildConfig::default())
}

/// [`solve_ivp`] with explicit build configuration.
pub fn solve_ivp_with(
    a: &RealSquareMatrix,
    x0: &[f64],
    times: &[f64],
    config: &BuildConfig,
) -> Result<Trajectory> {
    if x0.len() != a.order() {
        return Err(Error::InvalidInput(format!(
            "initial state has {} components, matrix order is {}",
            x0.len(),
            a.order()
        )));
    }
    if x0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("initial state must be finite".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidInput("times must be finite".into()));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("times must be strictly increasing".into()));
    }
    let s = build_symbolic_exponential_with(a, config)?;
    let states = times
        .iter()
        .map(|&t| Ok(s.evaluate(t)?.mat_vec(x0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { times: times.to_vec(), states })
}

/// Exponential stability certificate for x' = Ax.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// max_j Re(lambda_j).
    pub spectral_abscissa: f64,
    /// Certified decay rate, present only for stable systems; halfway
    /// between the abscissa and zero.
    pub alpha: Option<f64>,
    /// Certified amplitude such that norm_inf(e^{tA}) <= C e^{alpha t} held
    /// at every sample.
    pub c: Option<f64>,
    pub is_asymptotically_stable: bool,
    pub samples_checked: usize,
}

/// Certifies |x(t)| <= C e^{alpha t} |x0| for t >= 0 when every eigenvalue
/// has negative real part.
///
/// alpha is the half-abscissa, which strictly separates the eigenvalue real
/// parts from zero. C is a sampled supremum of norm_inf(e^{tA}) e^{-alpha t}
/// over `samples` log-spaced times in (0, horizon] (three decades below the
/// horizon), floored at one and widened by ten percent. The bound is stated
/// for t >= 0 only: with alpha < 0 and finite C a decay bound cannot also
/// hold toward t -> -infinity.
pub fn stability_report(a: &RealSquareMatrix, horizon: f64, samples: usize) -> Result<StabilityReport> {
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(Error::InvalidInput(format!("horizon must be positive, got {horizon}")));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let s = build_symbolic_exponential(a, None)?;
    stability_report_for(&s, horizon, samples)
}

/// Same certificate computed from an already-built exponential.
pub fn stability_report_for(
    s: &SymbolicExponential,
    horizon: f64,
    samples: usize,
) -> Result<StabilityReport> {
    let spectral_abscissa = s.spectrum().spectral_abscissa();
    if spectral_abscissa >= 0.0 {
        return Ok(StabilityReport {
            spectral_abscissa,
            alpha: None,
            c: None,
            is_asymptotically_stable: false,
            samples_checked: 0,
        });
    }
    let alpha = spectral_abscissa / 2.0;
    let mut supremum = 0.0f64;
    for i in 0..samples {
        let fraction = if samples == 1 { 1.0 } else { i as f64 / (samples - 1) as f64 };
        let t = horizon * 10f64.powf(-3.0 * (1.0 - fraction));
        let norm = s.evaluate(t)?.norm_inf();
        supremum = supremum.max(norm * (-alpha * t).exp());
    }
    let c = 1.1 * supremum.max(1.0);
    Ok(StabilityReport {
        spectral_abscissa,
        alpha: Some(alpha),
        c: Some(c),
        is_asymptotically_stable: true,
        samples_checked: samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat(rows: &[&[f64]]) -> RealSquareMatrix {
        RealSquareMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn example_matrix() -> RealSquareMatrix {
        mat(&[&[1.0, 2.0], &[4.0, 3.0]])
    }

    /// Closed form of the worked 2x2 example:
    /// (e^{5t}/6) [[2,2],[4,4]] - (e^{-t}/6) [[-4,2],[4,-2]].
    fn example_closed_form(t: f64) -> [[f64; 2]; 2] {
        let a = (5.0 * t).exp() / 6.0;
        let b = (-t).exp() / 6.0;
        [
            [2.0 * a + 4.0 * b, 2.0 * a - 2.0 * b],
            [4.0 * a - 4.0 * b, 4.0 * a + 2.0 * b],
        ]
    }

    #[test]
    fn build_reproduces_example_terms() {
        let s = build_symbolic_exponential(&example_matrix(), None).unwrap();
        assert_eq!(s.terms().len(), 2);
        let plus = s.terms().iter().find(|t| (t.lambda - c(5.0, 0.0)).norm() < 1e-9).unwrap();
        assert_eq!(plus.power, 0);
        let want_plus = [[2.0 / 6.0, 2.0 / 6.0], [4.0 / 6.0, 4.0 / 6.0]];
        for i in 0..2 {
            for j in 0..2 {
                let got = plus.matrix.get(i, j);
                assert!((got - c(want_plus[i][j], 0.0)).norm() <= 1e-12, "({i},{j}): {got}");
            }
        }
        let minus = s.terms().iter().find(|t| (t.lambda - c(-1.0, 0.0)).norm() < 1e-9).unwrap();
        let want_minus = [[4.0 / 6.0, -2.0 / 6.0], [-4.0 / 6.0, 2.0 / 6.0]];
        for i in 0..2 {
            for j in 0..2 {
                let got = minus.matrix.get(i, j);
                assert!((got - c(want_minus[i][j], 0.0)).norm() <= 1e-12, "({i},{j}): {got}");
            }
        }
    }

    #[test]
    fn zero_matrix_is_identity_term() {
        let s = build_symbolic_exponential(&RealSquareMatrix::zero(2), None).unwrap();
        // the t^1 term has an exactly zero matrix and is pruned
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].power, 0);
        let e = s.evaluate(3.7).unwrap();
        assert_eq!(e, RealSquareMatrix::identity(2));
    }

    #[test]
    fn nilpotent_matrix_gives_linear_polynomial() {
        let n = mat(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let s = build_symbolic_exponential(&n, None).unwrap();
        assert_eq!(s.terms().len(), 2);
        let constant = s.terms().iter().find(|t| t.power == 0).unwrap();
        let linear = s.terms().iter().find(|t| t.power == 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want_i = if i == j { 1.0 } else { 0.0 };
                assert!((constant.matrix.get(i, j) - c(want_i, 0.0)).norm() <= 1e-12);
                assert!((linear.matrix.get(i, j) - c(n.get(i, j), 0.0)).norm() <= 1e-12);
            }
        }
        // exp(tN) = I + tN exactly, since N^2 = 0
        let e = s.evaluate(2.5).unwrap();
        assert!((e.get(0, 1) - 2.5).abs() <= 1e-12);
    }

    #[test]
    fn evaluate_at_zero_is_identity() {
        let s = build_symbolic_exponential(&example_matrix(), None).unwrap();
        let e = s.evaluate(0.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((e.get(i, j) - want).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn evaluate_matches_closed_form_at_one() {
        let s = build_symbolic_exponential(&example_matrix(), None).unwrap();
        let e = s.evaluate(1.0).unwrap();
        let want = example_closed_form(1.0);
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (e.get(i, j) - want[i][j]).abs() <= 1e-12 * (1.0 + want[i][j].abs()),
                    "({i},{j}): {} vs {}",
                    e.get(i, j),
                    want[i][j]
                );
            }
        }
    }

    #[test]
    fn rotation_by_pi_flips_sign() {
        let a = mat(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let s = build_symbolic_exponential(&a, None).unwrap();
        let e = s.evaluate(std::f64::consts::PI).unwrap();
        let want = [[-1.0, 0.0], [0.0, -1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((e.get(i, j) - want[i][j]).abs() <= 1e-12, "({i},{j}) = {}", e.get(i, j));
            }
        }
    }

    #[test]
    fn conjugate_terms_carry_conjugate_matrices() {
        // one pair, and a matrix with two distinct conjugate pairs where
        // factor ordering in the cofactor products could break exactness
        let single = mat(&[&[0.5, 2.0], &[-2.0, 0.5]]);
        let two_pairs = mat(&[
            &[0.5, 2.0, 0.0, 0.0],
            &[-2.0, 0.5, 0.0, 0.0],
            &[0.0, 0.0, -0.3, 1.0],
            &[0.0, 0.0, -1.0, -0.3],
        ]);
        for a in [single, two_pairs] {
            let s = build_symbolic_exponential(&a, None).unwrap();
            assert!(s.terms().iter().any(|t| t.lambda.im != 0.0));
            for term in s.terms() {
                let partner = s
                    .terms()
                    .iter()
                    .find(|t| t.lambda == term.lambda.conj() && t.power == term.power)
                    .expect("conjugate partner missing");
                for (x, y) in term.matrix.entries().iter().zip(partner.matrix.entries()) {
                    assert_eq!(*x, y.conj());
                }
            }
        }
    }

    #[test]
    fn oracle_zero_matrix() {
        let e = expm_oracle(&RealSquareMatrix::zero(3), 4.2).unwrap();
        assert_eq!(e, RealSquareMatrix::identity(3));
    }

    #[test]
    fn oracle_diagonal_matrix() {
        let a = mat(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let e = expm_oracle(&a, 1.0).unwrap();
        assert!((e.get(0, 0) - 1f64.exp()).abs() <= 1e-13 * 1f64.exp());
        assert!((e.get(1, 1) - 2f64.exp()).abs() <= 1e-13 * 2f64.exp());
        assert_eq!(e.get(0, 1), 0.0);
        assert_eq!(e.get(1, 0), 0.0);
    }

    #[test]
    fn oracle_matches_example_closed_form() {
        let e = expm_oracle(&example_matrix(), 1.0).unwrap();
        let want = example_closed_form(1.0);
        for i in 0..2 {
            for j in 0..2 {
                assert!((e.get(i, j) - want[i][j]).abs() <= 1e-10 * (1.0 + want[i][j].abs()));
            }
        }
    }

    #[test]
    fn evaluate_and_oracle_agree_on_seeded_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
        let mut tested = 0;
        while tested < 12 {
            let n = rng.random_range(1..=6usize);
            let entries: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = RealSquareMatrix::new(n, entries).unwrap();
            let s = match build_symbolic_exponential(&a, None) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if s.spectrum().min_separation().map_or(false, |sep| sep < 0.1) {
                continue;
            }
            tested += 1;
            for &t in &[-2.0, -0.5, 0.3, 1.0, 2.0] {
                let got = s.evaluate(t).unwrap();
                let want = expm_oracle(&a, t).unwrap();
                let mut diff = 0.0;
                for (g, w) in got.entries().iter().zip(want.entries()) {
                    diff += (g - w) * (g - w);
                }
                let rel = diff.sqrt() / want.norm_fro();
                assert!(rel <= 1e-8, "n={n}, t={t}: relative error {rel}");
            }
        }
    }

    #[test]
    fn overflow_is_reported_not_inf() {
        let a = mat(&[&[710.0, 0.0], &[0.0, 710.0]]);
        let s = build_symbolic_exponential(&a, None).unwrap();
        assert!(matches!(s.evaluate(2.0), Err(Error::ExponentialOverflow { .. })));
        assert!(matches!(expm_oracle(&a, 2.0), Err(Error::ExponentialOverflow { .. })));
    }

    #[test]
    fn ivp_initial_condition_and_diagonal_decoupling() {
        let a = mat(&[&[-0.5, 0.0], &[0.0, 2.0]]);
        let x0 = [3.0, -1.0];
        let traj = solve_ivp(&a, &x0, &[0.0, 0.7, 1.4]).unwrap();
        assert_eq!(traj.states[0], vec![3.0, -1.0]);
        for (idx, &t) in traj.times.iter().enumerate() {
            let want = [3.0 * (-0.5 * t).exp(), -1.0 * (2.0 * t).exp()];
            for i in 0..2 {
                assert!(
                    (traj.states[idx][i] - want[i]).abs() <= 1e-10 * (1.0 + want[i].abs()),
                    "t={t}, i={i}"
                );
            }
        }
    }

    #[test]
    fn ivp_example_first_column() {
        let traj = solve_ivp(&example_matrix(), &[1.0, 0.0], &[1.0]).unwrap();
        let want = example_closed_form(1.0);
        assert!((traj.states[0][0] - want[0][0]).abs() <= 1e-10 * want[0][0].abs());
        assert!((traj.states[0][1] - want[1][0]).abs() <= 1e-10 * want[1][0].abs());
    }

    #[test]
    fn ivp_validates_inputs() {
        let a = example_matrix();
        assert!(matches!(solve_ivp(&a, &[1.0], &[0.0]), Err(Error::InvalidInput(_))));
        assert!(matches!(solve_ivp(&a, &[1.0, 0.0], &[1.0, 0.5]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn stability_of_negated_identity() {
        let a = mat(&[&[-1.0, 0.0], &[0.0, -1.0]]);
        let report = stability_report(&a, 50.0, 200).unwrap();
        assert!(report.is_asymptotically_stable);
        assert!((report.spectral_abscissa + 1.0).abs() <= 1e-12);
        assert_eq!(report.alpha, Some(-0.5));
        // norm e^{tA} e^{t/2} = e^{-t/2} < 1 on the whole grid, so the
        // sampled supremum floors at one and C is exactly 1.1
        assert!((report.c.unwrap() - 1.1).abs() <= 1e-12);
        assert_eq!(report.samples_checked, 200);
    }

    #[test]
    fn stability_rejects_unstable_example() {
        let report = stability_report(&example_matrix(), 50.0, 50).unwrap();
        assert!(!report.is_asymptotically_stable);
        assert!((report.spectral_abscissa - 5.0).abs() <= 1e-8);
        assert_eq!(report.alpha, None);
        assert_eq!(report.c, None);
    }

    #[test]
    fn stability_certificate_holds_on_fresh_grid() {
        // z^2 + 3z + 2 = (z+1)(z+2)
        let a = mat(&[&[0.0, 1.0], &[-2.0, -3.0]]);
        let s = build_symbolic_exponential(&a, None).unwrap();
        let report = stability_report_for(&s, 50.0, 200).unwrap();
        assert!(report.is_asymptotically_stable);
        assert!((report.spectral_abscissa + 1.0).abs() <= 1e-9);
        let (alpha, cbound) = (report.alpha.unwrap(), report.c.unwrap());
        for i in 0..=500 {
            let t = 50.0 * i as f64 / 500.0;
            let norm = s.evaluate(t).unwrap().norm_inf();
            assert!(norm <= cbound * (alpha * t).exp() + 1e-12, "bound broken at t={t}");
        }
    }

    #[test]
    fn close_eigenvalues_attach_warning() {
        let a = mat(&[&[0.3, 1.0, 0.0], &[0.0, 0.3 + 1e-5, 0.0], &[0.0, 0.0, -0.4]]);
        let s = build_symbolic_exponential(&a, None).unwrap();
        assert!(
            s.warnings().iter().any(|w| matches!(w, BuildWarning::CloseEigenvalues { .. })),
            "expected a conditioning warning"
        );
    }

    #[test]
    fn jordan_block_superdiagonals() {
        // J = lambda I + shift: superdiagonal i of e^{tJ} is e^{lambda t} t^i / i!
        let lambda = -1.0;
        let n = 4;
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            rows[i][i] = lambda;
            if i + 1 < n {
                rows[i][i + 1] = 1.0;
            }
        }
        let a = RealSquareMatrix::from_rows(&rows).unwrap();
        let s = build_symbolic_exponential(&a, Some(1e-2)).unwrap();
        for &t in &[0.5, 1.5] {
            let e = s.evaluate(t).unwrap();
            let mut factorial = 1.0;
            for i in 0..n {
                if i > 0 {
                    factorial *= i as f64;
                }
                let want = (lambda * t).exp() * t.powi(i as i32) / factorial;
                for row in 0..n - i {
                    let got = e.get(row, row + i);
                    assert!(
                        (got - want).abs() <= 1e-9 * (1.0 + want.abs()),
                        "t={t}, diag {i}: {got} vs {want}"
                    );
                }
            }
        }
    }
}
