//! Complex roots of monic polynomials and their clustering into a spectrum
//! of distinct eigenvalues with algebraic multiplicities.
//!
//! Roots come from the Aberth-Ehrlich simultaneous iteration started on a
//! perturbed circle; the perturbation is drawn from a seeded generator so
//! runs are reproducible. Clustering is single linkage with a caller-chosen
//! radius: a multiplicity-m root is only accurate to roughly eps^(1/m) in
//! double precision, so near-equal roots are merged into one eigenvalue of
//! higher multiplicity rather than kept apart. Merging trades a small model
//! error for numerical stability; keeping almost-coalescent eigenvalues
//! separate makes the partial fraction coefficients blow up.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Default seed for the initial-guess perturbation.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Sweep cap for the Aberth-Ehrlich iteration.
pub const MAX_SWEEPS: usize = 500;

/// One distinct eigenvalue with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumItem {
    pub lambda: Complex64,
    pub multiplicity: usize,
}

/// Distinct eigenvalues of a polynomial, multiplicities summing to its
/// degree. Items are kept sorted by descending real part, then descending
/// imaginary part, so downstream output is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    items: Vec<SpectrumItem>,
    source_degree: usize,
}

impl Spectrum {
    pub fn new(mut items: Vec<SpectrumItem>, source_degree: usize) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidInput("spectrum needs at least one eigenvalue".into()));
        }
        if items
            .iter()
            .any(|it| !it.lambda.re.is_finite() || !it.lambda.im.is_finite() || it.multiplicity == 0)
        {
            return Err(Error::InvalidInput("spectrum items must be finite with multiplicity >= 1".into()));
        }
        let total: usize = items.iter().map(|it| it.multiplicity).sum();
        if total != source_degree {
            return Err(Error::InvalidInput(format!(
                "multiplicities sum to {total}, expected the source degree {source_degree}"
            )));
        }
        items.sort_by(|a, b| {
            b.lambda
                .re
                .total_cmp(&a.lambda.re)
                .then(b.lambda.im.total_cmp(&a.lambda.im))
        });
        Ok(Self { items, source_degree })
    }

    pub fn items(&self) -> &[SpectrumItem] {
        &self.items
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// max_j Re(lambda_j).
    pub fn spectral_abscissa(&self) -> f64 {
        self.items.iter().map(|it| it.lambda.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest pairwise distance between distinct eigenvalues; `None` when
    /// there is only one.
    pub fn min_separation(&self) -> Option<f64> {
        if self.items.len() < 2 {
            return None;
        }
        let mut best = f64::INFINITY;
        for i in 0..self.items.len() {
            for j in i + 1..self.items.len() {
                best = best.min((self.items[i].lambda - self.items[j].lambda).norm());
            }
        }
        Some(best)
    }
}

/// Default clustering radius: 1e-6 scaled by the largest root modulus.
pub fn default_cluster_tol(roots: &[Complex64]) -> f64 {
    let max_mod = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    1e-6 * max_mod.max(1.0)
}

/// All complex roots of a monic polynomial, with repetition, using the
/// default perturbation seed.
pub fn find_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    find_roots_seeded(p, DEFAULT_SEED)
}

/// All complex roots of a monic polynomial of degree >= 1 (a precondition;
/// violating it panics). Residuals of the returned values satisfy
/// |p(z_i)| <= 1e-10 (1 + |z_i|)^n max_k |c_k|; if the sweep cap is reached
/// before that holds, the best iterate is returned inside the error.
pub fn find_roots_seeded(p: &Polynomial, seed: u64) -> Result<Vec<Complex64>> {
    assert!(p.is_monic(), "root finding requires a monic polynomial");
    let n = p.degree();
    assert!(n >= 1, "root finding requires degree >= 1");

    if n == 1 {
        return Ok(vec![-p.coeff(0)]);
    }

    // Initial guesses: a perturbed circle of radius 1 + max |c_k| (Cauchy
    // bound for a monic polynomial).
    let radius = 1.0
        + p.coeffs()[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * (i as f64 + 0.25) / n as f64
                + rng.random_range(-0.1..0.1);
            let r = radius * (1.0 + rng.random_range(-0.05..0.05));
            Complex64::from_polar(r, angle)
        })
        .collect();

    let dp = p.derivative();
    let mut settled = vec![false; n];
    let mut sweeps_used = MAX_SWEEPS;
    for sweep in 0..MAX_SWEEPS {
        let mut moved = false;
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (pv, magnitude) = p.eval_with_magnitude(z[i]);
            // Residual at the evaluation noise floor: no further progress
            // is measurable, freeze the iterate.
            if pv.norm() <= 4.0 * f64::EPSILON * magnitude {
                settled[i] = true;
                continue;
            }
            let dv = dp.eval(z[i]);
            if dv.norm() == 0.0 {
                let nudge = 1e-8 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 1e-8);
                moved = true;
                continue;
            }
            let w = pv / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = z[i] - z[j];
                if d.norm() == 0.0 {
                    // exact collision: displace and retry next sweep
                    repulsion = Complex64::new(f64::NAN, 0.0);
                    break;
                }
                repulsion += d.inv();
            }
            if !repulsion.re.is_finite() || !repulsion.im.is_finite() {
                let nudge = 1e-8 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, -1e-8);
                moved = true;
                continue;
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let correction = if denom.norm() <= 1e-12 { w } else { w / denom };
            z[i] -= correction;
            if !z[i].re.is_finite() || !z[i].im.is_finite() {
                // iterate escaped: restart it on the circle
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                z[i] = Complex64::from_polar(radius, angle);
                moved = true;
                continue;
            }
            if correction.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                settled[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            sweeps_used = sweep + 1;
            break;
        }
    }

    let scale = p.max_coeff_norm();
    let residuals: Vec<f64> = z.iter().map(|&zi| p.eval(zi).norm()).collect();
    let mut worst_ratio = 0.0f64;
    let mut worst_residual = 0.0f64;
    for (zi, &res) in z.iter().zip(&residuals) {
        let bound = 1e-10 * (1.0 + zi.norm()).powi(n as i32) * scale;
        let ratio = res / bound;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_residual = res;
        }
    }
    if worst_ratio > 1.0 {
        return Err(Error::RootIterationDidNotConverge {
            sweeps: sweeps_used,
            roots: z,
            residuals,
            worst_residual,
        });
    }
    Ok(z)
}

/// Single-linkage clustering of numeric roots into a spectrum.
///
/// Each linked group is replaced by its arithmetic mean with multiplicity
/// equal to the group size. Groups that sit within `tol` of mutual
/// conjugates become exact conjugate pairs, and groups within `tol` of the
/// real axis are snapped onto it, so realification downstream is exact in
/// principle. Representatives that end up closer than `2 * tol` make the
/// clustering ambiguous and are reported as an error; retry with another
/// tolerance.
pub fn cluster_spectrum(roots: &[Complex64], tol: f64) -> Result<Spectrum> {
    if roots.is_empty() {
        return Err(Error::InvalidInput("cannot cluster an empty root list".into()));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput(format!("cluster tolerance must be positive, got {tol}")));
    }
    if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("roots must be finite".into()));
    }

    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    let mut group_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of_root[r] == usize::MAX {
            group_of_root[r] = groups.len();
            groups.push((Complex64::new(0.0, 0.0), 0));
        }
        let g = &mut groups[group_of_root[r]];
        g.0 += roots[i];
        g.1 += 1;
    }
    let mut reps: Vec<(Complex64, usize)> =
        groups.into_iter().map(|(sum, count)| (sum / count as f64, count)).collect();

    // Conjugate symmetrization: genuinely complex groups within tol of
    // mutual conjugates (same size) become an exact pair.
    let mut paired = vec![false; reps.len()];
    for a in 0..reps.len() {
        if paired[a] || reps[a].0.im.abs() <= tol {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for b in 0..reps.len() {
            if b == a || paired[b] || reps[b].0.im.abs() <= tol || reps[b].1 != reps[a].1 {
                continue;
            }
            if reps[a].0.im.signum() == reps[b].0.im.signum() {
                continue;
            }
            let d = (reps[a].0.conj() - reps[b].0).norm();
            if d <= tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((b, d));
            }
        }
        if let Some((b, _)) = best {
            let w = (reps[a].0 + reps[b].0.conj()) / 2.0;
            reps[a].0 = w;
            reps[b].0 = w.conj();
            paired[a] = true;
            paired[b] = true;
        }
    }

    // Snap near-real representatives onto the axis.
    for rep in &mut reps {
        if rep.0.im.abs() <= tol {
            rep.0.im = 0.0;
        }
    }

    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if (reps[i].0 - reps[j].0).norm() < 2.0 * tol {
                return Err(Error::AmbiguousClustering { a: reps[i].0, b: reps[j].0, tol });
            }
        }
    }

    let items = reps
        .into_iter()
        .map(|(lambda, multiplicity)| SpectrumItem { lambda, multiplicity })
        .collect();
    Spectrum::new(items, n)
}

/// Polishes the representatives of multiple eigenvalues.
///
/// The arithmetic mean of a multiplicity-m cluster still carries the
/// eps^(1/m) scatter of the underlying roots. A true multiplicity-m zero of
/// p is a simple zero of the (m-1)-th derivative, so a few Newton steps on
/// that derivative recover it to full precision. Conjugate pairs are
/// polished jointly to stay exactly conjugate; representatives that refuse
/// to improve are left untouched.
pub fn refine_spectrum(p: &Polynomial, spectrum: &Spectrum) -> Spectrum {
    let mut items = spectrum.items().to_vec();
    for idx in 0..items.len() {
        let m = items[idx].multiplicity;
        if m < 2 {
            continue;
        }
        let lambda = items[idx].lambda;
        let partner = items
            .iter()
            .position(|it| it.lambda == lambda.conj() && it.multiplicity == m && it.lambda.im != lambda.im);
        if lambda.im < 0.0 && partner.is_some() {
            continue; // handled from the positive member
        }
        let mut q = p.clone();
        for _ in 1..m {
            q = q.derivative();
        }
        if let Some(mut v) = newton_polish(&q, lambda) {
            if lambda.im == 0.0 {
                v.im = 0.0;
            }
            items[idx].lambda = v;
            if let Some(pi) = partner {
                items[pi].lambda = v.conj();
            }
        }
    }
    Spectrum::new(items, spectrum.source_degree()).unwrap_or_else(|_| spectrum.clone())
}

fn newton_polish(q: &Polynomial, start: Complex64) -> Option<Complex64> {
    let dq = q.derivative();
    let start_residual = q.eval(start).norm();
    let budget = 1e-2 * (1.0 + start.norm());
    let mut v = start;
    for _ in 0..40 {
        let qv = q.eval(v);
        let dv = dq.eval(v);
        if dv.norm() == 0.0 {
            break;
        }
        let step = qv / dv;
        v -= step;
        if !v.re.is_finite() || !v.im.is_finite() || (v - start).norm() > budget {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + v.norm()) {
            break;
        }
    }
    if q.eval(v).norm() <= start_residual {
        Some(v)
    } else {
        None
    }
}
