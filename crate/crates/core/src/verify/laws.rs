//! Distributional checks on the samplers: Kolmogorov–Smirnov and χ² tests
//! against one-dimensional reductions, the joint law of `(U, R)`, and
//! sampler moments against importance-weighted density moments.

use std::time::Instant;

use statrs::distribution::{Beta, ChiSquared, ContinuousCDF, Gamma};

use super::normalization::importance_moments;
use super::stats::{kolmogorov_pvalue, ks_statistic, ks_threshold, pearson_correlation, Moments};
use super::{chunked, VerificationReport};
use crate::algebra::Algebra;
use crate::densities::{BetaKind, BetaRiesz, KotzRiesz, PearsonIIRiesz, Riesz, Variant};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::matvar::{HermMatrix, MatVar};
use crate::quadrature::integrate_endpoint_smoothed;
use crate::samplers::{pearson2_components, sample_riesz, SampleRng};
use crate::weights::WeightVector;

fn stat_err(e: impl std::fmt::Display) -> Error {
    Error::Parameter(e.to_string())
}

fn weights(v: &[f64]) -> Result<WeightVector> {
    WeightVector::new(v.to_vec())
}

fn real_herm(alg: Algebra, m: usize, values: &[f64]) -> Result<HermMatrix> {
    HermMatrix::new(MatVar::from_real(alg, m, m, values)?)
}

/// `total` scalar draws of `f`, in stream order.
pub fn draw_values<F>(seed: u64, total: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut SampleRng) -> Result<f64> + Sync,
{
    let parts = chunked(seed, total, |rng: &mut SampleRng, count| (0..count).map(|_| f(rng)).collect::<Result<Vec<_>>>())?;
    Ok(parts.concat())
}

/// KS test of `samples` against `cdf` with a fixed threshold.
pub fn ks_test(
    label: &str,
    mut samples: Vec<f64>,
    cdf: impl Fn(f64) -> f64,
    threshold: f64,
    seed: Option<u64>,
    reference: &str,
) -> VerificationReport {
    let n = samples.len();
    let d = ks_statistic(&mut samples, cdf);
    let p = kolmogorov_pvalue(d, n);
    VerificationReport::new(label, d, threshold, n as u64, seed, format!("KS vs {reference}; p-value {p:.4}"))
}

fn gamma_cdf(shape: f64, rate: f64) -> Result<impl Fn(f64) -> f64> {
    let g = Gamma::new(shape, rate).map_err(stat_err)?;
    Ok(move |x: f64| g.cdf(x))
}

fn beta_cdf(a: f64, b: f64) -> Result<impl Fn(f64) -> f64> {
    let g = Beta::new(a, b).map_err(stat_err)?;
    Ok(move |x: f64| g.cdf(x))
}

/// One point of the `m = 1` grid for the joint law of `(U, R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointLawPoint {
    pub beta: u32,
    pub nu: f64,
    pub n: usize,
    pub kappa: f64,
    pub tau: f64,
    pub variant: Variant,
}

impl JointLawPoint {
    /// Gamma shape of `U`: `(ν+n)β/2 + k + t` for type I, `(ν+n)β/2 - k - t` for type II.
    pub fn u_shape(&self) -> f64 {
        let base = (self.nu + self.n as f64) * self.beta as f64 / 2.0;
        match self.variant {
            Variant::I => base + self.kappa + self.tau,
            Variant::II => base - self.kappa - self.tau,
        }
    }

    fn label(&self) -> String {
        format!(
            "joint_law:b{}:nu{}:n{}:k{}:t{}:{}",
            self.beta,
            self.nu,
            self.n,
            self.kappa,
            self.tau,
            if self.variant == Variant::I { "I" } else { "II" }
        )
    }
}

pub fn joint_law_grid() -> Vec<JointLawPoint> {
    let p = |beta, nu, n, kappa, tau, variant| JointLawPoint { beta, nu, n, kappa, tau, variant };
    vec![
        p(1, 3.0, 1, 1.0, 0.0, Variant::I),
        p(1, 2.0, 1, 0.0, 0.0, Variant::I),
        p(2, 2.5, 2, 1.0, 0.5, Variant::I),
        p(4, 3.0, 2, 0.5, 1.0, Variant::I),
        p(1, 5.0, 2, 0.5, 0.5, Variant::II),
        p(2, 3.0, 3, 1.0, 1.0, Variant::II),
    ]
}

/// Draws `(U, R)` at `m = 1`; KS of `U` against its Gamma law and the
/// correlation of `log u` with `log(1 - r*r)`. The statistic is the larger
/// of `KS / (1.36/√N)` and `|corr| / 0.01`, so it passes at 1.
pub fn check_joint_law(p: &JointLawPoint, samples: u64, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let alg = Algebra::from_beta(p.beta)?;
    let (kappa, tau) = (weights(&[p.kappa])?, weights(&[p.tau])?);
    let parts = chunked(seed, samples, |rng: &mut SampleRng, count| {
        let mut us = Vec::with_capacity(count as usize);
        let mut rs = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let (r, u) = pearson2_components(p.nu, p.n, &kappa, &tau, alg, p.variant, rng)?;
            us.push(u.get(0, 0).re());
            rs.push(r.frobenius_sq());
        }
        Ok((us, rs))
    })?;
    let (mut us, rs): (Vec<f64>, Vec<f64>) = parts.into_iter().fold((Vec::new(), Vec::new()), |(mut a, mut b), (u, r)| {
        a.extend(u);
        b.extend(r);
        (a, b)
    });
    let log_u: Vec<f64> = us.iter().map(|u| u.ln()).collect();
    let log_r: Vec<f64> = rs.iter().map(|r| (1.0 - r).ln()).collect();
    let corr = pearson_correlation(&log_u, &log_r);
    let n = us.len();
    let shape = p.u_shape();
    let d = ks_statistic(&mut us, gamma_cdf(shape, p.beta as f64)?);
    let ks_thr = ks_threshold(n);
    let stat = (d / ks_thr).max(corr.abs() / 0.01);
    let detail = format!(
        "U vs Gamma(shape {shape}, rate {}): KS = {d:.5} (threshold {ks_thr:.5}, p-value {:.4}); corr(log u, log(1-r²)) = {corr:.5} (threshold 0.01)",
        p.beta,
        kolmogorov_pvalue(d, n)
    );
    Ok(VerificationReport::new(&p.label(), stat, 1.0, samples, Some(seed), detail).timed(start))
}

/// One `m = 1` beta-Riesz law check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaLawPoint {
    pub nu: f64,
    pub n: usize,
    pub kappa: f64,
    pub tau: f64,
    pub kind: BetaKind,
}

impl BetaLawPoint {
    /// `Beta(nβ/2 + t, νβ/2 + k)` for the c-kind, signs flipped for the k-kind.
    pub fn beta_params(&self, beta: f64) -> (f64, f64) {
        let s = if self.kind == BetaKind::C { 1.0 } else { -1.0 };
        (self.n as f64 * beta / 2.0 + s * self.tau, self.nu * beta / 2.0 + s * self.kappa)
    }
}

pub fn beta_law_grid() -> Vec<BetaLawPoint> {
    let p = |nu, n, kappa, tau, kind| BetaLawPoint { nu, n, kappa, tau, kind };
    vec![p(3.0, 1, 1.0, 0.0, BetaKind::C), p(4.0, 2, 0.5, 1.0, BetaKind::C), p(5.0, 3, 0.5, 0.5, BetaKind::K)]
}

/// KS of `B = R*R` (`m = 1`, `β = 1`) against its Beta reduction.
pub fn check_beta_law(p: &BetaLawPoint, samples: u64, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let alg = Algebra::Real;
    let (kappa, tau) = (weights(&[p.kappa])?, weights(&[p.tau])?);
    let variant = p.kind.variant();
    let values = draw_values(seed, samples, |rng| {
        let (r, _) = pearson2_components(p.nu, p.n, &kappa, &tau, alg, variant, rng)?;
        Ok(r.frobenius_sq())
    })?;
    let (a, b) = p.beta_params(1.0);
    let label = format!("beta_law:{}:nu{}:n{}:k{}:t{}", if p.kind == BetaKind::C { "c" } else { "k" }, p.nu, p.n, p.kappa, p.tau);
    Ok(ks_test(&label, values, beta_cdf(a, b)?, 0.006, Some(seed), &format!("Beta({a}, {b})")).timed(start))
}

/// KS checks of each sampler against a one-dimensional reduction.
pub fn sampler_reduction_checks(samples: u64, seed: impl Fn(u64) -> u64) -> Result<Vec<VerificationReport>> {
    let alg = Algebra::Real;
    let mut out = Vec::new();

    let start = Instant::now();
    let riesz = Riesz::standard(1.0, weights(&[1.0])?, alg, Variant::I)?;
    let s = seed(0);
    let v = draw_values(s, samples, |rng| Ok(sample_riesz(&riesz, rng)?.get(0, 0).re()))?;
    out.push(ks_test("sampler:riesz:gamma", v, gamma_cdf(2.0, 1.0)?, 0.006, Some(s), "Gamma(2, 1)").timed(start));

    let start = Instant::now();
    let kr = Distribution::KotzRiesz(KotzRiesz::standard(weights(&[1.0])?, 2, alg, Variant::I)?);
    let s = seed(1);
    let v = draw_values(s, samples, |rng| Ok(kr.sample(rng)?.frobenius_sq()))?;
    out.push(ks_test("sampler:kotz_riesz:norm", v, gamma_cdf(2.0, 1.0)?, 0.006, Some(s), "Gamma(2, 1)").timed(start));

    let start = Instant::now();
    let pearson =
        Distribution::Pearson2Riesz(PearsonIIRiesz::standard(2.0, 1, WeightVector::zeros(1), WeightVector::zeros(1), alg, Variant::I)?);
    let s = seed(2);
    let v = draw_values(s, samples, |rng| Ok(pearson.sample(rng)?.get(0, 0).re()))?;
    out.push(ks_test("sampler:pearson2:uniform", v, |x| ((x + 1.0) / 2.0).clamp(0.0, 1.0), 0.006, Some(s), "Uniform(-1, 1)").timed(start));

    let start = Instant::now();
    let pearson = Distribution::Pearson2Riesz(PearsonIIRiesz::standard(3.0, 1, weights(&[1.0])?, WeightVector::zeros(1), alg, Variant::I)?);
    let s = seed(3);
    let v = draw_values(s, samples, |rng| Ok(pearson.sample(rng)?.frobenius_sq()))?;
    out.push(ks_test("sampler:pearson2:r2", v, beta_cdf(0.5, 2.5)?, 0.006, Some(s), "Beta(1/2, 5/2)").timed(start));

    let start = Instant::now();
    let beta = Distribution::BetaRiesz(BetaRiesz::standard(4.0, 3, WeightVector::zeros(1), WeightVector::zeros(1), alg, BetaKind::C)?);
    let s = seed(4);
    let v = draw_values(s, samples, |rng| Ok(beta.sample(rng)?.get(0, 0).re()))?;
    out.push(ks_test("sampler:beta_riesz:beta", v, beta_cdf(1.5, 2.0)?, 0.006, Some(s), "Beta(3/2, 2)").timed(start));

    Ok(out)
}

/// χ² test with `bins` equal-width bins of `r*r` from Pearson II-Riesz
/// samples against bin masses of the beta-Riesz density.
pub fn check_pearson_gram_histogram(
    nu: f64,
    n: usize,
    kappa: f64,
    tau: f64,
    bins: usize,
    samples: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let alg = Algebra::Real;
    let (k, t) = (weights(&[kappa])?, weights(&[tau])?);
    let pearson = PearsonIIRiesz::standard(nu, n, k.clone(), t.clone(), alg, Variant::I)?;
    let beta = BetaRiesz::standard(nu, n, k, t, alg, BetaKind::C)?;
    let values = draw_values(seed, samples, |rng| Ok(crate::samplers::sample_pearson2_riesz(&pearson, rng)?.frobenius_sq()))?;
    let mut counts = vec![0u64; bins];
    for v in &values {
        let i = ((v * bins as f64) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let mut chi2 = 0.0;
    let mut mass_total = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let (lo, hi) = (i as f64 / bins as f64, (i + 1) as f64 / bins as f64);
        let mass = integrate_endpoint_smoothed(|b| beta.pdf(&HermMatrix::from_real_diag(alg, &[b])).unwrap_or(0.0), lo, hi, 1e-12).value;
        mass_total += mass;
        let expect = mass * samples as f64;
        chi2 += (c as f64 - expect).powi(2) / expect;
    }
    let dof = (bins - 1) as f64;
    let chi = ChiSquared::new(dof).map_err(stat_err)?;
    let threshold = chi.inverse_cdf(1.0 - 1e-3);
    let p = 1.0 - chi.cdf(chi2);
    let detail = format!("χ² = {chi2:.3} on {dof} dof, p-value {p:.4}; total bin mass {mass_total:.10}");
    let label = format!("histogram:pearson2_gram:nu{nu}:n{n}:k{kappa}:t{tau}");
    Ok(VerificationReport::new(&label, chi2, threshold, samples, Some(seed), detail).timed(start))
}

/// A named scalar test function of a sample point.
pub type TestFn = Box<dyn Fn(&MatVar) -> f64 + Sync>;

type FnRef<'a> = &'a (dyn Fn(&MatVar) -> f64 + Sync);

fn z_score(a: &Moments, b: &Moments) -> f64 {
    (a.mean() - b.mean()) / (a.std_error().powi(2) + b.std_error().powi(2)).sqrt()
}

fn sampler_moments(dist: &Distribution, funcs: &[FnRef], samples: u64, seed: u64) -> Result<Vec<Moments>> {
    let parts = chunked(seed, samples, |rng: &mut SampleRng, count| {
        let mut acc = vec![Moments::default(); funcs.len()];
        for _ in 0..count {
            let x = dist.sample(rng)?;
            for (a, f) in acc.iter_mut().zip(funcs) {
                a.push(f(&x));
            }
        }
        Ok(acc)
    })?;
    let mut acc = vec![Moments::default(); funcs.len()];
    for part in &parts {
        for (a, b) in acc.iter_mut().zip(part) {
            a.merge(b);
        }
    }
    Ok(acc)
}

pub fn entry_re(i: usize, j: usize) -> TestFn {
    Box::new(move |x: &MatVar| x.get(i, j).re())
}

pub fn entry_sq(i: usize, j: usize) -> TestFn {
    Box::new(move |x: &MatVar| x.get(i, j).norm_sq())
}

pub fn frobenius_sq() -> TestFn {
    Box::new(|x: &MatVar| x.frobenius_sq())
}

/// Sampler means of test functions against their means under the density,
/// the latter by importance sampling. Passes when every `|z| ≤ 4`.
pub fn check_sampler_vs_density(
    label: &str,
    dist: &Distribution,
    funcs: &[(&str, TestFn)],
    samples: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let refs: Vec<FnRef> = funcs.iter().map(|(_, f)| f.as_ref()).collect();
    let from_sampler = sampler_moments(dist, &refs, samples, super::derive_seed(seed, 1))?;
    let (_, from_density) = importance_moments(dist, &refs, samples, super::derive_seed(seed, 2))?;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for ((name, _), (s, d)) in funcs.iter().zip(from_sampler.iter().zip(&from_density)) {
        let z = z_score(s, d);
        worst = if z.is_finite() { worst.max(z.abs()) } else { f64::NAN };
        parts.push(format!("{name}: sampler {:.5} vs density {:.5} (z = {z:.2})", s.mean(), d.mean()));
    }
    Ok(VerificationReport::new(label, worst, 4.0, samples, Some(seed), parts.join("; ")).timed(start))
}

/// Off-diagonal Bartlett variance: `E|v₁₂|²` of the Riesz sampler (variance
/// `1/(2β)` per real component) against the density, with the `z` score of
/// the `1/β` alternative, which doubles `|v₁₂|²` exactly, in the detail.
pub fn check_bartlett_convention(samples: u64, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let dist = Distribution::Riesz(Riesz::standard(3.0, weights(&[1.0, 0.0])?, Algebra::Real, Variant::I)?);
    let h = entry_sq(0, 1);
    let refs: [FnRef; 1] = [h.as_ref()];
    let s = sampler_moments(&dist, &refs, samples, super::derive_seed(seed, 1))?.remove(0);
    let (_, mut d) = importance_moments(&dist, &refs, samples, super::derive_seed(seed, 2))?;
    let d = d.remove(0);
    let z = z_score(&s, &d);
    let alt = Moments { count: s.count, sum: 2.0 * s.sum, sum_sq: 4.0 * s.sum_sq };
    let z_alt = z_score(&alt, &d);
    let detail = format!(
        "E|v12|²: density {:.5}; variance 1/(2β) gives {:.5} (z = {z:.2}); variance 1/β gives {:.5} (z = {z_alt:.2}); adopted 1/(2β)",
        d.mean(),
        s.mean(),
        alt.mean()
    );
    Ok(VerificationReport::new("bartlett_convention:b1:m2", z.abs(), 4.0, samples, Some(seed), detail).timed(start))
}

/// A labelled distribution with the statistics compared on it.
pub type DensityCase = (String, Distribution, Vec<(&'static str, TestFn)>);

/// The `m = 2`, `β = 1` sampler-vs-density cases.
pub fn sampler_density_cases() -> Result<Vec<DensityCase>> {
    let alg = Algebra::Real;
    let xi = real_herm(alg, 2, &[1.0, 0.3, 0.3, 0.8])?;
    let theta3 = real_herm(alg, 3, &[1.2, 0.2, 0.0, 0.2, 0.9, -0.1, 0.0, -0.1, 1.0])?;
    let mu = MatVar::from_real(alg, 3, 2, &[0.5, -0.2, 0.0, 0.3, 0.1, 0.0])?;
    let cone = || -> Vec<(&'static str, TestFn)> {
        vec![("x11", entry_re(0, 0)), ("x22", entry_re(1, 1)), ("x12", entry_re(0, 1)), ("|x12|²", entry_sq(0, 1))]
    };
    let rect = || -> Vec<(&'static str, TestFn)> {
        vec![("x11", entry_re(0, 0)), ("|x21|²", entry_sq(1, 0)), ("|x12|²", entry_sq(0, 1)), ("‖x‖²", frobenius_sq())]
    };
    Ok(vec![
        ("sampler_density:riesz:I".into(), Distribution::Riesz(Riesz::new(3.0, weights(&[1.0, 0.0])?, xi.clone(), Variant::I)?), cone()),
        ("sampler_density:riesz:II".into(), Distribution::Riesz(Riesz::new(3.0, weights(&[0.5, 1.0])?, xi.clone(), Variant::II)?), cone()),
        (
            "sampler_density:kotz_riesz:I".into(),
            Distribution::KotzRiesz(KotzRiesz::new(weights(&[1.0, 0.0])?, mu.clone(), theta3.clone(), xi.clone(), Variant::I)?),
            rect(),
        ),
        (
            "sampler_density:pearson2_riesz:I".into(),
            Distribution::Pearson2Riesz(PearsonIIRiesz::new(
                4.0,
                weights(&[1.0, 0.0])?,
                weights(&[0.5, 0.0])?,
                mu.clone(),
                theta3.clone(),
                xi.clone(),
                Variant::I,
            )?),
            rect(),
        ),
        (
            "sampler_density:pearson2_riesz:II".into(),
            Distribution::Pearson2Riesz(PearsonIIRiesz::new(
                4.0,
                weights(&[0.5, 0.25])?,
                weights(&[0.25, 0.1])?,
                mu,
                theta3,
                xi.clone(),
                Variant::II,
            )?),
            rect(),
        ),
        (
            "sampler_density:beta_riesz:c".into(),
            Distribution::BetaRiesz(BetaRiesz::new(4.0, 3, weights(&[1.0, 0.0])?, weights(&[0.0, 0.5])?, xi.clone(), BetaKind::C)?),
            cone(),
        ),
        (
            "sampler_density:beta_riesz:k".into(),
            Distribution::BetaRiesz(BetaRiesz::new(5.0, 3, weights(&[0.5, 0.25])?, weights(&[0.25, 0.1])?, xi, BetaKind::K)?),
            cone(),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let g = joint_law_grid();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0].u_shape(), 3.0);
        assert_eq!(g[4].u_shape(), 2.5);
        assert_eq!(beta_law_grid()[0].beta_params(1.0), (0.5, 2.5));
    }

    #[test]
    fn small_joint_law_is_reproducible() {
        let p = joint_law_grid()[0];
        let a = check_joint_law(&p, 2000, 3).unwrap().without_timing();
        let b = check_joint_law(&p, 2000, 3).unwrap().without_timing();
        assert_eq!(a, b);
    }

    #[test]
    fn ks_rejects_constant_samples() {
        let r = ks_test("c", vec![0.5; 1000], |x| x.clamp(0.0, 1.0), 0.006, None, "U(0,1)");
        assert!(!r.pass && r.statistic >= 0.49);
    }
}
