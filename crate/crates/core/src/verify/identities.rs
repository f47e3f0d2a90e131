//! Deterministic identity checks: Stiefel volumes, weighted gamma and
//! Pochhammer relations, the algebra of `q_κ`, and the parameter grid for
//! quadrature normalization.

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;

use super::VerificationReport;
use crate::algebra::{Algebra, Scalar};
use crate::densities::{BetaKind, BetaRiesz, KotzRiesz, PearsonIIRiesz, PearsonIIRieszTransposed, Riesz, Variant};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::matvar::{HermMatrix, MatVar};
use crate::samplers::{gaussian_matvar, rng_from_seed, SampleRng};
use crate::special::{lgamma_m, lgamma_m_weighted, log_stiefel_volume, pochhammer_weighted, WeightSign};
use crate::weights::{log_q_kappa, log_q_kappa_minors, log_q_kappa_of_inverse, WeightVector};

/// `|a - b| / max(1, |b|)`.
pub fn rel_log_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Unit sphere areas `2π`, `4π`, `2π²` as Stiefel volumes `𝒱_{1,n}` over ℝ.
pub fn check_stiefel_volumes() -> Result<VerificationReport> {
    let start = Instant::now();
    let known = [(2usize, 2.0 * PI), (3, 4.0 * PI), (4, 2.0 * PI * PI)];
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (n, area) in known {
        let v = log_stiefel_volume(1, n, Algebra::Real)?.exp();
        let rel = (v - area).abs() / area;
        worst = worst.max(rel);
        parts.push(format!("n={n}: {v:.15} vs {area:.15}"));
    }
    Ok(VerificationReport::new("stiefel_volume:sphere_areas", worst, 1e-12, 3, None, parts.join("; ")).timed(start))
}

/// `(a, κ)` pairs with nonnegative integer nonincreasing `κ`, 25 per algebra,
/// each satisfying `a > (m-1)β/2 + k₁`.
pub fn gamma_grid(alg: Algebra) -> Vec<(f64, WeightVector)> {
    let beta = alg.beta_f64();
    (0..25)
        .map(|idx| {
            let m = 1 + idx % 3;
            let mut k: Vec<f64> = (0..m).map(|i| ((idx * 7 + i * 3) % 5) as f64).collect();
            k.sort_by(|a, b| b.total_cmp(a));
            let a = (m as f64 - 1.0) * beta / 2.0 + k[0] + 0.25 + 0.37 * idx as f64;
            (a, WeightVector::new(k).expect("finite weights"))
        })
        .collect()
}

/// `Γ_m[a, κ] = [a]_κ Γ_m[a]` and
/// `Γ_m[a, -κ] = (-1)^k Γ_m[a] / [-a + (m-1)β/2 + 1]_κ` on [`gamma_grid`].
/// The statistic is the largest log-domain discrepancy; a sign mismatch
/// makes it infinite.
pub fn check_gamma_identities(algebras: &[Algebra]) -> Result<Vec<VerificationReport>> {
    let mut plus_worst = 0.0f64;
    let mut minus_worst = 0.0f64;
    let mut count = 0u64;
    let start = Instant::now();
    for &alg in algebras {
        for (a, kappa) in gamma_grid(alg) {
            count += 1;
            let m = kappa.len();
            let base = lgamma_m(a, m, alg)?;
            let poch = pochhammer_weighted(a, &kappa, alg)?;
            let plus = lgamma_m_weighted(a, &kappa, alg, WeightSign::Plus)?;
            let err = if poch.sign > 0.0 { (plus - (poch.ln_abs + base)).abs() } else { f64::INFINITY };
            plus_worst = plus_worst.max(err);

            let c = -a + (m as f64 - 1.0) * alg.beta_f64() / 2.0 + 1.0;
            let poch = pochhammer_weighted(c, &kappa, alg)?;
            let minus = lgamma_m_weighted(a, &kappa, alg, WeightSign::Minus)?;
            let k = kappa.sum() as i64;
            let expected_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let err = if poch.sign == expected_sign { (minus - (base - poch.ln_abs)).abs() } else { f64::INFINITY };
            minus_worst = minus_worst.max(err);
        }
    }
    let betas: Vec<String> = algebras.iter().map(|a| a.beta().to_string()).collect();
    let betas = betas.join(",");
    Ok(vec![
        VerificationReport::new(
            "gamma_identity:plus",
            plus_worst,
            1e-10,
            count,
            None,
            format!("largest |ln Γ_m[a,κ] - ln([a]_κ Γ_m[a])| over β ∈ {{{betas}}}"),
        )
        .timed(start),
        VerificationReport::new(
            "gamma_identity:minus",
            minus_worst,
            1e-10,
            count,
            None,
            format!("largest |ln Γ_m[a,-κ] - ln|Γ_m[a] / [-a+(m-1)β/2+1]_κ|| with sign (-1)^k over β ∈ {{{betas}}}"),
        ),
    ])
}

fn random_pd(alg: Algebra, m: usize, rng: &mut SampleRng) -> Result<HermMatrix> {
    let g = gaussian_matvar(alg, m, m, 1.0, rng);
    g.gram()?.scale(1.0 / m as f64).add(&HermMatrix::identity(alg, m).scale(0.5))
}

fn random_upper(alg: Algebra, m: usize, rng: &mut SampleRng) -> MatVar {
    let g = gaussian_matvar(alg, m, m, 0.5, rng);
    MatVar::from_fn(alg, m, m, |i, j| {
        if i == j {
            Scalar::real(alg, 0.5 + 1.5 * rng.random::<f64>())
        } else if i < j {
            g.get(i, j)
        } else {
            Scalar::zero(alg)
        }
    })
}

fn random_weights(m: usize, rng: &mut SampleRng) -> WeightVector {
    WeightVector::new((0..m).map(|_| 4.0 * rng.random::<f64>() - 2.0).collect()).expect("finite weights")
}

/// The `q_κ` identities on `instances` random positive definite matrices
/// with `m` cycling through `1..=5`: inverse, additivity in `κ`, shift by
/// a constant weight, congruence by upper triangular `B` and by `B⁻¹`, and
/// agreement of the pivot and minor evaluations.
pub fn check_q_identities(alg: Algebra, instances: u64, seed: u64) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut worst = [0.0f64; 6];
    for idx in 0..instances {
        let m = 1 + (idx % 5) as usize;
        let a = random_pd(alg, m, &mut rng)?;
        let kappa = random_weights(m, &mut rng);
        let tau = random_weights(m, &mut rng);
        let p = 4.0 * rng.random::<f64>() - 2.0;
        let b = random_upper(alg, m, &mut rng);
        let qa = log_q_kappa(&a, &kappa)?;

        let e0 = rel_log_err(log_q_kappa_of_inverse(&a, &kappa)?, log_q_kappa(&a.inverse()?, &kappa)?);
        let e1 = rel_log_err(log_q_kappa(&a, &(&kappa + &tau))?, qa + log_q_kappa(&a, &tau)?);
        let shifted = &kappa + &WeightVector::constant(m, p);
        let e2 = rel_log_err(log_q_kappa(&a, &shifted)?, p * a.log_det()? + qa);
        let c = b.gram()?;
        let qc = log_q_kappa(&c, &kappa)?;
        let e3 = rel_log_err(log_q_kappa(&a.congruence(&b)?, &kappa)?, qc + qa);
        let b_inv = crate::matvar::CholeskyFactor::from_upper(b.clone())?.inverse();
        let e4 = rel_log_err(log_q_kappa(&a.congruence(&b_inv)?, &kappa)?, qa - qc);
        let e5 = rel_log_err(log_q_kappa_minors(&a, &kappa)?, qa);
        for (w, e) in worst.iter_mut().zip([e0, e1, e2, e3, e4, e5]) {
            *w = if e.is_finite() { w.max(e) } else { f64::NAN };
        }
    }
    let names = [
        ("q_identity:inverse", "q_κ(A⁻¹) = q*_{-κ*}(A) against explicit inversion"),
        ("q_identity:additive", "q_{κ+τ}(A) = q_κ(A) q_τ(A)"),
        ("q_identity:shift", "q_{κ+p}(A) = |A|^p q_κ(A)"),
        ("q_identity:congruence", "q_κ(B*AB) = q_κ(B*B) q_κ(A), B upper triangular"),
        ("q_identity:inverse_congruence", "q_κ(B*⁻¹AB⁻¹) = q_κ(A) / q_κ(B*B), B upper triangular"),
        ("q_identity:minors", "pivot and leading-minor evaluations agree"),
    ];
    let beta = alg.beta();
    Ok(names
        .iter()
        .zip(worst)
        .map(|((name, what), w)| {
            VerificationReport::new(
                &format!("{name}:b{beta}"),
                w,
                1e-9,
                instances,
                Some(seed),
                format!("{what}; largest relative log-domain error, m = 1..5"),
            )
            .timed(start)
        })
        .collect())
}

fn w1(k: f64) -> WeightVector {
    WeightVector::new(vec![k]).expect("finite weight")
}

fn scalar_herm(alg: Algebra, x: f64) -> HermMatrix {
    HermMatrix::from_real_diag(alg, &[x])
}

fn real_herm(alg: Algebra, m: usize, values: &[f64]) -> Result<HermMatrix> {
    HermMatrix::new(MatVar::from_real(alg, m, m, values)?)
}

fn ramp(alg: Algebra, rows: usize, cols: usize, step: f64) -> MatVar {
    MatVar::from_fn(alg, rows, cols, |i, j| Scalar::real(alg, step * (1.0 + i as f64 - j as f64)))
}

/// `m = 1` parameter settings for every family and variant, including
/// nonzero weights and non-identity locations and scales.
pub fn normalization_grid(alg: Algebra) -> Result<Vec<(String, Distribution)>> {
    let b = alg.beta();
    let mut out: Vec<(String, Distribution)> = Vec::new();
    let mut push = |name: String, d: Distribution| out.push((format!("normalization_1d:{name}:b{b}"), d));

    for (i, (a, k, xi)) in [(1.0, 1.0, 1.0), (2.5, -0.5, 1.5), (0.7, 0.6, 0.6)].into_iter().enumerate() {
        push(format!("riesz:I:{i}"), Distribution::Riesz(Riesz::new(a, w1(k), scalar_herm(alg, xi), Variant::I)?));
    }
    for (i, (a, k, xi)) in [(2.0, 1.0, 1.0), (3.5, -0.5, 0.8), (1.2, 0.4, 2.0)].into_iter().enumerate() {
        push(format!("riesz:II:{i}"), Distribution::Riesz(Riesz::new(a, w1(k), scalar_herm(alg, xi), Variant::II)?));
    }
    let theta2 = real_herm(alg, 2, &[1.3, 0.4, 0.4, 0.9])?;
    let theta3 = real_herm(alg, 3, &[1.0, 0.2, 0.1, 0.2, 1.4, -0.3, 0.1, -0.3, 0.8])?;
    let rect_scales = |n: usize| -> Result<HermMatrix> {
        Ok(match n {
            1 => scalar_herm(alg, 1.4),
            2 => theta2.clone(),
            _ => theta3.clone(),
        })
    };
    for variant in [Variant::I, Variant::II] {
        let tag = if variant == Variant::I { "I" } else { "II" };
        let settings: [(usize, f64, f64); 3] = match variant {
            Variant::I => [(1, 0.5, 1.0), (2, -0.3, 0.7), (3, 1.0, 1.3)],
            Variant::II => [(1, 0.2, 1.0), (2, -0.5, 0.7), (3, 0.8, 1.3)],
        };
        for (i, (n, k, sigma)) in settings.into_iter().enumerate() {
            let d = KotzRiesz::new(w1(k), ramp(alg, n, 1, 0.3), rect_scales(n)?, scalar_herm(alg, sigma), variant)?;
            push(format!("kotz_riesz:{tag}:{i}"), Distribution::KotzRiesz(d));
        }
    }
    for variant in [Variant::I, Variant::II] {
        let tag = if variant == Variant::I { "I" } else { "II" };
        let settings: [(f64, usize, f64, f64, f64); 3] = match variant {
            Variant::I => [(2.0, 1, 0.0, 0.0, 1.0), (3.0, 2, 1.0, 0.5, 0.8), (1.5, 1, 0.5, -0.2, 1.6)],
            Variant::II => [(3.0, 2, 0.5, 0.3, 1.0), (2.0, 1, -0.5, 0.2, 0.7), (4.0, 3, 1.0, -0.5, 1.5)],
        };
        for (i, (nu, n, k, t, xi)) in settings.into_iter().enumerate() {
            let d = PearsonIIRiesz::new(nu, w1(k), w1(t), ramp(alg, n, 1, 0.2), rect_scales(n)?, scalar_herm(alg, xi), variant)?;
            push(format!("pearson2_riesz:{tag}:{i}"), Distribution::Pearson2Riesz(d));
            let m = n;
            let d = PearsonIIRieszTransposed::new(nu, w1(k), w1(t), ramp(alg, 1, m, 0.2), scalar_herm(alg, xi), rect_scales(m)?, variant)?;
            push(format!("pearson2_riesz_transposed:{tag}:{i}"), Distribution::Pearson2RieszTransposed(d));
        }
    }
    for kind in [BetaKind::C, BetaKind::K] {
        let tag = if kind == BetaKind::C { "c" } else { "k" };
        let settings: [(f64, usize, f64, f64, f64); 3] = match kind {
            BetaKind::C => [(3.0, 1, 1.0, 0.0, 1.0), (2.0, 2, 0.5, 1.0, 2.0), (1.5, 3, 0.2, -0.4, 0.7)],
            BetaKind::K => [(3.0, 1, 0.5, 0.2, 1.0), (4.0, 2, -0.5, 0.5, 2.0), (5.0, 3, 1.0, -0.5, 0.7)],
        };
        for (i, (nu, n, k, t, theta)) in settings.into_iter().enumerate() {
            let d = BetaRiesz::new(nu, n, w1(k), w1(t), scalar_herm(alg, theta), kind)?;
            push(format!("beta_riesz:{tag}:{i}"), Distribution::BetaRiesz(d));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stiefel_and_gamma_pass() {
        assert!(check_stiefel_volumes().unwrap().pass);
        let algs = [Algebra::Real, Algebra::Complex, Algebra::Quaternion, Algebra::Octonion];
        for r in check_gamma_identities(&algs).unwrap() {
            assert!(r.pass, "{r:?}");
            assert_eq!(r.sample_size, 100);
        }
    }

    #[test]
    fn q_identities_small_run() {
        for r in check_q_identities(Algebra::Quaternion, 50, 9).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn grid_builds_for_each_beta() {
        for alg in [Algebra::Real, Algebra::Complex, Algebra::Quaternion] {
            assert_eq!(normalization_grid(alg).unwrap().len(), 30);
        }
    }
}
