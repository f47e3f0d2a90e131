//! Weighted multivariate gamma functions, the generalized Pochhammer
//! symbol, the c-beta and k-beta normalizers and the Stiefel volume.
//!
//! Everything is evaluated in log-domain. β only enters as a real
//! parameter here, so the octonions are accepted.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma as ln_gamma_pos;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// A real number stored as `sign · exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    /// One of -1, 0, +1.
    pub sign: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// Which weighted gamma: `Γ_m[a, κ]` (plus) or `Γ_m[a, -κ]` (minus).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSign {
    Plus,
    Minus,
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`; poles are domain errors.
pub fn ln_gamma_signed(x: f64) -> Result<SignedLog> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x > 0.0 {
        return Ok(SignedLog { ln_abs: ln_gamma_pos(x), sign: 1.0 });
    }
    if x == x.floor() {
        return Err(Error::Domain(format!("gamma pole at {x}")));
    }
    // reflection: Γ(x)Γ(1-x) = π / sin(πx)
    let s = (PI * x).sin();
    Ok(SignedLog { ln_abs: PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x), sign: s.signum() })
}

fn pi_prefactor(m: usize, beta: f64) -> f64 {
    let m = m as f64;
    m * (m - 1.0) * beta / 4.0 * PI.ln()
}

/// Arguments of the Euler gammas in the product form of a weighted gamma.
pub fn weighted_gamma_args(a: f64, kappa: &WeightVector, alg: Algebra, sign: WeightSign) -> Vec<f64> {
    let beta = alg.beta_f64();
    let m = kappa.len();
    (0..m)
        .map(|i| match sign {
            WeightSign::Plus => a + kappa[i] - i as f64 * beta / 2.0,
            WeightSign::Minus => a - kappa[i] - (m - 1 - i) as f64 * beta / 2.0,
        })
        .collect()
}

/// `ln Γ_m^β[a] = (m(m-1)β/4) ln π + Σ ln Γ(a - (i-1)β/2)`.
pub fn lgamma_m(a: f64, m: usize, alg: Algebra) -> Result<f64> {
    lgamma_m_weighted(a, &WeightVector::zeros(m), alg, WeightSign::Plus)
}

/// `ln Γ_m^β[a, κ]` (plus) or `ln Γ_m^β[a, -κ]` (minus).
pub fn lgamma_m_weighted(a: f64, kappa: &WeightVector, alg: Algebra, sign: WeightSign) -> Result<f64> {
    let m = kappa.len();
    if m == 0 {
        return Err(Error::Parameter("empty weight vector".into()));
    }
    let mut acc = pi_prefactor(m, alg.beta_f64());
    for (i, x) in weighted_gamma_args(a, kappa, alg, sign).into_iter().enumerate() {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("weighted gamma argument {} = {x} is not positive (a = {a}, sign {sign:?})", i + 1)));
        }
        acc += ln_gamma_pos(x);
    }
    Ok(acc)
}

/// Rising factorial `(x)_k` for any real `k`; integer `k` (including
/// negative) uses the exact product.
pub fn pochhammer(x: f64, k: f64) -> Result<SignedLog> {
    if k == k.trunc() && k.abs() < 1e6 {
        let n = k as i64;
        let mut ln_abs = 0.0;
        let mut sign = 1.0;
        if n >= 0 {
            for j in 0..n {
                let f = x + j as f64;
                if f == 0.0 {
                    return Ok(SignedLog { ln_abs: f64::NEG_INFINITY, sign: 0.0 });
                }
                ln_abs += f.abs().ln();
                sign *= f.signum();
            }
        } else {
            for j in 1..=(-n) {
                let f = x - j as f64;
                if f == 0.0 {
                    return Err(Error::Domain(format!("pole in ({x})_{k}")));
                }
                ln_abs -= f.abs().ln();
                sign *= f.signum();
            }
        }
        return Ok(SignedLog { ln_abs, sign });
    }
    let num = ln_gamma_signed(x + k)?;
    let den = ln_gamma_signed(x)?;
    Ok(SignedLog { ln_abs: num.ln_abs - den.ln_abs, sign: num.sign * den.sign })
}

/// `[a]_κ^β = ∏ (a - (i-1)β/2)_{k_i}`.
pub fn pochhammer_weighted(a: f64, kappa: &WeightVector, alg: Algebra) -> Result<SignedLog> {
    let beta = alg.beta_f64();
    let mut out = SignedLog { ln_abs: 0.0, sign: 1.0 };
    for i in 0..kappa.len() {
        let p = pochhammer(a - i as f64 * beta / 2.0, kappa[i])?;
        out.ln_abs += p.ln_abs;
        out.sign *= p.sign;
    }
    Ok(out)
}

fn check_same_len(kappa: &WeightVector, tau: &WeightVector) -> Result<()> {
    if kappa.len() != tau.len() || kappa.is_empty() {
        return Err(Error::DimensionMismatch(format!("weights of length {} and {}", kappa.len(), tau.len())));
    }
    Ok(())
}

/// `ln 𝓑_m^β[a, κ; b, τ] = ln Γ[a,κ] + ln Γ[b,τ] - ln Γ[a+b, κ+τ]`.
pub fn log_c_beta(a: f64, kappa: &WeightVector, b: f64, tau: &WeightVector, alg: Algebra) -> Result<f64> {
    check_same_len(kappa, tau)?;
    let half = (kappa.len() - 1) as f64 * alg.beta_f64() / 2.0;
    if !(a > half - kappa.last()) {
        return Err(Error::Domain(format!("c-beta needs a > (m-1)β/2 - k_m = {}, got {a}", half - kappa.last())));
    }
    if !(b > half - tau.last()) {
        return Err(Error::Domain(format!("c-beta needs b > (m-1)β/2 - t_m = {}, got {b}", half - tau.last())));
    }
    use WeightSign::Plus;
    Ok(lgamma_m_weighted(a, kappa, alg, Plus)? + lgamma_m_weighted(b, tau, alg, Plus)?
        - lgamma_m_weighted(a + b, &(kappa + tau), alg, Plus)?)
}

/// `ln 𝓑_m^β[a, -κ; b, -τ]` built from minus-sign weighted gammas.
pub fn log_k_beta(a: f64, kappa: &WeightVector, b: f64, tau: &WeightVector, alg: Algebra) -> Result<f64> {
    check_same_len(kappa, tau)?;
    let half = (kappa.len() - 1) as f64 * alg.beta_f64() / 2.0;
    if !(a > half + kappa.first()) {
        return Err(Error::Domain(format!("k-beta needs a > (m-1)β/2 + k_1 = {}, got {a}", half + kappa.first())));
    }
    if !(b > half + tau.first()) {
        return Err(Error::Domain(format!("k-beta needs b > (m-1)β/2 + t_1 = {}, got {b}", half + tau.first())));
    }
    use WeightSign::Minus;
    Ok(lgamma_m_weighted(a, kappa, alg, Minus)? + lgamma_m_weighted(b, tau, alg, Minus)?
        - lgamma_m_weighted(a + b, &(kappa + tau), alg, Minus)?)
}

/// `ln Vol(𝒱_{m,n}^β) = ln[2^m π^{mnβ/2} / Γ_m^β[nβ/2]]`.
pub fn log_stiefel_volume(m: usize, n: usize, alg: Algebra) -> Result<f64> {
    if m == 0 || n < m {
        return Err(Error::Parameter(format!("Stiefel manifold needs n >= m >= 1, got m = {m}, n = {n}")));
    }
    let beta = alg.beta_f64();
    let (mf, nf) = (m as f64, n as f64);
    Ok(mf * 2f64.ln() + mf * nf * beta / 2.0 * PI.ln() - lgamma_m(nf * beta / 2.0, m, alg)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    const R: Algebra = Algebra::Real;

    #[test]
    fn reduces_to_euler_gamma() {
        let v = lgamma_m_weighted(0.5, &w(&[0.]), R, WeightSign::Plus).unwrap();
        assert!((v - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn hand_product_formula() {
        // √π Γ(3) Γ(1.5) = π
        let v = lgamma_m_weighted(2.0, &w(&[1., 0.]), R, WeightSign::Plus).unwrap();
        assert!((v - PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn pole_is_named() {
        let err = lgamma_m_weighted(0.5, &w(&[0., 0.]), R, WeightSign::Plus).unwrap_err();
        assert!(err.to_string().contains("argument 2"), "{err}");
    }

    #[test]
    fn pochhammer_examples() {
        let p = pochhammer_weighted(2.0, &w(&[0., 0.]), R).unwrap();
        assert_eq!(p.value(), 1.0);
        let p = pochhammer_weighted(2.0, &w(&[1., 0.]), R).unwrap();
        assert!((p.value() - 2.0).abs() < 1e-14);
        let p = pochhammer_weighted(3.0, &w(&[2.]), R).unwrap();
        assert!((p.value() - 12.0).abs() < 1e-12);
        // ratio route: π / (√π Γ(2) Γ(1.5))
        let ratio = PI.ln() - lgamma_m(2.0, 2, R).unwrap();
        assert!((ratio - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn pochhammer_signs() {
        // (-2.5)_3 = (-2.5)(-1.5)(-0.5) < 0
        let p = pochhammer(-2.5, 3.0).unwrap();
        assert_eq!(p.sign, -1.0);
        assert!((p.value() + 1.875).abs() < 1e-14);
        // (x)_{-2} = 1/((x-1)(x-2))
        let p = pochhammer(4.0, -2.0).unwrap();
        assert!((p.value() - 1.0 / 6.0).abs() < 1e-15);
        assert!(pochhammer(2.0, -2.0).is_err());
        // non-integer through the gamma ratio: Γ(1.5)/Γ(1) = √π/2
        let p = pochhammer(1.0, 0.5).unwrap();
        assert!((p.value() - PI.sqrt() / 2.0).abs() < 1e-14);
        assert!(pochhammer(-1.0, 0.5).is_err());
    }

    #[test]
    fn negative_gamma_reflection() {
        let g = ln_gamma_signed(-0.5).unwrap();
        assert_eq!(g.sign, -1.0);
        assert!((g.value() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(ln_gamma_signed(-3.0).is_err());
    }

    #[test]
    fn c_beta_examples() {
        assert!(log_c_beta(1., &w(&[0.]), 1., &w(&[0.]), R).unwrap().abs() < 1e-15);
        let v = log_c_beta(1., &w(&[1.]), 1., &w(&[0.]), R).unwrap();
        assert!((v - 0.5f64.ln()).abs() < 1e-14);
        assert!(log_c_beta(0.4, &w(&[0., 0.]), 1., &w(&[0., 0.]), R).is_err());
    }

    #[test]
    fn k_beta_examples() {
        assert!(log_k_beta(1., &w(&[0.]), 1., &w(&[0.]), R).unwrap().abs() < 1e-15);
        let v = log_k_beta(2., &w(&[0.5]), 1., &w(&[0.]), R).unwrap();
        assert!((v - (2.0f64 / 3.0).ln()).abs() < 1e-14);
        let z = w(&[0., 0.]);
        assert!(log_k_beta(1.7, &z, 2.3, &z, Algebra::Quaternion).is_err());
        let k = log_k_beta(2.7, &z, 2.3, &z, Algebra::Quaternion).unwrap();
        let c = log_c_beta(2.7, &z, 2.3, &z, Algebra::Quaternion).unwrap();
        assert!((k - c).abs() < 1e-13);
    }

    #[test]
    fn stiefel_spheres() {
        let cases = [(1, 2, R, 2.0 * PI), (1, 3, R, 4.0 * PI), (1, 4, R, 2.0 * PI * PI)];
        for (m, n, alg, want) in cases {
            let v = log_stiefel_volume(m, n, alg).unwrap().exp();
            assert!((v - want).abs() <= 1e-12 * want, "{m} {n}: {v} vs {want}");
        }
        let c = log_stiefel_volume(1, 1, Algebra::Complex).unwrap().exp();
        assert!((c - 2.0 * PI).abs() < 1e-12);
        assert!(log_stiefel_volume(2, 1, R).is_err());
    }

    #[test]
    fn octonions_allowed_at_formula_level() {
        let v = lgamma_m(10.0, 3, Algebra::Octonion).unwrap();
        assert!(v.is_finite());
    }
}
