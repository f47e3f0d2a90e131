//! Weight vectors κ and the generalized power (highest weight vector)
//! `q_κ(S) = |S_m|^{k_m} ∏_{i<m} |S_i|^{k_i - k_{i+1}} = ∏ λ_i^{k_i}`.
//!
//! Values are returned as natural logarithms. `q*_κ` is the same power taken
//! over the trailing principal minors; equivalently `∏ ν_i^{k_{m-i+1}}`
//! where `ν_i` are the pivots of `S = W D W*` with `W` unit upper
//! triangular. With that reading `q_κ(S⁻¹) = q*_{-κ*}(S)` holds for every
//! positive definite `S`, not only diagonal ones.

use std::ops::{Add, Index, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matvar::HermMatrix;

/// `κ = (k_1, …, k_m) ∈ ℝ^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if let Some(i) = k.iter().position(|x| !x.is_finite()) {
            return Err(Error::Parameter(format!("weight entry {i} is not finite")));
        }
        Ok(WeightVector(k))
    }

    pub fn zeros(m: usize) -> Self {
        WeightVector(vec![0.0; m])
    }

    pub fn constant(m: usize, p: f64) -> Self {
        WeightVector(vec![p; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0.0)
    }

    /// `κ* = (k_m, …, k_1)`.
    pub fn reversed(&self) -> Self {
        WeightVector(self.0.iter().rev().copied().collect())
    }

    /// `k_1 ≥ k_2 ≥ … ≥ k_m`.
    pub fn is_nonincreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Vec<f64> {
        w.0
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;

    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|k| -k).collect())
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.len(), rhs.len(), "weight vectors of different length");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

fn check_dims(s: &HermMatrix, kappa: &WeightVector) -> Result<()> {
    if s.dim() != kappa.len() {
        return Err(Error::DimensionMismatch(format!("weight of length {} for a {}x{} matrix", kappa.len(), s.dim(), s.dim())));
    }
    Ok(())
}

fn weighted_log_sum(log_pivots: impl Iterator<Item = f64>, weights: impl Iterator<Item = f64>) -> f64 {
    log_pivots.zip(weights).map(|(l, k)| if k == 0.0 { 0.0 } else { k * l }).sum()
}

/// `log q_κ(S) = Σ k_i log λ_i` with `λ_i = t_ii²` from the Cholesky factor.
pub fn log_q_kappa(s: &HermMatrix, kappa: &WeightVector) -> Result<f64> {
    check_dims(s, kappa)?;
    let t = s.cholesky_upper()?;
    let logs = t.diag().into_iter().map(|t| 2.0 * t.ln());
    Ok(weighted_log_sum(logs, kappa.as_slice().iter().copied()))
}

/// `log q_κ(S)` from the leading principal minors.
pub fn log_q_kappa_minors(s: &HermMatrix, kappa: &WeightVector) -> Result<f64> {
    check_dims(s, kappa)?;
    let minors = s.log_principal_minors()?;
    let m = minors.len();
    let mut acc = kappa[m - 1] * minors[m - 1];
    for i in 0..m - 1 {
        let e = kappa[i] - kappa[i + 1];
        if e != 0.0 {
            acc += e * minors[i];
        }
    }
    Ok(acc)
}

/// Logs of the pivots `ν_i` of `S = W D W*` (W unit upper triangular).
pub fn log_trailing_pivots(s: &HermMatrix) -> Result<Vec<f64>> {
    let t = s.reversed().cholesky_upper()?;
    Ok(t.diag().into_iter().rev().map(|t| 2.0 * t.ln()).collect())
}

/// `log q*_κ(S) = Σ k_{m-i+1} log ν_i`.
pub fn log_q_star_kappa(s: &HermMatrix, kappa: &WeightVector) -> Result<f64> {
    check_dims(s, kappa)?;
    let logs = log_trailing_pivots(s)?;
    Ok(weighted_log_sum(logs.into_iter(), kappa.as_slice().iter().rev().copied()))
}

/// `log q_κ(S⁻¹)` via `q*_{-κ*}(S)`, without forming the inverse.
pub fn log_q_kappa_of_inverse(s: &HermMatrix, kappa: &WeightVector) -> Result<f64> {
    log_q_star_kappa(s, &-&kappa.reversed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::matvar::MatVar;

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_gives_one() {
        for alg in Algebra::MATRIX {
            let i = HermMatrix::identity(alg, 4);
            let k = w(&[3., 1., -2., 0.5]);
            assert_eq!(log_q_kappa(&i, &k).unwrap(), 0.0);
            assert_eq!(log_q_star_kappa(&i, &k).unwrap(), 0.0);
            assert_eq!(log_q_kappa_of_inverse(&i, &k).unwrap(), 0.0);
        }
    }

    #[test]
    fn diagonal_examples() {
        let s = HermMatrix::from_real_diag(Algebra::Real, &[2., 3.]);
        let k = w(&[2., 1.]);
        assert!((log_q_kappa(&s, &k).unwrap() - 12f64.ln()).abs() < 1e-14);
        assert!((log_q_kappa_minors(&s, &k).unwrap() - 12f64.ln()).abs() < 1e-14);
        assert!((log_q_star_kappa(&s, &k).unwrap() - 18f64.ln()).abs() < 1e-14);
        // q_κ(S⁻¹) = (1/2)²(1/3)¹
        let expect = -(4f64.ln() + 3f64.ln());
        assert!((log_q_kappa_of_inverse(&s, &k).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn inverse_identity_on_non_diagonal_matrix() {
        let s = HermMatrix::new(MatVar::from_real(Algebra::Real, 2, 2, &[4., 2., 2., 3.]).unwrap()).unwrap();
        let k = w(&[1.5, -0.5]);
        let direct = log_q_kappa(&s.inverse().unwrap(), &k).unwrap();
        let via = log_q_kappa_of_inverse(&s, &k).unwrap();
        assert!((direct - via).abs() < 1e-13, "{direct} vs {via}");
    }

    #[test]
    fn symmetric_weight_star_equals_plain() {
        let s = HermMatrix::new(MatVar::from_real(Algebra::Real, 2, 2, &[4., 2., 2., 3.]).unwrap()).unwrap();
        let k = WeightVector::constant(2, 1.7);
        let a = log_q_kappa(&s, &k).unwrap();
        let b = log_q_star_kappa(&s, &k).unwrap();
        assert!((a - b).abs() < 1e-13);
        assert!((a - 1.7 * s.log_det().unwrap()).abs() < 1e-13);
    }

    #[test]
    fn errors() {
        let s = HermMatrix::identity(Algebra::Real, 2);
        assert!(matches!(log_q_kappa(&s, &w(&[1.])), Err(Error::DimensionMismatch(_))));
        let bad = HermMatrix::from_real_diag(Algebra::Real, &[1., -1.]);
        assert!(log_q_kappa(&bad, &w(&[1., 1.])).is_err());
        assert!(WeightVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn reversal_and_negation() {
        let k = w(&[1., 2., 3.]);
        assert_eq!(k.reversed(), w(&[3., 2., 1.]));
        assert_eq!(-&k, w(&[-1., -2., -3.]));
        assert!(!k.is_nonincreasing());
        assert!(k.reversed().is_nonincreasing());
    }
}
