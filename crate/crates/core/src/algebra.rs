//! Scalars of the four real normed division algebras.
//!
//! Every scalar is stored as a fixed array of eight reals; only the first
//! `beta` components are meaningful. Quaternions use the convention
//! `ij = k`, `jk = i`, `ki = j`; octonions are built from quaternion pairs
//! by Cayley-Dickson doubling, `(a, b)(c, d) = (ac - d̄b, da + bc̄)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which real normed division algebra the entries live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion, Algebra::Octonion];

    /// The associative algebras, i.e. the ones matrix code accepts.
    pub const MATRIX: [Algebra; 3] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion];

    pub fn from_beta(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Algebra::Real),
            2 => Ok(Algebra::Complex),
            4 => Ok(Algebra::Quaternion),
            8 => Ok(Algebra::Octonion),
            other => Err(Error::InvalidBeta(other)),
        }
    }

    /// Real dimension of the algebra.
    pub fn beta(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
            Algebra::Octonion => 8,
        }
    }

    pub fn beta_f64(self) -> f64 {
        self.beta() as f64
    }

    /// Rejects the octonions for matrix-level work.
    pub fn require_associative(self) -> Result<()> {
        if self == Algebra::Octonion {
            Err(Error::ConjecturalOctonion)
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u32> for Algebra {
    type Error = Error;

    fn try_from(beta: u32) -> Result<Self> {
        Algebra::from_beta(beta)
    }
}

impl From<Algebra> for u32 {
    fn from(alg: Algebra) -> u32 {
        alg.beta() as u32
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algebra::Real => "real",
            Algebra::Complex => "complex",
            Algebra::Quaternion => "quaternion",
            Algebra::Octonion => "octonion",
        };
        write!(f, "{name} (beta = {})", self.beta())
    }
}

/// An element of a real normed division algebra.
#[derive(Clone, Copy, PartialEq)]
pub struct Scalar {
    alg: Algebra,
    c: [f64; 8],
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.components())
    }
}

impl Scalar {
    pub fn zero(alg: Algebra) -> Self {
        Scalar { alg, c: [0.0; 8] }
    }

    pub fn one(alg: Algebra) -> Self {
        Self::real(alg, 1.0)
    }

    pub fn real(alg: Algebra, x: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = x;
        Scalar { alg, c }
    }

    /// Builds a scalar from exactly `beta` components.
    pub fn from_components(alg: Algebra, comps: &[f64]) -> Result<Self> {
        if comps.len() != alg.beta() {
            return Err(Error::DimensionMismatch(format!("scalar of {alg} needs {} components, got {}", alg.beta(), comps.len())));
        }
        let mut c = [0.0; 8];
        c[..comps.len()].copy_from_slice(comps);
        Ok(Scalar { alg, c })
    }

    /// The `k`-th imaginary unit (`k = 0` is 1).
    pub fn unit(alg: Algebra, k: usize) -> Self {
        assert!(k < alg.beta(), "unit index out of range");
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Scalar { alg, c }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn components(&self) -> &[f64] {
        &self.c[..self.alg.beta()]
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    pub fn is_real(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0.0)
    }

    /// Drops the non-real components.
    pub fn real_part(&self) -> Self {
        Scalar::real(self.alg, self.c[0])
    }

    pub fn conj(&self) -> Self {
        let mut c = self.c;
        for x in &mut c[1..] {
            *x = -*x;
        }
        Scalar { alg: self.alg, c }
    }

    pub fn norm_sq(&self) -> f64 {
        self.components().iter().map(|x| x * x).sum()
    }

    pub fn abs(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        for x in &mut c {
            *x *= s;
        }
        Scalar { alg: self.alg, c }
    }

    /// Two-sided inverse `conj(x) / |x|²`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::Domain("inverse of zero scalar".into()));
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg, other.alg));
        }
        Ok(*self * *other)
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg, other.alg));
        }
        Ok(*self + *other)
    }
}

fn quat_mul(a: &[f64], b: &[f64]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: &[f64]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn octo_mul(x: &[f64; 8], y: &[f64; 8]) -> [f64; 8] {
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let ac = quat_mul(a, c);
    let db = quat_mul(&quat_conj(d), b);
    let da = quat_mul(d, a);
    let bc = quat_mul(b, &quat_conj(c));
    let mut out = [0.0; 8];
    for i in 0..4 {
        out[i] = ac[i] - db[i];
        out[i + 4] = da[i] + bc[i];
    }
    out
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        let (a, b) = (&self.c, &rhs.c);
        let mut c = [0.0; 8];
        match self.alg {
            Algebra::Real => c[0] = a[0] * b[0],
            Algebra::Complex => {
                c[0] = a[0] * b[0] - a[1] * b[1];
                c[1] = a[0] * b[1] + a[1] * b[0];
            }
            Algebra::Quaternion => c[..4].copy_from_slice(&quat_mul(&a[..4], &b[..4])),
            Algebra::Octonion => c = octo_mul(a, b),
        }
        Scalar { alg: self.alg, c }
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            *x += y;
        }
        Scalar { alg: self.alg, c }
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(alg: Algebra, c: &[f64]) -> Scalar {
        Scalar::from_components(alg, c).unwrap()
    }

    #[test]
    fn real_product() {
        let x = Scalar::real(Algebra::Real, 2.0) * Scalar::real(Algebra::Real, 3.0);
        assert_eq!(x.components(), &[6.0]);
    }

    #[test]
    fn quaternion_units_anticommute() {
        let q = Algebra::Quaternion;
        let (i, j, k) = (Scalar::unit(q, 1), Scalar::unit(q, 2), Scalar::unit(q, 3));
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Scalar::one(q));
    }

    #[test]
    fn complex_conjugate_pair() {
        let c = Algebra::Complex;
        let p = s(c, &[1.0, 1.0]) * s(c, &[1.0, -1.0]);
        assert_eq!(p.components(), &[2.0, 0.0]);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(s(Algebra::Complex, &[1.0, 1.0]).conj().components(), &[1.0, -1.0]);
        assert_eq!(s(Algebra::Real, &[5.0]).conj().components(), &[5.0]);
        let q = s(Algebra::Quaternion, &[1.0, 2.0, 3.0, 4.0]).conj();
        assert_eq!(q.components(), &[1.0, -2.0, -3.0, -4.0]);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(s(Algebra::Complex, &[3.0, 4.0]).norm_sq(), 25.0);
        assert_eq!(s(Algebra::Quaternion, &[1.0, 1.0, 1.0, 1.0]).norm_sq(), 4.0);
        assert_eq!(s(Algebra::Real, &[-2.0]).norm_sq(), 4.0);
    }

    #[test]
    fn mismatched_tags_are_rejected() {
        let a = Scalar::one(Algebra::Real);
        let b = Scalar::one(Algebra::Complex);
        assert!(matches!(a.try_mul(&b), Err(Error::AlgebraMismatch(..))));
    }

    #[test]
    fn invalid_beta() {
        assert!(matches!(Algebra::from_beta(3), Err(Error::InvalidBeta(3))));
        assert_eq!(Algebra::from_beta(8).unwrap(), Algebra::Octonion);
        assert!(Algebra::Octonion.require_associative().is_err());
    }

    #[test]
    fn octonions_are_not_associative() {
        let o = Algebra::Octonion;
        let (e1, e2, e4) = (Scalar::unit(o, 1), Scalar::unit(o, 2), Scalar::unit(o, 4));
        let lhs = (e1 * e2) * e4;
        let rhs = e1 * (e2 * e4);
        assert_eq!(lhs, -rhs);
    }

    fn rel_close(a: &Scalar, b: &Scalar, scale: f64) -> bool {
        (*a - *b).abs() <= 1e-12 * scale.max(1e-300)
    }

    fn scalar_strategy(alg: Algebra) -> impl Strategy<Value = Scalar> {
        prop::collection::vec(-10.0f64..10.0, alg.beta()).prop_map(move |v| Scalar::from_components(alg, &v).unwrap())
    }

    fn any_alg() -> impl Strategy<Value = Algebra> {
        prop::sample::select(Algebra::ALL.to_vec())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]

        #[test]
        fn norm_is_multiplicative((x, y) in any_alg().prop_flat_map(|a| (scalar_strategy(a), scalar_strategy(a)))) {
            let lhs = (x * y).norm_sq();
            let rhs = x.norm_sq() * y.norm_sq();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conj_is_involution_and_antihomomorphism((x, y) in prop::sample::select(Algebra::MATRIX.to_vec()).prop_flat_map(|a| (scalar_strategy(a), scalar_strategy(a)))) {
            prop_assert_eq!(x.conj().conj(), x);
            let scale = x.abs() * y.abs();
            prop_assert!(rel_close(&(x * y).conj(), &(y.conj() * x.conj()), scale));
        }

        #[test]
        fn associative_below_octonions((x, y, z) in prop::sample::select(Algebra::MATRIX.to_vec()).prop_flat_map(|a| (scalar_strategy(a), scalar_strategy(a), scalar_strategy(a)))) {
            let scale = x.abs() * y.abs() * z.abs();
            prop_assert!(rel_close(&(x * (y * z)), &((x * y) * z), scale));
        }

        #[test]
        fn octonions_are_alternative((x, y) in (scalar_strategy(Algebra::Octonion), scalar_strategy(Algebra::Octonion))) {
            let scale = x.norm_sq() * y.abs();
            prop_assert!(rel_close(&(x * (x * y)), &((x * x) * y), scale));
            let scale = x.abs() * y.norm_sq();
            prop_assert!(rel_close(&(x * (y * y)), &((x * y) * y), scale));
        }
    }
}
