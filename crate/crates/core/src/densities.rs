//! Log-densities of the Riesz, Kotz-Riesz, Pearson type II-Riesz and
//! beta-Riesz families, with location-scale and transposed forms.
//!
//! Every family is a validated, immutable parameter object. Parameter-domain
//! violations are errors at construction; points outside the support
//! evaluate to [`LogDensity::OUTSIDE`].

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matvar::{solve_upper_conj_left, HermMatrix, MatVar, TriangularRoot};
use crate::special::{lgamma_m, lgamma_m_weighted, log_c_beta, log_k_beta, WeightSign};
use crate::weights::{log_q_kappa, log_q_kappa_of_inverse, WeightVector};

/// Type I weights enter through `q_κ(·)`, type II through `q_κ((·)⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    I,
    II,
}

/// c-beta (built from type I components) or k-beta (type II).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BetaKind {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "k")]
    K,
}

impl BetaKind {
    pub fn variant(self) -> Variant {
        match self {
            BetaKind::C => Variant::I,
            BetaKind::K => Variant::II,
        }
    }
}

/// A log-density value with an explicit support flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDensity {
    pub value: f64,
    pub in_support: bool,
}

impl LogDensity {
    pub const OUTSIDE: LogDensity = LogDensity { value: f64::NEG_INFINITY, in_support: false };

    fn inside(value: f64) -> Self {
        LogDensity { value, in_support: true }
    }

    /// `exp(value)`, zero outside the support.
    pub fn density(&self) -> f64 {
        if self.in_support {
            self.value.exp()
        } else {
            0.0
        }
    }
}

fn beta_of(alg: Algebra) -> f64 {
    alg.beta_f64()
}

fn check_weights(name: &str, w: &WeightVector, m: usize) -> Result<()> {
    if w.len() != m {
        return Err(Error::DimensionMismatch(format!("{name} has length {} but the matrix dimension is {m}", w.len())));
    }
    if !w.is_nonincreasing() {
        warn!("{name} = {:?} is not nonincreasing", w.as_slice());
    }
    Ok(())
}

fn check_same_algebra(expected: Algebra, got: Algebra) -> Result<()> {
    if expected != got {
        return Err(Error::AlgebraMismatch(expected, got));
    }
    Ok(())
}

fn check_square(name: &str, s: &HermMatrix, dim: usize) -> Result<()> {
    if s.dim() != dim {
        return Err(Error::DimensionMismatch(format!("{name} is {0}x{0}, expected {dim}x{dim}", s.dim())));
    }
    Ok(())
}

fn check_shape(name: &str, x: &MatVar, rows: usize, cols: usize) -> Result<()> {
    if x.rows() != rows || x.cols() != cols {
        return Err(Error::DimensionMismatch(format!("{name} is {}x{}, expected {rows}x{cols}", x.rows(), x.cols())));
    }
    Ok(())
}

fn positive_definite(name: &str, s: &HermMatrix) -> Result<()> {
    s.cholesky_upper().map(|_| ()).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } => Error::Parameter(format!("{name} is not positive definite")),
        other => other,
    })
}

/// `log q_κ(S)` or `log q_κ(S⁻¹)`; zero weights short-circuit.
fn log_q(s: &HermMatrix, w: &WeightVector, variant: Variant) -> Result<f64> {
    if w.is_zero() {
        return Ok(0.0);
    }
    match variant {
        Variant::I => log_q_kappa(s, w),
        Variant::II => log_q_kappa_of_inverse(s, w),
    }
}

fn sign_for(variant: Variant) -> WeightSign {
    match variant {
        Variant::I => WeightSign::Plus,
        Variant::II => WeightSign::Minus,
    }
}

/// The scale root used by a variant: upper for type I, lower for type II.
pub fn variant_root(s: &HermMatrix, variant: Variant) -> Result<TriangularRoot> {
    match variant {
        Variant::I => TriangularRoot::upper(s),
        Variant::II => TriangularRoot::lower(s),
    }
}

/// Riesz distribution of type I or II on the positive definite cone.
#[derive(Clone, Debug)]
pub struct Riesz {
    a: f64,
    kappa: WeightVector,
    xi: HermMatrix,
    xi_inv: HermMatrix,
    variant: Variant,
    log_norm: f64,
}

impl Riesz {
    pub fn new(a: f64, kappa: WeightVector, xi: HermMatrix, variant: Variant) -> Result<Self> {
        let alg = xi.algebra();
        alg.require_associative()?;
        let m = xi.dim();
        check_weights("kappa", &kappa, m)?;
        positive_definite("Xi", &xi)?;
        let beta = beta_of(alg);
        let half = (m as f64 - 1.0) * beta / 2.0;
        match variant {
            Variant::I if !(a > half - kappa.last()) => {
                return Err(Error::Domain(format!("Riesz type I needs a > (m-1)β/2 - k_m = {}, got {a}", half - kappa.last())))
            }
            Variant::II if !(a > half + kappa.first()) => {
                return Err(Error::Domain(format!("Riesz type II needs a > (m-1)β/2 + k_1 = {}, got {a}", half + kappa.first())))
            }
            _ => {}
        }
        let mf = m as f64;
        let log_det_xi = xi.log_det()?;
        let (pow, q_xi) = match variant {
            Variant::I => (a * mf + kappa.sum(), log_q(&xi, &kappa, Variant::I)?),
            Variant::II => (a * mf - kappa.sum(), log_q(&xi, &kappa, Variant::II)?),
        };
        let log_norm = pow * beta.ln() - lgamma_m_weighted(a, &kappa, alg, sign_for(variant))? - a * log_det_xi - q_xi;
        let xi_inv = xi.inverse()?;
        Ok(Riesz { a, kappa, xi, xi_inv, variant, log_norm })
    }

    /// Identity scale.
    pub fn standard(a: f64, kappa: WeightVector, alg: Algebra, variant: Variant) -> Result<Self> {
        let m = kappa.len();
        Self::new(a, kappa, HermMatrix::identity(alg, m), variant)
    }

    pub fn shape(&self) -> f64 {
        self.a
    }

    pub fn kappa(&self) -> &WeightVector {
        &self.kappa
    }

    pub fn scale(&self) -> &HermMatrix {
        &self.xi
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    pub fn algebra(&self) -> Algebra {
        self.xi.algebra()
    }

    pub fn log_normalizer(&self) -> f64 {
        self.log_norm
    }

    /// Errors if `v` is not positive definite.
    pub fn log_pdf(&self, v: &HermMatrix) -> Result<LogDensity> {
        check_same_algebra(self.algebra(), v.algebra())?;
        check_square("V", v, self.dim())?;
        if !v.is_positive_definite() {
            return Ok(LogDensity::OUTSIDE);
        }
        let beta = beta_of(self.algebra());
        let m = self.dim() as f64;
        let log_det = v.log_det()?;
        let value = self.log_norm - beta * self.xi_inv.trace_product(v)?
            + (self.a - (m - 1.0) * beta / 2.0 - 1.0) * log_det
            + log_q(v, &self.kappa, self.variant)?;
        Ok(LogDensity::inside(value))
    }

    pub fn pdf(&self, v: &HermMatrix) -> Result<f64> {
        Ok(self.log_pdf(v)?.density())
    }
}

/// Kotz-Riesz distribution of type I or II on `n × m` matrices.
#[derive(Clone, Debug)]
pub struct KotzRiesz {
    kappa: WeightVector,
    mu: MatVar,
    theta: HermMatrix,
    sigma: HermMatrix,
    u_theta: TriangularRoot,
    u_sigma: TriangularRoot,
    variant: Variant,
    log_norm: f64,
}

impl KotzRiesz {
    pub fn new(kappa: WeightVector, mu: MatVar, theta: HermMatrix, sigma: HermMatrix, variant: Variant) -> Result<Self> {
        let alg = mu.algebra();
        alg.require_associative()?;
        check_same_algebra(alg, theta.algebra())?;
        check_same_algebra(alg, sigma.algebra())?;
        let (n, m) = (mu.rows(), mu.cols());
        if n < m {
            return Err(Error::Parameter(format!("Kotz-Riesz needs n >= m, got n = {n}, m = {m}")));
        }
        check_weights("kappa", &kappa, m)?;
        check_square("Theta", &theta, n)?;
        check_square("Sigma", &sigma, m)?;
        positive_definite("Theta", &theta)?;
        positive_definite("Sigma", &sigma)?;
        let beta = beta_of(alg);
        let (mf, nf) = (m as f64, n as f64);
        let half = (mf - 1.0) * beta / 2.0;
        let shape = nf * beta / 2.0;
        match variant {
            Variant::I if !(shape > half - kappa.last()) => {
                return Err(Error::Domain(format!("Kotz-Riesz type I needs nβ/2 > (m-1)β/2 - k_m, got nβ/2 = {shape}")))
            }
            Variant::II if !(shape > half + kappa.first()) => {
                return Err(Error::Domain(format!("Kotz-Riesz type II needs nβ/2 > (m-1)β/2 + k_1, got nβ/2 = {shape}")))
            }
            _ => {}
        }
        let ksum = match variant {
            Variant::I => kappa.sum(),
            Variant::II => -kappa.sum(),
        };
        let log_norm = (mf * shape + ksum) * beta.ln() + lgamma_m(shape, m, alg)?
            - mf * shape * PI.ln()
            - lgamma_m_weighted(shape, &kappa, alg, sign_for(variant))?
            - shape * sigma.log_det()?
            - mf * beta / 2.0 * theta.log_det()?;
        Ok(KotzRiesz {
            u_theta: TriangularRoot::upper(&theta)?,
            u_sigma: TriangularRoot::upper(&sigma)?,
            kappa,
            mu,
            theta,
            sigma,
            variant,
            log_norm,
        })
    }

    /// `μ = 0`, `Θ = I_n`, `Σ = I_m`.
    pub fn standard(kappa: WeightVector, n: usize, alg: Algebra, variant: Variant) -> Result<Self> {
        let m = kappa.len();
        Self::new(kappa, MatVar::zeros(alg, n, m), HermMatrix::identity(alg, n), HermMatrix::identity(alg, m), variant)
    }

    pub fn kappa(&self) -> &WeightVector {
        &self.kappa
    }

    pub fn location(&self) -> &MatVar {
        &self.mu
    }

    pub fn row_scale(&self) -> &HermMatrix {
        &self.theta
    }

    pub fn col_scale(&self) -> &HermMatrix {
        &self.sigma
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rows(&self) -> usize {
        self.mu.rows()
    }

    pub fn cols(&self) -> usize {
        self.mu.cols()
    }

    pub fn algebra(&self) -> Algebra {
        self.mu.algebra()
    }

    pub fn log_normalizer(&self) -> f64 {
        self.log_norm
    }

    /// `Z = u(Θ)*⁻¹ (Y - μ) u(Σ)⁻¹`.
    pub fn standardize(&self, y: &MatVar) -> Result<MatVar> {
        check_same_algebra(self.algebra(), y.algebra())?;
        check_shape("Y", y, self.rows(), self.cols())?;
        let d = y.sub(&self.mu)?;
        let left = solve_upper_conj_left(&self.u_theta.matrix(), &d)?;
        self.u_sigma.solve_right(&left)
    }

    /// `Y = u(Θ)* Z u(Σ) + μ`.
    pub fn destandardize(&self, z: &MatVar) -> Result<MatVar> {
        let left = self.u_theta.matrix().conj_transpose().matmul(z)?;
        self.u_sigma.mul_right(&left)?.add(&self.mu)
    }

    /// Errors when `κ ≠ 0` and the quadratic form is singular.
    pub fn log_pdf(&self, y: &MatVar) -> Result<LogDensity> {
        let z = self.standardize(y)?;
        let beta = beta_of(self.algebra());
        let mut value = self.log_norm - beta * z.frobenius_sq();
        if !self.kappa.is_zero() {
            let s = z.gram()?;
            value += log_q(&s, &self.kappa, self.variant).map_err(|e| match e {
                Error::NotPositiveDefinite { .. } => Error::Domain("quadratic form (Y-μ)*Θ⁻¹(Y-μ) is rank deficient".into()),
                other => other,
            })?;
        }
        Ok(LogDensity::inside(value))
    }

    pub fn pdf(&self, y: &MatVar) -> Result<f64> {
        Ok(self.log_pdf(y)?.density())
    }
}

/// Pearson type II-Riesz distribution of `Q = u(Ω)⁻¹ R F + μ`, where `R` is
/// the standard matrix `X L⁻¹` built from Riesz and Kotz-Riesz draws and `F` the variant root
/// of `Ξ`.
#[derive(Clone, Debug)]
pub struct PearsonIIRiesz {
    nu: f64,
    kappa: WeightVector,
    tau: WeightVector,
    mu: MatVar,
    omega: HermMatrix,
    xi: HermMatrix,
    u_omega: TriangularRoot,
    root_xi: TriangularRoot,
    variant: Variant,
    log_norm: f64,
}

impl PearsonIIRiesz {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        nu: f64,
        kappa: WeightVector,
        tau: WeightVector,
        mu: MatVar,
        omega: HermMatrix,
        xi: HermMatrix,
        variant: Variant,
    ) -> Result<Self> {
        let alg = mu.algebra();
        alg.require_associative()?;
        check_same_algebra(alg, omega.algebra())?;
        check_same_algebra(alg, xi.algebra())?;
        let (n, m) = (mu.rows(), mu.cols());
        if n < m {
            return Err(Error::Parameter(format!("Pearson II-Riesz needs n >= m, got n = {n}, m = {m}; use the transposed form")));
        }
        check_weights("kappa", &kappa, m)?;
        check_weights("tau", &tau, m)?;
        check_square("Omega", &omega, n)?;
        check_square("Xi", &xi, m)?;
        positive_definite("Omega", &omega)?;
        positive_definite("Xi", &xi)?;
        let beta = beta_of(alg);
        let (mf, nf) = (m as f64, n as f64);
        let log_beta_fn = match variant {
            Variant::I => log_c_beta(nu * beta / 2.0, &kappa, nf * beta / 2.0, &tau, alg)?,
            Variant::II => log_k_beta(nu * beta / 2.0, &kappa, nf * beta / 2.0, &tau, alg)?,
        };
        let log_norm = lgamma_m(nf * beta / 2.0, m, alg)? + mf * beta / 2.0 * omega.log_det()?
            - mf * nf * beta / 2.0 * PI.ln()
            - log_beta_fn
            - ((nu + nf - mf + 1.0) * beta / 2.0 - 1.0) * xi.log_det()?
            - log_q(&xi, &(&kappa + &tau), variant)?;
        Ok(PearsonIIRiesz {
            u_omega: TriangularRoot::upper(&omega)?,
            root_xi: variant_root(&xi, variant)?,
            nu,
            kappa,
            tau,
            mu,
            omega,
            xi,
            variant,
            log_norm,
        })
    }

    /// `μ = 0`, `Ω = I_n`, `Ξ = I_m`.
    pub fn standard(nu: f64, n: usize, kappa: WeightVector, tau: WeightVector, alg: Algebra, variant: Variant) -> Result<Self> {
        let m = kappa.len();
        Self::new(nu, kappa, tau, MatVar::zeros(alg, n, m), HermMatrix::identity(alg, n), HermMatrix::identity(alg, m), variant)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn kappa(&self) -> &WeightVector {
        &self.kappa
    }

    pub fn tau(&self) -> &WeightVector {
        &self.tau
    }

    pub fn location(&self) -> &MatVar {
        &self.mu
    }

    pub fn omega(&self) -> &HermMatrix {
        &self.omega
    }

    pub fn xi(&self) -> &HermMatrix {
        &self.xi
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rows(&self) -> usize {
        self.mu.rows()
    }

    pub fn cols(&self) -> usize {
        self.mu.cols()
    }

    pub fn algebra(&self) -> Algebra {
        self.mu.algebra()
    }

    pub fn log_normalizer(&self) -> f64 {
        self.log_norm
    }

    /// `R = u(Ω)(Q - μ)F⁻¹`.
    pub fn standardize(&self, q: &MatVar) -> Result<MatVar> {
        check_same_algebra(self.algebra(), q.algebra())?;
        check_shape("Q", q, self.rows(), self.cols())?;
        let left = self.u_omega.matrix().matmul(&q.sub(&self.mu)?)?;
        self.root_xi.solve_right(&left)
    }

    /// `Q = u(Ω)⁻¹ R F + μ`.
    pub fn destandardize(&self, r: &MatVar) -> Result<MatVar> {
        let rf = self.root_xi.mul_right(r)?;
        let inv = self.omega.cholesky_upper()?.inverse();
        inv.matmul(&rf)?.add(&self.mu)
    }

    /// `log` of `(dR)/(dQ) = |Ω|^{mβ/2}|Ξ|^{-nβ/2}`.
    pub fn log_jacobian(&self) -> f64 {
        let beta = beta_of(self.algebra());
        let (mf, nf) = (self.cols() as f64, self.rows() as f64);
        mf * beta / 2.0 * self.u_omega.log_det() - nf * beta / 2.0 * self.root_xi.log_det()
    }

    pub fn log_pdf(&self, q: &MatVar) -> Result<LogDensity> {
        check_same_algebra(self.algebra(), q.algebra())?;
        check_shape("Q", q, self.rows(), self.cols())?;
        let d = self.u_omega.matrix().matmul(&q.sub(&self.mu)?)?;
        let quad = d.gram()?;
        let e = match self.xi.sub(&quad)?.cholesky_upper() {
            Ok(_) => self.xi.sub(&quad)?,
            Err(Error::NotPositiveDefinite { .. }) => return Ok(LogDensity::OUTSIDE),
            Err(other) => return Err(other),
        };
        if !self.tau.is_zero() && !quad.is_positive_definite() {
            return Ok(LogDensity::OUTSIDE);
        }
        let beta = beta_of(self.algebra());
        let m = self.cols() as f64;
        let value = self.log_norm
            + ((self.nu - m + 1.0) * beta / 2.0 - 1.0) * e.log_det()?
            + log_q(&e, &self.kappa, self.variant)?
            + log_q(&quad, &self.tau, self.variant)?;
        Ok(LogDensity::inside(value))
    }

    pub fn pdf(&self, q: &MatVar) -> Result<f64> {
        Ok(self.log_pdf(q)?.density())
    }
}

/// Transposed Pearson type II-Riesz law on `n × m` matrices with `n < m`
/// allowed; evaluated through the conjugate transpose.
#[derive(Clone, Debug)]
pub struct PearsonIIRieszTransposed {
    inner: PearsonIIRiesz,
}

impl PearsonIIRieszTransposed {
    /// `Q₁` is `n × m`; weights have length `n`, `Ω` is `n × n`, `Ξ` is `m × m`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        kappa1: WeightVector,
        tau1: WeightVector,
        mu: MatVar,
        omega: HermMatrix,
        xi: HermMatrix,
        variant: Variant,
    ) -> Result<Self> {
        let inner = PearsonIIRiesz::new(a, kappa1, tau1, mu.conj_transpose(), xi, omega, variant)?;
        Ok(PearsonIIRieszTransposed { inner })
    }

    pub fn standard(a: f64, m: usize, kappa1: WeightVector, tau1: WeightVector, alg: Algebra, variant: Variant) -> Result<Self> {
        let inner = PearsonIIRiesz::standard(a, m, kappa1, tau1, alg, variant)?;
        Ok(PearsonIIRieszTransposed { inner })
    }

    /// The untransposed law of `Q₁*`.
    pub fn inner(&self) -> &PearsonIIRiesz {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.cols()
    }

    pub fn cols(&self) -> usize {
        self.inner.rows()
    }

    pub fn algebra(&self) -> Algebra {
        self.inner.algebra()
    }

    pub fn variant(&self) -> Variant {
        self.inner.variant()
    }

    pub fn log_pdf(&self, q1: &MatVar) -> Result<LogDensity> {
        self.inner.log_pdf(&q1.conj_transpose())
    }

    pub fn pdf(&self, q1: &MatVar) -> Result<f64> {
        Ok(self.log_pdf(q1)?.density())
    }
}

/// c- or k-beta-Riesz distribution of `C = F* B F` on `{0 < C < Θ}`.
#[derive(Clone, Debug)]
pub struct BetaRiesz {
    nu: f64,
    n: usize,
    kappa: WeightVector,
    tau: WeightVector,
    theta: HermMatrix,
    kind: BetaKind,
    log_norm: f64,
}

impl BetaRiesz {
    pub fn new(nu: f64, n: usize, kappa: WeightVector, tau: WeightVector, theta: HermMatrix, kind: BetaKind) -> Result<Self> {
        let alg = theta.algebra();
        alg.require_associative()?;
        let m = theta.dim();
        check_weights("kappa", &kappa, m)?;
        check_weights("tau", &tau, m)?;
        positive_definite("Theta", &theta)?;
        let beta = beta_of(alg);
        let (mf, nf) = (m as f64, n as f64);
        let log_beta_fn = match kind {
            BetaKind::C => log_c_beta(nu * beta / 2.0, &kappa, nf * beta / 2.0, &tau, alg)?,
            BetaKind::K => log_k_beta(nu * beta / 2.0, &kappa, nf * beta / 2.0, &tau, alg)?,
        };
        let log_norm =
            -log_beta_fn - ((nu + nf - mf + 1.0) * beta / 2.0 - 1.0) * theta.log_det()? - log_q(&theta, &(&kappa + &tau), kind.variant())?;
        Ok(BetaRiesz { nu, n, kappa, tau, theta, kind, log_norm })
    }

    /// `Θ = I_m`.
    pub fn standard(nu: f64, n: usize, kappa: WeightVector, tau: WeightVector, alg: Algebra, kind: BetaKind) -> Result<Self> {
        let m = kappa.len();
        Self::new(nu, n, kappa, tau, HermMatrix::identity(alg, m), kind)
    }

    /// Law of `B₁ = R₁R₁*` for the transposed Pearson matrix: `a` takes the
    /// place of `ν` and the column count `m` that of `n`.
    pub fn transposed(a: f64, m: usize, kappa1: WeightVector, tau1: WeightVector, theta: HermMatrix, kind: BetaKind) -> Result<Self> {
        Self::new(a, m, kappa1, tau1, theta, kind)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> &WeightVector {
        &self.kappa
    }

    pub fn tau(&self) -> &WeightVector {
        &self.tau
    }

    pub fn theta(&self) -> &HermMatrix {
        &self.theta
    }

    pub fn kind(&self) -> BetaKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.theta.dim()
    }

    pub fn algebra(&self) -> Algebra {
        self.theta.algebra()
    }

    pub fn log_normalizer(&self) -> f64 {
        self.log_norm
    }

    pub fn log_pdf(&self, c: &HermMatrix) -> Result<LogDensity> {
        check_same_algebra(self.algebra(), c.algebra())?;
        check_square("C", c, self.dim())?;
        let rest = self.theta.sub(c)?;
        let (log_det_c, log_det_rest) = match (c.log_det(), rest.log_det()) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::NotPositiveDefinite { .. }), _) | (_, Err(Error::NotPositiveDefinite { .. })) => return Ok(LogDensity::OUTSIDE),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let beta = beta_of(self.algebra());
        let (mf, nf) = (self.dim() as f64, self.n as f64);
        let variant = self.kind.variant();
        let value = self.log_norm
            + ((nf - mf + 1.0) * beta / 2.0 - 1.0) * log_det_c
            + ((self.nu - mf + 1.0) * beta / 2.0 - 1.0) * log_det_rest
            + log_q(&rest, &self.kappa, variant)?
            + log_q(c, &self.tau, variant)?;
        Ok(LogDensity::inside(value))
    }

    pub fn pdf(&self, c: &HermMatrix) -> Result<f64> {
        Ok(self.log_pdf(c)?.density())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: Algebra = Algebra::Real;

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn scalar_h(x: f64) -> HermMatrix {
        HermMatrix::from_real_diag(R, &[x])
    }

    fn col(v: &[f64]) -> MatVar {
        MatVar::from_real(R, v.len(), 1, v).unwrap()
    }

    #[test]
    fn riesz_scalar_reductions() {
        let exp1 = Riesz::standard(1.0, w(&[0.]), R, Variant::I).unwrap();
        assert!((exp1.log_pdf(&scalar_h(1.0)).unwrap().value + 1.0).abs() < 1e-14);
        let g2 = Riesz::standard(1.0, w(&[1.]), R, Variant::I).unwrap();
        let expect = 2f64.ln() - 2.0;
        assert!((g2.log_pdf(&scalar_h(2.0)).unwrap().value - expect).abs() < 1e-14);
    }

    #[test]
    fn riesz_type_two_scalar_matches_shifted_type_one() {
        let two = Riesz::standard(2.0, w(&[1.]), R, Variant::II).unwrap();
        let one = Riesz::standard(2.0, w(&[-1.]), R, Variant::I).unwrap();
        for v in [0.3, 1.0, 2.5] {
            let a = two.log_pdf(&scalar_h(v)).unwrap().value;
            let b = one.log_pdf(&scalar_h(v)).unwrap().value;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn riesz_rejects_bad_parameters() {
        assert!(Riesz::standard(0.4, w(&[0., 0.]), R, Variant::I).is_err());
        assert!(Riesz::standard(1.2, w(&[1., 0.]), R, Variant::II).is_err());
        let d = Riesz::standard(2.0, w(&[0., 0.]), R, Variant::I).unwrap();
        assert_eq!(d.log_pdf(&HermMatrix::from_real_diag(R, &[1., -1.])).unwrap(), LogDensity::OUTSIDE);
        assert!(Riesz::standard(2.0, w(&[0.]), Algebra::Octonion, Variant::I).is_err());
    }

    #[test]
    fn kotz_riesz_normal_reduction() {
        let d = KotzRiesz::standard(w(&[0.]), 1, R, Variant::I).unwrap();
        let v = d.log_pdf(&col(&[0.])).unwrap().value;
        assert!((v + 0.5 * PI.ln()).abs() < 1e-14);
        assert_eq!(v, d.log_normalizer());
    }

    #[test]
    fn kotz_riesz_singular_form_with_weight_errors() {
        let d = KotzRiesz::standard(w(&[1.]), 2, R, Variant::I).unwrap();
        assert!(d.log_pdf(&col(&[0., 0.])).is_err());
    }

    #[test]
    fn pearson_uniform_case() {
        let d = PearsonIIRiesz::standard(2.0, 1, w(&[0.]), w(&[0.]), R, Variant::I).unwrap();
        let v = d.log_pdf(&col(&[0.3])).unwrap();
        assert!(v.in_support);
        assert!((v.value + 2f64.ln()).abs() < 1e-14);
        assert_eq!(d.log_pdf(&col(&[1.0])).unwrap(), LogDensity::OUTSIDE);
        assert_eq!(d.log_pdf(&col(&[3.0])).unwrap(), LogDensity::OUTSIDE);
    }

    #[test]
    fn pearson_location_scale_consistency() {
        let alg = Algebra::Complex;
        let mu =
            MatVar::from_fn(alg, 3, 2, |i, j| crate::algebra::Scalar::from_components(alg, &[0.1 * i as f64, -0.05 * j as f64]).unwrap());
        let omega = HermMatrix::new(MatVar::from_real(alg, 3, 3, &[2., 0.3, 0.1, 0.3, 1.5, 0.2, 0.1, 0.2, 1.]).unwrap()).unwrap();
        let xi = HermMatrix::new(MatVar::from_real(alg, 2, 2, &[1.2, 0.4, 0.4, 0.9]).unwrap()).unwrap();
        for variant in [Variant::I, Variant::II] {
            let (k, t) = (w(&[1., 0.5]), w(&[0.5, 0.25]));
            let d = PearsonIIRiesz::new(4.0, k.clone(), t.clone(), mu.clone(), omega.clone(), xi.clone(), variant).unwrap();
            let s = PearsonIIRiesz::standard(4.0, 3, k, t, alg, variant).unwrap();
            let r = MatVar::from_fn(alg, 3, 2, |i, j| {
                crate::algebra::Scalar::from_components(alg, &[0.15 * (i as f64 - j as f64), 0.1]).unwrap()
            });
            let q = d.destandardize(&r).unwrap();
            assert!(d.standardize(&q).unwrap().sub(&r).unwrap().max_norm() < 1e-12);
            let lhs = d.log_pdf(&q).unwrap().value;
            let rhs = s.log_pdf(&r).unwrap().value + d.log_jacobian();
            assert!((lhs - rhs).abs() < 1e-10, "{variant:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn transposed_square_case_matches_direct() {
        let alg = Algebra::Quaternion;
        let k = w(&[0.5, 0.5]);
        let d = PearsonIIRiesz::standard(5.0, 2, k.clone(), k.clone(), alg, Variant::I).unwrap();
        let t = PearsonIIRieszTransposed::standard(5.0, 2, k.clone(), k, alg, Variant::I).unwrap();
        let q = MatVar::from_fn(alg, 2, 2, |i, j| {
            crate::algebra::Scalar::from_components(alg, &[0.2, 0.1 * i as f64, -0.1 * j as f64, 0.05]).unwrap()
        });
        let a = t.log_pdf(&q).unwrap().value;
        let b = d.log_pdf(&q.conj_transpose()).unwrap().value;
        assert_eq!(a, b);
        let far = MatVar::from_real(alg, 2, 2, &[5., 0., 0., 5.]).unwrap();
        assert!(!t.log_pdf(&far).unwrap().in_support);
    }

    #[test]
    fn beta_uniform_and_support() {
        let d = BetaRiesz::standard(2.0, 2, w(&[0.]), w(&[0.]), R, BetaKind::C).unwrap();
        assert!(d.log_pdf(&scalar_h(0.5)).unwrap().value.abs() < 1e-14);
        assert!(!d.log_pdf(&scalar_h(1.0)).unwrap().in_support);
        assert!(!d.log_pdf(&scalar_h(0.0)).unwrap().in_support);
        assert!(!d.log_pdf(&scalar_h(-0.2)).unwrap().in_support);
    }

    #[test]
    fn variant_serde_names() {
        assert_eq!(serde_json::to_string(&Variant::II).unwrap(), "\"II\"");
        assert_eq!(serde_json::to_string(&BetaKind::K).unwrap(), "\"k\"");
        assert!(serde_json::from_str::<BetaKind>("\"x\"").is_err());
    }
}
