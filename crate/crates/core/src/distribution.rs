//! JSON-facing parameter bundles and matrices.
//!
//! A [`DistributionSpec`] names a family, a variant and `beta` and carries
//! the family's parameters; unknown or unused fields are rejected. Omitted
//! weights default to zero, omitted locations to zero and omitted scales to
//! the identity. Matrices use `{"beta", "rows", "cols", "data"}` with one
//! array of `beta` components per entry in row-major order.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Scalar};
use crate::densities::{BetaKind, BetaRiesz, KotzRiesz, LogDensity, PearsonIIRiesz, PearsonIIRieszTransposed, Riesz, Variant};
use crate::error::{Error, Result};
use crate::matvar::{HermMatrix, MatVar};
use crate::samplers;
use crate::weights::WeightVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub beta: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn to_matvar(&self) -> Result<MatVar> {
        let alg = Algebra::from_beta(self.beta)?;
        if self.data.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix declares {}x{} but has {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        let scalars = self.data.iter().map(|c| Scalar::from_components(alg, c)).collect::<Result<Vec<_>>>()?;
        MatVar::from_scalars(alg, self.rows, self.cols, scalars)
    }

    pub fn from_matvar(x: &MatVar) -> Self {
        MatrixJson {
            beta: x.algebra().beta() as u32,
            rows: x.rows(),
            cols: x.cols(),
            data: x.entries().iter().map(|s| s.components().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Riesz,
    KotzRiesz,
    Pearson2Riesz,
    Pearson2RieszTransposed,
    BetaRiesz,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Riesz => "riesz",
            Family::KotzRiesz => "kotz_riesz",
            Family::Pearson2Riesz => "pearson2_riesz",
            Family::Pearson2RieszTransposed => "pearson2_riesz_transposed",
            Family::BetaRiesz => "beta_riesz",
        }
    }

    fn allowed(self) -> &'static [&'static str] {
        match self {
            Family::Riesz => &["m", "a", "kappa", "xi"],
            Family::KotzRiesz => &["m", "n", "kappa", "mu", "theta", "sigma"],
            Family::Pearson2Riesz => &["m", "n", "nu", "kappa", "tau", "mu", "omega", "xi"],
            Family::Pearson2RieszTransposed => &["m", "n", "a", "kappa", "tau", "mu", "omega", "xi"],
            Family::BetaRiesz => &["m", "n", "nu", "kappa", "tau", "theta"],
        }
    }
}

/// Parameter bundle for one family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    pub family: Option<Family>,
    /// `"I"`/`"II"`, or `"c"`/`"k"` for `beta_riesz`.
    pub variant: Option<String>,
    pub beta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<WeightVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<WeightVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MatrixJson>,
}

/// A validated distribution of any family.
#[derive(Clone, Debug)]
pub enum Distribution {
    Riesz(Riesz),
    KotzRiesz(KotzRiesz),
    Pearson2Riesz(PearsonIIRiesz),
    Pearson2RieszTransposed(PearsonIIRieszTransposed),
    BetaRiesz(BetaRiesz),
}

fn parse_variant(s: &str) -> Result<Variant> {
    match s {
        "I" => Ok(Variant::I),
        "II" => Ok(Variant::II),
        other => Err(Error::Parameter(format!("variant must be \"I\" or \"II\", got {other:?}"))),
    }
}

fn parse_kind(s: &str) -> Result<BetaKind> {
    match s {
        "c" => Ok(BetaKind::C),
        "k" => Ok(BetaKind::K),
        other => Err(Error::Parameter(format!("beta_riesz variant must be \"c\" or \"k\", got {other:?}"))),
    }
}

struct Dims {
    alg: Algebra,
}

impl Dims {
    fn matrix(&self, name: &str, m: &Option<MatrixJson>) -> Result<Option<MatVar>> {
        let Some(j) = m else { return Ok(None) };
        let x = j.to_matvar()?;
        if x.algebra() != self.alg {
            return Err(Error::Parameter(format!(
                "{name} has beta = {} but the distribution has beta = {}",
                x.algebra().beta(),
                self.alg.beta()
            )));
        }
        Ok(Some(x))
    }

    fn herm(&self, name: &str, m: &Option<MatrixJson>) -> Result<Option<HermMatrix>> {
        self.matrix(name, m)?.map(HermMatrix::new).transpose()
    }
}

/// First of the candidate sizes that is known; all known ones must agree.
fn resolve(name: &str, candidates: &[(&str, Option<usize>)]) -> Result<usize> {
    let mut found: Option<(&str, usize)> = None;
    for &(src, v) in candidates {
        if let Some(v) = v {
            match found {
                None => found = Some((src, v)),
                Some((s0, v0)) if v0 != v => return Err(Error::DimensionMismatch(format!("{name} is {v0} from {s0} but {v} from {src}"))),
                _ => {}
            }
        }
    }
    found.map(|(_, v)| v).ok_or_else(|| Error::Parameter(format!("cannot determine {name}; give it explicitly")))
}

fn required(name: &str, v: Option<f64>) -> Result<f64> {
    v.ok_or_else(|| Error::Parameter(format!("missing parameter {name}")))
}

impl DistributionSpec {
    fn present(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        macro_rules! mark {
            ($($f:ident),*) => {$(if self.$f.is_some() { v.push(stringify!($f)); })*};
        }
        mark!(m, n, a, nu, kappa, tau, mu, omega, xi, theta, sigma);
        v
    }

    pub fn algebra(&self) -> Result<Algebra> {
        Algebra::from_beta(self.beta.ok_or_else(|| Error::Parameter("missing beta".into()))?)
    }

    pub fn build(&self) -> Result<Distribution> {
        let family = self.family.ok_or_else(|| Error::Parameter("missing family".into()))?;
        for field in self.present() {
            if !family.allowed().contains(&field) {
                return Err(Error::Parameter(format!("field {field} is not a parameter of {}", family.name())));
            }
        }
        let alg = self.algebra()?;
        let variant = self.variant.as_deref().ok_or_else(|| Error::Parameter("missing variant".into()))?;
        let d = Dims { alg };
        let klen = self.kappa.as_ref().map(WeightVector::len);
        let tlen = self.tau.as_ref().map(WeightVector::len);
        let mu = d.matrix("mu", &self.mu)?;
        let (mu_r, mu_c) = (mu.as_ref().map(MatVar::rows), mu.as_ref().map(MatVar::cols));
        let weights = |m: usize| {
            (self.kappa.clone().unwrap_or_else(|| WeightVector::zeros(m)), self.tau.clone().unwrap_or_else(|| WeightVector::zeros(m)))
        };
        match family {
            Family::Riesz => {
                let xi = d.herm("xi", &self.xi)?;
                let m = resolve("m", &[("m", self.m), ("kappa", klen), ("xi", xi.as_ref().map(HermMatrix::dim))])?;
                let (kappa, _) = weights(m);
                let xi = xi.unwrap_or_else(|| HermMatrix::identity(alg, m));
                Ok(Distribution::Riesz(Riesz::new(required("a", self.a)?, kappa, xi, parse_variant(variant)?)?))
            }
            Family::KotzRiesz => {
                let theta = d.herm("theta", &self.theta)?;
                let sigma = d.herm("sigma", &self.sigma)?;
                let m = resolve("m", &[("m", self.m), ("kappa", klen), ("mu", mu_c), ("sigma", sigma.as_ref().map(HermMatrix::dim))])?;
                let n = resolve("n", &[("n", self.n), ("mu", mu_r), ("theta", theta.as_ref().map(HermMatrix::dim))])?;
                let (kappa, _) = weights(m);
                Ok(Distribution::KotzRiesz(KotzRiesz::new(
                    kappa,
                    mu.unwrap_or_else(|| MatVar::zeros(alg, n, m)),
                    theta.unwrap_or_else(|| HermMatrix::identity(alg, n)),
                    sigma.unwrap_or_else(|| HermMatrix::identity(alg, m)),
                    parse_variant(variant)?,
                )?))
            }
            Family::Pearson2Riesz => {
                let omega = d.herm("omega", &self.omega)?;
                let xi = d.herm("xi", &self.xi)?;
                let m =
                    resolve("m", &[("m", self.m), ("kappa", klen), ("tau", tlen), ("mu", mu_c), ("xi", xi.as_ref().map(HermMatrix::dim))])?;
                let n = resolve("n", &[("n", self.n), ("mu", mu_r), ("omega", omega.as_ref().map(HermMatrix::dim))])?;
                let (kappa, tau) = weights(m);
                Ok(Distribution::Pearson2Riesz(PearsonIIRiesz::new(
                    required("nu", self.nu)?,
                    kappa,
                    tau,
                    mu.unwrap_or_else(|| MatVar::zeros(alg, n, m)),
                    omega.unwrap_or_else(|| HermMatrix::identity(alg, n)),
                    xi.unwrap_or_else(|| HermMatrix::identity(alg, m)),
                    parse_variant(variant)?,
                )?))
            }
            Family::Pearson2RieszTransposed => {
                let omega = d.herm("omega", &self.omega)?;
                let xi = d.herm("xi", &self.xi)?;
                let n = resolve(
                    "n",
                    &[("n", self.n), ("kappa", klen), ("tau", tlen), ("mu", mu_r), ("omega", omega.as_ref().map(HermMatrix::dim))],
                )?;
                let m = resolve("m", &[("m", self.m), ("mu", mu_c), ("xi", xi.as_ref().map(HermMatrix::dim))])?;
                let (kappa, tau) = weights(n);
                Ok(Distribution::Pearson2RieszTransposed(PearsonIIRieszTransposed::new(
                    required("a", self.a)?,
                    kappa,
                    tau,
                    mu.unwrap_or_else(|| MatVar::zeros(alg, n, m)),
                    omega.unwrap_or_else(|| HermMatrix::identity(alg, n)),
                    xi.unwrap_or_else(|| HermMatrix::identity(alg, m)),
                    parse_variant(variant)?,
                )?))
            }
            Family::BetaRiesz => {
                let theta = d.herm("theta", &self.theta)?;
                let m = resolve("m", &[("m", self.m), ("kappa", klen), ("tau", tlen), ("theta", theta.as_ref().map(HermMatrix::dim))])?;
                let n = self.n.ok_or_else(|| Error::Parameter("missing parameter n".into()))?;
                let (kappa, tau) = weights(m);
                Ok(Distribution::BetaRiesz(BetaRiesz::new(
                    required("nu", self.nu)?,
                    n,
                    kappa,
                    tau,
                    theta.unwrap_or_else(|| HermMatrix::identity(alg, m)),
                    parse_kind(variant)?,
                )?))
            }
        }
    }
}

impl Distribution {
    pub fn algebra(&self) -> Algebra {
        match self {
            Distribution::Riesz(d) => d.algebra(),
            Distribution::KotzRiesz(d) => d.algebra(),
            Distribution::Pearson2Riesz(d) => d.algebra(),
            Distribution::Pearson2RieszTransposed(d) => d.algebra(),
            Distribution::BetaRiesz(d) => d.algebra(),
        }
    }

    /// `(rows, cols)` of a point of the sample space.
    pub fn point_shape(&self) -> (usize, usize) {
        match self {
            Distribution::Riesz(d) => (d.dim(), d.dim()),
            Distribution::KotzRiesz(d) => (d.rows(), d.cols()),
            Distribution::Pearson2Riesz(d) => (d.rows(), d.cols()),
            Distribution::Pearson2RieszTransposed(d) => (d.rows(), d.cols()),
            Distribution::BetaRiesz(d) => (d.dim(), d.dim()),
        }
    }

    /// Cone-valued families require a Hermitian point.
    pub fn log_pdf(&self, x: &MatVar) -> Result<LogDensity> {
        match self {
            Distribution::Riesz(d) => d.log_pdf(&HermMatrix::new(x.clone())?),
            Distribution::KotzRiesz(d) => d.log_pdf(x),
            Distribution::Pearson2Riesz(d) => d.log_pdf(x),
            Distribution::Pearson2RieszTransposed(d) => d.log_pdf(x),
            Distribution::BetaRiesz(d) => d.log_pdf(&HermMatrix::new(x.clone())?),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MatVar> {
        Ok(match self {
            Distribution::Riesz(d) => samplers::sample_riesz(d, rng)?.into_matvar(),
            Distribution::KotzRiesz(d) => samplers::sample_kotz_riesz(d, rng)?,
            Distribution::Pearson2Riesz(d) => samplers::sample_pearson2_riesz(d, rng)?,
            Distribution::Pearson2RieszTransposed(d) => samplers::sample_pearson2_riesz_transposed(d, rng)?,
            Distribution::BetaRiesz(d) => samplers::sample_beta_riesz(d, rng)?.into_matvar(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> std::result::Result<DistributionSpec, serde_json::Error> {
        serde_json::from_str(json)
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(spec(r#"{"family":"riesz","variant":"I","beta":1,"a":2,"shape":3}"#).is_err());
        let s = spec(r#"{"family":"riesz","variant":"I","beta":1,"a":2,"tau":[0]}"#).unwrap();
        assert!(matches!(s.build(), Err(Error::Parameter(_))));
    }

    #[test]
    fn defaults_fill_in() {
        let s = spec(r#"{"family":"pearson2_riesz","variant":"II","beta":2,"nu":4,"n":3,"kappa":[1,0.5]}"#).unwrap();
        let d = s.build().unwrap();
        assert_eq!(d.point_shape(), (3, 2));
        assert_eq!(d.algebra(), Algebra::Complex);
    }

    #[test]
    fn inconsistent_dimensions_are_reported() {
        let s = spec(r#"{"family":"riesz","variant":"I","beta":1,"a":2,"m":3,"kappa":[1,0]}"#).unwrap();
        assert!(matches!(s.build(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn matrix_round_trip() {
        let x = MatVar::from_fn(Algebra::Quaternion, 2, 3, |i, j| {
            Scalar::from_components(Algebra::Quaternion, &[0.1 + i as f64, 1.0 / 3.0, -(j as f64), 1e-300]).unwrap()
        });
        let text = serde_json::to_string(&MatrixJson::from_matvar(&x)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matvar().unwrap(), x);
    }
}
