//! Normalization of the densities: deterministic quadrature at `m = 1` and
//! importance-sampling Monte Carlo for small matrices.
//!
//! Vector-valued cases are integrated radially in the standardized frame,
//! and the affine map back to the sample space contributes the log
//! determinant of its real representation.

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;
use rand_distr::{Distribution as _, StandardNormal};
use statrs::distribution::{Continuous, Gamma};
use statrs::function::gamma::ln_gamma;

use super::linalg::{affine_map_matrix, herm_coords, herm_dim, herm_from_coords, log_abs_det};
use super::stats::Moments;
use super::{chunked, VerificationReport};
use crate::algebra::Algebra;
use crate::densities::{LogDensity, Riesz, Variant};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::matvar::{HermMatrix, MatVar, TriangularRoot};
use crate::quadrature::{integrate_endpoint_smoothed, integrate_half_line, Quadrature};
use crate::samplers::SampleRng;

/// Surface area of the unit sphere in `ℝ^d`.
pub fn log_sphere_area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2f64.ln() + h * PI.ln() - ln_gamma(h)
}

fn herm_map(alg: Algebra, m: usize, f: impl Fn(&HermMatrix) -> Result<HermMatrix>) -> impl Fn(&[f64]) -> Result<Vec<f64>> {
    move |x| Ok(herm_coords(&f(&herm_from_coords(alg, m, x))?))
}

fn log_det_of(dim: usize, f: impl Fn(&[f64]) -> Result<Vec<f64>>) -> Result<f64> {
    log_abs_det(&affine_map_matrix(dim, f)?).ok_or_else(|| Error::Domain("affine map is singular".into()))
}

fn density(ld: Result<LogDensity>) -> f64 {
    match ld {
        Ok(v) if v.in_support && v.value.is_finite() => v.value.exp(),
        _ => 0.0,
    }
}

/// A vector-valued law viewed in its standardized frame: the point as a
/// function of standardized real coordinates.
struct Frame<'a> {
    dist: &'a Distribution,
    alg: Algebra,
    rows: usize,
    cols: usize,
}

impl Frame<'_> {
    fn new(dist: &Distribution) -> Result<Frame<'_>> {
        let alg = dist.algebra();
        let (rows, cols) = match dist {
            Distribution::KotzRiesz(d) => (d.rows(), d.cols()),
            Distribution::Pearson2Riesz(d) => (d.rows(), d.cols()),
            Distribution::Pearson2RieszTransposed(d) => (d.inner().rows(), d.inner().cols()),
            _ => return Err(Error::Parameter("not a rectangular family".into())),
        };
        Ok(Frame { dist, alg, rows, cols })
    }

    fn dim(&self) -> usize {
        self.rows * self.cols * self.alg.beta()
    }

    fn point(&self, z: &MatVar) -> Result<MatVar> {
        match self.dist {
            Distribution::KotzRiesz(d) => d.destandardize(z),
            Distribution::Pearson2Riesz(d) => d.destandardize(z),
            Distribution::Pearson2RieszTransposed(d) => Ok(d.inner().destandardize(z)?.conj_transpose()),
            _ => unreachable!("checked in Frame::new"),
        }
    }

    fn point_from_real(&self, x: &[f64]) -> Result<MatVar> {
        self.point(&MatVar::from_real_vec(self.alg, self.rows, self.cols, x)?)
    }

    fn log_jacobian(&self) -> Result<f64> {
        let (rows, cols) = (self.rows, self.cols);
        log_det_of(self.dim(), |x| {
            let p = self.point(&MatVar::from_real_vec(self.alg, rows, cols, x)?)?;
            Ok(p.to_real_vec())
        })
    }
}

fn quad_report(label: &str, q: Quadrature, tol: f64) -> VerificationReport {
    let mut detail = format!("integral = {:.15}, quadrature error = {:.3e}", q.value, q.error);
    if !q.converged {
        detail.push_str(", not converged within the evaluation budget");
    }
    VerificationReport::new(label, (q.value - 1.0).abs(), tol, q.evaluations, None, detail)
}

/// Integral of the density over its support for `m = 1` (row vectors for
/// the transposed family); reports `|integral - 1|` against `tol`.
pub fn check_normalization_1d(label: &str, dist: &Distribution, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let qtol = tol / 10.0;
    let q = match dist {
        Distribution::Riesz(d) => {
            if d.dim() != 1 {
                return Err(Error::Parameter("quadrature normalization needs m = 1".into()));
            }
            let alg = d.algebra();
            integrate_half_line(|v| density(d.log_pdf(&HermMatrix::from_real_diag(alg, &[v]))), 0.0, qtol)
        }
        Distribution::BetaRiesz(d) => {
            if d.dim() != 1 {
                return Err(Error::Parameter("quadrature normalization needs m = 1".into()));
            }
            let alg = d.algebra();
            let top = d.theta().get(0, 0).re();
            integrate_endpoint_smoothed(|c| density(d.log_pdf(&HermMatrix::from_real_diag(alg, &[c]))), 0.0, top, qtol)
        }
        _ => {
            let frame = Frame::new(dist)?;
            if frame.cols != 1 {
                return Err(Error::Parameter("quadrature normalization needs m = 1 (n = 1 for the transposed form)".into()));
            }
            let d = frame.dim();
            let log_jac = frame.log_jacobian()?;
            let norm = (1..=d).map(|i| (i * i) as f64).sum::<f64>().sqrt();
            let dir: Vec<f64> = (1..=d).map(|i| i as f64 / norm).collect();
            let log_area = log_sphere_area(d);
            let integrand = |r: f64| {
                let x: Vec<f64> = dir.iter().map(|e| r * e).collect();
                let f = match frame.point_from_real(&x) {
                    Ok(p) => match dist.log_pdf(&p) {
                        Ok(v) if v.in_support => v.value,
                        _ => return 0.0,
                    },
                    Err(_) => return 0.0,
                };
                let radial = if d == 1 { 0.0 } else { (d as f64 - 1.0) * r.ln() };
                (f + log_jac + log_area + radial).exp()
            };
            match dist {
                Distribution::KotzRiesz(_) => integrate_half_line(integrand, 0.0, qtol),
                _ => integrate_endpoint_smoothed(integrand, 0.0, 1.0, qtol),
            }
        }
    };
    Ok(quad_report(label, q, tol).timed(start))
}

/// Proposal and pullback used to integrate a density by Monte Carlo.
pub struct ImportanceSampler<'a> {
    dist: &'a Distribution,
    kind: Proposal,
    log_jac: f64,
}

enum Proposal {
    /// Gamma diagonal and a uniform ball for `w_12` (`m ≤ 2`).
    GammaBall { shapes: Vec<f64>, root: TriangularRoot },
    /// Uniform box `(0,1)` diagonal, `[-1,1]^β` off-diagonal.
    HermBox { root: TriangularRoot },
    /// Uniform box `[-1,1]^d` in the standardized frame.
    RectBox,
    /// i.i.d. normal components in the standardized frame.
    Gaussian { variance: f64 },
}

fn riesz_proposal(d: &Riesz) -> Result<Proposal> {
    if d.dim() > 2 {
        return Err(Error::Parameter("Riesz Monte Carlo supports m <= 2".into()));
    }
    let k = d.kappa();
    let shapes: Vec<f64> = (0..d.dim())
        .map(|i| match d.variant() {
            Variant::I => d.shape() + k[i],
            Variant::II => d.shape() - k[i],
        })
        .collect();
    if shapes.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::Domain(format!("Gamma proposal shapes {shapes:?} are not positive")));
    }
    Ok(Proposal::GammaBall { shapes, root: TriangularRoot::upper(d.scale())? })
}

fn sample_ball<R: Rng + ?Sized>(dim: usize, radius: f64, rng: &mut R) -> Vec<f64> {
    let g: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = radius * rng.random::<f64>().powf(1.0 / dim as f64);
    g.into_iter().map(|x| x * r / norm).collect()
}

fn log_ball_volume(dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    h * PI.ln() - ln_gamma(h + 1.0)
}

impl<'a> ImportanceSampler<'a> {
    pub fn new(dist: &'a Distribution) -> Result<Self> {
        let alg = dist.algebra();
        let (kind, log_jac) = match dist {
            Distribution::Riesz(d) => {
                let kind = riesz_proposal(d)?;
                let Proposal::GammaBall { root, .. } = &kind else { unreachable!() };
                let jac = log_det_of(herm_dim(d.dim(), alg), herm_map(alg, d.dim(), |w| root.congruence(w)))?;
                (kind, jac)
            }
            Distribution::BetaRiesz(d) => {
                let root = TriangularRoot::upper(d.theta())?;
                let jac = log_det_of(herm_dim(d.dim(), alg), herm_map(alg, d.dim(), |w| root.congruence(w)))?;
                (Proposal::HermBox { root }, jac)
            }
            Distribution::KotzRiesz(_) => {
                let frame = Frame::new(dist)?;
                let variance = 1.3 / (2.0 * alg.beta_f64());
                (Proposal::Gaussian { variance }, frame.log_jacobian()?)
            }
            _ => {
                let frame = Frame::new(dist)?;
                (Proposal::RectBox, frame.log_jacobian()?)
            }
        };
        Ok(ImportanceSampler { dist, kind, log_jac })
    }

    /// One point of the sample space and its weight `f(x)/g(x)`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(MatVar, f64)> {
        let alg = self.dist.algebra();
        let beta = alg.beta();
        match &self.kind {
            Proposal::GammaBall { shapes, root } => {
                let rate = alg.beta_f64();
                let mut log_g = 0.0;
                let mut diag = Vec::with_capacity(shapes.len());
                for &s in shapes {
                    let g = Gamma::new(s, rate).map_err(|e| Error::Parameter(e.to_string()))?;
                    let x = rand_distr::Gamma::new(s, 1.0 / rate).map_err(|e| Error::Parameter(e.to_string()))?.sample(rng);
                    log_g += g.ln_pdf(x);
                    diag.push(x);
                }
                let mut coords = diag.clone();
                if shapes.len() == 2 {
                    let radius = (diag[0] * diag[1]).sqrt();
                    coords.extend(sample_ball(beta, radius, rng));
                    log_g -= log_ball_volume(beta) + beta as f64 * radius.ln();
                }
                let w = herm_from_coords(alg, shapes.len(), &coords);
                let v = root.congruence(&w)?;
                let ld = self.dist.log_pdf(v.as_matvar())?;
                Ok((v.into_matvar(), weight(ld, self.log_jac - log_g)))
            }
            Proposal::HermBox { root } => {
                let Distribution::BetaRiesz(d) = self.dist else { unreachable!() };
                let m = d.dim();
                let dim = herm_dim(m, alg);
                let coords: Vec<f64> =
                    (0..dim).map(|i| if i < m { rng.random::<f64>() } else { 2.0 * rng.random::<f64>() - 1.0 }).collect();
                let b = herm_from_coords(alg, m, &coords);
                let c = root.congruence(&b)?;
                let ld = self.dist.log_pdf(c.as_matvar())?;
                let log_box = (dim - m) as f64 * 2f64.ln();
                Ok((c.into_matvar(), weight(ld, self.log_jac + log_box)))
            }
            Proposal::RectBox => {
                let frame = Frame::new(self.dist)?;
                let dim = frame.dim();
                let x: Vec<f64> = (0..dim).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
                let p = frame.point_from_real(&x)?;
                let ld = self.dist.log_pdf(&p)?;
                Ok((p, weight(ld, self.log_jac + dim as f64 * 2f64.ln())))
            }
            Proposal::Gaussian { variance } => {
                let frame = Frame::new(self.dist)?;
                let dim = frame.dim();
                let sd = variance.sqrt();
                let x: Vec<f64> = (0..dim)
                    .map(|_| {
                        let z: f64 = StandardNormal.sample(rng);
                        sd * z
                    })
                    .collect();
                let log_g = x.iter().map(|v| -v * v / (2.0 * variance)).sum::<f64>() - dim as f64 / 2.0 * (2.0 * PI * variance).ln();
                let p = frame.point_from_real(&x)?;
                let ld = self.dist.log_pdf(&p)?;
                Ok((p, weight(ld, self.log_jac - log_g)))
            }
        }
    }
}

fn weight(ld: LogDensity, log_factor: f64) -> f64 {
    if ld.in_support {
        (ld.value + log_factor).exp()
    } else {
        0.0
    }
}

/// Importance estimates of `∫f` and of `E_f[h_j]` for each test function.
pub fn importance_moments(
    dist: &Distribution,
    funcs: &[&(dyn Fn(&MatVar) -> f64 + Sync)],
    samples: u64,
    seed: u64,
) -> Result<(Moments, Vec<Moments>)> {
    let sampler = ImportanceSampler::new(dist)?;
    let chunks = chunked(seed, samples, |rng: &mut SampleRng, count| {
        let mut total = Moments::default();
        let mut hs = vec![Moments::default(); funcs.len()];
        for _ in 0..count {
            let (x, w) = sampler.draw(rng)?;
            total.push(w);
            for (acc, h) in hs.iter_mut().zip(funcs) {
                acc.push(if w == 0.0 { 0.0 } else { w * h(&x) });
            }
        }
        Ok((total, hs))
    })?;
    let mut total = Moments::default();
    let mut hs = vec![Moments::default(); funcs.len()];
    for (t, h) in &chunks {
        total.merge(t);
        for (a, b) in hs.iter_mut().zip(h) {
            a.merge(b);
        }
    }
    Ok((total, hs))
}

/// Monte Carlo `∫f`; passes when the estimate is within 3 standard errors of 1.
pub fn check_normalization_mc(label: &str, dist: &Distribution, samples: u64, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let (m, _) = importance_moments(dist, &[], samples, seed)?;
    let (est, se) = (m.mean(), m.std_error());
    let z = (est - 1.0).abs() / se;
    Ok(VerificationReport::new(label, z, 3.0, samples, Some(seed), format!("estimate = {est:.6} ± {se:.6} (statistic in standard errors)"))
        .timed(start))
}
