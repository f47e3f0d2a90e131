use std::str::FromStr;

use crate::algebra::{Algebra, Scalar};
use crate::densities::{BetaKind, BetaRiesz, PearsonIIRiesz, Riesz, Variant};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::matvar::MatVar;
use crate::weights::WeightVector;

use super::{derive_seed, identities, jacobian, laws, normalization, VerificationReport};

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Normalization,
    Jacobians,
    Theorem1,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalization" => Ok(Suite::Normalization),
            "jacobians" => Ok(Suite::Jacobians),
            "theorem1" => Ok(Suite::Theorem1),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            other => {
                Err(Error::Parameter(format!("unknown suite '{other}' (expected normalization, jacobians, theorem1, properties or all)")))
            }
        }
    }
}

/// Sample sizes, seed and algebras for a suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub algebras: Vec<Algebra>,
    pub seed: u64,
    pub mc_samples: u64,
    pub ks_samples: u64,
    pub jacobian_samples: u64,
    pub identity_instances: u64,
    pub quadrature_tol: f64,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            algebras: vec![Algebra::Real, Algebra::Complex, Algebra::Quaternion],
            seed: 42,
            mc_samples: 1_000_000,
            ks_samples: 100_000,
            jacobian_samples: 4_000_000,
            identity_instances: 1000,
            quadrature_tol: 1e-8,
            timings: false,
        }
    }
}

impl VerifyConfig {
    fn has(&self, alg: Algebra) -> bool {
        self.algebras.contains(&alg)
    }

    /// Seed of a check, from the run seed and the check name.
    pub fn seed_for(&self, label: &str) -> u64 {
        let tag = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        derive_seed(self.seed, tag)
    }
}

fn collect(out: &mut Vec<VerificationReport>, label: &str, r: Result<VerificationReport>) {
    out.push(r.unwrap_or_else(|e| VerificationReport::errored(label, &e)));
}

fn collect_many(out: &mut Vec<VerificationReport>, label: &str, r: Result<Vec<VerificationReport>>) {
    match r {
        Ok(v) => out.extend(v),
        Err(e) => out.push(VerificationReport::errored(label, &e)),
    }
}

fn weights(v: &[f64]) -> Result<WeightVector> {
    WeightVector::new(v.to_vec())
}

fn normalization(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) {
    for &alg in &cfg.algebras {
        match identities::normalization_grid(alg) {
            Ok(grid) => {
                for (label, dist) in grid {
                    collect(out, &label, normalization::check_normalization_1d(&label, &dist, cfg.quadrature_tol));
                }
            }
            Err(e) => out.push(VerificationReport::errored(&format!("normalization_1d:b{}", alg.beta()), &e)),
        }
    }
    if cfg.has(Algebra::Real) {
        let cases = || -> Result<Vec<(&'static str, Distribution)>> {
            let alg = Algebra::Real;
            let z = WeightVector::zeros(2);
            Ok(vec![
                (
                    "normalization_mc:pearson2_riesz:I:b1:m2:n2",
                    Distribution::Pearson2Riesz(PearsonIIRiesz::standard(4.0, 2, weights(&[1.0, 0.0])?, z.clone(), alg, Variant::I)?),
                ),
                (
                    "normalization_mc:beta_riesz:c:b1:m2",
                    Distribution::BetaRiesz(BetaRiesz::standard(4.0, 4, weights(&[1.0, 0.0])?, z, alg, BetaKind::C)?),
                ),
                ("normalization_mc:riesz:I:b1:m2", Distribution::Riesz(Riesz::standard(2.0, weights(&[1.0, 0.0])?, alg, Variant::I)?)),
            ])
        };
        match cases() {
            Ok(cases) => {
                for (label, dist) in cases {
                    let seed = cfg.seed_for(label);
                    collect(out, label, normalization::check_normalization_mc(label, &dist, cfg.mc_samples, seed));
                }
            }
            Err(e) => out.push(VerificationReport::errored("normalization_mc", &e)),
        }
    }
}

fn mat(alg: Algebra, n: usize, entries: &[&[f64]]) -> Result<MatVar> {
    let scalars = entries.iter().map(|c| Scalar::from_components(alg, &c[..alg.beta()])).collect::<Result<Vec<_>>>()?;
    MatVar::from_scalars(alg, n, n, scalars)
}

fn jacobians(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) {
    for alg in [Algebra::Real, Algebra::Complex] {
        if !cfg.has(alg) {
            continue;
        }
        let b = alg.beta();
        let linear = || -> Result<Vec<(MatVar, MatVar)>> {
            Ok(vec![
                (mat(alg, 1, &[&[2.0, 0.0]])?, mat(alg, 1, &[&[3.0, 0.0]])?),
                (mat(alg, 1, &[&[1.0, 1.0]])?, mat(alg, 1, &[&[0.8, -0.3]])?),
                (mat(alg, 2, &[&[1.2, 0.1], &[0.15, 0.0], &[-0.1, 0.05], &[0.9, -0.1]])?, mat(alg, 1, &[&[1.3, 0.2]])?),
                (mat(alg, 1, &[&[0.9, 0.0]])?, mat(alg, 2, &[&[1.4, 0.1], &[0.1, -0.05], &[0.0, 0.1], &[1.2, 0.0]])?),
                (
                    mat(alg, 2, &[&[1.1, 0.05], &[0.1, 0.0], &[0.0, -0.1], &[0.8, 0.1]])?,
                    mat(alg, 2, &[&[1.3, 0.0], &[-0.1, 0.1], &[0.05, 0.0], &[1.25, -0.1]])?,
                ),
            ])
        };
        match linear() {
            Ok(cases) => {
                for (i, (a, bm)) in cases.iter().enumerate() {
                    let label = format!("jacobian_linear:b{b}:case{i}");
                    let seed = cfg.seed_for(&label);
                    collect(out, &label, jacobian::check_jacobian_linear(&label, a, bm, cfg.jacobian_samples, seed));
                }
            }
            Err(e) => out.push(VerificationReport::errored(&format!("jacobian_linear:b{b}"), &e)),
        }
        let herm = || -> Result<Vec<MatVar>> {
            Ok(vec![
                mat(alg, 1, &[&[1.5, 0.5]])?,
                mat(alg, 2, &[&[2.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]])?,
                mat(alg, 2, &[&[1.2, 0.1], &[0.2, -0.1], &[0.1, 0.0], &[0.9, 0.05]])?,
            ])
        };
        match herm() {
            Ok(cases) => {
                for (i, a) in cases.iter().enumerate() {
                    let label = format!("jacobian_hermitian:b{b}:case{i}");
                    let seed = cfg.seed_for(&label);
                    collect(out, &label, jacobian::check_jacobian_hermitian(&label, a, cfg.jacobian_samples, seed));
                }
            }
            Err(e) => out.push(VerificationReport::errored(&format!("jacobian_hermitian:b{b}"), &e)),
        }
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let label = format!("jacobian_polar:b{b}:m{m}:n{n}");
            let seed = cfg.seed_for(&label);
            collect(out, &label, jacobian::check_jacobian_polar(m, n, alg, cfg.jacobian_samples, seed));
        }
    }
}

fn theorem1(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) {
    for p in laws::joint_law_grid() {
        let Ok(alg) = Algebra::from_beta(p.beta) else { continue };
        if !cfg.has(alg) {
            continue;
        }
        let label = format!("joint_law:b{}:{}", p.beta, p.u_shape());
        let seed = cfg.seed_for(&label);
        collect(out, &label, laws::check_joint_law(&p, cfg.ks_samples, seed));
    }
    if cfg.has(Algebra::Real) {
        for p in laws::beta_law_grid() {
            let label = format!("beta_law:{:?}:{}:{}", p.kind, p.nu, p.n);
            let seed = cfg.seed_for(&label);
            collect(out, &label, laws::check_beta_law(&p, cfg.ks_samples, seed));
        }
    }
}

fn properties(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) {
    collect(out, "stiefel_volume", identities::check_stiefel_volumes());
    let formula_algebras = [Algebra::Real, Algebra::Complex, Algebra::Quaternion, Algebra::Octonion];
    collect_many(out, "gamma_identity", identities::check_gamma_identities(&formula_algebras));
    for &alg in &cfg.algebras {
        let label = format!("q_identity:b{}", alg.beta());
        let seed = cfg.seed_for(&label);
        collect_many(out, &label, identities::check_q_identities(alg, cfg.identity_instances, seed));
    }
    if !cfg.has(Algebra::Real) {
        return;
    }
    collect_many(out, "sampler", laws::sampler_reduction_checks(cfg.ks_samples, |i| cfg.seed_for(&format!("sampler:{i}"))));
    let label = "histogram:pearson2_gram";
    collect(out, label, laws::check_pearson_gram_histogram(3.0, 2, 0.5, 1.0, 50, cfg.ks_samples, cfg.seed_for(label)));
    let label = "bartlett_convention";
    collect(out, label, laws::check_bartlett_convention(cfg.ks_samples * 2, cfg.seed_for(label)));
    match laws::sampler_density_cases() {
        Ok(cases) => {
            for (label, dist, funcs) in cases {
                let seed = cfg.seed_for(&label);
                collect(out, &label, laws::check_sampler_vs_density(&label, &dist, &funcs, cfg.ks_samples * 2, seed));
            }
        }
        Err(e) => out.push(VerificationReport::errored("sampler_density", &e)),
    }
}

/// Runs `suite`; failed checks and checks that could not run are reported,
/// never raised.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Normalization | Suite::All) {
        normalization(cfg, &mut out);
    }
    if matches!(suite, Suite::Jacobians | Suite::All) {
        jacobians(cfg, &mut out);
    }
    if matches!(suite, Suite::Theorem1 | Suite::All) {
        theorem1(cfg, &mut out);
    }
    if matches!(suite, Suite::Properties | Suite::All) {
        properties(cfg, &mut out);
    }
    if !cfg.timings {
        for r in &mut out {
            r.wall_time_s = None;
        }
    }
    out
}
