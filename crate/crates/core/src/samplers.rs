//! Random generation for the Riesz-type families.
//!
//! The generator is `ChaCha20Rng` seeded through `seed_from_u64`; stream `i`
//! of a base seed `s` uses seed `s ^ i`. Cone-valued variates are built from
//! Bartlett factors: upper triangular `T` with `t_ii² ~ Gamma(shape_i, rate β)`
//! and off-diagonal entries whose `β` real components are `N(0, 1/(2β))`.
//! Type II laws are produced by reversal: `V ~ Riesz II(a, κ)` iff
//! `JVJ ~ Riesz I(a, -κ*)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::algebra::{Algebra, Scalar};
use crate::densities::{variant_root, BetaRiesz, KotzRiesz, PearsonIIRiesz, PearsonIIRieszTransposed, Riesz, Variant};
use crate::error::{Error, Result};
use crate::matvar::{tri_solve_right, HermMatrix, MatVar};
use crate::weights::WeightVector;

pub type SampleRng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from a base seed.
pub fn stream_rng(seed: u64, index: u64) -> SampleRng {
    rng_from_seed(seed ^ index)
}

fn normal<R: Rng + ?Sized>(rng: &mut R, sd: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sd * z
}

fn gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64, rate: f64) -> Result<f64> {
    if !(shape > 0.0) {
        return Err(Error::Parameter(format!("gamma shape {shape} is not positive")));
    }
    let g = Gamma::new(shape, 1.0 / rate).map_err(|e| Error::Parameter(format!("gamma({shape}, {rate}): {e}")))?;
    Ok(g.sample(rng))
}

fn random_scalar<R: Rng + ?Sized>(alg: Algebra, sd: f64, rng: &mut R) -> Scalar {
    let comps: Vec<f64> = (0..alg.beta()).map(|_| normal(rng, sd)).collect();
    Scalar::from_components(alg, &comps).expect("component count matches the algebra")
}

/// `rows × cols` matrix with i.i.d. `N(0, variance)` real components.
pub fn gaussian_matvar<R: Rng + ?Sized>(alg: Algebra, rows: usize, cols: usize, variance: f64, rng: &mut R) -> MatVar {
    let sd = variance.sqrt();
    MatVar::from_fn(alg, rows, cols, |_, _| random_scalar(alg, sd, rng))
}

/// Upper triangular Bartlett factor with `t_ii² ~ Gamma(shapes[i], rate β)`.
pub fn bartlett_factor<R: Rng + ?Sized>(shapes: &[f64], alg: Algebra, rng: &mut R) -> Result<MatVar> {
    alg.require_associative()?;
    let m = shapes.len();
    let beta = alg.beta_f64();
    let sd = (1.0 / (2.0 * beta)).sqrt();
    let mut t = MatVar::zeros(alg, m, m);
    for i in 0..m {
        t.set(i, i, Scalar::real(alg, gamma(rng, shapes[i], beta)?.sqrt()));
        for j in i + 1..m {
            t.set(i, j, random_scalar(alg, sd, rng));
        }
    }
    Ok(t)
}

/// Bartlett shapes of the standard Riesz law.
pub fn riesz_shapes(a: f64, kappa: &WeightVector, alg: Algebra, variant: Variant) -> Vec<f64> {
    let beta = alg.beta_f64();
    let m = kappa.len();
    (0..m)
        .map(|i| {
            let k = match variant {
                Variant::I => kappa[i],
                Variant::II => -kappa[m - 1 - i],
            };
            a + k - i as f64 * beta / 2.0
        })
        .collect()
}

/// `F` with `F*F ~ Riesz(a, κ, I)`: the Bartlett factor for type I, `T'J`
/// for type II.
pub fn riesz_factor<R: Rng + ?Sized>(a: f64, kappa: &WeightVector, alg: Algebra, variant: Variant, rng: &mut R) -> Result<MatVar> {
    let t = bartlett_factor(&riesz_shapes(a, kappa, alg, variant), alg, rng)?;
    Ok(match variant {
        Variant::I => t,
        Variant::II => t.reverse_cols(),
    })
}

pub fn sample_riesz<R: Rng + ?Sized>(d: &Riesz, rng: &mut R) -> Result<HermMatrix> {
    let f = riesz_factor(d.shape(), d.kappa(), d.algebra(), d.variant(), rng)?;
    let w = f.gram()?;
    variant_root(d.scale(), d.variant())?.congruence(&w)
}

/// `n × m` matrix with orthonormal columns, Haar distributed.
pub fn sample_haar_stiefel<R: Rng + ?Sized>(m: usize, n: usize, alg: Algebra, rng: &mut R) -> Result<MatVar> {
    alg.require_associative()?;
    if m == 0 || n < m {
        return Err(Error::Parameter(format!("Stiefel manifold needs n >= m >= 1, got m = {m}, n = {n}")));
    }
    let g = gaussian_matvar(alg, n, m, 1.0, rng);
    let mut cols: Vec<Vec<Scalar>> = (0..m).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..m {
        for _pass in 0..2 {
            for k in 0..j {
                let mut c = Scalar::zero(alg);
                for i in 0..n {
                    c += cols[k][i].conj() * cols[j][i];
                }
                for i in 0..n {
                    let p = cols[k][i] * c;
                    cols[j][i] -= p;
                }
            }
        }
        let norm = cols[j].iter().map(|s| s.norm_sq()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::Domain("degenerate Gaussian draw in Stiefel sampler".into()));
        }
        for s in cols[j].iter_mut() {
            *s = s.scale(1.0 / norm);
        }
    }
    Ok(MatVar::from_fn(alg, n, m, |i, j| cols[j][i]))
}

/// Standard Kotz-Riesz draw `V₁ F` with `F*F ~ Riesz(nβ/2, κ, I)`.
pub fn kotz_riesz_standard<R: Rng + ?Sized>(n: usize, kappa: &WeightVector, alg: Algebra, variant: Variant, rng: &mut R) -> Result<MatVar> {
    let m = kappa.len();
    let f = riesz_factor(n as f64 * alg.beta_f64() / 2.0, kappa, alg, variant, rng)?;
    let v1 = sample_haar_stiefel(m, n, alg, rng)?;
    v1.matmul(&f)
}

pub fn sample_kotz_riesz<R: Rng + ?Sized>(d: &KotzRiesz, rng: &mut R) -> Result<MatVar> {
    let z = kotz_riesz_standard(d.rows(), d.kappa(), d.algebra(), d.variant(), rng)?;
    d.destandardize(&z)
}

/// `U = U₁ + X*X = L*L` and `R = X L⁻¹`.
pub fn construct_pearson2(x: &MatVar, u1: &HermMatrix) -> Result<(MatVar, HermMatrix)> {
    let u = u1.add(&x.gram()?)?;
    let l = u.cholesky_upper()?;
    let r = tri_solve_right(x, &l)?;
    Ok((r, u))
}

/// Standard `(R, U)` pair: `R` Pearson II-Riesz with identity scales and
/// `U ~ Riesz((ν+n)β/2, κ+τ, I)` of the same variant.
pub fn pearson2_components<R: Rng + ?Sized>(
    nu: f64,
    n: usize,
    kappa: &WeightVector,
    tau: &WeightVector,
    alg: Algebra,
    variant: Variant,
    rng: &mut R,
) -> Result<(MatVar, HermMatrix)> {
    let m = kappa.len();
    if n < m {
        return Err(Error::Parameter(format!("Pearson II-Riesz sampling needs n >= m, got n = {n}, m = {m}")));
    }
    let (k, t) = match variant {
        Variant::I => (kappa.clone(), tau.clone()),
        Variant::II => (-&kappa.reversed(), -&tau.reversed()),
    };
    let a = nu * alg.beta_f64() / 2.0;
    let u1 = riesz_factor(a, &k, alg, Variant::I, rng)?.gram()?;
    let x = kotz_riesz_standard(n, &t, alg, Variant::I, rng)?;
    let (r, u) = construct_pearson2(&x, &u1)?;
    Ok(match variant {
        Variant::I => (r, u),
        Variant::II => (r.reverse_cols(), u.reversed()),
    })
}

pub fn sample_pearson2_riesz<R: Rng + ?Sized>(d: &PearsonIIRiesz, rng: &mut R) -> Result<MatVar> {
    let (r, _) = pearson2_components(d.nu(), d.rows(), d.kappa(), d.tau(), d.algebra(), d.variant(), rng)?;
    d.destandardize(&r)
}

pub fn sample_pearson2_riesz_transposed<R: Rng + ?Sized>(d: &PearsonIIRieszTransposed, rng: &mut R) -> Result<MatVar> {
    Ok(sample_pearson2_riesz(d.inner(), rng)?.conj_transpose())
}

pub fn sample_beta_riesz<R: Rng + ?Sized>(d: &BetaRiesz, rng: &mut R) -> Result<HermMatrix> {
    let variant = d.kind().variant();
    let (r, _) = pearson2_components(d.nu(), d.n(), d.kappa(), d.tau(), d.algebra(), variant, rng)?;
    let b = r.gram()?;
    variant_root(d.theta(), variant)?.congruence(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn same_seed_same_stream() {
        let d = Riesz::standard(3.5, w(&[1., 0.]), Algebra::Quaternion, Variant::II).unwrap();
        let a = sample_riesz(&d, &mut rng_from_seed(9)).unwrap();
        let b = sample_riesz(&d, &mut rng_from_seed(9)).unwrap();
        assert_eq!(a, b);
        let c = sample_riesz(&d, &mut stream_rng(9, 1)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn stiefel_columns_are_orthonormal() {
        let mut rng = rng_from_seed(1);
        for alg in Algebra::MATRIX {
            for (m, n) in [(1, 1), (2, 3), (3, 3), (2, 5)] {
                let v = sample_haar_stiefel(m, n, alg, &mut rng).unwrap();
                let g = v.gram().unwrap();
                let err = g.as_matvar().sub(&MatVar::identity(alg, m)).unwrap().max_norm();
                assert!(err <= 1e-10, "{alg} {m}x{n}: {err}");
            }
        }
        assert!(sample_haar_stiefel(3, 2, Algebra::Real, &mut rng).is_err());
    }

    #[test]
    fn construct_pearson2_scalar() {
        let x = MatVar::from_real(Algebra::Real, 1, 1, &[1.0]).unwrap();
        let u1 = HermMatrix::from_real_diag(Algebra::Real, &[3.0]);
        let (r, u) = construct_pearson2(&x, &u1).unwrap();
        assert!((u.get(0, 0).re() - 4.0).abs() < 1e-15);
        assert!((r.get(0, 0).re() - 0.5).abs() < 1e-15);
        let zero = MatVar::zeros(Algebra::Real, 2, 2);
        let u1 = HermMatrix::from_real_diag(Algebra::Real, &[2.0, 5.0]);
        let (r, u) = construct_pearson2(&zero, &u1).unwrap();
        assert_eq!(r.max_norm(), 0.0);
        assert_eq!(u, u1);
    }

    #[test]
    fn pearson_samples_stay_in_support() {
        let mut rng = rng_from_seed(3);
        for variant in [Variant::I, Variant::II] {
            let d = PearsonIIRiesz::standard(4.5, 3, w(&[1., 0.5]), w(&[0.5, 0.]), Algebra::Complex, variant).unwrap();
            for _ in 0..200 {
                let q = sample_pearson2_riesz(&d, &mut rng).unwrap();
                assert!(d.log_pdf(&q).unwrap().in_support);
            }
        }
    }

    #[test]
    fn bad_shapes_are_parameter_errors() {
        let mut rng = rng_from_seed(0);
        assert!(matches!(bartlett_factor(&[1.0, -0.5], Algebra::Real, &mut rng), Err(Error::Parameter(_))));
    }
}
