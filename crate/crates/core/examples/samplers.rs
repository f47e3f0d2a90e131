//! Draws from each family and compares sample means with known moments.

use riesz_matvar::algebra::Algebra;
use riesz_matvar::densities::{BetaKind, BetaRiesz, KotzRiesz, PearsonIIRiesz, Riesz, Variant};
use riesz_matvar::error::Result;
use riesz_matvar::samplers::{
    rng_from_seed, sample_beta_riesz, sample_haar_stiefel, sample_kotz_riesz, sample_pearson2_riesz, sample_riesz,
};
use riesz_matvar::weights::WeightVector;

const N: usize = 20_000;

fn main() -> Result<()> {
    let mut rng = rng_from_seed(42);
    let alg = Algebra::Complex;

    let d = Riesz::standard(3.0, WeightVector::new(vec![1.0, 0.0])?, alg, Variant::I)?;
    let mut tr = 0.0;
    for _ in 0..N {
        tr += sample_riesz(&d, &mut rng)?.trace();
    }
    println!("Riesz I, C, a = 3, κ = (1, 0): mean trace {:.4}", tr / N as f64);

    let kr = KotzRiesz::standard(WeightVector::zeros(2), 3, alg, Variant::I)?;
    let mut fro = 0.0;
    for _ in 0..N {
        fro += sample_kotz_riesz(&kr, &mut rng)?.frobenius_sq();
    }
    println!("Kotz-Riesz with κ = 0 (Gaussian): mean ‖Y‖² {:.4}, expected 3", fro / N as f64);

    let p = PearsonIIRiesz::standard(4.0, 3, WeightVector::zeros(2), WeightVector::zeros(2), alg, Variant::II)?;
    let mut worst = 0.0f64;
    for _ in 0..N {
        let r = sample_pearson2_riesz(&p, &mut rng)?;
        worst = worst.max(r.gram()?.trace());
    }
    println!("Pearson II-Riesz: largest tr R*R {worst:.4} (support needs I - R*R > 0)");

    let b = BetaRiesz::standard(4.0, 3, WeightVector::zeros(2), WeightVector::zeros(2), alg, BetaKind::C)?;
    let mut tr = 0.0;
    for _ in 0..N {
        tr += sample_beta_riesz(&b, &mut rng)?.trace();
    }
    println!("beta-Riesz c: mean trace {:.4}, expected {:.4}", tr / N as f64, 2.0 * 3.0 / 7.0);

    let h = sample_haar_stiefel(2, 4, Algebra::Quaternion, &mut rng)?;
    println!(
        "Haar Stiefel H^(4x2): V*V = {:?}",
        h.gram()?.as_matvar().to_real_vec().iter().map(|x| (x * 1e12).round() / 1e12).collect::<Vec<_>>()
    );
    Ok(())
}
