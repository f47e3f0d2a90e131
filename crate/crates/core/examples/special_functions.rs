//! Multivariate gamma functions with weights and weighted Pochhammer symbols.

use riesz_matvar::algebra::Algebra;
use riesz_matvar::error::Result;
use riesz_matvar::special::{lgamma_m, lgamma_m_weighted, log_c_beta, log_k_beta, log_stiefel_volume, pochhammer_weighted, WeightSign};
use riesz_matvar::weights::WeightVector;

fn main() -> Result<()> {
    let kappa = WeightVector::new(vec![2.0, 1.0, 0.0])?;
    for alg in [Algebra::Real, Algebra::Complex, Algebra::Quaternion, Algebra::Octonion] {
        let a = 12.5;
        let plain = lgamma_m(a, 3, alg)?;
        let plus = lgamma_m_weighted(a, &kappa, alg, WeightSign::Plus)?;
        let minus = lgamma_m_weighted(a, &kappa, alg, WeightSign::Minus)?;
        let poch = pochhammer_weighted(a, &kappa, alg)?;
        println!(
            "β = {}: ln Γ_3[a] = {plain:.10}, ln Γ_3[a, κ] = {plus:.10}, ln [a]_κ + ln Γ_3[a] = {:.10}, ln Γ_3[a, -κ] = {minus:.10}",
            alg.beta(),
            poch.ln_abs + plain
        );
    }

    let alg = Algebra::Complex;
    let k = WeightVector::new(vec![0.5, -0.25])?;
    let t = WeightVector::new(vec![1.0, 0.5])?;
    println!("ln c-beta = {:.10}", log_c_beta(4.0, &k, 3.0, &t, alg)?);
    println!("ln k-beta = {:.10}", log_k_beta(4.0, &k, 3.0, &t, alg)?);

    for n in 2..=4 {
        println!("Vol(S^{}) = {:.12}", n - 1, log_stiefel_volume(1, n, Algebra::Real)?.exp());
    }
    Ok(())
}
