//! Log-densities of each family, including a point outside the support.

use riesz_matvar::algebra::Algebra;
use riesz_matvar::densities::{BetaKind, BetaRiesz, KotzRiesz, PearsonIIRiesz, PearsonIIRieszTransposed, Riesz, Variant};
use riesz_matvar::error::Result;
use riesz_matvar::matvar::{HermMatrix, MatVar};
use riesz_matvar::weights::WeightVector;

fn main() -> Result<()> {
    let alg = Algebra::Real;
    let kappa = WeightVector::new(vec![1.0, -0.5])?;
    let tau = WeightVector::new(vec![0.5, 0.0])?;
    let v = HermMatrix::new(MatVar::from_real(alg, 2, 2, &[0.8, 0.1, 0.1, 0.5])?)?;

    for variant in [Variant::I, Variant::II] {
        let d = Riesz::standard(3.0, kappa.clone(), alg, variant)?;
        println!("Riesz {variant:?}: ln f(V) = {:.10}", d.log_pdf(&v)?.value);
    }

    let y = MatVar::from_real(alg, 3, 2, &[0.3, -0.2, 0.1, 0.4, -0.5, 0.2])?;
    let kr = KotzRiesz::standard(kappa.clone(), 3, alg, Variant::I)?;
    println!("Kotz-Riesz I: ln f(Y) = {:.10}", kr.log_pdf(&y)?.value);

    let p2 = PearsonIIRiesz::standard(4.0, 3, kappa.clone(), tau.clone(), alg, Variant::I)?;
    println!("Pearson II-Riesz I: ln f(R) = {:.10}", p2.log_pdf(&y)?.value);
    let far = y.scale(4.0);
    println!("outside the support: {:?}", p2.log_pdf(&far)?);

    let t = PearsonIIRieszTransposed::standard(4.0, 3, kappa.clone(), tau.clone(), alg, Variant::II)?;
    println!("transposed Pearson II-Riesz II: ln f(R*) = {:.10}", t.log_pdf(&y.conj_transpose())?.value);

    for kind in [BetaKind::C, BetaKind::K] {
        let b = BetaRiesz::standard(5.0, 4, kappa.clone(), tau.clone(), alg, kind)?;
        let c = HermMatrix::new(MatVar::from_real(alg, 2, 2, &[0.4, 0.1, 0.1, 0.3])?)?;
        println!("beta-Riesz {kind:?}: ln f(C) = {:.10}", b.log_pdf(&c)?.value);
    }
    Ok(())
}
