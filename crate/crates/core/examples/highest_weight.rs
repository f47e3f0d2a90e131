//! Generalized powers `q_κ` and their algebra.

use riesz_matvar::algebra::Algebra;
use riesz_matvar::error::Result;
use riesz_matvar::matvar::{HermMatrix, MatVar};
use riesz_matvar::weights::{log_q_kappa, log_q_kappa_minors, log_q_kappa_of_inverse, log_q_star_kappa, log_trailing_pivots, WeightVector};

fn main() -> Result<()> {
    let alg = Algebra::Complex;
    let b =
        MatVar::from_real_vec(alg, 3, 3, &[1.0, 0.0, 0.3, 0.2, -0.1, 0.4, 0.0, 0.0, 1.4, 0.0, 0.2, -0.3, 0.0, 0.0, 0.0, 0.0, 0.8, 0.0])?;
    let s = b.gram()?.add(&HermMatrix::identity(alg, 3).scale(0.5))?;
    let kappa = WeightVector::new(vec![1.5, -0.5, 0.25])?;

    let q = log_q_kappa(&s, &kappa)?;
    println!("ln q_κ(S)           = {q:.12}");
    println!("from leading minors = {:.12}", log_q_kappa_minors(&s, &kappa)?);
    println!("ln q*_κ(S)          = {:.12}", log_q_star_kappa(&s, &kappa)?);
    println!("trailing pivots     = {:?}", log_trailing_pivots(&s)?.iter().map(|x| x.exp()).collect::<Vec<_>>());
    println!("ln q_κ(S⁻¹)         = {:.12} (direct {:.12})", log_q_kappa_of_inverse(&s, &kappa)?, log_q_kappa(&s.inverse()?, &kappa)?);

    let shifted = &kappa + &WeightVector::constant(3, 2.0);
    println!("ln q_(κ+2)(S) - ln q_κ(S) = {:.12}, 2 ln|S| = {:.12}", log_q_kappa(&s, &shifted)? - q, 2.0 * s.log_det()?);

    let congr = s.congruence(&b)?;
    println!("ln q_κ(B*SB) = {:.12}, ln q_κ(B*B) + ln q_κ(S) = {:.12}", log_q_kappa(&congr, &kappa)?, log_q_kappa(&b.gram()?, &kappa)? + q);
    Ok(())
}
