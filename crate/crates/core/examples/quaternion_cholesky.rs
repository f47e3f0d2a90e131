//! Cholesky and LDL factorizations of a quaternion Hermitian matrix.

use riesz_matvar::algebra::{Algebra, Scalar};
use riesz_matvar::error::Result;
use riesz_matvar::matvar::{HermMatrix, MatVar};

fn main() -> Result<()> {
    let alg = Algebra::Quaternion;
    let q = |c: [f64; 4]| Scalar::from_components(alg, &c);
    let g = MatVar::from_scalars(
        alg,
        3,
        3,
        vec![
            q([1.0, 0.2, -0.1, 0.3])?,
            q([0.4, 0.0, 0.5, -0.2])?,
            q([0.0, 0.1, 0.0, 0.0])?,
            q([0.3, -0.4, 0.2, 0.1])?,
            q([1.2, 0.0, 0.1, 0.0])?,
            q([-0.2, 0.3, 0.0, 0.5])?,
            q([0.1, 0.0, 0.0, 0.2])?,
            q([0.0, 0.6, -0.3, 0.0])?,
            q([0.9, -0.1, 0.0, 0.2])?,
        ],
    )?;
    let s = g.gram()?.add(&HermMatrix::identity(alg, 3).scale(0.1))?;

    let chol = s.cholesky_upper()?;
    println!("upper Cholesky diagonal: {:?}", chol.diag());
    let back = chol.reconstruct()?;
    println!("max |T*T - S| = {:.3e}", back.as_matvar().sub(s.as_matvar())?.max_norm());

    let ldl = s.ldl()?;
    println!("LDL pivots: {:?}", ldl.pivots());
    println!("log|S| = {:.12} (Cholesky {:.12})", s.log_det()?, chol.log_det());

    let prod = s.as_matvar().matmul(s.inverse()?.as_matvar())?;
    println!("max |S S⁻¹ - I| = {:.3e}", prod.sub(&MatVar::identity(alg, 3))?.max_norm());
    Ok(())
}
