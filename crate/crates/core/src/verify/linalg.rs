//! Real coordinates of matrix spaces and determinants of linear maps
//! between them.

use nalgebra::DMatrix;

use crate::algebra::{Algebra, Scalar};
use crate::error::{Error, Result};
use crate::matvar::{HermMatrix, MatVar};

/// Real dimension of the Hermitian `m × m` matrices.
pub fn herm_dim(m: usize, alg: Algebra) -> usize {
    m + m * (m - 1) / 2 * alg.beta()
}

/// Diagonal entries, then the components of each `s_ij` with `i < j`.
pub fn herm_coords(h: &HermMatrix) -> Vec<f64> {
    let m = h.dim();
    let mut v: Vec<f64> = (0..m).map(|i| h.get(i, i).re()).collect();
    for i in 0..m {
        for j in i + 1..m {
            v.extend_from_slice(h.get(i, j).components());
        }
    }
    v
}

pub fn herm_from_coords(alg: Algebra, m: usize, c: &[f64]) -> HermMatrix {
    let b = alg.beta();
    let mut x = MatVar::zeros(alg, m, m);
    for i in 0..m {
        x.set(i, i, Scalar::real(alg, c[i]));
    }
    let mut k = m;
    for i in 0..m {
        for j in i + 1..m {
            let s = Scalar::from_components(alg, &c[k..k + b]).expect("component count");
            x.set(i, j, s);
            x.set(j, i, s.conj());
            k += b;
        }
    }
    HermMatrix::new(x).expect("Hermitian by construction")
}

/// Matrix of a linear map `ℝ^d → ℝ^d` given by its action on vectors.
pub fn linear_map_matrix(dim: usize, f: impl Fn(&[f64]) -> Result<Vec<f64>>) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::zeros(dim, dim);
    let mut e = vec![0.0; dim];
    for j in 0..dim {
        e[j] = 1.0;
        let col = f(&e)?;
        if col.len() != dim {
            return Err(Error::DimensionMismatch(format!("map returned {} coordinates, expected {dim}", col.len())));
        }
        for (i, v) in col.into_iter().enumerate() {
            out[(i, j)] = v;
        }
        e[j] = 0.0;
    }
    Ok(out)
}

/// Matrix of an affine map, with the image of the origin removed.
pub fn affine_map_matrix(dim: usize, f: impl Fn(&[f64]) -> Result<Vec<f64>>) -> Result<DMatrix<f64>> {
    let origin = f(&vec![0.0; dim])?;
    linear_map_matrix(dim, |x| Ok(f(x)?.iter().zip(&origin).map(|(a, b)| a - b).collect()))
}

/// `log|det M|` from an LU factorization; `None` if singular.
pub fn log_abs_det(m: &DMatrix<f64>) -> Option<f64> {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut acc = 0.0;
    for i in 0..m.nrows() {
        let d = u[(i, i)].abs();
        if !(d > 0.0) {
            return None;
        }
        acc += d.ln();
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_coordinates_round_trip() {
        let alg = Algebra::Quaternion;
        let c: Vec<f64> = (0..herm_dim(3, alg)).map(|i| i as f64 * 0.5 - 1.0).collect();
        let h = herm_from_coords(alg, 3, &c);
        assert_eq!(herm_coords(&h), c);
    }

    #[test]
    fn determinant_of_scaling() {
        let m = linear_map_matrix(3, |x| Ok(x.iter().map(|v| 2.0 * v).collect())).unwrap();
        assert!((log_abs_det(&m).unwrap() - 8f64.ln()).abs() < 1e-14);
        let z = linear_map_matrix(2, |_| Ok(vec![0.0, 0.0])).unwrap();
        assert!(log_abs_det(&z).is_none());
    }
}
