//! Dense matrices over a division algebra and the factorizations of
//! Hermitian positive definite matrices the densities are built from.
//!
//! Conventions: `A*` is the conjugate transpose, Cholesky factors are upper
//! triangular with `S = T*T`, and the L*DL factor has `L` unit upper
//! triangular with `S = L* diag(λ) L`, so `λ_i = t_ii²`.

use std::ops::Index;

use crate::algebra::{Algebra, Scalar};
use crate::error::{Error, Result};

/// Relative pivot threshold below which a matrix is declared not positive definite.
pub const PD_EPS: f64 = 1e-12;

/// Tolerance used when accepting a matrix as Hermitian before it is symmetrized.
const HERMITIAN_TOL: f64 = 1e-9;

/// Dense row-major `rows × cols` matrix of algebra elements.
#[derive(Clone, Debug, PartialEq)]
pub struct MatVar {
    alg: Algebra,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl MatVar {
    pub fn zeros(alg: Algebra, rows: usize, cols: usize) -> Self {
        MatVar { alg, rows, cols, data: vec![Scalar::zero(alg); rows * cols] }
    }

    pub fn identity(alg: Algebra, m: usize) -> Self {
        Self::from_fn(alg, m, m, |i, j| if i == j { Scalar::one(alg) } else { Scalar::zero(alg) })
    }

    pub fn from_fn(alg: Algebra, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.algebra(), alg);
                data.push(s);
            }
        }
        MatVar { alg, rows, cols, data }
    }

    /// Builds a matrix from row-major scalars, checking every tag.
    pub fn from_scalars(alg: Algebra, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, data.len())));
        }
        if let Some(bad) = data.iter().find(|s| s.algebra() != alg) {
            return Err(Error::AlgebraMismatch(alg, bad.algebra()));
        }
        Ok(MatVar { alg, rows, cols, data })
    }

    /// Real-valued matrix embedded in `alg`, from row-major values.
    pub fn from_real(alg: Algebra, rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        let data = values.iter().map(|&x| Scalar::real(alg, x)).collect();
        Self::from_scalars(alg, rows, cols, data)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        debug_assert_eq!(s.algebra(), self.alg);
        self.data[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// All real coordinates in row-major order, `beta` per entry.
    pub fn to_real_vec(&self) -> Vec<f64> {
        self.data.iter().flat_map(|s| s.components().iter().copied()).collect()
    }

    /// Inverse of [`MatVar::to_real_vec`].
    pub fn from_real_vec(alg: Algebra, rows: usize, cols: usize, v: &[f64]) -> Result<Self> {
        let beta = alg.beta();
        if v.len() != rows * cols * beta {
            return Err(Error::DimensionMismatch(format!("expected {} real coordinates, got {}", rows * cols * beta, v.len())));
        }
        let data = v.chunks(beta).map(|c| Scalar::from_components(alg, c)).collect::<Result<Vec<_>>>()?;
        Self::from_scalars(alg, rows, cols, data)
    }

    pub fn conj_transpose(&self) -> MatVar {
        MatVar::from_fn(self.alg, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn check_same(&self, other: &MatVar) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg, other.alg));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &MatVar) -> Result<MatVar> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = MatVar::zeros(self.alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sq() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &MatVar, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<MatVar> {
        self.check_same(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(MatVar { alg: self.alg, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &MatVar) -> Result<MatVar> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatVar) -> Result<MatVar> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> MatVar {
        let data = self.data.iter().map(|x| x.scale(s)).collect();
        MatVar { alg: self.alg, rows: self.rows, cols: self.cols, data }
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|s| s.abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|s| s.norm_sq()).sum()
    }

    /// `X*X`.
    pub fn gram(&self) -> Result<HermMatrix> {
        self.alg.require_associative()?;
        let g = self.conj_transpose().matmul(self)?;
        Ok(HermMatrix::symmetrized(g))
    }

    /// `XX*`.
    pub fn outer_gram(&self) -> Result<HermMatrix> {
        self.alg.require_associative()?;
        let g = self.matmul(&self.conj_transpose())?;
        Ok(HermMatrix::symmetrized(g))
    }

    /// `XJ`: columns in reverse order.
    pub fn reverse_cols(&self) -> MatVar {
        MatVar::from_fn(self.alg, self.rows, self.cols, |i, j| self.get(i, self.cols - 1 - j))
    }

    /// `JX`: rows in reverse order.
    pub fn reverse_rows(&self) -> MatVar {
        MatVar::from_fn(self.alg, self.rows, self.cols, |i, j| self.get(self.rows - 1 - i, j))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).norm_sq() == 0.0))
    }
}

impl Index<(usize, usize)> for MatVar {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

/// A Hermitian matrix `S = S*`, symmetrized exactly on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix(MatVar);

impl HermMatrix {
    /// Accepts a square matrix that is Hermitian up to rounding.
    pub fn new(m: MatVar) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!("Hermitian matrix must be square, got {}x{}", m.rows, m.cols)));
        }
        let scale = 1.0 + m.max_norm();
        let mut dev: f64 = 0.0;
        for i in 0..m.rows {
            for j in i..m.cols {
                dev = dev.max((m.get(i, j) - m.get(j, i).conj()).abs());
            }
        }
        if dev > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::symmetrized(m))
    }

    fn symmetrized(mut m: MatVar) -> Self {
        let n = m.rows;
        for i in 0..n {
            let d = m.get(i, i).real_part();
            m.set(i, i, d);
            for j in i + 1..n {
                let avg = (m.get(i, j) + m.get(j, i).conj()).scale(0.5);
                m.set(i, j, avg);
                m.set(j, i, avg.conj());
            }
        }
        HermMatrix(m)
    }

    pub fn identity(alg: Algebra, m: usize) -> Self {
        HermMatrix(MatVar::identity(alg, m))
    }

    pub fn from_real_diag(alg: Algebra, diag: &[f64]) -> Self {
        let m = diag.len();
        HermMatrix(MatVar::from_fn(alg, m, m, |i, j| Scalar::real(alg, if i == j { diag[i] } else { 0.0 })))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn algebra(&self) -> Algebra {
        self.0.alg
    }

    pub fn as_matvar(&self) -> &MatVar {
        &self.0
    }

    pub fn into_matvar(self) -> MatVar {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.0.get(i, j)
    }

    pub fn add(&self, other: &HermMatrix) -> Result<HermMatrix> {
        Ok(HermMatrix(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &HermMatrix) -> Result<HermMatrix> {
        Ok(HermMatrix(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, s: f64) -> HermMatrix {
        HermMatrix(self.0.scale(s))
    }

    /// `JSJ`: the matrix with rows and columns in reverse order.
    pub fn reversed(&self) -> HermMatrix {
        HermMatrix(self.0.reverse_rows().reverse_cols())
    }

    /// Leading `p × p` block.
    pub fn leading(&self, p: usize) -> HermMatrix {
        HermMatrix(MatVar::from_fn(self.0.alg, p, p, |i, j| self.0.get(i, j)))
    }

    /// `B* S B`.
    pub fn congruence(&self, b: &MatVar) -> Result<HermMatrix> {
        let inner = self.0.matmul(b)?;
        Ok(HermMatrix::symmetrized(b.conj_transpose().matmul(&inner)?))
    }

    /// Real part of `tr(S A)` for another Hermitian `A`.
    pub fn trace_product(&self, other: &HermMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("trace of product".into()));
        }
        let m = self.dim();
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                acc += (self.get(i, j) * other.get(j, i)).re();
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re()).sum()
    }

    pub fn cholesky_upper(&self) -> Result<CholeskyFactor> {
        self.0.alg.require_associative()?;
        let m = self.dim();
        let alg = self.0.alg;
        let thresh = PD_EPS * self.max_diag();
        let mut t = MatVar::zeros(alg, m, m);
        for i in 0..m {
            let mut d = self.get(i, i).re();
            for k in 0..i {
                d -= t.get(k, i).norm_sq();
            }
            if !(d > thresh) {
                return Err(Error::NotPositiveDefinite { index: i, pivot: d });
            }
            let tii = d.sqrt();
            t.set(i, i, Scalar::real(alg, tii));
            for j in i + 1..m {
                let mut s = self.get(i, j);
                for k in 0..i {
                    s -= t.get(k, i).conj() * t.get(k, j);
                }
                t.set(i, j, s.scale(1.0 / tii));
            }
        }
        Ok(CholeskyFactor { t })
    }

    /// L*DL factorization computed by its own recursion (no square roots).
    pub fn ldl(&self) -> Result<LdlFactor> {
        self.0.alg.require_associative()?;
        let m = self.dim();
        let alg = self.0.alg;
        let thresh = PD_EPS * self.max_diag();
        let mut l = MatVar::identity(alg, m);
        let mut d = vec![0.0; m];
        for i in 0..m {
            let mut piv = self.get(i, i).re();
            for k in 0..i {
                piv -= d[k] * l.get(k, i).norm_sq();
            }
            if !(piv > thresh) {
                return Err(Error::NotPositiveDefinite { index: i, pivot: piv });
            }
            d[i] = piv;
            for j in i + 1..m {
                let mut s = self.get(i, j);
                for k in 0..i {
                    s -= (l.get(k, i).conj() * l.get(k, j)).scale(d[k]);
                }
                l.set(i, j, s.scale(1.0 / piv));
            }
        }
        Ok(LdlFactor { l, d })
    }

    /// Logarithms of the leading principal minors `|S_1|, …, |S_m|`.
    pub fn log_principal_minors(&self) -> Result<Vec<f64>> {
        let t = self.cholesky_upper()?;
        let mut acc = 0.0;
        Ok(t.diag()
            .iter()
            .map(|&tii| {
                acc += 2.0 * tii.ln();
                acc
            })
            .collect())
    }

    pub fn principal_minor_dets(&self) -> Result<Vec<f64>> {
        Ok(self.log_principal_minors()?.into_iter().map(f64::exp).collect())
    }

    pub fn log_det(&self) -> Result<f64> {
        Ok(self.cholesky_upper()?.log_det())
    }

    /// `S⁻¹ = T⁻¹T⁻*`.
    pub fn inverse(&self) -> Result<HermMatrix> {
        let tinv = self.cholesky_upper()?.inverse();
        Ok(HermMatrix::symmetrized(tinv.matmul(&tinv.conj_transpose())?))
    }

    /// True if the Cholesky recursion succeeds.
    pub fn is_positive_definite(&self) -> bool {
        self.cholesky_upper().is_ok()
    }

    fn max_diag(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re().abs()).fold(0.0, f64::max)
    }
}

/// Upper triangular `T` with positive real diagonal and `S = T*T`.
#[derive(Clone, Debug, PartialEq)]
pub struct CholeskyFactor {
    t: MatVar,
}

impl CholeskyFactor {
    /// Wraps an upper triangular matrix with positive real diagonal.
    pub fn from_upper(t: MatVar) -> Result<Self> {
        if !t.is_square() || !t.is_upper_triangular() {
            return Err(Error::DimensionMismatch("Cholesky factor must be square upper triangular".into()));
        }
        for i in 0..t.rows {
            let d = t.get(i, i);
            if !d.is_real() || !(d.re() > 0.0) {
                return Err(Error::Parameter(format!("diagonal entry {i} of a Cholesky factor must be real and positive")));
            }
        }
        Ok(CholeskyFactor { t })
    }

    pub fn factor(&self) -> &MatVar {
        &self.t
    }

    pub fn into_factor(self) -> MatVar {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.t.rows
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.t.get(i, i).re()).collect()
    }

    /// `T*T`.
    pub fn reconstruct(&self) -> Result<HermMatrix> {
        self.t.gram()
    }

    pub fn log_det(&self) -> f64 {
        self.diag().iter().map(|t| 2.0 * t.ln()).sum()
    }

    /// `T⁻¹`, upper triangular.
    pub fn inverse(&self) -> MatVar {
        let m = self.dim();
        solve_upper_right(&MatVar::identity(self.t.alg, m), &self.t).expect("square factor with nonzero diagonal")
    }
}

/// `S = L* diag(d) L` with `L` unit upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct LdlFactor {
    l: MatVar,
    d: Vec<f64>,
}

impl LdlFactor {
    pub fn unit_upper(&self) -> &MatVar {
        &self.l
    }

    pub fn pivots(&self) -> &[f64] {
        &self.d
    }

    pub fn reconstruct(&self) -> Result<HermMatrix> {
        let alg = self.l.algebra();
        let dl = MatVar::from_fn(alg, self.d.len(), self.d.len(), |i, j| self.l.get(i, j).scale(self.d[i]));
        Ok(HermMatrix::symmetrized(self.l.conj_transpose().matmul(&dl)?))
    }
}

/// Solves `R·U = X` for upper triangular `U` with invertible diagonal.
pub fn solve_upper_right(x: &MatVar, u: &MatVar) -> Result<MatVar> {
    if x.algebra() != u.algebra() {
        return Err(Error::AlgebraMismatch(x.algebra(), u.algebra()));
    }
    let m = u.rows();
    if !u.is_square() || x.cols() != m {
        return Err(Error::DimensionMismatch(format!("right solve of {}x{} against {}x{}", x.rows(), x.cols(), u.rows(), u.cols())));
    }
    let inv_diag = (0..m).map(|j| u.get(j, j).inv()).collect::<Result<Vec<_>>>()?;
    let mut r = MatVar::zeros(x.algebra(), x.rows(), m);
    for row in 0..x.rows() {
        for j in 0..m {
            let mut s = x.get(row, j);
            for k in 0..j {
                s -= r.get(row, k) * u.get(k, j);
            }
            r.set(row, j, s * inv_diag[j]);
        }
    }
    Ok(r)
}

/// Solves `U*·W = X` for upper triangular `U` (forward substitution).
pub fn solve_upper_conj_left(u: &MatVar, x: &MatVar) -> Result<MatVar> {
    if x.algebra() != u.algebra() {
        return Err(Error::AlgebraMismatch(x.algebra(), u.algebra()));
    }
    let n = u.rows();
    if !u.is_square() || x.rows() != n {
        return Err(Error::DimensionMismatch(format!("left solve of {}x{} against {}x{}", u.rows(), u.cols(), x.rows(), x.cols())));
    }
    let inv_diag = (0..n).map(|i| u.get(i, i).conj().inv()).collect::<Result<Vec<_>>>()?;
    let mut w = MatVar::zeros(x.algebra(), n, x.cols());
    for j in 0..x.cols() {
        for i in 0..n {
            let mut s = x.get(i, j);
            for k in 0..i {
                s -= u.get(k, i).conj() * w.get(k, j);
            }
            w.set(i, j, inv_diag[i] * s);
        }
    }
    Ok(w)
}

/// `R = X T⁻¹` by back-substitution, so that `R·T = X`.
pub fn tri_solve_right(x: &MatVar, t: &CholeskyFactor) -> Result<MatVar> {
    solve_upper_right(x, t.factor())
}

/// Triangular square root `F` of a positive definite `S`, with `S = F*F`.
///
/// The upper root is the Cholesky factor. The lower root is `J·chol(JSJ)·J`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularRoot {
    lower: bool,
    /// Upper triangular core; the root is `u` itself or `J u J`.
    u: MatVar,
}

impl TriangularRoot {
    pub fn upper(s: &HermMatrix) -> Result<Self> {
        Ok(TriangularRoot { lower: false, u: s.cholesky_upper()?.into_factor() })
    }

    pub fn lower(s: &HermMatrix) -> Result<Self> {
        Ok(TriangularRoot { lower: true, u: s.reversed().cholesky_upper()?.into_factor() })
    }

    pub fn is_lower(&self) -> bool {
        self.lower
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// The root `F` as a dense matrix.
    pub fn matrix(&self) -> MatVar {
        if self.lower {
            self.u.reverse_rows().reverse_cols()
        } else {
            self.u.clone()
        }
    }

    /// `X·F`.
    pub fn mul_right(&self, x: &MatVar) -> Result<MatVar> {
        if self.lower {
            Ok(x.reverse_cols().matmul(&self.u)?.reverse_cols())
        } else {
            x.matmul(&self.u)
        }
    }

    /// `X·F⁻¹`.
    pub fn solve_right(&self, x: &MatVar) -> Result<MatVar> {
        if self.lower {
            Ok(solve_upper_right(&x.reverse_cols(), &self.u)?.reverse_cols())
        } else {
            solve_upper_right(x, &self.u)
        }
    }

    /// `F* W F`.
    pub fn congruence(&self, w: &HermMatrix) -> Result<HermMatrix> {
        w.congruence(&self.matrix())
    }

    /// `log|S| = 2 Σ log f_ii`.
    pub fn log_det(&self) -> f64 {
        (0..self.dim()).map(|i| 2.0 * self.u.get(i, i).re().ln()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, cols: usize, v: &[f64]) -> MatVar {
        MatVar::from_real(Algebra::Real, rows, cols, v).unwrap()
    }

    fn herm_real(m: usize, v: &[f64]) -> HermMatrix {
        HermMatrix::new(real(m, m, v)).unwrap()
    }

    fn cx(re: f64, im: f64) -> Scalar {
        Scalar::from_components(Algebra::Complex, &[re, im]).unwrap()
    }

    #[test]
    fn transpose_of_real_matrix() {
        let a = real(2, 3, &[1., 2., 3., 4., 5., 6.]);
        assert_eq!(a.conj_transpose(), real(3, 2, &[1., 4., 2., 5., 3., 6.]));
    }

    #[test]
    fn conj_transpose_complex_scalar() {
        let a = MatVar::from_scalars(Algebra::Complex, 1, 1, vec![cx(0., 1.)]).unwrap();
        assert_eq!(a.conj_transpose().get(0, 0), cx(0., -1.));
    }

    #[test]
    fn gram_examples() {
        let i2 = MatVar::identity(Algebra::Real, 2);
        assert_eq!(i2.gram().unwrap(), HermMatrix::identity(Algebra::Real, 2));
        assert_eq!(real(2, 1, &[1., 1.]).gram().unwrap().get(0, 0).re(), 2.0);
        let x = MatVar::from_scalars(Algebra::Complex, 2, 1, vec![cx(0., 1.), cx(1., 0.)]).unwrap();
        let g = x.gram().unwrap();
        assert_eq!(g.get(0, 0), cx(2., 0.));
    }

    #[test]
    fn gram_rejects_octonions() {
        let x = MatVar::identity(Algebra::Octonion, 2);
        assert!(matches!(x.gram(), Err(Error::ConjecturalOctonion)));
    }

    #[test]
    fn cholesky_of_identity_and_hand_example() {
        let t = HermMatrix::identity(Algebra::Quaternion, 3).cholesky_upper().unwrap();
        assert_eq!(t.factor(), &MatVar::identity(Algebra::Quaternion, 3));
        let s = herm_real(2, &[4., 2., 2., 2.]);
        let t = s.cholesky_upper().unwrap();
        assert_eq!(t.factor(), &real(2, 2, &[2., 1., 0., 1.]));
        assert_eq!(t.reconstruct().unwrap(), s);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let s = herm_real(2, &[1., 2., 2., 1.]);
        assert!(matches!(s.cholesky_upper(), Err(Error::NotPositiveDefinite { index: 1, .. })));
        assert!(s.ldl().is_err());
        assert!(s.principal_minor_dets().is_err());
    }

    #[test]
    fn ldl_examples() {
        let f = HermMatrix::from_real_diag(Algebra::Real, &[2., 3.]).ldl().unwrap();
        assert_eq!(f.pivots(), &[2., 3.]);
        assert_eq!(f.unit_upper(), &MatVar::identity(Algebra::Real, 2));
        let f = herm_real(2, &[4., 2., 2., 2.]).ldl().unwrap();
        assert_eq!(f.pivots(), &[4., 1.]);
    }

    #[test]
    fn principal_minors_examples() {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        let i3 = HermMatrix::identity(Algebra::Real, 3);
        assert!(close(&i3.principal_minor_dets().unwrap(), &[1., 1., 1.]));
        let d = HermMatrix::from_real_diag(Algebra::Real, &[2., 3.]);
        assert!(close(&d.principal_minor_dets().unwrap(), &[2., 6.]));
        let s = herm_real(2, &[4., 2., 2., 2.]);
        assert!(close(&s.principal_minor_dets().unwrap(), &[4., 4.]));
    }

    #[test]
    fn tri_solve_examples() {
        let x = real(1, 2, &[2., 3.]);
        let id = CholeskyFactor::from_upper(MatVar::identity(Algebra::Real, 2)).unwrap();
        assert_eq!(tri_solve_right(&x, &id).unwrap(), x);
        let t = CholeskyFactor::from_upper(real(2, 2, &[2., 1., 0., 1.])).unwrap();
        assert_eq!(tri_solve_right(&x, &t).unwrap(), real(1, 2, &[1., 2.]));
        let bad = real(1, 3, &[1., 2., 3.]);
        assert!(matches!(tri_solve_right(&bad, &t), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn hermitian_check() {
        let not_h = real(2, 2, &[1., 2., 3., 1.]);
        assert!(matches!(HermMatrix::new(not_h), Err(Error::NotHermitian(_))));
        let rect = real(2, 3, &[0.; 6]);
        assert!(HermMatrix::new(rect).is_err());
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = HermMatrix::from_real_diag(Algebra::Complex, &[2., 4.]);
        let inv = d.inverse().unwrap();
        assert!((inv.get(0, 0).re() - 0.5).abs() < 1e-15);
        assert!((inv.get(1, 1).re() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn triangular_roots_reproduce_matrix() {
        let s = herm_real(3, &[4., 2., 1., 2., 5., 3., 1., 3., 6.]);
        for root in [TriangularRoot::upper(&s).unwrap(), TriangularRoot::lower(&s).unwrap()] {
            let f = root.matrix();
            let back = f.conj_transpose().matmul(&f).unwrap();
            assert!(back.sub(s.as_matvar()).unwrap().max_norm() < 1e-12);
            let x = real(2, 3, &[1., -2., 0.5, 3., 0.25, -1.]);
            let y = root.solve_right(&root.mul_right(&x).unwrap()).unwrap();
            assert!(y.sub(&x).unwrap().max_norm() < 1e-12);
            assert!((root.log_det() - s.log_det().unwrap()).abs() < 1e-12);
        }
        let lower = TriangularRoot::lower(&s).unwrap().matrix();
        assert!(lower.conj_transpose().is_upper_triangular());
    }
}
