//! Dense complex matrices and vectors.
//!
//! Storage is row-major. Tensor products put the first factor on the slow
//! (outer) index, so `tensor(a, b)` maps `|i⟩⊗|k⟩` to index `i * b.rows() + k`.
//! Every basis ordering elsewhere in the crate relies on this convention.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::{Error, Result};

pub type C64 = Complex<f64>;

/// Relative tolerance used to accept a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute tolerance on `|‖v‖ − 1|` for a normalized vector.
pub const NORM_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Shape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a square matrix from nested rows. Panics on ragged input; meant
    /// for literal constants.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        CMatrix { rows: N, cols: N, data }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| re(x)).collect();
        Self::from_diagonal(&d)
    }

    /// `|row⟩⟨col|` in dimension `n`.
    pub fn outer_basis(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(row, col)] = ONE;
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn try_add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape("add", other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape("sub", other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        let data = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.as_slice())
                    .map(|(&a, &x)| a * x)
                    .sum()
            })
            .collect();
        Ok(CVector { data })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Entrywise `max |self − other|`. Shapes must agree.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        self.check_same_shape("max_abs_diff", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `true` when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == ZERO)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermiticity_defect() <= HERMITIAN_TOL * self.max_abs()
    }

    /// Restriction to the listed basis states: `out[(a, b)] = self[(idx[a], idx[b])]`.
    pub fn project(&self, indices: &[usize]) -> CMatrix {
        let n = indices.len();
        let mut out = Self::zeros(n, n);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(C64, C64) -> C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_same_shape(&self, op: &'static str, other: &CMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator sugar for matrices whose shapes are known to agree by
// construction. Mismatched shapes panic; use the `try_*` methods otherwise.
impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("matrix product")
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: f64) -> CMatrix {
        self.scale_real(rhs)
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: C64) -> CMatrix {
        self.scale(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    data: Vec<C64>,
}

impl CVector {
    pub fn new(data: Vec<C64>) -> Self {
        CVector { data }
    }

    pub fn zeros(dim: usize) -> Self {
        CVector { data: vec![ZERO; dim] }
    }

    /// Unit vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[k] = ONE;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm: self.norm() })
        }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &CVector) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `⟨self|A|self⟩`.
    pub fn expectation(&self, a: &CMatrix) -> Result<C64> {
        Ok(self.inner(&a.apply(self)?))
    }
}

impl Index<usize> for CVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_square_pair("commutator", a, b)?;
    Ok(&(a * b) - &(b * a))
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_square_pair("anticommutator", a, b)?;
    Ok(&(a * b) + &(b * a))
}

fn check_square_pair(op: &'static str, a: &CMatrix, b: &CMatrix) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Kronecker product with `a` on the outer index.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Pauli matrices in the basis `{|+⟩, |−⟩}` with `σ₃|±⟩ = ±|±⟩`.
pub mod pauli {
    use super::{CMatrix, I, ONE, ZERO};

    pub fn identity() -> CMatrix {
        CMatrix::identity(2)
    }

    pub fn sigma_x() -> CMatrix {
        CMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> CMatrix {
        CMatrix::from_rows([[ZERO, -I], [I, ZERO]])
    }

    pub fn sigma_z() -> CMatrix {
        CMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `|+⟩⟨−|`, the spin raising operator.
    pub fn raising() -> CMatrix {
        CMatrix::outer_basis(2, 0, 1)
    }

    /// `|−⟩⟨+|`.
    pub fn lowering() -> CMatrix {
        CMatrix::outer_basis(2, 1, 0)
    }

    pub fn sigma(k: usize) -> CMatrix {
        match k {
            1 => sigma_x(),
            2 => sigma_y(),
            3 => sigma_z(),
            _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
        }
    }
}

/// Spectral decomposition `H = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(h: &CMatrix) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch {
                op: "eigh",
                left: h.shape(),
                right: h.shape(),
            });
        }
        if !h.is_hermitian() {
            return Err(Error::NotHermitian {
                defect: h.hermiticity_defect(),
            });
        }
        let n = h.rows();
        let eig = SymmetricEigen::try_new(h.to_nalgebra(), f64::EPSILON, 0).ok_or(Error::Eigen)?;
        let mut vectors = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                vectors[(i, j)] = eig.eigenvectors[(i, j)];
            }
        }
        Ok(HermitianEigen {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors,
        })
    }

    /// Eigenvalues in the order of the eigenvector columns (unsorted).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    /// `exp(−i H t)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let n = self.values.len();
        let phases: Vec<C64> = self.values.iter().map(|&l| C64::cis(-l * t)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &p) in phases.iter().enumerate() {
                    acc += self.vectors[(i, k)] * p * self.vectors[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `exp(−i H t) ψ` without forming the propagator.
    pub fn evolve(&self, psi: &CVector, t: f64) -> Result<CVector> {
        let coeffs = self.vectors.adjoint().apply(psi)?;
        Ok(self.evolve_coefficients(coeffs.as_slice(), t))
    }

    /// Evolves a state already expanded in the eigenbasis. Used by callers
    /// that sample many times from one initial state.
    pub fn evolve_coefficients(&self, coeffs: &[C64], t: f64) -> CVector {
        let n = self.values.len();
        let rotated: Vec<C64> = coeffs
            .iter()
            .zip(&self.values)
            .map(|(&a, &l)| a * C64::cis(-l * t))
            .collect();
        let data = (0..n)
            .map(|i| (0..n).map(|k| self.vectors[(i, k)] * rotated[k]).sum())
            .collect();
        CVector::new(data)
    }

    /// `V† ψ`.
    pub fn coefficients(&self, psi: &CVector) -> Result<Vec<C64>> {
        Ok(self.vectors.adjoint().apply(psi)?.into_vec())
    }
}

/// `exp(−i h t)` for Hermitian `h`, through its eigendecomposition.
pub fn hermitian_expm(h: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(HermitianEigen::new(h)?.propagator(t))
}

/// `max |U†U − I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.rows();
    (&(&u.adjoint() * u) - &CMatrix::identity(n)).max_abs()
}
