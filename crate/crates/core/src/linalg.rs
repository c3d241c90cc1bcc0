//! Dense complex linear algebra for the small matrices that appear here
//! (local dimension ≤ 6, bipartite dimension ≤ 36).
//!
//! Eigenvalues of Hermitian matrices come from a cyclic complex Jacobi
//! iteration; singular values are the square roots of the eigenvalues of the
//! smaller Gram matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{tol, Error, Result};

pub type C64 = Complex<f64>;

/// Default cap on either output dimension of [`kron`].
pub const DEFAULT_KRON_CAP: usize = 4096;

static KRON_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_KRON_CAP);

/// Overrides the dimension cap enforced by [`kron`] for the whole process.
pub fn set_kron_cap(cap: usize) {
    KRON_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn kron_cap() -> usize {
    KRON_CAP.load(Ordering::Relaxed)
}

const MAX_SWEEPS: usize = 64;

/// Row-major dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape { expected: rows * cols, found: data.len() });
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    /// Builds a matrix whose rows are the given slices.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Column vector `|v⟩`.
    pub fn column(v: &[C64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[C64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M|v⟩`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        Ok(acc)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.data.iter().fold(0.0, |m, z| m.max(z.norm())))
    }

    /// Largest entrywise modulus of `M - M†`; infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        &self.data[row * self.cols + col]
    }
}

/// `⟨u|v⟩`.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product of vectors, `|u⟩ ⊗ |v⟩`, subject to [`kron_cap`].
pub fn kron_vec(u: &[C64], v: &[C64]) -> Result<Vec<C64>> {
    let cap = kron_cap();
    let len = u.len().checked_mul(v.len()).ok_or(Error::SizeCap { requested: usize::MAX, cap })?;
    if len > cap {
        return Err(Error::SizeCap { requested: len, cap });
    }
    Ok(u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect())
}

/// Kronecker product with block structure `a_ij · b`.
///
/// Fails with [`Error::SizeCap`] when either output dimension exceeds
/// [`kron_cap`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, kron_cap())
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows).ok_or(Error::SizeCap { requested: usize::MAX, cap })?;
    let cols = a.cols.checked_mul(b.cols).ok_or(Error::SizeCap { requested: usize::MAX, cap })?;
    if rows > cap || cols > cap {
        return Err(Error::SizeCap { requested: rows.max(cols), cap });
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)
    }))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Only the Hermitian part `(M + M†)/2` is read, so tiny asymmetries from
/// rounding do not matter.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);
    let scale = a.frobenius_norm();
    if n <= 1 || scale == 0.0 {
        return Ok((0..n).map(|i| a.get(i, i).re).collect());
    }
    let threshold = (f64::EPSILON * scale).powi(2);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows;
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    // Rephase row/column q so that a[p][q] becomes the real number r.
    let phase = apq / r;
    for k in 0..n {
        a.data[q * n + k] *= phase;
        a.data[k * n + q] *= phase.conj();
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let kp = a.data[k * n + p];
        let kq = a.data[k * n + q];
        a.data[k * n + p] = kp * c - kq * s;
        a.data[k * n + q] = kp * s + kq * c;
    }
    for k in 0..n {
        let pk = a.data[p * n + k];
        let qk = a.data[q * n + k];
        a.data[p * n + k] = pk * c - qk * s;
        a.data[q * n + k] = pk * s + qk * c;
    }
    a.data[p * n + q] = C64::new(0.0, 0.0);
    a.data[q * n + p] = C64::new(0.0, 0.0);
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows == 0 || m.cols == 0 {
        return Ok(Vec::new());
    }
    let gram = if m.rows <= m.cols { m.matmul(&m.adjoint())? } else { m.adjoint().matmul(m)? };
    let mut sv: Vec<f64> = hermitian_eigenvalues(&gram)?.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    sv.reverse();
    Ok(sv)
}

/// Schatten ∞-norm: the largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Which factor of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    A,
    B,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

/// Acceptance thresholds for [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { hermitian: tol::HERMITIAN, trace: tol::TRACE, psd: tol::PSD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NotSquare,
    NotHermitian,
    Trace,
    NegativeEigenvalue,
    SubsystemDims,
}

/// Which density-matrix invariant failed, and by how much.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityViolation {
    pub kind: ViolationKind,
    /// Deviation for Hermiticity, the offending trace, or the offending eigenvalue.
    pub magnitude: f64,
}

impl fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::NotSquare => write!(f, "matrix is not square"),
            ViolationKind::NotHermitian => write!(f, "not Hermitian (max |M - M†| = {:e})", self.magnitude),
            ViolationKind::Trace => write!(f, "trace is {} instead of 1", self.magnitude),
            ViolationKind::NegativeEigenvalue => {
                write!(f, "not positive semidefinite (min eigenvalue {:e})", self.magnitude)
            }
            ViolationKind::SubsystemDims => {
                write!(f, "subsystem dimensions do not multiply to {}", self.magnitude)
            }
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix, optionally carrying a
/// bipartite split `(d_A, d_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    subsystem_dims: Option<(usize, usize)>,
}

/// Checks every density-matrix invariant and returns the first violation.
pub fn validate_density(
    m: ComplexMatrix,
    tolerances: Tolerances,
    subsystem_dims: Option<(usize, usize)>,
) -> Result<DensityMatrix> {
    let fail = |kind, magnitude| Err(Error::Density(DensityViolation { kind, magnitude }));
    if !m.is_square() {
        return fail(ViolationKind::NotSquare, m.rows as f64);
    }
    if let Some((da, db)) = subsystem_dims {
        if da * db != m.rows {
            return fail(ViolationKind::SubsystemDims, m.rows as f64);
        }
    }
    let herm = m.hermiticity_deviation();
    if herm > tolerances.hermitian {
        return fail(ViolationKind::NotHermitian, herm);
    }
    let tr = m.trace().re;
    if (tr - 1.0).abs() > tolerances.trace {
        return fail(ViolationKind::Trace, tr);
    }
    let min_eig = hermitian_eigenvalues(&m)?.first().copied().unwrap_or(0.0);
    if min_eig < -tolerances.psd {
        return fail(ViolationKind::NegativeEigenvalue, min_eig);
    }
    Ok(DensityMatrix { matrix: m, subsystem_dims })
}

impl DensityMatrix {
    /// Validates with the default tolerances.
    pub fn new(m: ComplexMatrix, subsystem_dims: Option<(usize, usize)>) -> Result<Self> {
        validate_density(m, Tolerances::default(), subsystem_dims)
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix, subsystem_dims: Option<(usize, usize)>) -> Self {
        Self { matrix, subsystem_dims }
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn pure(psi: &[C64], subsystem_dims: Option<(usize, usize)>) -> Result<Self> {
        let norm = vector_norm(psi);
        if (norm - 1.0).abs() > tol::TRACE {
            return Err(Error::Density(DensityViolation { kind: ViolationKind::Trace, magnitude: norm * norm }));
        }
        Self::new(ComplexMatrix::projector(psi), subsystem_dims)
    }

    pub fn maximally_mixed(dim: usize, subsystem_dims: Option<(usize, usize)>) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64), subsystem_dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn subsystem_dims(&self) -> Option<(usize, usize)> {
        self.subsystem_dims
    }

    pub fn with_subsystem_dims(self, dims: (usize, usize)) -> Result<Self> {
        if dims.0 * dims.1 != self.dim() {
            return Err(Error::Density(DensityViolation {
                kind: ViolationKind::SubsystemDims,
                magnitude: self.dim() as f64,
            }));
        }
        Ok(Self { subsystem_dims: Some(dims), ..self })
    }

    /// `Tr(op · ρ)`, real part.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        Ok(op.trace_product(&self.matrix)?.re)
    }

    /// `⟨v|ρ|v⟩`.
    pub fn expectation_vector(&self, v: &[C64]) -> Result<f64> {
        let rv = self.matrix.apply(v)?;
        Ok(inner(v, &rv).re)
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).map_or(0.0, |z| z.re)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// Transpose on subsystem B.
    pub fn partial_transpose(&self) -> Result<ComplexMatrix> {
        let (da, db) = self.require_dims()?;
        Ok(ComplexMatrix::from_fn(da * db, da * db, |r, c| {
            let (i, k) = (r / db, r % db);
            let (j, l) = (c / db, c % db);
            self.matrix.get(i * db + l, j * db + k)
        }))
    }

    fn require_dims(&self) -> Result<(usize, usize)> {
        self.subsystem_dims
            .ok_or_else(|| Error::Usage("density matrix has no declared subsystem dimensions".into()))
    }

    /// Convex combination `Σ w_i ρ_i` of states of equal dimension.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
        let first = parts.first().ok_or_else(|| Error::Usage("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(first.1.dim(), first.1.dim());
        for (w, rho) in parts {
            acc = acc.add(&rho.matrix.scale_real(*w))?;
        }
        DensityMatrix::new(acc, first.1.subsystem_dims)
    }
}

/// Reduced state on `keep`, tracing out the other factor.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let (da, db) = rho.require_dims()?;
    let m = &rho.matrix;
    let reduced = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m.get(i * db + k, j * db + k)).sum()),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |k, l| (0..da).map(|i| m.get(i * db + k, i * db + l)).sum()),
    };
    Ok(DensityMatrix::from_trusted(reduced, None))
}

/// `ρ_A ⊗ ρ_B` with the split recorded.
pub fn product_state(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let m = kron(&a.matrix, &b.matrix)?;
    Ok(DensityMatrix::from_trusted(m, Some((a.dim(), b.dim()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_diagonals() {
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let k = kron(&z, &z).unwrap();
        assert_eq!(k, ComplexMatrix::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_of_column_vectors() {
        let z0 = ComplexMatrix::column(&[c(1.0), c(0.0)]);
        let plus = ComplexMatrix::column(&[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]);
        let k = kron(&z0, &plus).unwrap();
        let expected = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0];
        assert_eq!((k.rows(), k.cols()), (4, 1));
        for (z, e) in k.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(z.re, e, epsilon = 1e-15);
            assert_abs_diff_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn kron_respects_cap() {
        let a = ComplexMatrix::identity(8);
        assert!(matches!(kron_with_cap(&a, &a, 32), Err(Error::SizeCap { requested: 64, cap: 32 })));
        assert!(kron_with_cap(&a, &a, 64).is_ok());
    }

    #[test]
    fn new_rejects_non_finite() {
        let err = ComplexMatrix::new(1, 2, vec![c(0.0), C64::new(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
    }

    #[test]
    fn spectral_norm_examples() {
        assert_abs_diff_eq!(spectral_norm(&ComplexMatrix::identity(3)).unwrap(), 1.0, epsilon = 1e-14);
        let u = [c(1.0), C64::new(0.0, 2.0)];
        let v = [c(3.0), c(0.0), c(4.0)];
        let expected = vector_norm(&u) * vector_norm(&v);
        assert_abs_diff_eq!(spectral_norm(&ComplexMatrix::outer(&u, &v)).unwrap(), expected, epsilon = 1e-12);
        for theta in [PI / 6.0, PI / 4.0] {
            let (s, co) = theta.sin_cos();
            let m = ComplexMatrix::from_rows(&[vec![c(co), c(s)], vec![c(s), c(-co)]]).unwrap();
            assert_abs_diff_eq!(spectral_norm(&m).unwrap(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn eigenvalues_of_complex_hermitian() {
        // σ_y has eigenvalues ±1.
        let sy = ComplexMatrix::from_rows(&[
            vec![c(0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), c(0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigenvalues(&sy).unwrap();
        assert_abs_diff_eq!(eig[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn validate_density_examples() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2).scale_real(0.5), None).is_ok());
        let bad = ComplexMatrix::from_real_diagonal(&[0.6, 0.5]);
        match DensityMatrix::new(bad, None) {
            Err(Error::Density(v)) => {
                assert_eq!(v.kind, ViolationKind::Trace);
                assert_abs_diff_eq!(v.magnitude, 1.1, epsilon = 1e-12);
            }
            other => panic!("expected trace violation, got {other:?}"),
        }
        let non_herm = ComplexMatrix::from_rows(&[vec![c(0.5), c(0.1)], vec![c(0.0), c(0.5)]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(non_herm, None),
            Err(Error::Density(DensityViolation { kind: ViolationKind::NotHermitian, .. }))
        ));
        let negative = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(negative, None),
            Err(Error::Density(DensityViolation { kind: ViolationKind::NegativeEigenvalue, .. }))
        ));
    }

    #[test]
    fn partial_trace_needs_dims() {
        let rho = DensityMatrix::maximally_mixed(4, None);
        assert!(matches!(partial_trace(&rho, Subsystem::A), Err(Error::Usage(_))));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.7, 0.3]), None).unwrap();
        let b = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.2, 0.5, 0.3]), None).unwrap();
        let ab = product_state(&a, &b).unwrap();
        let ra = partial_trace(&ab, Subsystem::A).unwrap();
        let rb = partial_trace(&ab, Subsystem::B).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()).unwrap() < 1e-15);
        assert!(rb.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-15);
    }
}
