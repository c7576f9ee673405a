//! Dense complex linear algebra for the 2×2 and 4×4 Hermitian matrices that
//! appear in a two-spin problem.
//!
//! Everything here is a small `Copy` value type; no heap allocation happens on
//! the hot paths (products, commutators, traces). Eigendecompositions use the
//! closed-form quadratic for 2×2 and cyclic complex Jacobi rotations for 4×4.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const MAX_DIM: usize = 4;

/// Square complex matrix of dimension 2 or 4, stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMat {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector belonging to `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

/// Eigenvalues in `[-PSD_CLAMP, 0)` are rounded up to zero before square roots.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below `-PSD_REJECT` mean the input is not positive semidefinite.
pub const PSD_REJECT: f64 = 1e-8;
/// Input asymmetry tolerated by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "CMat dimension must be 2 or 4");
        CMat {
            dim,
            data: [C64::new(0.0, 0.0); MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        let mut m = Self::zeros(dim);
        m.data[..dim * dim].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(dim, &c)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        check_dim(values.len())?;
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        Ok(m)
    }

    /// `|v⟩⟨v|` for a 2- or 4-component vector.
    pub fn outer(v: &[C64]) -> Result<Self> {
        check_dim(v.len())?;
        Ok(Self::from_fn(v.len(), |i, j| v[i] * v[j].conj()))
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_y() -> Self {
        let i = C64::i();
        Self::from_rows(2, &[C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * self.dim + j] = v;
    }

    /// Row-major entries, length `dim²`.
    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Elementwise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        for z in m.data.iter_mut() {
            *z = z.conj();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for z in m.data.iter_mut() {
            *z *= s;
        }
        m
    }

    /// Frobenius (Hilbert-Schmidt) norm.
    pub fn norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise distance `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |a - a†|`, zero for exactly Hermitian input.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(a + a†) / 2`
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i).conj())
        })
    }

    /// `a · v` for a column vector of matching length.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    fn mul_unchecked(&self, rhs: &CMat) -> CMat {
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for CMat {
    type Output = CMat;
    fn add(mut self, rhs: CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in CMat addition");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        self
    }
}

impl AddAssign for CMat {
    fn add_assign(&mut self, rhs: CMat) {
        *self = *self + rhs;
    }
}

impl Sub for CMat {
    type Output = CMat;
    fn sub(mut self, rhs: CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in CMat subtraction");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Matrix product; panics on a dimension mismatch (use [`matmul`] to get an error instead).
impl Mul for CMat {
    type Output = CMat;
    fn mul(self, rhs: CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in CMat product");
        self.mul_unchecked(&rhs)
    }
}

impl Mul<f64> for CMat {
    type Output = CMat;
    fn mul(self, s: f64) -> CMat {
        self.scale(C64::new(s, 0.0))
    }
}

impl Mul<C64> for CMat {
    type Output = CMat;
    fn mul(self, s: C64) -> CMat {
        self.scale(s)
    }
}

pub fn adjoint(a: &CMat) -> CMat {
    a.adjoint()
}

pub fn matmul(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.mul_unchecked(b))
}

/// `ab − ba`
pub fn commutator(a: &CMat, b: &CMat) -> Result<CMat> {
    Ok(matmul(a, b)? - matmul(b, a)?)
}

/// Kronecker product of two 2×2 matrices. Index `2i + j` carries qubit 1 in
/// state `i` and qubit 2 in state `j`, so with `0 = ↑` the basis order is
/// `{↑↑, ↑↓, ↓↑, ↓↓}`.
pub fn kron(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::UnsupportedDimension(if a.dim != 2 {
            a.dim
        } else {
            b.dim
        }));
    }
    Ok(CMat::from_fn(4, |r, c| {
        a.get(r / 2, c / 2) * b.get(r % 2, c % 2)
    }))
}

/// Hilbert-Schmidt inner product `Tr(a† b)`.
pub fn hs_inner(a: &CMat, b: &CMat) -> Result<C64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// `⟨u|v⟩`
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl HermitianEig {
    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> CMat {
        let n = self.values.len();
        CMat::from_fn(n, |i, j| self.vectors[j][i])
    }

    /// `V f(Λ) V†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut out = CMat::zeros(n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            let v = &self.vectors[k];
            for i in 0..n {
                for j in 0..n {
                    out.data[i * n + j] += w * v[i] * v[j].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMat {
        self.reconstruct_with(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Eigenvectors inside a degenerate block are an arbitrary orthonormal basis
/// of that block.
pub fn eig_hermitian(a: &CMat) -> Result<HermitianEig> {
    let asym = a.hermiticity_error();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let a = a.hermitize();
    let (values, vectors) = match a.dim {
        2 => eig2(&a),
        _ => jacobi(&a),
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    Ok(HermitianEig {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: order.iter().map(|&k| vectors[k].clone()).collect(),
    })
}

fn eig2(a: &CMat) -> (Vec<f64>, Vec<Vec<C64>>) {
    let p = a.get(0, 0).re;
    let q = a.get(1, 1).re;
    let b = a.get(0, 1);
    let mean = 0.5 * (p + q);
    let half_gap = (0.25 * (p - q) * (p - q) + b.norm_sqr()).sqrt();
    let (lo, hi) = (mean - half_gap, mean + half_gap);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if b.norm() <= 1e-300 {
        // already diagonal
        return if p <= q {
            (vec![p, q], vec![vec![one, zero], vec![zero, one]])
        } else {
            (vec![q, p], vec![vec![zero, one], vec![one, zero]])
        };
    }
    // For eigenvalue λ pick whichever of the two row-derived vectors is better
    // conditioned: (b, λ - p) from row 0 or (λ - q, b*) from row 1.
    let vec_for = |lam: f64| -> Vec<C64> {
        let r0 = [b, C64::new(lam - p, 0.0)];
        let r1 = [C64::new(lam - q, 0.0), b.conj()];
        let v = if vec_norm(&r0) >= vec_norm(&r1) {
            r0
        } else {
            r1
        };
        let n = vec_norm(&v);
        vec![v[0] / n, v[1] / n]
    };
    (vec![lo, hi], vec![vec_for(lo), vec_for(hi)])
}

/// Cyclic Jacobi with complex rotations; returns unsorted eigenpairs.
fn jacobi(a: &CMat) -> (Vec<f64>, Vec<Vec<C64>>) {
    let n = a.dim;
    let mut m = *a;
    let mut v = CMat::identity(n);
    let scale = m.norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on coordinates (p, q)
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                // m <- m G
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, mkp * g_pp + mkq * g_qp);
                    m.set(k, q, mkp * g_pq + mkq * g_qq);
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * g_pp + vkq * g_qp);
                    v.set(k, q, vkp * g_pq + vkq * g_qq);
                }
                // m <- G† m
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, g_pp.conj() * mpk + g_qp.conj() * mqk);
                    m.set(q, k, g_pq.conj() * mpk + g_qq.conj() * mqk);
                }
                m.set(p, q, C64::new(0.0, 0.0));
                m.set(q, p, C64::new(0.0, 0.0));
                let d = m.get(p, p).re;
                m.set(p, p, C64::new(d, 0.0));
                let d = m.get(q, q).re;
                m.set(q, q, C64::new(d, 0.0));
            }
        }
    }

    let values = (0..n).map(|i| m.get(i, i).re).collect();
    let vectors = (0..n)
        .map(|j| (0..n).map(|i| v.get(i, j)).collect())
        .collect();
    (values, vectors)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn sqrt_psd(a: &CMat) -> Result<CMat> {
    let eig = eig_hermitian(a)?;
    let min = eig.values[0];
    if min < -PSD_REJECT {
        return Err(Error::NotPsd(min));
    }
    Ok(eig.reconstruct_with(|x| if x < 0.0 { 0.0 } else { x.sqrt() }))
}

/// Singular values, descending, by one-sided (Hestenes) Jacobi rotations on
/// the columns. Small singular values keep an absolute accuracy of about
/// `ε‖a‖`, which going through the eigenvalues of `a a†` would square.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    let n = a.dim();
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let (lo, hi) = cols.split_at_mut(q);
                for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let x = *xp;
                    let y = *xq * phase.conj();
                    *xp = x * cs - y * sn;
                    *xq = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_cases() {
        assert_eq!(singular_values(&CMat::identity(4)), vec![1.0; 4]);
        let d = CMat::diag(&[-3.0, 0.5, 2.0, 0.0]).unwrap();
        assert_eq!(singular_values(&d), vec![3.0, 2.0, 0.5, 0.0]);
        // rank one: u v† with |u| = 2, |v| = 3
        let u = [c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)];
        let v = [c(0.0, 2.0), c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let m = CMat::from_fn(4, |i, j| u[i] * v[j].conj());
        let s = singular_values(&m);
        assert!((s[0] - 6.0).abs() < 1e-14);
        assert!(s[1..].iter().all(|&x| x < 1e-15));
        // squares match the spectrum of m m†
        let a = CMat::from_fn(4, |i, j| {
            c((i * 3 + j) as f64 % 5.0 - 2.0, (i as f64 - j as f64) * 0.3)
        });
        let e = eig_hermitian(&(a * a.adjoint()).hermitize()).unwrap();
        let s = singular_values(&a);
        for (x, l) in s.iter().zip(e.values.iter().rev()) {
            assert!((x * x - l).abs() < 1e-12);
        }
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn adjoint_cases() {
        assert_eq!(CMat::identity(4).adjoint(), CMat::identity(4));
        assert_eq!(CMat::pauli_y().adjoint(), CMat::pauli_y());
        let a = CMat::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let expect = CMat::from_real_rows(2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(adjoint(&a), expect);
    }

    #[test]
    fn pauli_products() {
        let (x, y, z) = (CMat::pauli_x(), CMat::pauli_y(), CMat::pauli_z());
        assert_eq!(matmul(&x, &x).unwrap(), CMat::identity(2));
        assert_eq!(matmul(&x, &y).unwrap(), z * C64::i());
        let a =
            CMat::from_rows(2, &[c(1.0, 2.0), c(-0.5, 0.0), c(3.0, -1.0), c(0.25, 0.5)]).unwrap();
        assert_eq!(matmul(&a, &CMat::identity(2)).unwrap(), a);
    }

    #[test]
    fn pauli_algebra_table() {
        let p = [CMat::pauli_x(), CMat::pauli_y(), CMat::pauli_z()];
        let eps = |a: usize, b: usize, c: usize| -> f64 {
            match (a, b, c) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for a in 0..3 {
            for b in 0..3 {
                let mut expect = if a == b {
                    CMat::identity(2)
                } else {
                    CMat::zeros(2)
                };
                for (cc, pc) in p.iter().enumerate() {
                    expect += *pc * C64::new(0.0, eps(a, b, cc));
                }
                assert_eq!(p[a] * p[b], expect, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn dimension_mismatch_errors() {
        let a = CMat::identity(2);
        let b = CMat::identity(4);
        assert!(matches!(
            matmul(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(commutator(&a, &b).is_err());
        assert!(hs_inner(&a, &b).is_err());
        assert!(kron(&b, &a).is_err());
        assert!(CMat::from_rows(3, &[c(0.0, 0.0); 9]).is_err());
    }

    #[test]
    fn commutator_cases() {
        let (x, y, z) = (CMat::pauli_x(), CMat::pauli_y(), CMat::pauli_z());
        assert_eq!(commutator(&x, &y).unwrap(), z * c(0.0, 2.0));
        assert_eq!(commutator(&z, &z).unwrap(), CMat::zeros(2));
    }

    #[test]
    fn kron_cases() {
        let (y, z) = (CMat::pauli_y(), CMat::pauli_z());
        assert_eq!(
            kron(&CMat::identity(2), &CMat::identity(2)).unwrap(),
            CMat::identity(4)
        );
        assert_eq!(
            kron(&z, &z).unwrap(),
            CMat::diag(&[1.0, -1.0, -1.0, 1.0]).unwrap()
        );
        // σ^y ⊗ σ^y entry (r, c) = y[r/2][c/2] · y[r%2][c%2], expanded by hand:
        // only the anti-diagonal survives, with (-i)(-i) = -1 at the corners and
        // (-i)(i) = 1 in the middle.
        let mut expect = CMat::zeros(4);
        expect.set(0, 3, c(-1.0, 0.0));
        expect.set(1, 2, c(1.0, 0.0));
        expect.set(2, 1, c(1.0, 0.0));
        expect.set(3, 0, c(-1.0, 0.0));
        assert_eq!(kron(&y, &y).unwrap(), expect);
    }

    #[test]
    fn hs_inner_cases() {
        assert_eq!(
            hs_inner(&CMat::identity(4), &CMat::identity(4)).unwrap(),
            c(4.0, 0.0)
        );
        assert_eq!(
            hs_inner(&CMat::pauli_x(), &CMat::pauli_y()).unwrap(),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn eig_diagonal_and_pauli() {
        let e = eig_hermitian(&CMat::diag(&[1.0, 2.0, 3.0, 4.0]).unwrap()).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0, 4.0]);
        for (k, v) in e.vectors.iter().enumerate() {
            for (i, z) in v.iter().enumerate() {
                let expect = if i == k { 1.0 } else { 0.0 };
                assert!((z.norm() - expect).abs() < 1e-15);
            }
        }
        let e = eig_hermitian(&CMat::pauli_x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        // reversed diagonal 2x2 exercises the sort
        let e = eig_hermitian(&CMat::diag(&[3.0, -1.0]).unwrap()).unwrap();
        assert_eq!(e.values, vec![-1.0, 3.0]);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = CMat::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eig_central_block_values() {
        // 2x2 block of the evolved state at alpha=0.1, J=0.3, eta=1; its
        // eigenvalues are (1 ± e^{-0.12}) / 2.
        let e = (-0.12f64).exp();
        let (c2, s2) = (2.0f64.cos(), 2.0f64.sin());
        let blk = CMat::from_rows(
            2,
            &[
                c(0.5 * (1.0 - e * c2), 0.0),
                c(0.0, -0.5 * e * s2),
                c(0.0, 0.5 * e * s2),
                c(0.5 * (1.0 + e * c2), 0.0),
            ],
        )
        .unwrap();
        let expect = [0.5 * (1.0 - e), 0.5 * (1.0 + e)];
        let e2 = eig_hermitian(&blk).unwrap();
        // same block embedded in 4x4 goes through Jacobi
        let mut big = CMat::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                big.set(i + 1, j + 1, blk.get(i, j));
            }
        }
        let e4 = eig_hermitian(&big).unwrap();
        for (k, x) in expect.iter().enumerate() {
            assert!((e2.values[k] - x).abs() < 1e-14);
            assert!((e4.values[k + 2] - x).abs() < 1e-14);
        }
        assert!((expect[0] - 0.056540).abs() < 5e-7 && (expect[1] - 0.943460).abs() < 5e-7);
    }

    #[test]
    fn sqrt_psd_cases() {
        assert!(
            sqrt_psd(&CMat::identity(4))
                .unwrap()
                .max_abs_diff(&CMat::identity(4))
                < 1e-15
        );
        let r = sqrt_psd(&CMat::diag(&[4.0, 9.0, 0.0, 1.0]).unwrap()).unwrap();
        assert!(r.max_abs_diff(&CMat::diag(&[2.0, 3.0, 0.0, 1.0]).unwrap()) < 1e-14);
        // tiny negative round-off is clamped
        let r = sqrt_psd(&CMat::diag(&[-5e-11, 1.0, 0.0, 0.25]).unwrap()).unwrap();
        assert!(r.max_abs_diff(&CMat::diag(&[0.0, 1.0, 0.0, 0.5]).unwrap()) < 1e-14);
        assert!(matches!(
            sqrt_psd(&CMat::diag(&[-1e-6, 1.0, 0.0, 0.0]).unwrap()),
            Err(Error::NotPsd(_))
        ));
    }
}
