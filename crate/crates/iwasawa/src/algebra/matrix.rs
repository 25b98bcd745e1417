//! Square matrices over the associative kinds, and the signature-(n+1,1)
//! form `J` used throughout.

use super::{AlgebraKind, Coef, Scalar};
use crate::error::{Error, Result};
use std::fmt;

/// A square matrix with entries sharing one kind and backend. Octonion
/// matrices are rejected at construction; octonion Möbius maps use
/// generator words instead.
#[derive(Clone, PartialEq)]
pub struct Matrix<C: Coef> {
    pub kind: AlgebraKind,
    pub size: usize,
    entries: Vec<Scalar<C>>,
}

impl<C: Coef> Matrix<C> {
    pub fn new(kind: AlgebraKind, size: usize, entries: Vec<Scalar<C>>) -> Result<Self> {
        if kind == AlgebraKind::O {
            return Err(Error::OctonionMatrix);
        }
        if entries.len() != size * size {
            return Err(Error::SizeMismatch(entries.len(), size * size));
        }
        for e in &entries {
            if e.kind != kind {
                return Err(Error::KindMismatch(kind.name(), e.kind.name()));
            }
        }
        Ok(Matrix { kind, size, entries })
    }

    pub fn identity(kind: AlgebraKind, size: usize) -> Self {
        let mut entries = vec![Scalar::zero(kind); size * size];
        for i in 0..size {
            entries[i * size + i] = Scalar::one(kind);
        }
        Matrix { kind, size, entries }
    }

    pub fn at(&self, row: usize, col: usize) -> &Scalar<C> {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar<C>) {
        assert_eq!(v.kind, self.kind);
        self.entries[row * self.size + col] = v;
    }

    pub fn entries(&self) -> &[Scalar<C>] {
        &self.entries
    }

    /// Standard product, entry order `Σ_k A[i,k]·B[k,j]` (left factor on the
    /// left, which matters over H).
    pub fn mat_mul(&self, o: &Self) -> Result<Self> {
        if self.kind != o.kind {
            return Err(Error::KindMismatch(self.kind.name(), o.kind.name()));
        }
        if self.size != o.size {
            return Err(Error::SizeMismatch(self.size, o.size));
        }
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(self.kind);
                for k in 0..n {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { kind: self.kind, size: n, entries })
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar<C>]) -> Vec<Scalar<C>> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| {
                let mut acc = Scalar::zero(self.kind);
                for k in 0..self.size {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.at(j, i).conjugate());
            }
        }
        Matrix { kind: self.kind, size: n, entries }
    }

    /// Multiply every entry by a central (real) scalar.
    pub fn scale(&self, r: &C) -> Self {
        Matrix {
            kind: self.kind,
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(r)).collect(),
        }
    }

    /// Right-multiply every entry by a scalar (projective normalization over
    /// commutative kinds).
    pub fn mul_entrywise(&self, s: &Scalar<C>) -> Self {
        Matrix {
            kind: self.kind,
            size: self.size,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.size == o.size
            && self
                .entries
                .iter()
                .zip(&o.entries)
                .all(|(a, b)| a.sub(b).norm() <= tol)
    }
}

impl<C: Coef> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{} [", self.kind, self.size, self.size)?;
        for i in 0..self.size {
            write!(f, "  ")?;
            for j in 0..self.size {
                write!(f, "{:?}, ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The Hermitian form of signature (n+1, 1):
/// `J = [[0, 0_n, −1], [0_n, id_n, 0_n], [−1, 0_n, 0]]` acting on `k^{n+2}`.
pub fn j_form<C: Coef>(kind: AlgebraKind, n: usize) -> Matrix<C> {
    let size = n + 2;
    let mut m = Matrix::identity(kind, size);
    m.set(0, 0, Scalar::zero(kind));
    m.set(size - 1, size - 1, Scalar::zero(kind));
    m.set(0, size - 1, Scalar::from_int(kind, -1));
    m.set(size - 1, 0, Scalar::from_int(kind, -1));
    m
}

/// Whether `A† J A = J` — membership in U(J). Exact over the rational
/// backend, within `tol` (entrywise norm) for floats.
pub fn j_unitary_check<C: Coef>(a: &Matrix<C>, n: usize, tol: f64) -> Result<bool> {
    if a.size != n + 2 {
        return Err(Error::SizeMismatch(a.size, n + 2));
    }
    let j = j_form::<C>(a.kind, n);
    let lhs = a.dagger().mat_mul(&j)?.mat_mul(a)?;
    Ok(if C::EXACT { lhs == j } else { lhs.approx_eq(&j, tol) })
}
