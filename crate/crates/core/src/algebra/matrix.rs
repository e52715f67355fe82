use alloc::vec::Vec;
use core::fmt;

use super::scalar::{rat, Scalar};

/// A commutative ring with exact halving. Halving must be exact division by
/// two, never integer truncation: the Jordan product `(ab+ba)/2` and the
/// matrix `(1/2)[[1,5],[1,1]]` both produce genuine half-integers.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn halve(&self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn halve(&self) -> Self {
        self.scale(&rat(1, 2))
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    /// Only 2x2 and 3x3 matrices are supported.
    UnsupportedDim(usize),
    /// Entry count does not match the declared dimension.
    BadEntryCount { dim: usize, got: usize },
    /// Two operands have different dimensions.
    DimMismatch { left: usize, right: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::UnsupportedDim(d) => {
                write!(f, "unsupported matrix dimension {d} (only 2 and 3)")
            }
            MatrixError::BadEntryCount { dim, got } => {
                write!(f, "{dim}x{dim} matrix needs {} entries, got {got}", dim * dim)
            }
            MatrixError::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left}x{left} vs {right}x{right}")
            }
        }
    }
}

/// A 2x2 or 3x3 matrix over a commutative ring, row-major. Values are
/// immutable after construction and every operation is a pure function.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix<R> {
    dim: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    pub fn new(dim: usize, entries: Vec<R>) -> Result<Self, MatrixError> {
        if dim != 2 && dim != 3 {
            return Err(MatrixError::UnsupportedDim(dim));
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::BadEntryCount {
                dim,
                got: entries.len(),
            });
        }
        Ok(SquareMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(if r == c { R::one() } else { R::zero() });
            }
        }
        SquareMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> &R {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_dims(&self, rhs: &Self) -> Result<(), MatrixError> {
        if self.dim != rhs.dim {
            Err(MatrixError::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_dims(rhs)?;
        Ok(SquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_dims(rhs)?;
        Ok(SquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, r: &R) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.mul(r)).collect(),
        }
    }

    pub fn halve(&self) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(Ring::halve).collect(),
        }
    }

    /// Standard associative matrix product.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_dims(rhs)?;
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                let mut acc = R::zero();
                for k in 0..d {
                    acc = acc.add(&self.entry(r, k).mul(rhs.entry(k, c)));
                }
                entries.push(acc);
            }
        }
        Ok(SquareMatrix { dim: d, entries })
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn mat_pow(&self, n: u64) -> Self {
        let mut result = SquareMatrix::identity(self.dim).expect("dim already validated");
        let mut base = self.clone();
        let mut exp = n;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mat_mul(&base).expect("same dim");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mat_mul(&base).expect("same dim");
            }
        }
        result
    }

    /// Jordan product `a.b = (ab + ba)/2`.
    pub fn jordan_product(&self, rhs: &Self) -> Result<Self, MatrixError> {
        let ab = self.mat_mul(rhs)?;
        let ba = rhs.mat_mul(self)?;
        Ok(ab.add(&ba)?.halve())
    }

    /// Ternary product `{a,b,c} = ((ab)c + (cb)a)/2`.
    pub fn ternary_product(a: &Self, b: &Self, c: &Self) -> Result<Self, MatrixError> {
        let left = a.mat_mul(b)?.mat_mul(c)?;
        let right = c.mat_mul(b)?.mat_mul(a)?;
        Ok(left.add(&right)?.halve())
    }

    pub fn mat_trace(&self) -> R {
        let mut acc = R::zero();
        for i in 0..self.dim {
            acc = acc.add(self.entry(i, i));
        }
        acc
    }

    /// Exact determinant; the 3x3 case expands cofactors along the first row.
    pub fn mat_det(&self) -> R {
        match self.dim {
            2 => {
                let main = self.entry(0, 0).mul(self.entry(1, 1));
                let anti = self.entry(0, 1).mul(self.entry(1, 0));
                main.sub(&anti)
            }
            3 => {
                let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
                    self.entry(r0, c0)
                        .mul(self.entry(r1, c1))
                        .sub(&self.entry(r0, c1).mul(self.entry(r1, c0)))
                };
                let m0 = self.entry(0, 0).mul(&minor(1, 2, 1, 2));
                let m1 = self.entry(0, 1).mul(&minor(1, 2, 0, 2));
                let m2 = self.entry(0, 2).mul(&minor(1, 2, 0, 1));
                m0.sub(&m1).add(&m2)
            }
            _ => unreachable!("dim validated at construction"),
        }
    }
}

impl SquareMatrix<Scalar> {
    /// Convenience constructor from machine integers.
    pub fn from_ints(dim: usize, entries: &[i64]) -> Result<Self, MatrixError> {
        SquareMatrix::new(dim, entries.iter().map(|&n| Scalar::from_int(n)).collect())
    }
}

impl<R: fmt::Display> fmt::Display for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.dim {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[r * self.dim + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<R: fmt::Display> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
