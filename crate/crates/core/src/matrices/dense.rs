use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::Composition;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::poly::Polynomial;

/// Ring operations the dense kernels need.
pub trait Entry: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Entry for Polynomial {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += &(a * b);
    }
}

/// Square matrix in row-major order, optionally labelled by compositions.
///
/// Transfer matrices always carry one label per row; matrices built from raw
/// rows carry none.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    labels: Vec<Composition>,
    entries: Vec<T>,
}

pub type ExactMatrix = Matrix<BigInt>;
pub type PolyMatrix = Matrix<Polynomial>;

impl<T: Entry> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            dim,
            labels: Vec::new(),
            entries,
        })
    }

    pub(crate) fn from_parts(labels: Vec<Composition>, entries: Vec<T>) -> Self {
        let dim = labels.len();
        assert_eq!(entries.len(), dim * dim);
        Matrix {
            dim,
            labels,
            entries,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Composition>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![T::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = T::one();
        }
        Matrix {
            dim,
            labels: Vec::new(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[Composition] {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.dim {
            acc.add_assign_ref(self.get(i, i));
        }
        acc
    }

    /// Sum of every entry.
    pub fn entry_sum(&self) -> T {
        let mut acc = T::zero();
        for e in &self.entries {
            acc.add_assign_ref(e);
        }
        acc
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            labels: self.labels.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        self.mul_with(rhs, Exec::default())
    }

    /// Product, parallelised over output rows when `exec` allows.
    pub fn mul_with(&self, rhs: &Matrix<T>, exec: Exec) -> Result<Matrix<T>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let rows = par::map_range(exec, 0..n, |i| {
            let mut acc = vec![T::zero(); n];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (out, b) in acc.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        out.add_product(a, b);
                    }
                }
            }
            acc
        });
        let labels = if self.labels == rhs.labels {
            self.labels.clone()
        } else {
            Vec::new()
        };
        Ok(Matrix {
            dim: n,
            labels,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Square-and-multiply power; `pow(0)` is the identity.
    pub fn pow(&self, e: u64) -> Matrix<T> {
        self.pow_with(e, Exec::default())
    }

    pub fn pow_with(&self, mut e: u64, exec: Exec) -> Matrix<T> {
        let mut result = Matrix::identity(self.dim);
        result.labels = self.labels.clone();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_with(&base, exec).expect("square powers agree");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_with(&base, exec).expect("square powers agree");
            }
        }
        result
    }

    /// Principal submatrix on the given row/column positions, in that order.
    pub fn principal_submatrix(&self, positions: &[usize]) -> Matrix<T> {
        let mut entries = Vec::with_capacity(positions.len() * positions.len());
        for &i in positions {
            for &j in positions {
                entries.push(self.get(i, j).clone());
            }
        }
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            positions.iter().map(|&i| self.labels[i].clone()).collect()
        };
        Matrix {
            dim: positions.len(),
            labels,
            entries,
        }
    }

    /// Rows and columns rearranged so the labels follow `order`.
    pub fn permuted(&self, order: &[Composition]) -> Result<Matrix<T>> {
        let pos: HashMap<&Composition, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        if order.len() != self.dim || pos.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: order.len(),
            });
        }
        let positions = order
            .iter()
            .map(|c| {
                pos.get(c)
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(c.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.principal_submatrix(&positions))
    }
}

impl PolyMatrix {
    /// Evaluates every entry at `q`.
    pub fn eval_at(&self, q: &BigInt) -> ExactMatrix {
        self.map(|p| p.eval(q))
    }
}

pub fn mat_mul<T: Entry>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.mul(b)
}

pub fn mat_pow<T: Entry>(a: &Matrix<T>, n: u64) -> Matrix<T> {
    a.pow(n)
}

pub fn trace<T: Entry>(a: &Matrix<T>) -> T {
    a.trace()
}

/// `trace(a * b)` without forming the product.
pub fn trace_of_product<T: Entry>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let mut acc = T::zero();
    for i in 0..a.dim {
        for (k, x) in a.row(i).iter().enumerate() {
            let y = b.get(k, i);
            if !x.is_zero() && !y.is_zero() {
                acc.add_product(x, y);
            }
        }
    }
    Ok(acc)
}

/// `trace(a^n)`, saving the final multiplication for even `n`.
pub fn trace_power<T: Entry>(a: &Matrix<T>, n: u64, exec: Exec) -> T {
    if n >= 2 && n.is_multiple_of(2) {
        let half = a.pow_with(n / 2, exec);
        trace_of_product(&half, &half).expect("same dimension")
    } else {
        a.pow_with(n, exec).trace()
    }
}
