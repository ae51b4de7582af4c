//! Dense complex matrices in row-major order, with the tensor-algebra
//! operations the rest of the crate is built on: Kronecker products,
//! partial traces, transposition in the computational basis, norms, and a
//! small pivoted linear solver.
//!
//! Multi-qubit indices are big-endian: in `tensor(a, b)` the factor `a`
//! carries the most significant part of the row/column index.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::Complex;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(1.0, 0.0);
        }
        m
    }

    /// Matrix with entry `(i, j)` given by `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
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

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.entries[i * self.cols + j] = value;
    }

    /// Elementwise transpose in the computational basis (no conjugation).
    pub fn transposed(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conjugated(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).conj())
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex::new(factor, 0.0))
    }

    /// Kronecker product; `self` carries the most significant indices.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![Complex::new(0.0, 0.0); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    let dst_row = i * other.rows + k;
                    let base = dst_row * cols + j * other.cols;
                    for l in 0..other.cols {
                        entries[base + l] = a * other.get(k, l);
                    }
                }
            }
        }
        Self { rows, cols, entries }
    }

    /// Traces out the subsystems not listed in `keep`.
    ///
    /// `dims` are the subsystem dimensions, most significant first; their
    /// product must equal the matrix dimension. Kept subsystems retain
    /// their original relative order.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: total,
            });
        }
        if keep.is_empty() {
            return Err(Error::InvalidSubsystems(format!(
                "keep set must be nonempty (dims: {dims:?})"
            )));
        }
        let mut seen = vec![false; dims.len()];
        for &k in keep {
            if k >= dims.len() {
                return Err(Error::InvalidSubsystems(format!(
                    "subsystem {k} out of range for {} subsystems",
                    dims.len()
                )));
            }
            if seen[k] {
                return Err(Error::InvalidSubsystems(format!("subsystem {k} repeated")));
            }
            seen[k] = true;
        }
        let mut keep_sorted: Vec<usize> = keep.to_vec();
        keep_sorted.sort_unstable();
        let traced: Vec<usize> = (0..dims.len()).filter(|s| !seen[*s]).collect();

        let keep_dim: usize = keep_sorted.iter().map(|&s| dims[s]).product();
        let trace_dim: usize = traced.iter().map(|&s| dims[s]).product();

        // Strides of each subsystem in the flat big-endian index.
        let mut strides = vec![1usize; dims.len()];
        for s in (0..dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * dims[s + 1];
        }

        // Flat offset of a combined (kept, traced) multi-index.
        let offset = |kept_idx: usize, traced_idx: usize| -> usize {
            let mut off = 0;
            let mut rem = kept_idx;
            for &s in keep_sorted.iter().rev() {
                off += (rem % dims[s]) * strides[s];
                rem /= dims[s];
            }
            let mut rem = traced_idx;
            for &s in traced.iter().rev() {
                off += (rem % dims[s]) * strides[s];
                rem /= dims[s];
            }
            off
        };

        let mut out = Self::zeros(keep_dim, keep_dim);
        for r in 0..keep_dim {
            for c in 0..keep_dim {
                let mut sum = Complex::new(0.0, 0.0);
                for t in 0..trace_dim {
                    sum += self.get(offset(r, t), offset(c, t));
                }
                out.set(r, c, sum);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// `Tr[self * other]` without materializing the product.
    pub fn trace_product(&self, other: &Self) -> Complex {
        debug_assert_eq!(self.cols, other.rows);
        debug_assert_eq!(self.rows, other.cols);
        let mut sum = Complex::new(0.0, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                sum += self.get(i, j) * other.get(j, i);
            }
        }
        sum
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise deviation from the adjoint, `max |M - M^dag|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::infinity();
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    /// `(M + M^dag) / 2`, quenching anti-Hermitian roundoff.
    pub fn hermitized(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * Complex::new(0.5, 0.0)
        })
    }

    /// Applies the matrix to a vector.
    pub fn apply_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Complex::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut sum = Complex::new(0.0, 0.0);
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (a, x) in row.iter().zip(v.iter()) {
                sum += a * x;
            }
            out[i] = sum;
        }
        Ok(out)
    }

    /// Solves `self * x = rhs` by Gaussian elimination with partial
    /// pivoting. Fails on rank-deficient systems.
    pub fn solve(&self, rhs: &[Complex]) -> Result<Vec<Complex>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.len(),
            });
        }
        let mut a = self.entries.clone();
        let mut b = rhs.to_vec();
        let scale = self.max_norm().max(1.0);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |best, cand| if cand.1 > best.1 { cand } else { best });
            if pivot_mag <= scale * 1e-13 {
                return Err(Error::SingularSystem);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                b.swap(col, pivot_row);
            }
            let pivot = a[col * n + col];
            let b_col = b[col];
            for r in (col + 1)..n {
                let factor = a[r * n + col] / pivot;
                if factor.re == 0.0 && factor.im == 0.0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * a[col * n + j];
                    a[r * n + j] -= sub;
                }
                b[r] -= factor * b_col;
            }
        }
        let mut x = vec![Complex::new(0.0, 0.0); n];
        for row in (0..n).rev() {
            let mut sum = b[row];
            for j in (row + 1)..n {
                sum -= a[row * n + j] * x[j];
            }
            x[row] = sum / a[row * n + row];
        }
        Ok(x)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let dst = i * rhs.cols;
                let src = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.entries[dst + j] += a * rhs.entries[src + j];
                }
            }
        }
        out
    }
}
