//! Dense integer matrices and ±1 sign matrices.
//!
//! `SignMatrix` keeps a bit-packed copy of every row (bit set = entry −1) so
//! that row inner products reduce to `n − 2·popcount(r_i xor r_j)`.

use std::fmt;

use crate::error::{KhmError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn filled(rows: usize, cols: usize, value: i64) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KhmError::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(KhmError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                let orow = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(i64, i64) -> i64) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KhmError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Row sums, one per row.
    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Copy of the `size`×`size` sub-block starting at (`r0`, `c0`).
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> IntMatrix {
        let mut b = Self::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A matrix with entries in {+1, −1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
    words: usize,
    packed: Vec<u64>,
}

impl SignMatrix {
    fn from_data(rows: usize, cols: usize, data: Vec<i8>) -> Self {
        let words = cols.div_ceil(64).max(1);
        let mut packed = vec![0u64; rows * words];
        for i in 0..rows {
            for j in 0..cols {
                if data[i * cols + j] < 0 {
                    packed[i * words + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        SignMatrix {
            rows,
            cols,
            data,
            words,
            packed,
        }
    }

    pub fn from_int(m: &IntMatrix) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                match m.get(i, j) {
                    1 => data.push(1),
                    -1 => data.push(-1),
                    value => {
                        return Err(KhmError::NotSignMatrix {
                            row: i,
                            col: j,
                            value,
                        })
                    }
                }
            }
        }
        Ok(Self::from_data(m.rows, m.cols, data))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_int(&IntMatrix::from_rows(rows)?)
    }

    /// Build from a closure returning the sign of each entry.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(if f(i, j) < 0 { -1 } else { 1 });
            }
        }
        Self::from_data(rows, cols, data)
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Packed row: bit j set iff entry (i, j) is −1.
    pub fn packed_row(&self, i: usize) -> &[u64] {
        &self.packed[i * self.words..(i + 1) * self.words]
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_dot(&self, i: usize, j: usize) -> i64 {
        let diff: u32 = self
            .packed_row(i)
            .iter()
            .zip(self.packed_row(j))
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        self.cols as i64 - 2 * diff as i64
    }

    pub fn transpose(&self) -> SignMatrix {
        SignMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn to_int(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j) as i64);
            }
        }
        m
    }

    /// H·Hᵀ = n·I, checked with packed row inner products.
    pub fn is_hadamard(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| (i + 1..self.rows).all(|j| self.row_dot(i, j) == 0))
    }

    pub fn negate_row(&self, r: usize) -> SignMatrix {
        let mut data = self.data.clone();
        for v in &mut data[r * self.cols..(r + 1) * self.cols] {
            *v = -*v;
        }
        Self::from_data(self.rows, self.cols, data)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = self
                .row(i)
                .iter()
                .map(|&v| if v > 0 { '+' } else { '-' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Validating check used by the public `is_hadamard` entry point: rejects
/// entries outside {±1} before testing orthogonality.
pub fn is_hadamard(m: &IntMatrix) -> Result<bool> {
    if m.rows() != m.cols() {
        return Ok(false);
    }
    Ok(SignMatrix::from_int(m)?.is_hadamard())
}
