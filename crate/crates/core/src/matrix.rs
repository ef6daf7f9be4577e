//! Dense integer matrices with checked arithmetic.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A dense row-major matrix of `i64` entries.
///
/// Every arithmetic operation is checked; overflow is reported as
/// [`Error::Overflow`].
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
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
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Inconsistent("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn neg(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&v| v.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let data = self.data.iter().map(|&v| mul(v, k)).collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                let base = i * other.cols;
                for (j, &b) in row.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = add(out.data[base + j], mul(a, b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| **a != 0 && **b != 0)
                    .try_fold(0i64, |acc, (&a, &b)| add(acc, mul(a, b)?))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotUnimodular);
        }
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inverse_upper_unitriangular(&self) -> Result<IntMatrix> {
        if !self.is_upper_unitriangular() {
            return Err(Error::NotUnimodular);
        }
        let n = self.rows;
        let mut inv = IntMatrix::identity(n);
        // column j of the inverse: solve U x = e_j from the bottom up
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = 0i64;
                for k in i + 1..=j {
                    let u = self.get(i, k);
                    if u != 0 {
                        s = add(s, mul(u, inv.get(k, j))?)?;
                    }
                }
                inv.set(i, j, s.checked_neg().ok_or(Error::Overflow)?);
            }
        }
        Ok(inv)
    }

    /// Exact inverse of a unimodular matrix, using integer row operations only.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotUnimodular);
        }
        if self.is_upper_unitriangular() {
            return self.inverse_upper_unitriangular();
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = IntMatrix::identity(n);
        for col in 0..n {
            // Euclid on the column below the diagonal until one nonzero entry remains.
            loop {
                let nonzero: Vec<usize> = (col..n).filter(|&r| a.get(r, col) != 0).collect();
                if nonzero.is_empty() {
                    return Err(Error::NotUnimodular);
                }
                let pivot = *nonzero.iter().min_by_key(|&&r| a.get(r, col).unsigned_abs()).unwrap();
                a.swap_rows(col, pivot);
                inv.swap_rows(col, pivot);
                if nonzero.len() == 1 {
                    break;
                }
                let p = a.get(col, col);
                for r in col + 1..n {
                    let q = a.get(r, col) / p;
                    if q != 0 {
                        a.add_row_multiple(r, col, -q)?;
                        inv.add_row_multiple(r, col, -q)?;
                    }
                }
            }
            match a.get(col, col) {
                1 => {}
                -1 => {
                    a.negate_row(col);
                    inv.negate_row(col);
                }
                _ => return Err(Error::NotUnimodular),
            }
        }
        for col in (0..n).rev() {
            for r in 0..col {
                let q = a.get(r, col);
                if q != 0 {
                    a.add_row_multiple(r, col, -q)?;
                    inv.add_row_multiple(r, col, -q)?;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.data[i * self.cols + c] = -self.data[i * self.cols + c];
        }
    }

    // row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = mul(k, self.get(source, c))?;
            let t = add(self.get(target, c), v)?;
            self.set(target, c, t);
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
