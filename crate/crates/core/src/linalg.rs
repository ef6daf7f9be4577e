//! Exact rational matrices and row reduction.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rational(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// A dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(rows: usize, cols: usize, diag: i64) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m.set(i, i, rational(diag));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = QMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rational(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self · other`; panics on a shape mismatch.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, " [{}]", row.join(", "))?;
        }
        write!(f, " ]")
    }
}

/// Reduced row echelon form of a set of row vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
        let mut rows: Vec<Vec<Rational>> = rows.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for v in rows[r].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let k = row[c].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *v = &*v - &k * p;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot; their unit vectors give a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pv = self.pivots.iter().peekable();
        (0..self.cols)
            .filter(|c| {
                if pv.peek() == Some(&c) {
                    pv.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Reduces `v` modulo the row space, leaving zeros on pivot columns.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let k = v[c].clone();
            for (x, p) in v.iter_mut().zip(row) {
                if !p.is_zero() {
                    *x = &*x - &k * p;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect()
    }

    #[test]
    fn echelon_rank_and_quotient() {
        let e = Echelon::new(q(&[&[1, -1, 0], &[2, -2, 0], &[0, 1, -1]]), 3);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns(), vec![2]);
        let mut v = vec![rational(1), rational(0), rational(0)];
        e.reduce(&mut v);
        assert_eq!(v, vec![rational(0), rational(0), rational(1)]);
    }

    #[test]
    fn empty_relations() {
        let e = Echelon::new(Vec::new(), 2);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.free_columns(), vec![0, 1]);
    }

    #[test]
    fn products() {
        let a = QMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let b = QMatrix::from_rows(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), QMatrix::identity(2));
        assert!(QMatrix::zeros(2, 3).is_zero());
    }
}
