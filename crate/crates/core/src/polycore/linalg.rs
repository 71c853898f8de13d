//! Dense Gaussian elimination over any [`Scalar`], plus a fraction-free
//! determinant for large rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a.clone() * other[(k, j)].clone();
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    acc += a.clone() * b.clone();
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn pick_pivot(&self, col: usize, from: usize, scale: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let v = &self[(r, col)];
            if v.is_negligible(scale) {
                continue;
            }
            let w = v.pivot_weight();
            if best.is_none_or(|(_, bw)| w > bw) {
                best = Some((r, w));
            }
        }
        best.map(|(r, _)| r)
    }

    fn max_weight(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Reduces to row echelon form in place; returns pivot columns and the
    /// number of row swaps.
    fn echelon(&mut self) -> (Vec<usize>, usize) {
        let scale = self.max_weight();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pick_pivot(c, r, scale) else { continue };
            if p != r {
                self.swap_rows(p, r);
                swaps += 1;
            }
            let piv = self[(r, c)].clone();
            for i in r + 1..self.rows {
                if self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone() / piv.clone();
                for j in c..self.cols {
                    let v = f.clone() * self[(r, j)].clone();
                    self[(i, j)] -= v;
                }
                self[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    /// Determinant by Gaussian elimination (exact for rationals).
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let (pivots, swaps) = a.echelon();
        if pivots.len() < self.rows {
            return S::zero();
        }
        let mut d = if swaps % 2 == 0 { S::one() } else { -S::one() };
        for i in 0..self.rows {
            d *= a[(i, i)].clone();
        }
        d
    }

    /// Solves `A X = B` for square nonsingular `A`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.rows, self.rows);
        let n = self.rows;
        let scale = self.max_weight();
        let mut a = self.clone();
        let mut b = rhs.clone();
        for c in 0..n {
            let p = a.pick_pivot(c, c, scale).ok_or(Error::SingularSystem { size: n })?;
            a.swap_rows(p, c);
            b.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() / piv.clone();
                for j in c..n {
                    let v = f.clone() * a[(c, j)].clone();
                    a[(i, j)] -= v;
                }
                for j in 0..b.cols {
                    let v = f.clone() * b[(c, j)].clone();
                    b[(i, j)] -= v;
                }
            }
        }
        for i in 0..n {
            let piv = a[(i, i)].clone();
            for j in 0..b.cols {
                let v = b[(i, j)].clone() / piv.clone();
                b[(i, j)] = v;
            }
        }
        Ok(b)
    }

    pub fn solve_vec(&self, rhs: &[S]) -> Result<Vec<S>> {
        let b = DenseMatrix { rows: rhs.len(), cols: 1, data: rhs.to_vec() };
        Ok(self.solve(&b)?.data)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }
}

impl<S> std::ops::Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant via row denominator clearing and Bareiss elimination.
///
/// Avoids the gcd normalisation that makes plain rational elimination slow
/// on the 100+ dimensional DOF matrices of high-order elements.
pub fn det_fraction_free(a: &DenseMatrix<Rational>) -> Rational {
    let n = a.rows();
    assert_eq!(n, a.cols());
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = a.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        m.push(a.row(i).iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scale *= lcm;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Rational::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    BigRational::new(sign * &m[n - 1][n - 1], scale)
}
