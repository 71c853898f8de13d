//! Compressed sparse rows and the Cholesky solve.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use faer::Side;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Duplicates are summed in input order, so the result is deterministic
    /// for a deterministic triplet list.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0; n + 1];
        let mut cols = Vec::new();
        let mut values: Vec<f64> = Vec::new();
        let mut last = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                cols.push(j);
                values.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { n, row_ptr, cols, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, (0..n).map(|i| (i, i, 1.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    /// `b - A x` with each row accumulated in double-double arithmetic.
    pub fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let (mut hi, mut lo) = (b[i], 0.0);
                for (j, v) in self.row(i) {
                    let p = -v * x[j];
                    let e = (-v).mul_add(x[j], -p);
                    let s = hi + p;
                    let bb = s - hi;
                    lo += (hi - (s - bb)) + (p - bb) + e;
                    hi = s;
                }
                hi + lo
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max |A_ij - A_ji| / max |A_ij|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst / self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Rows and columns `keep[i]` (in order) of `self`.
    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut t = Vec::new();
        for (new_i, &i) in keep.iter().enumerate() {
            for (j, v) in self.row(i) {
                if map[j] != usize::MAX {
                    t.push((new_i, map[j], v));
                }
            }
        }
        Self::from_triplets(keep.len(), t)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }
}

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solution of an SPD system with its final relative residual
/// `|Ax - b|_inf / |b|_inf`.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub residual: f64,
}

/// Sparse Cholesky with symmetric diagonal scaling and two steps of
/// iterative refinement.
pub fn solve_spd(a: &CsrMatrix, b: &[f64]) -> Result<SolveReport> {
    let n = a.dim();
    if n == 0 {
        return Ok(SolveReport { x: Vec::new(), residual: 0.0 });
    }
    let mut scale = vec![0.0; n];
    for (i, s) in scale.iter_mut().enumerate() {
        let d = a.get(i, i);
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        *s = 1.0 / d.sqrt();
    }
    let mut trip = Vec::with_capacity(a.nnz());
    for i in 0..n {
        for (j, v) in a.row(i) {
            if j <= i {
                trip.push(Triplet::new(i, j, v * scale[i] * scale[j]));
            }
        }
    }
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trip)
        .map_err(|e| Error::InvalidArgument(format!("sparse matrix: {e:?}")))?;
    let llt = mat.sp_cholesky(Side::Lower).map_err(|_| Error::NotPositiveDefinite)?;
    let solve_scaled = |r: &[f64]| -> Vec<f64> {
        let rhs = Col::<f64>::from_fn(n, |i| r[i] * scale[i]);
        let y = llt.solve(&rhs);
        (0..n).map(|i| y[i] * scale[i]).collect()
    };
    let mut x = solve_scaled(b);
    let bn = max_norm(b).max(f64::MIN_POSITIVE);
    let residual_of = |x: &[f64]| a.residual(x, b);
    for _ in 0..2 {
        let r = residual_of(&x);
        let dx = solve_scaled(&r);
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi += d;
        }
    }
    let residual = max_norm(&residual_of(&x)) / bn;
    if !residual.is_finite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(SolveReport { x, residual })
}
