//! Affine simplex geometry and the deterministic normal-frame rule.

use crate::error::{Error, Result};
use crate::polycore::{DenseMatrix, Scalar};

/// Vertex coordinates of an `n`-simplex together with the constant
/// barycentric gradients.
#[derive(Clone, Debug)]
pub struct SimplexGeometry<S> {
    vertices: Vec<Vec<S>>,
    /// Row `i` is `grad lambda_i`, `0 <= i <= n`.
    grad_lambda: Vec<Vec<S>>,
    volume: S,
}

impl<S: Scalar> SimplexGeometry<S> {
    pub fn new(vertices: Vec<Vec<S>>) -> Result<Self> {
        let n = vertices.len().checked_sub(1).ok_or(Error::DegenerateSimplex)?;
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "an {n}-simplex needs {} points with {n} coordinates",
                n + 1
            )));
        }
        // columns a_i - a_0
        let mut b = DenseMatrix::<S>::zeros(n, n);
        for i in 0..n {
            for d in 0..n {
                b[(d, i)] = vertices[i + 1][d].clone() - vertices[0][d].clone();
            }
        }
        let det = b.det();
        let entry_scale = (0..n)
            .flat_map(|i| (0..n).map(move |d| (i, d)))
            .map(|(i, d)| b[(i, d)].to_f64().abs())
            .fold(0.0, f64::max);
        if det.is_negligible(entry_scale.powi(n as i32)) {
            return Err(Error::DegenerateSimplex);
        }
        let binv = b.inverse().map_err(|_| Error::DegenerateSimplex)?;
        let mut grad_lambda = vec![vec![S::zero(); n]; n + 1];
        for i in 0..n {
            for d in 0..n {
                grad_lambda[i + 1][d] = binv[(i, d)].clone();
                let v = grad_lambda[i + 1][d].clone();
                grad_lambda[0][d] -= v;
            }
        }
        let mut fact = S::one();
        for k in 2..=n {
            fact *= S::from_i64(k as i64);
        }
        let volume = if det.is_positive() { det } else { -det } / fact;
        Ok(Self { vertices, grad_lambda, volume })
    }

    /// Vertices at the origin and the unit points `e_1..e_n`.
    pub fn reference(n: usize) -> Self {
        let mut v = vec![vec![S::zero(); n]];
        for i in 0..n {
            let mut p = vec![S::zero(); n];
            p[i] = S::one();
            v.push(p);
        }
        Self::new(v).expect("reference simplex is non-degenerate")
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn grad_lambda(&self) -> &[Vec<S>] {
        &self.grad_lambda
    }

    pub fn volume(&self) -> &S {
        &self.volume
    }

    /// `d lambda_i / d nu` for `i = 0..=n`.
    pub fn direction_weights(&self, nu: &[S]) -> Vec<S> {
        self.grad_lambda.iter().map(|g| dot(g, nu)).collect()
    }

    pub fn face_points(&self, face: &[usize]) -> Vec<Vec<S>> {
        face.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Cartesian point for barycentric coordinates `lambda_0..lambda_n`.
    pub fn point(&self, bary: &[S]) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|d| {
                bary.iter()
                    .zip(&self.vertices)
                    .fold(S::zero(), |acc, (l, v)| acc + l.clone() * v[d].clone())
            })
            .collect()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn axpy<S: Scalar>(y: &mut [S], a: &S, x: &[S]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= a.clone() * xi.clone();
    }
}

fn norm2<S: Scalar>(v: &[S]) -> S {
    dot(v, v)
}

/// Normal frame `nu_1..nu_k` of the sub-simplex spanned by `points`.
///
/// Tangents are consecutive vertex differences, orthogonalised. Coordinate
/// axes are then projected onto the normal space in axis order and the first
/// `k` independent results kept (Gram-Schmidt), each signed so its first
/// nonzero component is positive. Vectors are unit length when the field
/// has square roots; over the rationals they stay unnormalised.
pub fn normal_frame<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = points[0].len();
    let k = n + 1 - points.len();
    let mut basis: Vec<(Vec<S>, S)> = Vec::new();
    for w in points.windows(2) {
        let mut t: Vec<S> = w[1].iter().zip(&w[0]).map(|(a, b)| a.clone() - b.clone()).collect();
        let scale = norm2(&t).to_f64();
        project_out(&mut t, &basis);
        let nt = norm2(&t);
        assert!(!nt.is_negligible(scale), "degenerate face");
        basis.push((t, nt));
    }
    let mut frame = Vec::with_capacity(k);
    for a in 0..n {
        if frame.len() == k {
            break;
        }
        let mut e = vec![S::zero(); n];
        e[a] = S::one();
        project_out(&mut e, &basis);
        let ne = norm2(&e);
        if ne.is_negligible(1e2) {
            continue;
        }
        let first = e.iter().position(|c| !c.is_negligible(1e2)).expect("nonzero vector");
        if !e[first].is_positive() {
            e.iter_mut().for_each(|c| *c = -c.clone());
        }
        basis.push((e.clone(), ne.clone()));
        let e = match ne.sqrt_checked() {
            Some(len) => e.into_iter().map(|c| c / len.clone()).collect(),
            None => e,
        };
        frame.push(e);
    }
    assert_eq!(frame.len(), k, "normal frame construction failed");
    frame
}

fn project_out<S: Scalar>(v: &mut [S], basis: &[(Vec<S>, S)]) {
    for (b, nb) in basis {
        let c = dot(v, b) / nb.clone();
        axpy(v, &c, b);
    }
}
