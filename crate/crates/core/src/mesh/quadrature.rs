//! Collapsed Gauss-Legendre product rules on the reference simplex.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Highest supported exactness degree.
pub const MAX_DEGREE: usize = 60;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    /// Barycentric coordinates `lambda_0..lambda_n` of each node.
    pub points: Vec<Vec<f64>>,
    /// Sum to the reference measure `1/n!`.
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len() - 1
    }
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
fn gauss_unit(points: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(points).expect("at least one point"));
    rule.as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect()
}

/// Rule exact for polynomials of total degree `degree` on the reference
/// `n`-simplex.
///
/// Conical product: `x_i = u_i prod_{j<i} (1 - u_j)` with Jacobian
/// `prod_i (1 - u_i)^{n-1-i}`; direction `i` uses enough Gauss points to
/// absorb the extra Jacobian degree.
pub fn simplex_quadrature(n: usize, degree: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(n));
    }
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree { n, degree });
    }
    let rules: Vec<Vec<(f64, f64)>> =
        (0..n).map(|i| gauss_unit((degree + n - 1 - i) / 2 + 1)).collect();
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut x = vec![0.0; n];
        let mut rest = 1.0;
        let mut w = 1.0;
        for i in 0..n {
            let (u, wu) = rules[i][idx[i]];
            x[i] = u * rest;
            w *= wu * (1.0 - u).powi((n - 1 - i) as i32);
            rest *= 1.0 - u;
        }
        let mut bary = Vec::with_capacity(n + 1);
        bary.push(1.0 - x.iter().sum::<f64>());
        bary.extend(x);
        points.push(bary);
        weights.push(w);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(QuadratureRule { points, weights, degree });
            }
            idx[i] += 1;
            if idx[i] < rules[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
