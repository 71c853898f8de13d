use std::fmt;

use super::linalg::DenseMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Univariate polynomial in the monomial basis, trailing zeros trimmed.
#[derive(Clone, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![S::zero(); degree + 1];
        c[degree] = S::one();
        Self::new(c)
    }

    /// Coefficients from the constant term upwards; empty for zero.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self, order: usize) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(q, c)| c.clone() * falling::<S>(q, order))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
        Self::new((0..len).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut c = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(c)
    }

    /// `int_0^1 p(t) dt`.
    pub fn integral_unit(&self) -> S {
        self.coeffs
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (q, c)| acc + c.clone() / S::from_i64(q as i64 + 1))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

/// `q (q-1) .. (q-k+1)`.
fn falling<S: Scalar>(q: usize, k: usize) -> S {
    (0..k).fold(S::one(), |acc, t| acc * S::from_i64((q - t) as i64))
}

/// Unique `v` of degree `< s + t` with `v^{(i)}(0) = rhs[i]` for `i < s` and
/// `v^{(right_orders[j])}(1) = rhs[s + j]`.
pub fn solve_univariate_interpolation<S: Scalar>(
    s: usize,
    right_orders: &[usize],
    rhs: &[S],
) -> Result<UniPoly<S>> {
    let t = right_orders.len();
    let dim = s + t;
    if dim == 0 {
        return Err(Error::InvalidArgument("interpolation needs s + t >= 1".into()));
    }
    if rhs.len() != dim {
        return Err(Error::InvalidArgument(format!("expected {dim} values, got {}", rhs.len())));
    }
    if right_orders.windows(2).any(|w| w[0] >= w[1]) || right_orders.iter().any(|&a| a >= dim) {
        return Err(Error::InvalidArgument(format!(
            "right orders {right_orders:?} must increase strictly within [0, {dim})"
        )));
    }
    let mut a = DenseMatrix::<S>::zeros(dim, dim);
    for i in 0..s {
        a[(i, i)] = falling::<S>(i, i);
    }
    for (j, &ord) in right_orders.iter().enumerate() {
        for q in ord..dim {
            a[(s + j, q)] = falling::<S>(q, ord);
        }
    }
    let c = a.solve_vec(rhs).map_err(|_| Error::SingularSystem { size: dim })?;
    Ok(UniPoly::new(c))
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    #[test]
    fn linear_through_endpoints() {
        let v = solve_univariate_interpolation(1, &[0], &[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(v, UniPoly::new(vec![q(0, 1), q(1, 1)]));
    }

    /// Oracles below: conditions written as a 3x3 system in (c0, c1, c2) and
    /// solved by hand.
    #[test]
    fn quadratic_cases() {
        // v(0)=0, v'(0)=0, v(1)=1  =>  c0=0, c1=0, c2=1
        let v = solve_univariate_interpolation(2, &[0], &[q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(v, UniPoly::monomial(2));
        // v(0)=0, v'(0)=1, v'(1)=0  =>  c1=1, c1+2c2=0
        let v = solve_univariate_interpolation(2, &[1], &[q(0, 1), q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(v, UniPoly::new(vec![q(0, 1), q(1, 1), q(-1, 2)]));
        assert_eq!(v.derivative(1).eval(&q(1, 1)), q(0, 1));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(solve_univariate_interpolation::<Rational>(1, &[1, 0], &vec![q(0, 1); 3]).is_err());
        assert!(solve_univariate_interpolation::<Rational>(1, &[2], &vec![q(0, 1); 2]).is_err());
        assert!(solve_univariate_interpolation::<Rational>(0, &[], &[]).is_err());
    }

    #[test]
    fn integral_and_derivative() {
        let b = UniPoly::new(vec![q(0, 1), q(0, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(b.integral_unit(), q(-1, 12));
        assert_eq!(b.derivative(2), UniPoly::new(vec![q(-2, 1), q(6, 1)]));
    }
}
