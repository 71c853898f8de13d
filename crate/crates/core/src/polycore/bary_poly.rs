//! Sparse multivariate polynomials.
//!
//! In element code the `n` variables are the independent barycentric
//! coordinates `lambda_1..lambda_n`; `lambda_0` is always substituted by
//! `1 - sum lambda_i` before a term is stored. The same type doubles as a plain
//! Cartesian polynomial in `x_1..x_n` for manufactured solutions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::multi_index::MultiIndex;
use super::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct BaryPoly<S> {
    n: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> BaryPoly<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::zeros(n), c);
        p
    }

    pub fn monomial(exponents: MultiIndex, c: S) -> Self {
        let mut p = Self::zero(exponents.dim());
        p.add_term(exponents, c);
        p
    }

    /// The independent variable in slot `j` (that is `lambda_{j+1}`).
    pub fn variable(n: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, j), S::one())
    }

    /// Barycentric coordinate `lambda_i`, `0 <= i <= n`, with `lambda_0`
    /// expanded as `1 - sum_{j>=1} lambda_j`.
    pub fn lambda(n: usize, i: usize) -> Self {
        assert!(i <= n, "barycentric index {i} out of range for n={n}");
        if i > 0 {
            return Self::variable(n, i - 1);
        }
        let mut p = Self::constant(n, S::one());
        for j in 0..n {
            p.add_term(MultiIndex::unit(n, j), -S::one());
        }
        p
    }

    /// Builds `p(lambda_1)` from a univariate coefficient list.
    pub fn from_univariate(n: usize, slot: usize, coeffs: &[S]) -> Self {
        let mut p = Self::zero(n);
        for (d, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::zeros(n).with_entry(slot, d as u32), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &MultiIndex) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    pub fn add_term(&mut self, e: MultiIndex, c: S) {
        debug_assert_eq!(e.dim(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.n, S::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BaryPoly<T> {
        let mut out = BaryPoly::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }

    /// Partial derivative with respect to the variable in slot `j`.
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            let a = e.get(j);
            if a > 0 {
                out.add_term(e.with_entry(j, a - 1), v.clone() * S::from_i64(a as i64));
            }
        }
        out
    }

    /// Mixed partial `d^beta / d var^beta`.
    pub fn derivative(&self, beta: &MultiIndex) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            if let Some(rest) = e.checked_sub(beta) {
                let mut c = v.clone();
                for j in 0..self.n {
                    for t in 0..beta.get(j) {
                        c *= S::from_i64((e.get(j) - t) as i64);
                    }
                }
                out.add_term(rest, c);
            }
        }
        out
    }

    /// Directional derivative along a direction given by the `n + 1`
    /// rates `d lambda_i / ds`; only `i >= 1` enter since `lambda_0` is
    /// already eliminated.
    pub fn differentiate(&self, direction: &[S]) -> Self {
        assert_eq!(direction.len(), self.n + 1, "need n+1 barycentric weights");
        let mut out = Self::zero(self.n);
        for j in 0..self.n {
            if direction[j + 1].is_zero() {
                continue;
            }
            out = &out + &self.partial(j).scale(&direction[j + 1]);
        }
        out
    }

    /// Iterated integral from zero, `I^alpha = I_1^{alpha_1} .. I_n^{alpha_n}`.
    pub fn antiderivative(&self, alpha: &MultiIndex) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            let mut c = v.clone();
            for j in 0..self.n {
                for t in 1..=alpha.get(j) {
                    c = c / S::from_i64((e.get(j) + t) as i64);
                }
            }
            out.add_term(e.add(alpha), c);
        }
        out
    }

    pub fn eval(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.n);
        let mut acc = S::zero();
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (j, &a) in e.entries().iter().enumerate() {
                for _ in 0..a {
                    t *= x[j].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes variable `j` by `subs[j]`; all `subs` share one arity.
    pub fn compose(&self, subs: &[BaryPoly<S>]) -> BaryPoly<S> {
        assert_eq!(subs.len(), self.n);
        let m = subs.first().map_or(0, |p| p.n);
        let max_deg = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<BaryPoly<S>>> = subs
            .iter()
            .map(|q| {
                let mut pw = vec![BaryPoly::constant(m, S::one())];
                for k in 1..=max_deg {
                    let next = &pw[k - 1] * q;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = BaryPoly::zero(m);
        for (e, v) in &self.terms {
            let mut t = BaryPoly::constant(m, v.clone());
            for (j, &a) in e.entries().iter().enumerate() {
                if a > 0 {
                    t = &t * &powers[j][a as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact integral over an `n`-simplex of the given measure.
    pub fn integrate(&self, volume: &S) -> S {
        let mut acc = S::zero();
        for (e, v) in &self.terms {
            acc += v.clone() * monomial_average::<S>(e.entries(), self.n);
        }
        acc * volume.clone()
    }

    /// Average `(1/|F|) int_F p` over the sub-simplex spanned by the local
    /// vertices `face` (ascending, subset of `0..=n`).
    pub fn face_average(&self, face: &[usize]) -> S {
        let dim = face.len() - 1;
        let mut acc = S::zero();
        for (e, v) in &self.terms {
            if let Some(r) = restricted_average::<S>(e.entries(), face, dim) {
                acc += v.clone() * r;
            }
        }
        acc
    }
}

/// Average over the face of `prod_{i>=1} lambda_i^{e_i}`, zero when a
/// coordinate that vanishes on the face carries a positive exponent.
fn restricted_average<S: Scalar>(e: &[u32], face: &[usize], dim: usize) -> Option<S> {
    for (j, &a) in e.iter().enumerate() {
        if a > 0 && !face.contains(&(j + 1)) {
            return None;
        }
    }
    Some(monomial_average::<S>(e, dim))
}

/// `d! prod e_i! / (|e| + d)!`, the mean of a barycentric monomial over a
/// `d`-simplex.
pub fn monomial_average<S: Scalar>(e: &[u32], d: usize) -> S {
    let mut num = S::one();
    let mut den = S::one();
    let mut total = 0u32;
    for &a in e {
        for k in 1..=a {
            num *= S::from_i64(k as i64);
        }
        total += a;
    }
    for k in 1..=total {
        den *= S::from_i64((d as u32 + k) as i64);
    }
    num / den
}

/// Integral of `prod_{i=0}^n lambda_i^{alpha_i}` over an `n`-simplex of
/// measure `volume`, with `alpha.dim() == n + 1`.
pub fn bary_monomial_integral<S: Scalar>(alpha: &MultiIndex, volume: &S) -> S {
    let n = alpha.dim() - 1;
    monomial_average::<S>(alpha.entries(), n) * volume.clone()
}

impl<S: Scalar> Add for &BaryPoly<S> {
    type Output = BaryPoly<S>;
    fn add(self, rhs: Self) -> BaryPoly<S> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &BaryPoly<S> {
    type Output = BaryPoly<S>;
    fn sub(self, rhs: Self) -> BaryPoly<S> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), -v.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BaryPoly<S> {
    type Output = BaryPoly<S>;
    fn mul(self, rhs: Self) -> BaryPoly<S> {
        assert_eq!(self.n, rhs.n);
        let mut out = BaryPoly::zero(self.n);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                out.add_term(ea.add(eb), va.clone() * vb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &BaryPoly<S> {
    type Output = BaryPoly<S>;
    fn neg(self) -> BaryPoly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Debug for BaryPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*l^{e}")?;
        }
        Ok(())
    }
}
