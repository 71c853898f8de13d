//! The two model problems for `(-Delta)^m u = f` in 2D.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fem_space::{Field, PolyField};
use crate::polycore::{BaryPoly, MultiIndex, Rational, Scalar};

/// `(-Delta)^m p` for a Cartesian polynomial.
pub fn polyharmonic<S: Scalar>(p: &BaryPoly<S>, m: usize) -> BaryPoly<S> {
    let n = p.nvars();
    let mut q = p.clone();
    for _ in 0..m {
        let mut lap = BaryPoly::zero(n);
        for d in 0..n {
            lap = &lap + &q.derivative(&MultiIndex::unit(n, d).add(&MultiIndex::unit(n, d)));
        }
        q = -&lap;
    }
    q
}

/// Smooth solution `2^{4m-6} (x - x^2)^m (y - y^2)^m` on the unit square.
#[derive(Clone, Debug)]
pub struct Example1 {
    pub m: usize,
    u: PolyField,
    f: PolyField,
}

impl Example1 {
    pub fn new(m: usize) -> Self {
        let one = Rational::one();
        let bump = |slot: usize| {
            let mut p = BaryPoly::zero(2);
            p.add_term(MultiIndex::unit(2, slot), one.clone());
            p.add_term(MultiIndex::unit(2, slot).add(&MultiIndex::unit(2, slot)), -one.clone());
            p.pow(m as u32)
        };
        let c = Rational::from_bigint(&num_bigint::BigInt::from(2).pow((4 * m) as u32)) / Rational::from_i64(64);
        let u = (&bump(0) * &bump(1)).scale(&c);
        let f = polyharmonic(&u, m);
        let to_f64 = |p: &BaryPoly<Rational>| PolyField::new(p.map_scalar(|c| c.to_f64()));
        Self { m, u: to_f64(&u), f: to_f64(&f) }
    }

    pub fn solution(&self) -> &PolyField {
        &self.u
    }

    pub fn load_field(&self) -> PolyField {
        self.f.clone()
    }

    pub fn load_poly(&self) -> &BaryPoly<f64> {
        self.f.poly()
    }
}

/// `r^{m-1/2} sin((m-1/2) theta)` on the L-shaped domain, with
/// `theta in [0, 2 pi)`; it is `Im z^s` for `s = m - 1/2` on that branch.
#[derive(Clone, Copy, Debug)]
pub struct Example2 {
    pub m: usize,
}

impl Example2 {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    pub fn exponent(&self) -> f64 {
        self.m as f64 - 0.5
    }
}

impl Field for Example2 {
    /// `d_x z^s = s z^{s-1}` and `d_y z^s = i s z^{s-1}`, so
    /// `d^alpha u = Im(i^{alpha_2} s (s-1) .. (s-|alpha|+1) z^{s-|alpha|})`.
    fn derivative(&self, x: &[f64], alpha: &MultiIndex) -> Result<f64> {
        let s = self.exponent();
        let k = alpha.order() as usize;
        let r = x[0].hypot(x[1]);
        if r == 0.0 {
            // every derivative of order below s extends continuously by zero
            return if (k as f64) < s {
                Ok(0.0)
            } else {
                Err(Error::Evaluation { point: x.to_vec(), reason: format!("derivative of order {k} is singular") })
            };
        }
        let mut theta = x[1].atan2(x[0]);
        if theta < 0.0 {
            theta += 2.0 * std::f64::consts::PI;
        }
        let falling: f64 = (0..k).map(|t| s - t as f64).product();
        let p = s - k as f64;
        let zp = Complex64::from_polar(r.powf(p), p * theta);
        let rot = match alpha.get(1) % 4 {
            0 => Complex64::one(),
            1 => Complex64::i(),
            2 => -Complex64::one(),
            _ => -Complex64::i(),
        };
        let v = rot * zp * falling;
        Ok(if v.im.is_zero() { 0.0 } else { v.im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_vanishes_on_boundary_with_derivatives() {
        let ex = Example1::new(3);
        for t in [0.0, 0.3, 1.0] {
            for alpha in MultiIndex::up_to_order(2, 2) {
                for p in [[t, 0.0], [0.0, t], [1.0, t], [t, 1.0]] {
                    assert!(ex.solution().derivative(&p, &alpha).unwrap().abs() < 1e-12);
                }
            }
        }
        // peak value 2^{4m-6} / 4^{2m} at the centre
        let c = ex.solution().value(&[0.5, 0.5]).unwrap();
        assert!((c - 2f64.powi(6) / 4f64.powi(6)).abs() < 1e-14);
    }

    #[test]
    fn polyharmonic_of_biharmonic_example() {
        // (-Delta)^2 (x^2 y^2) = 8
        let p = BaryPoly::monomial(MultiIndex::new(vec![2, 2]), 1.0);
        let q = polyharmonic(&p, 2);
        assert_eq!(q.coeff(&MultiIndex::zeros(2)), 8.0);
        assert_eq!(q.num_terms(), 1);
    }

    #[test]
    fn example2_is_polyharmonic_by_differences() {
        let ex = Example2::new(3);
        let x = [-0.4, 0.3];
        let d = |a: u32, b: u32| ex.derivative(&x, &MultiIndex::new(vec![a, b])).unwrap();
        // harmonic: u_xx + u_yy = 0
        assert!((d(2, 0) + d(0, 2)).abs() < 1e-12);
        // central differences of the gradient
        let h = 1e-5;
        let ux = (ex.value(&[x[0] + h, x[1]]).unwrap() - ex.value(&[x[0] - h, x[1]]).unwrap()) / (2.0 * h);
        let uy = (ex.value(&[x[0], x[1] + h]).unwrap() - ex.value(&[x[0], x[1] - h]).unwrap()) / (2.0 * h);
        assert!((ux - d(1, 0)).abs() < 1e-8);
        assert!((uy - d(0, 1)).abs() < 1e-8);
        // the polar form
        let (r, th) = (x[0].hypot(x[1]), x[1].atan2(x[0]));
        assert!((ex.value(&x).unwrap() - r.powf(2.5) * (2.5 * th).sin()).abs() < 1e-14);
    }

    #[test]
    fn example2_at_corner() {
        let ex = Example2::new(3);
        assert_eq!(ex.derivative(&[0.0, 0.0], &MultiIndex::new(vec![1, 1])).unwrap(), 0.0);
        assert!(ex.derivative(&[0.0, 0.0], &MultiIndex::new(vec![3, 0])).is_err());
        // third quadrant uses the branch theta in (pi, 3 pi / 2)
        let v = ex.value(&[-0.5, -0.5]).unwrap();
        let th = 1.25 * std::f64::consts::PI;
        assert!((v - 0.5f64.sqrt().powf(2.5) * (2.5 * th).sin()).abs() < 1e-14);
    }
}
