//! Single-variable nonconforming bubbles `b_l`.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::polycore::{solve_univariate_interpolation, BaryPoly, Rational, UniPoly};

/// The monic `b_l` of degree `l (n + 1)` with a zero of order `l n` at 0
/// and `b^{(j)}(1) = 0` for `j = 0, n, .., (l - 1) n`.
///
/// Written as `x^N - p` where `p` interpolates the same conditions for `x^N`.
pub fn compute_bubble(layer: usize, n: usize) -> Result<UniPoly<Rational>> {
    assert!(layer >= 1 && n >= 1);
    let big_n = layer * (n + 1);
    let s = layer * n;
    let right: Vec<usize> = (0..layer).map(|i| i * n).collect();
    let xn = UniPoly::<Rational>::monomial(big_n);
    let one = Rational::one();
    let mut rhs = vec![Rational::zero(); s];
    rhs.extend(right.iter().map(|&j| xn.derivative(j).eval(&one)));
    let p = solve_univariate_interpolation(s, &right, &rhs)?;
    Ok(xn.sub(&p))
}

/// `int_0^1 (1 - t)^{n-1} b(t) dt`.
pub fn check_bubble_property(b: &UniPoly<Rational>, n: usize) -> Rational {
    let one_minus_t = UniPoly::new(vec![Rational::one(), -Rational::one()]);
    let mut w = UniPoly::new(vec![Rational::one()]);
    for _ in 1..n {
        w = w.mul(&one_minus_t);
    }
    w.mul(b).integral_unit()
}

/// `b(lambda_1)` as a polynomial in `lambda_1..lambda_n`.
pub fn bubble_in_lambda1(b: &UniPoly<Rational>, n: usize) -> BaryPoly<Rational> {
    BaryPoly::from_univariate(n, 0, b.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::dofs::{apply_dof, enumerate_dofs};
    use crate::element::geometry::SimplexGeometry;
    use crate::polycore::Scalar;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    #[test]
    fn anchors() {
        let b = compute_bubble(1, 1).unwrap();
        assert_eq!(b, UniPoly::new(vec![q(0, 1), q(-1, 1), q(1, 1)]));
        assert_eq!(check_bubble_property(&b, 1), q(-1, 6));
        let b = compute_bubble(1, 2).unwrap();
        assert_eq!(b, UniPoly::new(vec![q(0, 1), q(0, 1), q(-1, 1), q(1, 1)]));
        assert_eq!(check_bubble_property(&b, 2), q(-1, 30));
        assert_eq!(check_bubble_property(&UniPoly::new(vec![q(1, 1)]), 1), q(1, 1));
    }

    #[test]
    fn conditions_hold_exactly() {
        for n in 1..=3 {
            for l in 1..=4 {
                let b = compute_bubble(l, n).unwrap();
                assert_eq!(b.degree(), Some(l * (n + 1)));
                assert_eq!(b.coeffs().last(), Some(&q(1, 1)));
                for i in 0..l * n {
                    assert!(b.derivative(i).eval(&q(0, 1)).is_zero());
                }
                // zero of order exactly l n at the origin
                assert!(!b.derivative(l * n).eval(&q(0, 1)).is_zero());
                for j in 0..l {
                    assert!(b.derivative(j * n).eval(&q(1, 1)).is_zero());
                }
                assert!(!check_bubble_property(&b, n).is_zero());
            }
        }
    }

    #[test]
    fn bubbles_are_nonconforming_for_the_lower_element() {
        for n in 1..=2 {
            for l in 1..=3 {
                let g = SimplexGeometry::<Rational>::reference(n);
                let b = bubble_in_lambda1(&compute_bubble(l, n).unwrap(), n);
                for d in enumerate_dofs(l * n, n) {
                    assert!(apply_dof(&d, &b, &g).is_zero(), "l={l} n={n} {d}");
                }
            }
        }
    }
}
