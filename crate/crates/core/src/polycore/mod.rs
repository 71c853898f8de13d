//! Exact polynomial algebra in barycentric variables.

pub mod bary_poly;
pub mod linalg;
pub mod multi_index;
pub mod scalar;
pub mod uni_poly;

pub use bary_poly::{bary_monomial_integral, monomial_average, BaryPoly};
pub use linalg::{det_fraction_free, DenseMatrix};
pub use multi_index::MultiIndex;
pub use scalar::{binomial, format_rational, Rational, Scalar};
pub use uni_poly::{solve_univariate_interpolation, UniPoly};

/// Coefficients of `prod_i (sum_r w[i][r] y_r)^{alpha_i}` in the monomials
/// `y^beta`, `|beta| = |alpha|`.
///
/// This is how a mixed derivative along vectors `w_i` is rewritten in terms
/// of coordinate partials: with `w[i][r] = d(lambda_r)/d(nu_i)` it turns
/// `d^alpha/d nu^alpha` into barycentric partials, with `w[i][r] = nu_i[r]`
/// into Cartesian ones.
pub fn expand_directional<S: Scalar>(w: &[Vec<S>], alpha: &MultiIndex, nvars: usize) -> BaryPoly<S> {
    let mut acc = BaryPoly::constant(nvars, S::one());
    for (i, wi) in w.iter().enumerate() {
        let a = alpha.get(i);
        if a == 0 {
            continue;
        }
        let mut lin = BaryPoly::zero(nvars);
        for (r, c) in wi.iter().enumerate() {
            lin.add_term(MultiIndex::unit(nvars, r), c.clone());
        }
        acc = &acc * &lin.pow(a);
    }
    acc
}
