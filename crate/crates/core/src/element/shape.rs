//! Shape space `P_m + <I^alpha b_l(lambda_1) : |alpha| = m - l n>`.

use super::bubble::{bubble_in_lambda1, compute_bubble};
use super::dofs::{dof_count_formula, num_layers};
use crate::error::Result;
use num_traits::One;

use crate::polycore::{BaryPoly, MultiIndex, Rational, UniPoly};

/// Which generator a basis function came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeGenerator {
    Monomial(MultiIndex),
    Bubble { layer: usize, alpha: MultiIndex },
}

/// Basis of the shape space: the monomials of `P_m` in `lambda_1..lambda_n`
/// followed by the integrated bubbles, layer by layer.
pub fn shape_basis_with_bubbles(
    m: usize,
    n: usize,
    bubbles: &[UniPoly<Rational>],
) -> (Vec<BaryPoly<Rational>>, Vec<ShapeGenerator>) {
    let mut basis = Vec::new();
    let mut tags = Vec::new();
    for e in MultiIndex::up_to_order(n, m as u32) {
        basis.push(BaryPoly::monomial(e.clone(), Rational::one()));
        tags.push(ShapeGenerator::Monomial(e));
    }
    for layer in 1..num_layers(m, n) {
        let b = bubble_in_lambda1(&bubbles[layer - 1], n);
        for alpha in MultiIndex::of_order(n, (m - layer * n) as u32) {
            basis.push(b.antiderivative(&alpha));
            tags.push(ShapeGenerator::Bubble { layer, alpha });
        }
    }
    (basis, tags)
}

pub fn bubbles_for(m: usize, n: usize) -> Result<Vec<UniPoly<Rational>>> {
    (1..num_layers(m, n)).map(|l| compute_bubble(l, n)).collect()
}

pub fn shape_basis(m: usize, n: usize) -> Result<Vec<BaryPoly<Rational>>> {
    Ok(shape_basis_with_bubbles(m, n, &bubbles_for(m, n)?).0)
}

/// `dim P_T`, equal to the number of DOFs.
pub fn shape_dim_formula(m: usize, n: usize) -> usize {
    dof_count_formula(m, n)
}

/// The spanning set `lambda_1^{l(n+1)} P_{m-ln}`, not linearly independent.
pub fn raw_spanning_set(m: usize, n: usize) -> Vec<BaryPoly<Rational>> {
    let mut out = Vec::new();
    for layer in 0..num_layers(m, n) {
        let pw = (layer * (n + 1)) as u32;
        for e in MultiIndex::up_to_order(n, (m - layer * n) as u32) {
            let e = e.with_entry(0, e.get(0) + pw);
            out.push(BaryPoly::monomial(e, Rational::one()));
        }
    }
    out
}

/// Coefficient matrix of a list of polynomials over their joint monomials.
pub fn coefficient_matrix(polys: &[BaryPoly<Rational>]) -> crate::polycore::DenseMatrix<Rational> {
    let mut monos: Vec<MultiIndex> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut a = crate::polycore::DenseMatrix::zeros(polys.len(), monos.len());
    for (i, p) in polys.iter().enumerate() {
        for (j, e) in monos.iter().enumerate() {
            a[(i, j)] = p.coeff(e);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(shape_basis(3, 2).unwrap().len(), 12);
        assert_eq!(shape_basis(7, 2).unwrap().len(), 48);
        assert_eq!(shape_dim_formula(7, 2), 36 + (21 - 15) + (10 - 6) + (3 - 1));
        for m in 1..=6 {
            assert_eq!(shape_basis(m, 1).unwrap().len(), 2 * m);
        }
    }

    #[test]
    fn one_dimensional_space_is_full_polynomial_space() {
        for m in 1..=5 {
            let b = shape_basis(m, 1).unwrap();
            assert!(b.iter().all(|p| p.degree().unwrap() < 2 * m as u32));
            assert_eq!(coefficient_matrix(&b).rank(), 2 * m);
        }
    }

    #[test]
    fn bubble_generators_span_the_raw_sum() {
        for (m, n) in [(3, 2), (5, 2), (4, 1), (4, 3)] {
            let basis = shape_basis(m, n).unwrap();
            let raw = raw_spanning_set(m, n);
            let mut both = basis.clone();
            both.extend(raw.iter().cloned());
            let r = coefficient_matrix(&basis).rank();
            assert_eq!(r, basis.len(), "basis is independent");
            assert_eq!(coefficient_matrix(&raw).rank(), r, "m={m} n={n}");
            assert_eq!(coefficient_matrix(&both).rank(), r, "m={m} n={n}");
        }
    }
}
