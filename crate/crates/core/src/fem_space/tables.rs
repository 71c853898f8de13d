//! Geometry-independent tables of the shape basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::element::ElementDefinition;
use crate::mesh::QuadratureRule;
use crate::polycore::{monomial_average, BaryPoly, MultiIndex, Rational, Scalar};

#[derive(Clone, Debug)]
pub struct ReferenceTables {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<BaryPoly<f64>>,
    /// `d^beta phi_j` in the barycentric variables for every `|beta| <= m`.
    pub derivatives: BTreeMap<MultiIndex, Vec<BaryPoly<f64>>>,
    /// Multi-indices of order `m`, in the order used by `top_products`.
    pub top: Vec<MultiIndex>,
    /// Mean over the simplex of `d^b phi_j d^c phi_k` for `|b| = |c| = m`,
    /// stored at `((j * B + b) * J + k) * B + c`.
    pub top_products: Vec<f64>,
}

impl ReferenceTables {
    pub fn new(element: &ElementDefinition) -> Self {
        let (m, n) = (element.m, element.n);
        let mut exact: BTreeMap<MultiIndex, Vec<BaryPoly<Rational>>> = BTreeMap::new();
        for beta in MultiIndex::up_to_order(n, m as u32) {
            let d = element.shape_basis.iter().map(|p| p.derivative(&beta)).collect();
            exact.insert(beta, d);
        }
        let top = MultiIndex::of_order(n, m as u32);
        let j = element.shape_basis.len();
        let b = top.len();
        let flat: Vec<&BaryPoly<Rational>> =
            (0..j).flat_map(|jj| top.iter().map(move |t| (jj, t))).map(|(jj, t)| &exact[t][jj]).collect();
        let size = j * b;
        let rows: Vec<Vec<f64>> = (0..size)
            .into_par_iter()
            .map(|r| (0..size).map(|c| product_mean(flat[r], flat[c], n).to_f64()).collect())
            .collect();
        let top_products = rows.into_iter().flatten().collect();
        let derivatives = exact
            .into_iter()
            .map(|(k, v)| (k, v.iter().map(|p| p.map_scalar(|c| c.to_f64())).collect()))
            .collect();
        Self { m, n, basis: element.shape_basis_f64(), derivatives, top, top_products }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn top_product(&self, j: usize, b: usize, k: usize, c: usize) -> f64 {
        let nb = self.top.len();
        self.top_products[((j * nb + b) * self.basis.len() + k) * nb + c]
    }

    /// `values[q][j] = d^beta phi_j` at the nodes of `rule`.
    pub fn tabulate(&self, beta: &MultiIndex, rule: &QuadratureRule) -> Vec<Vec<f64>> {
        let polys = &self.derivatives[beta];
        rule.points.iter().map(|p| polys.iter().map(|q| q.eval(&p[1..])).collect()).collect()
    }
}

fn product_mean(a: &BaryPoly<Rational>, b: &BaryPoly<Rational>, n: usize) -> Rational {
    let mut acc = Rational::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e = ea.add(eb);
            acc += ca.clone() * cb.clone() * monomial_average::<Rational>(e.entries(), n);
        }
    }
    acc
}
