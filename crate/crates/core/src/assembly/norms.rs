use rayon::prelude::*;

use crate::error::Result;
use crate::fem_space::{Field, GlobalSpace};
use crate::mesh::simplex_quadrature;
use crate::polycore::{expand_directional, MultiIndex};

/// `|u - u_h|_0` and the broken seminorms `|u - u_h|_{k,h}`, `k = 1..m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub l2: f64,
    /// Entry `k - 1` is the broken `H^k` seminorm `|nabla^k_h (u - u_h)|`.
    pub semi: Vec<f64>,
}

impl ErrorRow {
    /// Entry 0 is the `L^2` error, entry `k` the `H^k` seminorm.
    pub fn all(&self) -> Vec<f64> {
        let mut v = vec![self.l2];
        v.extend(&self.semi);
        v
    }
}

/// Cellwise quadrature of exactness `degree` (`2 (m + 2)` by default) of
/// `sum_{|a|=k} k!/a! |d^a (u - u_h)|^2`, the squared tensor norm of the
/// `k`-th derivatives (the energy norm of `a_h` for `k = m`).
pub fn error_norms(space: &GlobalSpace, u_h: &[f64], u: &dyn Field, degree: Option<usize>) -> Result<ErrorRow> {
    let (m, n) = (space.element.m, space.element.n);
    let rule = simplex_quadrature(n, degree.unwrap_or(2 * (m + 2)))?;
    let betas = MultiIndex::up_to_order(n, m as u32);
    let tabs: Vec<Vec<Vec<f64>>> = betas.iter().map(|b| space.tables.tabulate(b, &rule)).collect();
    let beta_pos = |b: &MultiIndex| betas.iter().position(|x| x == b).expect("multi-index in table");
    let alphas: Vec<Vec<MultiIndex>> = (0..=m as u32).map(|k| MultiIndex::of_order(n, k)).collect();
    let fact = |k: u32| -> f64 { (1..=k).map(|t| t as f64).product() };
    let nfact = fact(n as u32);
    let weights: Vec<Vec<f64>> = alphas
        .iter()
        .map(|level| level.iter().map(|a| fact(a.order()) / a.entries().iter().map(|&e| fact(e)).product::<f64>()).collect())
        .collect();
    let sums: Result<Vec<Vec<f64>>> = (0..space.mesh.num_cells())
        .into_par_iter()
        .map(|cell| {
            let c = &space.cells()[cell];
            let a = space.local_coefficients(cell, u_h);
            let grad = c.geometry.grad_lambda();
            // Cartesian d^alpha in terms of barycentric partials
            let w: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|r| grad[r + 1][i]).collect()).collect();
            let chains: Vec<Vec<Vec<(usize, f64)>>> = alphas
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|alpha| {
                            expand_directional(&w, alpha, n).terms().map(|(b, v)| (beta_pos(b), *v)).collect()
                        })
                        .collect()
                })
                .collect();
            let mut acc = vec![0.0; m + 1];
            let scale = nfact * c.geometry.volume();
            for (q, (bary, wq)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let x = c.geometry.point(bary);
                let lam: Vec<f64> = tabs.iter().map(|t| t[q].iter().zip(&a).map(|(p, ai)| p * ai).sum()).collect();
                for (k, level) in alphas.iter().enumerate() {
                    for ((alpha, chain), wt) in level.iter().zip(&chains[k]).zip(&weights[k]) {
                        let uh: f64 = chain.iter().map(|&(b, v)| v * lam[b]).sum();
                        let e = u.derivative(&x, alpha)? - uh;
                        acc[k] += wt * wq * scale * e * e;
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = vec![0.0; m + 1];
    for s in sums? {
        for (t, v) in total.iter_mut().zip(s) {
            *t += v;
        }
    }
    let total: Vec<f64> = total.into_iter().map(f64::sqrt).collect();
    Ok(ErrorRow { l2: total[0], semi: total[1..].to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::build_element;
    use crate::fem_space::{interpolate, PolyField};
    use crate::mesh::unit_square_mesh;
    use crate::polycore::BaryPoly;

    fn space(m: usize) -> GlobalSpace {
        GlobalSpace::new(build_element(m, 2).unwrap(), unit_square_mesh(2).unwrap()).unwrap()
    }

    #[test]
    fn norms_of_xy_against_zero() {
        let s = space(2);
        let u = PolyField::new(BaryPoly::monomial(MultiIndex::new(vec![1, 1]), 1.0));
        let e = error_norms(&s, &vec![0.0; s.ndofs()], &u, None).unwrap();
        // |xy|_0^2 = 1/9, |xy|_1^2 = 2/3, |nabla^2 xy|^2 = 2
        assert!((e.l2 - (1.0f64 / 9.0).sqrt()).abs() < 1e-13);
        assert!((e.semi[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-13);
        assert!((e.semi[1] - 2f64.sqrt()).abs() < 1e-13);
        assert_eq!(e.all().len(), 3);
    }

    #[test]
    fn interpolant_of_shape_polynomial_has_zero_error() {
        let s = space(3);
        let mut p = BaryPoly::zero(2);
        p.add_term(MultiIndex::new(vec![3, 0]), 1.0);
        p.add_term(MultiIndex::new(vec![1, 2]), -2.0);
        p.add_term(MultiIndex::new(vec![0, 1]), 0.5);
        let u = PolyField::new(p);
        let uh = interpolate(&s, &u, None).unwrap();
        let e = error_norms(&s, &uh, &u, None).unwrap();
        assert!(e.all().iter().all(|v| *v < 1e-10));
    }
}
