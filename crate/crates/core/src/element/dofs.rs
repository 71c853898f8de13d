//! Layered degrees of freedom `d_{T,F,alpha}`.

use std::collections::BTreeMap;
use std::fmt;

use super::geometry::{normal_frame, SimplexGeometry};
use crate::error::Result;
use crate::polycore::{binomial, expand_directional, monomial_average, BaryPoly, MultiIndex, Scalar};

/// A sub-simplex of the reference cell by its local vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubSimplexRef {
    /// Codimension `k`, `1 <= k <= n`; `k == n` is a vertex.
    pub codim: usize,
    /// Ascending subset of `0..=n` with `n - k + 1` entries.
    pub vertices: Vec<usize>,
}

impl SubSimplexRef {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Measure of the face, `1` for a vertex.
    pub fn measure(&self, geometry: &SimplexGeometry<f64>) -> f64 {
        let pts = geometry.face_points(&self.vertices);
        simplex_measure(&pts)
    }

    pub fn frame<S: Scalar>(&self, geometry: &SimplexGeometry<S>) -> Vec<Vec<S>> {
        normal_frame(&geometry.face_points(&self.vertices))
    }
}

/// `d`-dimensional measure of a simplex with `d + 1` points in any ambient
/// dimension (Gram determinant).
pub fn simplex_measure(points: &[Vec<f64>]) -> f64 {
    let d = points.len() - 1;
    if d == 0 {
        return 1.0;
    }
    let edges: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let gram = crate::polycore::DenseMatrix::from_rows(
        (0..d)
            .map(|i| (0..d).map(|j| super::geometry::dot(&edges[i], &edges[j])).collect())
            .collect(),
    );
    let fact: f64 = (1..=d).map(|k| k as f64).product();
    gram.det().max(0.0).sqrt() / fact
}

/// One functional: the face average of the mixed normal derivative of
/// order `|alpha| = m - layer * n - codim` along the face frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DofDescriptor {
    pub face: SubSimplexRef,
    pub layer: usize,
    /// Length `n`, supported on the first `codim` slots.
    pub alpha: MultiIndex,
}

impl DofDescriptor {
    pub fn codim(&self) -> usize {
        self.face.codim
    }

    pub fn order(&self) -> u32 {
        self.alpha.order()
    }
}

impl fmt::Display for DofDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "layer {} k {} face {:?} alpha {}",
            self.layer, self.face.codim, self.face.vertices, self.alpha
        )
    }
}

pub fn num_layers(m: usize, n: usize) -> usize {
    m.div_ceil(n)
}

/// Ascending `size`-subsets of `0..=n` in lexicographic order.
pub fn vertex_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The DOF classes living on a face of codimension `k`: `(layer, alpha)`.
pub fn face_dof_classes(m: usize, n: usize, k: usize) -> Vec<(usize, MultiIndex)> {
    let mut out = Vec::new();
    for layer in 0..num_layers(m, n) {
        let rest = m as i64 - (layer * n) as i64 - k as i64;
        if rest < 0 {
            continue;
        }
        for a in MultiIndex::of_order_leading(n, k, rest as u32) {
            out.push((layer, a));
        }
    }
    out
}

/// All DOFs of the order-`m` element on an `n`-simplex, ordered by layer,
/// codimension, face vertex set and `alpha`.
pub fn enumerate_dofs(m: usize, n: usize) -> Vec<DofDescriptor> {
    assert!(m >= 1 && n >= 1);
    let mut out = Vec::new();
    for layer in 0..num_layers(m, n) {
        let top = n.min(m - layer * n);
        for k in 1..=top {
            let order = (m - layer * n - k) as u32;
            let alphas = MultiIndex::of_order_leading(n, k, order);
            for vertices in vertex_subsets(n, n - k + 1) {
                for alpha in &alphas {
                    out.push(DofDescriptor {
                        face: SubSimplexRef { codim: k, vertices: vertices.clone() },
                        layer,
                        alpha: alpha.clone(),
                    });
                }
            }
        }
    }
    out
}

fn dim_p(d: i64, n: usize) -> i64 {
    if d < 0 {
        0
    } else {
        binomial(d + n as i64, n as i64) as i64
    }
}

/// Closed-form count of DOFs on layer `layer`.
pub fn layer_dof_count(m: usize, n: usize, layer: usize) -> usize {
    let last = num_layers(m, n) - 1;
    let d = m as i64 - (layer * n) as i64;
    let c = if layer < last { dim_p(d, n) - dim_p(d - n as i64 - 1, n) } else { dim_p(d, n) };
    c as usize
}

/// Closed-form total number of DOFs,
/// `dim P_m + sum_{l>=1} (dim P_{m-ln} - dim P_{m-ln-1})`.
pub fn dof_count_formula(m: usize, n: usize) -> usize {
    let mut total = dim_p(m as i64, n);
    for layer in 1..num_layers(m, n) {
        let d = m as i64 - (layer * n) as i64;
        total += dim_p(d, n) - dim_p(d - 1, n);
    }
    total as usize
}

/// Applies `d` to `p` by repeated directional differentiation along the
/// face frame, restriction to the face and exact averaging.
pub fn apply_dof<S: Scalar>(d: &DofDescriptor, p: &BaryPoly<S>, geometry: &SimplexGeometry<S>) -> S {
    let frame = d.face.frame(geometry);
    let mut q = p.clone();
    for (i, nu) in frame.iter().enumerate() {
        let w = geometry.direction_weights(nu);
        for _ in 0..d.alpha.get(i) {
            q = q.differentiate(&w);
        }
    }
    q.face_average(&d.face.vertices)
}

/// A DOF rewritten as a linear functional on barycentric monomials.
///
/// `d(lambda^gamma) = sum_beta c_beta * gamma!/(gamma-beta)! * avg_F lambda^{gamma-beta}`
/// where `c_beta` are the coefficients of the frame derivative in barycentric
/// partials. This avoids building intermediate polynomials and is used to
/// assemble DOF matrices.
#[derive(Clone, Debug)]
pub struct DofFunctional<S> {
    face: Vec<usize>,
    coeffs: Vec<(MultiIndex, S)>,
}

impl<S: Scalar> DofFunctional<S> {
    pub fn new(d: &DofDescriptor, geometry: &SimplexGeometry<S>) -> Self {
        Self::with_frame(&d.face.vertices, &d.alpha, &d.face.frame(geometry), geometry)
    }

    /// Same functional but along a caller-supplied normal frame of the face.
    pub fn with_frame(face: &[usize], alpha: &MultiIndex, frame: &[Vec<S>], geometry: &SimplexGeometry<S>) -> Self {
        let n = geometry.dim();
        let w: Vec<Vec<S>> = frame
            .iter()
            .map(|nu| geometry.direction_weights(nu)[1..].to_vec())
            .collect();
        let poly = expand_directional(&w, alpha, n);
        Self {
            face: face.to_vec(),
            coeffs: poly.terms().map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    pub fn eval_monomial(&self, gamma: &MultiIndex) -> S {
        let dim = self.face.len() - 1;
        let mut acc = S::zero();
        for (beta, c) in &self.coeffs {
            let Some(rest) = gamma.checked_sub(beta) else { continue };
            let vanishes = rest
                .entries()
                .iter()
                .enumerate()
                .any(|(j, &a)| a > 0 && !self.face.contains(&(j + 1)));
            if vanishes {
                continue;
            }
            let mut v = c.clone() * monomial_average::<S>(rest.entries(), dim);
            for (j, &b) in beta.entries().iter().enumerate() {
                for t in 0..b {
                    v *= S::from_i64((gamma.get(j) - t) as i64);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn apply(&self, p: &BaryPoly<S>) -> S {
        let mut acc = S::zero();
        for (g, c) in p.terms() {
            acc += c.clone() * self.eval_monomial(g);
        }
        acc
    }
}

/// `V[i][j] = d_i(basis_j)`.
pub fn dof_matrix<S: Scalar>(
    dofs: &[DofDescriptor],
    basis: &[BaryPoly<S>],
    geometry: &SimplexGeometry<S>,
) -> Result<crate::polycore::DenseMatrix<S>> {
    let f: Vec<DofFunctional<S>> = dofs.iter().map(|d| DofFunctional::new(d, geometry)).collect();
    Ok(functional_matrix(&f, basis))
}

/// `V[i][j] = f_i(basis_j)`, each functional tabulated once over the
/// monomials that occur in the basis.
pub fn functional_matrix<S: Scalar>(
    functionals: &[DofFunctional<S>],
    basis: &[BaryPoly<S>],
) -> crate::polycore::DenseMatrix<S> {
    let mut monos: BTreeMap<MultiIndex, usize> = BTreeMap::new();
    for p in basis {
        for (g, _) in p.terms() {
            let len = monos.len();
            monos.entry(g.clone()).or_insert(len);
        }
    }
    let mut v = crate::polycore::DenseMatrix::zeros(functionals.len(), basis.len());
    let mut table = vec![S::zero(); monos.len()];
    for (i, f) in functionals.iter().enumerate() {
        for (g, &slot) in &monos {
            table[slot] = f.eval_monomial(g);
        }
        for (j, p) in basis.iter().enumerate() {
            let mut acc = S::zero();
            for (g, c) in p.terms() {
                acc += c.clone() * table[monos[g]].clone();
            }
            v[(i, j)] = acc;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    #[test]
    fn counts_from_introduction() {
        assert_eq!(enumerate_dofs(3, 2).len(), 12);
        assert_eq!(enumerate_dofs(4, 2).len(), 18);
        assert_eq!(enumerate_dofs(5, 2).len(), 27);
    }

    #[test]
    fn crouzeix_raviart_pattern() {
        for n in 1..=4 {
            let d = enumerate_dofs(1, n);
            assert_eq!(d.len(), n + 1);
            assert!(d.iter().all(|x| x.layer == 0 && x.codim() == 1 && x.order() == 0));
        }
    }

    /// Morley by hand: k=1 gives |alpha| = 1 on the three edges (normal
    /// derivative); k=2 gives |alpha| = 0 at the three vertices.
    #[test]
    fn morley_pattern() {
        let d = enumerate_dofs(2, 2);
        assert_eq!(d.len(), 6);
        let edges: Vec<_> = d.iter().filter(|x| x.codim() == 1).collect();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|x| x.alpha == MultiIndex::new(vec![1, 0])));
        let verts: Vec<_> = d.iter().filter(|x| x.codim() == 2).collect();
        assert_eq!(verts.len(), 3);
        assert!(verts.iter().all(|x| x.order() == 0));
    }

    #[test]
    fn one_dimensional_dofs_are_vertex_derivatives() {
        for m in 1..=5 {
            let d = enumerate_dofs(m, 1);
            assert_eq!(d.len(), 2 * m);
            for v in 0..=1 {
                let mut orders: Vec<u32> =
                    d.iter().filter(|x| x.face.vertices == vec![v]).map(|x| x.order()).collect();
                orders.sort();
                assert_eq!(orders, (0..m as u32).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        for n in 1..=3 {
            for m in 1..=8 {
                let d = enumerate_dofs(m, n);
                assert_eq!(d.len(), dof_count_formula(m, n), "m={m} n={n}");
                for layer in 0..num_layers(m, n) {
                    let c = d.iter().filter(|x| x.layer == layer).count();
                    assert_eq!(c, layer_dof_count(m, n, layer), "m={m} n={n} l={layer}");
                }
                for x in &d {
                    assert!(x.alpha.in_leading(x.codim()));
                    assert_eq!(x.order() as usize + x.layer * n + x.codim(), m);
                }
            }
        }
    }

    #[test]
    fn morley_edge_dof_on_lambda0() {
        let g = SimplexGeometry::<Rational>::reference(2);
        let l0 = BaryPoly::lambda(2, 0);
        for d in enumerate_dofs(2, 2).iter().filter(|x| x.codim() == 1) {
            let nu = &d.face.frame(&g)[0];
            let expect = -(nu[0].clone() + nu[1].clone());
            assert_eq!(apply_dof(d, &l0, &g), expect);
        }
    }

    #[test]
    fn vertex_value_of_own_coordinate() {
        let g = SimplexGeometry::<Rational>::reference(2);
        let d = DofDescriptor {
            face: SubSimplexRef { codim: 2, vertices: vec![1] },
            layer: 0,
            alpha: MultiIndex::zeros(2),
        };
        assert_eq!(apply_dof(&d, &BaryPoly::lambda(2, 1), &g), q(1, 1));
        assert_eq!(apply_dof(&d, &BaryPoly::lambda(2, 2), &g), q(0, 1));
    }

    #[test]
    fn expanded_functional_agrees_with_differentiation() {
        let g = SimplexGeometry::<Rational>::new(vec![
            vec![q(0, 1), q(0, 1)],
            vec![q(3, 2), q(1, 3)],
            vec![q(-1, 4), q(5, 4)],
        ])
        .unwrap();
        let mut p = BaryPoly::zero(2);
        for (i, e) in MultiIndex::up_to_order(2, 5).into_iter().enumerate() {
            p.add_term(e, q(i as i64 % 7 - 3, 1 + i as i64 % 4));
        }
        for d in enumerate_dofs(5, 2) {
            assert_eq!(DofFunctional::new(&d, &g).apply(&p), apply_dof(&d, &p, &g), "{d}");
        }
    }

    #[test]
    fn measures() {
        let g = SimplexGeometry::<f64>::reference(3);
        let face = SubSimplexRef { codim: 1, vertices: vec![1, 2, 3] };
        assert!((face.measure(&g) - 3f64.sqrt() / 2.0).abs() < 1e-14);
        let edge = SubSimplexRef { codim: 2, vertices: vec![0, 3] };
        assert!((edge.measure(&g) - 1.0).abs() < 1e-14);
    }
}
