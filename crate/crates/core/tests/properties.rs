use hmfem::assembly::{assemble_stiffness, CsrMatrix};
use hmfem::element::{dof_count_formula, enumerate_dofs, normal_frame, shape_basis, shape_dim_formula};
use hmfem::fem_space::GlobalSpace;
use hmfem::mesh::{simplex_quadrature, unit_square_mesh};
use hmfem::polycore::{bary_monomial_integral, binomial, MultiIndex};
use proptest::prelude::*;

/// `sum_l sum_k C(n+1, k) C(m - l n - 1, k - 1)`, written independently of
/// the enumeration.
fn count_by_layers(m: usize, n: usize) -> usize {
    let mut total = 0;
    let mut l = 0;
    while l * n < m {
        let r = m - l * n;
        for k in 1..=n.min(r) {
            total += (binomial(n as i64 + 1, k as i64) * binomial(r as i64 - 1, k as i64 - 1)) as usize;
        }
        l += 1;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dof_count_matches_shape_dimension(m in 1usize..=7, n in 1usize..=3) {
        let dofs = enumerate_dofs(m, n);
        prop_assert_eq!(dofs.len(), dof_count_formula(m, n));
        prop_assert_eq!(dofs.len(), count_by_layers(m, n));
        prop_assert_eq!(shape_dim_formula(m, n), dofs.len());
    }

    #[test]
    fn quadrature_is_exact(n in 1usize..=3, a in prop::collection::vec(0u32..5, 4), extra in 0usize..4) {
        let alpha = MultiIndex::new(a[..=n].to_vec());
        let deg = alpha.order() as usize + extra;
        let rule = simplex_quadrature(n, deg).unwrap();
        let nfact: f64 = (1..=n).map(|k| k as f64).product();
        let got: f64 = rule
            .points
            .iter()
            .zip(&rule.weights)
            .map(|(p, w)| w * p.iter().zip(alpha.entries()).map(|(l, &e)| l.powi(e as i32)).product::<f64>())
            .sum();
        let exact = bary_monomial_integral::<f64>(&alpha, &(1.0 / nfact));
        prop_assert!((got - exact).abs() <= 1e-13 * exact.abs().max(1e-3));
    }

    #[test]
    fn frames_are_orthonormal_and_normal(
        pts in prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 3), 4),
        size in 1usize..=3,
    ) {
        let face: Vec<Vec<f64>> = pts[..size].to_vec();
        // skip nearly degenerate faces
        if size == 2 {
            let d: f64 = face[1].iter().zip(&face[0]).map(|(a, b)| (a - b).powi(2)).sum();
            prop_assume!(d > 1e-2);
        }
        if size == 3 {
            let u: Vec<f64> = (0..3).map(|i| face[1][i] - face[0][i]).collect();
            let v: Vec<f64> = (0..3).map(|i| face[2][i] - face[0][i]).collect();
            let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
            prop_assume!(c.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        }
        let frame = normal_frame(&face);
        prop_assert_eq!(frame.len(), 4 - size);
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-10);
            }
            for w in face.windows(2) {
                let t: f64 = (0..3).map(|c| (w[1][c] - w[0][c]) * a[c]).sum();
                prop_assert!(t.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn triplet_assembly_is_order_independent(
        entries in prop::collection::vec((0usize..6, 0usize..6, -1.0f64..1.0), 1..40),
    ) {
        let sym: Vec<(usize, usize, f64)> = entries.iter().flat_map(|&(i, j, v)| [(i, j, v), (j, i, v)]).collect();
        let a = CsrMatrix::from_triplets(6, sym.clone());
        let mut rev = sym;
        rev.reverse();
        let b = CsrMatrix::from_triplets(6, rev);
        prop_assert!(a.asymmetry() < 1e-15);
        for i in 0..6 {
            for j in 0..6 {
                prop_assert!((a.get(i, j) - b.get(i, j)).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn shape_basis_has_formula_dimension() {
    for (m, n) in [(2, 1), (5, 1), (4, 2), (6, 2), (3, 3), (5, 3)] {
        assert_eq!(shape_basis(m, n).unwrap().len(), shape_dim_formula(m, n));
    }
}

#[test]
fn stiffness_is_symmetric() {
    for m in 1..=4 {
        let s = GlobalSpace::new(hmfem::element::build_element(m, 2).unwrap(), unit_square_mesh(3).unwrap()).unwrap();
        let a = assemble_stiffness(&s);
        assert!(a.asymmetry() < 1e-12, "m={m}");
    }
}
