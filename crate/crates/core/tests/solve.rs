use hmfem::assembly::examples::{polyharmonic, Example1};
use hmfem::assembly::{assemble_load_poly, assemble_stiffness, error_norms, max_norm, solve_problem};
use hmfem::element::build_element;
use hmfem::fem_space::{GlobalSpace, PolyField, ZeroField};
use hmfem::mesh::{unit_cube_mesh, unit_square_mesh};
use hmfem::polycore::{BaryPoly, MultiIndex};

/// `x (1 - x)` in coordinate `i` of `n`.
fn bump(n: usize, i: usize) -> BaryPoly<f64> {
    let mut p = BaryPoly::monomial(MultiIndex::unit(n, i), 1.0);
    p.add_term(MultiIndex::unit(n, i).add(&MultiIndex::unit(n, i)), -1.0);
    p
}

#[test]
fn crouzeix_raviart_in_three_dimensions() {
    let u = &(&bump(3, 0) * &bump(3, 1)) * &bump(3, 2);
    let f = polyharmonic(&u, 1);
    let exact = PolyField::new(u);
    let el = build_element(1, 3).unwrap();
    let err = |d: usize| {
        let s = GlobalSpace::new(el.clone(), unit_cube_mesh(d).unwrap()).unwrap();
        let (uh, rep) = solve_problem(&s, &ZeroField, None, Some(&f)).unwrap();
        assert!(rep.residual < 1e-12);
        error_norms(&s, &uh, &exact, None).unwrap().semi[0]
    };
    let order = (err(2) / err(4)).log2();
    assert!((order - 1.0).abs() < 0.25, "{order}");
}

#[test]
fn galerkin_residual_after_solve() {
    let ex = Example1::new(3);
    let s = GlobalSpace::new(build_element(3, 2).unwrap(), unit_square_mesh(8).unwrap()).unwrap();
    let (u, rep) = solve_problem(&s, &ex.load_field(), None, Some(ex.load_poly())).unwrap();
    assert!(rep.residual <= 1e-9);
    let a = assemble_stiffness(&s);
    let b = assemble_load_poly(&s, ex.load_poly());
    let r: Vec<f64> = a.matvec(&u).iter().zip(&b).enumerate().filter(|(i, _)| !s.is_boundary(*i)).map(|(_, (x, y))| x - y).collect();
    assert!(max_norm(&r) <= 1e-9 * max_norm(&b));
}

#[test]
fn global_polynomial_data_is_reproduced() {
    // a polynomial of degree m is its own discrete solution when its DOFs
    // are imposed on the boundary
    for m in 1..=3 {
        let mut g = BaryPoly::monomial(MultiIndex::new(vec![m as u32, 0]), 1.0);
        g.add_term(MultiIndex::new(vec![1, m as u32 - 1]), -2.0);
        g.add_term(MultiIndex::new(vec![0, 1]), 0.5);
        let f = polyharmonic(&g, m);
        let gf = PolyField::new(g);
        let s = GlobalSpace::new(build_element(m, 2).unwrap(), unit_square_mesh(4).unwrap()).unwrap();
        let (u, _) = solve_problem(&s, &ZeroField, Some(&gf), Some(&f)).unwrap();
        for v in error_norms(&s, &u, &gf, None).unwrap().all() {
            assert!(v < 1e-8, "m={m}: {v}");
        }
    }
}
