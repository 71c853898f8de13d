use hmfem::assembly::error_norms;
use hmfem::assembly::examples::Example1;
use hmfem::element::build_element;
use hmfem::fem_space::{interpolate, GlobalSpace, PolyField};
use hmfem::mesh::{l_shape_mesh, unit_cube_mesh, unit_interval_mesh, unit_square_mesh, SimplicialMesh};
use hmfem::polycore::{BaryPoly, MultiIndex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Largest disagreement between the cells sharing a DOF face.
fn continuity_defect(s: &GlobalSpace, u: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for dof in 0..s.ndofs() {
        let cells = s.cells_of_dof(dof);
        let first = s.dof_on_cell(cells[0], dof, u).unwrap();
        assert!((first - u[dof]).abs() < 1e-9 * (1.0 + u[dof].abs()), "dof {dof}: {first} vs {}", u[dof]);
        for &c in &cells[1..] {
            worst = worst.max((s.dof_on_cell(c, dof, u).unwrap() - first).abs());
        }
    }
    worst
}

fn spaces() -> Vec<GlobalSpace> {
    let mut out = Vec::new();
    for m in 1..=4 {
        out.push(GlobalSpace::new(build_element(m, 1).unwrap(), unit_interval_mesh(3).unwrap()).unwrap());
        out.push(GlobalSpace::new(build_element(m, 2).unwrap(), unit_square_mesh(2).unwrap()).unwrap());
    }
    out.push(GlobalSpace::new(build_element(3, 2).unwrap(), l_shape_mesh(2).unwrap()).unwrap());
    for m in 1..=3 {
        out.push(GlobalSpace::new(build_element(m, 3).unwrap(), unit_cube_mesh(1).unwrap()).unwrap());
    }
    out
}

#[test]
fn weak_continuity_on_random_vectors() {
    for (i, s) in spaces().iter().enumerate() {
        let u = random_vector(s.ndofs(), i as u64);
        let d = continuity_defect(s, &u);
        assert!(d <= 1e-10, "m={} n={}: {d}", s.element.m, s.element.n);
    }
}

#[test]
fn weak_zero_boundary() {
    for (i, s) in spaces().iter().enumerate() {
        let mut u = random_vector(s.ndofs(), 100 + i as u64);
        for b in s.boundary_dofs() {
            u[b] = 0.0;
        }
        for b in s.boundary_dofs() {
            for &c in s.cells_of_dof(b) {
                // derivative functionals of order r are measured in units of h^-r
                let d = &s.dofs()[b];
                let order = s.element.m as i32 - (d.layer * s.element.n) as i32 - d.codim as i32;
                let v = s.dof_on_cell(c, b, &u).unwrap() * s.mesh.cell_diameter(c).powi(order);
                assert!(v.abs() <= 1e-12, "m={} n={}: {v:e}", s.element.m, s.element.n);
            }
        }
    }
}

#[test]
fn boundary_dofs_sit_on_boundary_faces() {
    let s = GlobalSpace::new(build_element(3, 2).unwrap(), l_shape_mesh(2).unwrap()).unwrap();
    for b in s.boundary_dofs() {
        let d = &s.dofs()[b];
        for &v in &s.mesh.faces(d.codim).faces[d.face] {
            let p = &s.mesh.vertices()[v];
            let on = p.iter().any(|x| (x.abs() - 1.0).abs() < 1e-14)
                || (p[0].abs() < 1e-14 && p[1] <= 0.0)
                || (p[1].abs() < 1e-14 && p[0] >= 0.0);
            assert!(on, "{p:?}");
        }
    }
}

#[test]
fn interpolation_reproduces_polynomials_of_degree_m() {
    for m in 1..=4 {
        let s = GlobalSpace::new(build_element(m, 2).unwrap(), unit_square_mesh(3).unwrap()).unwrap();
        for a in MultiIndex::up_to_order(2, m as u32) {
            let mut p = BaryPoly::monomial(a, 1.0);
            p.add_term(MultiIndex::new(vec![0, 1]), 0.25);
            let f = PolyField::new(p);
            let uh = interpolate(&s, &f, None).unwrap();
            let e = error_norms(&s, &uh, &f, None).unwrap();
            for v in e.all() {
                assert!(v <= 1e-10, "m={m}: {v}");
            }
        }
    }
}

#[test]
fn linear_function_in_three_dimensions() {
    let s = GlobalSpace::new(build_element(2, 3).unwrap(), unit_cube_mesh(2).unwrap()).unwrap();
    let mut p = BaryPoly::monomial(MultiIndex::new(vec![1, 0, 0]), 1.0);
    p.add_term(MultiIndex::new(vec![0, 1, 1]), -3.0);
    let f = PolyField::new(p);
    let uh = interpolate(&s, &f, None).unwrap();
    for v in error_norms(&s, &uh, &f, None).unwrap().all() {
        assert!(v <= 1e-10);
    }
}

#[test]
fn nodal_function_interpolates_to_unit_vector() {
    // numbered so that lambda_1 = x and lambda_2 = y on the only cell
    let mesh = SimplicialMesh::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]], vec![vec![0, 1, 2]]).unwrap();
    for m in 1..=4 {
        let s = GlobalSpace::new(build_element(m, 2).unwrap(), mesh.clone()).unwrap();
        for j in 0..s.ndofs() {
            let mut e = vec![0.0; s.ndofs()];
            e[j] = 1.0;
            let f = PolyField::new(s.local_polynomial(0, &e));
            let got = interpolate(&s, &f, None).unwrap();
            for (i, v) in got.iter().enumerate() {
                assert!((v - e[i]).abs() < 1e-10, "m={m} j={j} i={i}: {v}");
            }
        }
    }
}

#[test]
fn interpolation_error_halves() {
    let ex = Example1::new(3);
    let el = build_element(3, 2).unwrap();
    let err = |d: usize| {
        let s = GlobalSpace::new(el.clone(), unit_square_mesh(d).unwrap()).unwrap();
        let uh = interpolate(&s, ex.solution(), None).unwrap();
        error_norms(&s, &uh, ex.solution(), None).unwrap().semi[2]
    };
    let order = (err(8) / err(16)).log2();
    assert!((order - 1.0).abs() <= 0.1, "{order}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn continuity_for_any_coefficients(m in 1usize..=3, seed in any::<u64>(), d in 1usize..=3) {
        let s = GlobalSpace::new(build_element(m, 2).unwrap(), unit_square_mesh(d).unwrap()).unwrap();
        let u = random_vector(s.ndofs(), seed);
        prop_assert!(continuity_defect(&s, &u) <= 1e-10);
    }
}
