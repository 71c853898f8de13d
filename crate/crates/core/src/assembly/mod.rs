//! Broken bilinear form, load vector, boundary conditions and solve.

pub mod examples;
mod norms;
mod sparse;

use rayon::prelude::*;

pub use norms::{error_norms, ErrorRow};
pub use sparse::{max_norm, solve_spd, CsrMatrix, SolveReport};

use crate::error::{Error, Result};
use crate::fem_space::{interpolate_dofs, Field, GlobalSpace};
use crate::mesh::simplex_quadrature;
use crate::polycore::{expand_directional, monomial_average, BaryPoly, DenseMatrix, MultiIndex};

/// Assembled system before boundary conditions.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
}

/// `K[b][c]` such that `sum_{|a|=m} m!/a! d^a u d^a v` equals
/// `sum_{b,c} K[b][c] d_lambda^b u d_lambda^c v` on a cell with barycentric
/// gradients `grad` (rows `lambda_1..lambda_n`).
fn top_coupling(grad: &[Vec<f64>], top: &[MultiIndex]) -> Vec<Vec<f64>> {
    let n = grad.len();
    let m: u32 = top[0].order();
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|s| grad[r].iter().zip(&grad[s]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let mfact: f64 = (1..=m).map(f64::from).product();
    let mut k = vec![vec![0.0; top.len()]; top.len()];
    for (c, gamma) in top.iter().enumerate() {
        let w: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|r| gram[r][i]).collect()).collect();
        let p = expand_directional(&w, gamma, n);
        let weight = mfact / gamma.factorial_f64();
        for (b, beta) in top.iter().enumerate() {
            k[b][c] = weight * p.coeff(beta);
        }
    }
    k
}

/// Local stiffness matrix in the cell's nodal basis.
pub fn element_matrix(space: &GlobalSpace, cell: usize) -> DenseMatrix<f64> {
    let t = &space.tables;
    let c = &space.cells()[cell];
    let j = t.dim();
    let grad: Vec<Vec<f64>> = c.geometry.grad_lambda()[1..].to_vec();
    let k = top_coupling(&grad, &t.top);
    let vol = *c.geometry.volume();
    let nb = t.top.len();
    let mut a = DenseMatrix::<f64>::zeros(j, j);
    for p in 0..j {
        for q in p..j {
            let mut s = 0.0;
            for b in 0..nb {
                for cc in 0..nb {
                    if k[b][cc] != 0.0 {
                        s += k[b][cc] * t.top_product(p, b, q, cc);
                    }
                }
            }
            a[(p, q)] = s * vol;
            a[(q, p)] = s * vol;
        }
    }
    // to the nodal basis: C^T A C
    let ct = c.coeffs.transpose();
    ct.matmul(&a).matmul(&c.coeffs)
}

fn scatter(space: &GlobalSpace, locals: Vec<DenseMatrix<f64>>) -> CsrMatrix {
    let j = space.tables.dim();
    let mut trip = Vec::with_capacity(locals.len() * j * j);
    for (cell, a) in locals.iter().enumerate() {
        let l2g = &space.cells()[cell].l2g;
        for p in 0..j {
            for q in 0..j {
                trip.push((l2g[p], l2g[q], a[(p, q)]));
            }
        }
    }
    CsrMatrix::from_triplets(space.ndofs(), trip)
}

/// Global matrix of the broken form `a_h`.
pub fn assemble_stiffness(space: &GlobalSpace) -> CsrMatrix {
    let locals: Vec<DenseMatrix<f64>> =
        (0..space.mesh.num_cells()).into_par_iter().map(|c| element_matrix(space, c)).collect();
    scatter(space, locals)
}

fn scatter_vector(space: &GlobalSpace, locals: Vec<Vec<f64>>) -> Vec<f64> {
    let mut b = vec![0.0; space.ndofs()];
    for (cell, v) in locals.iter().enumerate() {
        for (&g, x) in space.cells()[cell].l2g.iter().zip(v) {
            b[g] += x;
        }
    }
    b
}

/// `(f, phi_I)` by quadrature of exactness `degree`, `2 (m + 2)` by default.
pub fn assemble_load(space: &GlobalSpace, f: &dyn Field, degree: Option<usize>) -> Result<Vec<f64>> {
    let n = space.element.n;
    let rule = simplex_quadrature(n, degree.unwrap_or(2 * (space.element.m + 2)))?;
    let phi = space.tables.tabulate(&MultiIndex::zeros(n), &rule);
    let nfact: f64 = (1..=n).map(|k| k as f64).product();
    let locals: Result<Vec<Vec<f64>>> = (0..space.mesh.num_cells())
        .into_par_iter()
        .map(|cell| {
            let c = &space.cells()[cell];
            let j = phi[0].len();
            let mut shape = vec![0.0; j];
            for (q, (bary, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let fx = f.value(&c.geometry.point(bary))?;
                for (s, v) in shape.iter_mut().zip(&phi[q]) {
                    *s += w * fx * v;
                }
            }
            let scale = nfact * c.geometry.volume();
            let shape: Vec<f64> = shape.iter().map(|s| s * scale).collect();
            Ok(c.coeffs.transpose().matvec(&shape))
        })
        .collect();
    Ok(scatter_vector(space, locals?))
}

/// `(f, phi_I)` for a Cartesian polynomial `f`, integrated exactly.
pub fn assemble_load_poly(space: &GlobalSpace, f: &BaryPoly<f64>) -> Vec<f64> {
    let n = space.element.n;
    let locals: Vec<Vec<f64>> = (0..space.mesh.num_cells())
        .into_par_iter()
        .map(|cell| {
            let c = &space.cells()[cell];
            let v = c.geometry.vertices();
            // x_d = a0_d + sum_i lambda_i (a_i - a0)_d
            let subs: Vec<BaryPoly<f64>> = (0..n)
                .map(|d| {
                    let mut p = BaryPoly::constant(n, v[0][d]);
                    for i in 1..=n {
                        p.add_term(MultiIndex::unit(n, i - 1), v[i][d] - v[0][d]);
                    }
                    p
                })
                .collect();
            let fl = f.compose(&subs);
            let shape: Vec<f64> = space
                .tables
                .basis
                .iter()
                .map(|phi| {
                    let prod = &fl * phi;
                    let mut s = 0.0;
                    for (e, coef) in prod.terms() {
                        s += coef * monomial_average::<f64>(e.entries(), n);
                    }
                    s * c.geometry.volume()
                })
                .collect();
            c.coeffs.transpose().matvec(&shape)
        })
        .collect();
    scatter_vector(space, locals)
}

/// System on the free DOFs after prescribing boundary DOFs.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub free: Vec<usize>,
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    /// Full-length vector holding the prescribed boundary values.
    pub lifting: Vec<f64>,
}

impl ReducedSystem {
    pub fn expand(&self, x_free: &[f64]) -> Vec<f64> {
        let mut u = self.lifting.clone();
        for (&i, x) in self.free.iter().zip(x_free) {
            u[i] = *x;
        }
        u
    }
}

/// Eliminates boundary DOFs, set to `d_I(g)` (zero when `g` is `None`).
pub fn apply_dirichlet(system: &SparseSystem, space: &GlobalSpace, g: Option<&dyn Field>) -> Result<ReducedSystem> {
    let bnd = space.boundary_dofs();
    let mut lifting = vec![0.0; space.ndofs()];
    if let Some(g) = g {
        let vals = interpolate_dofs(space, g, &bnd, None).map_err(|e| Error::BoundaryEvaluation(e.to_string()))?;
        for (&i, v) in bnd.iter().zip(vals) {
            lifting[i] = v;
        }
    }
    let free: Vec<usize> = (0..space.ndofs()).filter(|&i| !space.is_boundary(i)).collect();
    let ag = system.matrix.matvec(&lifting);
    let rhs = free.iter().map(|&i| system.rhs[i] - ag[i]).collect();
    let matrix = system.matrix.submatrix(&free);
    Ok(ReducedSystem { free, matrix, rhs, lifting })
}

/// Assembles, applies boundary data and solves; returns the full
/// coefficient vector and the solver report.
pub fn solve_problem(
    space: &GlobalSpace,
    f: &dyn Field,
    g: Option<&dyn Field>,
    load_poly: Option<&BaryPoly<f64>>,
) -> Result<(Vec<f64>, SolveReport)> {
    let matrix = assemble_stiffness(space);
    let rhs = match load_poly {
        Some(p) => assemble_load_poly(space, p),
        None => assemble_load(space, f, None)?,
    };
    let reduced = apply_dirichlet(&SparseSystem { matrix, rhs }, space, g)?;
    let report = solve_spd(&reduced.matrix, &reduced.rhs)?;
    let u = reduced.expand(&report.x);
    Ok((u, report))
}
