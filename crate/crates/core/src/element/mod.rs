//! The reference element `(T, P_T, D_T)` and its unisolvence certificate.

pub mod bubble;
pub mod dofs;
pub mod geometry;
pub mod shape;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polycore::{det_fraction_free, BaryPoly, DenseMatrix, Rational, Scalar, UniPoly};

pub use bubble::{check_bubble_property, compute_bubble};
pub use dofs::{apply_dof, dof_count_formula, dof_matrix, enumerate_dofs, functional_matrix, DofDescriptor, DofFunctional, SubSimplexRef};
pub use geometry::{normal_frame, SimplexGeometry};
pub use shape::{shape_basis, shape_dim_formula, ShapeGenerator};

/// Exact element data on the reference simplex.
///
/// Frames of the reference faces are kept unnormalised so that everything
/// stays rational; each DOF therefore differs from its unit-frame version by
/// a positive factor, which changes neither unisolvence nor the shape space.
#[derive(Clone, Debug)]
pub struct ElementDefinition {
    pub m: usize,
    pub n: usize,
    pub shape_basis: Vec<BaryPoly<Rational>>,
    pub generators: Vec<ShapeGenerator>,
    pub dofs: Vec<DofDescriptor>,
    pub vandermonde: DenseMatrix<Rational>,
    pub det: Rational,
    pub nodal_basis: Vec<BaryPoly<Rational>>,
    pub bubbles: Vec<UniPoly<Rational>>,
}

/// Outcome of the exact unisolvence check for one `(m, n)`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub m: usize,
    pub n: usize,
    pub num_dofs: usize,
    pub dim_shape: usize,
    pub det: Rational,
    /// `int_0^1 (1-t)^{n-1} b_l(t) dt` for each bubble layer.
    pub bubble_integrals: Vec<Rational>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.num_dofs == dof_count_formula(self.m, self.n)
            && self.dim_shape == shape_dim_formula(self.m, self.n)
            && self.num_dofs == self.dim_shape
            && !self.det.is_zero()
            && self.bubble_integrals.iter().all(|b| !b.is_zero())
    }
}

fn check_inputs(m: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(n));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("order m must be at least 1".into()));
    }
    Ok(())
}

fn reference_vandermonde(
    m: usize,
    n: usize,
) -> Result<(Vec<DofDescriptor>, Vec<BaryPoly<Rational>>, Vec<ShapeGenerator>, Vec<UniPoly<Rational>>, DenseMatrix<Rational>)> {
    check_inputs(m, n)?;
    let bubbles = shape::bubbles_for(m, n)?;
    let (basis, generators) = shape::shape_basis_with_bubbles(m, n, &bubbles);
    let dofs = enumerate_dofs(m, n);
    if dofs.len() != basis.len() {
        return Err(Error::UnisolvenceViolation { m, n });
    }
    let geometry = SimplexGeometry::<Rational>::reference(n);
    let v = dof_matrix(&dofs, &basis, &geometry)?;
    Ok((dofs, basis, generators, bubbles, v))
}

/// Exact determinant of the DOF matrix without forming the nodal basis.
pub fn certify(m: usize, n: usize) -> Result<Certificate> {
    let (dofs, basis, _, bubbles, v) = reference_vandermonde(m, n)?;
    let det = det_fraction_free(&v);
    let bubble_integrals = bubbles.iter().map(|b| check_bubble_property(b, n)).collect();
    Ok(Certificate { m, n, num_dofs: dofs.len(), dim_shape: basis.len(), det, bubble_integrals })
}

/// Builds the element, certifies it and inverts the DOF matrix.
pub fn build_element(m: usize, n: usize) -> Result<ElementDefinition> {
    let (dofs, shape_basis, generators, bubbles, vandermonde) = reference_vandermonde(m, n)?;
    let det = det_fraction_free(&vandermonde);
    if det.is_zero() {
        return Err(Error::UnisolvenceViolation { m, n });
    }
    let inv = vandermonde.inverse().map_err(|_| Error::UnisolvenceViolation { m, n })?;
    let j = shape_basis.len();
    let nodal_basis = (0..j)
        .map(|c| {
            let mut p = BaryPoly::zero(n);
            for (k, phi) in shape_basis.iter().enumerate() {
                if !inv[(k, c)].is_zero() {
                    p = &p + &phi.scale(&inv[(k, c)]);
                }
            }
            p
        })
        .collect();
    Ok(ElementDefinition { m, n, shape_basis, generators, dofs, vandermonde, det, nodal_basis, bubbles })
}

impl ElementDefinition {
    pub fn dim(&self) -> usize {
        self.shape_basis.len()
    }

    pub fn shape_basis_f64(&self) -> Vec<BaryPoly<f64>> {
        self.shape_basis.iter().map(|p| p.map_scalar(|c| c.to_f64())).collect()
    }

    /// Nodal basis dual to unit-frame DOFs on the reference simplex, in
    /// doubles.
    pub fn nodal_basis_unit_f64(&self) -> Result<Vec<BaryPoly<f64>>> {
        let basis = self.shape_basis_f64();
        let g = SimplexGeometry::<f64>::reference(self.n);
        let v = dof_matrix(&self.dofs, &basis, &g)?;
        let inv = v.inverse()?;
        Ok((0..basis.len())
            .map(|c| {
                let mut p = BaryPoly::zero(self.n);
                for (k, phi) in basis.iter().enumerate() {
                    p = &p + &phi.scale(&inv[(k, c)]);
                }
                p
            })
            .collect())
    }
}
