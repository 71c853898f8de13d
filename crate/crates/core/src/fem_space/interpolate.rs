use rayon::prelude::*;

use super::{Field, GlobalSpace};
use crate::error::Result;
use crate::mesh::simplex_quadrature;
use crate::polycore::expand_directional;

/// Global coefficients of `Pi_h v`; face integrals use a rule of the given
/// exactness, `2 (m + 2)` by default.
pub fn interpolate(space: &GlobalSpace, v: &dyn Field, degree: Option<usize>) -> Result<Vec<f64>> {
    let all: Vec<usize> = (0..space.ndofs()).collect();
    interpolate_dofs(space, v, &all, degree)
}

/// Values `d_I(v)` for the listed global DOFs.
pub fn interpolate_dofs(space: &GlobalSpace, v: &dyn Field, which: &[usize], degree: Option<usize>) -> Result<Vec<f64>> {
    let n = space.element.n;
    let degree = degree.unwrap_or(2 * (space.element.m + 2));
    let rules: Vec<_> = (1..n).map(|k| simplex_quadrature(n - k, degree)).collect::<Result<_>>()?;
    which
        .par_iter()
        .map(|&i| {
            let g = &space.dofs()[i];
            let verts = &space.mesh.faces(g.codim).faces[g.face];
            let pts: Vec<&Vec<f64>> = verts.iter().map(|&p| &space.mesh.vertices()[p]).collect();
            let deriv = expand_directional(space.frame(g.codim, g.face), &g.alpha, n);
            let at = |x: &[f64]| -> Result<f64> {
                let mut s = 0.0;
                for (beta, c) in deriv.terms() {
                    s += c * v.derivative(x, beta)?;
                }
                Ok(s)
            };
            if g.codim == n {
                return at(pts[0]);
            }
            let rule = &rules[g.codim - 1];
            let mut acc = 0.0;
            let mut total = 0.0;
            for (b, w) in rule.points.iter().zip(&rule.weights) {
                let x: Vec<f64> =
                    (0..n).map(|d| b.iter().zip(&pts).map(|(l, p)| l * p[d]).sum()).collect();
                acc += w * at(&x)?;
                total += w;
            }
            Ok(acc / total)
        })
        .collect()
}
