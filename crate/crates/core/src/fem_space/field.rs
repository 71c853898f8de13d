use crate::error::Result;
use crate::polycore::{BaryPoly, MultiIndex};

/// A function on `R^n` that can report its partial derivatives pointwise.
pub trait Field: Sync {
    fn derivative(&self, x: &[f64], alpha: &MultiIndex) -> Result<f64>;

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.derivative(x, &MultiIndex::zeros(x.len()))
    }
}

/// A polynomial in Cartesian coordinates `x_1..x_n`.
#[derive(Clone, Debug)]
pub struct PolyField {
    poly: BaryPoly<f64>,
}

impl PolyField {
    pub fn new(poly: BaryPoly<f64>) -> Self {
        Self { poly }
    }

    pub fn poly(&self) -> &BaryPoly<f64> {
        &self.poly
    }
}

impl Field for PolyField {
    fn derivative(&self, x: &[f64], alpha: &MultiIndex) -> Result<f64> {
        Ok(self.poly.derivative(alpha).eval(x))
    }
}

/// The zero function.
pub struct ZeroField;

impl Field for ZeroField {
    fn derivative(&self, _x: &[f64], _alpha: &MultiIndex) -> Result<f64> {
        Ok(0.0)
    }
}
