//! Residual bookkeeping shared by the relation checkers.

use crate::scalar::Scalar;
use crate::superlinalg::GradedMatrix;

/// `lhs - rhs` of a named operator identity.
#[derive(Clone, Debug)]
pub struct Residual<S: Scalar> {
    pub name: String,
    pub residual: GradedMatrix<S>,
    /// `(lhs, rhs)` when the identity was stated as an equation.
    pub sides: Option<(GradedMatrix<S>, GradedMatrix<S>)>,
}

impl<S: Scalar> Residual<S> {
    pub fn new(name: impl Into<String>, residual: GradedMatrix<S>) -> Self {
        Self {
            name: name.into(),
            residual,
            sides: None,
        }
    }

    pub fn from_sides(
        name: impl Into<String>,
        lhs: &GradedMatrix<S>,
        rhs: &GradedMatrix<S>,
    ) -> crate::Result<Self> {
        Ok(Self {
            sides: Some((lhs.clone(), rhs.clone())),
            ..Self::new(name, lhs.sub(rhs)?)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn norm(&self) -> f64 {
        self.residual.max_abs()
    }
}

pub fn all_zero<S: Scalar>(rs: &[Residual<S>]) -> bool {
    rs.iter().all(Residual::is_zero)
}

pub fn max_norm<S: Scalar>(rs: &[Residual<S>]) -> f64 {
    rs.iter().map(Residual::norm).fold(0.0, f64::max)
}
