use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{exp_series, is_zero_vec, vec_neg, vec_scale, zero_vec, QMatrix, Rat};

use super::algebra::NilLieAlgebra;
use super::bch::bch;

/// Shared handle to an algebra; points and morphisms refer to their algebra by this.
pub type AlgebraRef = Arc<NilLieAlgebra>;

/// An element of the group `N`, stored by exponential coordinates of the first kind.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupPoint {
    algebra: AlgebraRef,
    coords: Vec<Rat>,
}

pub(crate) fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupPoint {
    pub fn new(algebra: &AlgebraRef, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, algebra has dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(GroupPoint {
            algebra: algebra.clone(),
            coords,
        })
    }

    pub fn identity(algebra: &AlgebraRef) -> Self {
        GroupPoint {
            algebra: algebra.clone(),
            coords: zero_vec(algebra.dim()),
        }
    }

    /// `exp(v)` for a Lie algebra vector `v`; in first-kind coordinates this is `v` itself.
    pub fn exp(algebra: &AlgebraRef, v: &[Rat]) -> Result<Self> {
        Self::new(algebra, v.to_vec())
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// `log` of the point, i.e. its coordinate vector.
    pub fn log(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    fn check(&self, other: &GroupPoint) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn multiply(&self, other: &GroupPoint) -> Result<GroupPoint> {
        self.check(other)?;
        Ok(GroupPoint {
            algebra: self.algebra.clone(),
            coords: bch(&self.algebra, &self.coords, &other.coords),
        })
    }

    /// Product for points already known to share an algebra.
    pub(crate) fn mul(&self, other: &GroupPoint) -> GroupPoint {
        self.multiply(other).expect("points share an algebra")
    }

    pub fn inverse(&self) -> GroupPoint {
        GroupPoint {
            algebra: self.algebra.clone(),
            coords: vec_neg(&self.coords),
        }
    }

    /// `exp(t log x)`; integer `t` gives ordinary powers.
    pub fn power(&self, t: &Rat) -> GroupPoint {
        GroupPoint {
            algebra: self.algebra.clone(),
            coords: vec_scale(&self.coords, t),
        }
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GroupPoint) -> Result<GroupPoint> {
        self.check(other)?;
        Ok(GroupPoint {
            algebra: self.algebra.clone(),
            coords: self.adjoint().apply(&other.coords),
        })
    }

    /// `self * other * self^-1 * other^-1`.
    pub fn commutator(&self, other: &GroupPoint) -> Result<GroupPoint> {
        Ok(self.multiply(other)?.mul(&self.inverse()).mul(&other.inverse()))
    }

    /// Matrix of `Ad(x) = exp(ad log x)`.
    pub fn adjoint(&self) -> QMatrix {
        exp_series(&self.algebra.ad_matrix(&self.coords))
    }
}

/// The group law of `N`.
pub fn bch_multiply(x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
    x.multiply(y)
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupPoint{self}")
    }
}
