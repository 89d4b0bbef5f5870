use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, QMatrix};
use crate::nilgroup::{bch, same_algebra, GroupPoint, LieMorphism};

use super::{const_polys, matvec_poly};

/// An affine map `alpha(n) = delta(n) * x` from `N_1` to `N_2`; `delta` may be singular.
#[derive(Clone, PartialEq, Eq)]
pub struct AffMap {
    translation: GroupPoint,
    morphism: LieMorphism,
}

impl AffMap {
    pub fn new(translation: GroupPoint, morphism: LieMorphism) -> Result<Self> {
        if !same_algebra(translation.algebra(), morphism.target()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AffMap {
            translation,
            morphism,
        })
    }

    /// The map `n -> x * delta(n)` written in right-translation form.
    pub fn from_left_form(x: &GroupPoint, delta: &LieMorphism) -> Result<Self> {
        if !same_algebra(x.algebra(), delta.target()) {
            return Err(Error::AlgebraMismatch);
        }
        // x delta(n) = (x delta(n) x^-1) x
        let m = x.adjoint().dot(delta.matrix());
        let morphism = LieMorphism::new(delta.source(), delta.target(), m)?;
        Self::new(x.clone(), morphism)
    }

    pub fn translation(&self) -> &GroupPoint {
        &self.translation
    }

    pub fn morphism(&self) -> &LieMorphism {
        &self.morphism
    }

    pub fn apply(&self, n: &GroupPoint) -> Result<GroupPoint> {
        self.morphism.apply(n)?.multiply(&self.translation)
    }

    pub fn apply_poly(&self, coords: &[Poly]) -> Vec<Poly> {
        let nvars = coords.first().map_or(0, Poly::nvars);
        let moved = matvec_poly(self.morphism.matrix(), coords);
        let x = const_polys(nvars, self.translation.coords());
        bch(self.morphism.target(), &moved, &x)
    }

    /// `(x, delta~)` with `alpha(n) = x * delta~(n)`, where `delta~ = Ad(x^-1) delta`.
    pub fn to_left_form(&self) -> (GroupPoint, LieMorphism) {
        let m: QMatrix = self.translation.inverse().adjoint().dot(self.morphism.matrix());
        let tilde = LieMorphism::new(self.morphism.source(), self.morphism.target(), m)
            .expect("conjugate of a morphism is a morphism");
        (self.translation.clone(), tilde)
    }
}

pub fn affmap_apply(alpha: &AffMap, n: &GroupPoint) -> Result<GroupPoint> {
    alpha.apply(n)
}

pub fn affmap_to_left_form(alpha: &AffMap) -> (GroupPoint, LieMorphism) {
    alpha.to_left_form()
}

impl fmt::Debug for AffMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffMap({}, {})", self.translation, self.morphism.matrix())
    }
}

impl fmt::Display for AffMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(translation = {}; morphism = {})", self.translation, self.morphism.matrix())
    }
}
