use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactalg::{is_unipotent_matrix, nilpotent_log, Poly, QMatrix, Rat};
use crate::nilgroup::{bch, same_algebra, AlgebraRef, GroupPoint, LieMorphism};

use super::linearize::Linearization;
use super::{const_polys, matvec_poly};

/// An element `(x, D)` of `Aff(N) = N x| Aut(N)`, acting by `n -> x * exp(D log n)`.
///
/// `D` must be invertible over Q and preserve the weight filtration of the algebra's basis, so
/// that the action stays inside the finite-dimensional linearization.
pub struct AffTrans {
    translation: GroupPoint,
    auto: LieMorphism,
    auto_inv: QMatrix,
    linear: OnceLock<QMatrix>,
}

impl AffTrans {
    pub fn new(translation: GroupPoint, auto: LieMorphism) -> Result<Self> {
        if !same_algebra(auto.source(), auto.target())
            || !same_algebra(translation.algebra(), auto.source())
        {
            return Err(Error::AlgebraMismatch);
        }
        let auto_inv = auto
            .matrix()
            .inverse()
            .map_err(|_| Error::InvalidTransformation("automorphism part is not invertible".into()))?;
        if !translation.algebra().preserves_filtration(auto.matrix()) {
            return Err(Error::InvalidTransformation(
                "automorphism part does not preserve the weight filtration".into(),
            ));
        }
        Ok(AffTrans {
            translation,
            auto,
            auto_inv,
            linear: OnceLock::new(),
        })
    }

    /// Builds `(x, D)` from raw coordinates and a matrix.
    pub fn from_parts(algebra: &AlgebraRef, translation: Vec<Rat>, auto: QMatrix) -> Result<Self> {
        let x = GroupPoint::new(algebra, translation)?;
        let d = LieMorphism::new(algebra, algebra, auto)?;
        Self::new(x, d)
    }

    fn from_trusted(translation: GroupPoint, auto: QMatrix, auto_inv: QMatrix) -> Self {
        let algebra = translation.algebra().clone();
        AffTrans {
            translation,
            auto: LieMorphism::new_unchecked(&algebra, &algebra, auto),
            auto_inv,
            linear: OnceLock::new(),
        }
    }

    pub fn identity(algebra: &AlgebraRef) -> Self {
        let n = algebra.dim();
        Self::from_trusted(GroupPoint::identity(algebra), QMatrix::identity(n), QMatrix::identity(n))
    }

    /// The left translation `L_m`.
    pub fn left_translation(m: &GroupPoint) -> Self {
        let n = m.algebra().dim();
        Self::from_trusted(m.clone(), QMatrix::identity(n), QMatrix::identity(n))
    }

    pub fn automorphism(d: LieMorphism) -> Result<Self> {
        let algebra = d.source().clone();
        Self::new(GroupPoint::identity(&algebra), d)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.translation.algebra()
    }

    pub fn translation(&self) -> &GroupPoint {
        &self.translation
    }

    pub fn auto(&self) -> &LieMorphism {
        &self.auto
    }

    pub fn auto_inverse(&self) -> &QMatrix {
        &self.auto_inv
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_identity() && self.auto.matrix().is_identity()
    }

    /// True when the automorphism part is the identity, i.e. `self` is a left translation.
    pub fn is_left_translation(&self) -> bool {
        self.auto.matrix().is_identity()
    }

    fn check(&self, n: &GroupPoint) -> Result<()> {
        if same_algebra(self.algebra(), n.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `x * D(n)`.
    pub fn act(&self, n: &GroupPoint) -> Result<GroupPoint> {
        self.check(n)?;
        let moved = GroupPoint::new(self.algebra(), self.auto.matrix().apply(n.coords()))?;
        self.translation.multiply(&moved)
    }

    /// The action on a point whose coordinates are polynomials.
    pub fn act_poly(&self, coords: &[Poly]) -> Vec<Poly> {
        let nvars = coords.first().map_or(0, Poly::nvars);
        let moved = matvec_poly(self.auto.matrix(), coords);
        let x = const_polys(nvars, self.translation.coords());
        bch(self.algebra(), &x, &moved)
    }

    /// `self * other`, acting as `self` after `other`.
    pub fn compose(&self, other: &AffTrans) -> Result<AffTrans> {
        if !same_algebra(self.algebra(), other.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let moved = GroupPoint::new(
            self.algebra(),
            self.auto.matrix().apply(other.translation.coords()),
        )?;
        let x = self.translation.multiply(&moved)?;
        let d = self.auto.matrix().dot(other.auto.matrix());
        let d_inv = other.auto_inv.dot(&self.auto_inv);
        let out = Self::from_trusted(x, d, d_inv);
        if let (Some(a), Some(b)) = (self.linear.get(), other.linear.get()) {
            let _ = out.linear.set(a.dot(b));
        }
        Ok(out)
    }

    /// Composition for transformations already known to share an algebra.
    pub(crate) fn mul(&self, other: &AffTrans) -> AffTrans {
        self.compose(other).expect("same algebra")
    }

    pub fn inverse(&self) -> AffTrans {
        let x = GroupPoint::new(self.algebra(), self.auto_inv.apply(self.translation.inverse().coords()))
            .expect("dimension");
        Self::from_trusted(x, self.auto_inv.clone(), self.auto.matrix().clone())
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> AffTrans {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffTrans::identity(self.algebra());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &AffTrans) -> Result<AffTrans> {
        Ok(self.compose(other)?.mul(&self.inverse()))
    }

    /// Matrix of the action on weighted polynomials; see [`Linearization`].
    pub fn linearize(&self) -> &QMatrix {
        self.linear
            .get_or_init(|| Linearization::of(self.algebra()).matrix(self))
    }

    pub fn is_unipotent(&self) -> bool {
        is_unipotent_matrix(self.linearize())
    }

    /// Logarithm of the linearization; defined for unipotent elements.
    pub fn linear_log(&self) -> Result<QMatrix> {
        nilpotent_log(self.linearize())
    }
}

impl Clone for AffTrans {
    fn clone(&self) -> Self {
        let linear = OnceLock::new();
        if let Some(m) = self.linear.get() {
            let _ = linear.set(m.clone());
        }
        AffTrans {
            translation: self.translation.clone(),
            auto: self.auto.clone(),
            auto_inv: self.auto_inv.clone(),
            linear,
        }
    }
}

impl PartialEq for AffTrans {
    fn eq(&self, other: &Self) -> bool {
        self.translation == other.translation && self.auto == other.auto
    }
}

impl Eq for AffTrans {}

impl Hash for AffTrans {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.translation.hash(state);
        self.auto.matrix().hash(state);
    }
}

impl fmt::Debug for AffTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffTrans({}, {})", self.translation, self.auto.matrix())
    }
}

impl fmt::Display for AffTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(translation = {}; auto = {})", self.translation, self.auto.matrix())
    }
}

/// `g * n`.
pub fn aff_act(g: &AffTrans, n: &GroupPoint) -> Result<GroupPoint> {
    g.act(n)
}

pub fn aff_compose(g: &AffTrans, h: &AffTrans) -> Result<AffTrans> {
    g.compose(h)
}

pub fn aff_inverse(g: &AffTrans) -> AffTrans {
    g.inverse()
}

pub fn linearize(g: &AffTrans) -> QMatrix {
    g.linearize().clone()
}

pub fn is_unipotent(g: &AffTrans) -> bool {
    g.is_unipotent()
}
