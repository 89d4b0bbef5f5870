use std::sync::Arc;

use crate::affine::AffTrans;
use crate::closure::{ClosureData, DeclaredHull, GroupPresentation, PresentationSpec};
use crate::error::{Error, Result};
use crate::exactalg::QMatrix;
use crate::nilgroup::{same_algebra, AdaptedSubalgebra, AlgebraRef, GroupPoint};

use super::fixed::FixedCoset;

/// The chart `p(m) = m * n0` of an invariant coset `M n0` and the induced restriction map
/// `r_M(g) = p^-1 . g . p` into `Aff(M)`.
#[derive(Debug, Clone)]
pub struct Restriction {
    coset: FixedCoset,
    sub: AdaptedSubalgebra,
    algebra: AlgebraRef,
}

impl Restriction {
    pub fn new(coset: &FixedCoset) -> Result<Self> {
        if coset.is_empty() {
            return Err(Error::NotInvariant("cannot restrict to an empty coset".into()));
        }
        let sub = coset.subalgebra()?;
        Ok(Restriction {
            coset: coset.clone(),
            algebra: Arc::new(sub.algebra.clone()),
            sub,
        })
    }

    /// The algebra of `M`, in the adapted basis.
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coset(&self) -> &FixedCoset {
        &self.coset
    }

    pub fn adapted(&self) -> &AdaptedSubalgebra {
        &self.sub
    }

    /// The inclusion `M -> N`.
    pub fn embed(&self, m: &GroupPoint) -> Result<GroupPoint> {
        if !same_algebra(m.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        GroupPoint::new(self.coset.algebra(), self.embed_vec(m.coords()))
    }

    fn embed_vec(&self, coords: &[crate::exactalg::Rat]) -> Vec<crate::exactalg::Rat> {
        if self.sub.basis.is_empty() {
            crate::exactalg::zero_vec(self.coset.algebra().dim())
        } else {
            self.sub.embed(coords)
        }
    }

    /// `p(m) = m * n0`.
    pub fn chart(&self, m: &GroupPoint) -> Result<GroupPoint> {
        self.embed(m)?.multiply(self.coset.basepoint())
    }

    /// `p^-1(n)`, for `n` on the coset.
    pub fn chart_inverse(&self, n: &GroupPoint) -> Result<GroupPoint> {
        let m = n.multiply(&self.coset.basepoint().inverse())?;
        let coords = self
            .sub
            .coordinates(m.log())
            .ok_or_else(|| Error::NotInvariant("point is not on the coset".into()))?;
        GroupPoint::new(&self.algebra, coords)
    }

    /// `r_M(g)`: translation `m0 = x D(n0) n0^-1`, linear part `Ad(m0^-1) Ad(x) D` on `Lie(M)`.
    pub fn restrict(&self, g: &AffTrans) -> Result<AffTrans> {
        if !same_algebra(g.algebra(), self.coset.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let n0 = self.coset.basepoint();
        let m0 = g.act(n0)?.multiply(&n0.inverse())?;
        let t = self
            .sub
            .coordinates(m0.log())
            .ok_or_else(|| Error::NotInvariant("the basepoint is moved off the coset".into()))?;
        let a = m0.inverse().adjoint().dot(&g.translation().adjoint()).dot(g.auto().matrix());
        let k = self.sub.basis.len();
        let mut d = QMatrix::zeros(k, k);
        for (j, b) in self.sub.basis.iter().enumerate() {
            let col = self
                .sub
                .coordinates(&a.apply(b))
                .ok_or_else(|| Error::NotInvariant("the differential does not preserve the coset direction".into()))?;
            for (i, v) in col.into_iter().enumerate() {
                d[(i, j)] = v;
            }
        }
        AffTrans::from_parts(&self.algebra, t, d)
    }

    /// The presentation acting on `M` through `r_M`.
    ///
    /// Holonomy tags are passed to the quotient of the tag image by the tags whose Levi elements
    /// act trivially on `M`; `closure` must be the closure of `pres`.
    pub fn restrict_presentation(&self, pres: &GroupPresentation, closure: Option<&ClosureData>) -> Result<GroupPresentation> {
        let restrict_named = |i: usize, g: &AffTrans| {
            self.restrict(g).map_err(|e| match e {
                Error::NotInvariant(m) => Error::NotInvariant(format!("generator `{}`: {m}", pres.names()[i])),
                e => e,
            })
        };
        let generators = pres
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| restrict_named(i, g))
            .collect::<Result<Vec<_>>>()?;
        let f = pres.holonomy();
        let image: Vec<usize> = f.generated(pres.tags());
        let (sub, emb) = f.subgroup(&image)?;
        let pos = |t: usize| emb.iter().position(|&e| e == t).expect("tag in image");
        let mut trivial = vec![pos(f.identity())];
        if let Some(c) = closure {
            for l in &c.levi.elements {
                if l.tag != f.identity() && self.restrict(&l.element)?.is_identity() {
                    trivial.push(pos(l.tag));
                }
            }
        }
        let (quot, proj) = sub.quotient(&trivial)?;
        let tags = pres.tags().iter().map(|&t| proj[pos(t)]).collect();
        let declared_hull = match pres.declared_hull() {
            None => None,
            Some(h) => Some(DeclaredHull {
                torus: h.torus.iter().map(|g| self.restrict(g)).collect::<Result<_>>()?,
                unipotent: h.unipotent.iter().map(|g| self.restrict(g)).collect::<Result<_>>()?,
                density_asserted: h.density_asserted,
            }),
        };
        GroupPresentation::new(PresentationSpec {
            algebra: self.algebra.clone(),
            names: pres.names().to_vec(),
            generators,
            relators: pres.relators().to_vec(),
            holonomy: Some((quot, tags)),
            series: None,
            declared_hull,
            discrete: pres.is_discrete(),
        })
    }
}

/// Restricts a presentation to an invariant coset; returns the new presentation and the chart.
pub fn restrict_action(pres: &GroupPresentation, coset: &FixedCoset) -> Result<(GroupPresentation, Restriction)> {
    let r = Restriction::new(coset)?;
    let closure = if pres.holonomy().order() > 1 && pres.declared_hull().is_none() {
        Some(ClosureData::compute(pres)?)
    } else {
        None
    };
    let restricted = r.restrict_presentation(pres, closure.as_ref())?;
    Ok((restricted, r))
}
