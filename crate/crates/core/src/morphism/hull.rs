use std::sync::Arc;

use crate::affine::AffTrans;
use crate::closure::{check_hull_axioms, ClosureData, GroupPresentation, Word};
use crate::error::{Error, Result};
use crate::exactalg::{is_semisimple, nilpotent_exp, rank_of, QMatrix, Rat};
use crate::nilgroup::{extend_from_lattice, AlgebraRef, GroupPoint, LieMorphism};

use super::group::{Certificate, GroupMorphism};

/// The image of one Levi element of the source hull.
#[derive(Debug, Clone)]
pub struct LeviImage {
    pub tag: usize,
    pub source: AffTrans,
    pub image: AffTrans,
}

/// The extension of a surjective group morphism to the algebraic hulls.
#[derive(Debug, Clone)]
pub struct HullMorphism {
    /// Lie morphism between the unipotent radicals, in their adapted bases.
    pub unipotent_part: LieMorphism,
    pub levi_part: Vec<LeviImage>,
    pub source_closure: ClosureData,
    pub target_closure: ClosureData,
}

impl HullMorphism {
    pub fn source_unipotent(&self) -> &AlgebraRef {
        self.unipotent_part.source()
    }

    pub fn target_unipotent(&self) -> &AlgebraRef {
        self.unipotent_part.target()
    }
}

fn axioms_ok(label: &str, pres: &GroupPresentation, c: &ClosureData) -> Result<()> {
    let report = check_hull_axioms(pres, c);
    if let Some((k, a)) = report
        .axioms
        .iter()
        .enumerate()
        .find(|(_, a)| a.status != crate::closure::AxiomStatus::Pass)
    {
        return Err(Error::HullAxiomsFailed(format!("{label} axiom ({}) {}: {}", k + 1, a.status, a.detail)));
    }
    Ok(())
}

fn commutator(a: &Word, b: &Word) -> Word {
    a.concat(b).concat(&a.inverse()).concat(&b.inverse())
}

/// Source words whose unipotent logs span the source radical: the holonomy kernel generators,
/// extended by commutators when their logs alone do not span.
fn spanning_words(c: &ClosureData) -> Result<Vec<(Word, Vec<Rat>)>> {
    let mut out = Vec::new();
    for k in &c.kernel {
        let v = c
            .log_coordinates(&k.log)
            .ok_or_else(|| Error::Internal("kernel log outside the radical".into()))?;
        out.push((k.word.clone(), v));
    }
    let dim = c.unipotent_dim();
    let base: Vec<(Word, QMatrix)> = c.kernel.iter().map(|k| (k.word.clone(), k.element.linearize().clone())).collect();
    let mut frontier = base.clone();
    for _ in 0..=dim {
        let vecs: Vec<Vec<Rat>> = out.iter().map(|(_, v)| v.clone()).collect();
        if rank_of(&vecs) == dim {
            return Ok(out);
        }
        let mut next = Vec::new();
        for (wa, ma) in &base {
            for (wb, mb) in &frontier {
                let m = ma.dot(mb).dot(&ma.inverse()?).dot(&mb.inverse()?);
                let log = crate::exactalg::nilpotent_log(&m)?;
                let v = c
                    .log_coordinates(&log)
                    .ok_or_else(|| Error::Internal("commutator log outside the radical".into()))?;
                let w = commutator(wa, wb);
                out.push((w.clone(), v));
                next.push((w, m));
            }
        }
        frontier = next;
    }
    Err(Error::Internal("kernel logs do not generate the unipotent radical".into()))
}

/// Extends a surjective morphism to the hulls.
///
/// Surjectivity must be certified by words expressing each target generator. The unipotent part
/// is the unique Lie morphism matching the images of holonomy-kernel elements; each Levi element
/// `exp(a) t` of the source maps to `exp(D a) phi(t)`, which must be semisimple and compatible
/// with the unipotent part.
pub fn extend_to_hulls(phi: &GroupMorphism, certificate: Option<&Certificate>) -> Result<HullMorphism> {
    let cert = certificate.ok_or(Error::CertificateRequired)?;
    cert.check(phi)?;
    let (src, tgt) = (phi.source(), phi.target());
    if src.declared_hull().is_some() || tgt.declared_hull().is_some() {
        return Err(Error::ScopeViolation("hull extension needs finite holonomy Levi parts".into()));
    }
    let c1 = ClosureData::compute(src)?;
    let c2 = ClosureData::compute(tgt)?;
    axioms_ok("source", src, &c1)?;
    axioms_ok("target", tgt, &c2)?;
    let a1: AlgebraRef = Arc::new(c1.unipotent.algebra.clone());
    let a2: AlgebraRef = Arc::new(c2.unipotent.algebra.clone());

    let pairs = spanning_words(&c1)?;
    let mut points = Vec::new();
    let mut images = Vec::new();
    for (w, v) in &pairs {
        let img = phi.image(w);
        let log = img.linear_log().map_err(|_| {
            Error::NoExtension(format!(
                "image of unipotent element `{}` is not unipotent",
                w.fmt_with(src.names())
            ))
        })?;
        let coords = c2.log_coordinates(&log).ok_or_else(|| {
            Error::NoExtension(format!(
                "image of `{}` lies outside the target unipotent radical",
                w.fmt_with(src.names())
            ))
        })?;
        points.push(GroupPoint::new(&a1, v.clone())?);
        images.push(GroupPoint::new(&a2, coords)?);
    }
    let d = if a1.dim() == 0 {
        LieMorphism::zero(&a1, &a2)
    } else {
        extend_from_lattice(&points, &images).map_err(|e| match e {
            Error::Inconsistent(m) | Error::InvalidMorphism(m) => Error::NoExtension(m),
            e => e,
        })?
    };

    let mut levi_part = Vec::new();
    for l in &c1.levi.elements {
        let a = c1
            .log_coordinates(&l.correction)
            .ok_or_else(|| Error::Internal("Levi correction outside the radical".into()))?;
        let shift = nilpotent_exp(&c2.log_from_coordinates(&d.apply_vec(&a)))?;
        let m = shift.dot(phi.image(&l.transversal).linearize());
        let tag_name = &src.holonomy().names()[l.tag];
        if !is_semisimple(&m) {
            return Err(Error::NoExtension(format!("image of the Levi element for `{tag_name}` is not semisimple")));
        }
        let m_inv = m.inverse()?;
        let l_mat = l.element.linearize();
        let l_inv = l_mat.inverse()?;
        for (j, x) in c1.unipotent_log_basis.iter().enumerate() {
            let lhs = c1
                .log_coordinates(&l_mat.dot(x).dot(&l_inv))
                .ok_or_else(|| Error::Internal("Levi element does not normalize the radical".into()))?;
            let dx = c2.log_from_coordinates(&d.apply_vec(&crate::exactalg::unit_vector(a1.dim(), j)));
            let rhs = c2.log_coordinates(&m.dot(&dx).dot(&m_inv));
            if rhs.as_deref() != Some(&d.apply_vec(&lhs)[..]) {
                return Err(Error::NoExtension(format!(
                    "image of the Levi element for `{tag_name}` is not compatible with the unipotent part"
                )));
            }
        }
        levi_part.push(LeviImage {
            tag: l.tag,
            source: l.element.clone(),
            image: c2.linearization.recover(&m)?,
        });
    }
    Ok(HullMorphism {
        unipotent_part: d,
        levi_part,
        source_closure: c1,
        target_closure: c2,
    })
}
