use crate::affine::{identity_polys, AffMap, AffTrans};
use crate::closure::{
    translation_verdict, unit_sum_string, ClosureData, GroupPresentation, PresentationSpec, TranslationSpace, Word,
};
use crate::error::{Error, Result};
use crate::exactalg::{kernel, QMatrix, Rat};
use crate::nilgroup::{GroupPoint, LieMorphism};

use super::fixed::{fixed_points_reductive, FixedCoset, ReductiveKind};
use super::group::{Certificate, GroupMorphism};
use super::hull::extend_to_hulls;
use super::restrict::Restriction;

/// The subgroup `phi(Gamma_1)` of the target, presented on the source generators.
pub fn image_presentation(phi: &GroupMorphism) -> Result<GroupPresentation> {
    let (src, tgt) = (phi.source(), phi.target());
    let tags = phi.images().iter().map(|w| tgt.tag_of_word(w)).collect();
    GroupPresentation::new(PresentationSpec {
        algebra: tgt.algebra().clone(),
        names: src.names().to_vec(),
        generators: (0..src.len()).map(|i| phi.image_of_generator(i)).collect(),
        relators: src.relators().to_vec(),
        holonomy: Some((tgt.holonomy().clone(), tags)),
        series: None,
        declared_hull: None,
        discrete: tgt.is_discrete(),
    })
}

/// True when `rho_2(phi(w)) . alpha = alpha . rho_1(w)` holds as an identity of polynomial maps.
pub fn intertwines(phi: &GroupMorphism, alpha: &AffMap, w: &Word) -> bool {
    let vars = identity_polys(phi.source().algebra().dim());
    let lhs = phi.image(w).act_poly(&alpha.apply_poly(&vars));
    let rhs = alpha.apply_poly(&phi.source().eval_word(w).act_poly(&vars));
    lhs == rhs
}

/// The first generator (by name) on which `alpha` fails to intertwine, if any.
pub fn verify_intertwining(phi: &GroupMorphism, alpha: &AffMap) -> Option<String> {
    (0..phi.source().len())
        .find(|&i| !intertwines(phi, alpha, &Word::generator(i)))
        .map(|i| phi.source().names()[i].clone())
}

fn check_source(src: &GroupPresentation) -> Result<ClosureData> {
    let c = ClosureData::compute(src)?;
    let v = translation_verdict(&c);
    if !v.translation_like {
        let w = v.witness.as_ref().map_or(String::new(), unit_sum_string);
        return Err(Error::NotTranslationLike(format!(
            "witness log {w} is not a left translation; use the polynomial pipeline"
        )));
    }
    let n = src.algebra().dim();
    if c.unipotent_dim() != n {
        return Err(Error::NotCrystallographic(format!(
            "dim U = {} but dim N = {n}",
            c.unipotent_dim()
        )));
    }
    Ok(c)
}

/// Everything computed on the way to the intertwining affine map.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub map: AffMap,
    /// The orbit `U x0` of the image closure's unipotent radical through the Levi fixed point.
    pub image_coset: FixedCoset,
    pub image_unipotent_dim: usize,
}

/// An affine map `alpha` with `rho_2(phi(g)) . alpha = alpha . rho_1(g)`.
///
/// Follows the image: close up `phi(Gamma_1)`, fix a point `x0` of its Levi part, restrict to
/// the orbit `U x0`, extend the now surjective morphism to the hulls, and take the translation
/// part from a fixed point of the image of the stabilizer of `e`.
pub fn induce_affine_map(phi: &GroupMorphism) -> Result<InducedMap> {
    let (src, tgt) = (phi.source(), phi.target());
    let c1 = check_source(src)?;
    let c2 = ClosureData::compute(tgt)?;
    let v2 = translation_verdict(&c2);
    if !v2.translation_like {
        let w = v2.witness.as_ref().map_or(String::new(), unit_sum_string);
        return Err(Error::TargetNotTranslationLike(format!("witness log {w}")));
    }

    let image = image_presentation(phi)?;
    let ci = ClosureData::compute(&image)?;
    let levi: Vec<AffTrans> = ci.levi.generators().into_iter().cloned().collect();
    let fixed = fixed_points_reductive(tgt.algebra(), &levi, ReductiveKind::Finite)?;
    let ts2 = TranslationSpace::of(&ci.linearization);
    let directions = ci
        .unipotent_log_basis
        .iter()
        .map(|m| ts2.to_algebra(m))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("image radical is not made of translations".into()))?;
    let coset = FixedCoset::new(tgt.algebra(), directions, fixed.basepoint().clone())?;
    let restriction = Restriction::new(&coset)?;
    let restricted = restriction.restrict_presentation(&image, Some(&ci))?;

    let onto_words: Vec<Word> = (0..src.len()).map(Word::generator).collect();
    let phi_m = GroupMorphism::new(src.clone(), restricted.clone(), onto_words.clone())?;
    let hull = extend_to_hulls(&phi_m, Some(&Certificate { words: onto_words }))?;
    let cm = &hull.target_closure;

    // delta on N_1 -> M in algebra coordinates
    let ts1 = TranslationSpace::of(&c1.linearization);
    let tsm = TranslationSpace::of(&cm.linearization);
    let alg_m = restriction.algebra().clone();
    let n1 = src.algebra().dim();
    let mut cols = Vec::with_capacity(n1);
    for i in 0..n1 {
        let e = crate::exactalg::unit_vector(n1, i);
        let u = c1
            .log_coordinates(&ts1.from_algebra(&e))
            .ok_or_else(|| Error::Internal("translation outside the source radical".into()))?;
        let img = cm.log_from_coordinates(&hull.unipotent_part.apply_vec(&u));
        let v = tsm
            .to_algebra(&img)
            .ok_or_else(|| Error::Internal("restricted image is not a translation".into()))?;
        cols.push(v);
    }
    let delta_m = LieMorphism::new(src.algebra(), &alg_m, QMatrix::from_columns(alg_m.dim(), &cols))?;

    // image of the stabilizer of e: L_{delta(x)}^-1 r(phi(g)) for g = (x, D)
    let mut stab = Vec::with_capacity(src.len());
    for (i, g) in src.generators().iter().enumerate() {
        let shift = AffTrans::left_translation(&delta_m.apply(g.translation())?.inverse());
        stab.push(shift.compose(restricted.generator(i))?);
    }
    let fixed_m = fixed_points_reductive(&alg_m, &stab, ReductiveKind::Finite)?;
    let x = restriction.chart(fixed_m.basepoint())?;

    let embed_cols: Vec<Vec<Rat>> = cols.iter().map(|c| restriction.adapted().embed(c)).collect();
    let n2 = tgt.algebra().dim();
    let delta_matrix = if alg_m.dim() == 0 {
        QMatrix::zeros(n2, n1)
    } else {
        QMatrix::from_columns(n2, &embed_cols)
    };
    let delta = LieMorphism::new(src.algebra(), tgt.algebra(), delta_matrix)?;
    let map = AffMap::new(x, delta)?;
    if let Some(g) = verify_intertwining(phi, &map) {
        return Err(Error::Internal(format!("constructed map fails to intertwine on `{g}`")));
    }
    Ok(InducedMap {
        map,
        image_coset: coset,
        image_unipotent_dim: ci.unipotent_dim(),
    })
}

/// The unique `delta` and the coset of all valid translation parts.
#[derive(Debug, Clone)]
pub struct Classification {
    pub delta: LieMorphism,
    pub translations: FixedCoset,
    pub induced: AffMap,
}

/// All affine maps intertwining the two actions along `phi`.
///
/// With `delta` fixed, `(x', delta)` intertwines exactly when `x^-1 x'` is fixed by the linear
/// parts of every `rho_2(phi(g))`, so the translation parts form the coset `x W`, written here
/// as the right coset `(x W x^-1) x`.
pub fn classify_affine_maps(phi: &GroupMorphism) -> Result<Classification> {
    let induced = induce_affine_map(phi)?.map;
    let tgt = phi.target();
    let n = tgt.algebra().dim();
    let mut rows = Vec::new();
    for i in 0..phi.source().len() {
        let e = phi.image_of_generator(i).auto().matrix().minus(&QMatrix::identity(n));
        for r in 0..n {
            rows.push(e.row(r).to_vec());
        }
    }
    let w = if rows.is_empty() {
        (0..n).map(|i| crate::exactalg::unit_vector(n, i)).collect()
    } else {
        kernel(&QMatrix::from_rows(rows)?)
    };
    let x = induced.translation().clone();
    let ad = x.adjoint();
    let basis = w.iter().map(|v| ad.apply(v)).collect();
    let translations = FixedCoset::new(tgt.algebra(), basis, x)?;
    Ok(Classification {
        delta: induced.morphism().clone(),
        translations,
        induced,
    })
}

/// Whether `phi(Gamma_1)` acts cocompactly on the coset `alpha(N_1)`: the unipotent radical of
/// the image closure has the dimension of the image of `delta`.
pub fn image_coset_cocompact(phi: &GroupMorphism, alpha: &AffMap) -> Result<bool> {
    let ci = ClosureData::compute(&image_presentation(phi)?)?;
    Ok(ci.unipotent_dim() == alpha.morphism().rank())
}

/// `(x, delta)` as a map, for callers that pick a translation part from a classification.
pub fn with_translation(c: &Classification, x: GroupPoint) -> Result<AffMap> {
    AffMap::new(x, c.delta.clone())
}
