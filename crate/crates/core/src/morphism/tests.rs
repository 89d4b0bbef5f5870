use std::sync::Arc;

use super::*;
use crate::affine::AffTrans;
use crate::closure::{FiniteGroup, GroupPresentation, PresentationSpec, SeriesFactor, Word};
use crate::exactalg::{int, rat, QMatrix, Rat};
use crate::nilgroup::{AlgebraRef, GroupPoint, NilLieAlgebra};
use crate::Error;

fn t(alg: &AlgebraRef, x: Vec<Rat>, d: &[i64]) -> AffTrans {
    let n = alg.dim();
    AffTrans::from_parts(alg, x, QMatrix::from_i64(n, n, d)).unwrap()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn words(p: &GroupPresentation, xs: &[&str]) -> Vec<Word> {
    xs.iter().map(|w| p.parse_word(w).unwrap()).collect()
}

fn line_z() -> GroupPresentation {
    let a = Arc::new(NilLieAlgebra::abelian(1));
    let mut spec = PresentationSpec::new(&a, names(&["t"]), vec![t(&a, vec![int(1)], &[1])]);
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn z2() -> GroupPresentation {
    let a = Arc::new(NilLieAlgebra::abelian(2));
    let mut spec = PresentationSpec::new(
        &a,
        names(&["a", "b"]),
        vec![t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]), t(&a, vec![int(0), int(1)], &[1, 0, 0, 1])],
    );
    spec.relators = vec![Word::parse("a b a^-1 b^-1", &spec.names).unwrap()];
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn poly_z2() -> GroupPresentation {
    let a = Arc::new(NilLieAlgebra::abelian(2));
    let mut spec = PresentationSpec::new(
        &a,
        names(&["a", "b"]),
        vec![t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]), t(&a, vec![rat(1, 2), int(1)], &[1, 1, 0, 1])],
    );
    spec.relators = vec![Word::parse("a b a^-1 b^-1", &spec.names).unwrap()];
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn klein() -> GroupPresentation {
    let a = Arc::new(NilLieAlgebra::abelian(2));
    let mut spec = PresentationSpec::new(
        &a,
        names(&["a", "b"]),
        vec![t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]), t(&a, vec![int(0), rat(1, 2)], &[-1, 0, 0, 1])],
    );
    spec.relators = vec![Word::parse("b a b^-1 a", &spec.names).unwrap()];
    spec.holonomy = Some((FiniteGroup::cyclic(2, "s"), vec![0, 1]));
    spec.series = Some(vec![SeriesFactor::Infinite, SeriesFactor::Infinite]);
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn z_to_klein() -> GroupMorphism {
    let k = klein();
    let img = words(&k, &["b"]);
    GroupMorphism::new(line_z(), k, img).unwrap()
}

#[test]
fn morphism_verification() {
    let k = klein();
    assert!(verify_morphism(&GroupMorphism::identity(&k)).is_ok());
    let inv = GroupMorphism::new(k.clone(), k.clone(), words(&k, &["a^-1", "b"]));
    assert!(inv.is_ok());
    let swap = GroupMorphism::unverified(k.clone(), k.clone(), words(&k, &["b", "a"])).unwrap();
    assert_eq!(
        verify_morphism(&swap),
        Err(Error::RelatorViolated("b a b^-1 a".into()))
    );
}

#[test]
fn fixed_points_of_small_groups() {
    let plane: AlgebraRef = Arc::new(NilLieAlgebra::abelian(2));
    let triv = fixed_points_reductive(&plane, &[], ReductiveKind::Finite).unwrap();
    assert_eq!(triv.dim(), 2);
    assert!(triv.basepoint().is_identity());

    let refl = t(&plane, vec![int(0), int(0)], &[-1, 0, 0, 1]);
    let c = fixed_points_reductive(&plane, std::slice::from_ref(&refl), ReductiveKind::Finite).unwrap();
    assert_eq!(c.subalgebra_basis(), &[vec![int(0), int(1)]]);
    assert!(c.basepoint().is_identity());
    let on = GroupPoint::new(&plane, vec![int(0), rat(7, 3)]).unwrap();
    let off = GroupPoint::new(&plane, vec![rat(1, 5), int(1)]).unwrap();
    assert!(c.contains(&on) && refl.act(&on).unwrap() == on);
    assert!(!c.contains(&off) && refl.act(&off).unwrap() != off);

    let line: AlgebraRef = Arc::new(NilLieAlgebra::abelian(1));
    let flip = t(&line, vec![int(3)], &[-1]);
    let p = fixed_points_reductive(&line, std::slice::from_ref(&flip), ReductiveKind::Finite).unwrap();
    assert_eq!(p.dim(), 0);
    assert_eq!(p.basepoint().coords(), &[rat(3, 2)]);
    let q = fixed_points_reductive(&line, &[flip], ReductiveKind::Torus).unwrap();
    assert_eq!(q.basepoint().coords(), &[rat(3, 2)]);
}

#[test]
fn heisenberg_torus_fixed_point() {
    let h: AlgebraRef = Arc::new(NilLieAlgebra::heisenberg());
    // diag(2, 1/2, 1) is an automorphism; conjugate it by a translation to move the fixed point
    let d = QMatrix::diagonal(&[int(2), rat(1, 2), int(1)]);
    let s = AffTrans::from_parts(&h, vec![int(0), int(0), int(0)], d).unwrap();
    let c = AffTrans::from_parts(&h, vec![int(1), int(2), int(3)], QMatrix::identity(3)).unwrap();
    let g = c.conjugate(&s).unwrap();
    let fix = fixed_points_reductive(&h, std::slice::from_ref(&g), ReductiveKind::Torus).unwrap();
    assert_eq!(g.act(fix.basepoint()).unwrap(), *fix.basepoint());
    assert_eq!(fix.dim(), 1);
    let p = fix.point_at(&[rat(5, 7)]).unwrap();
    assert_eq!(g.act(&p).unwrap(), p);
}

#[test]
fn restriction_to_the_klein_line() {
    let k = klein();
    let plane = k.algebra().clone();
    let coset = FixedCoset::new(&plane, vec![vec![int(0), int(1)]], GroupPoint::identity(&plane)).unwrap();
    let r = Restriction::new(&coset).unwrap();
    let rb = r.restrict(k.generator(1)).unwrap();
    assert_eq!(rb.translation().coords(), &[rat(1, 2)]);
    assert!(rb.auto().matrix().is_identity());
    assert!(r.restrict(&AffTrans::identity(&plane)).unwrap().is_identity());
    assert!(matches!(r.restrict(k.generator(0)), Err(Error::NotInvariant(_))));

    let whole = Restriction::new(&FixedCoset::whole(&plane)).unwrap();
    for g in k.generators() {
        let rg = whole.restrict(g).unwrap();
        assert_eq!(rg.translation().coords(), g.translation().coords());
        assert_eq!(rg.auto().matrix(), g.auto().matrix());
    }
}

#[test]
fn hull_extension_of_identity_and_quotient() {
    let z = z2();
    let id = GroupMorphism::identity(&z);
    let cert = Certificate { words: words(&z, &["a", "b"]) };
    let h = extend_to_hulls(&id, Some(&cert)).unwrap();
    assert!(h.unipotent_part.matrix().is_identity());

    let k = klein();
    let zl = line_z();
    let q = GroupMorphism::new(k.clone(), zl.clone(), words(&zl, &["1", "t"])).unwrap();
    let cert = Certificate { words: words(&k, &["b"]) };
    let h = extend_to_hulls(&q, Some(&cert)).unwrap();
    // radical bases: [E13, E23] on the plane, [E12] on the line
    assert_eq!(h.unipotent_part.matrix(), &QMatrix::from_i64(1, 2, &[0, 2]));
    assert_eq!(h.levi_part.len(), 2);
    assert!(h.levi_part.iter().all(|l| l.image.is_identity()));

    let bad = Certificate { words: words(&k, &["a"]) };
    assert!(matches!(extend_to_hulls(&q, Some(&bad)), Err(Error::InvalidCertificate(_))));
}

#[test]
fn non_surjective_extension_needs_certificate() {
    let phi = z_to_klein();
    let err = extend_to_hulls(&phi, None).unwrap_err();
    assert_eq!(err.to_string(), "surjectivity certificate required");
}

#[test]
fn induced_map_for_the_klein_line() {
    let phi = z_to_klein();
    let induced = induce_affine_map(&phi).unwrap();
    let alpha = &induced.map;
    assert_eq!(alpha.morphism().matrix(), &QMatrix::from_rows(vec![vec![int(0)], vec![rat(1, 2)]]).unwrap());
    assert_eq!(alpha.translation().coords()[0], int(0));
    assert!(verify_intertwining(&phi, alpha).is_none());
    assert!(image_coset_cocompact(&phi, alpha).unwrap());
    assert_eq!(induced.image_unipotent_dim, 1);

    let c = classify_affine_maps(&phi).unwrap();
    assert_eq!(c.delta, *alpha.morphism());
    assert_eq!(c.translations.subalgebra_basis(), &[vec![int(0), int(1)]]);
    let plane = phi.target().algebra().clone();
    let on = with_translation(&c, GroupPoint::new(&plane, vec![int(0), rat(-4, 3)]).unwrap()).unwrap();
    assert!(verify_intertwining(&phi, &on).is_none());
    let off = with_translation(&c, GroupPoint::new(&plane, vec![rat(1, 10), int(0)]).unwrap()).unwrap();
    assert_eq!(verify_intertwining(&phi, &off), Some("t".to_string()));
}

#[test]
fn induced_identity_and_trivial_maps() {
    let z = z2();
    let id = GroupMorphism::identity(&z);
    let alpha = induce_affine_map(&id).unwrap().map;
    assert!(alpha.morphism().matrix().is_identity());
    assert!(alpha.translation().is_identity());
    let c = classify_affine_maps(&id).unwrap();
    assert_eq!(c.translations.dim(), 2);
    assert!(image_coset_cocompact(&id, &alpha).unwrap());

    let triv = GroupMorphism::new(z.clone(), z.clone(), words(&z, &["1", "1"])).unwrap();
    let c = classify_affine_maps(&triv).unwrap();
    assert!(c.delta.matrix().is_zero());
    assert_eq!(c.translations.dim(), 2);
    assert!(image_coset_cocompact(&triv, &c.induced).unwrap());
}

#[test]
fn non_translation_like_source_is_refused() {
    let p = poly_z2();
    let z = z2();
    let phi = GroupMorphism::new(p, z.clone(), words(&z, &["a", "b"])).unwrap();
    let err = induce_affine_map(&phi).unwrap_err();
    assert!(matches!(err, Error::NotTranslationLike(_)));
    assert!(err.to_string().starts_with("source action not translation-like"));
}

#[test]
fn conjugate_presentations_give_invertible_maps() {
    let k = klein();
    let c = AffTrans::from_parts(k.algebra(), vec![rat(1, 3), int(2)], QMatrix::from_i64(2, 2, &[2, 0, 1, 1])).unwrap();
    let k2 = k.conjugated_by(&c).unwrap();
    let phi = GroupMorphism::new(k.clone(), k2.clone(), words(&k2, &["a", "b"])).unwrap();
    let alpha = induce_affine_map(&phi).unwrap().map;
    assert!(alpha.morphism().is_invertible());
    assert!(verify_intertwining(&phi, &alpha).is_none());
}
