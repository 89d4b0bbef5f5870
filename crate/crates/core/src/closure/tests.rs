use std::sync::Arc;

use super::*;
use crate::affine::AffTrans;
use crate::exactalg::{int, rat, QMatrix, Rat};
use crate::nilgroup::{AlgebraRef, NilLieAlgebra};

fn plane() -> AlgebraRef {
    Arc::new(NilLieAlgebra::abelian(2))
}

fn t(alg: &AlgebraRef, x: Vec<Rat>, d: &[i64]) -> AffTrans {
    let n = alg.dim();
    AffTrans::from_parts(alg, x, QMatrix::from_i64(n, n, d)).unwrap()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn z2() -> GroupPresentation {
    let a = plane();
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
    let a = plane();
    let mut spec = PresentationSpec::new(
        &a,
        names(&["g1", "g2"]),
        vec![
            t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]),
            t(&a, vec![rat(1, 2), int(1)], &[1, 1, 0, 1]),
        ],
    );
    spec.relators = vec![Word::parse("g1 g2 g1^-1 g2^-1", &spec.names).unwrap()];
    spec.discrete = true;
    spec.series = Some(vec![SeriesFactor::Infinite, SeriesFactor::Infinite]);
    GroupPresentation::new(spec).unwrap()
}

fn klein() -> GroupPresentation {
    let a = plane();
    let mut spec = PresentationSpec::new(
        &a,
        names(&["a", "b"]),
        vec![
            t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]),
            t(&a, vec![int(0), rat(1, 2)], &[-1, 0, 0, 1]),
        ],
    );
    spec.relators = vec![Word::parse("b a b^-1 a", &spec.names).unwrap()];
    spec.holonomy = Some((FiniteGroup::cyclic(2, "s"), vec![0, 1]));
    spec.series = Some(vec![SeriesFactor::Infinite, SeriesFactor::Infinite]);
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

#[test]
fn klein_kernel_generators() {
    let k = klein();
    let kernel = holonomy_kernel(&k).unwrap();
    let words: Vec<String> = kernel.iter().map(|e| e.word.fmt_with(k.names())).collect();
    assert!(words.contains(&"a".to_string()));
    assert!(words.contains(&"b^2".to_string()));
    let b2 = kernel.iter().find(|e| e.word.fmt_with(k.names()) == "b^2").unwrap();
    assert_eq!(b2.element, t(k.algebra(), vec![int(0), int(1)], &[1, 0, 0, 1]));
    assert!(kernel.iter().all(|e| e.element.is_unipotent()));
}

#[test]
fn trivial_holonomy_kernel_is_generators() {
    let z = z2();
    let kernel = holonomy_kernel(&z).unwrap();
    assert_eq!(kernel.len(), 2);
    assert_eq!(kernel[0].element, z.generators()[0]);
    assert_eq!(kernel[1].element, z.generators()[1]);
}

#[test]
fn example_closure_and_translation_like() {
    let p = poly_z2();
    let c = ClosureData::compute(&p).unwrap();
    assert_eq!(c.unipotent_dim(), 2);
    let e12_e23 = QMatrix::unit(3, 0, 1).plus(&QMatrix::unit(3, 1, 2));
    assert_eq!(c.unipotent_log_basis, vec![e12_e23.clone(), QMatrix::unit(3, 0, 2)]);
    let v = translation_verdict(&c);
    assert!(!v.translation_like);
    assert_eq!(v.witness, Some(e12_e23.clone()));
    assert_eq!(unit_sum_string(&e12_e23), "E12 + E23");
    let cr = crystallographic_verdict(&p, &c).unwrap();
    assert!(cr.crystallographic);
    assert_eq!((cr.dim_u, cr.hirsch, cr.dim_n), (2, 2, 2));
}

#[test]
fn standard_lattice() {
    let z = z2();
    let c = ClosureData::compute(&z).unwrap();
    assert_eq!(
        c.unipotent_log_basis,
        vec![QMatrix::unit(3, 0, 2), QMatrix::unit(3, 1, 2)]
    );
    assert!(translation_verdict(&c).translation_like);
    assert_eq!(hirsch_length(&z).unwrap(), 2);
    assert!(check_hull_axioms(&z, &c).all_pass());
    assert!(is_crystallographic(&z).unwrap().crystallographic);
    let sub = z.subgroup(&[0]).unwrap();
    let cr = is_crystallographic(&sub).unwrap();
    assert!(!cr.crystallographic);
    assert_eq!(cr.hirsch, 1);
}

#[test]
fn klein_hull() {
    let k = klein();
    let c = ClosureData::compute(&k).unwrap();
    assert!(translation_verdict(&c).translation_like);
    assert_eq!(hirsch_length(&k).unwrap(), 2);
    let levi = &c.levi;
    assert_eq!(levi.generators().len(), 1);
    let l = levi.generators()[0];
    assert!(l.compose(l).unwrap().is_identity());
    assert!(crate::exactalg::is_semisimple(l.linearize()));
    let report = check_hull_axioms(&k, &c);
    assert!(report.all_pass(), "{report:?}");
    assert!(report.axioms.iter().all(|a| a.status == AxiomStatus::Pass));
}

#[test]
fn semisimple_generator_fails_axioms() {
    let line = Arc::new(NilLieAlgebra::abelian(1));
    let g = t(&line, vec![int(0)], &[2]);
    let mut spec = PresentationSpec::new(&line, names(&["g"]), vec![g.clone()]);
    assert!(matches!(GroupPresentation::new(spec.clone()), Err(crate::Error::ScopeViolation(_))));
    spec.declared_hull = Some(DeclaredHull {
        torus: vec![g],
        unipotent: vec![],
        density_asserted: true,
    });
    spec.series = Some(vec![SeriesFactor::Infinite]);
    let p = GroupPresentation::new(spec).unwrap();
    let c = ClosureData::compute(&p).unwrap();
    assert_eq!(c.unipotent_dim(), 0);
    let r = check_hull_axioms(&p, &c);
    assert_eq!(r.axioms[0].status, AxiomStatus::Asserted);
    assert_eq!(r.axioms[1].status, AxiomStatus::Fail);
    assert_eq!(r.axioms[1].detail, "dim U = 0 != 1 = h");
}

#[test]
fn relator_and_tag_violations() {
    let a = plane();
    let gens = vec![t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]), t(&a, vec![int(0), rat(1, 2)], &[-1, 0, 0, 1])];
    let mut spec = PresentationSpec::new(&a, names(&["a", "b"]), gens);
    spec.relators = vec![Word::parse("b a b^-1 a^-1", &spec.names).unwrap()];
    spec.holonomy = Some((FiniteGroup::cyclic(2, "s"), vec![0, 1]));
    assert!(matches!(GroupPresentation::new(spec.clone()), Err(crate::Error::RelatorViolated(_))));
    spec.relators = vec![Word::parse("b^2 a^0", &spec.names).unwrap()];
    assert!(GroupPresentation::new(spec.clone()).is_err());
    spec.relators = vec![Word::parse("b a b^-1 a", &spec.names).unwrap()];
    spec.holonomy = Some((FiniteGroup::cyclic(3, "s"), vec![1, 1]));
    assert!(matches!(GroupPresentation::new(spec), Err(crate::Error::InvalidPresentation(_))));
}

#[test]
fn heisenberg_lattice_radical() {
    let h = Arc::new(NilLieAlgebra::heisenberg());
    let id = &[1, 0, 0, 0, 1, 0, 0, 0, 1];
    let gens = vec![
        t(&h, vec![int(1), int(0), int(0)], id),
        t(&h, vec![int(0), int(1), int(0)], id),
    ];
    let mut spec = PresentationSpec::new(&h, names(&["x", "y"]), gens);
    spec.discrete = true;
    let p = GroupPresentation::new(spec).unwrap();
    let c = ClosureData::compute(&p).unwrap();
    assert_eq!(c.unipotent_dim(), 3);
    assert_eq!(c.unipotent.algebra.weights(), &[1, 1, 2]);
    assert!(translation_verdict(&c).translation_like);
    assert_eq!(hirsch_length(&p).unwrap(), 3);
}
