use std::sync::Arc;

use nilaff::affine::AffTrans;
use nilaff::closure::{
    hirsch_length, is_translation_like, ClosureData, DeclaredHull, FiniteGroup, GroupPresentation, PresentationSpec,
    SeriesFactor, Word,
};
use nilaff::exactalg::{int, is_semisimple, rat, QMatrix, Rat};
use nilaff::morphism::{fixed_points_reductive, FixedCoset, ReductiveKind};
use nilaff::nilgroup::{AlgebraRef, GroupPoint, NilLieAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn t(alg: &AlgebraRef, x: Vec<Rat>, d: &[i64]) -> AffTrans {
    let n = alg.dim();
    AffTrans::from_parts(alg, x, QMatrix::from_i64(n, n, d)).unwrap()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn plane() -> AlgebraRef {
    Arc::new(NilLieAlgebra::abelian(2))
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
        names(&["a", "b"]),
        vec![t(&a, vec![int(1), int(0)], &[1, 0, 0, 1]), t(&a, vec![rat(1, 2), int(1)], &[1, 1, 0, 1])],
    );
    spec.relators = vec![Word::parse("a b a^-1 b^-1", &spec.names).unwrap()];
    spec.series = Some(vec![SeriesFactor::Infinite, SeriesFactor::Infinite]);
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn klein() -> GroupPresentation {
    let a = plane();
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

fn heisenberg() -> GroupPresentation {
    let h: AlgebraRef = Arc::new(NilLieAlgebra::heisenberg());
    let id = &[1, 0, 0, 0, 1, 0, 0, 0, 1];
    let mut spec = PresentationSpec::new(
        &h,
        names(&["x", "y", "z"]),
        vec![
            t(&h, vec![int(1), int(0), int(0)], id),
            t(&h, vec![int(0), int(1), int(0)], id),
            t(&h, vec![int(0), int(0), int(1)], id),
        ],
    );
    spec.relators = vec![
        Word::parse("x y x^-1 y^-1 z^-1", &spec.names).unwrap(),
        Word::parse("x z x^-1 z^-1", &spec.names).unwrap(),
        Word::parse("y z y^-1 z^-1", &spec.names).unwrap(),
    ];
    spec.series = Some(vec![SeriesFactor::Infinite; 3]);
    spec.discrete = true;
    GroupPresentation::new(spec).unwrap()
}

fn semisimple_z() -> GroupPresentation {
    let line: AlgebraRef = Arc::new(NilLieAlgebra::abelian(1));
    let g = t(&line, vec![int(0)], &[2]);
    let mut spec = PresentationSpec::new(&line, names(&["g"]), vec![g.clone()]);
    spec.declared_hull = Some(DeclaredHull {
        torus: vec![g],
        unipotent: vec![],
        density_asserted: true,
    });
    spec.series = Some(vec![SeriesFactor::Infinite]);
    GroupPresentation::new(spec).unwrap()
}

fn fixtures() -> Vec<(&'static str, GroupPresentation)> {
    vec![
        ("z2-standard", z2()),
        ("polyZ2", poly_z2()),
        ("klein", klein()),
        ("heisenberg", heisenberg()),
        ("semisimple-z", semisimple_z()),
    ]
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize) -> Word {
    let len = rng.gen_range(1..=4);
    Word::from_syllables((0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

/// A filtration-preserving automorphism of the fixture's algebra.
fn random_auto(rng: &mut ChaCha8Rng, alg: &AlgebraRef) -> QMatrix {
    loop {
        let v: Vec<Rat> = (0..6).map(|_| random_rat(rng)).collect();
        let det = &v[0] * &v[3] - &v[1] * &v[2];
        if det == int(0) {
            continue;
        }
        let z = int(0);
        let m = match alg.dim() {
            1 => QMatrix::from_rows(vec![vec![v[0].clone()]]),
            2 => QMatrix::from_rows(vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]]),
            _ => QMatrix::from_rows(vec![
                vec![v[0].clone(), v[1].clone(), z.clone()],
                vec![v[2].clone(), v[3].clone(), z],
                vec![v[4].clone(), v[5].clone(), det],
            ]),
        }
        .unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn unipotent_dimension_bounded_by_hirsch_length() {
    for (name, p) in fixtures() {
        let c = ClosureData::compute(&p).unwrap();
        let h = hirsch_length(&p).unwrap();
        assert!(c.unipotent_dim() <= h, "{name}: dim U = {} > h = {h}", c.unipotent_dim());
    }
}

#[test]
fn translation_like_is_stable_under_subgroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, p) in fixtures() {
        if p.declared_hull().is_some() || !is_translation_like(&p).unwrap().translation_like {
            continue;
        }
        for _ in 0..25 {
            let k = rng.gen_range(1..=3);
            let ws: Vec<Word> = (0..k).map(|_| random_word(&mut rng, p.len())).collect();
            let mut spec = PresentationSpec::new(
                p.algebra(),
                (0..k).map(|i| format!("w{i}")).collect(),
                ws.iter().map(|w| p.eval_word(w)).collect(),
            );
            spec.holonomy = Some((p.holonomy().clone(), ws.iter().map(|w| p.tag_of_word(w)).collect()));
            let sub = GroupPresentation::new(spec).unwrap();
            assert!(is_translation_like(&sub).unwrap().translation_like, "{name}: subgroup {ws:?}");
        }
    }
}

#[test]
fn translation_like_is_stable_under_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, p) in fixtures() {
        let before = is_translation_like(&p).unwrap().translation_like;
        for _ in 0..25 {
            let alg = p.algebra();
            let x = (0..alg.dim()).map(|_| random_rat(&mut rng)).collect();
            let c = AffTrans::from_parts(alg, x, random_auto(&mut rng, alg)).unwrap();
            let q = p.conjugated_by(&c).unwrap();
            assert_eq!(is_translation_like(&q).unwrap().translation_like, before, "{name}: conjugator {c}");
        }
    }
}

#[test]
fn levi_elements_are_semisimple_and_normalize() {
    for (name, p) in fixtures() {
        let c = ClosureData::compute(&p).unwrap();
        for l in c.levi.generators() {
            assert!(is_semisimple(l.linearize()), "{name}");
            assert!(c.normalizes(l.linearize()).unwrap(), "{name}");
        }
        if let Some(g) = &c.levi.group {
            for a in &c.levi.elements {
                for b in &c.levi.elements {
                    let ab = a.element.compose(&b.element).unwrap();
                    let tag = p.holonomy().mul(a.tag, b.tag);
                    assert_eq!(c.levi.for_tag(tag).unwrap().element, ab, "{name}");
                }
            }
            assert_eq!(g.order(), c.levi.elements.len());
        }
    }
}

fn check_coset_two_sided(gens: &[AffTrans], coset: &FixedCoset, rng: &mut ChaCha8Rng) {
    let alg = coset.algebra();
    let n = alg.dim();
    for _ in 0..50 {
        let c: Vec<Rat> = (0..coset.dim()).map(|_| random_rat(rng)).collect();
        let p = coset.point_at(&c).unwrap();
        assert!(coset.contains(&p));
        assert!(gens.iter().all(|g| g.act(&p).unwrap() == p));
    }
    if coset.dim() == n {
        return;
    }
    let mut off = 0;
    while off < 50 {
        let v: Vec<Rat> = (0..n).map(|_| random_rat(rng)).collect();
        let candidate = GroupPoint::exp(alg, &v).unwrap().multiply(coset.basepoint()).unwrap();
        if coset.contains(&candidate) {
            continue;
        }
        assert!(gens.iter().any(|g| g.act(&candidate).unwrap() != candidate));
        off += 1;
    }
}

#[test]
fn fixed_cosets_are_exact_on_both_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = plane();
    let line: AlgebraRef = Arc::new(NilLieAlgebra::abelian(1));
    let h: AlgebraRef = Arc::new(NilLieAlgebra::heisenberg());
    let refl = t(&a, vec![int(2), int(0)], &[-1, 0, 0, 1]);
    let rot = t(&a, vec![int(1), int(0)], &[0, -1, 1, 0]);
    let flip = t(&line, vec![int(3)], &[-1]);
    let shift = AffTrans::from_parts(&h, vec![int(1), int(2), int(3)], QMatrix::identity(3)).unwrap();
    let torus = shift
        .conjugate(&AffTrans::from_parts(&h, vec![int(0); 3], QMatrix::diagonal(&[int(2), rat(1, 2), int(1)])).unwrap())
        .unwrap();
    let swap = shift
        .conjugate(&AffTrans::from_parts(&h, vec![int(0); 3], QMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, -1])).unwrap())
        .unwrap();
    let cases: Vec<(AlgebraRef, Vec<AffTrans>, ReductiveKind)> = vec![
        (a.clone(), vec![refl], ReductiveKind::Finite),
        (a.clone(), vec![rot], ReductiveKind::Finite),
        (line, vec![flip], ReductiveKind::Finite),
        (h.clone(), vec![torus], ReductiveKind::Torus),
        (h, vec![swap], ReductiveKind::Finite),
        (a, vec![], ReductiveKind::Finite),
    ];
    for (alg, gens, kind) in cases {
        let coset = fixed_points_reductive(&alg, &gens, kind).unwrap();
        check_coset_two_sided(&gens, &coset, &mut rng);
    }
}
