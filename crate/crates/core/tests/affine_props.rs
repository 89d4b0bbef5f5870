use std::sync::Arc;

use nilaff::affine::{AffMap, AffTrans, Linearization};
use nilaff::exactalg::{rat, QMatrix, Rat};
use nilaff::nilgroup::{AlgebraRef, GroupPoint, LieMorphism, NilLieAlgebra};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q))
}

fn heis() -> AlgebraRef {
    Arc::new(NilLieAlgebra::heisenberg())
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(small_rat(), 3)
}

/// Heisenberg automorphisms: an invertible block on e1, e2 and the determinant on e3.
fn auto() -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(small_rat(), 6).prop_filter_map("singular block", |v| {
        let det = &v[0] * &v[3] - &v[1] * &v[2];
        if det == rat(0, 1) {
            return None;
        }
        let z = rat(0, 1);
        QMatrix::from_rows(vec![
            vec![v[0].clone(), v[1].clone(), z.clone()],
            vec![v[2].clone(), v[3].clone(), z],
            vec![v[4].clone(), v[5].clone(), det],
        ])
        .ok()
    })
}

fn trans() -> impl Strategy<Value = AffTrans> {
    (point(), auto()).prop_map(|(x, d)| AffTrans::from_parts(&heis(), x, d).unwrap())
}

fn gp(alg: &AlgebraRef, v: Vec<Rat>) -> GroupPoint {
    GroupPoint::new(alg, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_is_compatible_with_composition(g in trans(), h in trans(), n in point()) {
        let n = gp(g.algebra(), n);
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.act(&n).unwrap(), g.act(&h.act(&n).unwrap()).unwrap());
        prop_assert_eq!(AffTrans::identity(g.algebra()).act(&n).unwrap(), n.clone());
        prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn linearization_is_multiplicative(g in trans(), h in trans()) {
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.linearize(), &g.linearize().dot(h.linearize()));
        let inv = g.inverse();
        prop_assert_eq!(inv.linearize(), &g.linearize().inverse().unwrap());
        prop_assert_eq!(Linearization::of(g.algebra()).recover(g.linearize()).unwrap(), g);
    }

    #[test]
    fn left_translations_are_unipotent(m in point()) {
        let h = heis();
        prop_assert!(AffTrans::left_translation(&gp(&h, m)).is_unipotent());
    }

    #[test]
    fn conjugating_a_translation(n in point(), d in auto(), m in point()) {
        let h = heis();
        let (n, m) = (gp(&h, n), gp(&h, m));
        let alpha = AffTrans::from_parts(&h, n.coords().to_vec(), d).unwrap();
        let conj = alpha.conjugate(&AffTrans::left_translation(&m)).unwrap();
        let dm = alpha.auto().apply(&m).unwrap();
        let expected = n.multiply(&dm).unwrap().multiply(&n.inverse()).unwrap();
        prop_assert_eq!(conj, AffTrans::left_translation(&expected));
    }

    #[test]
    fn automorphism_intertwines_translations(d in auto(), m in point()) {
        let h = heis();
        let m = gp(&h, m);
        let delta = AffTrans::automorphism(LieMorphism::new(&h, &h, d).unwrap()).unwrap();
        let lhs = delta.compose(&AffTrans::left_translation(&m)).unwrap();
        let rhs = AffTrans::left_translation(&delta.auto().apply(&m).unwrap()).compose(&delta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_form_agrees_pointwise(x in point(), d in auto(), n in point()) {
        let h = heis();
        let alpha = AffMap::new(gp(&h, x), LieMorphism::new(&h, &h, d).unwrap()).unwrap();
        let (y, tilde) = alpha.to_left_form();
        let n = gp(&h, n);
        let left = y.multiply(&tilde.apply(&n).unwrap()).unwrap();
        prop_assert_eq!(alpha.apply(&n).unwrap(), left);
        let back = AffMap::from_left_form(&y, &tilde).unwrap();
        prop_assert_eq!(back, alpha);
    }
}
