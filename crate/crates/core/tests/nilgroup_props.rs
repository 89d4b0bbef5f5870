use std::sync::Arc;

use nilaff::exactalg::{nilpotent_exp, nilpotent_log, rat, QMatrix, Rat};
use nilaff::nilgroup::{bch, bch_to_order, extend_from_lattice, GroupPoint, LieMorphism, NilLieAlgebra};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(small_rat(), n)
}

fn upper_index(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

fn to_matrix(m: usize, v: &[Rat]) -> QMatrix {
    let mut out = QMatrix::zeros(m, m);
    for (c, &(i, j)) in v.iter().zip(&upper_index(m)) {
        out[(i, j)] = c.clone();
    }
    out
}

fn from_matrix(m: usize, a: &QMatrix) -> Vec<Rat> {
    upper_index(m).iter().map(|&(i, j)| a[(i, j)].clone()).collect()
}

/// A class-3 algebra that is not a matrix algebra of the kind above:
/// the filiform algebra `[e1, e_k] = e_{k+1}` on four generators.
fn filiform4() -> NilLieAlgebra {
    let e = |k: usize| (0..4).map(|i| if i == k { rat(1, 1) } else { rat(0, 1) }).collect::<Vec<_>>();
    NilLieAlgebra::from_brackets(vec![1, 1, 2, 3], &[(0, 1, e(2)), (0, 2, e(3))]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bch_matches_matrix_oracle(x in vector(6), y in vector(6)) {
        let alg = NilLieAlgebra::strictly_upper(4);
        let prod = nilpotent_exp(&to_matrix(4, &x)).unwrap().dot(&nilpotent_exp(&to_matrix(4, &y)).unwrap());
        let expected = from_matrix(4, &nilpotent_log(&prod).unwrap());
        prop_assert_eq!(bch(&alg, &x, &y), expected);
    }

    #[test]
    fn bch_associative_heisenberg(x in vector(3), y in vector(3), z in vector(3)) {
        let h = Arc::new(NilLieAlgebra::heisenberg());
        let (x, y, z) = (GroupPoint::new(&h, x).unwrap(), GroupPoint::new(&h, y).unwrap(), GroupPoint::new(&h, z).unwrap());
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bch_associative_filiform(x in vector(4), y in vector(4), z in vector(4)) {
        let f = Arc::new(filiform4());
        let (x, y, z) = (GroupPoint::new(&f, x).unwrap(), GroupPoint::new(&f, y).unwrap(), GroupPoint::new(&f, z).unwrap());
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bch_associative_upper5(x in vector(10), y in vector(10), z in vector(10)) {
        let u = Arc::new(NilLieAlgebra::strictly_upper(5));
        let (x, y, z) = (GroupPoint::new(&u, x).unwrap(), GroupPoint::new(&u, y).unwrap(), GroupPoint::new(&u, z).unwrap());
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn extra_bch_order_changes_nothing(x in vector(6), y in vector(6)) {
        let alg = NilLieAlgebra::strictly_upper(4);
        prop_assert_eq!(bch(&alg, &x, &y), bch_to_order(&alg, &x, &y, alg.class() + 1));
    }

    #[test]
    fn inverse_is_negation(x in vector(6)) {
        let u = Arc::new(NilLieAlgebra::strictly_upper(4));
        let p = GroupPoint::new(&u, x).unwrap();
        prop_assert!(p.multiply(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn diagonal_morphism_is_homomorphism(x in vector(3), y in vector(3)) {
        let h = Arc::new(NilLieAlgebra::heisenberg());
        let d = LieMorphism::new(&h, &h, QMatrix::from_i64(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 6])).unwrap();
        let (x, y) = (GroupPoint::new(&h, x).unwrap(), GroupPoint::new(&h, y).unwrap());
        let lhs = d.apply(&x.multiply(&y).unwrap()).unwrap();
        let rhs = d.apply(&x).unwrap().multiply(&d.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_reproduces_images(a in small_rat(), b in small_rat(), c in small_rat(), s in small_rat()) {
        // automorphisms of the Heisenberg algebra: e1 -> a e1 + c e2 + s e3, e2 -> b e2, e3 -> ab e3
        prop_assume!(a != rat(0, 1) && b != rat(0, 1));
        let h = Arc::new(NilLieAlgebra::heisenberg());
        let zero = rat(0, 1);
        let m = QMatrix::from_rows(vec![
            vec![a.clone(), zero.clone(), zero.clone()],
            vec![c.clone(), b.clone(), zero.clone()],
            vec![s.clone(), zero.clone(), &a * &b],
        ]).unwrap();
        let d = LieMorphism::new(&h, &h, m).unwrap();
        let gens: Vec<GroupPoint> = [[1, 0, 0], [0, 1, 0], [1, 1, 1]]
            .iter()
            .map(|v| GroupPoint::new(&h, v.iter().map(|&k| rat(k, 1)).collect()).unwrap())
            .collect();
        let imgs: Vec<GroupPoint> = gens.iter().map(|g| d.apply(g).unwrap()).collect();
        let e = extend_from_lattice(&gens, &imgs).unwrap();
        for (g, i) in gens.iter().zip(&imgs) {
            prop_assert_eq!(&e.apply(g).unwrap(), i);
        }
        prop_assert_eq!(e, d);
    }
}

#[test]
fn heisenberg_product_matches_unitriangular_matrices() {
    let u3 = NilLieAlgebra::strictly_upper(3);
    // basis E12, E13, E23 with weights 1, 2, 1
    let x = [rat(1, 1), rat(0, 1), rat(0, 1)];
    let y = [rat(0, 1), rat(0, 1), rat(1, 1)];
    let prod = nilpotent_exp(&to_matrix(3, &x)).unwrap().dot(&nilpotent_exp(&to_matrix(3, &y)).unwrap());
    let oracle = from_matrix(3, &nilpotent_log(&prod).unwrap());
    assert_eq!(bch(&u3, &x, &y), oracle);
    assert_eq!(oracle, vec![rat(1, 1), rat(1, 2), rat(1, 1)]);
    let h = NilLieAlgebra::heisenberg();
    assert_eq!(
        bch(&h, &[rat(1, 1), rat(0, 1), rat(0, 1)], &[rat(0, 1), rat(1, 1), rat(0, 1)]),
        vec![rat(1, 1), rat(1, 1), rat(1, 2)]
    );
}

#[test]
fn invalid_algebras_fail() {
    let e = |k: usize| (0..3).map(|i| if i == k { rat(1, 1) } else { rat(0, 1) }).collect::<Vec<_>>();
    // grading violated: [e1, e2] = e3 with all weights 1
    assert!(NilLieAlgebra::from_brackets(vec![1, 1, 1], &[(0, 1, e(2))]).is_err());
    // sl2-like brackets are not nilpotent
    assert!(NilLieAlgebra::from_brackets(vec![1, 1, 1], &[(0, 1, e(2)), (2, 0, e(0)), (2, 1, e(1))]).is_err());
}
