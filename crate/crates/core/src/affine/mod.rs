//! The affine group `Aff(N)`, affine maps between nilpotent groups and the faithful rational
//! linearization of `Aff(N)` on weighted polynomials.

mod linearize;
mod map;
mod trans;

pub use linearize::Linearization;
pub use map::{affmap_apply, affmap_to_left_form, AffMap};
pub use trans::{aff_act, aff_compose, aff_inverse, is_unipotent, linearize, AffTrans};

use crate::exactalg::{Poly, QMatrix, Rat};

/// The generic point `(x_1, ..., x_n)` as polynomials.
pub fn identity_polys(n: usize) -> Vec<Poly> {
    (0..n).map(|i| Poly::var(n, i)).collect()
}

pub(crate) fn const_polys(nvars: usize, v: &[Rat]) -> Vec<Poly> {
    v.iter().map(|c| Poly::constant(nvars, c.clone())).collect()
}

pub(crate) fn matvec_poly(m: &QMatrix, v: &[Poly]) -> Vec<Poly> {
    let nvars = v.first().map_or(0, Poly::nvars);
    (0..m.rows())
        .map(|i| {
            let mut acc = Poly::zero(nvars);
            for (j, p) in v.iter().enumerate() {
                let c = &m[(i, j)];
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.plus(&p.scale(c));
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::{int, nilpotent_log, rat};
    use crate::nilgroup::{GroupPoint, LieMorphism, NilLieAlgebra};

    fn plane() -> Arc<NilLieAlgebra> {
        Arc::new(NilLieAlgebra::abelian(2))
    }

    fn g2(a: &Arc<NilLieAlgebra>) -> AffTrans {
        AffTrans::from_parts(a, vec![rat(1, 2), int(1)], QMatrix::from_i64(2, 2, &[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn example_generator_moves_origin() {
        let a = plane();
        let out = g2(&a).act(&GroupPoint::identity(&a)).unwrap();
        assert_eq!(out.coords(), &[rat(1, 2), int(1)]);
    }

    #[test]
    fn plane_generators_linearize_to_known_logs() {
        let a = plane();
        let g1 = AffTrans::from_parts(&a, vec![int(1), int(0)], QMatrix::identity(2)).unwrap();
        assert!(g1.is_unipotent() && g2(&a).is_unipotent());
        assert_eq!(nilpotent_log(g1.linearize()).unwrap(), QMatrix::unit(3, 0, 2));
        assert_eq!(
            nilpotent_log(g2(&a).linearize()).unwrap(),
            QMatrix::unit(3, 0, 1).plus(&QMatrix::unit(3, 1, 2))
        );
    }

    #[test]
    fn klein_generator_not_unipotent() {
        let a = plane();
        let b = AffTrans::from_parts(&a, vec![int(0), rat(1, 2)], QMatrix::from_i64(2, 2, &[-1, 0, 0, 1])).unwrap();
        assert!(!b.is_unipotent());
    }

    #[test]
    fn linearization_orientation() {
        let a = plane();
        let g = g2(&a);
        let h = AffTrans::from_parts(&a, vec![int(3), int(-1)], QMatrix::from_i64(2, 2, &[1, 0, 2, 1])).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.linearize(), &g.linearize().dot(h.linearize()));
        // the operator f -> f . g is the transpose, and reverses order
        let t = |x: &AffTrans| x.linearize().transpose();
        assert_eq!(t(&gh), t(&h).dot(&t(&g)));
        let lin = Linearization::of(&a);
        assert_eq!(lin.recover(gh.linearize()).unwrap(), gh);
    }

    #[test]
    fn left_form_round_trip_heisenberg() {
        let h = Arc::new(NilLieAlgebra::heisenberg());
        let x = GroupPoint::new(&h, vec![int(0), int(0), int(1)]).unwrap();
        let alpha = AffMap::new(x.clone(), LieMorphism::identity(&h)).unwrap();
        let (y, tilde) = alpha.to_left_form();
        assert_eq!(y, x);
        assert!(tilde.matrix().is_identity());
    }

    #[test]
    fn filtration_breaking_automorphism_rejected() {
        let a = Arc::new(NilLieAlgebra::new(vec![1, 2], vec![rat(0, 1); 8]).unwrap());
        let r = AffTrans::from_parts(&a, vec![int(0), int(0)], QMatrix::from_i64(2, 2, &[1, 1, 0, 1]));
        assert!(r.is_err());
    }
}
