use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Exponents, Poly, QMatrix, Rat};
use crate::nilgroup::{bch, AlgebraRef, LieMorphism};

use super::identity_polys;
use super::trans::AffTrans;

/// The space of polynomials in exponential coordinates of weighted degree at most the largest
/// basis weight.
///
/// Monomials are ordered by weighted degree, then lexicographically with higher powers of
/// earlier coordinates first; the constant function comes last. On `Q^2` the basis is
/// `(x, y, 1)`.
///
/// The matrix of `g` has as its i-th row the coefficients of `m_i . g`. This is the transpose of
/// the operator `T_g: f -> f . g` in the monomial basis, so `T_{gh} = T_h T_g` while the matrices
/// satisfy `M(gh) = M(g) M(h)`.
#[derive(Debug, Clone)]
pub struct Linearization {
    algebra: AlgebraRef,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

fn monomials_up_to(weights: &[u32], bound: u32) -> Vec<Exponents> {
    fn rec(weights: &[u32], k: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if k == weights.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        while e * weights[k] <= left {
            cur[k] = e;
            rec(weights, k + 1, left - e * weights[k], cur, out);
            e += 1;
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, bound, &mut vec![0; weights.len()], &mut out);
    let wdeg = |e: &Exponents| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>();
    out.sort_by(|a, b| {
        let (da, db) = (wdeg(a), wdeg(b));
        let key = |d: u32| if d == 0 { u32::MAX } else { d };
        key(da).cmp(&key(db)).then_with(|| b.cmp(a))
    });
    out
}

impl Linearization {
    pub fn of(algebra: &AlgebraRef) -> Self {
        let monomials = monomials_up_to(algebra.weights(), algebra.depth());
        let index = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Linearization {
            algebra: algebra.clone(),
            monomials,
            index,
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn constant_index(&self) -> usize {
        self.monomials.len() - 1
    }

    /// Index of the coordinate function `x_i`.
    pub fn coordinate_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.algebra.dim()];
        e[i] = 1;
        self.index[&e]
    }

    /// Human-readable monomial names such as `x1^2*x2` and `1`.
    pub fn monomial_names(&self) -> Vec<String> {
        let names = Poly::default_names(self.algebra.dim());
        self.monomials
            .iter()
            .map(|e| Poly::monomial(e.clone(), Rat::from_integer(1.into())).fmt_with(&names))
            .collect()
    }

    /// Matrix of the polynomial map with the given coordinate components.
    ///
    /// Fails with `DegreeOverflow` if some `m_i . p` leaves the monomial space.
    pub fn matrix_of_polys(&self, components: &[Poly]) -> Result<QMatrix> {
        let n = self.algebra.dim();
        if components.len() != n || components.iter().any(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch("polynomial map shape".into()));
        }
        let size = self.dim();
        let mut powers: Vec<Vec<Poly>> = components.iter().map(|_| vec![Poly::one(n)]).collect();
        let mut m = QMatrix::zeros(size, size);
        for (row, e) in self.monomials.iter().enumerate() {
            let mut f = Poly::one(n);
            for (k, &a) in e.iter().enumerate() {
                while powers[k].len() <= a as usize {
                    let next = powers[k].last().unwrap().times(&components[k]);
                    powers[k].push(next);
                }
                if a > 0 {
                    f = f.times(&powers[k][a as usize]);
                }
            }
            for (exps, c) in f.terms() {
                match self.index.get(exps) {
                    Some(&col) => m[(row, col)] = c.clone(),
                    None => {
                        let degree = exps.iter().zip(self.algebra.weights()).map(|(a, w)| a * w).sum();
                        return Err(Error::DegreeOverflow {
                            degree,
                            bound: self.algebra.depth(),
                        });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn matrix(&self, g: &AffTrans) -> QMatrix {
        let comps = g.act_poly(&identity_polys(self.algebra.dim()));
        self.matrix_of_polys(&comps)
            .expect("filtration-preserving transformations stay in the linearization")
    }

    /// The coordinate components `n -> (m_i . g)(n)` read off the coordinate rows.
    pub fn components(&self, m: &QMatrix) -> Vec<Poly> {
        let n = self.algebra.dim();
        (0..n)
            .map(|k| {
                let row = self.coordinate_index(k);
                let mut p = Poly::zero(n);
                for (col, e) in self.monomials.iter().enumerate() {
                    p.add_term(e.clone(), m[(row, col)].clone());
                }
                p
            })
            .collect()
    }

    /// Recovers `g` from its matrix, verifying that the matrix really is a linearization.
    pub fn recover(&self, m: &QMatrix) -> Result<AffTrans> {
        let size = self.dim();
        if m.rows() != size || m.cols() != size {
            return Err(Error::DimensionMismatch("linearization matrix size".into()));
        }
        let n = self.algebra.dim();
        let comps = self.components(m);
        let x: Vec<Rat> = comps.iter().map(Poly::constant_term).collect();
        let neg_x: Vec<Poly> = x.iter().map(|c| Poly::constant(n, -c.clone())).collect();
        let moved = bch(&self.algebra, &neg_x, &comps);
        let mut d = QMatrix::zeros(n, n);
        for (k, p) in moved.iter().enumerate() {
            for (j, c) in p.linear_part().into_iter().enumerate() {
                if !c.is_zero() {
                    d[(k, j)] = c;
                }
            }
        }
        let bad = |_| Error::InvalidTransformation("matrix is not the linearization of an affine map".into());
        let auto = LieMorphism::new(&self.algebra, &self.algebra, d).map_err(bad)?;
        let g = AffTrans::new(crate::nilgroup::GroupPoint::new(&self.algebra, x)?, auto).map_err(bad)?;
        if g.linearize() != m {
            return Err(Error::InvalidTransformation(
                "matrix is not the linearization of an affine map".into(),
            ));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::nilgroup::NilLieAlgebra;

    #[test]
    fn monomial_order_in_the_plane() {
        let a = Arc::new(NilLieAlgebra::abelian(2));
        let lin = Linearization::of(&a);
        assert_eq!(lin.monomials(), &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(lin.monomial_names(), vec!["x1", "x2", "1"]);
    }

    #[test]
    fn heisenberg_monomials() {
        let h = Arc::new(NilLieAlgebra::heisenberg());
        let lin = Linearization::of(&h);
        assert_eq!(
            lin.monomial_names(),
            vec!["x1", "x2", "x1^2", "x1*x2", "x2^2", "x3", "1"]
        );
    }
}
