use std::sync::Arc;

use crate::affine::{identity_polys, AffTrans};
use crate::closure::{ClosureData, GroupPresentation, PresentationSpec};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, one, Poly, QMatrix, Rat};
use crate::morphism::{fixed_points_reductive, induce_affine_map, GroupMorphism, ReductiveKind};
use crate::nilgroup::{AlgebraRef, GroupPoint};

use super::map::{invert_polynomial, PolyMap, DEFAULT_DEGREE_BOUND};

/// Conjugates every generator: `p . rho(g) . p^-1`. Relators are rechecked on the result.
pub fn conjugate_action(pres: &GroupPresentation, p: &PolyMap) -> Result<Vec<PolyMap>> {
    let inv = p.inverse()?;
    let gens = pres
        .generators()
        .iter()
        .map(|g| p.compose(&PolyMap::from_aff_trans(g))?.compose(&inv))
        .collect::<Result<Vec<_>>>()?;
    let n = p.target_dim();
    for r in pres.relators() {
        let value = r.evaluate(
            &gens,
            PolyMap::identity(n),
            |a, b| a.compose(b).expect("degree bound"),
            |a| a.inverse().expect("conjugated generators are invertible"),
        );
        if !value.is_identity() {
            return Err(Error::RelatorViolated(r.fmt_with(pres.names())));
        }
    }
    Ok(gens)
}

type PolyMatrix = Vec<Vec<Poly>>;

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let nvars = a[0][0].nvars();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Poly::zero(nvars), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.plus(&a[i][k].times(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `exp(sum c_i B_i)` for nilpotent `B_i`, as a matrix of polynomials in `c`.
fn exp_linear_combination(basis: &[QMatrix], size: usize) -> PolyMatrix {
    let k = basis.len();
    let x: PolyMatrix = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| Poly::linear(&basis.iter().map(|b| b[(i, j)].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let mut out: PolyMatrix = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { Poly::one(k) } else { Poly::zero(k) })
                .collect()
        })
        .collect();
    let mut power = x.clone();
    for m in 1..=size {
        if power.iter().flatten().all(Poly::is_zero) {
            break;
        }
        let s = one() / factorial(m);
        for i in 0..size {
            for j in 0..size {
                out[i][j] = out[i][j].plus(&power[i][j].scale(&s));
            }
        }
        power = poly_mat_mul(&power, &x);
    }
    out
}

/// An orbit chart `p(c) = exp(sum c_i B_i) . x0` of the unipotent radical together with the
/// equivalent translation-like action on `exp(u)`.
#[derive(Debug, Clone)]
pub struct TranslationLikeChart {
    pub chart: PolyMap,
    pub basepoint: GroupPoint,
    pub presentation: GroupPresentation,
    /// Whether the chart is a bijection of the whole space (`dim u = dim N`).
    pub full: bool,
}

/// Replaces an action by the translation-like action `(v l) . u = v l u l^-1` on the unipotent
/// radical of its hull, through the orbit chart at a Levi fixed point.
pub fn make_translation_like(pres: &GroupPresentation, basepoint: Option<&GroupPoint>) -> Result<TranslationLikeChart> {
    if pres.declared_hull().is_some() {
        return Err(Error::ScopeViolation(
            "make-translation-like needs a finite Levi part; declared tori are not supported".into(),
        ));
    }
    let c = ClosureData::compute(pres)?;
    let levi: Vec<AffTrans> = c.levi.generators().into_iter().cloned().collect();
    let x0 = match basepoint {
        Some(x) => {
            if levi.iter().any(|l| l.act(x).is_ok_and(|y| y != *x)) {
                return Err(Error::NotInvariant("basepoint is not fixed by the Levi part".into()));
            }
            x.clone()
        }
        None => fixed_points_reductive(pres.algebra(), &levi, ReductiveKind::Finite)?
            .basepoint()
            .clone(),
    };

    let lin = &c.linearization;
    let size = lin.dim();
    let k = c.unipotent_dim();
    let n = pres.algebra().dim();
    let e = exp_linear_combination(&c.unipotent_log_basis, size);
    let at_x0: Vec<Rat> = lin
        .monomials()
        .iter()
        .map(|m| Poly::monomial(m.clone(), one()).eval(x0.coords()))
        .collect();
    let components: Vec<Poly> = (0..n)
        .map(|i| {
            let row = lin.coordinate_index(i);
            (0..size).fold(Poly::zero(k), |acc, j| acc.plus(&e[row][j].scale(&at_x0[j])))
        })
        .collect();
    let mut chart = PolyMap::new(k, components, DEFAULT_DEGREE_BOUND)?;
    let full = k == n;
    if full {
        let bound = chart.degree().max(1).pow(pres.algebra().class().max(1) as u32).min(DEFAULT_DEGREE_BOUND);
        chart = invert_polynomial(&chart, bound)?.inverse()?;
    }

    let alg: AlgebraRef = Arc::new(c.unipotent.algebra.clone());
    let mut generators = Vec::with_capacity(pres.len());
    for (i, g) in pres.generators().iter().enumerate() {
        let tag = pres.tags()[i];
        let l = c
            .levi
            .for_tag(tag)
            .ok_or_else(|| Error::Internal(format!("no Levi element for tag of `{}`", pres.names()[i])))?;
        let lm = l.element.linearize();
        let l_inv = lm.inverse()?;
        let v = g.linearize().dot(&l_inv);
        let v_log = crate::exactalg::nilpotent_log(&v)
            .map_err(|_| Error::Internal("unipotent factor is not unipotent".into()))?;
        let t = c
            .log_coordinates(&v_log)
            .ok_or_else(|| Error::Internal("unipotent factor outside the radical".into()))?;
        let mut ad = QMatrix::zeros(k, k);
        for (j, b) in c.unipotent_log_basis.iter().enumerate() {
            let col = c
                .log_coordinates(&lm.dot(b).dot(&l_inv))
                .ok_or_else(|| Error::Internal("Levi element does not normalize the radical".into()))?;
            for (r, x) in col.into_iter().enumerate() {
                ad[(r, j)] = x;
            }
        }
        generators.push(AffTrans::from_parts(&alg, t, ad)?);
    }
    let presentation = GroupPresentation::new(PresentationSpec {
        algebra: alg,
        names: pres.names().to_vec(),
        generators,
        relators: pres.relators().to_vec(),
        holonomy: Some((pres.holonomy().clone(), pres.tags().to_vec())),
        series: pres.series().map(<[_]>::to_vec),
        declared_hull: None,
        discrete: pres.is_discrete(),
    })?;
    Ok(TranslationLikeChart {
        chart,
        basepoint: x0,
        presentation,
        full,
    })
}

/// True when `rho_2(phi(g)) . p = p . rho_1(g)` for every source generator, as polynomials.
pub fn poly_intertwines(phi: &GroupMorphism, p: &PolyMap) -> bool {
    let n1 = phi.source().algebra().dim();
    let vars = identity_polys(n1);
    (0..phi.source().len()).all(|i| {
        let lhs = phi.image_of_generator(i).act_poly(p.components());
        let moved = phi.source().generator(i).act_poly(&vars);
        let rhs: Vec<Poly> = p.components().iter().map(|c| c.substitute(&moved)).collect();
        lhs == rhs
    })
}

/// A polynomial map intertwining the two actions along `phi`: the affine intertwiner between
/// the translation-like models, read through the orbit charts.
pub fn induce_polynomial_map(phi: &GroupMorphism) -> Result<PolyMap> {
    let m1 = make_translation_like(phi.source(), None)?;
    let m2 = make_translation_like(phi.target(), None)?;
    if !m1.full {
        return Err(Error::NotCrystallographic(format!(
            "source radical has dimension {} but the space has dimension {}",
            m1.presentation.algebra().dim(),
            phi.source().algebra().dim()
        )));
    }
    let phi_t = GroupMorphism::new(m1.presentation.clone(), m2.presentation.clone(), phi.images().to_vec())?;
    let alpha = induce_affine_map(&phi_t)?.map;
    let p = m2
        .chart
        .compose(&PolyMap::from_aff_map(&alpha))?
        .compose(&m1.chart.inverse()?)?;
    if !poly_intertwines(phi, &p) {
        return Err(Error::Internal("polynomial intertwiner fails the identity".into()));
    }
    Ok(p)
}
