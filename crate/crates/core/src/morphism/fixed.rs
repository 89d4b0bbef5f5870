use std::collections::HashSet;

use crate::affine::AffTrans;
use crate::error::{Error, Result};
use crate::exactalg::{echelon_basis, int, one, is_zero_vec, kernel, solve_linear, vec_add, vec_scale, zero_vec, QMatrix, Rat};
use crate::nilgroup::{adapted_subalgebra, same_algebra, AdaptedSubalgebra, AlgebraRef, GroupPoint};

/// How the subgroup whose fixed points are sought is described.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductiveKind {
    /// The generators generate a finite group.
    Finite,
    /// Commuting semisimple generators of a torus.
    Torus,
}

const FINITE_LIMIT: usize = 4096;

/// A right coset `exp(m) * n0` of a connected subgroup, or the empty set.
#[derive(Debug, Clone)]
pub struct FixedCoset {
    algebra: AlgebraRef,
    subalgebra_basis: Vec<Vec<Rat>>,
    basepoint: GroupPoint,
    empty: bool,
}

impl FixedCoset {
    /// Checks that `basis` spans a subalgebra.
    pub fn new(algebra: &AlgebraRef, basis: Vec<Vec<Rat>>, basepoint: GroupPoint) -> Result<Self> {
        if !same_algebra(algebra, basepoint.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = algebra.dim();
        if basis.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("subalgebra basis vector".into()));
        }
        let basis = echelon_basis(n, &basis);
        let coset = FixedCoset {
            algebra: algebra.clone(),
            subalgebra_basis: basis,
            basepoint,
            empty: false,
        };
        for a in &coset.subalgebra_basis {
            for b in &coset.subalgebra_basis {
                if !coset.in_subalgebra(&algebra.bracket(a, b)) {
                    return Err(Error::InvalidAlgebra("coset direction is not a subalgebra".into()));
                }
            }
        }
        Ok(coset)
    }

    pub fn whole(algebra: &AlgebraRef) -> Self {
        let n = algebra.dim();
        let basis = (0..n).map(|i| crate::exactalg::unit_vector(n, i)).collect();
        FixedCoset {
            algebra: algebra.clone(),
            subalgebra_basis: basis,
            basepoint: GroupPoint::identity(algebra),
            empty: false,
        }
    }

    pub fn empty(algebra: &AlgebraRef) -> Self {
        FixedCoset {
            algebra: algebra.clone(),
            subalgebra_basis: Vec::new(),
            basepoint: GroupPoint::identity(algebra),
            empty: true,
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn subalgebra_basis(&self) -> &[Vec<Rat>] {
        &self.subalgebra_basis
    }

    pub fn basepoint(&self) -> &GroupPoint {
        &self.basepoint
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn dim(&self) -> usize {
        self.subalgebra_basis.len()
    }

    pub fn in_subalgebra(&self, v: &[Rat]) -> bool {
        let span = crate::exactalg::Subspace::spanned_by(self.algebra.dim(), &self.subalgebra_basis);
        span.contains(v)
    }

    pub fn contains(&self, n: &GroupPoint) -> bool {
        if self.empty || !same_algebra(n.algebra(), &self.algebra) {
            return false;
        }
        let m = n.mul(&self.basepoint.inverse());
        self.in_subalgebra(m.log())
    }

    /// The point `exp(sum c_i m_i) * n0`.
    pub fn point_at(&self, coeffs: &[Rat]) -> Result<GroupPoint> {
        if self.empty {
            return Err(Error::Inconsistent("empty coset has no points".into()));
        }
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {}-dimensional coset",
                coeffs.len(),
                self.dim()
            )));
        }
        let mut v = zero_vec(self.algebra.dim());
        for (c, b) in coeffs.iter().zip(&self.subalgebra_basis) {
            v = vec_add(&v, &vec_scale(b, c));
        }
        GroupPoint::exp(&self.algebra, &v)?.multiply(&self.basepoint)
    }

    /// The direction subalgebra rebuilt as an abstract algebra with lower central series weights.
    pub fn subalgebra(&self) -> Result<AdaptedSubalgebra> {
        let alg = self.algebra.clone();
        adapted_subalgebra(alg.dim(), &self.subalgebra_basis, move |a, b| alg.bracket(a, b))
    }
}

/// All elements of the group generated by `gens`, which must be finite.
pub fn enumerate_finite(algebra: &AlgebraRef, gens: &[AffTrans]) -> Result<Vec<AffTrans>> {
    let id = AffTrans::identity(algebra);
    let mut seen: HashSet<AffTrans> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = out[i].compose(g)?;
            if seen.insert(h.clone()) {
                out.push(h);
                if out.len() > FINITE_LIMIT {
                    return Err(Error::ScopeViolation(format!(
                        "generated group has more than {FINITE_LIMIT} elements; declare a torus instead"
                    )));
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

/// The defect `log(n^-1 * g.n)`.
fn defect(g: &AffTrans, n: &GroupPoint) -> Result<Vec<Rat>> {
    Ok(n.inverse().multiply(&g.act(n)?)?.log().to_vec())
}

fn averaged_point(algebra: &AlgebraRef, gens: &[AffTrans]) -> Result<GroupPoint> {
    let group = enumerate_finite(algebra, gens)?;
    let order = int(group.len() as i64);
    let mut n = GroupPoint::identity(algebra);
    for _ in 0..=algebra.depth() + 1 {
        let mut sum = zero_vec(algebra.dim());
        for k in &group {
            sum = vec_add(&sum, &defect(k, &n)?);
        }
        if is_zero_vec(&sum) && gens.iter().all(|g| g.act(&n).is_ok_and(|m| m == n)) {
            return Ok(n);
        }
        let b = vec_scale(&sum, &(one() / &order));
        n = n.multiply(&GroupPoint::exp(algebra, &b)?)?;
    }
    Err(Error::Internal("averaging did not reach a fixed point".into()))
}

fn layered_point(algebra: &AlgebraRef, gens: &[AffTrans]) -> Result<GroupPoint> {
    let dim = algebra.dim();
    let mut n = GroupPoint::identity(algebra);
    for w in 1..=algebra.depth() {
        let idx: Vec<usize> = (0..dim).filter(|&i| algebra.weights()[i] == w).collect();
        if idx.is_empty() {
            continue;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in gens {
            let c = defect(g, &n)?;
            let d = g.auto().matrix();
            for (r, &i) in idx.iter().enumerate() {
                let mut row: Vec<Rat> = idx.iter().map(|&j| d[(i, j)].clone()).collect();
                row[r] -= one();
                rows.push(row);
                rhs.push(-c[i].clone());
            }
        }
        if rows.is_empty() {
            continue;
        }
        let a = QMatrix::from_rows(rows)?;
        let sol = solve_linear(&a, &rhs)?;
        let Some(b_w) = sol.particular() else {
            return Err(Error::Internal(format!(
                "no common fixed point in weight {w}; generators are not reductive"
            )));
        };
        let mut b = zero_vec(dim);
        for (k, &i) in idx.iter().enumerate() {
            b[i] = b_w[k].clone();
        }
        n = n.multiply(&GroupPoint::exp(algebra, &b)?)?;
    }
    Ok(n)
}

/// The fixed-point set of a reductive group of affine transformations, a right coset `M n0`.
///
/// `n0` is found from the identity (by averaging over the finite group, or by solving one
/// weight layer at a time); `Lie(M)` is the common kernel of `Ad(x) D - I`.
pub fn fixed_points_reductive(algebra: &AlgebraRef, gens: &[AffTrans], kind: ReductiveKind) -> Result<FixedCoset> {
    if gens.iter().any(|g| !same_algebra(g.algebra(), algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let n0 = match kind {
        ReductiveKind::Finite => averaged_point(algebra, gens)?,
        ReductiveKind::Torus => layered_point(algebra, gens)?,
    };
    for g in gens {
        if g.act(&n0)? != n0 {
            return Err(Error::Internal("computed basepoint is not fixed".into()));
        }
    }
    let dim = algebra.dim();
    let mut rows = Vec::new();
    for g in gens {
        let a = g.translation().adjoint().dot(g.auto().matrix()).minus(&QMatrix::identity(dim));
        for i in 0..dim {
            rows.push(a.row(i).to_vec());
        }
    }
    let basis = if rows.is_empty() {
        (0..dim).map(|i| crate::exactalg::unit_vector(dim, i)).collect()
    } else {
        kernel(&QMatrix::from_rows(rows)?)
    };
    FixedCoset::new(algebra, basis, n0)
}
