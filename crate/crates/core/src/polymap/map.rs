use std::fmt;

use crate::affine::{identity_polys, AffMap, AffTrans};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat};

/// Default bound on the total degree of maps built by the pipeline.
pub const DEFAULT_DEGREE_BOUND: u32 = 16;

/// A polynomial map `Q^m -> Q^n` with exact coefficients and an optional verified inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    source_dim: usize,
    components: Vec<Poly>,
    degree_bound: u32,
    inverse: Option<Vec<Poly>>,
}

fn is_identity(components: &[Poly]) -> bool {
    components == identity_polys(components.len()).as_slice()
}

fn substitute_all(outer: &[Poly], inner: &[Poly]) -> Vec<Poly> {
    outer.iter().map(|p| p.substitute(inner)).collect()
}

fn max_degree(components: &[Poly]) -> u32 {
    components.iter().map(Poly::degree).max().unwrap_or(0)
}

impl PolyMap {
    pub fn new(source_dim: usize, components: Vec<Poly>, degree_bound: u32) -> Result<Self> {
        if components.iter().any(|p| p.nvars() != source_dim) {
            return Err(Error::DimensionMismatch(format!(
                "components must be polynomials in {source_dim} variables"
            )));
        }
        let degree = max_degree(&components);
        if degree > degree_bound {
            return Err(Error::DegreeOverflow {
                degree,
                bound: degree_bound,
            });
        }
        Ok(PolyMap {
            source_dim,
            components,
            degree_bound,
            inverse: None,
        })
    }

    /// Attaches an inverse after checking both compositions are the identity.
    pub fn with_inverse(mut self, inverse: Vec<Poly>) -> Result<Self> {
        if self.source_dim != self.components.len() || inverse.len() != self.source_dim {
            return Err(Error::DimensionMismatch("only square maps have inverses".into()));
        }
        if inverse.iter().any(|p| p.nvars() != self.source_dim) {
            return Err(Error::DimensionMismatch("inverse components".into()));
        }
        let degree = max_degree(&inverse);
        if degree > self.degree_bound {
            return Err(Error::DegreeOverflow {
                degree,
                bound: self.degree_bound,
            });
        }
        if !is_identity(&substitute_all(&self.components, &inverse))
            || !is_identity(&substitute_all(&inverse, &self.components))
        {
            return Err(Error::MissingInverse("supplied components are not an inverse".into()));
        }
        self.inverse = Some(inverse);
        Ok(self)
    }

    pub fn identity(n: usize) -> Self {
        let id = identity_polys(n);
        PolyMap {
            source_dim: n,
            components: id.clone(),
            degree_bound: DEFAULT_DEGREE_BOUND,
            inverse: Some(id),
        }
    }

    /// The action of an affine transformation in coordinates, with its inverse.
    pub fn from_aff_trans(g: &AffTrans) -> Self {
        let n = g.algebra().dim();
        let vars = identity_polys(n);
        PolyMap {
            source_dim: n,
            components: g.act_poly(&vars),
            degree_bound: DEFAULT_DEGREE_BOUND,
            inverse: Some(g.inverse().act_poly(&vars)),
        }
    }

    pub fn from_aff_map(alpha: &AffMap) -> Self {
        let n = alpha.morphism().source().dim();
        PolyMap {
            source_dim: n,
            components: alpha.apply_poly(&identity_polys(n)),
            degree_bound: DEFAULT_DEGREE_BOUND,
            inverse: None,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn degree(&self) -> u32 {
        max_degree(&self.components)
    }

    pub fn inverse_components(&self) -> Option<&[Poly]> {
        self.inverse.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.components.len() && is_identity(&self.components)
    }

    pub fn with_degree_bound(mut self, bound: u32) -> Result<Self> {
        let degree = self.degree().max(self.inverse.as_deref().map_or(0, max_degree));
        if degree > bound {
            return Err(Error::DegreeOverflow { degree, bound });
        }
        self.degree_bound = bound;
        Ok(self)
    }

    /// The inverse as a map of its own.
    pub fn inverse(&self) -> Result<PolyMap> {
        let inv = self
            .inverse
            .clone()
            .ok_or_else(|| Error::MissingInverse("polynomial map has no recorded inverse".into()))?;
        Ok(PolyMap {
            source_dim: self.source_dim,
            components: inv,
            degree_bound: self.degree_bound,
            inverse: Some(self.components.clone()),
        })
    }

    /// `self . inner`. The inverse is kept when both factors have one.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.target_dim() != self.source_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map on Q^{} after a map into Q^{}",
                self.source_dim,
                inner.target_dim()
            )));
        }
        let bound = self.degree_bound.max(inner.degree_bound);
        let components = if self.source_dim == 0 {
            self.components
                .iter()
                .map(|p| Poly::constant(inner.source_dim, p.constant_term()))
                .collect()
        } else {
            substitute_all(&self.components, &inner.components)
        };
        let degree = max_degree(&components);
        if degree > bound {
            return Err(Error::DegreeOverflow { degree, bound });
        }
        let inverse = match (&self.inverse, &inner.inverse) {
            (Some(a), Some(b)) => {
                let inv = substitute_all(b, a);
                (max_degree(&inv) <= bound).then_some(inv)
            }
            _ => None,
        };
        Ok(PolyMap {
            source_dim: inner.source_dim,
            components,
            degree_bound: bound,
            inverse,
        })
    }

    pub fn apply(&self, point: &[Rat]) -> Result<Vec<Rat>> {
        if point.len() != self.source_dim {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, map expects {}",
                point.len(),
                self.source_dim
            )));
        }
        Ok(self.components.iter().map(|p| p.eval(point)).collect())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.fmt_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&Poly::default_names(self.source_dim)))
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap{self}")
    }
}

/// `p . q`.
pub fn poly_compose(p: &PolyMap, q: &PolyMap) -> Result<PolyMap> {
    p.compose(q)
}

pub fn poly_apply(p: &PolyMap, point: &[Rat]) -> Result<Vec<Rat>> {
    p.apply(point)
}

/// Inverts a square polynomial map with invertible linear part by fixed-point iteration on
/// truncated polynomials, then checks the candidate exactly. Returns the inverse map, which
/// records `p` as its own inverse.
pub fn invert_polynomial(p: &PolyMap, max_degree: u32) -> Result<PolyMap> {
    let n = p.source_dim;
    if p.target_dim() != n {
        return Err(Error::DimensionMismatch("only square maps can be inverted".into()));
    }
    if p.inverse.is_some() {
        return p.inverse();
    }
    // p(c) = p0 + A c + h(c); solve c = A^-1 (y - p0 - h(c))
    let a = crate::exactalg::QMatrix::from_rows(p.components.iter().map(Poly::linear_part).collect())?;
    let a_inv = a
        .inverse()
        .map_err(|_| Error::MissingInverse("linear part is singular".into()))?;
    let y = identity_polys(n);
    let shifted: Vec<Poly> = p
        .components
        .iter()
        .zip(&y)
        .map(|(pc, yi)| yi.minus(&Poly::constant(n, pc.constant_term())))
        .collect();
    let higher: Vec<Poly> = p
        .components
        .iter()
        .map(|pc| {
            let mut h = Poly::zero(n);
            for (e, c) in pc.terms() {
                if e.iter().sum::<u32>() >= 2 {
                    h.add_term(e.clone(), c.clone());
                }
            }
            h
        })
        .collect();
    let mut q: Vec<Poly> = crate::affine::matvec_poly(&a_inv, &shifted);
    for _ in 0..=max_degree {
        let rhs: Vec<Poly> = shifted
            .iter()
            .zip(&higher)
            .map(|(s, h)| s.minus(&h.substitute(&q)).truncate(max_degree))
            .collect();
        let next = crate::affine::matvec_poly(&a_inv, &rhs);
        if next == q {
            break;
        }
        q = next;
    }
    PolyMap::new(n, p.components.clone(), p.degree_bound.max(max_degree))?
        .with_inverse(q)
        .map_err(|e| match e {
            Error::MissingInverse(_) => Error::MissingInverse(format!(
                "no polynomial inverse of degree at most {max_degree}"
            )),
            e => e,
        })?
        .inverse()
}
