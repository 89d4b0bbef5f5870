use crate::affine::AffTrans;
use crate::error::{Error, Result};
use crate::exactalg::is_semisimple;
use crate::nilgroup::{same_algebra, AlgebraRef};

use super::finite::FiniteGroup;
use super::word::Word;

/// One factor of a subnormal series with cyclic or finite quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFactor {
    Infinite,
    Finite,
}

/// Closure data supplied by the user when the semisimple parts have infinite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredHull {
    /// Semisimple generators of the Levi torus.
    pub torus: Vec<AffTrans>,
    /// Unipotent elements whose logs generate the unipotent radical.
    pub unipotent: Vec<AffTrans>,
    /// The user asserts that the group is Zariski dense in the declared hull.
    pub density_asserted: bool,
}

/// Everything needed to build a [`GroupPresentation`].
#[derive(Debug, Clone)]
pub struct PresentationSpec {
    pub algebra: AlgebraRef,
    pub names: Vec<String>,
    pub generators: Vec<AffTrans>,
    pub relators: Vec<Word>,
    /// Finite holonomy group and the tag of each generator; `None` means trivial holonomy.
    pub holonomy: Option<(FiniteGroup, Vec<usize>)>,
    pub series: Option<Vec<SeriesFactor>>,
    pub declared_hull: Option<DeclaredHull>,
    /// The action is asserted to be properly discontinuous.
    pub discrete: bool,
}

impl PresentationSpec {
    pub fn new(algebra: &AlgebraRef, names: Vec<String>, generators: Vec<AffTrans>) -> Self {
        PresentationSpec {
            algebra: algebra.clone(),
            names,
            generators,
            relators: Vec::new(),
            holonomy: None,
            series: None,
            declared_hull: None,
            discrete: false,
        }
    }
}

/// A virtually polycyclic group acting on `N` through affine generators.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    algebra: AlgebraRef,
    names: Vec<String>,
    generators: Vec<AffTrans>,
    relators: Vec<Word>,
    holonomy: FiniteGroup,
    tags: Vec<usize>,
    series: Option<Vec<SeriesFactor>>,
    declared_hull: Option<DeclaredHull>,
    discrete: bool,
}

impl GroupPresentation {
    /// Validates relators, the holonomy tagging and the unipotence of untagged generators.
    pub fn new(spec: PresentationSpec) -> Result<Self> {
        let PresentationSpec {
            algebra,
            names,
            generators,
            relators,
            holonomy,
            series,
            declared_hull,
            discrete,
        } = spec;
        if names.len() != generators.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} names for {} generators",
                names.len(),
                generators.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n == "1" || n.is_empty() || n.contains(|c: char| c.is_whitespace() || c == '^') {
                return Err(Error::InvalidPresentation(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{n}`")));
            }
        }
        if generators.iter().any(|g| !same_algebra(g.algebra(), &algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let (holonomy, tags) = holonomy.unwrap_or_else(|| (FiniteGroup::trivial(), vec![0; generators.len()]));
        if tags.len() != generators.len() || tags.iter().any(|&t| t >= holonomy.order()) {
            return Err(Error::InvalidPresentation("every generator needs a valid holonomy tag".into()));
        }
        let pres = GroupPresentation {
            algebra,
            names,
            generators,
            relators,
            holonomy,
            tags,
            series,
            declared_hull,
            discrete,
        };
        for r in &pres.relators {
            if r.max_generator().is_some_and(|g| g >= pres.generators.len()) {
                return Err(Error::InvalidPresentation("relator uses an unknown generator".into()));
            }
            if !pres.eval_word(r).is_identity() {
                return Err(Error::RelatorViolated(r.fmt_with(&pres.names)));
            }
            if pres.tag_of_word(r) != pres.holonomy.identity() {
                return Err(Error::InvalidPresentation(format!(
                    "holonomy tags do not define a homomorphism: relator `{}` maps to {}",
                    r.fmt_with(&pres.names),
                    pres.holonomy.names()[pres.tag_of_word(r)]
                )));
            }
        }
        match &pres.declared_hull {
            None => {
                for (i, g) in pres.generators.iter().enumerate() {
                    if pres.tags[i] == pres.holonomy.identity() && !g.is_unipotent() {
                        return Err(Error::ScopeViolation(format!(
                            "generator `{}` has trivial holonomy tag but is not unipotent; outside quasi-unipotent scope (declare a hull)",
                            pres.names[i]
                        )));
                    }
                }
            }
            Some(h) => {
                for t in h.torus.iter().chain(&h.unipotent) {
                    if !same_algebra(t.algebra(), &pres.algebra) {
                        return Err(Error::AlgebraMismatch);
                    }
                }
                if h.torus.iter().any(|t| !is_semisimple(t.linearize())) {
                    return Err(Error::InvalidPresentation("declared torus generator is not semisimple".into()));
                }
                if h.unipotent.iter().any(|u| !u.is_unipotent()) {
                    return Err(Error::InvalidPresentation("declared unipotent generator is not unipotent".into()));
                }
            }
        }
        Ok(pres)
    }

    /// A presentation with trivial holonomy and no relators.
    pub fn free(algebra: &AlgebraRef, names: Vec<String>, generators: Vec<AffTrans>) -> Result<Self> {
        Self::new(PresentationSpec::new(algebra, names, generators))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[AffTrans] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &AffTrans {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn holonomy(&self) -> &FiniteGroup {
        &self.holonomy
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn series(&self) -> Option<&[SeriesFactor]> {
        self.series.as_deref()
    }

    pub fn declared_hull(&self) -> Option<&DeclaredHull> {
        self.declared_hull.as_ref()
    }

    pub fn is_discrete(&self) -> bool {
        self.discrete
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn eval_word(&self, w: &Word) -> AffTrans {
        w.evaluate(
            &self.generators,
            AffTrans::identity(&self.algebra),
            |a, b| a.mul(b),
            AffTrans::inverse,
        )
    }

    pub fn tag_of_word(&self, w: &Word) -> usize {
        let f = &self.holonomy;
        w.evaluate(&self.tags, f.identity(), |&a, &b| f.mul(a, b), |&a| f.inv(a))
    }

    /// The subgroup generated by the chosen generators; relators among them are kept.
    pub fn subgroup(&self, indices: &[usize]) -> Result<Self> {
        let pos = |g: usize| indices.iter().position(|&i| i == g);
        let relators = self
            .relators
            .iter()
            .filter(|r| r.syllables().iter().all(|&(g, _)| pos(g).is_some()))
            .map(|r| r.reindex(|g| pos(g).unwrap()))
            .collect();
        Self::new(PresentationSpec {
            algebra: self.algebra.clone(),
            names: indices.iter().map(|&i| self.names[i].clone()).collect(),
            generators: indices.iter().map(|&i| self.generators[i].clone()).collect(),
            relators,
            holonomy: Some((self.holonomy.clone(), indices.iter().map(|&i| self.tags[i]).collect())),
            series: None,
            declared_hull: self.declared_hull.clone(),
            discrete: self.discrete,
        })
    }

    /// The same abstract group acting through `c g c^-1`.
    pub fn conjugated_by(&self, c: &AffTrans) -> Result<Self> {
        let conj = |g: &AffTrans| c.conjugate(g);
        let generators = self.generators.iter().map(conj).collect::<Result<Vec<_>>>()?;
        let declared_hull = match &self.declared_hull {
            None => None,
            Some(h) => Some(DeclaredHull {
                torus: h.torus.iter().map(conj).collect::<Result<_>>()?,
                unipotent: h.unipotent.iter().map(conj).collect::<Result<_>>()?,
                density_asserted: h.density_asserted,
            }),
        };
        Self::new(PresentationSpec {
            algebra: self.algebra.clone(),
            names: self.names.clone(),
            generators,
            relators: self.relators.clone(),
            holonomy: Some((self.holonomy.clone(), self.tags.clone())),
            series: self.series.clone(),
            declared_hull,
            discrete: self.discrete,
        })
    }

    /// Replaces the generators by other values for the same abstract group, re-validating.
    pub fn with_generators(&self, algebra: &AlgebraRef, generators: Vec<AffTrans>) -> Result<Self> {
        Self::new(PresentationSpec {
            algebra: algebra.clone(),
            names: self.names.clone(),
            generators,
            relators: self.relators.clone(),
            holonomy: Some((self.holonomy.clone(), self.tags.clone())),
            series: self.series.clone(),
            declared_hull: None,
            discrete: self.discrete,
        })
    }
}
