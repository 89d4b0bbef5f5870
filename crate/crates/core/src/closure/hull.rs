use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::affine::{AffTrans, Linearization};
use crate::error::{Error, Result};
use crate::exactalg::{
    int, is_semisimple, nilpotent_exp, nilpotent_log, QMatrix, Rat, Subspace,
};
use crate::nilgroup::{adapted_subalgebra, AdaptedSubalgebra, GroupPoint};

use super::finite::FiniteGroup;
use super::presentation::{GroupPresentation, SeriesFactor};
use super::word::Word;

/// An element of the holonomy kernel together with the word that produced it.
#[derive(Debug, Clone)]
pub struct KernelElement {
    pub word: Word,
    pub element: AffTrans,
    pub log: QMatrix,
}

/// Transversal of the tag image: for each holonomy element `f` hit by the tags, a word `t_f`
/// with tag `f`, found breadth first.
pub fn transversal(pres: &GroupPresentation) -> Vec<(usize, Word)> {
    let f = pres.holonomy();
    let mut seen = vec![false; f.order()];
    seen[f.identity()] = true;
    let mut out = vec![(f.identity(), Word::empty())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (tag, word) = out[k].clone();
        for (s, &ts) in pres.tags().iter().enumerate() {
            let h = f.mul(tag, ts);
            if !seen[h] {
                seen[h] = true;
                out.push((h, word.concat(&Word::generator(s))));
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

/// Schreier generators `t_f s t_{f tag(s)}^-1` of the kernel of the holonomy tag.
///
/// Trivial elements and repeats (up to inversion) are dropped. Every returned element is
/// unipotent; a non-unipotent one means the input is outside the supported class.
pub fn holonomy_kernel(pres: &GroupPresentation) -> Result<Vec<KernelElement>> {
    let trans = transversal(pres);
    let f = pres.holonomy();
    let word_of = |tag: usize| &trans.iter().find(|(t, _)| *t == tag).expect("tag in image").1;
    let mut out: Vec<KernelElement> = Vec::new();
    for (tag, t) in &trans {
        for s in 0..pres.len() {
            let target = f.mul(*tag, pres.tags()[s]);
            let word = t.concat(&Word::generator(s)).concat(&word_of(target).inverse());
            let element = pres.eval_word(&word);
            if element.is_identity() {
                continue;
            }
            let inv = element.inverse();
            if out.iter().any(|k| k.element == element || k.element == inv) {
                continue;
            }
            if !element.is_unipotent() {
                return Err(Error::ScopeViolation(format!(
                    "kernel element `{}` is not unipotent; outside quasi-unipotent scope",
                    word.fmt_with(pres.names())
                )));
            }
            let log = element.linear_log()?;
            out.push(KernelElement { word, element, log });
        }
    }
    Ok(out)
}

fn flatten(m: &QMatrix) -> Vec<Rat> {
    m.data().to_vec()
}

fn unflatten(size: usize, v: &[Rat]) -> QMatrix {
    QMatrix::new(size, size, v.to_vec()).expect("square matrix")
}

fn commutator_flat(size: usize) -> impl Fn(&[Rat], &[Rat]) -> Vec<Rat> {
    move |a, b| flatten(&unflatten(size, a).bracket(&unflatten(size, b)))
}

/// Lie closure of `logs` (as flattened matrices), optionally also closed under conjugation.
fn lie_closure(size: usize, logs: &[QMatrix], conj: &[(QMatrix, QMatrix)]) -> Result<Subspace> {
    let mut span = Subspace::spanned_by(size * size, &logs.iter().map(flatten).collect::<Vec<_>>());
    let br = commutator_flat(size);
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > size * size + 2 {
            return Err(Error::Internal("Lie closure did not stabilise".into()));
        }
        let snapshot = span.basis().to_vec();
        let before = span.dim();
        for a in &snapshot {
            for b in &snapshot {
                span.insert(&br(a, b));
            }
            let m = unflatten(size, a);
            for (g, g_inv) in conj {
                span.insert(&flatten(&g.dot(&m).dot(g_inv)));
            }
        }
        if span.dim() == before {
            return Ok(span);
        }
    }
}

/// The two kinds of Levi data.
#[derive(Debug, Clone)]
pub enum LeviKind {
    /// Finite Levi subgroup mapping isomorphically onto the image of the holonomy tags.
    Finite,
    /// User-declared torus generators; density is asserted, never verified.
    DeclaredTorus { density_asserted: bool },
}

/// A Levi element `l_f = exp(c_f) t_f` for the holonomy element `f`.
#[derive(Debug, Clone)]
pub struct LeviElement {
    pub tag: usize,
    pub transversal: Word,
    pub correction: QMatrix,
    pub element: AffTrans,
}

#[derive(Debug, Clone)]
pub struct LeviPart {
    pub kind: LeviKind,
    /// For the finite kind: one element per holonomy element in the tag image, identity first.
    /// For a declared torus: the declared generators, with empty words.
    pub elements: Vec<LeviElement>,
    /// The tag image as a group; indices of `elements` follow its element order.
    pub group: Option<FiniteGroup>,
}

impl LeviPart {
    /// Distinct non-identity elements.
    pub fn generators(&self) -> Vec<&AffTrans> {
        self.elements
            .iter()
            .map(|e| &e.element)
            .filter(|e| !e.is_identity())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    /// The Levi element for a holonomy element, finite kind only.
    pub fn for_tag(&self, tag: usize) -> Option<&LeviElement> {
        self.elements.iter().find(|e| e.tag == tag)
    }
}

/// Real Zariski closure data of a presentation in the linearization of `Aff(N)`.
#[derive(Debug, Clone)]
pub struct ClosureData {
    pub linearization: Linearization,
    /// Basis of the unipotent radical's Lie algebra as matrices, adapted to its lower
    /// central series.
    pub unipotent_log_basis: Vec<QMatrix>,
    /// The same algebra rebuilt abstractly; its coordinates refer to `unipotent_log_basis`.
    pub unipotent: AdaptedSubalgebra,
    /// Dimension of the Lie algebra generated by the kernel logs alone.
    pub generated_dim: usize,
    pub kernel: Vec<KernelElement>,
    pub levi: LeviPart,
}

impl ClosureData {
    pub fn compute(pres: &GroupPresentation) -> Result<Self> {
        let lin = Linearization::of(pres.algebra());
        let size = lin.dim();
        let (kernel, logs, mut conj_elems): (Vec<KernelElement>, Vec<QMatrix>, Vec<AffTrans>) =
            match pres.declared_hull() {
                None => {
                    let kernel = holonomy_kernel(pres)?;
                    let logs = kernel.iter().map(|k| k.log.clone()).collect();
                    (kernel, logs, Vec::new())
                }
                Some(h) => {
                    let logs = h.unipotent.iter().map(AffTrans::linear_log).collect::<Result<Vec<_>>>()?;
                    (Vec::new(), logs, h.torus.clone())
                }
            };
        conj_elems.extend(pres.generators().iter().cloned());
        let conj: Vec<(QMatrix, QMatrix)> = conj_elems
            .iter()
            .map(|g| (g.linearize().clone(), g.inverse().linearize().clone()))
            .collect();
        let generated = lie_closure(size, &logs, &[])?;
        let full = lie_closure(size, &logs, &conj)?;
        let unipotent = adapted_subalgebra(size * size, full.basis(), commutator_flat(size)).map_err(|_| {
            Error::ScopeViolation("unipotent part is not a nilpotent Lie algebra; outside quasi-unipotent scope".into())
        })?;
        let basis: Vec<QMatrix> = unipotent.basis.iter().map(|v| unflatten(size, v)).collect();
        if basis.iter().any(|m| !m.is_nilpotent()) {
            return Err(Error::ScopeViolation("unipotent part contains a non-nilpotent matrix".into()));
        }
        let mut data = ClosureData {
            linearization: lin,
            unipotent_log_basis: basis,
            unipotent,
            generated_dim: generated.dim(),
            kernel,
            levi: LeviPart {
                kind: LeviKind::Finite,
                elements: Vec::new(),
                group: None,
            },
        };
        data.levi = match pres.declared_hull() {
            None => finite_levi(pres, &data)?,
            Some(h) => LeviPart {
                kind: LeviKind::DeclaredTorus {
                    density_asserted: h.density_asserted,
                },
                elements: h
                    .torus
                    .iter()
                    .map(|t| LeviElement {
                        tag: 0,
                        transversal: Word::empty(),
                        correction: QMatrix::zeros(size, size),
                        element: t.clone(),
                    })
                    .collect(),
                group: None,
            },
        };
        Ok(data)
    }

    pub fn unipotent_dim(&self) -> usize {
        self.unipotent_log_basis.len()
    }

    pub fn size(&self) -> usize {
        self.linearization.dim()
    }

    /// Span of the unipotent log basis, as flattened matrices.
    pub fn unipotent_span(&self) -> Subspace {
        Subspace::spanned_by(
            self.size() * self.size(),
            &self.unipotent_log_basis.iter().map(flatten).collect::<Vec<_>>(),
        )
    }

    pub fn contains_log(&self, m: &QMatrix) -> bool {
        self.unipotent.coordinates(&flatten(m)).is_some()
    }

    /// Coordinates of a matrix in the unipotent log basis.
    pub fn log_coordinates(&self, m: &QMatrix) -> Option<Vec<Rat>> {
        self.unipotent.coordinates(&flatten(m))
    }

    pub fn log_from_coordinates(&self, c: &[Rat]) -> QMatrix {
        if self.unipotent.basis.is_empty() {
            return QMatrix::zeros(self.size(), self.size());
        }
        unflatten(self.size(), &self.unipotent.embed(c))
    }

    /// True when conjugation by `m` maps the unipotent log space into itself.
    pub fn normalizes(&self, m: &QMatrix) -> Result<bool> {
        let inv = m.inverse()?;
        Ok(self
            .unipotent_log_basis
            .iter()
            .all(|x| self.contains_log(&m.dot(x).dot(&inv))))
    }

    /// True when conjugation by `m` fixes every unipotent log basis element.
    pub fn centralizes(&self, m: &QMatrix) -> bool {
        self.unipotent_log_basis
            .iter()
            .all(|x| m.dot(x) == x.dot(m))
    }
}

fn finite_levi(pres: &GroupPresentation, data: &ClosureData) -> Result<LeviPart> {
    let trans = transversal(pres);
    let f = pres.holonomy();
    let tags: Vec<usize> = trans.iter().map(|(t, _)| *t).collect();
    let (group, _) = f.subgroup(&tags)?;
    let k = tags.len();
    let size = data.size();
    let base: Vec<QMatrix> = trans.iter().map(|(_, w)| pres.eval_word(w).linearize().clone()).collect();
    let mut l = base.clone();
    let pos = |tag: usize| tags.iter().position(|&t| t == tag).expect("closed tag image");
    let scale = -int(k as i64).recip();
    let mut converged = false;
    for _ in 0..data.unipotent_dim() + 2 {
        let mut defects = vec![QMatrix::zeros(size, size); k];
        let mut all_zero = true;
        for a in 0..k {
            for b in 0..k {
                let c = pos(f.mul(tags[a], tags[b]));
                let prod = l[a].dot(&l[b]).dot(&l[c].inverse()?);
                let d = nilpotent_log(&prod).map_err(|_| {
                    Error::ScopeViolation("holonomy tags are inconsistent with the unipotent kernel".into())
                })?;
                if !d.is_zero() {
                    all_zero = false;
                    defects[a] = defects[a].plus(&d);
                }
            }
        }
        if all_zero {
            converged = true;
            break;
        }
        for a in 0..k {
            let corr = nilpotent_exp(&defects[a].scale(&scale))?;
            l[a] = corr.dot(&l[a]);
        }
    }
    if !converged {
        return Err(Error::Internal("Levi averaging did not converge".into()));
    }
    let mut elements = Vec::with_capacity(k);
    for a in 0..k {
        if !is_semisimple(&l[a]) {
            return Err(Error::Internal("Levi element is not semisimple".into()));
        }
        if !data.normalizes(&l[a])? {
            return Err(Error::Internal("Levi element does not normalize the unipotent radical".into()));
        }
        if a > 0 && l[..a].contains(&l[a]) {
            return Err(Error::InvalidPresentation(format!(
                "holonomy tags are not faithful: {} and another element share a Levi element",
                f.names()[tags[a]]
            )));
        }
        let correction = nilpotent_log(&l[a].dot(&base[a].inverse()?))?;
        elements.push(LeviElement {
            tag: tags[a],
            transversal: trans[a].1.clone(),
            correction,
            element: data.linearization.recover(&l[a])?,
        });
    }
    if l.first().is_some_and(|e| !e.is_identity()) {
        return Err(Error::Internal("Levi element of the identity is not trivial".into()));
    }
    Ok(LeviPart {
        kind: LeviKind::Finite,
        elements,
        group: Some(group),
    })
}

/// The closure data of a presentation (unipotent radical plus Levi part).
pub fn unipotent_radical(pres: &GroupPresentation) -> Result<ClosureData> {
    ClosureData::compute(pres)
}

pub fn levi_complement(pres: &GroupPresentation) -> Result<LeviPart> {
    Ok(ClosureData::compute(pres)?.levi)
}

/// Logs of the left translations inside the linearization, indexed by the algebra basis.
#[derive(Debug, Clone)]
pub struct TranslationSpace {
    pub images: Vec<QMatrix>,
    span: Subspace,
    size: usize,
}

impl TranslationSpace {
    pub fn of(lin: &Linearization) -> Self {
        let alg = lin.algebra();
        let n = alg.dim();
        let images: Vec<QMatrix> = (0..n)
            .map(|i| {
                let p = GroupPoint::exp(alg, &crate::exactalg::unit_vector(n, i)).expect("dimension");
                AffTrans::left_translation(&p)
                    .linear_log()
                    .expect("left translations are unipotent")
            })
            .collect();
        let size = lin.dim();
        let span = Subspace::spanned_by(size * size, &images.iter().map(flatten).collect::<Vec<_>>());
        TranslationSpace { images, span, size }
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        self.span.contains(&flatten(m))
    }

    /// The algebra vector `v` with `log L_{exp v} = m`, if `m` is a translation log.
    pub fn to_algebra(&self, m: &QMatrix) -> Option<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = self.images.iter().map(flatten).collect();
        if cols.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        let a = QMatrix::from_columns(self.size * self.size, &cols);
        crate::exactalg::solve_linear(&a, &flatten(m))
            .ok()?
            .particular()
            .map(<[Rat]>::to_vec)
    }

    pub fn from_algebra(&self, v: &[Rat]) -> QMatrix {
        let mut out = QMatrix::zeros(self.size, self.size);
        for (c, m) in v.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.plus(&m.scale(c));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct TranslationVerdict {
    pub translation_like: bool,
    /// A unipotent log basis element outside the translation logs.
    pub witness: Option<QMatrix>,
}

pub fn translation_verdict(closure: &ClosureData) -> TranslationVerdict {
    let space = TranslationSpace::of(&closure.linearization);
    let witness = closure
        .unipotent_log_basis
        .iter()
        .find(|m| !space.contains(m))
        .cloned();
    TranslationVerdict {
        translation_like: witness.is_none(),
        witness,
    }
}

/// Whether the unipotent radical of the closure acts by left translations.
pub fn is_translation_like(pres: &GroupPresentation) -> Result<TranslationVerdict> {
    Ok(translation_verdict(&ClosureData::compute(pres)?))
}

/// Hirsch length from the declared series and, for discrete actions, from the kernel lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirschData {
    pub value: usize,
    pub from_series: Option<usize>,
    pub from_lattice: Option<usize>,
}

pub fn hirsch_data(pres: &GroupPresentation, closure: &ClosureData) -> Result<HirschData> {
    let from_series = pres
        .series()
        .map(|s| s.iter().filter(|f| **f == SeriesFactor::Infinite).count());
    // a discrete unipotent group is a lattice in its Zariski closure
    let from_lattice = (pres.is_discrete() && pres.declared_hull().is_none()).then_some(closure.generated_dim);
    match (from_series, from_lattice) {
        (Some(s), Some(l)) if s != l => Err(Error::InvalidPresentation(format!(
            "declared series gives Hirsch length {s} but the kernel lattice has rank {l}"
        ))),
        (Some(v), _) | (None, Some(v)) => Ok(HirschData {
            value: v,
            from_series,
            from_lattice,
        }),
        (None, None) => Err(Error::HirschUndetermined(
            "no series declared and the action is not asserted discrete".into(),
        )),
    }
}

pub fn hirsch_length(pres: &GroupPresentation) -> Result<usize> {
    Ok(hirsch_data(pres, &ClosureData::compute(pres)?)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail,
    Asserted,
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomStatus::Pass => "pass",
            AxiomStatus::Fail => "fail",
            AxiomStatus::Asserted => "asserted, not verified",
        })
    }
}

#[derive(Debug, Clone)]
pub struct AxiomResult {
    pub status: AxiomStatus,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct HullReport {
    /// Density, dimension of the unipotent radical, and the centralizer condition.
    pub axioms: [AxiomResult; 3],
    /// A Levi element centralizing the unipotent radical, when axiom 3 fails.
    pub witness: Option<AffTrans>,
}

impl HullReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.status != AxiomStatus::Fail)
    }
}

pub fn check_hull_axioms(pres: &GroupPresentation, closure: &ClosureData) -> HullReport {
    let a1 = match &closure.levi.kind {
        LeviKind::Finite => {
            let image = closure.levi.elements.len();
            let order = pres.holonomy().order();
            if image != order {
                AxiomResult {
                    status: AxiomStatus::Fail,
                    detail: format!("holonomy tags reach {image} of {order} elements"),
                }
            } else if closure.generated_dim != closure.unipotent_dim() {
                AxiomResult {
                    status: AxiomStatus::Fail,
                    detail: format!(
                        "kernel logs generate dimension {} of {}",
                        closure.generated_dim,
                        closure.unipotent_dim()
                    ),
                }
            } else {
                AxiomResult {
                    status: AxiomStatus::Pass,
                    detail: format!("tags onto F (order {order}); kernel logs generate u"),
                }
            }
        }
        LeviKind::DeclaredTorus { density_asserted } => AxiomResult {
            status: if *density_asserted { AxiomStatus::Asserted } else { AxiomStatus::Fail },
            detail: if *density_asserted {
                "declared torus; density asserted by the input".into()
            } else {
                "declared torus without a density assertion".into()
            },
        },
    };
    let dim_u = closure.unipotent_dim();
    let a2 = match hirsch_data(pres, closure) {
        Ok(h) if h.value == dim_u => AxiomResult {
            status: AxiomStatus::Pass,
            detail: format!("dim U = {dim_u} = h"),
        },
        Ok(h) => AxiomResult {
            status: AxiomStatus::Fail,
            detail: format!("dim U = {dim_u} != {} = h", h.value),
        },
        Err(e) => AxiomResult {
            status: AxiomStatus::Fail,
            detail: e.to_string(),
        },
    };
    let witness = closure
        .levi
        .generators()
        .into_iter()
        .find(|l| closure.centralizes(l.linearize()))
        .cloned();
    let a3 = match &witness {
        None => AxiomResult {
            status: AxiomStatus::Pass,
            detail: "no nontrivial Levi element centralizes U".into(),
        },
        Some(w) => AxiomResult {
            status: AxiomStatus::Fail,
            detail: format!("Levi element {w} centralizes U but is not in Z(U)"),
        },
    };
    HullReport {
        axioms: [a1, a2, a3],
        witness,
    }
}

#[derive(Debug, Clone)]
pub struct CrystallographicVerdict {
    pub crystallographic: bool,
    pub dim_u: usize,
    pub hirsch: usize,
    pub dim_n: usize,
    pub translation_like: bool,
    pub discreteness_asserted: bool,
}

pub fn crystallographic_verdict(pres: &GroupPresentation, closure: &ClosureData) -> Result<CrystallographicVerdict> {
    let hirsch = hirsch_data(pres, closure)?.value;
    let dim_u = closure.unipotent_dim();
    let dim_n = pres.algebra().dim();
    let translation_like = translation_verdict(closure).translation_like;
    let discreteness_asserted = pres.is_discrete();
    Ok(CrystallographicVerdict {
        crystallographic: dim_u == hirsch && hirsch == dim_n && (translation_like || discreteness_asserted),
        dim_u,
        hirsch,
        dim_n,
        translation_like,
        discreteness_asserted,
    })
}

pub fn is_crystallographic(pres: &GroupPresentation) -> Result<CrystallographicVerdict> {
    crystallographic_verdict(pres, &ClosureData::compute(pres)?)
}

/// Writes a matrix as a combination of matrix units, e.g. `E12 + E23` or `-1/2*E13`.
pub fn unit_sum_string(m: &QMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = &m[(i, j)];
            if c.is_zero() {
                continue;
            }
            let unit = if m.rows() < 10 {
                format!("E{}{}", i + 1, j + 1)
            } else {
                format!("E{},{}", i + 1, j + 1)
            };
            let mag = c.abs();
            let term = if mag.is_one() { unit } else { format!("{mag}*{unit}") };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
