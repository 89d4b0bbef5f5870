//! Presentations of virtually polycyclic groups by affine generators and the real Zariski
//! closure of their image: unipotent radical, Levi part, Hirsch length and hull axioms.

mod finite;
mod hull;
mod presentation;
mod word;

pub use finite::FiniteGroup;
pub use hull::{
    check_hull_axioms, crystallographic_verdict, hirsch_data, hirsch_length, holonomy_kernel,
    is_crystallographic, is_translation_like, levi_complement, translation_verdict, transversal,
    unipotent_radical, unit_sum_string, AxiomResult, AxiomStatus, ClosureData,
    CrystallographicVerdict, HirschData, HullReport, KernelElement, LeviElement, LeviKind,
    LeviPart, TranslationSpace, TranslationVerdict,
};
pub use presentation::{DeclaredHull, GroupPresentation, PresentationSpec, SeriesFactor};
pub use word::Word;

#[cfg(test)]
mod tests;
