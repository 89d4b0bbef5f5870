//! Polynomial maps with exact coefficients, polynomial conjugation of actions, and the passage
//! to translation-like actions through orbit charts.

mod chart;
mod map;

pub use chart::{conjugate_action, induce_polynomial_map, make_translation_like, poly_intertwines, TranslationLikeChart};
pub use map::{invert_polynomial, poly_apply, poly_compose, PolyMap, DEFAULT_DEGREE_BOUND};
