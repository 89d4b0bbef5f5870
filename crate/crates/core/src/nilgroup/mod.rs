//! Rational nilpotent Lie algebras and their simply connected groups.

mod algebra;
mod bch;
mod morphism;
mod point;

pub use algebra::{adapted_subalgebra, AdaptedSubalgebra, NilLieAlgebra, MAX_CLASS};
pub use bch::{bch, bch_to_order};
pub use morphism::{extend_from_lattice, lie_morphism_apply, LieMorphism};
pub use point::{bch_multiply, AlgebraRef, GroupPoint};
pub(crate) use point::same_algebra;
