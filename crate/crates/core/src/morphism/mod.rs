//! Morphisms between presented groups: extension to the hulls, fixed-point cosets of reductive
//! groups, restriction to invariant cosets, and the intertwining affine maps.

mod fixed;
mod group;
mod hull;
mod induce;
mod restrict;

pub use fixed::{enumerate_finite, fixed_points_reductive, FixedCoset, ReductiveKind};
pub use group::{verify_morphism, Certificate, GroupMorphism};
pub use hull::{extend_to_hulls, HullMorphism, LeviImage};
pub use induce::{
    classify_affine_maps, image_coset_cocompact, image_presentation, induce_affine_map, intertwines,
    verify_intertwining, with_translation, Classification, InducedMap,
};
pub use restrict::{restrict_action, Restriction};

#[cfg(test)]
mod tests;
