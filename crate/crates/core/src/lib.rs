//! Exact computations with NIL-affine actions of virtually polycyclic groups.

pub mod affine;
pub mod closure;
pub mod error;
pub mod exactalg;
pub mod morphism;
pub mod nilgroup;
pub mod polymap;

pub use error::{Error, Result};
