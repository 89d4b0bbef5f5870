//! Exact rational arithmetic: matrices, linear systems, Jordan-Chevalley decomposition,
//! nilpotent exponentials and multivariate polynomials.

mod jordan;
mod linear;
mod matrix;
mod poly;
mod rat;
mod upoly;

use std::fmt::Debug;

pub use jordan::{
    exp_scaled, is_semisimple, is_unipotent_matrix, jordan_chevalley, nilpotent_exp,
    nilpotent_log, JordanPair,
};
pub(crate) use jordan::exp_series;
pub use linear::{
    echelon_basis, is_zero_vec, kernel, rank_of, solve_linear, vec_add, vec_neg, vec_scale,
    vec_sub, SolutionSet, Subspace,
};
pub use matrix::QMatrix;
pub use poly::{Exponents, Poly};
pub use rat::{factorial, int, is_integer, one, parse_rat, rat, unit_vector, zero, zero_vec, Rat};
pub use upoly::{char_poly, UPoly};

/// Coefficients that Lie brackets and group laws can be evaluated over: plain rationals
/// for numeric points, polynomials for symbolic ones.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn c_is_zero(&self) -> bool;
    fn c_zero(&self) -> Self;
    fn c_add(&self, other: &Self) -> Self;
    fn c_mul(&self, other: &Self) -> Self;
    fn c_scale(&self, s: &Rat) -> Self;
}

impl Coefficient for Rat {
    fn c_is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn c_zero(&self) -> Self {
        zero()
    }

    fn c_add(&self, other: &Self) -> Self {
        self + other
    }

    fn c_mul(&self, other: &Self) -> Self {
        self * other
    }

    fn c_scale(&self, s: &Rat) -> Self {
        self * s
    }
}

impl Coefficient for Poly {
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }

    fn c_zero(&self) -> Self {
        Poly::zero(self.nvars())
    }

    fn c_add(&self, other: &Self) -> Self {
        self.plus(other)
    }

    fn c_mul(&self, other: &Self) -> Self {
        self.times(other)
    }

    fn c_scale(&self, s: &Rat) -> Self {
        self.scale(s)
    }
}
