//! Counting sequences and their recurrences.
//!
//! [`transfer_matrix`] and [`sequence`] give `a(n) = v M^n w` exactly.
//! [`matrix_min_poly`] finds the minimal polynomial of `M` from random
//! projections modulo large primes and confirms it exactly; [`lda`] cuts it
//! down to the lowest-degree annihilator of the sequence, and
//! [`minimal_recurrence`] finds the same annihilator from the terms alone.
//! [`dominant_root`] and [`asymptotic_fit`] give the growth rate and
//! constant.

mod factor;
mod matrix;
pub mod modp;
mod poly;
mod recurrence;
mod roots;

pub use factor::{factor_int_poly, factor_int_poly_bounded, Factorization, DEFAULT_DEGREE_BOUND};
pub use matrix::{
    annihilates_matrix, matrix_min_poly, matrix_min_poly_with, sequence, transfer_matrix, CountingSystem,
    MinPolyOptions,
};
pub use poly::IntPoly;
pub use recurrence::{annihilates_from, describe, lda, minimal_recurrence, window_apply, window_count, Annihilator};
pub use roots::{asymptotic_fit, dominant_root, dominant_root_within, AsymptoticFit, GrowthMode, RootInterval};
