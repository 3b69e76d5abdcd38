//! Sign vectors, sign sets of subspaces and of linear images of orthant
//! regions, and the sign-vector conditions built on them.
//!
//! Every answer is an exact decision: realizability of a sign pattern is a
//! strict linear feasibility question answered by [`crate::linalg::feasible`].

mod checks;
mod enumerate;
mod suite;
mod vector;

pub use checks::{
    check_existence, check_exists_unique, check_noother, check_prop_pmatrix, check_prop_s, check_robust,
    check_uniqueness, common_sign_vector, open_orthants, NoOtherVariant,
};
pub use enumerate::{image_closure_witness, image_sign_set, realizable_in_subspace, sign_set_of_subspace, Region};
pub use suite::{duality_and_implication_suite, SuiteViolation};
pub use vector::{ClosureMode, Sign, SignSet, SignVector};

use thiserror::Error;

use crate::linalg::LinalgError;

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest ambient dimension whose sign set is enumerated.
    pub max_subspace_dim: usize,
    /// Largest `|Ω|` (image dimension).
    pub max_omega: usize,
    /// Largest dimension whose open orthants are swept.
    pub max_orthant_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_subspace_dim: 10, max_omega: 10, max_orthant_dim: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("enumeration too large: {what} is {size}, cap is {cap}")]
    EnumerationTooLarge { what: String, size: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
