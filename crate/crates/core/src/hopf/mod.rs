//! The graded algebra `H_n`, its bosonization `H_n ⋊ kC_N`, integrals,
//! pairings, and exhaustive axiom verifiers.

mod bosonization;
mod structure;
mod verify;

pub use bosonization::{Bosonization, BosonizedElement, CoproductRule, TensorCube, TensorSquare};
pub use structure::{HnStructure, Structure};
pub use verify::{
    trace_gram, verify_all, verify_hopf_axioms, verify_integrals, verify_spherical, AxiomCheck, HopfReport,
    ALL_PAIRS_LIMIT,
};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("n = {0} is too small (need n >= 2)")]
    TooSmall(u64),
    #[error("field has roots of order {found}, but H_n needs order N = {expected}")]
    FieldMismatch { expected: u64, found: u64 },
    #[error("exponent vector has {found} entries, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("exponent vector {0:?} exceeds p_k - 1 in some slot")]
    ExponentRange(Vec<u32>),
    #[error("element has a nonzero K part ({0}); the trace is defined on H_n only")]
    NotInHn(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
