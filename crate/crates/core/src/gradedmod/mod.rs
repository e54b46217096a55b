//! Finite-dimensional graded modules over `H_n`, stored as degreewise blocks.
//!
//! A module is a finite family of vector spaces `M^i` together with maps
//! `d_k: M^i → M^{i+n_k}` that commute pairwise and satisfy `d_k^{p_k} = 0`.
//! Degree shifts follow `(M{b})^i = M^{i+b}`.

mod io;
mod iso;
mod map;
mod module;
mod random;
mod standard;
mod sub;
mod tensor;

use thiserror::Error;

use crate::arith::ArithError;

pub use io::{
    map_from_json, map_to_json, module_from_file, module_from_json, module_to_file, module_to_json, BlockFile, MapFile,
    ModuleFile,
};
pub use iso::{is_isomorphic, is_isomorphic_with, IsoOutcome, IsoSearch, Obstruction};
pub use map::{hom_dimension, hom_space, ModuleMap};
pub use module::{GradedModule, ModuleBuilder};
pub use random::{extension, random_coefficient, random_extension, random_hom, random_module, random_piece, Extension, RandomModules};
pub use standard::{
    example_three_primes, example_v, example_v_double_prime, example_v_prime, free, string_module, trivial, v_k,
};
pub use sub::{
    close_under_action, cokernel, image_spaces, kernel, quotient, submodule, submodule_from_spaces, HomogeneousVector,
    Quotient, Submodule, Subspaces,
};
pub use tensor::{
    braiding_iso, dual, hom_action, hom_vector_as_map, internal_hom, internal_hom_direct, map_as_hom_vector, tensor,
    tensor_maps, HomLayout,
    TensorLayout, TensorVariant,
};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("expected {expected} action families (one per prime), found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("d{k} block at degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { k: usize, degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d{k}^p is nonzero starting in degree {degree}")]
    NilpotencyViolation { k: usize, degree: i64 },
    #[error("d{k} and d{l} do not commute in degree {degree}")]
    CommutationViolation { k: usize, l: usize, degree: i64 },
    #[error("modules live over H_{0} and H_{1}")]
    StructureMismatch(u64, u64),
    #[error("prime index {k} out of range (n has {t} prime factors)")]
    PrimeIndex { k: usize, t: usize },
    #[error("n = {n} is not {required}")]
    IncompatibleN { n: u64, required: &'static str },
    #[error("map block at source degree {degree} has shape {found:?}, expected {expected:?}")]
    MapShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("map does not commute with d{k} in degree {degree}")]
    NotIntertwiner { k: usize, degree: i64 },
    #[error("map has degree {found}, expected {expected}")]
    MapDegree { expected: i64, found: i64 },
    #[error("maps do not compose or combine: sources, targets or degrees disagree")]
    CompositionMismatch,
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("subspace is not closed under d{k} in degree {degree}")]
    NotSubmodule { k: usize, degree: i64 },
    #[error("invalid module file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
