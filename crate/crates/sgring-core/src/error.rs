use thiserror::Error;

use crate::lattice::IntVector;

/// Errors reported by the semigroup toolkit.
///
/// Arithmetic is exact everywhere; anything that would silently wrap or
/// exceed a configured resource budget is surfaced as a typed error instead.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow during {context}")]
    Overflow { context: &'static str },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("presentation must contain at least one generator")]
    EmptyGenerators,

    #[error("generator {vector} is invalid: {reason}")]
    InvalidGenerator { vector: IntVector, reason: &'static str },

    #[error("generators span a lattice of rank {actual}, need rank {expected}")]
    RankDeficient { expected: usize, actual: usize },

    #[error("semigroup is not simplicial: {extreme_rays} extreme rays, rank {rank}")]
    NotSimplicial { extreme_rays: usize, rank: usize },

    #[error("extreme ray matrix is singular")]
    DegenerateTransform,

    #[error("cone computations are limited to dimension {limit}, got {dim}")]
    ConeDimension { dim: usize, limit: usize },

    #[error("vector {vector} does not lie in the ambient lattice")]
    NotInLattice { vector: IntVector },

    #[error("sublattice is not contained in the ambient lattice (offending basis vector {vector})")]
    SublatticeNotContained { vector: IntVector },

    #[error("membership box for {vector} has volume {volume}, exceeding the limit {limit}")]
    BoxVolumeExceeded { vector: IntVector, volume: u128, limit: u128 },

    #[error("Apéry set exceeds the configured cap of {limit} elements")]
    AperyCapExceeded { limit: usize },

    #[error("enumeration exceeds the configured cap of {limit} elements")]
    EnumerationCapExceeded { limit: usize },

    #[error("no positive multiple of {direction} inside the semigroup up to {bound}")]
    NoRayMultiple { direction: IntVector, bound: i64 },

    #[error("semigroup is not Cohen-Macaulay: Apéry elements {first} and {second} share a coset")]
    NotCohenMacaulay { first: IntVector, second: IntVector },

    #[error("vector {vector} is not an element of the semigroup")]
    NotInSemigroup { vector: IntVector },

    #[error("operation requires rank 1, presentation has rank {actual}")]
    RankNotOne { actual: usize },

    #[error("projection onto coordinate {coord} is zero for every generator")]
    ZeroProjection { coord: usize },

    #[error("{n} and {m} are not coprime")]
    NotCoprime { n: i64, m: i64 },

    #[error("invalid cyclic parameters (n, m1) = ({n}, {m1}): {reason}")]
    InvalidCyclic { n: i64, m1: i64, reason: &'static str },

    #[error("no Ulrich element available: {reason}")]
    UlrichUnavailable { reason: String },

    #[error("cross-validation mismatch for (n, m1) = ({n}, {m1}): {detail}")]
    CrossValidationMismatch { n: i64, m1: i64, detail: String },

    #[error("internal consistency violation: {detail}")]
    InternalConsistency { detail: String },
}

impl Error {
    pub(crate) fn overflow(context: &'static str) -> Self {
        Error::Overflow { context }
    }

    pub(crate) fn internal(detail: impl Into<String>) -> Self {
        Error::InternalConsistency { detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
