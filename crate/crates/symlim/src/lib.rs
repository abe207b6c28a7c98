//! Exact and numerical computation with inductive limits of symmetric groups
//! under block-diagonal embedding.
//!
//! The library covers the finite groups `S_N` (permutations, cycle types,
//! minimal class representatives with increasing Coxeter words), the inductive
//! system `S_{N_1} ⊂ S_{N_2} ⊂ …` generated by an eventually-periodic base
//! sequence, the Young orthogonal representations and their normalized
//! characters, the limit characters `χ_nat^p`, `sgn_∞·χ_nat^p` and `χ^∞`,
//! convergence experiments along partition classes, the odometer model with
//! its degree cocycle and tower approximation, and the supernatural-number
//! isomorphism test for two base sequences.
//!
//! Measure-theoretic and character values are exact rationals wherever the
//! objects are cylinder-set-defined; Young orthogonal matrix entries involve
//! square roots and use `f64`.

pub mod characters;
pub mod classify;
pub mod embedding;
pub mod error;
pub mod limits;
pub mod odometer;
pub mod partitions;
pub mod permgroup;
pub mod yor;

pub use error::Error;

/// Default cap on the number of points of a materialized permutation.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;
/// Default cap on the dimension of a Young orthogonal representation.
pub const DEFAULT_DIM_CAP: u64 = 50_000;
