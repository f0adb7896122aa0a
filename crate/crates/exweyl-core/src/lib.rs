//! Exact computational group theory for the Weyl groups of exceptional type
//! (G2, F4, E6, E7, E8): root systems, permutation-group machinery with
//! strong generating sets, conjugacy class data, exact character tables via
//! modular eigenvector splitting and cyclotomic lifting, Yetter-Drinfeld
//! braidings with quantum-symmetrizer ranks, and the finite-dimensionality
//! criteria built on top of them.
//!
//! Everything numeric is exact: rationals are arbitrary precision,
//! cyclotomic values are canonical coordinate vectors mod the e-th
//! cyclotomic polynomial, and the only modular arithmetic (inside the
//! character-table solver) is lifted back to cyclotomic integers and
//! re-verified. No floating point anywhere.

pub mod braided;
pub mod cache;
pub mod chartab;
pub mod classes;
pub mod criteria;
pub mod exact;
pub mod perm;
pub mod rootsys;
pub mod tables;

use std::fmt;

/// Library-wide error type. Budget and scope failures are deliberately
/// distinct from verification mismatches: the CLI maps them to different
/// exit codes and the acceptance harness treats them differently.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A configured budget (memory, search, discovery) was exhausted before
    /// the computation could certify its answer.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// The request is outside the supported scope (e.g. a higher-dimensional
    /// irreducible character on a non-central class).
    #[error("unsupported scope: {0}")]
    Scope(String),
    /// A cross-check that must hold failed; the computed data is not trusted.
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    /// Malformed input (bad class label, bad expected-table file, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// Cache file rejected (magic/version/seed mismatch or corruption).
    #[error("cache rejected: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(msg: impl fmt::Display) -> Self {
        Error::Budget(msg.to_string())
    }
    pub fn scope(msg: impl fmt::Display) -> Self {
        Error::Scope(msg.to_string())
    }
    pub fn mismatch(msg: impl fmt::Display) -> Self {
        Error::Mismatch(msg.to_string())
    }
    pub fn input(msg: impl fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }
}
