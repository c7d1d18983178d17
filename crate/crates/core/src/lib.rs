//! Exact-arithmetic library for the combinatorial generating series
//! attached to plane curve germs y^n = x^d: Hilbert/Quot/Picard series,
//! Gen and Cogen formulas for torus-link superpolynomial series,
//! rational q,t-Catalan numbers, semigroup-module and cocharacter
//! combinatorics, and the identity checkers tying them together.

use std::fmt;

pub mod exactpoly;
pub mod gammamod;
pub mod dyckpath;
pub mod symfunc;
pub mod linkseries;
pub mod springer;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arithmetic contract violation (bad substitution, truncation misuse,
    /// inexact division, ...).
    #[error("arithmetic error: {0}")]
    Arith(String),
    /// Invalid input to a combinatorial operation.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// (n, d) was required to be coprime.
    #[error("n = {n} and d = {d} must be coprime for this operation")]
    NonCoprime { n: u32, d: u32 },
    /// Malformed JSON or text input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Cache I/O failure.
    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub fn arith(msg: impl fmt::Display) -> Self {
        Error::Arith(msg.to_string())
    }
    pub fn invalid(msg: impl fmt::Display) -> Self {
        Error::Invalid(msg.to_string())
    }
    pub fn parse(msg: impl fmt::Display) -> Self {
        Error::Parse(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
