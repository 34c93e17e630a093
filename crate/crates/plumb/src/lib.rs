//! Exact arithmetic for weighted dual graphs of resolved normal surface
//! singularities: negative definite intersection lattices, rational cycles,
//! distinguished cycles (fundamental, canonical), blow-up calculus, ideal
//! invariants derived from cycle data, and a classification layer for cones
//! over elliptic curves.
//!
//! Every predicate is computed over arbitrary-precision integers or
//! rationals; nothing in the crate goes through floating point.

pub mod blowup;
pub mod construct;
pub mod corpus;
pub mod elliptic;
pub mod graph;
pub mod invariants;
pub mod singularity;

mod tri;

pub use tri::{Tri, TriBool};

use thiserror::Error as ThisError;

/// Crate-wide error type.
///
/// `Invalid` rejects structurally bad inputs (graphs, cycles, centers);
/// `Inconsistent` flags declared analytic data that contradicts the graph
/// arithmetic; `Json` wraps malformed serialized input, keeping the
/// parser's position diagnostics.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("{0}")]
    Invalid(String),
    #[error("inconsistent analytic data: {0}")]
    Inconsistent(String),
    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}

#[cfg(test)]
pub(crate) mod testutil;
