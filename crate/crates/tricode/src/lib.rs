//! Exact arithmetic over finite chain rings and classification of polycyclic
//! codes with trinomial moduli.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: integer helpers (gcd, factorization, modular arithmetic).
//! * [`field`]: the residue field F_{p^r} with complete polynomial
//!   factorization.
//! * [`ring`]: finite chain rings R = GR(p^m, r)[u] / (g(u), p^(m-1) u^t) with
//!   exact element arithmetic, units, Teichmüller representatives, and the
//!   structure of the unit group.
//! * [`poly`]: polynomials over a chain ring, Hensel lifting, factorization of
//!   basic-irreducible products, multiplicative orders, and trinomial
//!   discriminants.
//! * [`codes`]: ideals of R[x]/(f) as codes, canonical generating sets in
//!   echelon form, membership, cardinality, minimum distance, enumeration, and
//!   transfer of ideals between related quotient presentations.
//! * [`equiv`]: the scaled-variable equivalence on trinomials x^n - a x^k - b,
//!   class counting, representatives, and isometry classification.
//! * [`additive`]: the same equivalence restricted to subgroups of the unit
//!   group (Teichmüller set, subring units, custom subgroups).

pub mod additive;
pub mod arith;
pub mod codes;
pub mod equiv;
pub mod field;
pub mod poly;
pub mod ring;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(ThisError, Debug)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Text that does not parse as a ring, element, or polynomial.
    #[error("parse error: {0}")]
    Parse(String),

    /// An operation that requires a unit received a non-unit.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// Operands taken from different rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// An operation that requires a squarefree residue image.
    #[error("not squarefree: {0}")]
    NotSquareFree(String),

    /// An operation that requires coprime arguments.
    #[error("not coprime: {0}")]
    NotCoprime(String),

    /// A configured resource bound (enumeration size, trial-division range)
    /// was exceeded before the computation finished.
    #[error("resource bound exceeded: {0}")]
    BoundExceeded(String),

    /// An intermediate integer quantity does not fit the working width.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Two independent computations of the same quantity disagreed.
    #[error("cross-check failed: {0}")]
    SelfCheck(String),

    /// An internal invariant was violated.
    #[error("internal error: {0}")]
    Internal(String),

    /// A valid request outside the implemented parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
