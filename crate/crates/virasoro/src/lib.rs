//! Exact computations in the representation theory of the Virasoro algebra.
//!
//! The Virasoro algebra is spanned by operators `d(m)` for integer `m`
//! together with a central element `C`, subject to
//!
//! ```text
//! [d(m), d(n)] = (n - m) d(m+n) + delta_{m,-n} (m^3 - m)/12 C .
//! ```
//!
//! This crate works with three families of modules, always over exact
//! rational scalars:
//!
//! * Verma modules `M(c, h)`, generated by a highest weight vector killed by
//!   every `d(k)` with `k >= 1` ([`verma`]);
//! * their simple quotients `V(c, h)` by the maximal proper submodule, which
//!   is generated by at most two singular vectors ([`verma`]);
//! * intermediate series modules `V_{alpha,beta}` with basis `{v_j}` and
//!   action `d(m) v_j = (alpha + j + m beta) v_{j+m}` ([`tensor`]).
//!
//! The main analysis tools concern tensor products `V(c,h) (x) V'_{alpha,beta}`:
//! a linear functional on the enveloping algebra of the lowering operators
//! ([`phi`]) whose integer roots control simplicity, submodule filtrations,
//! an exact truncated action on tensor states, and an isomorphism classifier
//! ([`tensor`]).
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals
//! ([`rat::Rat`]), polynomial data is sparse with rational coefficients
//! ([`poly::MPoly`]), and linear algebra clears denominators and runs
//! fraction-free elimination over big integers ([`linalg`]).

pub mod enveloping;
mod error;
pub mod linalg;
pub mod parse;
pub mod partition;
pub mod phi;
pub mod poly;
pub mod rat;
pub mod tensor;
pub mod verma;

pub use error::Error;

/// Convenient alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
