//! Exact computations around embedded Hirzebruch surfaces `F_k(a,b)`.
//!
//! * [`braid`]: braid words, the Artin action on free groups and the word
//!   problem, half-twists and full twists.
//! * [`arrangement`]: braid monodromy of real line arrangements by exact
//!   sweeping, and the induced factorizations of the full twist.
//! * [`factorization`]: ordered factor lists with provenance and degree metadata.
//! * [`degeneration`]: the triangulated union of planes `F⁰_k(a,b)` with its
//!   numbered lines and vertices.
//! * [`regeneration`]: the doubled-strand factorization skeleton and its
//!   degree audit.
//! * [`invariants`]: Chern numbers, signature, fundamental group and
//!   classification of the Galois covers.
//! * [`cli`]: the `hirzebruch` command line front end.
//!
//! Composition of braids is always left to right: `u·v` means "first `u`,
//! then `v`", and braids act on free groups from the right.

pub mod arrangement;
pub mod braid;
pub mod cli;
pub mod degeneration;
pub mod error;
pub mod factorization;
pub mod invariants;
pub mod regeneration;

pub use error::{Error, Result};
