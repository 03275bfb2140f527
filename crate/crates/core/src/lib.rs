//! Derived limits of inverse sequences of finitely generated abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`abelian`]: exact integer linear algebra (Smith and Hermite normal
//!   forms), finitely generated abelian groups in invariant-factor form,
//!   homomorphisms, subgroups, kernels and cokernels.
//! - [`ordinal`]: ordinals below epsilon-zero in Cantor normal form and the
//!   deg-lex well order on finite increasing ordinal sequences.
//! - [`tower`]: eventually constant inverse sequences and their transfinite
//!   image filtration, Mittag-Leffler stabilization, `lim`/`lim^1`,
//!   completion status, locality, the epimorphic/local decomposition, null
//!   extensions, shifts and the `A(n)` towers.
//! - [`walker`]: the carrying-relation rewriting engine for Walker-type
//!   groups indexed by ordinal sequences, with exact `p`-heights.
//! - [`scenario`]: batch scenarios, reports and the fixed verification
//!   suites behind the `lim1` binary.

pub mod abelian;
mod error;
pub mod ordinal;
pub mod random;
pub mod scenario;
pub mod tower;
pub mod walker;

pub use error::{Error, Result};
