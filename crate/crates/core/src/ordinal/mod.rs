//! Ordinals below epsilon-zero and the deg-lex order on increasing sequences.
//!
//! Textual syntax: `w^2*3 + w + 4`, with `w` (or `ω`) for omega. Only
//! addition is exposed; `w*k` is read as a coefficient.

mod cnf;
mod deglex;

pub use cnf::{ord_compare, parse_ordinal, OrdinalCNF};
pub use deglex::{deglex_compare, deglex_descent_probe, DegLexIndex};

pub(crate) use cnf::Parser;
