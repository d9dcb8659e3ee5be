//! Exact Dedekind sums and the equalities between them.
//!
//! Every value is the normalized sum `S(m, n) = 12 s(m, n)` held as an exact
//! [`Rational`]. The crate provides
//!
//! * [`arith`]: rationals, inverses, CRT, Legendre symbols, square roots mod p;
//! * [`dedekind`]: the definitional evaluator, a logarithmic evaluator based on
//!   reciprocity, and the three-term relation;
//! * [`equality`]: integrality test, pair classification, equality classes;
//! * [`families`]: constructions of provably equal sums (power and square-free
//!   moduli);
//! * [`cli`]: the command-line surface, including the `verify-paper` replay.

pub mod arith;
pub mod cli;
pub mod dedekind;
pub mod equality;
mod error;
pub mod families;

pub use arith::{Rational, Residue};
pub use error::{Error, Result};
