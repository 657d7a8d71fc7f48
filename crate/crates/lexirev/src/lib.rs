//! Equivalence and redundancy of lexicographic belief revision sequences.
//!
//! A revision sequence is a list of propositional formulae ordered from most
//! recent to oldest. Each sequence induces a total preorder on the models of
//! its alphabet: earlier formulae dominate, later ones break ties. Two
//! sequences are equivalent when they induce the same preorder, and an entry
//! is redundant when removing it preserves the preorder.
//!
//! The crate offers three decision paths:
//!
//! * [`semantics`] — reference implementation by explicit model enumeration;
//!   exponential, used as the oracle for everything else.
//! * [`encoder`] — reduction of order difference to propositional
//!   satisfiability, decided by the built-in [`solver`]; this is the default
//!   engine.
//! * [`horn`] — polynomial procedures for the Horn fragment, including the
//!   two-sequence redundancy test and the hardness-instance generator.
//!
//! [`redundancy`] ties the engines together and provides sequence
//! minimization.

pub mod encoder;
pub mod formula;
pub mod horn;
pub mod redundancy;
pub mod semantics;
pub mod solver;

mod error;

pub use error::{Error, Result};
