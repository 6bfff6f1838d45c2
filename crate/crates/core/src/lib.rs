//! A workbench for Lewis-style conditional logics.
//!
//! * [`formula`]: the formula/schema AST, parser and printer.
//! * [`semantics`]: finite selection-function frames, truth sets, frame
//!   conditions and validity.
//! * [`kernel`]: a Hilbert-style proof checker with a tautology oracle and a
//!   registry of derived rules.
//! * [`search`]: backtracking search for countermodels.
//! * [`corpus`]: the bundled catalog of schemas, rules, systems and proofs.
//! * [`cli`]: the command-line front end used by the `condlogic` binary.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod kernel;
pub mod search;
pub mod semantics;

pub use error::{Error, Result};
pub use formula::{parse, Formula, Path, Schema, Step, Substitution};
