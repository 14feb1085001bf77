//! Degree-sequence conditions for Hamilton cycles in digraphs, the extremal
//! constructions that show them tight, exact cycle and 1-factor search, and
//! (robust) outexpansion checks, with a small-scale experiment harness.

pub mod conditions;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod expansion;
pub mod harness;
pub mod ratio;
pub mod solver;
pub mod text;
pub mod tournament;

pub use conditions::{ApproxParams, Clause, Condition, ConditionReport, Failure};
pub use digraph::{dominates, CycleWitness, DegreeSequences, Digraph};
pub use error::{Error, Result};
pub use ratio::{parse_rational, Rational};
pub use solver::{CycleSearch, SolveBudget};
