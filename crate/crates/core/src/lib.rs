//! Pebble games, pebbling contradictions and configuration-style resolution.
//!
//! The crate is organised bottom-up:
//!
//! * [`dag`]: single-sink DAGs and the graph families used throughout.
//! * [`pebbling`]: black-white, labelled and blob pebble games, plus exact
//!   price search on small graphs.
//! * [`boolfunc`]: truth-table Boolean functions and their prime-implicate
//!   clause sets.
//! * [`formulas`]: clauses, CNF formulas, pebbling contradictions,
//!   substitution, 3-CNF conversion, a brute-force SAT oracle and DIMACS.
//! * [`resolution`]: refutation objects, the checker, and proof builders.
//! * [`projections`]: f-projections and extraction of refutations of `F`
//!   from refutations of `F[f]`.

pub mod bits;
pub mod boolfunc;
pub mod dag;
pub mod formulas;
pub mod names;
pub mod pebbling;
pub mod projections;
pub mod resolution;

pub use boolfunc::BooleanFunction;
pub use dag::Dag;
pub use formulas::{Clause, CnfFormula, Lit};
pub use names::Var;

/// Default bound on visited states for every exhaustive search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
