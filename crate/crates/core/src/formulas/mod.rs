//! Clauses, CNF formulas and the constructions on them: pebbling
//! contradictions, substitution, 3-CNF conversion, a brute-force SAT oracle
//! and DIMACS I/O.

mod clause;
mod cnf;
mod dimacs;
mod sat;
mod subst;
mod threecnf;

use thiserror::Error;

use crate::names::Var;

pub use clause::{clause, Clause, Lit, EMPTY_CLAUSE};
pub use cnf::{pebbling_axiom, pebbling_contradiction, sink_axiom, vertex_var, CnfFormula};
pub use dimacs::{from_dimacs, to_dimacs};
pub use sat::{
    brute_force_sat, brute_force_sat_with_limit, is_minimally_unsat, Assignment, DEFAULT_SAT_VARS,
};
pub use subst::{block_vars, literal_clauses, substitute, substitute_clause};
pub use threecnf::{extended_3cnf, is_weight_constrained};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause contains `{0}` in both polarities")]
    TrivialClause(Var),
    #[error("bad literal `{0}`")]
    BadLiteral(String),
    #[error("variable `{0}` already carries a substitution index")]
    AlreadySubstituted(Var),
    #[error("{vars} variables exceed the oracle limit of {limit}")]
    BudgetExceeded { vars: usize, limit: usize },
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
}
