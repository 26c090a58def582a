use super::clause::{Clause, Lit};
use super::cnf::CnfFormula;
use super::FormulaError;
use crate::boolfunc::{BooleanFunction, Polarity};
use crate::names::Var;

/// `x#1, ..., x#d`.
pub fn block_vars(x: &Var, d: usize) -> Vec<Var> {
    (1..=d).map(|i| x.block_member(i)).collect()
}

/// `Cl[f(x⃗)]` for a positive literal, `Cl[¬f(x⃗)]` for a negative one.
pub fn literal_clauses(lit: &Lit, f: &BooleanFunction) -> Vec<Clause> {
    let polarity = if lit.positive {
        Polarity::Positive
    } else {
        Polarity::Negative
    };
    f.canonical_clauses(&block_vars(&lit.var, f.arity()), polarity)
        .expect("block variables are distinct and match the arity")
}

/// `C[f]`: every disjunction picking one clause from each literal's set.
pub fn substitute_clause(c: &Clause, f: &BooleanFunction) -> Vec<Clause> {
    let mut acc = vec![Clause::empty()];
    for lit in c.lits() {
        let options = literal_clauses(lit, f);
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for partial in &acc {
            for o in &options {
                // Blocks of distinct variables are disjoint, so the union is
                // never trivial.
                next.push(partial.union(o).expect("disjoint variable blocks"));
            }
        }
        acc = next;
    }
    acc.sort();
    acc.dedup();
    acc
}

/// `F[f]`. Variables of `F` must not already be substituted copies.
pub fn substitute(formula: &CnfFormula, f: &BooleanFunction) -> Result<CnfFormula, FormulaError> {
    if let Some(v) = formula.vars().into_iter().find(Var::is_substituted) {
        return Err(FormulaError::AlreadySubstituted(v));
    }
    Ok(formula
        .iter()
        .flat_map(|c| substitute_clause(c, f))
        .collect())
}
