use std::collections::BTreeMap;

use super::cnf::CnfFormula;
use super::FormulaError;
use crate::bits::MaskClause;
use crate::names::Var;

pub const DEFAULT_SAT_VARS: usize = 26;

pub type Assignment = BTreeMap<Var, bool>;

/// Exhaustive satisfiability check over at most `max_vars` variables.
///
/// Assignments are enumerated as binary numbers with the first variable in
/// canonical order as the most significant bit, so the returned model is the
/// lexicographically first one. When an assignment falsifies a clause the
/// enumeration jumps to the next number that changes one of its variables.
pub fn brute_force_sat_with_limit(
    formula: &CnfFormula,
    max_vars: usize,
) -> Result<Option<Assignment>, FormulaError> {
    let vars: Vec<Var> = formula.vars().into_iter().collect();
    let n = vars.len();
    if n > max_vars.min(63) {
        return Err(FormulaError::BudgetExceeded {
            vars: n,
            limit: max_vars.min(63),
        });
    }
    let bit = |i: usize| 1u64 << (n - 1 - i);
    let masks: Vec<MaskClause> = formula
        .iter()
        .map(|c| {
            let mut m = MaskClause::EMPTY;
            for l in c.lits() {
                let i = vars.binary_search(&l.var).expect("variable of the formula");
                if l.positive {
                    m.pos |= bit(i);
                } else {
                    m.neg |= bit(i);
                }
            }
            m
        })
        .collect();
    if masks.iter().any(|m| m.is_empty()) {
        return Ok(None);
    }
    let end = 1u64 << n;
    let mut a = 0u64;
    while a < end {
        let mut next = a;
        for m in &masks {
            if !m.eval(a) {
                let low = m.vars() & m.vars().wrapping_neg();
                next = next.max((a | (low - 1)) + 1);
            }
        }
        if next == a {
            let model = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), a & bit(i) != 0))
                .collect();
            return Ok(Some(model));
        }
        a = next;
    }
    Ok(None)
}

pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Assignment>, FormulaError> {
    brute_force_sat_with_limit(formula, DEFAULT_SAT_VARS)
}

/// Unsatisfiable, and satisfiable after deleting any single clause.
pub fn is_minimally_unsat(formula: &CnfFormula) -> Result<bool, FormulaError> {
    if brute_force_sat(formula)?.is_some() {
        return Ok(false);
    }
    for c in formula {
        if brute_force_sat(&formula.without(c))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
