//! Truth-table implication checks used to cross-check syntactic rules.

use crate::bits::{LocalVars, MaskClause};
use crate::formulas::Clause;

pub const SEMANTIC_VAR_LIMIT: usize = 20;

/// Whether the conjunction of `premises` implies `conclusion`; `None` when
/// more than [`SEMANTIC_VAR_LIMIT`] variables are involved.
pub fn clauses_imply(premises: &[&Clause], conclusion: &Clause) -> Option<bool> {
    let vars = LocalVars::from_vars(
        premises
            .iter()
            .flat_map(|c| c.vars())
            .chain(conclusion.vars())
            .cloned(),
    );
    if vars.len() > SEMANTIC_VAR_LIMIT {
        return None;
    }
    let enc = |c: &Clause| vars.encode(c).expect("interned above");
    let ps: Vec<MaskClause> = premises.iter().map(|c| enc(c)).collect();
    let concl = enc(conclusion);
    Some((0..1u64 << vars.len()).all(|a| concl.eval(a) || ps.iter().any(|p| !p.eval(a))))
}
