use super::clause::{Clause, Lit};
use super::cnf::CnfFormula;
use crate::names::Var;

/// Replaces every clause `a_1 ∨ ... ∨ a_m` of width `m > 3` by
/// `¬y_0 ∧ (y_0 ∨ a_1 ∨ ¬y_1) ∧ ... ∧ (y_{m-1} ∨ a_m ∨ ¬y_m) ∧ y_m` over
/// fresh variables owned by that clause. Narrow clauses are kept.
///
/// Auxiliaries are named `ext<j>_y<i>` for the `j`-th wide clause (1-based,
/// canonical order); the prefix gains underscores until no variable of the
/// input starts with it.
pub fn extended_3cnf(formula: &CnfFormula) -> CnfFormula {
    let vars = formula.vars();
    let mut prefix = String::from("ext");
    while vars.iter().any(|v| v.as_str().starts_with(&prefix)) {
        prefix.push('_');
    }
    let mut out = CnfFormula::default();
    let mut j = 0;
    for c in formula {
        if c.width() <= 3 {
            out.insert(c.clone());
            continue;
        }
        j += 1;
        let y = |i: usize| Var::new(format!("{prefix}{j}_y{i}"));
        out.insert(Clause::unit(Lit::neg(y(0))));
        for (i, a) in c.lits().iter().enumerate() {
            let link = Clause::new([Lit::pos(y(i)), a.clone(), Lit::neg(y(i + 1))])
                .expect("auxiliaries are fresh");
            out.insert(link);
        }
        out.insert(Clause::unit(Lit::pos(y(c.width()))));
    }
    out
}

/// Every clause of width `w ≥ 4` comes with all the clauses `¬a_i ∨ ¬a_j`.
pub fn is_weight_constrained(formula: &CnfFormula) -> bool {
    formula.iter().filter(|c| c.width() >= 4).all(|c| {
        let lits = c.lits();
        (0..lits.len()).all(|i| {
            (i + 1..lits.len()).all(|j| {
                let pair = Clause::new([lits[i].negated(), lits[j].negated()])
                    .expect("distinct variables");
                formula.contains(&pair)
            })
        })
    })
}
