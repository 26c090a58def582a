//! Turning a refutation of `F[f]` into one of `F` by following the
//! projections of its configurations.

use std::collections::{BTreeSet, HashMap};

use super::{ProjectedClauseSet, ProjectionError, Projector};
use crate::boolfunc::BooleanFunction;
use crate::formulas::{substitute_clause, Clause, CnfFormula};
use crate::names::Var;
use crate::resolution::{
    check_refutation, replay_configurations, Measures, ProofBuilder, ProofStep, Refutation,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractedRefutation {
    pub refutation: Refutation,
    pub measures: Measures,
    /// Measures of the substituted refutation it came from.
    pub input: Measures,
    /// `max_t |Vars(C_{t-1} ∪ C_t)|` over consecutive projections.
    pub var_space_bound: usize,
    /// The projections `C_0, ..., C_τ`.
    pub projections: Vec<ProjectedClauseSet>,
}

fn violation(step: usize, detail: impl Into<String>) -> ProjectionError {
    ProjectionError::InternalContractViolation {
        step,
        detail: detail.into(),
    }
}

/// Moves the builder from `C_{t-1}` to `C_t` when every new clause is a
/// weakening of a clause already present.
fn weaken_into(b: &mut ProofBuilder, next: &BTreeSet<Clause>, step: usize) -> Result<(), ProjectionError> {
    let stale: Vec<Clause> = b
        .config()
        .iter()
        .filter(|c| !next.iter().any(|n| c.subsumes(n)))
        .cloned()
        .collect();
    for c in &stale {
        b.erase(c);
    }
    for c in next {
        if b.contains(c) {
            continue;
        }
        let from = b
            .config()
            .iter()
            .find(|s| s.subsumes(c))
            .cloned()
            .ok_or_else(|| violation(step, format!("`{c}` is not a weakening of the previous projection")))?;
        b.weaken(&from, c.clone());
    }
    let extra: Vec<Clause> = b.config().difference(next).cloned().collect();
    for c in &extra {
        b.erase(c);
    }
    Ok(())
}

/// The download case: `C_t` follows from `C_{t-1}` and the axiom `a`.
fn download_into(
    b: &mut ProofBuilder,
    a: &Clause,
    next: &BTreeSet<Clause>,
    step: usize,
) -> Result<(), ProjectionError> {
    let prev: BTreeSet<Clause> = b.config().clone();
    if !b.contains(a) {
        b.download(a.clone());
    }
    let mut keep: BTreeSet<Clause> = prev.union(next).cloned().collect();
    keep.insert(a.clone());
    let mut rest = Vec::new();
    for c in next {
        if b.contains(c) {
            continue;
        }
        match b.config().iter().find(|s| s.subsumes(c)).cloned() {
            Some(s) => b.weaken(&s, c.clone()),
            None => rest.push(c.clone()),
        }
    }
    for c in rest {
        // Each `¬a ∨ C` for `a ∈ A \ C` is a weakening of `C_{t-1}`; resolving
        // them one by one against `A` leaves `C`.
        if a.union(&c).is_err() {
            return Err(violation(step, format!("`{c}` clashes with the axiom `{a}`")));
        }
        let mut cur = a.clone();
        for lit in a.lits().iter().filter(|l| !c.contains(l)) {
            let side = c.with(lit.negated()).expect("checked against the axiom");
            if !b.contains(&side) {
                let from = prev
                    .iter()
                    .find(|s| s.subsumes(&side))
                    .cloned()
                    .ok_or_else(|| {
                        violation(step, format!("`{side}` is not a weakening of the previous projection"))
                    })?;
                b.weaken(&from, side.clone());
            }
            let nxt = b.resolve(&cur, &side, &lit.var);
            if !keep.contains(&side) {
                b.erase(&side);
            }
            if !keep.contains(&cur) {
                b.erase(&cur);
            }
            cur = nxt;
        }
        if cur != c {
            return Err(violation(step, format!("resolving against `{a}` gave `{cur}`, not `{c}`")));
        }
    }
    let extra: Vec<Clause> = b.config().difference(next).cloned().collect();
    for c in &extra {
        b.erase(c);
    }
    Ok(())
}

/// Extracts a refutation of `original` from `r_f`, a refutation of
/// `original[f]`, through the global or the local projections of its
/// configurations.
pub fn extract_refutation(
    r_f: &Refutation,
    original: &CnfFormula,
    f: &BooleanFunction,
    use_local: bool,
) -> Result<ExtractedRefutation, ProjectionError> {
    let input = check_refutation(r_f)?;
    let expected = crate::formulas::substitute(original, f)?;
    if r_f.target != expected {
        return Err(violation(0, "the refutation's target is not the substituted formula"));
    }
    let mut axiom_of: HashMap<Clause, Clause> = HashMap::new();
    for a in original.iter() {
        for l in substitute_clause(a, f) {
            axiom_of.entry(l).or_insert_with(|| a.clone());
        }
    }
    let configs = replay_configurations(r_f);
    let projections = configs
        .iter()
        .map(|d| {
            let d: Vec<Clause> = d.iter().cloned().collect();
            let p = Projector::new(&d, f)?;
            if use_local {
                p.local_project()
            } else {
                Ok(p.project())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut b = ProofBuilder::new();
    let mut var_space_bound = 0;
    for (t, step) in r_f.steps.iter().enumerate() {
        let next = projections[t + 1].clauses();
        let vars: BTreeSet<Var> = projections[t].vars().union(&projections[t + 1].vars()).cloned().collect();
        var_space_bound = var_space_bound.max(vars.len());
        let weakening_suffices = next
            .iter()
            .all(|c| b.config().iter().any(|s| s.subsumes(c)));
        match step {
            ProofStep::Download(l) if !weakening_suffices => {
                let a = axiom_of
                    .get(l)
                    .ok_or_else(|| violation(t + 1, format!("`{l}` is not an axiom")))?;
                download_into(&mut b, a, next, t + 1)?;
            }
            _ => weaken_into(&mut b, next, t + 1)?,
        }
    }
    let refutation = b.finish(original.clone());
    let measures = check_refutation(&refutation)?;
    Ok(ExtractedRefutation {
        refutation,
        measures,
        input,
        var_space_bound,
        projections,
    })
}
