use std::collections::{BTreeSet, HashMap};

use super::proof::{resolve, ProofStep, Refutation, Rule};
use super::ResolutionError;
use crate::formulas::Clause;
use crate::names::Var;

/// Cost measures of a refutation. Every space measure is a maximum over
/// configurations `D_0, ..., D_τ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Measures {
    /// Downloads plus inferences.
    pub length: usize,
    pub downloads: usize,
    pub inferences: usize,
    /// Widest clause in any configuration.
    pub width: usize,
    pub clause_space: usize,
    pub variable_space: usize,
    /// Literals counted with repetition.
    pub total_space: usize,
    /// Lines per configuration; equals clause space for resolution.
    pub formula_space: usize,
}

/// Incrementally maintained configuration with the counters needed for the
/// space measures.
#[derive(Default)]
struct Tracker {
    config: BTreeSet<Clause>,
    var_count: HashMap<Var, usize>,
    literals: usize,
    m: Measures,
}

impl Tracker {
    fn insert(&mut self, c: &Clause) {
        if self.config.insert(c.clone()) {
            for v in c.vars() {
                *self.var_count.entry(v.clone()).or_default() += 1;
            }
            self.literals += c.width();
            self.m.width = self.m.width.max(c.width());
            self.record();
        }
    }

    fn remove(&mut self, c: &Clause) {
        self.config.remove(c);
        for v in c.vars() {
            let n = self.var_count.get_mut(v).expect("counted variable");
            *n -= 1;
            if *n == 0 {
                self.var_count.remove(v);
            }
        }
        self.literals -= c.width();
    }

    fn record(&mut self) {
        let m = &mut self.m;
        m.clause_space = m.clause_space.max(self.config.len());
        m.formula_space = m.clause_space;
        m.variable_space = m.variable_space.max(self.var_count.len());
        m.total_space = m.total_space.max(self.literals);
    }
}

fn illegal(index: usize, reason: impl Into<String>) -> ResolutionError {
    ResolutionError::IllegalStep {
        index,
        reason: reason.into(),
    }
}

/// Checks one step against the current configuration without applying it.
pub(crate) fn check_step(
    config: &BTreeSet<Clause>,
    target: &crate::formulas::CnfFormula,
    index: usize,
    step: &ProofStep,
) -> Result<(), ResolutionError> {
    match step {
        ProofStep::Download(c) => {
            if !target.contains(c) {
                return Err(illegal(index, format!("`{c}` is not an axiom")));
            }
        }
        ProofStep::Infer {
            result,
            premises,
            rule,
        } => {
            for p in premises {
                if !config.contains(p) {
                    return Err(illegal(index, format!("premise `{p}` is not in memory")));
                }
            }
            match (rule, premises.as_slice()) {
                (Rule::Resolution { pivot }, [a, b]) => {
                    let r = resolve(a, b, pivot)
                        .or_else(|_| resolve(b, a, pivot))
                        .map_err(|e| illegal(index, e.to_string()))?;
                    if r != *result {
                        return Err(illegal(
                            index,
                            format!("resolvent on {pivot} is `{r}`, not `{result}`"),
                        ));
                    }
                }
                (Rule::Weakening, [a]) => {
                    if !a.subsumes(result) {
                        return Err(illegal(index, format!("`{result}` does not weaken `{a}`")));
                    }
                }
                _ => return Err(illegal(index, "wrong number of premises")),
            }
        }
        ProofStep::Erase(c) => {
            if !config.contains(c) {
                return Err(illegal(index, format!("erasing `{c}` which is not in memory")));
            }
        }
    }
    Ok(())
}

/// Checks every step and computes the exact measures. Step indices in
/// errors are 1-based.
pub fn check_refutation(r: &Refutation) -> Result<Measures, ResolutionError> {
    let mut t = Tracker::default();
    for (i, step) in r.steps.iter().enumerate() {
        check_step(&t.config, &r.target, i + 1, step)?;
        match step {
            ProofStep::Download(c) => {
                t.m.downloads += 1;
                t.insert(c);
            }
            ProofStep::Infer { result, .. } => {
                t.m.inferences += 1;
                t.insert(result);
            }
            ProofStep::Erase(c) => t.remove(c),
        }
    }
    if !t.config.contains(&Clause::empty()) {
        return Err(ResolutionError::MissingBottom);
    }
    t.m.length = t.m.downloads + t.m.inferences;
    Ok(t.m)
}

/// `D_0, ..., D_τ` without any legality checks.
pub fn replay_configurations(r: &Refutation) -> Vec<BTreeSet<Clause>> {
    let mut cur = BTreeSet::new();
    let mut out = vec![cur.clone()];
    for step in &r.steps {
        match step {
            ProofStep::Download(c) | ProofStep::Infer { result: c, .. } => {
                cur.insert(c.clone());
            }
            ProofStep::Erase(c) => {
                cur.remove(c);
            }
        }
        out.push(cur.clone());
    }
    out
}

/// Space and width measures computed directly from a configuration
/// sequence; length fields are left at zero.
pub fn measures_of_configurations(configs: &[BTreeSet<Clause>]) -> Measures {
    let mut m = Measures::default();
    for c in configs {
        let vars: BTreeSet<&Var> = c.iter().flat_map(Clause::vars).collect();
        m.clause_space = m.clause_space.max(c.len());
        m.variable_space = m.variable_space.max(vars.len());
        m.total_space = m.total_space.max(c.iter().map(Clause::width).sum());
        m.width = m.width.max(c.iter().map(Clause::width).max().unwrap_or(0));
    }
    m.formula_space = m.clause_space;
    m
}
