use std::collections::BTreeSet;

use super::ResolutionError;
use crate::formulas::{Clause, CnfFormula, Lit};
use crate::names::Var;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Resolution { pivot: Var },
    Weakening,
}

/// One derivation step of a configuration-style refutation. Lines are
/// referred to by value: premises must be in the current configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProofStep {
    Download(Clause),
    Infer {
        result: Clause,
        premises: Vec<Clause>,
        rule: Rule,
    },
    Erase(Clause),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub target: CnfFormula,
    pub steps: Vec<ProofStep>,
}

/// The resolvent of `c1 ∨ x` and `c2 ∨ ¬x`.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: &Var) -> Result<Clause, ResolutionError> {
    let pos = Lit::pos(pivot.clone());
    let neg = Lit::neg(pivot.clone());
    if !c1.contains(&pos) || !c2.contains(&neg) {
        return Err(ResolutionError::PivotAbsent(pivot.clone()));
    }
    c1.without(&pos)
        .union(&c2.without(&neg))
        .map_err(|_| ResolutionError::TrivialResolvent(pivot.clone()))
}

/// Appends steps while tracking the current configuration, so builders can
/// ask what is present and avoid redundant work.
#[derive(Clone, Debug, Default)]
pub struct ProofBuilder {
    steps: Vec<ProofStep>,
    config: BTreeSet<Clause>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.config.contains(c)
    }

    pub fn config(&self) -> &BTreeSet<Clause> {
        &self.config
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn download(&mut self, c: Clause) {
        self.config.insert(c.clone());
        self.steps.push(ProofStep::Download(c));
    }

    pub fn resolve(&mut self, c1: &Clause, c2: &Clause, pivot: &Var) -> Clause {
        let (a, b) = if c1.polarity_of(pivot) == Some(true) {
            (c1, c2)
        } else {
            (c2, c1)
        };
        let result = resolve(a, b, pivot).expect("builders resolve only on clashing pivots");
        self.config.insert(result.clone());
        self.steps.push(ProofStep::Infer {
            result: result.clone(),
            premises: vec![a.clone(), b.clone()],
            rule: Rule::Resolution {
                pivot: pivot.clone(),
            },
        });
        result
    }

    pub fn weaken(&mut self, from: &Clause, to: Clause) {
        debug_assert!(from.subsumes(&to));
        self.config.insert(to.clone());
        self.steps.push(ProofStep::Infer {
            result: to,
            premises: vec![from.clone()],
            rule: Rule::Weakening,
        });
    }

    pub fn erase(&mut self, c: &Clause) {
        if self.config.remove(c) {
            self.steps.push(ProofStep::Erase(c.clone()));
        }
    }

    pub fn finish(self, target: CnfFormula) -> Refutation {
        Refutation {
            target,
            steps: self.steps,
        }
    }
}
