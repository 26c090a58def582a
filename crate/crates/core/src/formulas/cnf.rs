use std::collections::BTreeSet;
use std::fmt;

use super::clause::{Clause, Lit};
use crate::dag::Dag;
use crate::names::Var;

/// A CNF formula as a set of clauses.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct CnfFormula {
    clauses: BTreeSet<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        CnfFormula {
            clauses: clauses.into_iter().collect(),
        }
    }

    pub fn clauses(&self) -> &BTreeSet<Clause> {
        &self.clauses
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.contains(c)
    }

    pub fn insert(&mut self, c: Clause) -> bool {
        self.clauses.insert(c)
    }

    pub fn remove(&mut self, c: &Clause) -> bool {
        self.clauses.remove(c)
    }

    /// Variables in canonical (natural) order.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars().cloned()).collect()
    }

    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn without(&self, c: &Clause) -> CnfFormula {
        let mut g = self.clone();
        g.remove(c);
        g
    }
}

impl FromIterator<Clause> for CnfFormula {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        CnfFormula::new(iter)
    }
}

impl<'a> IntoIterator for &'a CnfFormula {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.clauses.iter()).finish()
    }
}

/// The variable standing for vertex `v`.
pub fn vertex_var(g: &Dag, v: usize) -> Var {
    Var::new(g.name(v))
}

/// The pebbling axiom of `v`: `s` for a source, `¬u_1 ∨ ... ∨ ¬u_k ∨ v`
/// otherwise.
pub fn pebbling_axiom(g: &Dag, v: usize) -> Clause {
    Clause::new(
        g.preds(v)
            .iter()
            .map(|&u| Lit::neg(vertex_var(g, u)))
            .chain(std::iter::once(Lit::pos(vertex_var(g, v)))),
    )
    .expect("a DAG has no self-loops")
}

pub fn sink_axiom(g: &Dag) -> Clause {
    Clause::unit(Lit::neg(vertex_var(g, g.sink())))
}

/// `Peb_G`: source axioms, pebbling axioms and the sink axiom.
pub fn pebbling_contradiction(g: &Dag) -> CnfFormula {
    (0..g.len())
        .map(|v| pebbling_axiom(g, v))
        .chain(std::iter::once(sink_axiom(g)))
        .collect()
}
