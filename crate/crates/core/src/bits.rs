//! Bitmask clauses over at most 64 locally indexed variables.
//!
//! The exhaustive kernels (SAT oracle, saturation, projections, prime
//! implicates) all work on a local variable numbering and translate back to
//! named [`Clause`](crate::formulas::Clause)s at the boundary.

use std::collections::BTreeMap;

use crate::formulas::{Clause, Lit};
use crate::names::Var;

pub const MAX_LOCAL_VARS: usize = 64;

/// A clause as a pair of literal masks. Bit `i` of `pos` means `x_i` occurs
/// positively, bit `i` of `neg` that it occurs negatively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MaskClause {
    pub pos: u64,
    pub neg: u64,
}

impl MaskClause {
    pub const EMPTY: MaskClause = MaskClause { pos: 0, neg: 0 };

    pub fn new(pos: u64, neg: u64) -> Self {
        MaskClause { pos, neg }
    }

    pub fn is_empty(self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn is_trivial(self) -> bool {
        self.pos & self.neg != 0
    }

    pub fn width(self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    pub fn vars(self) -> u64 {
        self.pos | self.neg
    }

    /// `self ⊆ other` as literal sets.
    pub fn subsumes(self, other: MaskClause) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    pub fn union(self, other: MaskClause) -> MaskClause {
        MaskClause::new(self.pos | other.pos, self.neg | other.neg)
    }

    /// Variables on which `self` and `other` clash.
    pub fn clashes(self, other: MaskClause) -> u64 {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    /// Resolvent on `var`; the caller guarantees opposite occurrences.
    pub fn resolve_on(self, other: MaskClause, var: usize) -> MaskClause {
        let bit = 1u64 << var;
        MaskClause::new(
            (self.pos | other.pos) & !bit,
            (self.neg | other.neg) & !bit,
        )
    }

    /// Truth value under an assignment (bit `i` = value of `x_i`).
    pub fn eval(self, assignment: u64) -> bool {
        (assignment & self.pos) != 0 || (!assignment & self.neg) != 0
    }
}

/// Maps named variables to local indices and back.
#[derive(Clone, Debug, Default)]
pub struct LocalVars {
    vars: Vec<Var>,
    index: BTreeMap<Var, usize>,
}

impl LocalVars {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vars<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        let mut lv = LocalVars::new();
        for v in vars {
            lv.intern(&v);
        }
        lv
    }

    pub fn intern(&mut self, v: &Var) -> usize {
        if let Some(&i) = self.index.get(v) {
            return i;
        }
        let i = self.vars.len();
        self.vars.push(v.clone());
        self.index.insert(v.clone(), i);
        i
    }

    pub fn get(&self, v: &Var) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Encodes a clause whose variables are all interned; `None` otherwise
    /// or when an index does not fit into a mask.
    pub fn encode(&self, clause: &Clause) -> Option<MaskClause> {
        let mut m = MaskClause::EMPTY;
        for lit in clause.lits() {
            let i = self.get(&lit.var)?;
            if i >= MAX_LOCAL_VARS {
                return None;
            }
            if lit.positive {
                m.pos |= 1 << i;
            } else {
                m.neg |= 1 << i;
            }
        }
        Some(m)
    }

    pub fn decode(&self, m: MaskClause) -> Clause {
        let mut lits = Vec::with_capacity(m.width() as usize);
        for i in 0..self.vars.len().min(MAX_LOCAL_VARS) {
            let bit = 1u64 << i;
            if m.pos & bit != 0 {
                lits.push(Lit::pos(self.vars[i].clone()));
            }
            if m.neg & bit != 0 {
                lits.push(Lit::neg(self.vars[i].clone()));
            }
        }
        Clause::new(lits).expect("mask clauses handed to decode are nontrivial")
    }
}

/// Iterator over the indices of set bits, lowest first.
pub fn bit_indices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_and_subsume() {
        // (x0 ∨ x1) and (¬x0 ∨ x2)
        let a = MaskClause::new(0b011, 0);
        let b = MaskClause::new(0b100, 0b001);
        assert_eq!(a.clashes(b), 0b001);
        let r = a.resolve_on(b, 0);
        assert_eq!(r, MaskClause::new(0b110, 0));
        assert!(MaskClause::new(0b010, 0).subsumes(r));
        assert!(!r.subsumes(a));
    }

    #[test]
    fn eval_masks() {
        let c = MaskClause::new(0b01, 0b10); // x0 ∨ ¬x1
        assert!(c.eval(0b00));
        assert!(!c.eval(0b10));
        assert!(!MaskClause::EMPTY.eval(0b11));
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(bit_indices(0b1010_0001).collect::<Vec<_>>(), vec![0, 5, 7]);
    }
}
