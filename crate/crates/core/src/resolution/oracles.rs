//! Exhaustive minimal width and minimal clause space.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::saturate::{saturate_masks, SaturationLimits};
use super::ResolutionError;
use crate::bits::{LocalVars, MaskClause, MAX_LOCAL_VARS};
use crate::formulas::CnfFormula;

/// An exact optimum, or the cap it exceeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounded {
    Exact(usize),
    AboveCap(usize),
}

impl Bounded {
    pub fn exact(self) -> Option<usize> {
        match self {
            Bounded::Exact(n) => Some(n),
            Bounded::AboveCap(_) => None,
        }
    }
}

impl fmt::Display for Bounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Exact(n) => write!(f, "{n}"),
            Bounded::AboveCap(cap) => write!(f, ">{cap}"),
        }
    }
}

fn encode(formula: &CnfFormula) -> Result<Vec<MaskClause>, ResolutionError> {
    let vars = LocalVars::from_vars(formula.vars());
    if vars.len() > MAX_LOCAL_VARS {
        return Err(ResolutionError::TooManyVariables {
            vars: vars.len(),
            cap: MAX_LOCAL_VARS,
        });
    }
    Ok(formula
        .iter()
        .map(|c| vars.encode(c).expect("interned"))
        .collect())
}

/// Smallest `w ≤ cap` such that resolution restricted to clauses of width
/// at most `w` derives ⊥.
pub fn min_width(formula: &CnfFormula, cap: usize) -> Result<Bounded, ResolutionError> {
    let axioms = encode(formula)?;
    for w in 0..=cap {
        let premises: Vec<MaskClause> = axioms
            .iter()
            .copied()
            .filter(|c| c.width() as usize <= w)
            .collect();
        let limits = SaturationLimits {
            max_width: Some(w as u32),
            ..Default::default()
        };
        let sat = saturate_masks(&premises, &[MaskClause::EMPTY], limits)?;
        if sat.find(MaskClause::EMPTY).is_some() {
            return Ok(Bounded::Exact(w));
        }
    }
    Ok(Bounded::AboveCap(cap))
}

/// Smallest clause space `s ≤ cap` of a refutation, by breadth-first search
/// over configurations of at most `s` clauses. `budget` bounds the total
/// number of configurations visited.
pub fn min_clause_space(
    formula: &CnfFormula,
    cap: usize,
    budget: u64,
) -> Result<Bounded, ResolutionError> {
    let axioms = encode(formula)?;
    let mut visited_total = 0u64;
    for s in 1..=cap {
        let mut seen: HashSet<Vec<MaskClause>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Vec::new());
        queue.push_back(Vec::<MaskClause>::new());
        while let Some(conf) = queue.pop_front() {
            let mut next: Vec<Vec<MaskClause>> = Vec::new();
            for i in 0..conf.len() {
                let mut c = conf.clone();
                c.remove(i);
                next.push(c);
            }
            if conf.len() < s {
                let mut added: Vec<MaskClause> = axioms
                    .iter()
                    .copied()
                    .filter(|a| conf.binary_search(a).is_err())
                    .collect();
                for i in 0..conf.len() {
                    for j in i + 1..conf.len() {
                        let clash = conf[i].clashes(conf[j]);
                        if clash.count_ones() == 1 {
                            let r = conf[i].resolve_on(conf[j], clash.trailing_zeros() as usize);
                            if conf.binary_search(&r).is_err() {
                                added.push(r);
                            }
                        }
                    }
                }
                for a in added {
                    if a.is_empty() {
                        return Ok(Bounded::Exact(s));
                    }
                    let mut c = conf.clone();
                    let pos = c.binary_search(&a).unwrap_err();
                    c.insert(pos, a);
                    next.push(c);
                }
            }
            for c in next {
                if seen.insert(c.clone()) {
                    visited_total += 1;
                    if visited_total > budget {
                        return Err(ResolutionError::BudgetExceeded {
                            generated: visited_total,
                        });
                    }
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(Bounded::AboveCap(cap))
}
