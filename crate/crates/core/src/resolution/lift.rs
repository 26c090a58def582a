//! Step-by-step translation of a refutation of `F` into one of `F[f]`.

use std::collections::HashMap;

use super::builders::Substitution;
use super::checker::{check_refutation, Measures};
use super::proof::{ProofBuilder, ProofStep, Refutation, Rule};
use super::saturate::{saturate_masks, splice, Saturation, SaturationLimits};
use super::ResolutionError;
use crate::bits::{LocalVars, MaskClause};
use crate::boolfunc::BooleanFunction;
use crate::formulas::{substitute, Clause, Lit};
use crate::names::Var;

#[derive(Clone, Debug, PartialEq)]
pub struct LiftedRefutation {
    pub refutation: Refutation,
    pub input: Measures,
    pub output: Measures,
    pub arity: usize,
}

impl LiftedRefutation {
    /// The least `c` with `length(out) ≤ length(in) · 2^(c·d·width(in))`.
    pub fn length_exponent(&self) -> f64 {
        let dw = (self.arity * self.input.width) as f64;
        if dw == 0.0 || self.input.length == 0 {
            return 0.0;
        }
        let ratio = self.output.length as f64 / self.input.length as f64;
        (ratio.log2() / dw).max(0.0)
    }

    /// `clause_space(out) / clause_space(in)`.
    pub fn space_ratio(&self) -> f64 {
        self.output.clause_space as f64 / self.input.clause_space.max(1) as f64
    }
}

/// Sign of each variable in the two premises, `(in c1, in c2)`.
type Shape = Vec<(i8, i8)>;

fn sign(c: &Clause, v: &Var) -> i8 {
    match c.polarity_of(v) {
        Some(true) => 1,
        Some(false) => -1,
        None => 0,
    }
}

/// Orders the variables of a resolution step canonically: pivot first,
/// the rest by their sign pattern. Steps with equal shapes differ only by
/// a renaming, so one saturation serves them all.
fn shape(c1: &Clause, c2: &Clause, pivot: &Var) -> (Shape, Vec<Var>) {
    let mut others: Vec<((i8, i8), Var)> = c1
        .var_set()
        .union(&c2.var_set())
        .filter(|v| *v != pivot)
        .map(|v| ((sign(c1, v), sign(c2, v)), v.clone()))
        .collect();
    others.sort();
    let mut key = vec![(sign(c1, pivot), sign(c2, pivot))];
    let mut order = vec![pivot.clone()];
    for (s, v) in others {
        key.push(s);
        order.push(v);
    }
    (key, order)
}

fn instantiate(key: &Shape, which: usize, names: &[Var]) -> Clause {
    Clause::new(key.iter().zip(names).filter_map(|(s, v)| {
        match if which == 0 { s.0 } else { s.1 } {
            1 => Some(Lit::pos(v.clone())),
            -1 => Some(Lit::neg(v.clone())),
            _ => None,
        }
    }))
    .expect("one sign per variable")
}

struct StepGadget {
    saturation: Saturation,
    targets: Vec<MaskClause>,
}

fn step_gadget(
    subst: &Substitution,
    key: &Shape,
    max_width: usize,
) -> Result<StepGadget, ResolutionError> {
    let names: Vec<Var> = (0..key.len()).map(|i| Var::new(format!("t{i}"))).collect();
    let vars = LocalVars::from_vars(names.iter().flat_map(|x| subst.block(x)));
    let c1 = instantiate(key, 0, &names);
    let c2 = instantiate(key, 1, &names);
    let pivot = &names[0];
    let (a, b) = if c1.polarity_of(pivot) == Some(true) { (&c1, &c2) } else { (&c2, &c1) };
    let resolvent = super::proof::resolve(a, b, pivot)?;
    let enc = |c: Clause| vars.encode(&c).expect("template variables are interned");
    let mut premises: Vec<MaskClause> = subst
        .clause(&c1)
        .into_iter()
        .chain(subst.clause(&c2))
        .map(enc)
        .collect();
    premises.sort();
    premises.dedup();
    let targets: Vec<MaskClause> = subst.clause(&resolvent).into_iter().map(enc).collect();
    // Prefer derivations no wider than d times the original width; fall
    // back to an unrestricted closure if that is not enough.
    let narrow = SaturationLimits {
        max_width: Some(max_width as u32),
        ..Default::default()
    };
    let mut saturation = saturate_masks(&premises, &targets, narrow)?;
    if targets.iter().any(|&t| saturation.find(t).is_none()) {
        saturation = saturate_masks(&premises, &targets, SaturationLimits::default())?;
    }
    if let Some(&t) = targets.iter().find(|&&t| saturation.find(t).is_none()) {
        return Err(ResolutionError::SaturationFailure(format!(
            "`{}` is not derivable",
            vars.decode(t)
        )));
    }
    Ok(StepGadget {
        saturation,
        targets,
    })
}

/// Mimics `r` on `F[f]`: downloads become downloads of every clause of
/// `C[f]`, resolution steps become spliced derivations of the resolvent's
/// clauses, weakenings stay weakenings, erasures erase all of `C[f]`.
pub fn lift_refutation(r: &Refutation, f: &BooleanFunction) -> Result<LiftedRefutation, ResolutionError> {
    let input = check_refutation(r)?;
    let target = substitute(&r.target, f)?;
    let subst = Substitution::Function(f.clone());
    let d = f.arity();
    let mut gadgets: HashMap<Shape, StepGadget> = HashMap::new();
    let mut b = ProofBuilder::new();
    for step in &r.steps {
        match step {
            ProofStep::Download(c) => {
                for t in subst.clause(c) {
                    if !b.contains(&t) {
                        b.download(t);
                    }
                }
            }
            ProofStep::Erase(c) => {
                for t in subst.clause(c) {
                    b.erase(&t);
                }
            }
            ProofStep::Infer {
                result,
                premises,
                rule: Rule::Weakening,
            } => {
                let from = &premises[0];
                let from_vars = from.var_set();
                for t in subst.clause(result) {
                    if b.contains(&t) {
                        continue;
                    }
                    let sub = Clause::new(
                        t.lits()
                            .iter()
                            .filter(|l| {
                                l.var
                                    .split_block()
                                    .is_some_and(|(x, _)| from_vars.contains(&x))
                            })
                            .cloned(),
                    )
                    .expect("subclause");
                    b.weaken(&sub, t);
                }
            }
            ProofStep::Infer {
                premises,
                rule: Rule::Resolution { pivot },
                ..
            } => {
                let (key, order) = shape(&premises[0], &premises[1], pivot);
                if !gadgets.contains_key(&key) {
                    let g = step_gadget(&subst, &key, d * input.width)?;
                    gadgets.insert(key.clone(), g);
                }
                let g = &gadgets[&key];
                let vars = LocalVars::from_vars(order.iter().flat_map(|x| subst.block(x)));
                splice(&mut b, &g.saturation, &vars, &g.targets)?;
            }
        }
    }
    let refutation = b.finish(target);
    let output = check_refutation(&refutation)?;
    Ok(LiftedRefutation {
        refutation,
        input,
        output,
        arity: d,
    })
}
