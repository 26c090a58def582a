//! Bounded resolution closure with derivations retained, and splicing of
//! those derivations into a host refutation.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::proof::ProofBuilder;
use super::ResolutionError;
use crate::bits::{LocalVars, MaskClause, MAX_LOCAL_VARS};
use crate::formulas::Clause;

pub const DEFAULT_VARIABLE_CAP: usize = 16;
/// Maximum number of resolvents generated by one saturation.
pub const DEFAULT_SATURATION_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Premise,
    /// `left` holds the pivot positively.
    Resolvent {
        left: usize,
        right: usize,
        pivot: usize,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub clause: MaskClause,
    pub origin: Origin,
}

/// Every clause generated during saturation, each with a derivation from
/// the premises, plus the subsumption-minimal survivors.
#[derive(Clone, Debug, Default)]
pub struct Saturation {
    nodes: Vec<Node>,
    index: HashMap<MaskClause, usize>,
    kept: Vec<usize>,
    complete: bool,
}

impl Saturation {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn find(&self, c: MaskClause) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// The subsumption-minimal clause set, meaningful when the run was
    /// not stopped early.
    pub fn closure(&self) -> impl Iterator<Item = MaskClause> + '_ {
        self.kept.iter().map(|&i| self.nodes[i].clause)
    }

    /// False when the run stopped as soon as all targets were found.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn add(&mut self, clause: MaskClause, origin: Origin) -> Option<usize> {
        if self.index.contains_key(&clause) {
            return None;
        }
        let id = self.nodes.len();
        self.nodes.push(Node { clause, origin });
        self.index.insert(clause, id);
        Some(id)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SaturationLimits {
    /// Resolvents wider than this are discarded.
    pub max_width: Option<u32>,
    pub budget: usize,
}

impl Default for SaturationLimits {
    fn default() -> Self {
        SaturationLimits {
            max_width: None,
            budget: DEFAULT_SATURATION_BUDGET,
        }
    }
}

/// Given-clause saturation, narrowest clauses first. Stops early once every
/// clause in `targets` has been generated; with no targets it runs to the
/// fixpoint.
pub fn saturate_masks(
    premises: &[MaskClause],
    targets: &[MaskClause],
    limits: SaturationLimits,
) -> Result<Saturation, ResolutionError> {
    let mut sat = Saturation::default();
    let mut passive = BinaryHeap::new();
    let mut missing: HashSet<MaskClause> = targets.iter().copied().collect();
    for &p in premises {
        debug_assert!(!p.is_trivial());
        missing.remove(&p);
        if let Some(id) = sat.add(p, Origin::Premise) {
            passive.push(Reverse((p.width(), id)));
        }
    }
    if !targets.is_empty() && missing.is_empty() {
        return Ok(sat);
    }
    let mut active: Vec<usize> = Vec::new();
    let mut generated = 0usize;
    while let Some(Reverse((_, id))) = passive.pop() {
        let c = sat.nodes[id].clause;
        if active.iter().any(|&a| sat.nodes[a].clause.subsumes(c)) {
            continue;
        }
        active.retain(|&a| !c.subsumes(sat.nodes[a].clause));
        for ai in 0..active.len() {
            let a = active[ai];
            let other = sat.nodes[a].clause;
            let clash = c.clashes(other);
            if clash.count_ones() != 1 {
                continue;
            }
            let pivot = clash.trailing_zeros() as usize;
            let r = c.resolve_on(other, pivot);
            if limits.max_width.is_some_and(|w| r.width() > w) {
                continue;
            }
            let (left, right) = if c.pos >> pivot & 1 == 1 { (id, a) } else { (a, id) };
            let Some(rid) = sat.add(r, Origin::Resolvent { left, right, pivot }) else {
                continue;
            };
            generated += 1;
            if generated > limits.budget {
                return Err(ResolutionError::BudgetExceeded {
                    generated: generated as u64,
                });
            }
            passive.push(Reverse((r.width(), rid)));
            if missing.remove(&r) && missing.is_empty() && !targets.is_empty() {
                return Ok(sat);
            }
        }
        active.push(id);
    }
    sat.kept = active;
    sat.kept.sort_by_key(|&i| (sat.nodes[i].clause.width(), sat.nodes[i].clause));
    sat.complete = true;
    Ok(sat)
}

/// Saturation over named clauses.
#[derive(Clone, Debug)]
pub struct ClauseSaturation {
    pub vars: LocalVars,
    pub saturation: Saturation,
}

impl ClauseSaturation {
    /// The subsumption-minimal closure.
    pub fn closure(&self) -> Vec<Clause> {
        self.saturation
            .closure()
            .map(|m| self.vars.decode(m))
            .collect()
    }

    /// Whether the clause itself was generated.
    pub fn derived(&self, c: &Clause) -> bool {
        self.vars
            .encode(c)
            .is_some_and(|m| self.saturation.find(m).is_some())
    }

    /// Whether some clause of the closure subsumes `c`.
    pub fn implies(&self, c: &Clause) -> bool {
        let Some(m) = self.vars.encode(c) else {
            // Variables outside the premises: drop them and retry.
            let kept: Vec<_> = c
                .lits()
                .iter()
                .filter(|l| self.vars.get(&l.var).is_some())
                .cloned()
                .collect();
            let c2 = Clause::new(kept).expect("subclause of a nontrivial clause");
            return self.implies(&c2);
        };
        self.saturation.closure().any(|k| k.subsumes(m))
    }
}

/// Closure of `premises` under resolution and subsumption.
pub fn saturate(premises: &[Clause], variable_cap: usize) -> Result<ClauseSaturation, ResolutionError> {
    let vars = LocalVars::from_vars(premises.iter().flat_map(|c| c.vars().cloned()));
    let cap = variable_cap.min(MAX_LOCAL_VARS);
    if vars.len() > cap {
        return Err(ResolutionError::TooManyVariables {
            vars: vars.len(),
            cap,
        });
    }
    let masks: Vec<MaskClause> = premises
        .iter()
        .map(|c| vars.encode(c).expect("interned"))
        .collect();
    let saturation = saturate_masks(&masks, &[], SaturationLimits::default())?;
    Ok(ClauseSaturation { vars, saturation })
}

/// What a splice added to the host proof.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpliceCost {
    pub downloads: usize,
    pub inferences: usize,
    /// Most clauses introduced by the splice that were in memory at once,
    /// targets included.
    pub peak_owned: usize,
}

impl SpliceCost {
    pub fn length(&self) -> usize {
        self.downloads + self.inferences
    }
}

/// Appends derivations of `targets` to `builder`. Clauses already in memory
/// are used as they are; other premises are downloaded. Intermediate
/// clauses are erased after their last use; targets stay.
pub fn splice(
    builder: &mut ProofBuilder,
    sat: &Saturation,
    vars: &LocalVars,
    targets: &[MaskClause],
) -> Result<SpliceCost, ResolutionError> {
    let nodes = sat.nodes();
    let decode = |i: usize| vars.decode(nodes[i].clause);
    let target_ids: Vec<usize> = targets
        .iter()
        .map(|&t| {
            sat.find(t).ok_or_else(|| {
                ResolutionError::SaturationFailure(format!("`{}` was not derived", vars.decode(t)))
            })
        })
        .collect::<Result<_, _>>()?;
    let is_target: HashSet<usize> = target_ids.iter().copied().collect();

    // Postorder over the derivation DAG, cut at clauses already present.
    let mut order = Vec::new();
    let mut seen = HashSet::new();
    let mut present = HashSet::new();
    for &t in &target_ids {
        let mut stack = vec![(t, false)];
        while let Some((n, expanded)) = stack.pop() {
            if expanded {
                order.push(n);
                continue;
            }
            if !seen.insert(n) {
                continue;
            }
            stack.push((n, true));
            if builder.contains(&decode(n)) {
                present.insert(n);
                continue;
            }
            if let Origin::Resolvent { left, right, .. } = nodes[n].origin {
                stack.push((right, false));
                stack.push((left, false));
            }
        }
    }
    let mut uses: HashMap<usize, usize> = HashMap::new();
    for &n in &order {
        if present.contains(&n) {
            continue;
        }
        if let Origin::Resolvent { left, right, .. } = nodes[n].origin {
            *uses.entry(left).or_default() += 1;
            *uses.entry(right).or_default() += 1;
        }
    }

    let mut cost = SpliceCost::default();
    let mut owned = 0usize;
    for &n in &order {
        if present.contains(&n) {
            continue;
        }
        let c = decode(n);
        match nodes[n].origin {
            Origin::Premise => {
                builder.download(c);
                cost.downloads += 1;
                owned += 1;
                cost.peak_owned = cost.peak_owned.max(owned);
            }
            Origin::Resolvent { left, right, pivot } => {
                let (l, r) = (decode(left), decode(right));
                builder.resolve(&l, &r, vars.var(pivot));
                cost.inferences += 1;
                owned += 1;
                cost.peak_owned = cost.peak_owned.max(owned);
                for (child, clause) in [(left, l), (right, r)] {
                    let u = uses.get_mut(&child).expect("counted");
                    *u -= 1;
                    if *u == 0 && !present.contains(&child) && !is_target.contains(&child) {
                        builder.erase(&clause);
                        owned -= 1;
                    }
                }
            }
        }
    }
    Ok(cost)
}
