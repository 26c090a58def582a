//! Refutations of pebbling formulas built from pebbling strategies.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::proof::{ProofBuilder, Refutation};
use super::saturate::{saturate_masks, splice, Saturation, SaturationLimits, SpliceCost};
use super::ResolutionError;
use crate::bits::{LocalVars, MaskClause};
use crate::boolfunc::{BoolFuncError, BooleanFunction};
use crate::dag::Dag;
use crate::formulas::{
    block_vars, literal_clauses, pebbling_axiom, pebbling_contradiction, sink_axiom,
    substitute_clause, vertex_var, Clause, CnfFormula, Lit,
};
use crate::names::Var;
use crate::pebbling::{validate_bw, BwMove, BwPebbling};

/// The function substituted into a formula, or none at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution {
    Identity,
    Function(BooleanFunction),
}

impl Substitution {
    pub fn arity(&self) -> usize {
        match self {
            Substitution::Identity => 1,
            Substitution::Function(f) => f.arity(),
        }
    }

    /// The variables standing in for `x`.
    pub fn block(&self, x: &Var) -> Vec<Var> {
        match self {
            Substitution::Identity => vec![x.clone()],
            Substitution::Function(f) => block_vars(x, f.arity()),
        }
    }

    /// Clauses encoding a single literal.
    pub fn literal(&self, lit: &Lit) -> Vec<Clause> {
        match self {
            Substitution::Identity => vec![Clause::unit(lit.clone())],
            Substitution::Function(f) => literal_clauses(lit, f),
        }
    }

    pub fn clause(&self, c: &Clause) -> Vec<Clause> {
        match self {
            Substitution::Identity => vec![c.clone()],
            Substitution::Function(f) => substitute_clause(c, f),
        }
    }

    pub fn formula(&self, formula: &CnfFormula) -> CnfFormula {
        formula.iter().flat_map(|c| self.clause(c)).collect()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Substitution::Identity => f.write_str("none"),
            Substitution::Function(func) => write!(f, "{func}"),
        }
    }
}

impl FromStr for Substitution {
    type Err = BoolFuncError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" | "id" => Ok(Substitution::Identity),
            _ => s.parse().map(Substitution::Function),
        }
    }
}

/// Download the sink axiom, then repeatedly resolve the all-negative clause
/// with the pebbling axiom of its topologically latest vertex. Each vertex
/// is expanded at most once and at most three clauses are ever in memory.
pub fn constant_space_refutation(g: &Dag) -> Refutation {
    let mut position = vec![0; g.len()];
    for (i, &v) in g.topo_order().iter().enumerate() {
        position[v] = i;
    }
    let mut b = ProofBuilder::new();
    let mut cur = sink_axiom(g);
    b.download(cur.clone());
    while !cur.is_empty() {
        let v = cur
            .vars()
            .map(|x| g.vertex(x.as_str()).expect("clause over vertex variables"))
            .max_by_key(|&v| position[v])
            .expect("nonempty clause");
        let axiom = pebbling_axiom(g, v);
        b.download(axiom.clone());
        let next = b.resolve(&axiom, &cur, &vertex_var(g, v));
        b.erase(&cur);
        b.erase(&axiom);
        cur = next;
    }
    b.finish(pebbling_contradiction(g))
}

/// A saturation over template variables, reusable for every vertex with
/// the same in-degree.
struct Gadget {
    saturation: Saturation,
    targets: Vec<MaskClause>,
}

impl Gadget {
    fn build(
        subst: &Substitution,
        premises: &[Clause],
        targets: &[Clause],
        vars: &LocalVars,
    ) -> Result<Gadget, ResolutionError> {
        let enc = |c: &Clause| vars.encode(c).expect("template variables are interned");
        let premises: Vec<MaskClause> = premises.iter().map(enc).collect();
        let targets: Vec<MaskClause> = targets.iter().map(enc).collect();
        let saturation = saturate_masks(&premises, &targets, SaturationLimits::default())?;
        for &t in &targets {
            if saturation.find(t).is_none() {
                return Err(ResolutionError::SaturationFailure(format!(
                    "{subst}: `{}` is not derivable",
                    vars.decode(t)
                )));
            }
        }
        Ok(Gadget {
            saturation,
            targets,
        })
    }

    /// Derives `f(v)` from `f(p_1), ..., f(p_k)` and the axiom of `v`.
    fn placement(subst: &Substitution, indegree: usize) -> Result<Gadget, ResolutionError> {
        let preds: Vec<Var> = (0..indegree).map(|i| Var::new(format!("p{i}"))).collect();
        let v = Var::new("v");
        let vars = template_vars(subst, preds.iter().chain([&v]));
        let mut premises: Vec<Clause> = preds
            .iter()
            .flat_map(|p| subst.literal(&Lit::pos(p.clone())))
            .collect();
        let axiom = Clause::new(
            preds
                .iter()
                .map(|p| Lit::neg(p.clone()))
                .chain([Lit::pos(v.clone())]),
        )
        .expect("distinct template variables");
        premises.extend(subst.clause(&axiom));
        Gadget::build(subst, &premises, &subst.literal(&Lit::pos(v)), &vars)
    }

    /// Derives ⊥ from `f(z)` and the substituted sink axiom.
    fn sink(subst: &Substitution) -> Result<Gadget, ResolutionError> {
        let z = Var::new("z");
        let vars = template_vars(subst, [&z]);
        let mut premises = subst.literal(&Lit::pos(z.clone()));
        premises.extend(subst.literal(&Lit::neg(z)));
        Gadget::build(subst, &premises, &[Clause::empty()], &vars)
    }
}

fn template_vars<'a>(subst: &Substitution, xs: impl IntoIterator<Item = &'a Var>) -> LocalVars {
    LocalVars::from_vars(xs.into_iter().flat_map(|x| subst.block(x)))
}

/// Per-step costs observed while compiling a pebbling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimulationConstants {
    /// Longest derivation triggered by one black placement.
    pub placement_length: usize,
    /// Length of the final derivation of ⊥.
    pub sink_length: usize,
    /// Clauses encoding one pebbled vertex.
    pub set_size: usize,
    /// Most clauses any single derivation held in memory at once.
    pub temporaries: usize,
}

impl SimulationConstants {
    /// `length ≤ time · length_factor`.
    pub fn length_factor(&self) -> usize {
        self.placement_length + self.sink_length
    }

    /// `clause space ≤ space · space_factor`.
    pub fn space_factor(&self) -> usize {
        self.set_size + self.temporaries
    }

    /// One constant bounding both ratios.
    pub fn k(&self) -> usize {
        self.length_factor().max(self.space_factor())
    }

    fn absorb(&mut self, c: SpliceCost, placement: bool) {
        if placement {
            self.placement_length = self.placement_length.max(c.length());
        } else {
            self.sink_length = c.length();
        }
        self.temporaries = self.temporaries.max(c.peak_owned);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledRefutation {
    pub refutation: Refutation,
    pub constants: SimulationConstants,
}

/// Simulates a complete black pebbling: placing a pebble on `v` derives the
/// clauses encoding `f(v)`, removing it erases them, and the sink's clauses
/// are finally resolved against the substituted sink axiom.
pub fn pebbling_to_refutation(
    g: &Dag,
    p: &BwPebbling,
    subst: &Substitution,
) -> Result<CompiledRefutation, ResolutionError> {
    validate_bw(g, p, true).map_err(|e| ResolutionError::IncompletePebbling(e.to_string()))?;
    let moves = p
        .moves()
        .ok_or_else(|| ResolutionError::IncompletePebbling("not a move sequence".into()))?;
    let mut constants = SimulationConstants {
        set_size: subst.literal(&Lit::pos(Var::new("v"))).len(),
        ..Default::default()
    };
    let mut gadgets: HashMap<usize, Gadget> = HashMap::new();
    let mut b = ProofBuilder::new();
    for mv in moves {
        match mv {
            BwMove::PlaceBlack(v) => {
                let preds = g.preds(v);
                if !gadgets.contains_key(&preds.len()) {
                    gadgets.insert(preds.len(), Gadget::placement(subst, preds.len())?);
                }
                let gadget = &gadgets[&preds.len()];
                let names: Vec<Var> = preds.iter().chain([&v]).map(|&u| vertex_var(g, u)).collect();
                let vars = template_vars(subst, &names);
                let cost = splice(&mut b, &gadget.saturation, &vars, &gadget.targets)?;
                constants.absorb(cost, true);
            }
            BwMove::RemoveBlack(v) => {
                for c in subst.literal(&Lit::pos(vertex_var(g, v))) {
                    b.erase(&c);
                }
            }
            BwMove::PlaceWhite(_) | BwMove::RemoveWhite(_) => {
                unreachable!("validated as black-only")
            }
        }
    }
    let sink = Gadget::sink(subst)?;
    let vars = template_vars(subst, [&vertex_var(g, g.sink())]);
    let cost = splice(&mut b, &sink.saturation, &vars, &sink.targets)?;
    constants.absorb(cost, false);
    Ok(CompiledRefutation {
        refutation: b.finish(subst.formula(&pebbling_contradiction(g))),
        constants,
    })
}
