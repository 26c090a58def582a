//! Resolution f-projections: which clauses over the original variables a
//! set of clauses over substituted variables precisely implies, the local
//! variant, extraction of refutations of `F` from refutations of `F[f]`,
//! and brute-force checks of the projection properties.

mod extract;
mod suite;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::bits::{LocalVars, MaskClause};
use crate::boolfunc::{BooleanFunction, Polarity, MAX_ARITY};
use crate::formulas::{Clause, FormulaError, Lit};
use crate::names::Var;
use crate::resolution::ResolutionError;

pub use extract::{extract_refutation, ExtractedRefutation};
pub use suite::{
    projection_axiom_suite, random_axiom_line, random_configurations, space_respecting_check,
    AxiomSuiteReport, PropertyFailure, SpaceReport, SpaceRow,
};

/// Most substituted variables a truth-table enumeration may range over.
pub const MAX_PROJECTION_VARS: usize = 24;
/// Most clauses whose subsets the local projection enumerates.
pub const MAX_LOCAL_CLAUSES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("`{0}` is not a substituted variable x#i")]
    NotSubstituted(Var),
    #[error("`{var}` has index {index} but the function has arity {arity}")]
    BadBlockIndex { var: Var, index: usize, arity: usize },
    #[error("{vars} substituted variables exceed the limit of {limit}")]
    BudgetExceeded { vars: usize, limit: usize },
    #[error("{clauses} clauses exceed the local projection limit of {limit}")]
    TooManyClauses { clauses: usize, limit: usize },
    #[error("step {step}: {detail}")]
    InternalContractViolation { step: usize, detail: String },
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A subsumption-free set of clauses over original variables. "Derivable
/// by weakening" means some member is a subclause.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProjectedClauseSet {
    clauses: BTreeSet<Clause>,
}

impl ProjectedClauseSet {
    /// Keeps only the subsumption-minimal clauses.
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut all: Vec<Clause> = clauses.into_iter().collect();
        all.sort_by_key(Clause::width);
        all.dedup();
        let mut kept: Vec<Clause> = Vec::new();
        for c in all {
            if !kept.iter().any(|k| k.subsumes(&c)) {
                kept.push(c);
            }
        }
        ProjectedClauseSet {
            clauses: kept.into_iter().collect(),
        }
    }

    pub fn clauses(&self) -> &BTreeSet<Clause> {
        &self.clauses
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

    pub fn derives_by_weakening(&self, c: &Clause) -> bool {
        self.clauses.iter().any(|k| k.subsumes(c))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars().cloned()).collect()
    }
}

/// Truth-table view of a configuration: for every assignment to the
/// blocks of the mentioned original variables, its vector of `f` values
/// and which clauses it satisfies.
pub(crate) struct Projector<'a> {
    f: &'a BooleanFunction,
    /// Mentioned original variables; bit `i` of a value vector is `f` on
    /// the block of `base[i]`.
    pub(crate) base: Vec<Var>,
    clauses: Vec<MaskClause>,
}

impl<'a> Projector<'a> {
    pub(crate) fn new(d: &[Clause], f: &'a BooleanFunction) -> Result<Self, ProjectionError> {
        Self::with_extra(d, &[], f)
    }

    /// Also includes the blocks of `extra` original variables.
    pub(crate) fn with_extra(
        d: &[Clause],
        extra: &[Var],
        f: &'a BooleanFunction,
    ) -> Result<Self, ProjectionError> {
        let arity = f.arity();
        let mut base: BTreeSet<Var> = extra.iter().cloned().collect();
        for c in d {
            for v in c.vars() {
                let (x, i) = v
                    .split_block()
                    .ok_or_else(|| ProjectionError::NotSubstituted(v.clone()))?;
                if i == 0 || i > arity {
                    return Err(ProjectionError::BadBlockIndex {
                        var: v.clone(),
                        index: i,
                        arity,
                    });
                }
                base.insert(x);
            }
        }
        let base: Vec<Var> = base.into_iter().collect();
        let n = base.len() * arity;
        if n > MAX_PROJECTION_VARS || base.len() > MAX_ARITY {
            return Err(ProjectionError::BudgetExceeded {
                vars: n,
                limit: MAX_PROJECTION_VARS,
            });
        }
        let vars = LocalVars::from_vars(base.iter().flat_map(|x| (1..=arity).map(|i| x.block_member(i))));
        let clauses = d
            .iter()
            .map(|c| vars.encode(c).expect("every block is interned"))
            .collect();
        Ok(Projector { f, base, clauses })
    }

    fn value_vector(&self, a: u64) -> usize {
        let d = self.f.arity();
        let mask = (1u64 << d) - 1;
        (0..self.base.len())
            .filter(|&i| self.f.eval(((a >> (i * d)) & mask) as u32))
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn assignments(&self) -> u64 {
        1u64 << (self.base.len() * self.f.arity())
    }

    /// Value vectors reachable by models of the whole configuration.
    pub(crate) fn points(&self) -> Vec<bool> {
        let mut pts = vec![false; 1 << self.base.len()];
        for a in 0..self.assignments() {
            if self.clauses.iter().all(|c| c.eval(a)) {
                pts[self.value_vector(a)] = true;
            }
        }
        pts
    }

    /// For each value vector, the maximal sets of clauses (as bitmasks)
    /// satisfied together by one assignment with that vector.
    fn satisfied_sets(&self) -> Vec<Vec<u32>> {
        let mut sets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); 1 << self.base.len()];
        for a in 0..self.assignments() {
            let s = self
                .clauses
                .iter()
                .enumerate()
                .filter(|(_, c)| c.eval(a))
                .fold(0u32, |acc, (i, _)| acc | 1 << i);
            sets[self.value_vector(a)].insert(s);
        }
        sets.into_iter()
            .map(|s| {
                let all: Vec<u32> = s.into_iter().collect();
                all.iter()
                    .copied()
                    .filter(|&x| !all.iter().any(|&y| y != x && y & x == x))
                    .collect()
            })
            .collect()
    }

    /// Prime implicates of the indicator of `points`, over `base`.
    pub(crate) fn prime_clauses(&self, points: &[bool]) -> Vec<Clause> {
        if points.iter().all(|&p| p) {
            return Vec::new();
        }
        if points.iter().all(|&p| !p) {
            return vec![Clause::empty()];
        }
        let g = BooleanFunction::from_table(self.base.len(), points.to_vec())
            .expect("non-constant indicator");
        g.prime_implicates(Polarity::Positive)
            .iter()
            .map(|m| self.base_clause(*m))
            .collect()
    }

    fn base_clause(&self, m: MaskClause) -> Clause {
        let mut lits = Vec::new();
        for (i, x) in self.base.iter().enumerate() {
            if m.pos >> i & 1 == 1 {
                lits.push(Lit::pos(x.clone()));
            }
            if m.neg >> i & 1 == 1 {
                lits.push(Lit::neg(x.clone()));
            }
        }
        Clause::new(lits).expect("prime implicates are nontrivial")
    }

    pub(crate) fn project(&self) -> ProjectedClauseSet {
        ProjectedClauseSet::new(self.prime_clauses(&self.points()))
    }

    pub(crate) fn local_project(&self) -> Result<ProjectedClauseSet, ProjectionError> {
        let m = self.clauses.len();
        if m > MAX_LOCAL_CLAUSES {
            return Err(ProjectionError::TooManyClauses {
                clauses: m,
                limit: MAX_LOCAL_CLAUSES,
            });
        }
        let sets = self.satisfied_sets();
        let mut memo: HashMap<Vec<bool>, ()> = HashMap::new();
        let mut all = Vec::new();
        for subset in 0u32..1 << m {
            let pts: Vec<bool> = sets
                .iter()
                .map(|ss| ss.iter().any(|&s| s & subset == subset))
                .collect();
            if memo.insert(pts.clone(), ()).is_none() {
                all.extend(self.prime_clauses(&pts));
            }
        }
        Ok(ProjectedClauseSet::new(all))
    }

    /// Whether `c` (over original variables) is implied in the projected
    /// sense by the whole configuration.
    pub(crate) fn implies(&self, points: &[bool], c: &Clause) -> bool {
        let index: HashMap<&Var, usize> = self.base.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut m = MaskClause::EMPTY;
        for l in c.lits() {
            match index.get(&l.var) {
                Some(&i) if l.positive => m.pos |= 1 << i,
                Some(&i) => m.neg |= 1 << i,
                // An unmentioned variable's f value is unconstrained.
                None => return false,
            }
        }
        points
            .iter()
            .enumerate()
            .all(|(v, &p)| !p || m.eval(v as u64))
    }
}

/// `D ▷ C`: `D` implies `⋁ f^ν(x⃗)` over the literals of `C`, but not for
/// any strict subclause.
pub fn precisely_implies(d: &[Clause], c: &Clause, f: &BooleanFunction) -> Result<bool, ProjectionError> {
    let extra: Vec<Var> = c.vars().cloned().collect();
    let p = Projector::with_extra(d, &extra, f)?;
    Ok(p.prime_clauses(&p.points()).contains(c))
}

/// All clauses `D` precisely implies.
pub fn project(d: &[Clause], f: &BooleanFunction) -> Result<ProjectedClauseSet, ProjectionError> {
    Ok(Projector::new(d, f)?.project())
}

/// Union of the projections of all subsets of `D`, subsumption-minimized.
pub fn local_project(d: &[Clause], f: &BooleanFunction) -> Result<ProjectedClauseSet, ProjectionError> {
    Projector::new(d, f)?.local_project()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{clause, literal_clauses, substitute_clause};

    fn xor() -> BooleanFunction {
        BooleanFunction::xor(2).unwrap()
    }

    fn set(cls: &[&str]) -> ProjectedClauseSet {
        ProjectedClauseSet::new(cls.iter().map(|s| clause(s)))
    }

    #[test]
    fn precise_implication_examples() {
        let f = xor();
        let x = literal_clauses(&clause("x").lits()[0], &f);
        assert!(precisely_implies(&x, &clause("x"), &f).unwrap());
        assert!(!precisely_implies(&x, &clause("x y"), &f).unwrap());
        let d = substitute_clause(&clause("x -y"), &f);
        assert_eq!(d.len(), 4);
        assert!(precisely_implies(&d, &clause("x -y"), &f).unwrap());
        assert!(!precisely_implies(&d, &clause("x"), &f).unwrap());
    }

    #[test]
    fn projection_examples() {
        let f = xor();
        assert!(project(&[], &f).unwrap().is_empty());
        let x = literal_clauses(&clause("x").lits()[0], &f);
        assert_eq!(project(&x, &f).unwrap(), set(&["x"]));
        let mut d = x.clone();
        d.extend(literal_clauses(&clause("y").lits()[0], &f));
        let local = local_project(&d, &f).unwrap();
        assert!(local.contains(&clause("x")) && local.contains(&clause("y")));
        assert!(local_project(&[], &f).unwrap().is_empty());
        // Unsatisfiable configurations project to ⊥.
        let mut d = x;
        d.extend(literal_clauses(&clause("-x").lits()[0], &f));
        assert_eq!(project(&d, &f).unwrap(), set(&["[]"]));
    }

    #[test]
    fn blackboard_under_or() {
        let f = BooleanFunction::or(2).unwrap();
        let mut d = vec![clause("x#1 x#2")];
        d.extend(substitute_clause(&clause("-v -w y"), &f));
        assert_eq!(d.len(), 5);
        let p = project(&d, &f).unwrap();
        assert!(p.contains(&clause("x")), "{p:?}");
        assert!(p.contains(&clause("-v -w y")), "{p:?}");
    }

    #[test]
    fn rejects_unsubstituted_variables() {
        assert_eq!(
            project(&[clause("x")], &xor()),
            Err(ProjectionError::NotSubstituted(Var::new("x")))
        );
    }

    #[test]
    fn space_bound_example() {
        let f = xor();
        let d = literal_clauses(&clause("x").lits()[0], &f);
        let r = space_respecting_check(&f, &[d]).unwrap();
        assert!(r.asserted && r.holds());
        assert_eq!((r.rows[0].clauses, r.rows[0].projected_vars), (2, 1));
        assert_eq!(r.to_csv(), "id,clauses,projected_vars,within_bound\n0,2,1,yes\n");
        assert_eq!(r.witness_log(), "");
    }

    #[test]
    fn axiom_suite_on_small_samples() {
        let f = xor();
        let samples = random_configurations(7, 20, 4, 3, 2);
        let r = projection_axiom_suite(&f, &samples, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checks > 20);
    }

    #[test]
    fn extraction_round_trip() {
        use crate::formulas::CnfFormula;
        use crate::resolution::{lift_refutation, ProofStep, Refutation, Rule};
        let target: CnfFormula = [clause("x"), clause("-x")].into_iter().collect();
        let r = Refutation {
            target: target.clone(),
            steps: vec![
                ProofStep::Download(clause("x")),
                ProofStep::Download(clause("-x")),
                ProofStep::Infer {
                    result: clause("[]"),
                    premises: vec![clause("x"), clause("-x")],
                    rule: Rule::Resolution { pivot: Var::new("x") },
                },
            ],
        };
        let f = xor();
        let lifted = lift_refutation(&r, &f).unwrap();
        for local in [false, true] {
            let e = extract_refutation(&lifted.refutation, &target, &f, local).unwrap();
            assert!(e.measures.downloads <= lifted.output.downloads);
            assert!(e.measures.variable_space <= e.var_space_bound);
        }
    }
}
