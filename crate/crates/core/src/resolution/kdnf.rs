//! k-DNF resolution: lines are disjunctions of terms of at most `k`
//! literals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use super::checker::Measures;
use super::semantic::SEMANTIC_VAR_LIMIT;
use super::ResolutionError;
use crate::bits::LocalVars;
use crate::formulas::{Clause, CnfFormula, Lit, EMPTY_CLAUSE};
use crate::names::Var;

/// A nonempty, nontrivial conjunction of literals, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Vec<Lit>);

impl Term {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Term, ResolutionError> {
        let mut v: Vec<Lit> = lits.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(ResolutionError::BadLine("empty term".into()));
        }
        if v.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(ResolutionError::BadLine(format!(
                "term {} contradicts itself",
                Term(v)
            )));
        }
        Ok(Term(v))
    }

    pub fn unit(lit: Lit) -> Term {
        Term(vec![lit])
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Term) -> bool {
        self.0.iter().all(|l| other.0.contains(l))
    }

    /// `self ∧ other`, or `None` if the conjunction is contradictory.
    pub fn conjoin(&self, other: &Term) -> Option<Term> {
        Term::new(self.0.iter().chain(&other.0).cloned()).ok()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [l] = self.0.as_slice() {
            return write!(f, "{l}");
        }
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("&")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Term {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Term, ResolutionError> {
        let inner = match s.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| ResolutionError::BadLine(format!("unclosed term `{s}`")))?,
            None => s,
        };
        let lits = inner
            .split('&')
            .map(|l| l.parse::<Lit>().map_err(|e| ResolutionError::BadLine(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Term::new(lits)
    }
}

/// A disjunction of terms. The empty line is ⊥.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KDnfLine(BTreeSet<Term>);

impl KDnfLine {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> KDnfLine {
        KDnfLine(terms.into_iter().collect())
    }

    pub fn from_clause(c: &Clause) -> KDnfLine {
        KDnfLine::new(c.lits().iter().cloned().map(Term::unit))
    }

    pub fn terms(&self) -> &BTreeSet<Term> {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.0.contains(t)
    }

    /// Widest term.
    pub fn term_width(&self) -> usize {
        self.0.iter().map(Term::len).max().unwrap_or(0)
    }

    /// Literal occurrences, counted with repetition.
    pub fn size(&self) -> usize {
        self.0.iter().map(Term::len).sum()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0
            .iter()
            .flat_map(|t| t.0.iter().map(|l| l.var.clone()))
            .collect()
    }

    fn without(&self, t: &Term) -> BTreeSet<Term> {
        let mut s = self.0.clone();
        s.remove(t);
        s
    }

    fn eval(&self, value: &dyn Fn(&Var) -> bool) -> bool {
        self.0
            .iter()
            .any(|t| t.0.iter().all(|l| value(&l.var) == l.positive))
    }
}

impl fmt::Display for KDnfLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY_CLAUSE);
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KDnfLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for KDnfLine {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<KDnfLine, ResolutionError> {
        let s = s.trim();
        if s == EMPTY_CLAUSE {
            return Ok(KDnfLine::default());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<BTreeSet<Term>, _>>()
            .map(KDnfLine)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KRule {
    Cut,
    AndIntro,
    AndElim,
    Weakening,
}

impl KRule {
    pub fn keyword(self) -> &'static str {
        match self {
            KRule::Cut => "cut",
            KRule::AndIntro => "andi",
            KRule::AndElim => "ande",
            KRule::Weakening => "w",
        }
    }

    fn arity(self) -> usize {
        match self {
            KRule::Cut | KRule::AndIntro => 2,
            KRule::AndElim | KRule::Weakening => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KDnfStep {
    Download(KDnfLine),
    Infer {
        result: KDnfLine,
        premises: Vec<KDnfLine>,
        rule: KRule,
    },
    Erase(KDnfLine),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDnfRefutation {
    pub k: usize,
    pub target: CnfFormula,
    pub steps: Vec<KDnfStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KDnfReport {
    pub measures: Measures,
    /// Inferences confirmed sound by truth table; the rest exceeded the
    /// variable limit.
    pub semantically_checked: usize,
}

fn illegal(index: usize, reason: impl Into<String>) -> ResolutionError {
    ResolutionError::IllegalStep {
        index,
        reason: reason.into(),
    }
}

/// `(a_1 ∧ ... ∧ a_k') ∨ G` and `¬a_1 ∨ ... ∨ ¬a_k' ∨ H` give `G ∨ H`.
/// The conclusion may keep cut literals from the second premise, which is
/// a harmless weakening.
fn cut_ok(k: usize, l1: &KDnfLine, l2: &KDnfLine, r: &KDnfLine) -> bool {
    l1.0.iter().filter(|t| t.len() <= k).any(|t| {
        let negs: Vec<Term> = t.0.iter().map(|l| Term::unit(l.negated())).collect();
        if !negs.iter().all(|n| l2.contains(n)) {
            return false;
        }
        let g = l1.without(t);
        let h: BTreeSet<Term> = l2.0.iter().filter(|x| !negs.contains(x)).cloned().collect();
        g.is_subset(&r.0)
            && h.is_subset(&r.0)
            && r.0.iter().all(|x| g.contains(x) || l2.contains(x))
    })
}

/// `G ∨ t` and `G' ∨ t'` give `G ∨ G' ∨ (t ∧ t')`. Returns the widest
/// conjunction that would have matched so oversize terms can be reported.
fn and_intro_ok(k: usize, l1: &KDnfLine, l2: &KDnfLine, r: &KDnfLine) -> Result<(), usize> {
    let mut oversize = 0;
    for t in &l1.0 {
        for t2 in &l2.0 {
            let Some(u) = t.conjoin(t2) else { continue };
            if !r.contains(&u) {
                continue;
            }
            let mut expect = l1.without(t);
            expect.extend(l2.without(t2));
            expect.insert(u.clone());
            if expect == r.0 {
                if u.len() <= k {
                    return Ok(());
                }
                oversize = oversize.max(u.len());
            }
        }
    }
    Err(oversize)
}

/// `G ∨ t` gives `G ∨ t'` for a nonempty `t' ⊆ t`.
fn and_elim_ok(l: &KDnfLine, r: &KDnfLine) -> bool {
    l.0.iter().any(|t| {
        r.0.iter().any(|t2| {
            if !t2.is_subset(t) {
                return false;
            }
            let mut expect = l.without(t);
            expect.insert(t2.clone());
            expect == r.0
        })
    })
}

/// Truth-table check of `premises ⊨ conclusion`; `None` above the limit.
fn lines_imply(premises: &[KDnfLine], conclusion: &KDnfLine) -> Option<bool> {
    let vars = LocalVars::from_vars(
        premises
            .iter()
            .chain(std::iter::once(conclusion))
            .flat_map(KDnfLine::vars),
    );
    if vars.len() > SEMANTIC_VAR_LIMIT {
        return None;
    }
    let idx: HashMap<Var, usize> = vars
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    Some((0..1u64 << vars.len()).all(|a| {
        let value = |v: &Var| a >> idx[v] & 1 == 1;
        conclusion.eval(&value) || premises.iter().any(|p| !p.eval(&value))
    }))
}

fn check_kdnf_step(
    r: &KDnfRefutation,
    config: &BTreeSet<KDnfLine>,
    index: usize,
    step: &KDnfStep,
) -> Result<bool, ResolutionError> {
    let k = r.k;
    match step {
        KDnfStep::Download(line) => {
            let as_clause = line
                .0
                .iter()
                .map(|t| match t.0.as_slice() {
                    [l] => Some(l.clone()),
                    _ => None,
                })
                .collect::<Option<Vec<Lit>>>()
                .and_then(|lits| Clause::new(lits).ok());
            match as_clause {
                Some(c) if r.target.contains(&c) => Ok(false),
                _ => Err(illegal(index, format!("`{line}` is not an axiom"))),
            }
        }
        KDnfStep::Erase(line) => {
            if config.contains(line) {
                Ok(false)
            } else {
                Err(illegal(index, format!("erasing `{line}` which is not in memory")))
            }
        }
        KDnfStep::Infer {
            result,
            premises,
            rule,
        } => {
            if premises.len() != rule.arity() {
                return Err(illegal(index, "wrong number of premises"));
            }
            for p in premises {
                if !config.contains(p) {
                    return Err(illegal(index, format!("premise `{p}` is not in memory")));
                }
            }
            if result.term_width() > k {
                return Err(illegal(
                    index,
                    format!("`{result}` has a term wider than k = {k}"),
                ));
            }
            let legal = match rule {
                KRule::Cut => {
                    cut_ok(k, &premises[0], &premises[1], result)
                        || cut_ok(k, &premises[1], &premises[0], result)
                }
                KRule::AndIntro => match and_intro_ok(k, &premises[0], &premises[1], result) {
                    Ok(()) => true,
                    Err(0) => false,
                    Err(w) => {
                        return Err(illegal(
                            index,
                            format!("∧-introduction builds a term of {w} literals, above k = {k}"),
                        ))
                    }
                },
                KRule::AndElim => and_elim_ok(&premises[0], result),
                KRule::Weakening => premises[0].0.is_subset(&result.0),
            };
            if !legal {
                return Err(illegal(
                    index,
                    format!("`{result}` does not follow by {}", rule.keyword()),
                ));
            }
            match lines_imply(premises, result) {
                Some(true) => Ok(true),
                Some(false) => Err(illegal(index, "inference is not semantically sound")),
                None => Ok(false),
            }
        }
    }
}

pub fn check_kdnf_refutation(r: &KDnfRefutation) -> Result<KDnfReport, ResolutionError> {
    if r.k == 0 {
        return Err(ResolutionError::BadLine("k must be positive".into()));
    }
    let mut config: BTreeSet<KDnfLine> = BTreeSet::new();
    let mut m = Measures::default();
    let mut checked = 0;
    for (i, step) in r.steps.iter().enumerate() {
        if check_kdnf_step(r, &config, i + 1, step)? {
            checked += 1;
        }
        match step {
            KDnfStep::Download(l) | KDnfStep::Infer { result: l, .. } => {
                if matches!(step, KDnfStep::Download(_)) {
                    m.downloads += 1;
                } else {
                    m.inferences += 1;
                }
                m.width = m.width.max(l.size());
                config.insert(l.clone());
            }
            KDnfStep::Erase(l) => {
                config.remove(l);
            }
        }
        let vars: BTreeSet<Var> = config.iter().flat_map(KDnfLine::vars).collect();
        m.formula_space = m.formula_space.max(config.len());
        m.variable_space = m.variable_space.max(vars.len());
        m.total_space = m.total_space.max(config.iter().map(KDnfLine::size).sum());
    }
    if !config.contains(&KDnfLine::default()) {
        return Err(ResolutionError::MissingBottom);
    }
    m.clause_space = m.formula_space;
    m.length = m.downloads + m.inferences;
    Ok(KDnfReport {
        measures: m,
        semantically_checked: checked,
    })
}
