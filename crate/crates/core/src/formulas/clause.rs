use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::FormulaError;
use crate::names::Var;

/// Token used for the empty clause in text formats.
pub const EMPTY_CLAUSE: &str = "[]";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: Var,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: impl Into<Var>) -> Lit {
        Lit {
            var: var.into(),
            positive: true,
        }
    }

    pub fn neg(var: impl Into<Var>) -> Lit {
        Lit {
            var: var.into(),
            positive: false,
        }
    }

    pub fn negated(&self) -> Lit {
        Lit {
            var: self.var.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.var)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Lit {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (positive, name) = match s.strip_prefix('-') {
            Some(rest) => (false, rest),
            None => (true, s),
        };
        if name.is_empty() || name.starts_with('-') || name.contains(char::is_whitespace) {
            return Err(FormulaError::BadLiteral(s.to_string()));
        }
        Ok(Lit {
            var: Var::new(name),
            positive,
        })
    }
}

/// A nontrivial disjunction of literals, kept sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Sorts and deduplicates; fails if a variable occurs in both polarities.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause, FormulaError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var == w[1].var {
                return Err(FormulaError::TrivialClause(w[0].var.clone()));
            }
        }
        Ok(Clause { lits })
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn unit(lit: Lit) -> Clause {
        Clause { lits: vec![lit] }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: &Lit) -> bool {
        self.lits.binary_search(lit).is_ok()
    }

    /// The polarity of `var` in this clause, if it occurs.
    pub fn polarity_of(&self, var: &Var) -> Option<bool> {
        let i = self.lits.partition_point(|l| l.var < *var);
        self.lits
            .get(i)
            .filter(|l| l.var == *var)
            .map(|l| l.positive)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.lits.iter().map(|l| &l.var)
    }

    /// `self ⊆ other` as literal sets.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.lits.iter().all(|l| other.contains(l))
    }

    pub fn union(&self, other: &Clause) -> Result<Clause, FormulaError> {
        Clause::new(self.lits.iter().chain(other.lits.iter()).cloned())
    }

    pub fn with(&self, lit: Lit) -> Result<Clause, FormulaError> {
        Clause::new(self.lits.iter().cloned().chain(std::iter::once(lit)))
    }

    pub fn without(&self, lit: &Lit) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| *l != lit).cloned().collect(),
        }
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.vars().cloned().collect()
    }

    /// Truth value under a total assignment given as a lookup.
    pub fn eval(&self, value: impl Fn(&Var) -> bool) -> bool {
        self.lits.iter().any(|l| value(&l.var) == l.positive)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str(EMPTY_CLAUSE);
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Clause {
    type Err = FormulaError;

    /// Space-separated signed names, or `[]` for the empty clause.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == EMPTY_CLAUSE {
            return Ok(Clause::empty());
        }
        if s.is_empty() {
            return Err(FormulaError::BadLiteral(String::new()));
        }
        let lits = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Lit>, _>>()?;
        Clause::new(lits)
    }
}

/// Shorthand used heavily in tests: `clause("-u -v x")`.
pub fn clause(s: &str) -> Clause {
    s.parse().unwrap_or_else(|e| panic!("bad clause `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_clauses_are_rejected() {
        assert!(matches!(
            "x -x".parse::<Clause>(),
            Err(FormulaError::TrivialClause(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let c = clause("y -x z#2 z#10");
        assert_eq!(c.to_string(), "-x y z#2 z#10");
        assert_eq!(c.to_string().parse::<Clause>().unwrap(), c);
        assert_eq!(clause("[]"), Clause::empty());
        assert_eq!(Clause::empty().to_string(), "[]");
    }

    #[test]
    fn polarity_lookup() {
        let c = clause("-a b");
        assert_eq!(c.polarity_of(&Var::new("a")), Some(false));
        assert_eq!(c.polarity_of(&Var::new("b")), Some(true));
        assert_eq!(c.polarity_of(&Var::new("c")), None);
        assert!(clause("b").subsumes(&c));
    }
}
