//! Boolean functions given by truth table, their prime-implicate clause sets
//! and the non-authoritarian test.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bits::MaskClause;
use crate::formulas::{Clause, Lit};
use crate::names::Var;

pub const MAX_ARITY: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolFuncError {
    #[error("constant functions cannot be substituted")]
    ConstantFunction,
    #[error("arity {0} outside 1..={MAX_ARITY}")]
    ArityOutOfRange(usize),
    #[error("truth table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("bad function literal `{0}`: {1}")]
    BadLiteral(String, String),
    #[error("expected {expected} variable names, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("variable `{0}` repeated in argument tuple")]
    RepeatedVariable(Var),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A non-constant function `{0,1}^d -> {0,1}`. Entry `a` of the table is the
/// value on the assignment where `x_{i+1}` is bit `i` of `a`.
#[derive(Clone)]
pub struct BooleanFunction {
    arity: usize,
    table: Vec<bool>,
    label: String,
    implicates: [OnceLock<Vec<MaskClause>>; 2],
}

impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.table == other.table
    }
}

impl Eq for BooleanFunction {}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({})", self.label)
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl BooleanFunction {
    pub fn from_table(arity: usize, table: Vec<bool>) -> Result<Self, BoolFuncError> {
        let label = format!("tt:{arity}:{}", table_hex(&table));
        Self::labelled(arity, table, label)
    }

    fn labelled(arity: usize, table: Vec<bool>, label: String) -> Result<Self, BoolFuncError> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(BoolFuncError::ArityOutOfRange(arity));
        }
        if table.len() != 1 << arity {
            return Err(BoolFuncError::TableSize {
                got: table.len(),
                expected: 1 << arity,
            });
        }
        if table.iter().all(|&b| b) || table.iter().all(|&b| !b) {
            return Err(BoolFuncError::ConstantFunction);
        }
        Ok(BooleanFunction {
            arity,
            table,
            label,
            implicates: [OnceLock::new(), OnceLock::new()],
        })
    }

    fn from_fn(arity: usize, label: String, f: impl Fn(u32) -> bool) -> Result<Self, BoolFuncError> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(BoolFuncError::ArityOutOfRange(arity));
        }
        let table = (0..1u32 << arity).map(f).collect();
        Self::labelled(arity, table, label)
    }

    pub fn or(d: usize) -> Result<Self, BoolFuncError> {
        Self::from_fn(d, format!("or:{d}"), |a| a != 0)
    }

    pub fn xor(d: usize) -> Result<Self, BoolFuncError> {
        Self::from_fn(d, format!("xor:{d}"), |a| a.count_ones() % 2 == 1)
    }

    /// `Thr^d_k`: true iff at least `k` of the `d` inputs are true.
    pub fn threshold(d: usize, k: usize) -> Result<Self, BoolFuncError> {
        Self::from_fn(d, format!("thr:{d}:{k}"), |a| a.count_ones() as usize >= k)
    }

    /// Majority of `n` inputs: more than half are true.
    pub fn majority(n: usize) -> Result<Self, BoolFuncError> {
        Self::from_fn(n, format!("maj:{n}"), |a| 2 * a.count_ones() as usize > n)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, assignment: u32) -> bool {
        self.table[assignment as usize]
    }

    pub fn negate(&self) -> BooleanFunction {
        let table = self.table.iter().map(|b| !b).collect();
        Self::labelled(self.arity, table, format!("not({})", self.label))
            .expect("negation of a non-constant function is non-constant")
    }

    /// Prime implicates of `f` (positive) or `¬f` (negative) over local
    /// variables `0..d`, sorted by width and then mask order.
    pub fn prime_implicates(&self, polarity: Polarity) -> &[MaskClause] {
        let slot = match polarity {
            Polarity::Positive => 0,
            Polarity::Negative => 1,
        };
        self.implicates[slot].get_or_init(|| {
            // Implicates of g are negations of implicant cubes of ¬g.
            let want = polarity == Polarity::Negative;
            let zeros: Vec<u32> = (0..1u32 << self.arity)
                .filter(|&a| self.table[a as usize] == want)
                .collect();
            let full = ((1u64 << self.arity) - 1) as u32;
            let mut clauses: Vec<MaskClause> = prime_cubes(&zeros, self.arity)
                .into_iter()
                .map(|(care, val)| {
                    MaskClause::new((care & !val & full) as u64, (care & val) as u64)
                })
                .collect();
            clauses.sort_by_key(|c| (c.width(), *c));
            clauses
        })
    }

    /// `Cl[f](vars)` or `Cl[¬f](vars)`: all prime implicates instantiated on
    /// the given variable tuple.
    pub fn canonical_clauses(
        &self,
        vars: &[Var],
        polarity: Polarity,
    ) -> Result<Vec<Clause>, BoolFuncError> {
        if vars.len() != self.arity {
            return Err(BoolFuncError::VariableCount {
                expected: self.arity,
                got: vars.len(),
            });
        }
        let mut seen = HashSet::new();
        for v in vars {
            if !seen.insert(v) {
                return Err(BoolFuncError::RepeatedVariable(v.clone()));
            }
        }
        Ok(self
            .prime_implicates(polarity)
            .iter()
            .map(|m| instantiate(*m, vars))
            .collect())
    }

    /// True iff no restriction of at most `k` inputs fixes the value.
    pub fn is_k_nonauthoritarian(&self, k: usize) -> bool {
        if k >= self.arity {
            return false;
        }
        let d = self.arity as u32;
        // A fixing restriction of size < k extends to a fixing one of size k,
        // so it suffices to look at restrictions of exactly k inputs.
        for subset in 0u32..1 << d {
            if subset.count_ones() as usize != k {
                continue;
            }
            // For each value pattern on `subset`, which outputs are reachable.
            let mut seen = vec![0u8; 1 << d];
            for a in 0u32..1 << d {
                seen[(a & subset) as usize] |= 1 << self.table[a as usize] as u8;
            }
            let mut pattern = 0u32;
            loop {
                if seen[pattern as usize] != 0b11 {
                    return false;
                }
                pattern = pattern.wrapping_sub(subset) & subset;
                if pattern == 0 {
                    break;
                }
            }
        }
        true
    }
}

fn instantiate(m: MaskClause, vars: &[Var]) -> Clause {
    let mut lits = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        if m.pos >> i & 1 == 1 {
            lits.push(Lit::pos(v.clone()));
        }
        if m.neg >> i & 1 == 1 {
            lits.push(Lit::neg(v.clone()));
        }
    }
    Clause::new(lits).expect("prime implicates are nontrivial")
}

/// Quine–McCluskey: maximal cubes `(care, value)` covering only points of
/// `points`.
fn prime_cubes(points: &[u32], arity: usize) -> Vec<(u32, u32)> {
    let full = ((1u64 << arity) - 1) as u32;
    let mut level: HashSet<(u32, u32)> = points.iter().map(|&p| (full, p)).collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for &(care, val) in &level {
            let mut bits = care;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits &= bits - 1;
                let partner = (care, val ^ bit);
                if level.contains(&partner) {
                    merged.insert((care, val));
                    next.insert((care & !bit, val & !bit));
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    primes.sort_unstable();
    primes
}

fn table_hex(table: &[bool]) -> String {
    let digits = table.len().div_ceil(4);
    (0..digits)
        .rev()
        .map(|j| {
            let nib = (0..4)
                .filter(|b| table.get(4 * j + b).copied().unwrap_or(false))
                .fold(0u32, |acc, b| acc | 1 << b);
            char::from_digit(nib, 16).unwrap()
        })
        .collect()
}

impl FromStr for BooleanFunction {
    type Err = BoolFuncError;

    /// `or:d`, `xor:d`, `thr:d:k`, `maj:n` or `tt:<arity>:<hex>`, where bit
    /// `a` of the hex number is the value on assignment `a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| BoolFuncError::BadLiteral(s.to_string(), why.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad("expected a number"));
        match parts.as_slice() {
            ["or", d] => Self::or(num(d)?),
            ["xor", d] => Self::xor(num(d)?),
            ["thr", d, k] => Self::threshold(num(d)?, num(k)?),
            ["maj", n] => Self::majority(num(n)?),
            ["tt", d, hex] => {
                let d = num(d)?;
                if d == 0 || d > MAX_ARITY {
                    return Err(BoolFuncError::ArityOutOfRange(d));
                }
                let hex = hex.trim_start_matches("0x");
                let mut bits = Vec::new();
                for c in hex.chars().rev() {
                    let nib = c.to_digit(16).ok_or_else(|| bad("not a hex digit"))?;
                    bits.extend((0..4).map(|b| nib >> b & 1 == 1));
                }
                let size = 1usize << d;
                if bits.iter().skip(size).any(|&b| b) {
                    return Err(bad("table has bits beyond 2^arity"));
                }
                bits.resize(size, false);
                Self::labelled(d, bits, format!("tt:{d}:{hex}"))
            }
            _ => Err(bad("unknown function")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<Var> {
        names.iter().map(|&n| Var::new(n)).collect()
    }

    fn show(cls: &[Clause]) -> Vec<String> {
        let mut v: Vec<String> = cls.iter().map(|c| c.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn or_and_xor_sets() {
        let x = vars(&["x1", "x2"]);
        let or = BooleanFunction::or(2).unwrap();
        assert_eq!(show(&or.canonical_clauses(&x, Polarity::Positive).unwrap()), ["x1 x2"]);
        assert_eq!(
            show(&or.canonical_clauses(&x, Polarity::Negative).unwrap()),
            ["-x1", "-x2"]
        );
        let xor = BooleanFunction::xor(2).unwrap();
        assert_eq!(
            show(&xor.canonical_clauses(&x, Polarity::Positive).unwrap()),
            ["-x1 -x2", "x1 x2"]
        );
        assert_eq!(
            show(&xor.canonical_clauses(&x, Polarity::Negative).unwrap()),
            ["-x1 x2", "x1 -x2"]
        );
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(
            BooleanFunction::from_table(1, vec![true, true]).unwrap_err(),
            BoolFuncError::ConstantFunction
        );
        assert_eq!(
            "thr:2:0".parse::<BooleanFunction>().unwrap_err(),
            BoolFuncError::ConstantFunction
        );
    }

    #[test]
    fn literals_parse() {
        let f: BooleanFunction = "tt:2:6".parse().unwrap();
        assert_eq!(f, BooleanFunction::xor(2).unwrap());
        let g: BooleanFunction = "maj:3".parse().unwrap();
        assert_eq!(g, BooleanFunction::threshold(3, 2).unwrap());
        assert!("tt:1:f".parse::<BooleanFunction>().is_err());
        assert!("nand:2".parse::<BooleanFunction>().is_err());
        assert_eq!(BooleanFunction::xor(2).unwrap().to_string(), "xor:2");
        assert_eq!(BooleanFunction::from_table(2, vec![false, true, true, false]).unwrap().to_string(), "tt:2:6");
    }

    #[test]
    fn non_authoritarian() {
        assert!(!BooleanFunction::or(2).unwrap().is_k_nonauthoritarian(1));
        assert!(BooleanFunction::xor(3).unwrap().is_k_nonauthoritarian(2));
        assert!(BooleanFunction::majority(5).unwrap().is_k_nonauthoritarian(2));
        assert!(!BooleanFunction::majority(5).unwrap().is_k_nonauthoritarian(3));
        assert!(BooleanFunction::or(3).unwrap().is_k_nonauthoritarian(0));
        assert!(!BooleanFunction::xor(2).unwrap().is_k_nonauthoritarian(2));
    }
}
