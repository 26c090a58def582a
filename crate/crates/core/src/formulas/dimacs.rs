use std::collections::HashMap;
use std::fmt::Write as _;

use super::clause::{Clause, Lit};
use super::cnf::CnfFormula;
use super::FormulaError;
use crate::names::Var;

/// DIMACS text. Variables are numbered in canonical name order and the
/// numbering is recorded in `c var <index> <name>` comment lines.
pub fn to_dimacs(formula: &CnfFormula) -> String {
    let vars: Vec<Var> = formula.vars().into_iter().collect();
    let mut out = String::new();
    for (i, v) in vars.iter().enumerate() {
        let _ = writeln!(out, "c var {} {}", i + 1, v);
    }
    let _ = writeln!(out, "p cnf {} {}", vars.len(), formula.len());
    for c in formula {
        for l in c.lits() {
            let i = vars.binary_search(&l.var).expect("variable of the formula") + 1;
            let _ = write!(out, "{}{} ", if l.positive { "" } else { "-" }, i);
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS, honouring `c var` name comments. Unnamed variables become
/// `x<index>`.
pub fn from_dimacs(text: &str) -> Result<CnfFormula, FormulaError> {
    let err = |line: usize, msg: String| FormulaError::Dimacs { line, msg };
    let mut names: HashMap<i64, Var> = HashMap::new();
    let mut header: Option<(i64, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content == "%" {
            continue;
        }
        if let Some(comment) = content.strip_prefix('c') {
            let fields: Vec<&str> = comment.split_whitespace().collect();
            if let ["var", idx, name] = fields.as_slice() {
                let idx: i64 = idx
                    .parse()
                    .map_err(|_| err(line, format!("bad variable index `{idx}`")))?;
                names.insert(idx, Var::new(name));
            }
            continue;
        }
        if let Some(rest) = content.strip_prefix("p ") {
            if header.is_some() {
                return Err(err(line, "second problem line".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match fields.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(line, "bad variable count".into()))?;
                    let c = c.parse().map_err(|_| err(line, "bad clause count".into()))?;
                    header = Some((v, c));
                }
                _ => return Err(err(line, "expected `p cnf <vars> <clauses>`".into())),
            }
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(err(line, "clause before problem line".into()));
        };
        for tok in content.split_whitespace() {
            let k: i64 = tok
                .parse()
                .map_err(|_| err(line, format!("bad literal `{tok}`")))?;
            if k == 0 {
                let c = Clause::new(current.drain(..))
                    .map_err(|e| err(current_line.max(line), e.to_string()))?;
                clauses.push(c);
                continue;
            }
            if k.abs() > nvars {
                return Err(err(line, format!("variable {} exceeds declared {nvars}", k.abs())));
            }
            if current.is_empty() {
                current_line = line;
            }
            let var = names
                .get(&k.abs())
                .cloned()
                .unwrap_or_else(|| Var::new(format!("x{}", k.abs())));
            current.push(Lit { var, positive: k > 0 });
        }
    }
    let Some((_, nclauses)) = header else {
        return Err(err(text.lines().count().max(1), "missing problem line".into()));
    };
    if !current.is_empty() {
        return Err(err(current_line, "clause not terminated by 0".into()));
    }
    if clauses.len() != nclauses {
        return Err(err(
            text.lines().count(),
            format!("header announces {nclauses} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula::new(clauses))
}
