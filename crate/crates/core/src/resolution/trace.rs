//! Line-oriented proof traces.
//!
//! ```text
//! d x                       download
//! d -x
//! r [] <- 1 2 pivot x       resolution of the lines introduced at steps 1, 2
//! w x y <- 1                weakening
//! e 1                       erase the line introduced at step 1
//! ```
//!
//! Steps are numbered from 1 and every line, erasures included, counts.
//! k-DNF traces start with `kdnf <k>` and use `cut`, `andi`, `ande`, `w`
//! with terms written `(a&-b)`. Lines starting with `c` are comments.

use std::collections::HashMap;
use std::fmt::{Display, Write as _};
use std::hash::Hash;
use std::str::FromStr;

use super::kdnf::{KDnfRefutation, KDnfStep, KRule};
use super::proof::{ProofStep, Refutation, Rule};
use super::ResolutionError;
use crate::formulas::{Clause, CnfFormula};
use crate::names::Var;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofTrace {
    Resolution(Refutation),
    KDnf(KDnfRefutation),
}

fn err(line: usize, msg: impl Into<String>) -> ResolutionError {
    ResolutionError::Trace {
        line,
        msg: msg.into(),
    }
}

/// Lines introduced so far, by step number.
struct Intro<L> {
    lines: HashMap<usize, L>,
}

impl<L: Clone> Intro<L> {
    fn get(&self, tok: &str, lineno: usize, step: usize) -> Result<L, ResolutionError> {
        let i: usize = tok
            .parse()
            .map_err(|_| err(lineno, format!("bad step reference `{tok}`")))?;
        if i == 0 || i >= step {
            return Err(err(lineno, format!("step {i} does not precede step {step}")));
        }
        self.lines
            .get(&i)
            .cloned()
            .ok_or_else(|| err(lineno, format!("step {i} introduces no line")))
    }
}

/// Splits `body <- refs...` into the line text and the reference tokens.
fn split_refs(rest: &str, lineno: usize) -> Result<(&str, Vec<&str>), ResolutionError> {
    let (body, refs) = rest
        .split_once("<-")
        .ok_or_else(|| err(lineno, "missing `<-`"))?;
    Ok((body.trim(), refs.split_whitespace().collect()))
}

pub fn parse_proof_trace(target: &CnfFormula, text: &str) -> Result<ProofTrace, ResolutionError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !is_comment(l));
    let first = lines.clone().next();
    if let Some((lineno, l)) = first {
        if let Some(k) = l.strip_prefix("kdnf") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| err(lineno, "expected `kdnf <k>`"))?;
            lines.next();
            return parse_kdnf(target, k, lines).map(ProofTrace::KDnf);
        }
    }
    parse_resolution(target, lines).map(ProofTrace::Resolution)
}

fn is_comment(l: &str) -> bool {
    l == "c" || l.starts_with("c ")
}

fn parse_line<L: FromStr>(s: &str, lineno: usize) -> Result<L, ResolutionError>
where
    L::Err: Display,
{
    s.parse().map_err(|e: L::Err| err(lineno, e.to_string()))
}

fn parse_resolution<'a>(
    target: &CnfFormula,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Refutation, ResolutionError> {
    let mut intro = Intro {
        lines: HashMap::new(),
    };
    let mut steps = Vec::new();
    for (lineno, l) in lines {
        let step_no = steps.len() + 1;
        let (op, rest) = l.split_once(' ').unwrap_or((l, ""));
        let step = match op {
            "d" => ProofStep::Download(parse_line::<Clause>(rest, lineno)?),
            "e" => ProofStep::Erase(intro.get(rest.trim(), lineno, step_no)?),
            "r" => {
                let (body, refs) = split_refs(rest, lineno)?;
                let [i, j, kw, pivot] = refs.as_slice() else {
                    return Err(err(lineno, "expected `<- i j pivot <var>`"));
                };
                if *kw != "pivot" {
                    return Err(err(lineno, "expected `pivot`"));
                }
                ProofStep::Infer {
                    result: parse_line(body, lineno)?,
                    premises: vec![
                        intro.get(i, lineno, step_no)?,
                        intro.get(j, lineno, step_no)?,
                    ],
                    rule: Rule::Resolution {
                        pivot: Var::new(pivot),
                    },
                }
            }
            "w" => {
                let (body, refs) = split_refs(rest, lineno)?;
                let [i] = refs.as_slice() else {
                    return Err(err(lineno, "expected `<- i`"));
                };
                ProofStep::Infer {
                    result: parse_line(body, lineno)?,
                    premises: vec![intro.get(i, lineno, step_no)?],
                    rule: Rule::Weakening,
                }
            }
            _ => return Err(err(lineno, format!("unknown step `{op}`"))),
        };
        if let ProofStep::Download(c) | ProofStep::Infer { result: c, .. } = &step {
            intro.lines.insert(step_no, c.clone());
        }
        steps.push(step);
    }
    Ok(Refutation {
        target: target.clone(),
        steps,
    })
}

fn parse_kdnf<'a>(
    target: &CnfFormula,
    k: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<KDnfRefutation, ResolutionError> {
    let mut intro = Intro {
        lines: HashMap::new(),
    };
    let mut steps = Vec::new();
    for (lineno, l) in lines {
        let step_no = steps.len() + 1;
        let (op, rest) = l.split_once(' ').unwrap_or((l, ""));
        let rule = match op {
            "d" => None,
            "e" => {
                steps.push(KDnfStep::Erase(intro.get(rest.trim(), lineno, step_no)?));
                continue;
            }
            "cut" => Some(KRule::Cut),
            "andi" => Some(KRule::AndIntro),
            "ande" => Some(KRule::AndElim),
            "w" => Some(KRule::Weakening),
            _ => return Err(err(lineno, format!("unknown step `{op}`"))),
        };
        let step = match rule {
            None => KDnfStep::Download(parse_line(rest, lineno)?),
            Some(rule) => {
                let (body, refs) = split_refs(rest, lineno)?;
                let premises = refs
                    .iter()
                    .map(|r| intro.get(r, lineno, step_no))
                    .collect::<Result<Vec<_>, _>>()?;
                KDnfStep::Infer {
                    result: parse_line(body, lineno)?,
                    premises,
                    rule,
                }
            }
        };
        if let KDnfStep::Download(l) | KDnfStep::Infer { result: l, .. } = &step {
            intro.lines.insert(step_no, l.clone());
        }
        steps.push(step);
    }
    Ok(KDnfRefutation {
        k,
        target: target.clone(),
        steps,
    })
}

/// Latest step that introduced each line, for writing references.
struct Latest<L> {
    step: HashMap<L, usize>,
}

impl<L: Hash + Eq + Clone + Display> Latest<L> {
    fn reference(&self, l: &L, at: usize) -> Result<usize, ResolutionError> {
        self.step.get(l).copied().ok_or_else(|| ResolutionError::IllegalStep {
            index: at,
            reason: format!("`{l}` was never introduced"),
        })
    }
}

pub fn write_proof_trace(r: &Refutation) -> Result<String, ResolutionError> {
    let mut latest = Latest {
        step: HashMap::new(),
    };
    let mut out = String::new();
    for (i, step) in r.steps.iter().enumerate() {
        let n = i + 1;
        match step {
            ProofStep::Download(c) => {
                writeln!(out, "d {c}").unwrap();
                latest.step.insert(c.clone(), n);
            }
            ProofStep::Erase(c) => {
                writeln!(out, "e {}", latest.reference(c, n)?).unwrap();
            }
            ProofStep::Infer {
                result,
                premises,
                rule,
            } => {
                let refs = premises
                    .iter()
                    .map(|p| latest.reference(p, n).map(|s| s.to_string()))
                    .collect::<Result<Vec<_>, _>>()?
                    .join(" ");
                match rule {
                    Rule::Resolution { pivot } => {
                        writeln!(out, "r {result} <- {refs} pivot {pivot}").unwrap()
                    }
                    Rule::Weakening => writeln!(out, "w {result} <- {refs}").unwrap(),
                }
                latest.step.insert(result.clone(), n);
            }
        }
    }
    Ok(out)
}

pub fn write_kdnf_trace(r: &KDnfRefutation) -> Result<String, ResolutionError> {
    let mut latest = Latest {
        step: HashMap::new(),
    };
    let mut out = format!("kdnf {}\n", r.k);
    for (i, step) in r.steps.iter().enumerate() {
        let n = i + 1;
        match step {
            KDnfStep::Download(l) => {
                writeln!(out, "d {l}").unwrap();
                latest.step.insert(l.clone(), n);
            }
            KDnfStep::Erase(l) => {
                writeln!(out, "e {}", latest.reference(l, n)?).unwrap();
            }
            KDnfStep::Infer {
                result,
                premises,
                rule,
            } => {
                let refs = premises
                    .iter()
                    .map(|p| latest.reference(p, n).map(|s| s.to_string()))
                    .collect::<Result<Vec<_>, _>>()?
                    .join(" ");
                writeln!(out, "{} {result} <- {refs}", rule.keyword()).unwrap();
                latest.step.insert(result.clone(), n);
            }
        }
    }
    Ok(out)
}
