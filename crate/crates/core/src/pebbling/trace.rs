//! Line-oriented pebbling traces.
//!
//! The first non-comment line names the variant: `black`, `bw`, `labelled`
//! or `blob`. Black-white traces consist of `B+ v`, `B- v`, `W+ v`, `W- v`.
//! Labelled and blob traces refer to subconfigurations by id: ids are
//! handed out from 0 in creation order by every `I` and `M` line (and every
//! `X` line in blob traces).
//!
//! * labelled: `I v` introduces `⟨v, pred(v)⟩`, `M i j` merges `i = ⟨v, V⟩`
//!   with `j = ⟨w, W⟩` into `⟨v, (V ∪ W) \ {w}⟩`, `E i` erases.
//! * blob: `I v` introduces `[v]⟨pred(v)⟩`, `M i j v` merges
//!   `i = [B1]⟨W1 ∪ {v}⟩` with `j = [B2 ∪ {v}]⟨W2⟩` into `[B1 ∪ B2]⟨W1 ∪ W2⟩`,
//!   `X i b.. / w..` inflates `i` by the listed blacks and whites, `E i`
//!   erases.
//!
//! Parsing only applies the moves; legality is checked by the validators.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::blob::{BlobConfiguration, BlobPebbling, BlobSub};
use super::bw::{BwMove, BwPebbling};
use super::labelled::{show, LabelledConfiguration, LabelledPebbling, SubConfig};
use super::PebblingError;
use crate::dag::Dag;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PebblingTrace {
    Bw {
        black_only: bool,
        pebbling: BwPebbling,
    },
    Labelled(LabelledPebbling),
    Blob(BlobPebbling),
}

fn trace_err(line: usize, msg: impl Into<String>) -> PebblingError {
    PebblingError::Trace {
        line,
        msg: msg.into(),
    }
}

pub fn parse_pebbling_trace(g: &Dag, text: &str) -> Result<PebblingTrace, PebblingError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| (i + 1, content.split_whitespace().collect::<Vec<_>>()))
    });
    let Some((hline, header)) = lines.next() else {
        return Err(trace_err(1, "empty trace"));
    };
    let vertex = |line: usize, name: &str| {
        g.vertex(name)
            .ok_or_else(|| trace_err(line, format!("unknown vertex `{name}`")))
    };
    let id = |line: usize, tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| trace_err(line, format!("bad subconfiguration id `{tok}`")))
    };
    match header.as_slice() {
        [kind @ ("black" | "bw")] => {
            let mut moves = Vec::new();
            for (line, f) in lines {
                let m = match f.as_slice() {
                    ["B+", v] => BwMove::PlaceBlack(vertex(line, v)?),
                    ["B-", v] => BwMove::RemoveBlack(vertex(line, v)?),
                    ["W+", v] => BwMove::PlaceWhite(vertex(line, v)?),
                    ["W-", v] => BwMove::RemoveWhite(vertex(line, v)?),
                    _ => return Err(trace_err(line, "expected B+/B-/W+/W- <vertex>")),
                };
                moves.push(m);
            }
            Ok(PebblingTrace::Bw {
                black_only: *kind == "black",
                pebbling: BwPebbling::from_moves(&moves)?,
            })
        }
        ["labelled"] => {
            let mut subs: Vec<SubConfig> = Vec::new();
            let mut cur = LabelledConfiguration::new();
            let mut steps = vec![cur.clone()];
            let present = |cur: &LabelledConfiguration, subs: &[SubConfig], line, i: usize| {
                subs.get(i)
                    .filter(|s| cur.contains(*s))
                    .cloned()
                    .ok_or_else(|| trace_err(line, format!("subconfiguration {i} is not present")))
            };
            for (line, f) in lines {
                match f.as_slice() {
                    ["I", v] => {
                        let s = SubConfig::introduction(g, vertex(line, v)?);
                        subs.push(s.clone());
                        cur.insert(s);
                    }
                    ["M", i, j] => {
                        let a = present(&cur, &subs, line, id(line, i)?)?;
                        let b = present(&cur, &subs, line, id(line, j)?)?;
                        let s = a.merge(&b).ok_or_else(|| PebblingError::IllegalMove {
                            step: steps.len(),
                            rule: "merger",
                            detail: format!(
                                "{} cannot be merged with {}",
                                show(g, &a),
                                show(g, &b)
                            ),
                        })?;
                        subs.push(s.clone());
                        cur.insert(s);
                    }
                    ["E", i] => {
                        let s = present(&cur, &subs, line, id(line, i)?)?;
                        cur.remove(&s);
                    }
                    _ => return Err(trace_err(line, "expected `I v`, `M i j` or `E i`")),
                }
                steps.push(cur.clone());
            }
            Ok(PebblingTrace::Labelled(LabelledPebbling { steps }))
        }
        ["blob"] => {
            let mut subs: Vec<BlobSub> = Vec::new();
            let mut cur = BlobConfiguration::new();
            let mut steps = vec![cur.clone()];
            let present = |cur: &BlobConfiguration, subs: &[BlobSub], line, i: usize| {
                subs.get(i)
                    .filter(|s| cur.contains(*s))
                    .cloned()
                    .ok_or_else(|| trace_err(line, format!("subconfiguration {i} is not present")))
            };
            for (line, f) in lines {
                let created = match f.as_slice() {
                    ["I", v] => Some(BlobSub::introduction(g, vertex(line, v)?)),
                    ["M", i, j, v] => {
                        let a = present(&cur, &subs, line, id(line, i)?)?;
                        let b = present(&cur, &subs, line, id(line, j)?)?;
                        let v = vertex(line, v)?;
                        let mut s = BlobSub {
                            black: a.black.clone(),
                            white: a.white.iter().filter(|&&u| u != v).copied().collect(),
                        };
                        s.black.extend(b.black.iter().filter(|&&u| u != v));
                        s.white.extend(b.white.iter().copied());
                        Some(s)
                    }
                    ["X", i, rest @ ..] => {
                        let a = present(&cur, &subs, line, id(line, i)?)?;
                        let sep = rest
                            .iter()
                            .position(|t| *t == "/")
                            .ok_or_else(|| trace_err(line, "inflation needs `/` between blacks and whites"))?;
                        let mut s = a.clone();
                        for name in &rest[..sep] {
                            s.black.insert(vertex(line, name)?);
                        }
                        for name in &rest[sep + 1..] {
                            s.white.insert(vertex(line, name)?);
                        }
                        Some(s)
                    }
                    ["E", i] => {
                        let s = present(&cur, &subs, line, id(line, i)?)?;
                        cur.remove(&s);
                        None
                    }
                    _ => {
                        return Err(trace_err(
                            line,
                            "expected `I v`, `M i j v`, `X i blacks / whites` or `E i`",
                        ))
                    }
                };
                if let Some(s) = created {
                    if !s.is_well_formed() {
                        return Err(trace_err(line, "resulting blob overlaps its whites"));
                    }
                    subs.push(s.clone());
                    cur.insert(s);
                }
                steps.push(cur.clone());
            }
            Ok(PebblingTrace::Blob(BlobPebbling { steps }))
        }
        _ => Err(trace_err(hline, "header must be black, bw, labelled or blob")),
    }
}

pub fn write_bw_trace(g: &Dag, p: &BwPebbling, black_only: bool) -> Result<String, PebblingError> {
    let moves = p.moves().ok_or_else(|| PebblingError::IllegalMove {
        step: 0,
        rule: "single move",
        detail: "pebbling is not a move sequence".into(),
    })?;
    let mut out = String::from(if black_only { "black\n" } else { "bw\n" });
    for m in moves {
        let (tag, v) = match m {
            BwMove::PlaceBlack(v) => ("B+", v),
            BwMove::RemoveBlack(v) => ("B-", v),
            BwMove::PlaceWhite(v) => ("W+", v),
            BwMove::RemoveWhite(v) => ("W-", v),
        };
        let _ = writeln!(out, "{tag} {}", g.name(v));
    }
    Ok(out)
}

/// Tracks ids of present subconfigurations while writing a trace.
struct Ids<T> {
    present: HashMap<T, usize>,
    next: usize,
}

impl<T: std::hash::Hash + Eq + Clone> Ids<T> {
    fn new() -> Self {
        Ids {
            present: HashMap::new(),
            next: 0,
        }
    }

    fn create(&mut self, s: &T) {
        self.present.insert(s.clone(), self.next);
        self.next += 1;
    }

    fn get(&self, s: &T) -> usize {
        self.present[s]
    }
}

fn unexplained(step: usize) -> PebblingError {
    PebblingError::IllegalMove {
        step,
        rule: "trace",
        detail: "transition has no move in the trace language".into(),
    }
}

pub fn write_labelled_trace(g: &Dag, p: &LabelledPebbling) -> Result<String, PebblingError> {
    let mut out = String::from("labelled\n");
    let mut ids: Ids<SubConfig> = Ids::new();
    for (t, w) in p.steps.windows(2).enumerate() {
        let (prev, next) = (&w[0], &w[1]);
        let added: Vec<&SubConfig> = next.difference(prev).collect();
        let removed: Vec<&SubConfig> = prev.difference(next).collect();
        match (added.as_slice(), removed.as_slice()) {
            ([], [s]) => {
                let _ = writeln!(out, "E {}", ids.get(*s));
                ids.present.remove(*s);
            }
            ([], []) | ([_], []) => {
                let target = added.first().copied();
                let line = explain_labelled(g, prev, target, &ids).ok_or_else(|| unexplained(t + 1))?;
                let _ = writeln!(out, "{line}");
                match target {
                    Some(s) => ids.create(s),
                    // Re-deriving a present subconfiguration: the old id stays valid.
                    None => ids.next += 1,
                }
            }
            _ => return Err(unexplained(t + 1)),
        }
    }
    Ok(out)
}

fn explain_labelled(
    g: &Dag,
    prev: &LabelledConfiguration,
    target: Option<&SubConfig>,
    ids: &Ids<SubConfig>,
) -> Option<String> {
    let fits = |s: &SubConfig| target.map_or(prev.contains(s), |t| t == s);
    for v in 0..g.len() {
        if fits(&SubConfig::introduction(g, v)) {
            return Some(format!("I {}", g.name(v)));
        }
    }
    for a in prev {
        for b in prev {
            if a.merge(b).as_ref().is_some_and(|m| fits(m)) {
                return Some(format!("M {} {}", ids.get(a), ids.get(b)));
            }
        }
    }
    None
}

pub fn write_blob_trace(g: &Dag, p: &BlobPebbling) -> Result<String, PebblingError> {
    let mut out = String::from("blob\n");
    let mut ids: Ids<BlobSub> = Ids::new();
    for (t, w) in p.steps.windows(2).enumerate() {
        let (prev, next) = (&w[0], &w[1]);
        let added: Vec<&BlobSub> = next.difference(prev).collect();
        let removed: Vec<&BlobSub> = prev.difference(next).collect();
        match (added.as_slice(), removed.as_slice()) {
            ([], [s]) => {
                let _ = writeln!(out, "E {}", ids.get(*s));
                ids.present.remove(*s);
            }
            ([s], []) => {
                let line = explain_blob(g, prev, s, &ids).ok_or_else(|| unexplained(t + 1))?;
                let _ = writeln!(out, "{line}");
                ids.create(s);
            }
            ([], []) => {
                // Inflation by nothing; the copy gets a fresh id but the
                // configuration is unchanged, so keep the old id current.
                let s = prev.iter().next().ok_or_else(|| unexplained(t + 1))?;
                let _ = writeln!(out, "X {} /", ids.get(s));
                ids.next += 1;
            }
            _ => return Err(unexplained(t + 1)),
        }
    }
    Ok(out)
}

fn explain_blob(g: &Dag, prev: &BlobConfiguration, s: &BlobSub, ids: &Ids<BlobSub>) -> Option<String> {
    if s.black.len() == 1 {
        let v = *s.black.first()?;
        if *s == BlobSub::introduction(g, v) {
            return Some(format!("I {}", g.name(v)));
        }
    }
    for a in prev {
        for b in prev {
            for &v in a.white.intersection(&b.black) {
                if a.mergers(b, v).first() == Some(s) {
                    return Some(format!("M {} {} {}", ids.get(a), ids.get(b), g.name(v)));
                }
            }
        }
    }
    let a = prev.iter().find(|a| a.inflates_to(s))?;
    let blacks: Vec<&str> = s.black.difference(&a.black).map(|&v| g.name(v)).collect();
    let whites: Vec<&str> = s.white.difference(&a.white).map(|&v| g.name(v)).collect();
    let mut line = format!("X {}", ids.get(a));
    for b in blacks {
        line.push(' ');
        line.push_str(b);
    }
    line.push_str(" /");
    for w in whites {
        line.push(' ');
        line.push_str(w);
    }
    Some(line)
}
