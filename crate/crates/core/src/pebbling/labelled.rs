//! Labelled (L-)pebblings: subconfigurations `⟨v, W⟩` with a black pebble on
//! `v` supported by white pebbles on `W`.

use std::collections::BTreeSet;

use super::bw::{BwMove, BwPebbling};
use super::search::optimal_bw_price;
use super::PebblingError;
use crate::dag::Dag;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubConfig {
    pub black: usize,
    pub support: BTreeSet<usize>,
}

impl SubConfig {
    pub fn new(black: usize, support: impl IntoIterator<Item = usize>) -> Self {
        SubConfig {
            black,
            support: support.into_iter().collect(),
        }
    }

    pub fn introduction(g: &Dag, v: usize) -> Self {
        SubConfig::new(v, g.preds(v).iter().copied())
    }

    /// `⟨v, V⟩ ⊕ ⟨w, W⟩ = ⟨v, (V ∪ W) \ {w}⟩`; `None` unless `w ∈ V` and
    /// `v ∉ W`.
    pub fn merge(&self, other: &SubConfig) -> Option<SubConfig> {
        if !self.support.contains(&other.black) || other.support.contains(&self.black) {
            return None;
        }
        let mut support: BTreeSet<usize> = self.support.union(&other.support).copied().collect();
        support.remove(&other.black);
        Some(SubConfig {
            black: self.black,
            support,
        })
    }
}

pub type LabelledConfiguration = BTreeSet<SubConfig>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPebbling {
    pub steps: Vec<LabelledConfiguration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelledCost {
    pub time: usize,
    pub space: usize,
    /// Most subconfigurations in any configuration.
    pub max_subconfigs: usize,
    /// Largest white support.
    pub max_support: usize,
}

impl LabelledCost {
    /// `b (w + 1)` for the tightest `(b, w)`.
    pub fn boundedness_space_bound(&self) -> usize {
        self.max_subconfigs * (self.max_support + 1)
    }
}

pub fn configuration_space(conf: &LabelledConfiguration) -> usize {
    let mut all: BTreeSet<usize> = BTreeSet::new();
    for s in conf {
        all.insert(s.black);
        all.extend(s.support.iter().copied());
    }
    all.len()
}

/// Checks a complete L-pebbling and returns time, space and tightest
/// boundedness parameters.
pub fn validate_labelled(g: &Dag, p: &LabelledPebbling) -> Result<LabelledCost, PebblingError> {
    for (t, conf) in p.steps.iter().enumerate() {
        for s in conf {
            if let Some(&v) = std::iter::once(&s.black)
                .chain(s.support.iter())
                .find(|&&v| v >= g.len())
            {
                return Err(PebblingError::UnknownVertex { step: t, vertex: v });
            }
            if s.support.contains(&s.black) {
                return Err(PebblingError::IllegalMove {
                    step: t,
                    rule: "subconfiguration",
                    detail: format!("{} supports itself", g.name(s.black)),
                });
            }
        }
    }
    if p.steps.first().map_or(true, |c| !c.is_empty()) {
        return Err(PebblingError::WrongEndpoints {
            detail: "an L-pebbling starts from the empty configuration".into(),
        });
    }
    let goal: LabelledConfiguration = BTreeSet::from([SubConfig::new(g.sink(), [])]);
    if p.steps.last() != Some(&goal) {
        return Err(PebblingError::WrongEndpoints {
            detail: format!("an L-pebbling ends at {{<{}, {{}}>}}", g.name(g.sink())),
        });
    }
    for (t, w) in p.steps.windows(2).enumerate() {
        let (prev, next) = (&w[0], &w[1]);
        let added: Vec<&SubConfig> = next.difference(prev).collect();
        let removed: Vec<&SubConfig> = prev.difference(next).collect();
        let derivable = |s: &SubConfig| {
            *s == SubConfig::introduction(g, s.black)
                || prev
                    .iter()
                    .any(|a| prev.iter().any(|b| a.merge(b).as_ref() == Some(s)))
        };
        let ok = match (added.as_slice(), removed.as_slice()) {
            ([], [_]) => true,
            ([s], []) => derivable(s),
            ([], []) => prev.iter().any(|s| derivable(s)),
            _ => false,
        };
        if !ok {
            let detail = match (added.first(), removed.first()) {
                (Some(s), None) => format!("{} is neither an introduction nor a merger", show(g, s)),
                _ => format!("{} added and {} erased in one step", added.len(), removed.len()),
            };
            return Err(PebblingError::IllegalMove {
                step: t + 1,
                rule: "introduction/merger/erasure",
                detail,
            });
        }
    }
    Ok(LabelledCost {
        time: p.steps.len() - 1,
        space: p.steps.iter().map(configuration_space).max().unwrap_or(0),
        max_subconfigs: p.steps.iter().map(BTreeSet::len).max().unwrap_or(0),
        max_support: p
            .steps
            .iter()
            .flatten()
            .map(|s| s.support.len())
            .max()
            .unwrap_or(0),
    })
}

pub(crate) fn show(g: &Dag, s: &SubConfig) -> String {
    let sup: Vec<&str> = s.support.iter().map(|&u| g.name(u)).collect();
    format!("<{}, {{{}}}>", g.name(s.black), sup.join(","))
}

/// The L-pebbling simulating a black pebbling: placing a black pebble on `v`
/// introduces `⟨v, pred(v)⟩` and merges away the predecessors one at a
/// time, erasing each intermediate subconfiguration; removing it erases
/// `⟨v, ∅⟩`.
pub fn from_black_pebbling(g: &Dag, p: &BwPebbling) -> Result<LabelledPebbling, PebblingError> {
    let moves = p.moves().ok_or(PebblingError::IllegalMove {
        step: 0,
        rule: "single move",
        detail: "not a move sequence".into(),
    })?;
    let mut cur = LabelledConfiguration::new();
    let mut steps = vec![cur.clone()];
    for (i, m) in moves.into_iter().enumerate() {
        match m {
            BwMove::PlaceBlack(v) => {
                let mut sub = SubConfig::introduction(g, v);
                cur.insert(sub.clone());
                steps.push(cur.clone());
                for &u in g.preds(v) {
                    let merged = sub
                        .merge(&SubConfig::new(u, []))
                        .expect("u is in the support of sub");
                    cur.insert(merged.clone());
                    steps.push(cur.clone());
                    cur.remove(&sub);
                    steps.push(cur.clone());
                    sub = merged;
                }
            }
            BwMove::RemoveBlack(v) => {
                cur.remove(&SubConfig::new(v, []));
                steps.push(cur.clone());
            }
            BwMove::PlaceWhite(_) | BwMove::RemoveWhite(_) => {
                return Err(PebblingError::WhitePebbleInBlackOnly { step: i + 1 })
            }
        }
    }
    Ok(LabelledPebbling { steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedSpaceReport {
    pub cost: LabelledCost,
    pub bw_price: usize,
    /// `BW-Peb(G) ≤ space(L)`.
    pub price_at_most_space: bool,
    /// `space(L) ≤ b (w + 1)`.
    pub space_within_bound: bool,
}

impl BoundedSpaceReport {
    pub fn holds(&self) -> bool {
        self.price_at_most_space && self.space_within_bound
    }
}

/// Checks the price consequences of an L-pebbling against the black-white
/// pebbling oracle.
pub fn check_bounded_space_consequence(
    g: &Dag,
    p: &LabelledPebbling,
    budget: u64,
) -> Result<BoundedSpaceReport, PebblingError> {
    let cost = validate_labelled(g, p)?;
    let bw_price = optimal_bw_price(g, budget)?.price;
    Ok(BoundedSpaceReport {
        cost,
        bw_price,
        price_at_most_space: bw_price <= cost.space,
        space_within_bound: cost.space <= cost.boundedness_space_bound(),
    })
}
