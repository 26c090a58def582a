//! The blob-pebble game and its chargeable-cost space measure.

use std::collections::{BTreeSet, HashMap};

use super::{PebblingCost, PebblingError};
use crate::dag::Dag;

/// `[B]⟨W⟩`: a black blob on `B` supported by white pebbles on `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobSub {
    pub black: BTreeSet<usize>,
    pub white: BTreeSet<usize>,
}

impl BlobSub {
    pub fn new(
        black: impl IntoIterator<Item = usize>,
        white: impl IntoIterator<Item = usize>,
    ) -> Self {
        BlobSub {
            black: black.into_iter().collect(),
            white: white.into_iter().collect(),
        }
    }

    pub fn introduction(g: &Dag, v: usize) -> Self {
        BlobSub::new([v], g.preds(v).iter().copied())
    }

    pub fn is_well_formed(&self) -> bool {
        !self.black.is_empty() && self.black.is_disjoint(&self.white)
    }

    /// Every result of merging `self = [B1]⟨W1 ∪ {v}⟩` with
    /// `other = [B2 ∪ {v}]⟨W2⟩` on `v`. `W1` may or may not contain `v`, and
    /// likewise `B2`, so up to four results exist; the first is the
    /// canonical one with `v` dropped from both sides.
    pub fn mergers(&self, other: &BlobSub, v: usize) -> Vec<BlobSub> {
        if !self.white.contains(&v) || !other.black.contains(&v) {
            return Vec::new();
        }
        if !self.black.is_disjoint(&other.white) {
            return Vec::new();
        }
        let mut w1_min = self.white.clone();
        w1_min.remove(&v);
        let mut b2_min = other.black.clone();
        b2_min.remove(&v);
        let mut out = Vec::new();
        for w1 in [&w1_min, &self.white] {
            for b2 in [&b2_min, &other.black] {
                let r = BlobSub {
                    black: self.black.union(b2).copied().collect(),
                    white: w1.union(&other.white).copied().collect(),
                };
                if r.is_well_formed() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Whether `other` is an inflation of `self`.
    pub fn inflates_to(&self, other: &BlobSub) -> bool {
        self.black.is_subset(&other.black)
            && self.white.is_subset(&other.white)
            && other.is_well_formed()
    }
}

pub type BlobConfiguration = BTreeSet<BlobSub>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlobPebbling {
    pub steps: Vec<BlobConfiguration>,
}

/// Black and white cost of one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlobSpace {
    pub black_cost: usize,
    pub white_cost: usize,
}

impl BlobSpace {
    pub fn total(&self) -> usize {
        self.black_cost + self.white_cost
    }
}

pub const DEFAULT_BLOB_BUDGET: u64 = 1_000_000;

/// Space of a blob configuration: the largest black cost of a chargeable
/// blob collection (exact search) plus the number of chargeable whites.
/// A white `w ∈ W_i` is chargeable iff there is a path from `w` to every
/// `b ∈ B_i`.
pub fn blob_configuration_space(
    g: &Dag,
    conf: &BlobConfiguration,
    below: &[Vec<bool>],
    budget: u64,
) -> Result<BlobSpace, PebblingError> {
    let mut whites = BTreeSet::new();
    for s in conf {
        for &w in &s.white {
            if s.black.iter().all(|&b| below[w][b]) {
                whites.insert(w);
            }
        }
    }
    let blobs: BTreeSet<&BTreeSet<usize>> = conf.iter().map(|s| &s.black).collect();
    let black_cost = max_chargeable_blobs(g, &blobs.into_iter().collect::<Vec<_>>(), budget)?;
    Ok(BlobSpace {
        black_cost,
        white_cost: whites.len(),
    })
}

/// Longest sequence of distinct blobs in which each adds a vertex not
/// covered by the previous ones. Memoized over the set of blobs chosen.
fn max_chargeable_blobs(
    g: &Dag,
    blobs: &[&BTreeSet<usize>],
    budget: u64,
) -> Result<usize, PebblingError> {
    if blobs.is_empty() {
        return Ok(0);
    }
    if g.len() > 64 || blobs.len() > 64 {
        return Err(PebblingError::TooLarge {
            vertices: g.len().max(blobs.len()),
            limit: 64,
        });
    }
    let masks: Vec<u64> = blobs
        .iter()
        .map(|b| b.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    // Only the union matters for what can be added next, so memoize on it.
    let mut memo: HashMap<u64, usize> = HashMap::new();
    let mut visited = 0u64;
    fn go(
        covered: u64,
        masks: &[u64],
        memo: &mut HashMap<u64, usize>,
        visited: &mut u64,
        budget: u64,
    ) -> Result<usize, PebblingError> {
        if let Some(&r) = memo.get(&covered) {
            return Ok(r);
        }
        *visited += 1;
        if *visited > budget {
            return Err(PebblingError::BudgetExceeded { visited: *visited });
        }
        let mut best = 0;
        for &m in masks {
            if m & !covered != 0 {
                best = best.max(1 + go(covered | m, masks, memo, visited, budget)?);
            }
        }
        memo.insert(covered, best);
        Ok(best)
    }
    go(0, &masks, &mut memo, &mut visited, budget)
}

/// Checks a complete blob-pebbling and returns its time and space.
pub fn validate_blob(
    g: &Dag,
    p: &BlobPebbling,
    budget: u64,
) -> Result<PebblingCost, PebblingError> {
    for (t, conf) in p.steps.iter().enumerate() {
        for s in conf {
            if let Some(&v) = s.black.iter().chain(s.white.iter()).find(|&&v| v >= g.len()) {
                return Err(PebblingError::UnknownVertex { step: t, vertex: v });
            }
            if !s.is_well_formed() {
                return Err(PebblingError::IllegalMove {
                    step: t,
                    rule: "subconfiguration",
                    detail: "blob must be non-empty and disjoint from its whites".into(),
                });
            }
        }
    }
    if p.steps.first().map_or(true, |c| !c.is_empty()) {
        return Err(PebblingError::WrongEndpoints {
            detail: "a blob-pebbling starts from the empty configuration".into(),
        });
    }
    let goal = BTreeSet::from([BlobSub::new([g.sink()], [])]);
    if p.steps.last() != Some(&goal) {
        return Err(PebblingError::WrongEndpoints {
            detail: format!("a blob-pebbling ends at {{[{}]<>}}", g.name(g.sink())),
        });
    }
    for (t, w) in p.steps.windows(2).enumerate() {
        let (prev, next) = (&w[0], &w[1]);
        let added: Vec<&BlobSub> = next.difference(prev).collect();
        let removed: Vec<&BlobSub> = prev.difference(next).collect();
        let ok = match (added.as_slice(), removed.as_slice()) {
            ([], [_]) => true,
            ([s], []) => blob_derivable(g, prev, s),
            // A no-op is an inflation by nothing.
            ([], []) => !prev.is_empty(),
            _ => false,
        };
        if !ok {
            return Err(PebblingError::IllegalMove {
                step: t + 1,
                rule: "introduction/merger/inflation/erasure",
                detail: match added.first() {
                    Some(s) if removed.is_empty() => format!(
                        "[{}]<{}> cannot be derived",
                        names(g, &s.black),
                        names(g, &s.white)
                    ),
                    _ => format!("{} added and {} erased in one step", added.len(), removed.len()),
                },
            });
        }
    }
    let below = g.reachability();
    let mut space = 0;
    for conf in &p.steps {
        space = space.max(blob_configuration_space(g, conf, &below, budget)?.total());
    }
    Ok(PebblingCost {
        time: p.steps.len() - 1,
        space,
    })
}

fn blob_derivable(g: &Dag, prev: &BlobConfiguration, s: &BlobSub) -> bool {
    if s.black.len() == 1 {
        let v = *s.black.first().expect("one element");
        if *s == BlobSub::introduction(g, v) {
            return true;
        }
    }
    if prev.iter().any(|a| a.inflates_to(s)) {
        return true;
    }
    prev.iter().any(|a| {
        prev.iter().any(|b| {
            a.white
                .intersection(&b.black)
                .any(|&v| a.mergers(b, v).contains(s))
        })
    })
}

pub(crate) fn names(g: &Dag, set: &BTreeSet<usize>) -> String {
    set.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",")
}
