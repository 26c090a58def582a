//! The black-white pebble game.

use std::collections::BTreeSet;

use super::{PebblingCost, PebblingError};
use crate::dag::Dag;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BwConfiguration {
    pub black: BTreeSet<usize>,
    pub white: BTreeSet<usize>,
}

impl BwConfiguration {
    pub fn size(&self) -> usize {
        self.black.len() + self.white.len()
    }

    pub fn is_pebbled(&self, v: usize) -> bool {
        self.black.contains(&v) || self.white.contains(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BwMove {
    PlaceBlack(usize),
    RemoveBlack(usize),
    PlaceWhite(usize),
    RemoveWhite(usize),
}

impl BwMove {
    pub fn vertex(self) -> usize {
        match self {
            BwMove::PlaceBlack(v)
            | BwMove::RemoveBlack(v)
            | BwMove::PlaceWhite(v)
            | BwMove::RemoveWhite(v) => v,
        }
    }
}

/// A sequence of configurations `P_0, ..., P_τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwPebbling {
    pub steps: Vec<BwConfiguration>,
}

impl BwPebbling {
    /// Applies moves starting from the empty configuration. Fails only when
    /// a move cannot be applied mechanically (placing on an occupied vertex,
    /// removing a pebble that is not there); rule legality is left to
    /// [`validate_bw`].
    pub fn from_moves(moves: &[BwMove]) -> Result<BwPebbling, PebblingError> {
        let mut cur = BwConfiguration::default();
        let mut steps = vec![cur.clone()];
        for (i, &m) in moves.iter().enumerate() {
            let ok = match m {
                BwMove::PlaceBlack(v) => !cur.is_pebbled(v) && cur.black.insert(v),
                BwMove::RemoveBlack(v) => cur.black.remove(&v),
                BwMove::PlaceWhite(v) => !cur.is_pebbled(v) && cur.white.insert(v),
                BwMove::RemoveWhite(v) => cur.white.remove(&v),
            };
            if !ok {
                return Err(PebblingError::IllegalMove {
                    step: i + 1,
                    rule: "apply",
                    detail: format!("{m:?} does not fit the current configuration"),
                });
            }
            steps.push(cur.clone());
        }
        Ok(BwPebbling { steps })
    }

    /// Recovers the move of every transition; `None` if some transition
    /// does not change exactly one vertex.
    pub fn moves(&self) -> Option<Vec<BwMove>> {
        self.steps
            .windows(2)
            .map(|w| single_change(&w[0], &w[1]))
            .collect()
    }

    pub fn time(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn space(&self) -> usize {
        self.steps.iter().map(BwConfiguration::size).max().unwrap_or(0)
    }
}

fn single_change(a: &BwConfiguration, b: &BwConfiguration) -> Option<BwMove> {
    let mut changes = Vec::new();
    changes.extend(b.black.difference(&a.black).map(|&v| BwMove::PlaceBlack(v)));
    changes.extend(a.black.difference(&b.black).map(|&v| BwMove::RemoveBlack(v)));
    changes.extend(b.white.difference(&a.white).map(|&v| BwMove::PlaceWhite(v)));
    changes.extend(a.white.difference(&b.white).map(|&v| BwMove::RemoveWhite(v)));
    match changes.as_slice() {
        [m] => Some(*m),
        _ => None,
    }
}

/// Checks a complete black-white (or black-only) pebbling and returns its
/// time and space.
pub fn validate_bw(
    g: &Dag,
    p: &BwPebbling,
    black_only: bool,
) -> Result<PebblingCost, PebblingError> {
    for (t, conf) in p.steps.iter().enumerate() {
        if let Some(&v) = conf.black.iter().chain(conf.white.iter()).find(|&&v| v >= g.len()) {
            return Err(PebblingError::UnknownVertex { step: t, vertex: v });
        }
        if let Some(&v) = conf.black.intersection(&conf.white).next() {
            return Err(PebblingError::IllegalMove {
                step: t,
                rule: "configuration",
                detail: format!("vertex {} carries two pebbles", g.name(v)),
            });
        }
        if black_only && !conf.white.is_empty() {
            return Err(PebblingError::WhitePebbleInBlackOnly { step: t });
        }
    }
    let first = p.steps.first();
    if first != Some(&BwConfiguration::default()) {
        return Err(PebblingError::WrongEndpoints {
            detail: "a pebbling must start from the empty configuration".into(),
        });
    }
    let goal = BwConfiguration {
        black: BTreeSet::from([g.sink()]),
        white: BTreeSet::new(),
    };
    if p.steps.last() != Some(&goal) {
        return Err(PebblingError::WrongEndpoints {
            detail: format!("a complete pebbling ends with a black pebble on {} only", g.name(g.sink())),
        });
    }
    for (t, w) in p.steps.windows(2).enumerate() {
        let step = t + 1;
        let (prev, next) = (&w[0], &w[1]);
        let Some(m) = single_change(prev, next) else {
            return Err(PebblingError::IllegalMove {
                step,
                rule: "single move",
                detail: "each step must change exactly one vertex".into(),
            });
        };
        let preds_covered = |v: usize| g.preds(v).iter().all(|&u| prev.is_pebbled(u));
        match m {
            BwMove::PlaceBlack(v) if !preds_covered(v) => {
                return Err(PebblingError::IllegalMove {
                    step,
                    rule: "1 (black placement)",
                    detail: format!("a predecessor of {} is empty", g.name(v)),
                });
            }
            BwMove::RemoveWhite(v) if !preds_covered(v) => {
                return Err(PebblingError::IllegalMove {
                    step,
                    rule: "4 (white removal)",
                    detail: format!("a predecessor of {} is empty", g.name(v)),
                });
            }
            _ => {}
        }
    }
    Ok(PebblingCost {
        time: p.time(),
        space: p.space(),
    })
}

/// Pebbles every vertex by first pebbling its unpebbled predecessors
/// recursively (in canonical order), placing the pebble, and then removing
/// the pebbles this call placed on the predecessors.
pub fn greedy_black_strategy(g: &Dag) -> BwPebbling {
    let mut moves = Vec::new();
    let mut on = vec![false; g.len()];
    // Explicit stack of (vertex, next predecessor index, owned predecessors).
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(g.sink(), 0, Vec::new())];
    while let Some((v, i, owned)) = stack.last_mut() {
        let preds = g.preds(*v);
        if *i < preds.len() {
            let u = preds[*i];
            *i += 1;
            if !on[u] {
                owned.push(u);
                stack.push((u, 0, Vec::new()));
            }
            continue;
        }
        let (v, _, owned) = stack.pop().expect("non-empty stack");
        on[v] = true;
        moves.push(BwMove::PlaceBlack(v));
        for u in owned {
            on[u] = false;
            moves.push(BwMove::RemoveBlack(u));
        }
    }
    BwPebbling::from_moves(&moves).expect("greedy moves are applicable")
}
