//! Exact pebbling prices by exhaustive search.
//!
//! For each space bound `s = 1, 2, ...` a breadth-first search explores all
//! configurations with at most `s` pebbles. Moves are generated in a fixed
//! order (black removals, white removals, black placements, white
//! placements, each in canonical vertex order), so both the price and the
//! witness pebbling are reproducible.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use super::bw::{BwMove, BwPebbling};
use super::PebblingError;
use crate::dag::Dag;

pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Clone, Debug)]
pub struct PriceResult {
    pub price: usize,
    /// A complete pebbling of space `price`, shortest among those.
    pub witness: BwPebbling,
    pub visited: u64,
}

type State = (u64, u64);

pub fn optimal_black_price(g: &Dag, budget: u64) -> Result<PriceResult, PebblingError> {
    search(g, budget, false)
}

pub fn optimal_bw_price(g: &Dag, budget: u64) -> Result<PriceResult, PebblingError> {
    search(g, budget, true)
}

fn search(g: &Dag, budget: u64, allow_white: bool) -> Result<PriceResult, PebblingError> {
    let n = g.len();
    if n > MAX_SEARCH_VERTICES {
        return Err(PebblingError::TooLarge {
            vertices: n,
            limit: MAX_SEARCH_VERTICES,
        });
    }
    let pred_mask: Vec<u64> = (0..n)
        .map(|v| g.preds(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect();
    let goal: State = (1 << g.sink(), 0);
    let mut visited = 0u64;
    for s in 1..=n {
        let mut parent: HashMap<State, (State, BwMove)> = HashMap::new();
        let mut queue = VecDeque::from([(0u64, 0u64)]);
        let start = (0u64, 0u64);
        let mut found = start == goal;
        while let Some(state) = queue.pop_front() {
            if found {
                break;
            }
            visited += 1;
            if visited > budget {
                return Err(PebblingError::BudgetExceeded { visited });
            }
            for (next, m) in successors(state, n, &pred_mask, s, allow_white) {
                if next == start {
                    continue;
                }
                if let Entry::Vacant(e) = parent.entry(next) {
                    e.insert((state, m));
                    if next == goal {
                        found = true;
                        break;
                    }
                    queue.push_back(next);
                }
            }
        }
        if found {
            let mut moves = Vec::new();
            let mut cur = goal;
            while cur != start {
                let (prev, m) = parent[&cur];
                moves.push(m);
                cur = prev;
            }
            moves.reverse();
            let witness = BwPebbling::from_moves(&moves).expect("search moves are applicable");
            return Ok(PriceResult {
                price: s,
                witness,
                visited,
            });
        }
    }
    unreachable!("pebbling every vertex in topological order uses at most n pebbles")
}

fn successors(
    (black, white): State,
    n: usize,
    pred_mask: &[u64],
    space: usize,
    allow_white: bool,
) -> Vec<(State, BwMove)> {
    let pebbled = black | white;
    let room = (pebbled.count_ones() as usize) < space;
    let mut out = Vec::new();
    for v in 0..n {
        if black >> v & 1 == 1 {
            out.push(((black & !(1 << v), white), BwMove::RemoveBlack(v)));
        }
    }
    for v in 0..n {
        if white >> v & 1 == 1 && pred_mask[v] & !pebbled == 0 {
            out.push(((black, white & !(1 << v)), BwMove::RemoveWhite(v)));
        }
    }
    if room {
        for v in 0..n {
            if pebbled >> v & 1 == 0 && pred_mask[v] & !pebbled == 0 {
                out.push(((black | 1 << v, white), BwMove::PlaceBlack(v)));
            }
        }
        if allow_white {
            for v in 0..n {
                if pebbled >> v & 1 == 0 {
                    out.push(((black, white | 1 << v), BwMove::PlaceWhite(v)));
                }
            }
        }
    }
    out
}
