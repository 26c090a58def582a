//! Pebble games on DAGs: black-white, labelled and blob variants, exact
//! price search, and line-oriented traces.

mod blob;
mod bw;
mod labelled;
mod search;
mod trace;

use thiserror::Error;

pub use blob::{
    blob_configuration_space, validate_blob, BlobConfiguration, BlobPebbling, BlobSpace, BlobSub,
    DEFAULT_BLOB_BUDGET,
};
pub use bw::{greedy_black_strategy, validate_bw, BwConfiguration, BwMove, BwPebbling};
pub use labelled::{
    check_bounded_space_consequence, configuration_space, from_black_pebbling, validate_labelled,
    BoundedSpaceReport, LabelledConfiguration, LabelledCost, LabelledPebbling, SubConfig,
};
pub use search::{optimal_black_price, optimal_bw_price, PriceResult, MAX_SEARCH_VERTICES};
pub use trace::{
    parse_pebbling_trace, write_blob_trace, write_bw_trace, write_labelled_trace, PebblingTrace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PebblingError {
    #[error("step {step}: illegal move under rule {rule}: {detail}")]
    IllegalMove {
        step: usize,
        rule: &'static str,
        detail: String,
    },
    #[error("wrong endpoints: {detail}")]
    WrongEndpoints { detail: String },
    #[error("step {step}: white pebble in a black-only pebbling")]
    WhitePebbleInBlackOnly { step: usize },
    #[error("step {step}: vertex index {vertex} is not in the graph")]
    UnknownVertex { step: usize, vertex: usize },
    #[error("search budget exceeded after {visited} states")]
    BudgetExceeded { visited: u64 },
    #[error("{vertices} exceeds the exhaustive-search limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("trace line {line}: {msg}")]
    Trace { line: usize, msg: String },
}

/// Time (number of transitions) and space of a pebbling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PebblingCost {
    pub time: usize,
    pub space: usize,
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::dag::{build_binary_tree, build_path, build_pyramid, parse_dag, Dag};
    use crate::DEFAULT_BUDGET;

    fn id(g: &Dag, name: &str) -> usize {
        g.vertex(name).unwrap()
    }

    #[test]
    fn single_vertex_pebbling() {
        let g = build_path(1);
        let p = BwPebbling::from_moves(&[BwMove::PlaceBlack(0)]).unwrap();
        assert_eq!(validate_bw(&g, &p, true).unwrap(), PebblingCost { time: 1, space: 1 });
        assert_eq!(greedy_black_strategy(&g), p);
    }

    #[test]
    fn black_placement_needs_predecessors() {
        let g = build_pyramid(2);
        let p = BwPebbling::from_moves(&[
            BwMove::PlaceBlack(id(&g, "v")),
            BwMove::PlaceBlack(id(&g, "x")),
        ])
        .unwrap();
        // End at the goal so the endpoint check passes and step 2 is examined.
        let mut steps = p.steps.clone();
        steps.push(BwConfiguration {
            black: BTreeSet::from([id(&g, "z")]),
            white: BTreeSet::new(),
        });
        let err = validate_bw(&g, &BwPebbling { steps }, true).unwrap_err();
        assert!(matches!(err, PebblingError::IllegalMove { step: 2, rule, .. } if rule.starts_with('1')), "{err}");
    }

    #[test]
    fn greedy_costs() {
        for n in 1..=10 {
            let g = build_path(n);
            let c = validate_bw(&g, &greedy_black_strategy(&g), true).unwrap();
            assert_eq!(c.time, 2 * n - 1);
            assert_eq!(c.space, n.min(2));
        }
        let g = build_pyramid(2);
        let c = validate_bw(&g, &greedy_black_strategy(&g), true).unwrap();
        assert_eq!(c.space, 4);
    }

    #[test]
    fn white_pebbles_rejected_in_black_only_mode() {
        let g = build_path(2);
        let p = BwPebbling::from_moves(&[
            BwMove::PlaceWhite(0),
            BwMove::PlaceBlack(1),
            BwMove::RemoveWhite(0),
        ])
        .unwrap();
        assert_eq!(validate_bw(&g, &p, false).unwrap(), PebblingCost { time: 3, space: 2 });
        assert_eq!(
            validate_bw(&g, &p, true).unwrap_err(),
            PebblingError::WhitePebbleInBlackOnly { step: 1 }
        );
    }

    #[test]
    fn prices_of_small_graphs() {
        assert_eq!(optimal_black_price(&build_path(1), DEFAULT_BUDGET).unwrap().price, 1);
        assert_eq!(optimal_black_price(&build_path(3), DEFAULT_BUDGET).unwrap().price, 2);
        assert_eq!(optimal_black_price(&build_pyramid(2), DEFAULT_BUDGET).unwrap().price, 4);
        // Binary tree of height h has black price h + 2.
        assert_eq!(optimal_black_price(&build_binary_tree(2), DEFAULT_BUDGET).unwrap().price, 4);
        let bw = optimal_bw_price(&build_pyramid(2), DEFAULT_BUDGET).unwrap();
        assert!(bw.price <= 4);
        let g = build_pyramid(2);
        assert_eq!(validate_bw(&g, &bw.witness, false).unwrap().space, bw.price);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            optimal_black_price(&build_pyramid(3), 5),
            Err(PebblingError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn labelled_single_edge() {
        let g = parse_dag("v a\nv z\ne a z").unwrap();
        let text = "labelled\nI z\nI a\nM 0 1\nE 0\nE 1\n";
        let PebblingTrace::Labelled(p) = parse_pebbling_trace(&g, text).unwrap() else {
            panic!("wrong variant")
        };
        let c = validate_labelled(&g, &p).unwrap();
        assert_eq!((c.time, c.space, c.max_subconfigs, c.max_support), (5, 2, 3, 1));
        assert_eq!(write_labelled_trace(&g, &p).unwrap(), text);
        // Merging on a vertex outside the support.
        let bad = "labelled\nI z\nI a\nM 1 0\nE 0\nE 1\n";
        assert!(matches!(
            parse_pebbling_trace(&g, bad),
            Err(PebblingError::IllegalMove { step: 3, .. })
        ));
        // The same mistake in configuration form is caught by the validator.
        let mut steps = p.steps.clone();
        steps[3] = steps[2].clone();
        steps[3].insert(SubConfig::new(id(&g, "a"), [id(&g, "z")]));
        assert!(matches!(
            validate_labelled(&g, &LabelledPebbling { steps }),
            Err(PebblingError::IllegalMove { step: 3, .. })
        ));
    }

    #[test]
    fn black_pebbling_as_labelled() {
        for g in [build_path(3), build_pyramid(2), build_binary_tree(2)] {
            let p = greedy_black_strategy(&g);
            let s = validate_bw(&g, &p, true).unwrap().space;
            let l = from_black_pebbling(&g, &p).unwrap();
            let c = validate_labelled(&g, &l).unwrap();
            assert!(c.max_subconfigs <= s + 1);
            assert!(c.max_support <= g.max_indegree());
            let r = check_bounded_space_consequence(&g, &l, DEFAULT_BUDGET).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        let g = build_path(3);
        let c = validate_labelled(&g, &from_black_pebbling(&g, &greedy_black_strategy(&g)).unwrap()).unwrap();
        assert_eq!((c.max_subconfigs, c.max_support), (3, 1));
    }

    #[test]
    fn blob_space_examples() {
        let g = build_pyramid(2);
        let below = g.reachability();
        let set = |names: &[&str]| names.iter().map(|n| id(&g, n)).collect::<Vec<_>>();
        let conf = BlobConfiguration::from([BlobSub::new(set(&["y", "z"]), set(&["v", "w"]))]);
        let s = blob_configuration_space(&g, &conf, &below, DEFAULT_BLOB_BUDGET).unwrap();
        assert_eq!((s.black_cost, s.white_cost), (1, 2));
        let conf = BlobConfiguration::from([
            BlobSub::new(set(&["x"]), []),
            BlobSub::new(set(&["x", "y"]), []),
        ]);
        let s = blob_configuration_space(&g, &conf, &below, DEFAULT_BLOB_BUDGET).unwrap();
        assert_eq!(s.total(), 2);
        // u is below x but not below y, so it is not chargeable for {x, y}.
        let conf = BlobConfiguration::from([BlobSub::new(set(&["x", "y"]), set(&["u", "v"]))]);
        let s = blob_configuration_space(&g, &conf, &below, DEFAULT_BLOB_BUDGET).unwrap();
        assert_eq!(s.white_cost, 1);
    }

    #[test]
    fn blob_pebbling_of_an_edge() {
        let g = parse_dag("v a\nv z\ne a z").unwrap();
        let text = "blob\nI z\nI a\nM 0 1 a\nE 0\nE 1\n";
        let PebblingTrace::Blob(p) = parse_pebbling_trace(&g, text).unwrap() else {
            panic!("wrong variant")
        };
        let c = validate_blob(&g, &p, DEFAULT_BLOB_BUDGET).unwrap();
        assert_eq!(c, PebblingCost { time: 5, space: 3 });
        assert_eq!(write_blob_trace(&g, &p).unwrap(), text);
        let inflated = "blob\nI a\nX 0 z /\nE 0\nI z\nE 1\n";
        let PebblingTrace::Blob(p) = parse_pebbling_trace(&g, inflated).unwrap() else {
            panic!("wrong variant")
        };
        // [a,z]<> is an inflation; the final [z]<a> is not the goal.
        assert!(matches!(
            validate_blob(&g, &p, DEFAULT_BLOB_BUDGET),
            Err(PebblingError::WrongEndpoints { .. })
        ));
    }

    #[test]
    fn bw_trace_round_trip() {
        let g = build_pyramid(2);
        let p = greedy_black_strategy(&g);
        let text = write_bw_trace(&g, &p, true).unwrap();
        assert!(text.starts_with("black\nB+ u\nB+ v\nB+ x\n"));
        assert_eq!(
            parse_pebbling_trace(&g, &text).unwrap(),
            PebblingTrace::Bw {
                black_only: true,
                pebbling: p
            }
        );
    }
}
