use proptest::prelude::*;

use peblab::boolfunc::BooleanFunction;
use peblab::dag::Dag;
use peblab::formulas::{
    brute_force_sat, clause, literal_clauses, pebbling_contradiction, sink_axiom, Clause, CnfFormula,
};
use peblab::pebbling::{greedy_black_strategy, optimal_black_price, optimal_bw_price, validate_bw};
use peblab::projections::{local_project, project, projection_axiom_suite, random_configurations};
use peblab::resolution::{
    check_refutation, clauses_imply, constant_space_refutation, measures_of_configurations,
    parse_proof_trace, pebbling_to_refutation, replay_configurations, write_proof_trace, ProofStep,
    ProofTrace, Refutation, Substitution,
};

/// A chain `v0 -> v1 -> ... -> v(n-1)` with optional extra edges from
/// earlier vertices, so the last vertex is the only sink and indegree is at
/// most 2.
fn dag() -> impl Strategy<Value = Dag> {
    (2usize..8)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<prop::sample::Index>(), n)))
        .prop_map(|(n, extra)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 1..n {
                edges.push((names[i - 1].clone(), names[i].clone()));
                if i >= 2 {
                    let j = extra[i].index(i);
                    if j < i - 1 {
                        edges.push((names[j].clone(), names[i].clone()));
                    }
                }
            }
            Dag::from_edges(&names, &edges).unwrap()
        })
}

fn function() -> impl Strategy<Value = Substitution> {
    prop_oneof![
        Just(Substitution::Identity),
        Just(Substitution::Function(BooleanFunction::or(2).unwrap())),
        Just(Substitution::Function(BooleanFunction::xor(2).unwrap())),
    ]
}

/// Every inference follows semantically from its premises.
fn sound(r: &Refutation) -> bool {
    r.steps.iter().all(|s| match s {
        ProofStep::Infer { result, premises, .. } => {
            let ps: Vec<&Clause> = premises.iter().collect();
            clauses_imply(&ps, result).unwrap_or(true)
        }
        _ => true,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_refutations_are_accepted(g in dag(), s in function()) {
        let p = greedy_black_strategy(&g);
        let cost = validate_bw(&g, &p, true).unwrap();
        let c = pebbling_to_refutation(&g, &p, &s).unwrap();
        let m = check_refutation(&c.refutation).unwrap();
        prop_assert!(m.length <= cost.time * c.constants.length_factor());
        prop_assert!(m.clause_space <= cost.space * c.constants.space_factor());
        prop_assert!(sound(&c.refutation));
    }

    #[test]
    fn constant_space_is_constant(g in dag()) {
        let r = constant_space_refutation(&g);
        let m = check_refutation(&r).unwrap();
        prop_assert!(m.clause_space <= 3);
        prop_assert!(sound(&r));
    }

    #[test]
    fn replay_agrees_with_checker(g in dag(), s in function()) {
        let c = pebbling_to_refutation(&g, &greedy_black_strategy(&g), &s).unwrap();
        let m = check_refutation(&c.refutation).unwrap();
        let r = measures_of_configurations(&replay_configurations(&c.refutation));
        prop_assert_eq!(
            (m.width, m.clause_space, m.variable_space, m.total_space),
            (r.width, r.clause_space, r.variable_space, r.total_space)
        );
    }

    #[test]
    fn proof_traces_round_trip(g in dag(), s in function()) {
        let c = pebbling_to_refutation(&g, &greedy_black_strategy(&g), &s).unwrap();
        let text = write_proof_trace(&c.refutation).unwrap();
        match parse_proof_trace(&c.refutation.target, &text).unwrap() {
            ProofTrace::Resolution(back) => prop_assert_eq!(back, c.refutation),
            ProofTrace::KDnf(_) => prop_assert!(false, "wrong system"),
        }
    }

    #[test]
    fn white_pebbles_never_hurt(g in dag()) {
        let b = optimal_black_price(&g, 1_000_000).unwrap();
        let bw = optimal_bw_price(&g, 1_000_000).unwrap();
        prop_assert!(bw.price <= b.price);
        prop_assert!(b.price <= greedy_black_strategy(&g).space());
        prop_assert_eq!(validate_bw(&g, &b.witness, true).unwrap().space, b.price);
    }

    #[test]
    fn substitution_preserves_unsatisfiability(g in dag(), s in function()) {
        let peb = pebbling_contradiction(&g);
        prop_assert!(brute_force_sat(&peb).unwrap().is_none());
        let f = s.formula(&peb);
        prop_assert!(brute_force_sat(&f).unwrap().is_none());
        let sink = s.clause(&sink_axiom(&g));
        let without_sink: CnfFormula = f.iter().filter(|c| !sink.contains(c)).cloned().collect();
        prop_assert!(brute_force_sat(&without_sink).unwrap().is_some());
    }

    #[test]
    fn projection_properties(seed in any::<u64>()) {
        let f = BooleanFunction::xor(2).unwrap();
        let samples = random_configurations(seed, 4, 6, 3, 2);
        let r = projection_axiom_suite(&f, &samples, seed).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
        for d in &samples {
            let g = project(d, &f).unwrap();
            let l = local_project(d, &f).unwrap();
            prop_assert!(g.clauses().iter().all(|c| l.derives_by_weakening(c)));
        }
    }

    #[test]
    fn projection_under_substitution_of_unit(seed in any::<u64>()) {
        // D = x[f] projects to exactly {x} for every non-constant f of arity 2.
        let table: Vec<bool> = (0..4).map(|i| seed >> i & 1 == 1).collect();
        prop_assume!(table.iter().any(|&b| b) && !table.iter().all(|&b| b));
        let f = BooleanFunction::from_table(2, table).unwrap();
        let d = literal_clauses(&clause("x").lits()[0], &f);
        let p = project(&d, &f).unwrap();
        prop_assert_eq!(p.clauses().iter().cloned().collect::<Vec<_>>(), vec![clause("x")]);
    }
}
