//! Resolution and k-DNF resolution refutations in configuration style: a
//! checker computing every cost measure, proof traces, and builders that
//! turn pebblings and refutations of unsubstituted formulas into
//! refutations.

mod builders;
mod checker;
mod kdnf;
mod lift;
mod oracles;
mod proof;
mod saturate;
mod semantic;
mod trace;

use thiserror::Error;

use crate::formulas::FormulaError;
use crate::names::Var;

pub use builders::{
    constant_space_refutation, pebbling_to_refutation, CompiledRefutation, SimulationConstants,
    Substitution,
};
pub use checker::{check_refutation, measures_of_configurations, replay_configurations, Measures};
pub use kdnf::{check_kdnf_refutation, KDnfLine, KDnfRefutation, KDnfReport, KDnfStep, KRule, Term};
pub use lift::{lift_refutation, LiftedRefutation};
pub use oracles::{min_clause_space, min_width, Bounded};
pub use proof::{resolve, ProofBuilder, ProofStep, Refutation, Rule};
pub use saturate::{
    saturate, saturate_masks, splice, ClauseSaturation, Node, Origin, Saturation,
    SaturationLimits, SpliceCost, DEFAULT_SATURATION_BUDGET, DEFAULT_VARIABLE_CAP,
};
pub use semantic::{clauses_imply, SEMANTIC_VAR_LIMIT};
pub use trace::{parse_proof_trace, write_kdnf_trace, write_proof_trace, ProofTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("pivot `{0}` does not occur with opposite signs in the premises")]
    PivotAbsent(Var),
    #[error("resolving on `{0}` gives a trivial clause")]
    TrivialResolvent(Var),
    #[error("step {index}: {reason}")]
    IllegalStep { index: usize, reason: String },
    #[error("the final configuration does not contain the empty clause")]
    MissingBottom,
    #[error("bad line: {0}")]
    BadLine(String),
    #[error("proof trace line {line}: {msg}")]
    Trace { line: usize, msg: String },
    #[error("incomplete pebbling: {0}")]
    IncompletePebbling(String),
    #[error("saturation failed: {0}")]
    SaturationFailure(String),
    #[error("budget exceeded after {generated} items")]
    BudgetExceeded { generated: u64 },
    #[error("{vars} variables exceed the cap of {cap}")]
    TooManyVariables { vars: usize, cap: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfunc::BooleanFunction;
    use crate::dag::{build_path, build_pyramid};
    use crate::formulas::{clause, pebbling_contradiction, CnfFormula};
    use crate::pebbling::greedy_black_strategy;

    fn cnf(cls: &[&str]) -> CnfFormula {
        cls.iter().map(|s| clause(s)).collect()
    }

    fn x_not_x() -> Refutation {
        Refutation {
            target: cnf(&["x", "-x"]),
            steps: vec![
                ProofStep::Download(clause("x")),
                ProofStep::Download(clause("-x")),
                ProofStep::Infer {
                    result: clause("[]"),
                    premises: vec![clause("x"), clause("-x")],
                    rule: Rule::Resolution { pivot: Var::new("x") },
                },
            ],
        }
    }

    #[test]
    fn resolution_rule() {
        assert_eq!(resolve(&clause("x"), &clause("-x y"), &Var::new("x")).unwrap(), clause("y"));
        assert_eq!(
            resolve(&clause("-u -v x"), &clause("-x -y z"), &Var::new("x")).unwrap(),
            clause("-u -v -y z")
        );
        assert_eq!(
            resolve(&clause("x y"), &clause("-x -y"), &Var::new("x")),
            Err(ResolutionError::TrivialResolvent(Var::new("x")))
        );
        assert!(matches!(
            resolve(&clause("y"), &clause("-x"), &Var::new("x")),
            Err(ResolutionError::PivotAbsent(_))
        ));
    }

    #[test]
    fn smallest_refutation() {
        let m = check_refutation(&x_not_x()).unwrap();
        assert_eq!((m.length, m.width, m.clause_space), (3, 1, 3));
        assert_eq!(m.variable_space, 1);
        assert_eq!(m.total_space, 2);
    }

    #[test]
    fn checker_rejects_bad_steps() {
        let mut r = x_not_x();
        r.steps[2] = ProofStep::Infer {
            result: clause("[]"),
            premises: vec![clause("x"), clause("-x")],
            rule: Rule::Resolution { pivot: Var::new("y") },
        };
        assert!(matches!(check_refutation(&r), Err(ResolutionError::IllegalStep { index: 3, .. })));
        let mut r = x_not_x();
        r.steps.truncate(2);
        assert_eq!(check_refutation(&r), Err(ResolutionError::MissingBottom));
        let mut r = x_not_x();
        r.steps[0] = ProofStep::Download(clause("y"));
        assert!(matches!(check_refutation(&r), Err(ResolutionError::IllegalStep { index: 1, .. })));
    }

    #[test]
    fn trace_round_trip() {
        let r = constant_space_refutation(&build_pyramid(2));
        let text = write_proof_trace(&r).unwrap();
        let ProofTrace::Resolution(back) = parse_proof_trace(&r.target, &text).unwrap() else {
            panic!("wrong system")
        };
        assert_eq!(back, r);
        assert_eq!(write_proof_trace(&back).unwrap(), text);
        let text = "d x\nd -x\nr [] <- 1 2 pivot x\n";
        assert_eq!(write_proof_trace(&x_not_x()).unwrap(), text);
    }

    #[test]
    fn constant_space_examples() {
        let g = build_path(1);
        let r = constant_space_refutation(&g);
        assert_eq!(r.steps.len(), 3 + 2);
        assert_eq!(check_refutation(&r).unwrap().length, 3);
        let m = check_refutation(&constant_space_refutation(&build_path(3))).unwrap();
        assert_eq!((m.clause_space, m.length), (3, 7));
        let m = check_refutation(&constant_space_refutation(&build_pyramid(2))).unwrap();
        assert!(m.clause_space <= 3 && m.width <= 3, "{m:?}");
    }

    #[test]
    fn measures_match_replay() {
        let r = constant_space_refutation(&build_pyramid(3));
        let m = check_refutation(&r).unwrap();
        let replayed = measures_of_configurations(&replay_configurations(&r));
        assert_eq!(
            (m.width, m.clause_space, m.variable_space, m.total_space),
            (replayed.width, replayed.clause_space, replayed.variable_space, replayed.total_space)
        );
    }

    #[test]
    fn saturation_examples() {
        let s = saturate(&[clause("x"), clause("-x y")], DEFAULT_VARIABLE_CAP).unwrap();
        assert!(s.implies(&clause("y")));
        let s = saturate(
            &[clause("x1 x2"), clause("-x1 y1 y2"), clause("-x2 y1 y2")],
            DEFAULT_VARIABLE_CAP,
        )
        .unwrap();
        assert!(s.derived(&clause("y1 y2")));
        assert!(s.closure().contains(&clause("y1 y2")));
    }

    #[test]
    fn compiled_refutations() {
        let g = build_pyramid(2);
        let p = greedy_black_strategy(&g);
        let cost = crate::pebbling::validate_bw(&g, &p, true).unwrap();
        let c = pebbling_to_refutation(&g, &p, &Substitution::Identity).unwrap();
        let m = check_refutation(&c.refutation).unwrap();
        assert!(m.length <= 3 * cost.time, "{m:?} {cost:?}");
        assert!(m.clause_space <= cost.space + 2, "{m:?} {cost:?}");
        let xor = Substitution::Function(BooleanFunction::xor(2).unwrap());
        let c = pebbling_to_refutation(&g, &p, &xor).unwrap();
        assert_eq!(c.refutation.target.len(), 32);
        let m = check_refutation(&c.refutation).unwrap();
        assert!(m.length <= cost.time * c.constants.length_factor());
        assert!(m.clause_space <= cost.space * c.constants.space_factor());
        let single = build_path(1);
        let c = pebbling_to_refutation(&single, &greedy_black_strategy(&single), &Substitution::Identity)
            .unwrap();
        let m = check_refutation(&c.refutation).unwrap();
        assert_eq!((m.length, m.clause_space), (3, 3));
    }

    #[test]
    fn lifting() {
        let or2 = BooleanFunction::or(2).unwrap();
        let l = lift_refutation(&x_not_x(), &or2).unwrap();
        assert_eq!(l.refutation.target, cnf(&["x#1 x#2", "-x#1", "-x#2"]));
        let xor = BooleanFunction::xor(2).unwrap();
        let r = constant_space_refutation(&build_pyramid(2));
        let l = lift_refutation(&r, &xor).unwrap();
        // Resolving on x inside `(¬u ∨ ¬v ∨ x)[⊕]` and `(¬x ∨ ¬v ∨ ¬w)[⊕]`
        // needs one leftover literal of the x block next to a full-width
        // resolvent, so d·w is exceeded by exactly one here.
        assert_eq!(l.output.width, 2 * l.input.width + 1, "{:?}", l.output);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(min_width(&cnf(&["x", "-x"]), 5).unwrap(), Bounded::Exact(1));
        assert_eq!(min_clause_space(&cnf(&["x", "-x"]), 5, 1_000_000).unwrap(), Bounded::Exact(3));
        let peb = pebbling_contradiction(&build_pyramid(2));
        assert!(min_width(&peb, 5).unwrap().exact().unwrap() <= 3);
        let path = pebbling_contradiction(&build_path(3));
        assert!(min_clause_space(&path, 5, 1_000_000).unwrap().exact().unwrap() <= 3);
        let sat = cnf(&["x y", "-x"]);
        assert_eq!(min_width(&sat, 4).unwrap(), Bounded::AboveCap(4));
        assert_eq!(min_clause_space(&sat, 3, 1_000_000).unwrap(), Bounded::AboveCap(3));
    }

    #[test]
    fn kdnf_lines_parse_and_print() {
        let l: KDnfLine = "(a&-b) c".parse().unwrap();
        assert_eq!(l.to_string(), "(a&-b) c");
        assert_eq!(l.terms().len(), 2);
        assert!("(a&-a)".parse::<KDnfLine>().is_err());
        assert_eq!("[]".parse::<KDnfLine>().unwrap(), KDnfLine::default());
    }
}
