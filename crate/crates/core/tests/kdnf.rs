use peblab::boolfunc::BooleanFunction;
use peblab::dag::build_path;
use peblab::formulas::{pebbling_contradiction, substitute};
use peblab::resolution::{check_kdnf_refutation, parse_proof_trace, write_kdnf_trace, ProofTrace, ResolutionError};

const TRACE: &str = include_str!("data/path2_xor2.kdnf");

fn target() -> peblab::CnfFormula {
    substitute(&pebbling_contradiction(&build_path(2)), &BooleanFunction::xor(2).unwrap()).unwrap()
}

fn parse(text: &str) -> peblab::resolution::KDnfRefutation {
    match parse_proof_trace(&target(), text).unwrap() {
        ProofTrace::KDnf(r) => r,
        ProofTrace::Resolution(_) => panic!("expected a k-DNF trace"),
    }
}

#[test]
fn handcrafted_refutation_is_accepted() {
    let r = parse(TRACE);
    let report = check_kdnf_refutation(&r).unwrap();
    assert_eq!(report.semantically_checked, report.measures.inferences);
    assert_eq!(report.measures.downloads, 8);
    let again = write_kdnf_trace(&r).unwrap();
    assert_eq!(parse(&again), r);
}

#[test]
fn one_dnf_header_rejects_conjunctions() {
    let r = parse(&TRACE.replace("kdnf 2", "kdnf 1"));
    assert!(matches!(check_kdnf_refutation(&r), Err(ResolutionError::IllegalStep { index: 6, .. })));
}

#[test]
fn three_literal_term_rejected() {
    // Keep everything up to step 21, then conjoin -v1#1 into (v2#1&v2#2).
    let head = TRACE.split("\ne 18\n").next().unwrap();
    let text = format!("{head}\nandi -v1#1 v1#2 (v2#1&v2#2) (-v1#1&v2#1&v2#2) <- 21 21\n");
    let r = parse(&text);
    let err = check_kdnf_refutation(&r).unwrap_err();
    assert!(matches!(err, ResolutionError::IllegalStep { index: 22, .. }), "{err}");
}
