//! Brute-force checks of the projection properties on sampled
//! configurations, and the space-respecting sweep.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ProjectedClauseSet, ProjectionError, Projector};
use crate::boolfunc::BooleanFunction;
use crate::formulas::{substitute_clause, Clause, Lit};
use crate::names::Var;
use crate::resolution::resolve;

const BASE_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

fn base_vars(count: usize) -> Vec<Var> {
    (0..count)
        .map(|i| match BASE_NAMES.get(i) {
            Some(n) => Var::new(n),
            None => Var::new(format!("x{i}")),
        })
        .collect()
}

fn random_clause(rng: &mut ChaCha8Rng, pool: &[Var], max_width: usize) -> Clause {
    let width = rng.gen_range(1..=max_width.min(pool.len()));
    Clause::new(
        pool.choose_multiple(rng, width)
            .map(|v| Lit { var: v.clone(), positive: rng.gen() }),
    )
    .expect("distinct variables")
}

/// Seeded random configurations: between 1 and `max_clauses` clauses of
/// width at most 3 over the blocks of `base` original variables.
pub fn random_configurations(
    seed: u64,
    count: usize,
    max_clauses: usize,
    base: usize,
    arity: usize,
) -> Vec<Vec<Clause>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Var> = base_vars(base)
        .iter()
        .flat_map(|x| (1..=arity).map(|i| x.block_member(i)))
        .collect();
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_clauses);
            let mut d: Vec<Clause> = (0..n).map(|_| random_clause(&mut rng, &pool, 3)).collect();
            d.sort();
            d.dedup();
            d
        })
        .collect()
}

/// A random clause `A` over the original variables `base` and one clause
/// of `A[f]`.
pub fn random_axiom_line(rng: &mut ChaCha8Rng, base: &[Var], f: &BooleanFunction) -> (Clause, Clause) {
    let a = random_clause(rng, base, 3);
    let lines = substitute_clause(&a, f);
    let l = lines.choose(rng).expect("A[f] is nonempty").clone();
    (a, l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub sample: usize,
    pub projection: &'static str,
    pub property: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomSuiteReport {
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<PropertyFailure>,
}

impl AxiomSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Both {
    global: ProjectedClauseSet,
    local: ProjectedClauseSet,
}

fn both<'a>(d: &[Clause], f: &'a BooleanFunction) -> Result<(Projector<'a>, Vec<bool>, Both), ProjectionError> {
    let p = Projector::new(d, f)?;
    let pts = p.points();
    let b = Both {
        global: ProjectedClauseSet::new(p.prime_clauses(&pts)),
        local: p.local_project()?,
    };
    Ok((p, pts, b))
}

/// Every clause over `vars`, the empty one included.
fn all_clauses(vars: &[Var]) -> Vec<Clause> {
    let mut out = vec![Clause::empty()];
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * 3);
        for c in &out {
            next.push(c.clone());
            next.push(c.with(Lit::pos(v.clone())).expect("fresh variable"));
            next.push(c.with(Lit::neg(v.clone())).expect("fresh variable"));
        }
        out = next;
    }
    out
}

struct Recorder<'r> {
    report: &'r mut AxiomSuiteReport,
    sample: usize,
}

impl Recorder<'_> {
    fn check(&mut self, ok: bool, projection: &'static str, property: &'static str, detail: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.report.failures.push(PropertyFailure {
                sample: self.sample,
                projection,
                property,
                detail: detail(),
            });
        }
    }
}

fn show(d: &[Clause]) -> String {
    d.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(" ")
}

/// Checks completeness, nontriviality, monotonicity and incremental
/// soundness of both the projection and its local version on every
/// sample, plus derived probes (`D ∪ {clause}`, `D ∪ {resolvent}`, and
/// `D ∪ {ℓ_A}` for a random axiom `A`) drawn from `seed`.
pub fn projection_axiom_suite(
    f: &BooleanFunction,
    samples: &[Vec<Clause>],
    seed: u64,
) -> Result<AxiomSuiteReport, ProjectionError> {
    let mut report = AxiomSuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, _, empty) = both(&[], f)?;
    let mut rec = Recorder {
        report: &mut report,
        sample: 0,
    };
    rec.check(empty.global.is_empty(), "global", "nontrivial", || format!("{:?}", empty.global));
    rec.check(empty.local.is_empty(), "local", "nontrivial", || format!("{:?}", empty.local));
    for (i, d) in samples.iter().enumerate() {
        let mut rec = Recorder {
            report: &mut report,
            sample: i,
        };
        let (p, pts, proj) = both(d, f)?;
        for c in all_clauses(&p.base) {
            if p.implies(&pts, &c) {
                for (name, set) in [("global", &proj.global), ("local", &proj.local)] {
                    rec.check(set.derives_by_weakening(&c), name, "complete", || {
                        format!("D = {} implies `{c}`", show(d))
                    });
                }
            }
        }
        for c in proj.global.clauses() {
            rec.check(proj.local.derives_by_weakening(c), "local", "contains global", || {
                format!("D = {}, `{c}`", show(d))
            });
        }

        // Supersets of D imply D.
        let base = if p.base.is_empty() { base_vars(1) } else { p.base.clone() };
        let pool: Vec<Var> = base
            .iter()
            .flat_map(|x| (1..=f.arity()).map(|k| x.block_member(k)))
            .collect();
        let mut bigger = vec![d.clone()];
        let extra = random_clause(&mut rng, &pool, 3);
        bigger.push(d.iter().cloned().chain([extra]).collect());
        let resolvent = d.iter().enumerate().find_map(|(a, c1)| {
            d[a + 1..].iter().find_map(|c2| {
                c1.lits()
                    .iter()
                    .find(|l| c2.contains(&l.negated()))
                    .and_then(|l| {
                        let (x, y) = if l.positive { (c1, c2) } else { (c2, c1) };
                        resolve(x, y, &l.var).ok()
                    })
            })
        });
        if let Some(r) = resolvent {
            bigger.push(d.iter().cloned().chain([r]).collect());
        }
        for d2 in &bigger[1..] {
            if d2.len() > super::MAX_LOCAL_CLAUSES {
                continue;
            }
            let (_, _, proj2) = both(d2, f)?;
            for (name, small, large) in [
                ("global", &proj.global, &proj2.global),
                ("local", &proj.local, &proj2.local),
            ] {
                for c in small.clauses() {
                    rec.check(large.derives_by_weakening(c), name, "monotone", || {
                        format!("`{c}` from D = {} lost in D' = {}", show(d), show(d2))
                    });
                }
            }
        }

        let (a, line) = random_axiom_line(&mut rng, &base, f);
        let grown: Vec<Clause> = d.iter().cloned().chain([line.clone()]).collect();
        if grown.len() <= super::MAX_LOCAL_CLAUSES {
            let (_, _, after) = both(&grown, f)?;
            for (name, before, after) in [
                ("global", &proj.global, &after.global),
                ("local", &proj.local, &after.local),
            ] {
                for c in after.clauses() {
                    for lit in a.lits().iter().filter(|l| !c.contains(l)) {
                        let ok = match c.with(lit.negated()) {
                            Ok(side) => before.derives_by_weakening(&side),
                            Err(_) => false,
                        };
                        rec.check(ok, name, "incrementally sound", || {
                            format!("D = {}, A = `{a}`, line `{line}`, C = `{c}`, a = {lit}", show(d))
                        });
                    }
                }
            }
        }
    }
    report.samples = samples.len();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceRow {
    pub id: usize,
    pub clauses: usize,
    pub projected_vars: usize,
    #[serde(serialize_with = "yes_no")]
    pub within_bound: bool,
    #[serde(skip)]
    pub configuration: Vec<String>,
    #[serde(skip)]
    pub projection: Vec<String>,
}

fn yes_no<S: serde::Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(if *b { "yes" } else { "no" })
}

#[derive(Serialize)]
struct Witness<'a> {
    id: usize,
    clauses: usize,
    projected_vars: usize,
    configuration: &'a [String],
    projection: &'a [String],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceReport {
    /// Whether `f` is 1-nonauthoritarian, the hypothesis under which the
    /// bound `|Vars(proj^L(D))| ≤ |D|` is asserted.
    pub asserted: bool,
    pub rows: Vec<SpaceRow>,
    /// Largest `|Vars(proj^L(D))| / |D|` over nonempty samples.
    pub max_ratio: f64,
}

impl SpaceReport {
    pub fn violations(&self) -> impl Iterator<Item = &SpaceRow> {
        self.rows.iter().filter(|r| !r.within_bound)
    }

    /// False only if the bound is asserted and some sample breaks it.
    pub fn holds(&self) -> bool {
        !self.asserted || self.violations().next().is_none()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("in-memory writer");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    /// One JSON object per violating sample.
    pub fn witness_log(&self) -> String {
        self.violations()
            .map(|r| {
                let w = Witness {
                    id: r.id,
                    clauses: r.clauses,
                    projected_vars: r.projected_vars,
                    configuration: &r.configuration,
                    projection: &r.projection,
                };
                serde_json::to_string(&w).expect("plain data") + "\n"
            })
            .collect()
    }
}

/// Compares `|Vars(proj^L(D))|` with `|D|` on every sample.
pub fn space_respecting_check(
    f: &BooleanFunction,
    samples: &[Vec<Clause>],
) -> Result<SpaceReport, ProjectionError> {
    let mut rows = Vec::with_capacity(samples.len());
    let mut max_ratio: f64 = 0.0;
    for (id, d) in samples.iter().enumerate() {
        let local = Projector::new(d, f)?.local_project()?;
        let vars = local.vars().len();
        if !d.is_empty() {
            max_ratio = max_ratio.max(vars as f64 / d.len() as f64);
        }
        rows.push(SpaceRow {
            id,
            clauses: d.len(),
            projected_vars: vars,
            within_bound: vars <= d.len(),
            configuration: d.iter().map(ToString::to_string).collect(),
            projection: local.clauses().iter().map(ToString::to_string).collect(),
        });
    }
    Ok(SpaceReport {
        asserted: f.is_k_nonauthoritarian(1),
        rows,
        max_ratio,
    })
}
