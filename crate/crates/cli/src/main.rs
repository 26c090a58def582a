mod bench;
mod specs;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use peblab::formulas::{from_dimacs, pebbling_contradiction, to_dimacs, Clause, CnfFormula};
use peblab::pebbling::{
    greedy_black_strategy, optimal_black_price, optimal_bw_price, parse_pebbling_trace,
    validate_blob, validate_bw, validate_labelled, write_bw_trace, BwPebbling, PebblingTrace,
};
use peblab::projections::{
    extract_refutation, local_project, project, projection_axiom_suite, random_configurations,
    space_respecting_check,
};
use peblab::resolution::{
    check_kdnf_refutation, check_refutation, constant_space_refutation, lift_refutation,
    min_clause_space, min_width, parse_proof_trace, pebbling_to_refutation, write_proof_trace,
    Measures, ProofTrace, Refutation, Substitution,
};
use peblab::{BooleanFunction, DEFAULT_BUDGET};

use bench::{append_manifest, read_manifest, run_entry, BenchRow, ManifestEntry};
use specs::{emit, graph, graphs, read, slug, write_atomic, NamedGraph};

#[derive(Parser)]
#[command(name = "peblab", version, about = "Pebbling formulas, pebble games and resolution refutations")]
struct Cli {
    /// Search budget (visited states) for exhaustive oracles.
    #[arg(long, global = true, env = "PEBLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for commands over several items.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized commands; echoed on standard error.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the (substituted) pebbling formula of each graph as DIMACS.
    Gen {
        #[arg(long)]
        graph: String,
        /// `none`, `or:2`, `xor:2`, `thr:4:2`, `maj:3`, `tt:<arity>:<hex>`.
        #[arg(long = "fn", default_value = "none")]
        function: Substitution,
        /// Output file, or a directory when the spec is a range.
        #[arg(long)]
        out: PathBuf,
        /// CSV manifest to append rows to.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Print a graph in the DAG file format.
    Graph {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a pebbling trace and print its cost.
    PebbleValidate {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Exact black and black-white pebbling prices.
    PebblePrice {
        #[arg(long)]
        graph: String,
        /// Also write an optimal black pebbling as a trace.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compile a black pebbling into a refutation of the pebbling formula.
    Compile {
        #[arg(long)]
        graph: String,
        #[arg(long = "fn", default_value = "none")]
        function: Substitution,
        /// Black pebbling trace; the greedy strategy when absent.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear-length refutation in constant clause space.
    ConstSpace {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a refutation of Peb_G into one of Peb_G[f].
    Lift {
        #[arg(long)]
        graph: String,
        #[arg(long = "fn")]
        function: BooleanFunction,
        /// Refutation of the unsubstituted formula; constant-space one if absent.
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a refutation of Peb_G from one of Peb_G[f] via projections.
    Extract {
        #[arg(long)]
        graph: String,
        #[arg(long = "fn")]
        function: BooleanFunction,
        #[arg(long)]
        proof: PathBuf,
        /// Use local projections.
        #[arg(long)]
        local: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a resolution or k-DNF proof trace and print its measures.
    Check {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        proof: PathBuf,
    },
    /// Minimal refutation clause space, by exhaustive search.
    Minspace {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Minimal refutation width, by bounded saturation.
    Minwidth {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Projection of a clause set, or a seeded sweep of the projection properties.
    Project {
        #[arg(long = "fn")]
        function: BooleanFunction,
        /// One clause per line; without it a random sweep runs.
        #[arg(long)]
        clauses: Option<PathBuf>,
        #[arg(long)]
        local: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_clauses: usize,
        #[arg(long, default_value_t = 4)]
        base_vars: usize,
        /// CSV of |D| against |Vars(proj)|.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON lines describing samples that break the space bound.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// CSV of prices and refutation costs over a graph family range.
    Report {
        #[arg(long)]
        family: String,
        #[arg(long = "fn", default_value = "none")]
        function: Substitution,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a SAT solver over manifest entries.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        /// Command line with a `{file}` placeholder.
        #[arg(long)]
        solver: String,
        /// Seconds per entry.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormulaArgs {
    /// DIMACS file.
    #[arg(long, conflicts_with = "graph")]
    formula: Option<PathBuf>,
    /// Graph spec whose pebbling formula to use.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long = "fn", default_value = "none", requires = "graph")]
    function: Substitution,
}

impl FormulaArgs {
    fn load(&self) -> Result<CnfFormula> {
        match (&self.formula, &self.graph) {
            (Some(path), _) => Ok(from_dimacs(&read(path)?)?),
            (None, Some(spec)) => Ok(self.function.formula(&pebbling_contradiction(&graph(spec)?.dag))),
            (None, None) => bail!("give --formula or --graph"),
        }
    }
}

fn measures_text(m: &Measures) -> String {
    format!(
        "length {}\ndownloads {}\ninferences {}\nwidth {}\nclause_space {}\nvariable_space {}\ntotal_space {}\nformula_space {}\n",
        m.length,
        m.downloads,
        m.inferences,
        m.width,
        m.clause_space,
        m.variable_space,
        m.total_space,
        m.formula_space
    )
}

fn resolution_trace(target: &CnfFormula, path: &Path) -> Result<Refutation> {
    match parse_proof_trace(target, &read(path)?)? {
        ProofTrace::Resolution(r) => Ok(r),
        ProofTrace::KDnf(_) => bail!("{} is a k-DNF trace; expected resolution", path.display()),
    }
}

fn black_strategy(g: &NamedGraph, path: Option<&Path>) -> Result<BwPebbling> {
    let Some(path) = path else {
        return Ok(greedy_black_strategy(&g.dag));
    };
    match parse_pebbling_trace(&g.dag, &read(path)?)? {
        PebblingTrace::Bw { pebbling, .. } => Ok(pebbling),
        _ => bail!("{} is not a black or black-white trace", path.display()),
    }
}

fn csv_text<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct ReportRow {
    graph: String,
    vertices: usize,
    black_price: Option<usize>,
    bw_price: Option<usize>,
    compiled_length: Option<usize>,
    compiled_space: Option<usize>,
    const_space_length: Option<usize>,
    note: String,
}

const REPORT_HEADER: [&str; 8] = [
    "graph",
    "vertices",
    "black_price",
    "bw_price",
    "compiled_length",
    "compiled_space",
    "const_space_length",
    "note",
];

fn report_row(g: &NamedGraph, s: &Substitution, budget: u64) -> ReportRow {
    let mut notes = Vec::new();
    let mut note = |what: &str, e: &dyn std::fmt::Display| notes.push(format!("{what}: {e}"));
    let black_price = optimal_black_price(&g.dag, budget)
        .map_err(|e| note("black", &e))
        .ok()
        .map(|r| r.price);
    let bw_price = optimal_bw_price(&g.dag, budget)
        .map_err(|e| note("bw", &e))
        .ok()
        .map(|r| r.price);
    let compiled = pebbling_to_refutation(&g.dag, &greedy_black_strategy(&g.dag), s)
        .and_then(|c| check_refutation(&c.refutation))
        .map_err(|e| note("compiled", &e))
        .ok();
    let const_space = check_refutation(&constant_space_refutation(&g.dag))
        .map_err(|e| note("const-space", &e))
        .ok();
    ReportRow {
        graph: g.id.clone(),
        vertices: g.dag.len(),
        black_price,
        bw_price,
        compiled_length: compiled.map(|m| m.length),
        compiled_space: compiled.map(|m| m.clause_space),
        const_space_length: const_space.map(|m| m.length),
        note: notes.join("; "),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    eprintln!("seed: {}", cli.seed);
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let budget = cli.budget;
    match cli.command {
        Command::Gen {
            graph: spec,
            function,
            out,
            manifest,
        } => {
            let gs = graphs(&spec)?;
            let ranged = spec.contains("..");
            let entries: Vec<ManifestEntry> = gs
                .par_iter()
                .map(|g| {
                    let f = function.formula(&pebbling_contradiction(&g.dag));
                    let path = if ranged {
                        out.join(format!("{}_{}.cnf", slug(&g.id), slug(&function.to_string())))
                    } else {
                        out.clone()
                    };
                    write_atomic(&path, &to_dimacs(&f))?;
                    Ok(ManifestEntry {
                        graph: g.id.clone(),
                        function: function.to_string(),
                        path: path.display().to_string(),
                        variables: f.vars().len(),
                        clauses: f.len(),
                        width: f.width(),
                    })
                })
                .collect::<Result<_>>()?;
            if let Some(m) = manifest {
                append_manifest(&m, &entries)?;
            }
            for e in &entries {
                println!("{} {} {} vars {} clauses width {}", e.graph, e.path, e.variables, e.clauses, e.width);
            }
        }
        Command::Graph { graph: spec, out } => emit(out.as_deref(), &graph(&spec)?.dag.to_text())?,
        Command::PebbleValidate { graph: spec, trace } => {
            let g = graph(&spec)?;
            let (kind, time, space) = match parse_pebbling_trace(&g.dag, &read(&trace)?)? {
                PebblingTrace::Bw { black_only, pebbling } => {
                    let c = validate_bw(&g.dag, &pebbling, black_only)?;
                    (if black_only { "black" } else { "bw" }, c.time, c.space)
                }
                PebblingTrace::Labelled(p) => {
                    let c = validate_labelled(&g.dag, &p)?;
                    println!("subconfigurations {}\nsupport {}", c.max_subconfigs, c.max_support);
                    ("labelled", c.time, c.space)
                }
                PebblingTrace::Blob(p) => {
                    let c = validate_blob(&g.dag, &p, budget)?;
                    ("blob", c.time, c.space)
                }
            };
            println!("valid {kind} pebbling\ntime {time}\nspace {space}");
        }
        Command::PebblePrice { graph: spec, witness } => {
            let g = graph(&spec)?;
            let black = optimal_black_price(&g.dag, budget)?;
            let bw = optimal_bw_price(&g.dag, budget)?;
            println!("black_price {}\nbw_price {}", black.price, bw.price);
            if let Some(w) = witness {
                write_atomic(&w, &write_bw_trace(&g.dag, &black.witness, true)?)?;
            }
        }
        Command::Compile {
            graph: spec,
            function,
            strategy,
            out,
        } => {
            let g = graph(&spec)?;
            let p = black_strategy(&g, strategy.as_deref())?;
            let cost = validate_bw(&g.dag, &p, true)?;
            let c = pebbling_to_refutation(&g.dag, &p, &function)?;
            let m = check_refutation(&c.refutation)?;
            emit(out.as_deref(), &write_proof_trace(&c.refutation)?)?;
            eprint!("pebbling time {} space {}\n{}", cost.time, cost.space, measures_text(&m));
            eprintln!(
                "length_factor {}\nspace_factor {}",
                c.constants.length_factor(),
                c.constants.space_factor()
            );
        }
        Command::ConstSpace { graph: spec, out } => {
            let r = constant_space_refutation(&graph(&spec)?.dag);
            let m = check_refutation(&r)?;
            emit(out.as_deref(), &write_proof_trace(&r)?)?;
            eprint!("{}", measures_text(&m));
        }
        Command::Lift {
            graph: spec,
            function,
            proof,
            out,
        } => {
            let g = graph(&spec)?;
            let peb = pebbling_contradiction(&g.dag);
            let r = match proof {
                Some(p) => resolution_trace(&peb, &p)?,
                None => constant_space_refutation(&g.dag),
            };
            let l = lift_refutation(&r, &function)?;
            emit(out.as_deref(), &write_proof_trace(&l.refutation)?)?;
            eprint!("{}", measures_text(&l.output));
            eprintln!(
                "input_width {}\nlength_exponent {:.3}\nspace_ratio {:.3}",
                l.input.width,
                l.length_exponent(),
                l.space_ratio()
            );
        }
        Command::Extract {
            graph: spec,
            function,
            proof,
            local,
            out,
        } => {
            let g = graph(&spec)?;
            let peb = pebbling_contradiction(&g.dag);
            let target = peblab::formulas::substitute(&peb, &function)?;
            let r = resolution_trace(&target, &proof)?;
            let e = extract_refutation(&r, &peb, &function, local)?;
            emit(out.as_deref(), &write_proof_trace(&e.refutation)?)?;
            eprint!("{}", measures_text(&e.measures));
            eprintln!("input_downloads {}\nvar_space_bound {}", e.input.downloads, e.var_space_bound);
        }
        Command::Check { formula, proof } => {
            let f = formula.load()?;
            match parse_proof_trace(&f, &read(&proof)?)? {
                ProofTrace::Resolution(r) => {
                    let m = check_refutation(&r)?;
                    print!("valid resolution refutation\n{}", measures_text(&m));
                }
                ProofTrace::KDnf(r) => {
                    let rep = check_kdnf_refutation(&r)?;
                    print!("valid {}-DNF refutation\n{}", r.k, measures_text(&rep.measures));
                    println!("semantically_checked {}", rep.semantically_checked);
                }
            }
        }
        Command::Minspace { formula, cap } => {
            println!("min_clause_space {}", min_clause_space(&formula.load()?, cap, budget)?);
        }
        Command::Minwidth { formula, cap } => {
            println!("min_width {}", min_width(&formula.load()?, cap)?);
        }
        Command::Project {
            function,
            clauses,
            local,
            samples,
            max_clauses,
            base_vars,
            csv,
            witness,
        } => {
            if let Some(path) = clauses {
                let d: Vec<Clause> = read(&path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| l.parse::<Clause>().with_context(|| format!("bad clause `{l}`")))
                    .collect::<Result<_>>()?;
                let p = if local { local_project(&d, &function)? } else { project(&d, &function)? };
                let mut text = String::new();
                for c in p.clauses() {
                    writeln!(text, "{c}")?;
                }
                print!("{text}");
                return Ok(ExitCode::SUCCESS);
            }
            let configs = random_configurations(cli.seed, samples, max_clauses, base_vars, function.arity());
            let suite = projection_axiom_suite(&function, &configs, cli.seed)?;
            let space = space_respecting_check(&function, &configs)?;
            emit(csv.as_deref(), &space.to_csv())?;
            if let Some(w) = witness {
                write_atomic(&w, &space.witness_log())?;
            }
            eprintln!(
                "{} samples, {} checks, {} property failures; space bound {} ({}), max ratio {:.3}",
                suite.samples,
                suite.checks,
                suite.failures.len(),
                if space.violations().next().is_none() { "holds" } else { "broken" },
                if space.asserted { "asserted" } else { "not asserted: f is authoritarian" },
                space.max_ratio
            );
            for f in &suite.failures {
                eprintln!("sample {} {} {}: {}", f.sample, f.projection, f.property, f.detail);
            }
            if !suite.passed() || !space.holds() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Report {
            family,
            function,
            out,
        } => {
            let gs = graphs(&family)?;
            let rows: Vec<ReportRow> = gs.par_iter().map(|g| report_row(g, &function, budget)).collect();
            emit(out.as_deref(), &csv_text(&REPORT_HEADER, &rows)?)?;
        }
        Command::Bench {
            manifest,
            solver,
            timeout,
            out,
        } => {
            bench::command_line(&solver, "")?;
            if !timeout.is_finite() || timeout < 0.0 {
                bail!("timeout must be a nonnegative number of seconds");
            }
            let entries = read_manifest(&manifest)?;
            let limit = Duration::from_secs_f64(timeout);
            let rows: Vec<BenchRow> = entries
                .par_iter()
                .enumerate()
                .map(|(i, e)| run_entry(i, e, &solver, limit))
                .collect();
            let header = ["entry", "graph", "function", "path", "status", "wall_ms"];
            emit(out.as_deref(), &csv_text(&header, &rows)?)?;
            let failed: Vec<&BenchRow> = rows.iter().filter(|r| r.status == "SPAWN-FAILED").collect();
            for r in &failed {
                eprintln!("entry {}: could not run the solver on {}", r.entry, r.path);
            }
            if !failed.is_empty() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
