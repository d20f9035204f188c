use biset_cover::connectivity::{augment, k_connected_subgraph, opt_k, AugmentInstance};
use biset_cover::crossing::{cover_crossing_gamma, cover_crossing_log, cover_crossing_regular, decompose_baseline, CoverResult};
use biset_cover::digraph::is_k_connected_arcs;
use biset_cover::exact::{exact_opt, tau_lp, uncovered_member, verify_dual};
use biset_cover::generators::{
    gen_complete_costs, gen_crossing_family, gen_ell_connected_digraph, gen_intersecting_family, gen_regular_family,
    gen_semi_intersecting_family,
};
use biset_cover::oracle::{ExplicitFamily, FamilyOracle, SmallInner};
use biset_cover::primal_dual::{semi_intersecting_cover, DualSolution};
use biset_cover::rational::{self, Rational};
use biset_cover::{Biset, Error, WeightedDigraph};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Families above this size are not handed to the exact LP.
const EXACT_LIMIT: usize = 400;
/// Largest ground set for which `kcss` computes the biset LP value.
const OPT_K_LIMIT: usize = 7;

#[derive(Parser)]
#[command(name = "biset-cover", version, about = "Minimum-cost covers of biset families by directed edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algo {
    Log,
    Regular,
    Gamma,
    Baseline,
    Pd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Crossing,
    Intersecting,
    Semi,
    Regular,
    Digraph,
    Costs,
}

#[derive(Subcommand)]
enum Command {
    /// Cover an explicit family with one of the algorithms.
    SolveFamily {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Regularity parameter for `regular` and `gamma`.
        #[arg(long)]
        k: Option<usize>,
        /// Restrict `pd` to members with inner part of size at most Q.
        #[arg(long)]
        q: Option<usize>,
        /// First anchor node for `baseline`.
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
    /// Raise an ell-connected digraph to (ell+1)-connectivity.
    Augment {
        /// The ell-connected base digraph; its costs are ignored.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        candidates: PathBuf,
    },
    /// Cheap k-connected spanning subgraph.
    Kcss {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Audit a result file against a family and graph.
    Verify {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Optimal integral and fractional covers by exhaustive search and LP.
    Exact {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Number of random seed members before closure.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long, default_value_t = 1)]
        lo: i64,
        #[arg(long, default_value_t = 10)]
        hi: i64,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn ratio(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn same_ground(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<(), Failure> {
    if fam.ground_set().n() != g.n() {
        return Err(usage(format!("family has {} nodes, graph has {}", fam.ground_set().n(), g.n())));
    }
    Ok(())
}

fn tau_of(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<Option<Rational>, Failure> {
    if fam.len() > EXACT_LIMIT {
        return Ok(None);
    }
    Ok(Some(tau_lp(fam, g)?))
}

fn cover_report(algo: &str, fam: &ExplicitFamily, g: &WeightedDigraph, r: &CoverResult) -> Result<Value, Failure> {
    let tau = tau_of(fam, g)?;
    let uncovered = uncovered_member(fam, g, &r.edges);
    Ok(json!({
        "algo": algo,
        "cost": ratio(&r.cost),
        "ratio_bound": ratio(&r.ratio_bound),
        "tau": tau.as_ref().map(ratio),
        "within_bound": tau.as_ref().map(|t| r.cost <= &r.ratio_bound * t),
        "covered": uncovered.is_none(),
        "edges": r.edges,
        "trace": r.trace,
    }))
}

fn solve_family(family: &Path, graph: &Path, algo: Algo, k: Option<usize>, q: Option<usize>, s: usize) -> Result<Value, Failure> {
    let fam: ExplicitFamily = load(family)?;
    let g: WeightedDigraph = load(graph)?;
    same_ground(&fam, &g)?;
    let need_k = || k.ok_or_else(|| usage("--k is required for this algorithm"));
    let result = match algo {
        Algo::Log => cover_report("log", &fam, &g, &cover_crossing_log(&fam, &g)?)?,
        Algo::Regular => cover_report("regular", &fam, &g, &cover_crossing_regular(&fam, &g, need_k()?)?)?,
        Algo::Gamma => cover_report("gamma", &fam, &g, &cover_crossing_gamma(&fam, &g, need_k()?)?)?,
        Algo::Baseline => {
            if s >= g.n() {
                return Err(usage(format!("anchor {s} is not a node")));
            }
            cover_report("baseline", &fam, &g, &decompose_baseline(&fam, &g, s)?)?
        }
        Algo::Pd => {
            let target = match q {
                Some(q) => fam.restrict_small(q),
                None => fam.clone(),
            };
            let small;
            let oracle: &dyn FamilyOracle = match q {
                Some(q) => {
                    small = SmallInner::new(&fam, q);
                    &small
                }
                None => &fam,
            };
            let r = semi_intersecting_cover(oracle, &g)?;
            let tau = tau_of(&target, &g)?;
            let audit = verify_dual(&target, &g, &r.dual, &r.edges, Some(&r.family_u), tau.is_some())?;
            json!({
                "algo": "pd",
                "cost": ratio(&r.cost),
                "tau": tau.as_ref().map(ratio),
                "covered": uncovered_member(&target, &g, &r.edges).is_none(),
                "edges": r.edges,
                "residual_cores": r.residual_cores,
                "family_u": r.family_u,
                "dual": r.dual,
                "dual_audit": { "ok": audit.ok(), "violations": audit.violations(), "report": audit },
            })
        }
    };
    Ok(result)
}

fn run_augment(graph: &Path, ell: usize, candidates: &Path) -> Result<Value, Failure> {
    let base: WeightedDigraph = load(graph)?;
    let cand: WeightedDigraph = load(candidates)?;
    if base.n() != cand.n() {
        return Err(usage("graph and candidates have different node counts"));
    }
    let n = base.n();
    let inst = AugmentInstance::new(base.edges().to_vec(), cand.clone(), ell)?;
    let r = augment(&inst)?;
    let mut all = base.edges().to_vec();
    all.extend(cand.arcs(&r.edges));
    let connected = is_k_connected_arcs(n, &all, ell + 1);
    let tight = inst.family()?.to_explicit();
    let tau = if tight.is_empty() { Some(rational::int(0)) } else { tau_of(&tight, &cand)? };
    Ok(json!({
        "ell": ell,
        "cost": ratio(&r.cost),
        "ratio_bound": ratio(&r.ratio_bound),
        "tau": tau.as_ref().map(ratio),
        "within_bound": tau.as_ref().map(|t| r.cost <= &r.ratio_bound * t),
        "edges": r.edges,
        "post_check": format!("{}-connected: {connected}", ell + 1),
        "connected": connected,
        "trace": r.trace,
    }))
}

fn run_kcss(graph: &Path, k: usize) -> Result<Value, Failure> {
    let g: WeightedDigraph = load(graph)?;
    let r = k_connected_subgraph(&g, k)?;
    let connected = is_k_connected_arcs(g.n(), &g.arcs(&r.edges), k);
    let opt = if g.n() <= OPT_K_LIMIT { Some(opt_k(&g, k)?) } else { None };
    Ok(json!({
        "result": r,
        "opt_k": opt.as_ref().map(ratio),
        "within_bound": opt.as_ref().map(|o| r.cost <= &r.opt_k_factor * o),
        "post_check": format!("{k}-connected: {connected}"),
        "connected": connected,
    }))
}

/// The parts of a result file that can be audited; anything else is ignored.
#[derive(Deserialize)]
struct ResultFile {
    edges: Vec<usize>,
    #[serde(default, with = "rational::serde_opt")]
    cost: Option<Rational>,
    #[serde(default)]
    dual: Option<DualSolution>,
    #[serde(default)]
    family_u: Option<Vec<Biset>>,
}

fn run_verify(result: &Path, family: &Path, graph: &Path) -> Result<(Value, bool), Failure> {
    let r: ResultFile = load(result)?;
    let fam: ExplicitFamily = load(family)?;
    let g: WeightedDigraph = load(graph)?;
    same_ground(&fam, &g)?;
    g.check_ids(&r.edges)?;
    let uncovered = uncovered_member(&fam, &g, &r.edges);
    let cost = g.cost(&r.edges);
    let mut report = json!({
        "covered": uncovered.is_none(),
        "uncovered_member": uncovered,
        "cost": ratio(&cost),
        "cost_matches": r.cost.as_ref().map(|c| *c == cost),
    });
    let mut ok = uncovered.is_none() && r.cost.as_ref().map_or(true, |c| *c == cost);
    if let Some(dual) = &r.dual {
        let with_tau = fam.len() <= EXACT_LIMIT && uncovered.is_none();
        let audit = verify_dual(&fam, &g, dual, &r.edges, r.family_u.as_deref(), with_tau)?;
        ok &= audit.ok();
        report["dual_audit"] = json!({ "ok": audit.ok(), "violations": audit.violations(), "report": audit });
    }
    report["ok"] = json!(ok);
    Ok((report, uncovered.is_none()))
}

fn run_exact(family: &Path, graph: &Path) -> Result<Value, Failure> {
    let fam: ExplicitFamily = load(family)?;
    let g: WeightedDigraph = load(graph)?;
    same_ground(&fam, &g)?;
    Ok(serde_json::to_value(exact_opt(&fam, &g)?).expect("report serializes"))
}

#[allow(clippy::too_many_arguments)]
fn run_gen(kind: Kind, n: usize, seed: u64, size: usize, k: usize, q: usize, ell: usize, lo: i64, hi: i64) -> Result<Value, Failure> {
    let family = |f: ExplicitFamily| serde_json::to_value(f).expect("family serializes");
    let graph = |g: WeightedDigraph| serde_json::to_value(g).expect("graph serializes");
    Ok(match kind {
        Kind::Crossing => family(gen_crossing_family(n, seed, size)?),
        Kind::Intersecting => family(gen_intersecting_family(n, seed, size, 60)?),
        Kind::Semi => family(gen_semi_intersecting_family(n, q, seed, size)?),
        Kind::Regular => family(gen_regular_family(n, k, seed)?),
        Kind::Digraph => graph(gen_ell_connected_digraph(n, ell, seed)?),
        Kind::Costs => {
            if lo > hi {
                return Err(usage("--lo exceeds --hi"));
            }
            graph(gen_complete_costs(n, lo, hi, seed)?)
        }
    })
}

fn run(cli: Cli) -> Result<(Value, u8), Failure> {
    let done = |v: Value| Ok((v, 0));
    match cli.command {
        Command::SolveFamily { family, graph, algo, k, q, s } => done(solve_family(&family, &graph, algo, k, q, s)?),
        Command::Augment { graph, ell, candidates } => done(run_augment(&graph, ell, &candidates)?),
        Command::Kcss { graph, k } => done(run_kcss(&graph, k)?),
        Command::Verify { result, family, graph } => {
            let (report, covered) = run_verify(&result, &family, &graph)?;
            Ok((report, if covered { 0 } else { 2 }))
        }
        Command::Exact { family, graph } => done(run_exact(&family, &graph)?),
        Command::Gen { kind, n, seed, size, k, q, ell, lo, hi } => done(run_gen(kind, n, seed, size, k, q, ell, lo, hi)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok((value, code)) => {
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&value).expect("json output"));
            ExitCode::from(code)
        }
        Err(f) => {
            let _ = writeln!(std::io::stdout(), "{}", json!({ "error": f.message, "exit_code": f.code }));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
