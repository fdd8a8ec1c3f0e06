//! Command-line front end: generators, counting, spectra, bound formulas,
//! tree checkers, the exact oracle, and the claim verification suites.
//!
//! Results go to stdout as JSON (or CSV with --csv where supported); logs
//! and errors go to stderr. Exit codes: 0 success, 1 claim failure,
//! 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gturan::bounds::{self, MultipartitePattern};
use gturan::constructions as cons;
use gturan::counting;
use gturan::g6;
use gturan::graph::{Graph, VertexSet};
use gturan::oracle;
use gturan::trees;
use gturan::verify;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "gturan",
    version,
    about = "Extremal subgraph-count toolkit: constructions, exact counting, bounds, and an exhaustive oracle",
    long_about = None
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores). Results are
    /// identical for any value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Optional JSON config supplying defaults for jobs, seed, and the
    /// certificate store; explicit flags win.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Default, serde::Deserialize)]
struct Config {
    jobs: Option<usize>,
    seed: Option<u64>,
    store: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named construction
    Gen(GenArgs),
    /// Count copies of a pattern in a host
    Count {
        /// Host graph: inline graph6, @file.g6, or @file.json
        #[arg(long)]
        host: String,
        /// Pattern graph, same formats
        #[arg(long)]
        pattern: String,
    },
    /// Test whether a host contains a copy of a pattern
    Free {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Eigenvalues and multiplicity clusters of the loop-aware adjacency
    Spectrum {
        /// Graph: inline graph6, @file.g6, or @file.json
        #[arg(long)]
        input: String,
    },
    /// Evaluate a closed-form bound
    Bounds(BoundsArgs),
    /// Tree and bipartite-pattern checkers
    Trees(TreesArgs),
    /// Exact or heuristic maximum copy counts with certificates
    Oracle(OracleArgs),
    /// Run a claim verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    which: GenCommand,
    /// Output encoding
    #[arg(long, value_enum, default_value = "g6", global = true)]
    format: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    G6,
    Json,
}

#[derive(Subcommand)]
enum GenCommand {
    /// k triangles through one shared vertex
    Friendship { #[arg(long)] k: usize },
    /// s triangles through one shared edge
    Book { #[arg(long)] s: usize },
    /// Complete multipartite graph with the given class sizes
    Multipartite {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Balanced complete r-partite graph on n vertices
    Turan { #[arg(long)] n: usize, #[arg(long)] r: usize },
    /// Disjoint t-cliques plus one leftover clique
    CliqueUnion { #[arg(long)] n: usize, #[arg(long)] t: usize },
    /// Norm graph over GF(q^(s-1)) x GF(q)^*
    NormGraph { #[arg(long)] q: u64, #[arg(long)] s: u32 },
    /// Polarity graph over GF(q) modulo an order-(t-1) subgroup
    Furedi { #[arg(long)] q: u64, #[arg(long)] t: u64 },
    /// Progression-free subset of 1..=n (exact below 65, digit construction above)
    Behrend { #[arg(long)] n: u64 },
    /// Tripartite unique-triangle graph over a progression-free set
    Rsz {
        #[arg(long)] n: u64,
        /// Comma-separated set; defaults to the built-in progression-free set
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<u64>>,
    },
    /// Union of random triangles with no cycle of length 4..=k
    RandomGirth {
        #[arg(long)] n: usize,
        #[arg(long)] k: usize,
        #[arg(long)] seed: Option<u64>,
    },
    /// Greedy m-uniform hypergraph of girth at least 5, as its clique shadow
    HyperClique {
        #[arg(long)] n: usize,
        #[arg(long)] m: usize,
        #[arg(long)] seed: Option<u64>,
    },
    /// Uniform s-fold blow-up of a base graph
    UniformBlowup {
        #[arg(long)] base: String,
        #[arg(long)] s: usize,
    },
    /// Blow-up fixing a vertex set, multiplying the remaining components
    PartialBlowup {
        #[arg(long)] base: String,
        /// Comma-separated fixed vertices (may be empty)
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        fixed: Vec<usize>,
        #[arg(long)] multiplicity: usize,
    },
    /// Vertex-edge incidence graph
    Incidence { #[arg(long)] g: String },
    /// Minimum-degree amplifier gadget
    Amplifier { #[arg(long)] g: String },
}

#[derive(Args)]
struct BoundsArgs {
    #[command(subcommand)]
    which: BoundsCommand,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Exact K_t count of the balanced (k-1)-partite graph on n vertices
    TuranCliqueCount { #[arg(long)] n: u64, #[arg(long)] t: u64, #[arg(long)] k: u64 },
    /// Leading term of the edge bound for K_{s,t}-free hosts
    KstEdge { #[arg(long)] n: u64, #[arg(long)] s: u64, #[arg(long)] t: u64 },
    /// Leading term of the K_m bound for K_{s,t}-free hosts (s >= m-1)
    KstClique {
        #[arg(long)] n: u64,
        #[arg(long)] m: u64,
        #[arg(long)] s: u64,
        #[arg(long)] t: u64,
    },
    /// K_m bound valid for small s (t + s > m)
    KstCliqueSmallS {
        #[arg(long)] n: u64,
        #[arg(long)] m: u64,
        #[arg(long)] s: u64,
        #[arg(long)] t: u64,
    },
    /// Leading term of the K_{a,b} bound for K_{s,t}-free hosts
    KstBiclique {
        #[arg(long)] n: u64,
        #[arg(long)] a: u64,
        #[arg(long)] b: u64,
        #[arg(long)] s: u64,
        #[arg(long)] t: u64,
    },
    /// Best class sizes for pattern copies in complete multipartite graphs
    MultipartiteMax {
        #[arg(long)] n: u64,
        #[arg(long)] max_classes: u64,
        /// "k3" for a clique K_m as "k<m>", or "k<a>,<b>" for a biclique
        #[arg(long)] pattern: String,
    },
    /// Classify the growth of the maximum triangle count against an exclusion
    TriangleGrowth { #[arg(long)] h: String },
    /// Whether some blow-up of T contains H (homomorphism existence)
    BlowupContains { #[arg(long)] t: String, #[arg(long)] h: String },
}

#[derive(Args)]
struct TreesArgs {
    #[command(subcommand)]
    which: TreesCommand,
}

#[derive(Subcommand)]
enum TreesCommand {
    /// m-value of a tree pair with its witness set
    M { #[arg(long)] t: String, #[arg(long)] h: String },
    /// Growth checker for a bipartite pattern against a tree exclusion
    Theta {
        #[arg(long)] t: String,
        #[arg(long)] h: String,
        #[arg(long, value_enum, default_value = "exists")]
        mode: ThetaModeArg,
        #[arg(long, default_value_t = trees::DEFAULT_COVER_BUDGET)]
        budget: usize,
    },
    /// Build the incidence-graph reduction pair for a host
    Reduce { #[arg(long)] g: String },
    /// Exact Hamilton path decision
    HamiltonPath { #[arg(long)] g: String },
    /// All minimum edge covers (budgeted)
    Covers {
        #[arg(long)] g: String,
        #[arg(long, default_value = "1000")]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaModeArg {
    Exists,
    All,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: String,
    #[arg(long)]
    h: String,
    /// Exhaustive exact mode (default)
    #[arg(long, conflicts_with = "search")]
    exact: bool,
    /// Hill-climbing lower-bound mode
    #[arg(long)]
    search: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "100000")]
    budget: u64,
    /// Optional H-free start graph for the search
    #[arg(long)]
    start: Option<String>,
    /// JSON-lines certificate store (also honors GTURAN_STORE)
    #[arg(long, env = "GTURAN_STORE")]
    store: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all"
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value = "full")]
    scale: ScaleArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Omit timings so identical runs produce identical bytes
    #[arg(long)]
    deterministic: bool,
    /// Emit the claim table as CSV instead of JSON
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

/// Graph arguments accept inline graph6 or @path, where .json selects the
/// adjacency-list format.
fn read_graph(arg: &str) -> Result<Graph> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        if path.ends_with(".json") {
            return g6::decode_json(text.trim()).map_err(|e| anyhow!("{path}: {e}"));
        }
        return g6::decode_g6(text.trim()).map_err(|e| anyhow!("{path}: {e}"));
    }
    if arg.trim_start().starts_with('{') {
        return g6::decode_json(arg).map_err(|e| anyhow!("{e}"));
    }
    g6::decode_g6(arg).map_err(|e| anyhow!("{e}"))
}

fn graph_payload(g: &Graph, format: GraphFormat) -> Result<serde_json::Value> {
    Ok(match format {
        GraphFormat::G6 => {
            if !g.is_simple() {
                bail!("graph carries loops; use --format json");
            }
            json!({ "format": "g6", "graph": g6::encode_g6(g)? })
        }
        GraphFormat::Json => json!({
            "format": "json",
            "graph": serde_json::to_value(g6::GraphJson::from(g))?,
        }),
    })
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}

fn main() {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e:#}");
                std::process::exit(2);
            }
        },
        None => Config::default(),
    };
    if let Some(jobs) = cli.jobs.or(config.jobs) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match run(cli.command, &config) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn load_config(path: &std::path::Path) -> Result<Config> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn run(command: Command, config: &Config) -> Result<i32> {
    match command {
        Command::Gen(args) => gen(args, config),
        Command::Count { host, pattern } => {
            let g = read_graph(&host)?;
            let t = read_graph(&pattern)?;
            let count = counting::count_copies(&g, &t);
            emit(json!({ "count": count }));
            Ok(0)
        }
        Command::Free { host, pattern } => {
            let g = read_graph(&host)?;
            let h = read_graph(&pattern)?;
            emit(json!({ "contains": counting::contains_copy(&g, &h) }));
            Ok(0)
        }
        Command::Spectrum { input } => {
            let g = read_graph(&input)?;
            let s = counting::spectrum(&g);
            emit(serde_json::to_value(&s)?);
            Ok(0)
        }
        Command::Bounds(args) => bounds_cmd(args),
        Command::Trees(args) => trees_cmd(args),
        Command::Oracle(args) => oracle_cmd(args, config),
        Command::Verify(args) => verify_cmd(args, config),
    }
}

fn gen(args: GenArgs, config: &Config) -> Result<i32> {
    let format = args.format;
    let (graph, extra): (Graph, serde_json::Value) = match args.which {
        GenCommand::Friendship { k } => (cons::friendship(k), json!({})),
        GenCommand::Book { s } => (cons::book(s), json!({})),
        GenCommand::Multipartite { sizes } => (cons::multipartite(&sizes), json!({})),
        GenCommand::Turan { n, r } => (cons::turan_graph(n, r), json!({})),
        GenCommand::CliqueUnion { n, t } => (cons::clique_union(n, t), json!({})),
        GenCommand::NormGraph { q, s } => {
            let g = cons::norm_graph(q, s)?;
            let loops = g.loop_count();
            (g, json!({ "loops": loops }))
        }
        GenCommand::Furedi { q, t } => {
            let g = cons::furedi_graph(q, t)?;
            let loops = g.loop_count();
            (g, json!({ "loops": loops }))
        }
        GenCommand::Behrend { n } => {
            let set = cons::behrend_set(n);
            emit(json!({ "n": n, "size": set.len(), "set": set }));
            return Ok(0);
        }
        GenCommand::Rsz { n, set } => {
            let set = set.unwrap_or_else(|| cons::behrend_set(n));
            let g = cons::ruzsa_szemeredi_graph(n, &set)?;
            (g, json!({ "set": set }))
        }
        GenCommand::RandomGirth { n, k, seed } => {
            let seed = seed.or(config.seed).unwrap_or(0);
            let (g, stats) = cons::random_girth_graph(&cons::RandomGirthParams { n, k, seed })?;
            (g, json!({ "stats": serde_json::to_value(&stats)? }))
        }
        GenCommand::HyperClique { n, m, seed } => {
            let h = cons::greedy_girth5_hypergraph(n, m, seed.or(config.seed).unwrap_or(0));
            let g = cons::hyper_to_graph(&h);
            (
                g,
                json!({ "hyperedges": h.edges.len(), "hypergraph": serde_json::to_value(&h)? }),
            )
        }
        GenCommand::UniformBlowup { base, s } => {
            (cons::uniform_blowup(&read_graph(&base)?, s), json!({}))
        }
        GenCommand::PartialBlowup {
            base,
            fixed,
            multiplicity,
        } => {
            let spec = cons::BlowupSpec {
                base: read_graph(&base)?,
                fixed: VertexSet::new(fixed),
                multiplicity,
            };
            (cons::partial_blowup(&spec), json!({}))
        }
        GenCommand::Incidence { g } => (cons::incidence_graph(&read_graph(&g)?), json!({})),
        GenCommand::Amplifier { g } => (cons::min_degree_amplifier(&read_graph(&g)?)?, json!({})),
    };
    let mut payload = graph_payload(&graph, format)?;
    payload["n"] = json!(graph.n());
    payload["edges"] = json!(graph.edge_count());
    if let Some(obj) = payload.as_object_mut() {
        if let Some(extra_obj) = extra.as_object() {
            for (k, v) in extra_obj {
                obj.insert(k.clone(), v.clone());
            }
        }
    }
    emit(payload);
    Ok(0)
}

fn bound_json(b: &bounds::BoundValue, params: serde_json::Value) -> serde_json::Value {
    json!({
        "formula": b.formula,
        "params": params,
        "value": b.value,
        "exact": b.exact,
        "vacuous": b.vacuous,
    })
}

fn bounds_cmd(args: BoundsArgs) -> Result<i32> {
    match args.which {
        BoundsCommand::TuranCliqueCount { n, t, k } => {
            let value = bounds::turan_clique_count(n, t, k)?;
            emit(json!({
                "formula": "turan-clique-count",
                "params": { "n": n, "t": t, "k": k },
                "value": value,
                "exact": true,
            }));
        }
        BoundsCommand::KstEdge { n, s, t } => {
            let b = bounds::kst_edge_bound(n, s, t)?;
            emit(bound_json(&b, json!({ "n": n, "s": s, "t": t })));
        }
        BoundsCommand::KstClique { n, m, s, t } => {
            let b = bounds::kst_clique_bound(n, m, s, t)?;
            emit(bound_json(&b, json!({ "n": n, "m": m, "s": s, "t": t })));
        }
        BoundsCommand::KstCliqueSmallS { n, m, s, t } => {
            let b = bounds::kst_clique_bound_small_s(n, m, s, t)?;
            emit(bound_json(&b, json!({ "n": n, "m": m, "s": s, "t": t })));
        }
        BoundsCommand::KstBiclique { n, a, b, s, t } => {
            let bv = bounds::kst_biclique_bound(n, a, b, s, t)?;
            emit(bound_json(&bv, json!({ "n": n, "a": a, "b": b, "s": s, "t": t })));
        }
        BoundsCommand::MultipartiteMax {
            n,
            max_classes,
            pattern,
        } => {
            let pat = parse_pattern(&pattern)?;
            let (sizes, count) = bounds::multipartite_maximize(n, max_classes, &pat)?;
            emit(json!({
                "formula": "multipartite-max",
                "params": { "n": n, "max_classes": max_classes, "pattern": pattern },
                "sizes": sizes,
                "value": count,
                "exact": true,
            }));
        }
        BoundsCommand::TriangleGrowth { h } => {
            let g = read_graph(&h)?;
            let growth = bounds::triangle_growth(&g);
            emit(serde_json::to_value(&growth)?);
        }
        BoundsCommand::BlowupContains { t, h } => {
            let tg = read_graph(&t)?;
            let hg = read_graph(&h)?;
            emit(json!({ "contains": bounds::blowup_contains(&tg, &hg) }));
        }
    }
    Ok(0)
}

/// "k3" = K_3, "k2,4" = K_{2,4}.
fn parse_pattern(text: &str) -> Result<MultipartitePattern> {
    let body = text
        .strip_prefix('k')
        .or_else(|| text.strip_prefix('K'))
        .ok_or_else(|| anyhow!("pattern must look like k3 or k2,3"))?;
    if let Some((a, b)) = body.split_once(',') {
        Ok(MultipartitePattern::Biclique(a.parse()?, b.parse()?))
    } else {
        Ok(MultipartitePattern::Clique(body.parse()?))
    }
}

fn trees_cmd(args: TreesArgs) -> Result<i32> {
    match args.which {
        TreesCommand::M { t, h } => {
            let tg = read_graph(&t)?;
            let hg = read_graph(&h)?;
            let m = trees::m_value(&tg, &hg)?;
            emit(serde_json::to_value(&m)?);
        }
        TreesCommand::Theta { t, h, mode, budget } => {
            let tg = read_graph(&t)?;
            let hg = read_graph(&h)?;
            let mode = match mode {
                ThetaModeArg::Exists => trees::ThetaMode::ExistsCover,
                ThetaModeArg::All => trees::ThetaMode::AllCovers,
            };
            let outcome = trees::theta_alpha_check(&tg, &hg, mode, budget)?;
            let alpha = trees::max_independent_set(&tg);
            emit(json!({
                "alpha": alpha,
                "holds": outcome.holds(),
                "outcome": serde_json::to_value(&outcome)?,
            }));
        }
        TreesCommand::Reduce { g } => {
            let host = read_graph(&g)?;
            let (t, h) = trees::hamilton_reduce(&host)?;
            emit(json!({
                "t": g6::encode_g6(&t)?,
                "h": g6::encode_g6(&h)?,
                "t_vertices": t.n(),
                "h_vertices": h.n(),
            }));
        }
        TreesCommand::HamiltonPath { g } => {
            let host = read_graph(&g)?;
            emit(json!({ "hamilton_path": trees::has_hamilton_path(&host) }));
        }
        TreesCommand::Covers { g, budget } => {
            let host = read_graph(&g)?;
            let covers = trees::min_edge_covers(&host, budget)?;
            emit(serde_json::to_value(&covers)?);
        }
    }
    Ok(0)
}

fn oracle_cmd(args: OracleArgs, config: &Config) -> Result<i32> {
    let t = read_graph(&args.t)?;
    let h = read_graph(&args.h)?;
    let cert = if args.search {
        let start = match &args.start {
            Some(s) => Some(read_graph(s)?),
            None => None,
        };
        let seed = args.seed.or(config.seed).unwrap_or(0);
        oracle::ex_lower_search(args.n, &t, &h, seed, args.budget, start.as_ref())?
    } else {
        oracle::ex_exact(args.n, &t, &h)?
    };
    if let Some(store) = args.store.as_ref().or(config.store.as_ref()) {
        oracle::CertificateStore::open(store).put(&cert)?;
        eprintln!("stored certificate in {}", store.display());
    }
    emit(serde_json::to_value(&cert)?);
    Ok(0)
}

fn verify_cmd(args: VerifyArgs, config: &Config) -> Result<i32> {
    let scale = match args.scale {
        ScaleArg::Quick => verify::Scale::Quick,
        ScaleArg::Full => verify::Scale::Full,
    };
    let seed = args.seed.or(config.seed).unwrap_or(0);
    let report = verify::run_suite(&args.suite, scale, seed, args.deterministic)?;
    for claim in &report.claims {
        eprintln!(
            "[{}] {} ({})",
            match claim.status {
                verify::ClaimStatus::Pass => "PASS",
                verify::ClaimStatus::Fail => "FAIL",
                verify::ClaimStatus::Skip => "SKIP",
            },
            claim.claim,
            claim.anchor
        );
    }
    if args.csv {
        println!("claim,anchor,expected,measured,tol,status");
        for c in &report.claims {
            let esc = |s: &str| {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.to_string()
                }
            };
            println!(
                "{},{},{},{},{},{}",
                esc(&c.claim),
                esc(&c.anchor),
                esc(&c.expected),
                esc(&c.measured),
                esc(&c.tol),
                match c.status {
                    verify::ClaimStatus::Pass => "pass",
                    verify::ClaimStatus::Fail => "fail",
                    verify::ClaimStatus::Skip => "skip",
                }
            );
        }
    } else {
        emit(serde_json::to_value(&report)?);
    }
    Ok(if report.passed() { 0 } else { 1 })
}
