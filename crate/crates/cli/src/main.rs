//! `oriograph`: generators, embedding and tiling searches, lattice and
//! vertex statistics, regular-tournament search, and the replay checklist.
//!
//! Exit codes: 0 found/verified, 1 not found/refuted, 2 usage or I/O error,
//! 3 inconclusive (budget exhausted).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oriograph::analysis::{extremal_check, find_extremal_partition, vertex_bounds};
use oriograph::embed::{Embedder, SearchOutcome};
use oriograph::format::{parse_graph, parse_parts, serialize_bundle, serialize_graph, serialize_parts};
use oriograph::generators as gen;
use oriograph::lattice::{edge_vectors, find_2_transferrals, is_in_family_g, reachability_report, ResidueLattice};
use oriograph::search::{
    enumerate_regular_tournaments, tileability_probe, turanability_probe, InjectedHost, ProbeMode,
};
use oriograph::tiling::{copy_hypergraph, greedy_tiling, perfect_tiling, TilingMode, TilingOptions};
use oriograph::verify::{verify_paper, Profile, Status};
use oriograph::{IndexVector, OrientedGraph, Partition};

#[derive(Parser)]
#[command(name = "oriograph", version, about = "Oriented graphs, tournaments and perfect tilings")]
struct Cli {
    /// Worker threads (default: all cores); ORIOGRAPH_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampling and local search.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print a single JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Node-expansion cap for searches; running out exits with 3.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph family.
    Generate(GenerateArgs),
    /// Search for an embedding of a pattern into a host.
    Embed(EmbedArgs),
    /// Search for a perfect tiling of a host by copies of a pattern.
    Tile(TileArgs),
    /// Edge vectors, residue lattices, reverse edges and linking sets.
    Lattice(LatticeArgs),
    /// Per-vertex statistics or near-partite 3-partitions.
    Analyze(AnalyzeArgs),
    /// Regular-tournament enumeration and probes.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Replay the fixed checklist of containment, tiling and lattice facts.
    VerifyPaper {
        #[arg(long, default_value = "full")]
        profile: String,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    family: Family,
    /// Output `.dg` path; families with parts also get a `.parts` file beside it.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Transitive tournament on n vertices.
    Transitive { n: usize },
    /// k-cycle with arcs i -> i+1, ..., i+l.
    CyclePower { k: usize, l: usize },
    /// Triangle blown up by transitive tournaments of sizes a, b, c.
    DAbc { a: usize, b: usize, c: usize },
    /// Triple composition of C_3, r levels deep (3^r vertices).
    #[command(name = "f-r")]
    FR { r: u32 },
    /// The 5-vertex tournament S.
    S,
    /// Odd n and comma-separated residues, e.g. `7 1,2,4`.
    Rotational { n: usize, residues: String },
    /// A semi-regular tournament on n vertices.
    NearRegular { n: usize },
    /// Replace every vertex of a base graph by t independent copies.
    BlowUp { base: PathBuf, t: usize },
    /// Semi-regular tournament T(s,k) on 3s(k+1) vertices.
    TSk { s: usize, k: usize },
    /// C_3 divisibility barrier on 3n vertices.
    C3Barrier { n: usize },
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    parts: Option<PathBuf>,
    /// Count labelled embeddings instead of finding one.
    #[arg(long, conflicts_with = "vectors")]
    count: bool,
    /// List the index vectors of all embeddings (needs --parts).
    #[arg(long, requires = "parts")]
    vectors: bool,
}

#[derive(Args)]
struct TileArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    host: PathBuf,
    /// Run the residue-lattice pre-check against this partition first.
    #[arg(long)]
    parts: Option<PathBuf>,
    #[arg(long = "mod")]
    modulus: Option<usize>,
    /// Write the certificate JSON here.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Report a greedy (maximal, not maximum) tiling instead.
    #[arg(long)]
    greedy: bool,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long, requires_all = ["parts", "pattern"])]
    host: Option<PathBuf>,
    #[arg(long)]
    parts: Option<PathBuf>,
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Semicolon-separated generators, e.g. `2,2,2;4,1,1`, instead of a host.
    #[arg(long, conflicts_with = "host")]
    generators: Option<String>,
    /// Modulus (default: pattern order).
    #[arg(long = "mod")]
    modulus: Option<usize>,
    /// Vector to test (default: the part sizes).
    #[arg(long)]
    target: Option<String>,
    /// Copies needed for an edge vector to count as robust.
    #[arg(long, default_value_t = 1)]
    threshold: u64,
    /// Also report linking-set reachability with this `l`.
    #[arg(long)]
    reach: Option<usize>,
    /// Linking sets needed for a reachable pair (default: 1).
    #[arg(long, default_value_t = 1)]
    beta: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsKind {
    Vertex,
    Extremal,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    parts: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "vertex")]
    stats: StatsKind,
    /// Local-search restarts when no partition is given.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// All regular tournaments on n vertices up to isomorphism, as a `.dg` bundle.
    EnumerateRt {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// How many tournaments in a population contain the pattern.
    Probe {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// How many sampled semi-regular tournaments have a perfect tiling.
    TileProbe {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Extra host `g.dg` or `g.dg:g.parts`; repeatable.
        #[arg(long)]
        inject: Vec<String>,
    },
}

/// A failure that maps to exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = match std::env::var("ORIOGRAPH_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) => Some(t),
            Err(_) => {
                eprintln!("oriograph: ORIOGRAPH_THREADS must be a number, got {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.threads,
    };
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("oriograph: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("oriograph: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate(a) => generate(cli, a),
        Command::Embed(a) => embed(cli, a),
        Command::Tile(a) => tile(cli, a),
        Command::Lattice(a) => lattice(cli, a),
        Command::Analyze(a) => analyze(cli, a),
        Command::Search(s) => search(cli, s),
        Command::VerifyPaper { profile } => verify(cli, profile),
    }
}

fn read_graph(path: &Path) -> Result<OrientedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_parts(path: &Path, n: usize) -> Result<Partition, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_parts(&text, n).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn outcome_code<T>(o: &SearchOutcome<T>) -> u8 {
    match o {
        SearchOutcome::Found(_) => 0,
        SearchOutcome::NotFound => 1,
        SearchOutcome::Inconclusive => 3,
    }
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Outcome {
    let (g, parts): (OrientedGraph, Option<Partition>) = match &a.family {
        Family::Transitive { n } => (gen::transitive(*n)?, None),
        Family::CyclePower { k, l } => (gen::cycle_power(*k, *l)?, None),
        Family::DAbc { a, b, c } => {
            let (g, p) = gen::d_abc(*a, *b, *c)?;
            (g, Some(p))
        }
        Family::FR { r } => (gen::f_r(*r)?, None),
        Family::S => (gen::graph_s(), None),
        Family::Rotational { n, residues } => {
            let rs = residues
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure(format!("bad residue list {residues:?}: {e}")))?;
            (gen::rotational(*n, &rs)?, None)
        }
        Family::NearRegular { n } => (gen::near_regular(*n)?, None),
        Family::BlowUp { base, t } => {
            let (g, p) = gen::blow_up(&read_graph(base)?, *t)?;
            (g, Some(p))
        }
        Family::TSk { s, k } => {
            let w = gen::t_sk(*s, *k)?;
            (w.graph, Some(w.partition))
        }
        Family::C3Barrier { n } => {
            let (g, p) = gen::c3_barrier(*n)?;
            (g, Some(p))
        }
    };
    match &a.output {
        Some(path) => {
            write_file(path, &serialize_graph(&g))?;
            if let Some(p) = &parts {
                write_file(&path.with_extension("parts"), &serialize_parts(p))?;
            }
            if cli.json {
                print_json(&json!({
                    "path": path.display().to_string(),
                    "classification": g.classify(),
                    "parts": parts.as_ref().map(|p| p.parts().to_vec()),
                }));
            } else {
                let c = g.classify();
                eprintln!(
                    "wrote {} ({} vertices, {} arcs, min semi-degree {})",
                    path.display(),
                    g.n(),
                    g.edge_count(),
                    c.min_semi_degree
                );
            }
        }
        None if cli.json => print_json(&json!({
            "n": g.n(),
            "edges": g.edges().collect::<Vec<_>>(),
            "classification": g.classify(),
            "parts": parts.as_ref().map(|p| p.parts().to_vec()),
        })),
        None => print!("{}", serialize_graph(&g)),
    }
    Ok(0)
}

fn embed(cli: &Cli, a: &EmbedArgs) -> Outcome {
    let p = read_graph(&a.pattern)?;
    let h = read_graph(&a.host)?;
    let parts = a.parts.as_ref().map(|path| read_parts(path, h.n())).transpose()?;
    let e = Embedder::new(&p, &h).budget(cli.budget);
    if a.count {
        let c = e.count();
        if cli.json {
            print_json(&json!({ "status": if c.is_some() { "complete" } else { "inconclusive" }, "count": c }));
        } else {
            match c {
                Some(c) => println!("{c}"),
                None => println!("inconclusive: budget exhausted"),
            }
        }
        return Ok(if c.is_some() { 0 } else { 3 });
    }
    if a.vectors {
        let parts = parts.expect("clap enforces --parts");
        let images = e.image_sets();
        let vectors: Option<std::collections::BTreeSet<IndexVector>> = match images {
            Some(sets) => Some(sets.iter().map(|s| parts.index_vector(s)).collect::<Result<_, _>>()?),
            None => None,
        };
        if cli.json {
            print_json(&json!({
                "status": if vectors.is_some() { "complete" } else { "inconclusive" },
                "vectors": vectors,
            }));
        } else {
            match &vectors {
                Some(vs) => vs.iter().for_each(|v| println!("{v}")),
                None => println!("inconclusive: budget exhausted"),
            }
        }
        return Ok(if vectors.is_some() { 0 } else { 3 });
    }
    let r = e.find();
    let status = match &r {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::NotFound => "not-found",
        SearchOutcome::Inconclusive => "inconclusive",
    };
    if cli.json {
        let map = match &r {
            SearchOutcome::Found(e) => Some(e.map.clone()),
            _ => None,
        };
        print_json(&json!({ "status": status, "map": map }));
    } else {
        println!("{status}");
        if let SearchOutcome::Found(e) = &r {
            for (u, x) in e.map.iter().enumerate() {
                println!("{u} -> {x}");
            }
        }
    }
    Ok(outcome_code(&r))
}

fn tile(cli: &Cli, a: &TileArgs) -> Outcome {
    let f = read_graph(&a.pattern)?;
    let g = read_graph(&a.host)?;
    let parts = a.parts.as_ref().map(|path| read_parts(path, g.n())).transpose()?;
    if a.greedy {
        let t = greedy_tiling(&f, &g)?;
        let covered = t.covered().len();
        if cli.json {
            print_json(&json!({ "copies": t.copies, "covered": covered, "n": g.n() }));
        } else {
            println!("greedy: {} copies covering {covered} of {}", t.copies.len(), g.n());
            t.copies.iter().for_each(|c| println!("{c:?}"));
        }
        return Ok(if covered == g.n() { 0 } else { 1 });
    }
    let opts = TilingOptions { budget: cli.budget, partition: parts.as_ref(), modulus: a.modulus };
    let r = perfect_tiling(&f, &g, &opts)?;
    let doc = serde_json::to_value(&r)?;
    if let Some(path) = &a.certificate {
        write_file(path, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    if cli.json {
        print_json(&doc);
    } else {
        println!("{}", r.mode.as_str());
        if let Some(note) = &r.note {
            println!("{note}");
        }
        r.copies.iter().for_each(|c| println!("{c:?}"));
    }
    Ok(match r.mode {
        TilingMode::Found => 0,
        TilingMode::RefutedExhaustive | TilingMode::RefutedLattice => 1,
        TilingMode::Inconclusive => 3,
    })
}

fn parse_vector(s: &str) -> Result<Vec<usize>, Failure> {
    s.parse::<IndexVector>().map(|v| v.0).map_err(|e| Failure(format!("bad vector {s:?}: {e}")))
}

fn lattice(cli: &Cli, a: &LatticeArgs) -> Outcome {
    let mut doc = serde_json::Map::new();
    let (gens, default_target, default_mod) = if let Some(text) = &a.generators {
        let gens = text.split(';').filter(|t| !t.trim().is_empty()).map(parse_vector).collect::<Result<Vec<_>, _>>()?;
        (gens, None, None)
    } else {
        let (Some(host), Some(parts), Some(pattern)) = (&a.host, &a.parts, &a.pattern) else {
            return Err(Failure("lattice needs --generators or --host, --parts and --pattern".into()));
        };
        let g = read_graph(host)?;
        let f = read_graph(pattern)?;
        let p = read_parts(parts, g.n())?;
        let h = copy_hypergraph(&f, &g)?;
        let report = edge_vectors(&h, &p, a.threshold)?;
        let transferrals = find_2_transferrals(&report);
        doc.insert("copies".into(), json!(h.edges.len()));
        doc.insert("edge_vectors".into(), serde_json::to_value(&report)?);
        doc.insert("transferrals".into(), serde_json::to_value(&transferrals)?);
        if p.d() == 3 {
            doc.insert("family_g".into(), serde_json::to_value(is_in_family_g(&g, &p)?)?);
        }
        if let Some(l) = a.reach {
            doc.insert(
                "reachability".into(),
                serde_json::to_value(reachability_report(&g, &f, l, Some(a.beta), cli.budget)?)?,
            );
        }
        let gens: Vec<Vec<usize>> = report.all.iter().map(|vc| vc.vector.0.clone()).collect();
        (gens, Some(p.sizes()), Some(f.n()))
    };
    let d = match (gens.first(), &default_target) {
        (_, Some(t)) => t.len(),
        (Some(g), None) => g.len(),
        (None, None) => return Err(Failure("no generators given".into())),
    };
    let m = a.modulus.or(default_mod).ok_or_else(|| Failure("--mod is required with --generators".into()))?;
    let lat = ResidueLattice::new(&gens, m, d)?;
    let target = match &a.target {
        Some(t) => Some(parse_vector(t)?),
        None => default_target,
    };
    let member = target.as_ref().map(|t| lat.contains(t)).transpose()?;
    doc.insert("modulus".into(), json!(m));
    doc.insert("lattice_size".into(), json!(lat.len()));
    doc.insert("generators".into(), json!(lat.generators()));
    doc.insert("target".into(), json!(target));
    doc.insert("target_in_lattice".into(), json!(member));
    if cli.json {
        print_json(&Value::Object(doc));
    } else {
        if let Some(ev) = doc.get("edge_vectors") {
            println!("edge vectors (vector: copies), threshold {}, mu-hat {}:", a.threshold, ev["mu_hat"]);
            for vc in ev["all"].as_array().into_iter().flatten() {
                println!("  {}: {}", vc["vector"], vc["count"]);
            }
            let t = doc["transferrals"].as_array().map_or(0, |v| v.len());
            println!("2-transferrals: {t}");
            for tr in doc["transferrals"].as_array().into_iter().flatten() {
                println!("  e_{} - e_{} = {} - {}", tr["i"], tr["j"], tr["v1"], tr["v2"]);
            }
        }
        if let Some(fg) = doc.get("family_g") {
            println!(
                "reverse edges: {}; family G member: {}",
                fg["reverse_edges"].as_array().map_or(0, |v| v.len()),
                fg["member"]
            );
        }
        if let Some(r) = doc.get("reachability") {
            println!("closed-set sketch (heuristic): {}", r["heuristic_closed_sets"]);
        }
        println!("lattice mod {m}: {} of {} residues", lat.len(), m.pow(d as u32));
        if let (Some(t), Some(mem)) = (&target, member) {
            println!("target {}: {}", IndexVector(t.clone()), if mem { "in lattice" } else { "not in lattice" });
        }
    }
    Ok(match member {
        Some(false) => 1,
        _ => 0,
    })
}

fn analyze(cli: &Cli, a: &AnalyzeArgs) -> Outcome {
    let g = read_graph(&a.host)?;
    match a.stats {
        StatsKind::Vertex => {
            let r = vertex_bounds(&g);
            if cli.json {
                print_json(&serde_json::to_value(&r)?);
            } else {
                println!("n = {}, min semi-degree = {}", r.n, r.min_semi_degree);
                println!(
                    "8*cyclic window [{}, {}], 32*D-copy floor {}",
                    r.cyclic_window_x8.0, r.cyclic_window_x8.1, r.d_copy_floor_x32
                );
                println!("{:>6} {:>12} {:>10}", "vertex", "cyclic", "D-copies");
                for s in &r.vertices {
                    println!("{:>6} {:>12} {:>10}", s.vertex, s.cyclic_edges, s.d_copies);
                }
                println!("violations: cyclic {:?}, D-copy {:?}", r.cyclic_violations, r.d_copy_violations);
            }
            Ok(if r.holds() { 0 } else { 1 })
        }
        StatsKind::Extremal => {
            let p = match &a.parts {
                Some(path) => Some(read_parts(path, g.n())?),
                None => find_extremal_partition(&g, a.gamma, a.restarts, cli.seed),
            };
            let Some(p) = p else {
                if cli.json {
                    print_json(
                        &json!({ "extremal": false, "partition": null, "note": "no partition found; this is not a proof" }),
                    );
                } else {
                    println!("no extremal partition found in {} restarts (not a proof)", a.restarts);
                }
                return Ok(1);
            };
            let r = extremal_check(&g, &p, a.gamma)?;
            if cli.json {
                print_json(&json!({ "report": r, "partition": p.parts() }));
            } else {
                println!("sizes {:?}; reverse {:?}; reflected {:?}", r.sizes, r.reverse, r.reverse_reflected);
                println!("extremal at gamma {}: {}", a.gamma, r.extremal);
                if a.parts.is_none() {
                    print!("{}", serialize_parts(&p));
                }
            }
            Ok(if r.extremal { 0 } else { 1 })
        }
    }
}

fn search(cli: &Cli, s: &SearchCommand) -> Outcome {
    match s {
        SearchCommand::EnumerateRt { n, output } => {
            let graphs = enumerate_regular_tournaments(*n)?;
            let bundle = serialize_bundle(&graphs);
            if let Some(path) = output {
                write_file(path, &bundle)?;
            }
            if cli.json {
                print_json(&json!({
                    "n": n,
                    "classes": graphs.len(),
                    "graphs": graphs.iter().map(|g| g.edges().collect::<Vec<_>>()).collect::<Vec<_>>(),
                }));
            } else if output.is_some() {
                println!("{} classes", graphs.len());
            } else {
                print!("{bundle}");
            }
            Ok(0)
        }
        SearchCommand::Probe { pattern, mode, n, samples } => {
            let h = read_graph(pattern)?;
            let mode = match mode {
                ModeArg::Exhaustive => ProbeMode::Exhaustive,
                ModeArg::Sample => ProbeMode::Sample,
            };
            let r = turanability_probe(&h, n, mode, *samples, cli.seed, cli.budget)?;
            if cli.json {
                print_json(&serde_json::to_value(&r)?);
            } else {
                for e in &r.entries {
                    println!(
                        "n={}: {}/{} contain the pattern; failures {:?}; inconclusive {:?}",
                        e.n, e.containing, e.hosts, e.failures, e.inconclusive
                    );
                }
                println!("({})", r.caveat);
            }
            let failed = r.entries.iter().any(|e| !e.failures.is_empty());
            let unsure = r.entries.iter().any(|e| !e.inconclusive.is_empty());
            Ok(if failed {
                1
            } else if unsure {
                3
            } else {
                0
            })
        }
        SearchCommand::TileProbe { pattern, n, samples, inject } => {
            let h = read_graph(pattern)?;
            let mut hosts = Vec::new();
            for item in inject {
                let (g_path, p_path) = match item.split_once(':') {
                    Some((g, p)) => (g, Some(p)),
                    None => (item.as_str(), None),
                };
                let g = read_graph(Path::new(g_path))?;
                let p = p_path.map(|p| read_parts(Path::new(p), g.n())).transpose()?;
                hosts.push((item.clone(), g, p));
            }
            let injected: Vec<InjectedHost> = hosts
                .iter()
                .map(|(label, g, p)| InjectedHost { label: label.clone(), graph: g, partition: p.as_ref() })
                .collect();
            let r = tileability_probe(&h, n, *samples, cli.seed, cli.budget, &injected)?;
            if cli.json {
                print_json(&serde_json::to_value(&r)?);
            } else {
                for e in &r.entries {
                    match &e.skipped {
                        Some(why) => println!("n={}: skipped ({why})", e.n),
                        None => println!(
                            "n={}: {}/{} tiled, {} refuted, {} inconclusive",
                            e.n, e.tiled, e.hosts, e.refuted, e.inconclusive
                        ),
                    }
                }
                for i in &r.injected {
                    println!("{}: {}", i.label, i.mode.as_str());
                }
                println!("({})", r.caveat);
            }
            let modes = r
                .entries
                .iter()
                .flat_map(|e| e.samples.iter().map(|s| s.mode))
                .chain(r.injected.iter().map(|i| i.mode));
            let modes: Vec<TilingMode> = modes.collect();
            Ok(if modes.iter().any(|m| matches!(m, TilingMode::RefutedExhaustive | TilingMode::RefutedLattice)) {
                1
            } else if modes.contains(&TilingMode::Inconclusive) {
                3
            } else {
                0
            })
        }
    }
}

fn verify(cli: &Cli, profile: &str) -> Outcome {
    let profile: Profile = profile.parse()?;
    let r = verify_paper(profile);
    if cli.json {
        print_json(&serde_json::to_value(&r)?);
    } else {
        for c in &r.checks {
            println!("{:<12} {:<4} {}: {}", c.status.to_string(), c.id, c.title, c.detail);
        }
        let fails = r.checks.iter().filter(|c| c.status == Status::Fail).count();
        println!("{} checks, {fails} failed", r.checks.len());
    }
    Ok(if r.ok { 0 } else { 1 })
}
