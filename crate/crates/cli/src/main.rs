use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use thinhom::families::Family;
use thinhom::format::{parse_labels, parse_text, write_labels, write_text};
use thinhom::functor::{ApplyOptions, Functor};
use thinhom::hom::{
    try_chromatic_number, try_circular_chromatic_number, try_core_reduce, try_hom_equivalent, try_hom_exists,
    odd_girth, HomWitness, SearchLimits, DEFAULT_MAX_WITNESSES,
};
use thinhom::ops;
use thinhom::verify::{self, Outcome, ReportDocument, RunOptions, SuiteConfig, DEFAULT_SEED, SUITE_IDS};
use thinhom::{Digraph, Graph, GraphError, HomError};

const EXIT_NO: u8 = 1;
const EXIT_SKIP: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "thinhom", version, about = "Graph homomorphisms, Pultr functors and verification suites")]
struct Cli {
    #[command(flatten)]
    guards: Guards,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Guards {
    /// Per-query timeout in milliseconds (0 disables it).
    #[arg(long, global = true, default_value_t = 10_000)]
    timeout_ms: u64,
    /// Cap on enumerated homomorphisms per query.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WITNESSES)]
    max_witnesses: usize,
    /// Skip core reduction between the stages of composite functors.
    #[arg(long, global = true)]
    no_core_reduce: bool,
    /// Seed for every random corpus.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Guards {
    fn timeout(&self) -> Option<Duration> {
        (self.timeout_ms > 0).then(|| Duration::from_millis(self.timeout_ms))
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits { timeout: self.timeout(), max_witnesses: self.max_witnesses }
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { query_timeout: self.timeout(), core_reduce: !self.no_core_reduce, max_witnesses: self.max_witnesses }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a family member from a descriptor such as K:4, C:9, Kc:12/5,
    /// Kneser:5,2, TT:4, Gmn:5,3, S:8,3 or P:3.
    Gen {
        descriptor: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a functor (lambda:T, gamma:T, delta, deltaL, deltaR, omega:len,
    /// omega2, L:m/n, R:n/m) or a product (prod:x|box|lex, with a second input).
    Apply {
        functor: String,
        input: String,
        second: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the chromatic number, circular chromatic number, odd girth and
    /// core size.
    Invariants { input: String },
    /// Decide G -> H and print a witness; exit 0 iff one exists.
    Hom {
        g: String,
        h: String,
        /// Validate this map (inline images or a file holding a `witness:` line)
        /// instead of searching.
        #[arg(long)]
        check_witness: Option<String>,
    },
    /// Decide G <-> H.
    HomEq { g: String, h: String },
    /// Run a named suite and write its report.
    Verify {
        suite: String,
        /// Use a graph corpus.
        #[arg(long, conflicts_with = "digraphs")]
        graphs: bool,
        /// Use a digraph corpus.
        #[arg(long)]
        digraphs: bool,
        /// Largest corpus member size.
        #[arg(long)]
        max_n: Option<usize>,
        /// Report document (JSON).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the suite ids accepted by `verify`.
    Suites,
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Guard(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let guard = e.chain().any(|c| c.downcast_ref::<HomError>().is_some_and(HomError::is_guard));
        if guard {
            Failure::Guard(e)
        } else {
            Failure::Usage(e)
        }
    }
}

impl From<HomError> for Failure {
    fn from(e: HomError) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Guard(e)) => {
            eprintln!("skipped: {e:#}");
            ExitCode::from(EXIT_SKIP)
        }
    }
}

/// Reads a graph file, or builds a family member when `spec` is not a file.
fn load(spec: &str) -> Result<Digraph> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Ok(f) = spec.parse::<Family>() {
            return Ok(f.build()?);
        }
        bail!("{spec}: no such file, and not a family descriptor");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    let (_, g) = parse_text(&text).with_context(|| format!("parsing {spec}"))?;
    let sidecar = labels_path(path);
    if sidecar.exists() {
        let text = fs::read_to_string(&sidecar)?;
        let labels = parse_labels(&text, g.vertex_count()).with_context(|| format!("parsing {}", sidecar.display()))?;
        return Ok(g.with_labels(labels));
    }
    Ok(g)
}

fn labels_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".labels");
    PathBuf::from(s)
}

fn save(g: &Digraph, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => {
            fs::write(p, write_text(g)).with_context(|| format!("writing {}", p.display()))?;
            if g.labels().is_some() {
                fs::write(labels_path(p), write_labels(g))?;
            }
        }
        None => print!("{}", write_text(g)),
    }
    Ok(())
}

fn size(g: &Digraph) -> String {
    if g.is_symmetric() {
        let loops = g.loops().count();
        format!("{} vertices, {} edges", g.vertex_count(), (g.arc_count() - loops) / 2 + loops)
    } else {
        format!("{} vertices, {} arcs", g.vertex_count(), g.arc_count())
    }
}

/// Summary lines go to stdout when the graph goes to a file, else to stderr.
fn summary(to_file: bool, line: String) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn as_graph(g: Digraph, what: &str) -> Result<Graph> {
    Graph::try_from_digraph(g).with_context(|| format!("{what} must be a graph"))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let guards = &cli.guards;
    match &cli.cmd {
        Cmd::Gen { descriptor, output } => {
            let f: Family = descriptor.parse()?;
            let g = f.build()?;
            save(&g, output.as_deref())?;
            summary(output.is_some(), format!("{f}: {}", size(&g)));
            Ok(0)
        }
        Cmd::Apply { functor, input, second, output } => {
            let g = load(input)?;
            let out = if let Some(kind) = functor.strip_prefix("prod:") {
                let h = load(second.as_deref().ok_or_else(|| anyhow!("{functor} needs a second input"))?)?;
                match kind {
                    "x" => ops::direct_product(&g, &h),
                    "box" => ops::cartesian_product(&as_graph(g, input)?, &as_graph(h, "second input")?).into_digraph(),
                    "lex" => {
                        ops::lexicographic_product(&as_graph(g, input)?, &as_graph(h, "second input")?).into_digraph()
                    }
                    _ => return Err(anyhow!("unknown product {kind:?}; expected x, box or lex").into()),
                }
            } else {
                if second.is_some() {
                    return Err(anyhow!("{functor} takes one input").into());
                }
                let f: Functor = functor.parse()?;
                let opts = ApplyOptions { limits: guards.limits(), core_reduce: !guards.no_core_reduce };
                f.apply(&g, &opts).map_err(|e| anyhow::Error::from(e).context(format!("applying {f}")))?
            };
            save(&out, output.as_deref())?;
            let looped = if out.has_loop() { "has a loop" } else { "loop-free" };
            summary(output.is_some(), format!("{}, {looped}", size(&out)));
            Ok(0)
        }
        Cmd::Invariants { input } => {
            let g = load(input)?;
            let limits = guards.limits();
            let chi = try_chromatic_number(&g, &limits)?;
            println!("vertices: {}", g.vertex_count());
            println!("arcs: {}", g.arc_count());
            println!("chi: {chi}");
            let sym = ops::symmetrize(&g);
            if g.has_loop() || g.vertex_count() == 0 || g.arc_count() == 0 {
                println!("chi_c: n/a");
            } else {
                println!("chi_c: {}", try_circular_chromatic_number(&sym, &limits)?);
            }
            match odd_girth(&sym) {
                Some(k) => println!("odd girth: {k}"),
                None => println!("odd girth: none"),
            }
            println!("core size: {}", try_core_reduce(&g, &limits)?.core.vertex_count());
            Ok(0)
        }
        Cmd::Hom { g, h, check_witness } => {
            let (gg, hh) = (load(g)?, load(h)?);
            if let Some(w) = check_witness {
                let map = read_witness(w, gg.vertex_count(), hh.vertex_count())?;
                let ok = HomWitness::new(map).is_valid(&gg, &hh);
                println!("{}", if ok { "VALID" } else { "INVALID" });
                return Ok(if ok { 0 } else { EXIT_NO });
            }
            match try_hom_exists(&gg, &hh, &guards.limits())? {
                Some(w) => {
                    println!("FOUND");
                    println!("witness: {w}");
                    Ok(0)
                }
                None => {
                    println!("NONE");
                    Ok(EXIT_NO)
                }
            }
        }
        Cmd::HomEq { g, h } => {
            let eq = try_hom_equivalent(&load(g)?, &load(h)?, &guards.limits())?;
            println!("{eq}");
            Ok(if eq { 0 } else { EXIT_NO })
        }
        Cmd::Verify { suite, graphs, digraphs, max_n, output } => {
            let directed = match (graphs, digraphs) {
                (true, _) => Some(false),
                (_, true) => Some(true),
                _ => None,
            };
            let opts = RunOptions { directed, max_n: *max_n, seed: guards.seed, config: guards.suite_config() };
            let reports = verify::run(suite, &opts)?;
            let mut header = BTreeMap::new();
            header.insert("suite".to_string(), suite.clone());
            header.insert("seed".to_string(), guards.seed.to_string());
            header.insert("timeout ms".to_string(), guards.timeout_ms.to_string());
            header.insert("max witnesses".to_string(), guards.max_witnesses.to_string());
            header.insert("core reduce".to_string(), (!guards.no_core_reduce).to_string());
            header.insert(
                "corpus".to_string(),
                match directed {
                    Some(true) => "digraphs",
                    Some(false) => "graphs",
                    None => "suite default",
                }
                .to_string(),
            );
            header.insert("max n".to_string(), max_n.map_or("suite default".into(), |n| n.to_string()));
            header.insert("version".to_string(), env!("CARGO_PKG_VERSION").to_string());
            let doc = ReportDocument::new(header, reports);
            print!("{}", doc.render_text());
            if let Some(p) = output {
                fs::write(p, doc.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            let broken = doc.reports.iter().any(|r| r.outcome() != Outcome::Skip && !r.conforms());
            Ok(if broken {
                EXIT_NO
            } else if doc.any_skipped() {
                EXIT_SKIP
            } else {
                0
            })
        }
        Cmd::Suites => {
            for id in SUITE_IDS {
                println!("{id}");
            }
            Ok(0)
        }
    }
}

/// Parses a map given inline or as a file, optionally behind `witness:`.
fn read_witness(spec: &str, n: usize, m: usize) -> Result<Vec<usize>> {
    let text = if Path::new(spec).exists() { fs::read_to_string(spec)? } else { spec.to_string() };
    let body = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("witness:"))
        .map(str::to_string)
        .unwrap_or(text.clone());
    let map = body
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| anyhow!("witness: not a vertex index: {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    if map.len() != n {
        bail!("witness has {} images for {n} vertices", map.len());
    }
    if let Some(v) = map.iter().find(|&&v| v >= m) {
        bail!("witness image {v} out of range for {m} vertices");
    }
    Ok(map)
}
