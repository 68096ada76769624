//! Property suites over generated corpora.
//!
//! Every suite returns [`VerificationReport`]s. Pairwise checks run through
//! rayon and are merged in corpus order, so reports do not depend on
//! scheduling. Query timeouts are counted as skips, never as passes.

mod arc;
mod chains;
mod circular;
mod corpus;
mod laws;
mod poljak;
mod report;

use std::time::{Duration, Instant};

use crate::error::{GraphError, HomError};
use crate::functor::{ApplyOptions, Functor};
use crate::graph::Digraph;
use crate::hom::{try_chromatic_number, try_hom_equivalent, try_hom_exists, ChromaticValue, SearchLimits, DEFAULT_MAX_WITNESSES};
use crate::pultr::ProductKind;

pub use arc::{sperner_bound, suite_arc_graph};
pub use chains::{suite_functor_chains, suite_omega2, ChainParams};
pub use circular::suite_circular;
pub use corpus::{canonical_form, iso_classes, Corpus, CANONICAL_MAX, DEFAULT_SEED};
pub use laws::{
    suite_adjunction, suite_chromatic_identities, suite_multiplicativity, suite_product_preservation, Adjunction,
    PairCorpus,
};
pub use poljak::{suite_poljak_rodl, suite_strong_mult, PoljakRodlRecord};
pub use report::{Counterexample, Expectation, Fact, Outcome, ReportDocument, VerificationReport, KEPT_COUNTEREXAMPLES};

/// Guards shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Per-query timeout; expiry turns the instance into a skip.
    pub query_timeout: Option<Duration>,
    /// Core-reduce between the stages of composite functors.
    pub core_reduce: bool,
    /// Cap on enumerated homomorphisms per query.
    pub max_witnesses: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { query_timeout: Some(Duration::from_secs(10)), core_reduce: true, max_witnesses: DEFAULT_MAX_WITNESSES }
    }
}

impl SuiteConfig {
    pub fn limits(&self) -> SearchLimits {
        SearchLimits { timeout: self.query_timeout, max_witnesses: self.max_witnesses }
    }

    pub fn apply_options(&self) -> ApplyOptions {
        ApplyOptions { limits: self.limits(), core_reduce: self.core_reduce }
    }

    fn describe(&self) -> String {
        match self.query_timeout {
            Some(t) => format!("{} ms", t.as_millis()),
            None => "none".into(),
        }
    }
}

pub(crate) fn hom(g: &Digraph, h: &Digraph, cfg: &SuiteConfig) -> Result<bool, HomError> {
    Ok(try_hom_exists(g, h, &cfg.limits())?.is_some())
}

pub(crate) fn equiv(g: &Digraph, h: &Digraph, cfg: &SuiteConfig) -> Result<bool, HomError> {
    try_hom_equivalent(g, h, &cfg.limits())
}

pub(crate) fn chi(g: &Digraph, cfg: &SuiteConfig) -> Result<ChromaticValue, HomError> {
    try_chromatic_number(g, &cfg.limits())
}

/// Runs `f` and stamps the report with its wall time and guard settings.
pub(crate) fn timed(cfg: &SuiteConfig, f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    r.config.insert("query timeout".into(), cfg.describe());
    r.wall_time = start.elapsed();
    r
}

pub(crate) fn timed_all(cfg: &SuiteConfig, f: impl FnOnce() -> Vec<VerificationReport>) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut rs = f();
    let per = start.elapsed() / rs.len().max(1) as u32;
    for r in &mut rs {
        r.config.insert("query timeout".into(), cfg.describe());
        r.wall_time = per;
    }
    rs
}

/// Corpus and sampling choices for [`run`].
#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    /// Force a graph (`false`) or digraph (`true`) corpus.
    pub directed: Option<bool>,
    pub max_n: Option<usize>,
    pub seed: u64,
    pub config: SuiteConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { directed: None, max_n: None, seed: DEFAULT_SEED, config: SuiteConfig::default() }
    }
}

/// The suite ids accepted by [`run`].
pub const SUITE_IDS: &[&str] = &[
    "adjunction:<T3|T5|T2|arc|Tx:K2|omega:3|omega:5|deltaR|omega2>",
    "products:<functor>",
    "products-box:<functor>",
    "multiplicativity:K<n>",
    "chromatic",
    "arc",
    "circular",
    "poljak-rodl:<n>",
    "strong-mult:<m>,<n>",
    "chains",
    "omega2",
];

fn bad(msg: String) -> GraphError {
    GraphError::InvalidParameter(msg)
}

/// Runs a suite by id with default corpora, overridden by `opts`.
pub fn run(id: &str, opts: &RunOptions) -> Result<Vec<VerificationReport>, GraphError> {
    let cfg = &opts.config;
    let (head, arg) = id.split_once(':').unwrap_or((id, ""));
    let corpus = |directed: bool, default_n: usize| {
        let n = opts.max_n.unwrap_or(default_n);
        if opts.directed.unwrap_or(directed) {
            Corpus::digraphs(n)
        } else {
            Corpus::graphs(n)
        }
    };
    let reports = match head {
        "adjunction" => {
            let adj: Adjunction = arg.parse()?;
            vec![suite_adjunction(adj, &corpus(adj.is_digraph(), 3), cfg)]
        }
        "products" | "products-box" => {
            let f: Functor = arg.parse()?;
            let kind = if head == "products" { ProductKind::Direct } else { ProductKind::Cartesian };
            if f.is_digraph() && kind != ProductKind::Direct {
                return Err(bad("the Cartesian product is defined here for graphs only".into()));
            }
            let directed = opts.directed.unwrap_or(f.is_digraph());
            let pairs = PairCorpus {
                exhaustive: Some(corpus(directed, 3)),
                seeded: Some(Corpus::seeded(directed, 200, 5, 0.5, opts.seed)),
            };
            vec![suite_product_preservation(f, kind, &pairs, cfg)]
        }
        "multiplicativity" => {
            let n: usize = arg
                .strip_prefix('K')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("expected K<n>, got {arg:?}")))?;
            let k = crate::families::complete(n).into_digraph();
            vec![suite_multiplicativity(&k, &corpus(false, 4), cfg)]
        }
        "chromatic" => {
            let n = opts.max_n.unwrap_or(4);
            let pairs = PairCorpus {
                exhaustive: Some(Corpus::graphs(n)),
                seeded: Some(Corpus::seeded(false, 200, n + 2, 0.5, opts.seed)),
            };
            suite_chromatic_identities(&pairs, &Corpus::graphs(3), 3, cfg)
        }
        "arc" => {
            let n = opts.max_n.unwrap_or(4);
            suite_arc_graph(&Corpus::digraphs(n), &Corpus::graphs(n + 1), 8, 3, cfg)
        }
        "circular" => suite_circular(10, cfg),
        "poljak-rodl" => {
            let n: usize = arg.parse().map_err(|_| bad(format!("expected a level, got {arg:?}")))?;
            vec![suite_poljak_rodl(n, cfg).to_report()]
        }
        "strong-mult" => {
            let (m, n) = arg.split_once(',').ok_or_else(|| bad(format!("expected m,n, got {arg:?}")))?;
            let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("not a number: {s:?}")));
            let timeout = cfg.query_timeout.map(|t| t.max(Duration::from_secs(120)));
            suite_strong_mult(parse(m)?, parse(n)?, timeout, &corpus(false, 5), cfg)
        }
        "chains" => {
            let graphs = Corpus::seeded(false, 20, opts.max_n.unwrap_or(6), 0.5, opts.seed);
            suite_functor_chains(&graphs, &ChainParams::default(), cfg)
        }
        "omega2" => suite_omega2(&corpus(false, 4), cfg),
        _ => return Err(bad(format!("unknown suite {id:?}"))),
    };
    Ok(reports)
}

