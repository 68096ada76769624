use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::mask_ones;
use crate::error::HomError;
use crate::families::{combinations, complete, pendant_join};
use crate::format::{parse_text, write_text};
use crate::graph::{Digraph, Graph};
use crate::hom::{chromatic_number, odd_girth, try_hom_exists, ChromaticValue, SearchLimits};
use crate::ops;

use super::corpus::{iso_classes, Corpus};
use super::report::{Counterexample, Expectation, Fact, VerificationReport};
use super::{chi, hom, timed, timed_all, SuiteConfig};

/// The outcome of the exhaustive search for digraphs `G, H` on `n + 1`
/// vertices with `χ(G) = χ(H) = n + 1` and `χ(G × H) = n`.
///
/// `min_product_chi` is the least `χ(G × H)` over the searched pairs: an
/// upper bound for `ψ(n + 1)` relative to this corpus only, not its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoljakRodlRecord {
    pub n: usize,
    /// Labelled factor digraphs with `χ = n + 1`.
    pub factors: usize,
    /// Their isomorphism types; one product is searched per unordered pair.
    pub types: usize,
    pub products_searched: usize,
    pub skipped: usize,
    pub min_product_chi: Option<ChromaticValue>,
    /// The first pair, in corpus order, with `χ(G × H) = n`.
    pub pair: Option<(String, String)>,
    pub chi_factors: Option<(ChromaticValue, ChromaticValue)>,
    pub chi_product: Option<ChromaticValue>,
}

impl PoljakRodlRecord {
    /// Recomputes the recorded chromatic numbers from the stored texts.
    pub fn revalidate(&self) -> Result<(), String> {
        let Some((g, h)) = &self.pair else {
            return Ok(());
        };
        let load = |t: &str| parse_text(t).map(|(_, d)| d).map_err(|e| e.to_string());
        let (g, h) = (load(g)?, load(h)?);
        let got = (chromatic_number(&g), chromatic_number(&h), chromatic_number(&ops::direct_product(&g, &h)));
        if Some((got.0, got.1)) != self.chi_factors || Some(got.2) != self.chi_product {
            return Err(format!("recomputed chi values {got:?} differ from the record"));
        }
        if got.2 != ChromaticValue::Finite(self.n) || got.0 != ChromaticValue::Finite(self.n + 1) {
            return Err("the pair does not have the advertised chromatic numbers".into());
        }
        Ok(())
    }

    /// For `n >= 3` a pair must exist; for `n <= 2` none may.
    pub fn to_report(&self) -> VerificationReport {
        let n = self.n;
        let (law, cite) = if n >= 3 {
            (
                format!("some digraphs G, H on {} vertices with chi {} have chi(GxH) = {n}", n + 1, n + 1),
                "digraphs \"both with n+1 vertices and chromatic number n+1, such that χ(G_n×H_n) = n\"",
            )
        } else {
            (
                format!("no digraphs G, H on {} vertices with chi {} have chi(GxH) = {n}", n + 1, n + 1),
                "K_1 and K_2 are \"multiplicative both in G and D\"",
            )
        };
        let mut r = VerificationReport::new("poljak-rodl", &law, cite, Expectation::Holds)
            .with_config("n", n)
            .with_config("factors", self.factors)
            .with_config("isomorphism types", self.types);
        if self.skipped > 0 {
            r.skip(format!("{} products timed out", self.skipped));
        }
        let found = self.pair.is_some();
        let holds = found == (n >= 3);
        r.record(holds, || match &self.pair {
            Some((g, h)) => {
                let load = |t: &str| parse_text(t).expect("own output").1;
                let (g, h) = (load(g), load(h));
                let p = ops::direct_product(&g, &h);
                Counterexample::new("a pair was found")
                    .graph("G", &g)
                    .graph("H", &h)
                    .graph("GxH", &p)
                    .fact(Fact::chromatic("G", &g))
                    .fact(Fact::chromatic("H", &h))
                    .fact(Fact::chromatic("GxH", &p))
            }
            None => Counterexample::new(format!("no pair among {} products", self.products_searched)),
        });
        if let Some(m) = self.min_product_chi {
            r.note(format!(
                "least chi(GxH) over the searched pairs: {m} (an upper bound for psi({}) on this corpus only)",
                n + 1
            ));
        }
        if let Some(e) = self.revalidate().err() {
            r.fail(|| Counterexample::new(format!("record does not re-validate: {e}")));
        }
        r
    }
}

/// Exhaustive search over digraph pairs on `n + 1` vertices with chromatic
/// number `n + 1`.
pub fn suite_poljak_rodl(n: usize, cfg: &SuiteConfig) -> PoljakRodlRecord {
    let size = n + 1;
    let factors: Vec<Digraph> = Corpus::digraphs(size)
        .members()
        .into_iter()
        .filter(|g| g.vertex_count() == size && chromatic_number(g) == ChromaticValue::Finite(size))
        .collect();
    let (_, reps) = iso_classes(&factors);
    let pairs: Vec<(usize, usize)> = (0..reps.len()).flat_map(|a| (a..reps.len()).map(move |b| (a, b))).collect();
    let chis: Vec<Result<ChromaticValue, HomError>> = pairs
        .par_iter()
        .map(|&(a, b)| chi(&ops::direct_product(&factors[reps[a]], &factors[reps[b]]), cfg))
        .collect();
    let mut min = None;
    let mut first = None;
    let mut skipped = 0;
    for (&(a, b), c) in pairs.iter().zip(&chis) {
        match c {
            Ok(c) => {
                if min.is_none_or(|m| *c < m) {
                    min = Some(*c);
                }
                if *c == ChromaticValue::Finite(n) && first.is_none() {
                    first = Some((reps[a], reps[b], *c));
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let (pair, chi_factors, chi_product) = match first {
        Some((a, b, c)) => (
            Some((write_text(&factors[a]), write_text(&factors[b]))),
            Some((chromatic_number(&factors[a]), chromatic_number(&factors[b]))),
            Some(c),
        ),
        None => (None, None, None),
    };
    PoljakRodlRecord {
        n,
        factors: factors.len(),
        types: reps.len(),
        products_searched: pairs.len(),
        skipped,
        min_product_chi: min,
        pair,
        chi_factors,
        chi_product,
    }
}

/// Vertex sets of the shortest odd cycles of `g`.
fn shortest_odd_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let Some(len) = odd_girth(g) else { return Vec::new() };
    combinations(g.vertex_count(), len)
        .into_iter()
        .map(|m| mask_ones(m).collect::<Vec<usize>>())
        .filter(|s| {
            let sub = ops::induced_subgraph_graph(g, s).expect("in range");
            odd_girth(&sub) == Some(len)
        })
        .collect()
}

/// The subgraph of `G × H` induced by `V(G) × H'` and `G' × V(H)`, with
/// `(g, h)` numbered `g·|H| + h`.
fn strong_subgraph(g: &Graph, h: &Graph, g_sub: &[usize], h_sub: &[usize]) -> Digraph {
    let p = ops::direct_product_graph(g, h);
    let nh = h.vertex_count();
    let keep: Vec<usize> = (0..g.vertex_count() * nh)
        .filter(|&v| g_sub.contains(&(v / nh)) || h_sub.contains(&(v % nh)))
        .collect();
    ops::induced_subgraph(&p, &keep).expect("in range")
}

/// `L_{m,n} -> K_4` and `G_{m,n} -/-> K_4` for the pendant construction, and
/// the strong form of multiplicativity of `K_3` on pairs from `graphs`.
pub fn suite_strong_mult(
    m: usize,
    n: usize,
    timeout: Option<Duration>,
    graphs: &Corpus,
    cfg: &SuiteConfig,
) -> Vec<VerificationReport> {
    let k4 = complete(4).into_digraph();
    let gmn = match pendant_join(m, n) {
        Ok(g) => g,
        Err(e) => {
            let mut r = VerificationReport::new("strong-multiplicativity", "G_{m,n}", "", Expectation::Holds);
            r.skip(e);
            return vec![r];
        }
    };
    let mut out = Vec::new();
    let k72: Vec<usize> = (0..7).collect();
    out.push(timed(cfg, || {
        let mut r = VerificationReport::new(
            "strong-multiplicativity",
            &format!("L_{{{m},{n}}} -> K_4"),
            "\"For n ≥ 3 and m arbitrary, L_{m,n} → K_4\"",
            Expectation::Holds,
        )
        .with_config("m, n", format!("{m}, {n}"))
        .with_config("search timeout", timeout.map_or("none".into(), |t| format!("{} ms", t.as_millis())));
        // V(G × K_{7/2}) ∪ V(K_{7/2} × G) inside G × G
        let l = strong_subgraph(&gmn, &gmn, &k72, &k72);
        r.note(format!("L has {} vertices and {} arcs", l.vertex_count(), l.arc_count()));
        let limits = SearchLimits { timeout, ..SearchLimits::default() };
        match try_hom_exists(&l, &k4, &limits) {
            Ok(w) => {
                let found = w.is_some();
                r.record(found, || {
                    Counterexample::new("no 4-colouring of L")
                        .graph("L", &l)
                        .graph("K_4", &k4)
                        .fact(Fact::Hom { from: "L".into(), to: "K_4".into(), exists: false, witness: None })
                });
                if let Some(w) = w {
                    r.note(format!("witness: {w}"));
                }
            }
            Err(e) => r.skip(format!("{e} after {}", timeout.map_or("no limit".into(), |t| format!("{} ms", t.as_millis())))),
        }
        r
    }));
    out.push(timed(cfg, || {
        let mut r = VerificationReport::new(
            "strong-multiplicativity",
            &format!("G_{{{m},{n}}} -/-> K_4"),
            "\"G_{m,n} ↛ K_4\"",
            Expectation::Holds,
        )
        .with_config("m, n", format!("{m}, {n}"));
        match hom(&gmn, &k4, cfg) {
            Ok(x) => r.record(!x, || {
                Counterexample::new("G maps to K_4").graph("G", &gmn).graph("K_4", &k4).fact(Fact::hom(("G", "K_4"), &gmn, &k4))
            }),
            Err(e) => r.skip(e),
        }
        r
    }));
    out.extend(timed_all(cfg, || vec![strong_form(graphs, cfg)]));
    out
}

fn strong_form(graphs: &Corpus, cfg: &SuiteConfig) -> VerificationReport {
    let k3 = complete(3).into_digraph();
    let mut r = VerificationReport::new(
        "strong-multiplicativity",
        "connected G, H with odd cycles: L -> K_3 implies G -> K_3 or H -> K_3",
        "El-Zahar and Sauer, \"then G → K_3 or H → K_3\"",
        Expectation::Holds,
    )
    .with_config("corpus", graphs.describe())
    .with_config("odd cycles", "every shortest odd cycle of each factor");
    let members: Vec<Graph> = graphs
        .members()
        .into_iter()
        .map(|d| Graph::try_from_digraph(d).expect("graph corpus"))
        .filter(|g| g.weak_components().len() == 1 && odd_girth(g).is_some())
        .collect();
    let colourable: Vec<Result<bool, HomError>> = members.par_iter().map(|g| hom(g, &k3, cfg)).collect();
    let mut hard = Vec::new();
    for (i, c) in colourable.iter().enumerate() {
        match c {
            Ok(true) => {}
            Ok(false) => hard.push(i),
            Err(e) => r.skip(e),
        }
    }
    let easy = (members.len() - hard.len()) as u64;
    for _ in 0..easy * members.len() as u64 * 2 - easy * easy {
        r.pass();
    }
    let hard_graphs: Vec<Graph> = hard.iter().map(|&i| members[i].clone()).collect();
    let cycles: Vec<Vec<Vec<usize>>> = hard_graphs.iter().map(shortest_odd_cycles).collect();
    let digraphs: Vec<Digraph> = hard_graphs.iter().map(|g| g.as_digraph().clone()).collect();
    let (class, reps) = iso_classes(&digraphs);
    // per pair of types: the first cycle choice with L -> K_3, if any
    let table: Vec<Vec<Result<Option<(usize, usize)>, HomError>>> = reps
        .par_iter()
        .map(|&a| {
            reps.iter()
                .map(|&b| {
                    for (x, gc) in cycles[a].iter().enumerate() {
                        for (y, hc) in cycles[b].iter().enumerate() {
                            let l = strong_subgraph(&hard_graphs[a], &hard_graphs[b], gc, hc);
                            if hom(&l, &k3, cfg)? {
                                return Ok(Some((x, y)));
                            }
                        }
                    }
                    Ok(None)
                })
                .collect()
        })
        .collect();
    for i in 0..hard.len() {
        for j in 0..hard.len() {
            match &table[class[i]][class[j]] {
                Ok(None) => r.pass(),
                Ok(Some(_)) => r.fail(|| {
                    // recompute on the labelled pair
                    let (g, h) = (&hard_graphs[i], &hard_graphs[j]);
                    let (gc, hc) = cycles[i]
                        .iter()
                        .flat_map(|gc| cycles[j].iter().map(move |hc| (gc, hc)))
                        .find(|(gc, hc)| hom(&strong_subgraph(g, h, gc, hc), &k3, cfg).unwrap_or(false))
                        .expect("isomorphic pair has a witness");
                    let l = strong_subgraph(g, h, gc, hc);
                    Counterexample::new(format!("cycles {gc:?} and {hc:?}"))
                        .graph("G", g)
                        .graph("H", h)
                        .graph("L", &l)
                        .graph("K_3", &k3)
                        .fact(Fact::hom(("L", "K_3"), &l, &k3))
                        .fact(Fact::hom(("G", "K_3"), g, &k3))
                        .fact(Fact::hom(("H", "K_3"), h, &k3))
                }),
                Err(e) => r.skip(e),
            }
        }
    }
    r.note(format!(
        "{} connected members with odd cycles, {} not 3-colourable",
        members.len(),
        hard.len()
    ));
    r
}
