use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{GraphError, HomError};
use crate::families::complete;
use crate::functor::{Functor, TemplateId};
use crate::graph::{Digraph, Graph};
use crate::hom::ChromaticValue;
use crate::ops;
use crate::pultr::{gamma_with, template_product, ProductKind};

use super::corpus::{iso_classes, Corpus};
use super::report::{as_graph, Counterexample, Expectation, Fact, VerificationReport};
use super::{chi, equiv, hom, timed, timed_all, SuiteConfig};

/// A pair of functors claimed to satisfy `L(G) -> H ⇔ G -> R(H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
}

impl Adjunction {
    /// `Λ_T ⊣ Γ_T`.
    pub fn template(t: TemplateId) -> Self {
        Adjunction { left: Functor::Lambda(t), right: Functor::Gamma(t) }
    }

    /// `Γ_T(len) ⊣ Ω_T(len)`.
    pub fn omega(len: usize) -> Self {
        Adjunction { left: Functor::Gamma(TemplateId::Path(len)), right: Functor::Omega(len) }
    }

    pub fn delta_right() -> Self {
        Adjunction { left: Functor::Gamma(TemplateId::Arc), right: Functor::DeltaRight }
    }

    /// `Γ_T(2)` with `Ω_T(2)`, which is only a partial right adjoint.
    pub fn omega2() -> Self {
        Adjunction { left: Functor::Gamma(TemplateId::Box2), right: Functor::Omega2 }
    }

    pub fn is_digraph(&self) -> bool {
        self.left.is_digraph()
    }

    pub fn expectation(&self) -> Expectation {
        if self.right == Functor::Omega2 {
            Expectation::Fails
        } else {
            Expectation::Holds
        }
    }
}

impl fmt::Display for Adjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -| {}", self.left, self.right)
    }
}

impl FromStr for Adjunction {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "deltaR" => return Ok(Adjunction::delta_right()),
            "omega2" => return Ok(Adjunction::omega2()),
            _ => {}
        }
        if s.starts_with("omega:") {
            if let Functor::Omega(len) = s.parse()? {
                return Ok(Adjunction::omega(len));
            }
        }
        Ok(Adjunction::template(s.parse()?))
    }
}

/// Ordered pairs of inputs: all pairs of an exhaustive corpus, then
/// consecutive members of a seeded one.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PairCorpus {
    pub exhaustive: Option<Corpus>,
    pub seeded: Option<Corpus>,
}

impl PairCorpus {
    pub fn pairs(&self) -> Vec<(Digraph, Digraph)> {
        let mut out = Vec::new();
        if let Some(c) = &self.exhaustive {
            let m = c.members();
            for g in &m {
                for h in &m {
                    out.push((g.clone(), h.clone()));
                }
            }
        }
        if let Some(c) = &self.seeded {
            let m = c.members();
            out.extend(m.chunks_exact(2).map(|p| (p[0].clone(), p[1].clone())));
        }
        out
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(c) = &self.exhaustive {
            parts.push(format!("all pairs of {}", c.describe()));
        }
        if let Some(c) = &self.seeded {
            parts.push(format!("consecutive pairs of {}", c.describe()));
        }
        parts.join("; ")
    }
}

/// Per-instance verdict of a parallel check.
pub(crate) enum Check {
    Pass,
    Fail,
    Skip(String),
}

impl Check {
    pub(crate) fn from_result(r: Result<bool, HomError>) -> Check {
        match r {
            Ok(true) => Check::Pass,
            Ok(false) => Check::Fail,
            Err(e) => Check::Skip(e.to_string()),
        }
    }
}

/// Folds verdicts into `r` in order, building counterexamples for the first
/// failures only.
pub(crate) fn absorb(r: &mut VerificationReport, checks: &[Check], build: impl Fn(usize) -> Counterexample) {
    for (i, c) in checks.iter().enumerate() {
        match c {
            Check::Pass => r.pass(),
            Check::Fail => r.fail(|| build(i)),
            Check::Skip(why) => r.skip(why),
        }
    }
}

const ADJUNCTION_CITE: &str = "thin adjunction \"L(G) → H ⇔ G → R(H)\"";

/// Checks `L(G) -> H ⇔ G -> R(H)` for all ordered pairs of corpus members.
///
/// Hom existence does not change when the untransformed side is relabelled,
/// so `L(G) -> H` is decided once per member `G` and isomorphism type of `H`,
/// and `G -> R(H)` once per type of `G` and member `H`. Every labelled pair is
/// then compared.
pub fn suite_adjunction(adj: Adjunction, corpus: &Corpus, cfg: &SuiteConfig) -> VerificationReport {
    timed(cfg, || {
        let law = format!("{adj}: L(G) -> H iff G -> R(H)");
        let mut r = VerificationReport::new("adjunction", &law, ADJUNCTION_CITE, adj.expectation())
            .with_config("corpus", corpus.describe());
        let t = PairTables::new(adj, corpus.members(), cfg);
        for i in 0..t.members.len() {
            for j in 0..t.members.len() {
                match t.get(i, j) {
                    (Ok(x), Ok(y)) => r.record(x == y, || t.counterexample(i, j)),
                    (Err(e), _) | (_, Err(e)) => r.skip(e),
                }
            }
        }
        r.note(t.summary());
        r
    })
}

/// `L(G) -> H` and `G -> R(H)` for all pairs of members, decided once per
/// member and isomorphism type of the other side.
pub(crate) struct PairTables {
    pub members: Vec<Digraph>,
    pub ls: Vec<Result<Digraph, HomError>>,
    pub rs: Vec<Result<Digraph, HomError>>,
    class: Vec<usize>,
    reps: Vec<usize>,
    a: Vec<Vec<Cell>>,
    b: Vec<Vec<Cell>>,
}

/// A decided query, or the reason it was not decided.
pub(crate) type Cell = Result<bool, Box<str>>;

fn cell(r: Result<bool, HomError>) -> Cell {
    r.map_err(|e| e.to_string().into_boxed_str())
}

impl PairTables {
    pub(crate) fn new(adj: Adjunction, members: Vec<Digraph>, cfg: &SuiteConfig) -> Self {
        let opts = cfg.apply_options();
        let ls: Vec<Result<Digraph, HomError>> = members.par_iter().map(|g| adj.left.apply(g, &opts)).collect();
        let rs: Vec<Result<Digraph, HomError>> = members.par_iter().map(|h| adj.right.apply(h, &opts)).collect();
        let (class, reps) = iso_classes(&members);
        let a: Vec<Vec<Cell>> = ls
            .par_iter()
            .map(|l| match l {
                Ok(l) => reps.iter().map(|&c| cell(hom(l, &members[c], cfg))).collect(),
                Err(e) => vec![cell(Err(e.clone())); reps.len()],
            })
            .collect();
        let b: Vec<Vec<Cell>> = reps
            .par_iter()
            .map(|&c| {
                rs.iter()
                    .map(|rh| match rh {
                        Ok(rh) => cell(hom(&members[c], rh, cfg)),
                        Err(e) => cell(Err(e.clone())),
                    })
                    .collect()
            })
            .collect();
        PairTables { members, ls, rs, class, reps, a, b }
    }

    /// `(L(G_i) -> G_j, G_i -> R(G_j))`.
    pub(crate) fn get(&self, i: usize, j: usize) -> (&Cell, &Cell) {
        (&self.a[i][self.class[j]], &self.b[self.class[i]][j])
    }

    pub(crate) fn counterexample(&self, i: usize, j: usize) -> Counterexample {
        let (g, h) = (&self.members[i], &self.members[j]);
        let (lg, rh) = (self.ls[i].as_ref().unwrap(), self.rs[j].as_ref().unwrap());
        Counterexample::new(format!("members {i} and {j}"))
            .graph("G", g)
            .graph("H", h)
            .graph("L(G)", lg)
            .graph("R(H)", rh)
            .fact(Fact::hom(("L(G)", "H"), lg, h))
            .fact(Fact::hom(("G", "R(H)"), g, rh))
    }

    pub(crate) fn summary(&self) -> String {
        format!("{} isomorphism types among {} members", self.reps.len(), self.members.len())
    }
}

fn product(kind: ProductKind, g: &Digraph, h: &Digraph) -> Result<Digraph, GraphError> {
    if kind == ProductKind::Direct {
        return Ok(ops::direct_product(g, h));
    }
    let (g, h) = (Graph::try_from_digraph(g.clone())?, Graph::try_from_digraph(h.clone())?);
    Ok(match kind {
        ProductKind::Cartesian => ops::cartesian_product(&g, &h),
        _ => ops::lexicographic_product(&g, &h),
    }
    .into_digraph())
}

fn product_symbol(kind: ProductKind) -> &'static str {
    match kind {
        ProductKind::Direct => "x",
        ProductKind::Cartesian => "□",
        ProductKind::Lexicographic => "∘",
    }
}

/// Checks `R(G ⋆ H) <-> R(G) ⋆ R(H)`. Right adjoints preserve `×`; other
/// products are expected to fail.
pub fn suite_product_preservation(
    f: Functor,
    kind: ProductKind,
    pairs: &PairCorpus,
    cfg: &SuiteConfig,
) -> VerificationReport {
    timed(cfg, || {
        let s = product_symbol(kind);
        let law = format!("{f}(G {s} H) <-> {f}(G) {s} {f}(H)");
        let expectation = if kind == ProductKind::Direct { Expectation::Holds } else { Expectation::Open };
        let cite = if kind == ProductKind::Direct {
            "right adjoints \"commute with it, up to homomorphic equivalence\""
        } else {
            "× \"cannot be replaced by the various 'products'\""
        };
        let mut r = VerificationReport::new("product-preservation", &law, cite, expectation)
            .with_config("pairs", pairs.describe());
        let opts = cfg.apply_options();
        let all = pairs.pairs();
        let sides = |g: &Digraph, h: &Digraph| -> Result<(Digraph, Digraph), HomError> {
            let left = f.apply(&product(kind, g, h)?, &opts)?;
            let right = product(kind, &f.apply(g, &opts)?, &f.apply(h, &opts)?)?;
            Ok((left, right))
        };
        let checks: Vec<Check> = all
            .par_iter()
            .map(|(g, h)| Check::from_result(sides(g, h).and_then(|(a, b)| equiv(&a, &b, cfg))))
            .collect();
        absorb(&mut r, &checks, |i| {
            let (g, h) = &all[i];
            let (a, b) = sides(g, h).expect("recomputed sides");
            Counterexample::new(format!("pair {i}"))
                .graph("G", g)
                .graph("H", h)
                .graph("R(G*H)", &a)
                .graph("R(G)*R(H)", &b)
                .fact(Fact::hom(("R(G*H)", "R(G)*R(H)"), &a, &b))
                .fact(Fact::hom(("R(G)*R(H)", "R(G*H)"), &b, &a))
        });
        r.config.insert("pairs checked".into(), all.len().to_string());
        r
    })
}

/// Searches corpus pairs for `G × H -> K` with `G, H -/-> K`.
///
/// Pairs with a `K`-colourable factor satisfy the law trivially and are
/// counted as passes without search. The product test is decided once per
/// pair of isomorphism types.
pub fn suite_multiplicativity(k: &Digraph, corpus: &Corpus, cfg: &SuiteConfig) -> VerificationReport {
    timed(cfg, || {
        let complete_target = *k == complete(k.vertex_count()).into_digraph();
        let expectation = if corpus.is_directed() && complete_target && k.vertex_count() >= 3 {
            Expectation::Fails
        } else {
            Expectation::Holds
        };
        let cite = if corpus.is_directed() {
            "digraphs G_n, H_n \"with n+1 vertices and chromatic number n+1\" with \"χ(G_n×H_n) = n\""
        } else {
            "multiplicativity: G × H → K \"implies the existence of a homomorphism of a factor\""
        };
        let mut r = VerificationReport::new("multiplicativity", "G x H -> K implies G -> K or H -> K", cite, expectation)
            .with_config("corpus", corpus.describe())
            .with_config("K", crate::format::write_text(k).trim_end().replace('\n', "; "));
        let members = corpus.members();
        let colourable: Vec<Result<bool, HomError>> = members.par_iter().map(|g| hom(g, k, cfg)).collect();
        let mut unknown = 0u64;
        let mut hard = Vec::new();
        for (i, c) in colourable.iter().enumerate() {
            match c {
                Ok(true) => {}
                Ok(false) => hard.push(i),
                Err(_) => unknown += 1,
            }
        }
        let total = members.len() as u64;
        let hard_n = hard.len() as u64;
        // pairs with a colourable factor, and pairs touching an undecided member
        let trivial = (total - unknown - hard_n) * (total - unknown - hard_n) + 2 * (total - unknown - hard_n) * hard_n;
        let undecided = total * total - (total - unknown) * (total - unknown);
        for _ in 0..trivial {
            r.pass();
        }
        for _ in 0..undecided {
            r.skip("factor colourability timed out");
        }
        let hard_graphs: Vec<Digraph> = hard.iter().map(|&i| members[i].clone()).collect();
        let (class, reps) = iso_classes(&hard_graphs);
        let table: Vec<Vec<Check>> = reps
            .par_iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| {
                        let p = ops::direct_product(&hard_graphs[a], &hard_graphs[b]);
                        Check::from_result(hom(&p, k, cfg).map(|x| !x))
                    })
                    .collect()
            })
            .collect();
        let checks: Vec<Check> = (0..hard.len())
            .flat_map(|i| (0..hard.len()).map(move |j| (i, j)))
            .map(|(i, j)| match &table[class[i]][class[j]] {
                Check::Pass => Check::Pass,
                Check::Fail => Check::Fail,
                Check::Skip(s) => Check::Skip(s.clone()),
            })
            .collect();
        let n = hard.len();
        absorb(&mut r, &checks, |idx| {
            let (g, h) = (&hard_graphs[idx / n], &hard_graphs[idx % n]);
            let p = ops::direct_product(g, h);
            Counterexample::new(format!("members {} and {}", hard[idx / n], hard[idx % n]))
                .graph("G", g)
                .graph("H", h)
                .graph("K", k)
                .graph("GxH", &p)
                .fact(Fact::hom(("G", "K"), g, k))
                .fact(Fact::hom(("H", "K"), h, k))
                .fact(Fact::hom(("GxH", "K"), &p, k))
        });
        r.note(format!(
            "{hard_n} of {total} members do not map to K; {} product tests over {} isomorphism types",
            reps.len() * reps.len(),
            reps.len()
        ));
        r
    })
}

fn chi_finite(g: &Digraph, cfg: &SuiteConfig) -> Result<usize, HomError> {
    match chi(g, cfg)? {
        ChromaticValue::Finite(k) => Ok(k),
        ChromaticValue::Infinite => Err(GraphError::InvalidParameter("looped graph in corpus".into()).into()),
    }
}

/// Sabidussi's identity, the lexicographic formula, the bound for `×`, and the
/// two exponential facts over `n <= n_max` and the members of `exp_corpus`.
pub fn suite_chromatic_identities(
    pairs: &PairCorpus,
    exp_corpus: &Corpus,
    n_max: usize,
    cfg: &SuiteConfig,
) -> Vec<VerificationReport> {
    timed_all(cfg, || {
        let all = pairs.pairs();
        let desc = pairs.describe();
        let run = |law: &str, cite: &str, f: &(dyn Fn(&Graph, &Graph) -> Result<(bool, Counterexample), HomError> + Sync)| {
            let mut r =
                VerificationReport::new("chromatic-identities", law, cite, Expectation::Holds).with_config("pairs", &desc);
            let res: Vec<Result<(bool, Counterexample), HomError>> =
                all.par_iter().map(|(g, h)| f(&as_graph(g), &as_graph(h))).collect();
            for x in res {
                match x {
                    Ok((ok, c)) => r.record(ok, || c),
                    Err(e) => r.skip(e),
                }
            }
            r
        };
        let sabidussi = run("chi(G □ H) = max(chi(G), chi(H))", "Sabidussi, \"χ(G□H) = max{χ(G), χ(H)}\"", &|g, h| {
            let p = ops::cartesian_product(g, h).into_digraph();
            let (a, b, c) = (chi_finite(g, cfg)?, chi_finite(h, cfg)?, chi_finite(&p, cfg)?);
            let cx = Counterexample::new(format!("chi {a}, {b}, product {c}"))
                .graph("G", g)
                .graph("H", h)
                .graph("G□H", &p)
                .fact(Fact::chromatic("G", g))
                .fact(Fact::chromatic("H", h))
                .fact(Fact::chromatic("G□H", &p));
            Ok((c == a.max(b), cx))
        });
        let lex = run("chi(G ∘ H) = chi(G ∘ K_m), m = chi(H)", "lexicographic, \"χ(G∘H) = χ(G ∘ K_m)\"", &|g, h| {
            let m = chi_finite(h, cfg)?;
            let p = ops::lexicographic_product(g, h).into_digraph();
            let q = ops::lexicographic_product(g, &complete(m)).into_digraph();
            let (a, b) = (chi_finite(&p, cfg)?, chi_finite(&q, cfg)?);
            let cx = Counterexample::new(format!("chi {a} vs {b}"))
                .graph("G", g)
                .graph("H", h)
                .graph("G∘H", &p)
                .graph("G∘K_m", &q)
                .fact(Fact::chromatic("G∘H", &p))
                .fact(Fact::chromatic("G∘K_m", &q));
            Ok((a == b, cx))
        });
        let direct = run("chi(G x H) <= min(chi(G), chi(H))", "\"χ(G×H) ≤ min{χ(G), χ(H)}\"", &|g, h| {
            let p = ops::direct_product(g, h);
            let (a, b, c) = (chi_finite(g, cfg)?, chi_finite(h, cfg)?, chi_finite(&p, cfg)?);
            let cx = Counterexample::new(format!("chi {a}, {b}, product {c}"))
                .graph("G", g)
                .graph("H", h)
                .graph("GxH", &p)
                .fact(Fact::chromatic("GxH", &p));
            Ok((c <= a.min(b), cx))
        });

        let hs = exp_corpus.members();
        let instances: Vec<(usize, usize)> = (0..hs.len()).flat_map(|i| (1..=n_max).map(move |n| (i, n))).collect();
        let exp_desc = format!("{}; n = 1..={n_max}", exp_corpus.describe());
        let mut loops = VerificationReport::new(
            "chromatic-identities",
            "K_n^H has a loop iff chi(H) <= n",
            "proper colourings \"correspond to a loop in K_n^H\"",
            Expectation::Holds,
        )
        .with_config("instances", &exp_desc);
        let mut boxes = VerificationReport::new(
            "chromatic-identities",
            "Gamma_T(□,H)(K_n) is empty if chi(H) > n and <-> K_n otherwise",
            "Γ_T(□,H)(K_n) \"is empty\" when χ(H) > n",
            Expectation::Holds,
        )
        .with_config("instances", &exp_desc);
        let limits = cfg.limits();
        let res: Vec<Result<(bool, bool, Counterexample, Counterexample), HomError>> = instances
            .par_iter()
            .map(|&(i, n)| {
                let h = as_graph(&hs[i]);
                let kn = complete(n).into_digraph();
                let c = chi_finite(&h, cfg)?;
                let exp = gamma_with(&template_product(ProductKind::Direct, &h), &kn, &limits)?;
                let looped = exp.has_loop();
                let cx1 = Counterexample::new(format!("n = {n}, chi(H) = {c}, loop = {looped}"))
                    .graph("H", &h)
                    .graph("K_n^H", &exp)
                    .fact(Fact::chromatic("H", &h))
                    .fact(Fact::chromatic("K_n^H", &exp));
                let bx = gamma_with(&template_product(ProductKind::Cartesian, &h), &kn, &limits)?;
                let ok = if c > n { bx.vertex_count() == 0 } else { equiv(&bx, &kn, cfg)? };
                let cx2 = Counterexample::new(format!("n = {n}, chi(H) = {c}, |Gamma| = {}", bx.vertex_count()))
                    .graph("H", &h)
                    .graph("Gamma", &bx)
                    .graph("K_n", &kn)
                    .fact(Fact::chromatic("H", &h))
                    .fact(Fact::Equivalent { left: "Gamma".into(), right: "K_n".into(), holds: equiv(&bx, &kn, cfg)? });
                Ok((looped == (c <= n), ok, cx1, cx2))
            })
            .collect();
        for x in res {
            match x {
                Ok((a, b, c1, c2)) => {
                    loops.record(a, || c1);
                    boxes.record(b, || c2);
                }
                Err(e) => {
                    loops.skip(&e);
                    boxes.skip(&e);
                }
            }
        }
        vec![sabidussi, lex, direct, loops, boxes]
    })
}
