use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::adjoints::omega2;
use crate::error::HomError;
use crate::families::{circular_complete, complete, cycle};
use crate::fraction::Fraction;
use crate::functor::Functor;
use crate::graph::{Digraph, Graph};
use crate::hom::try_hom_exists;
use crate::pultr::{chain_left, chain_right, gamma_with, lambda_graph, template_box2, template_box2_edgeless_base, ChainOptions};

use super::corpus::Corpus;
use super::laws::{Adjunction, PairTables};
use super::report::{as_graph, Counterexample, Expectation, Fact, VerificationReport};
use super::{equiv, hom, timed_all, SuiteConfig};

/// Parameters of the chain suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainParams {
    /// Odd values for `m` and `n` in `L^m_n`.
    pub left: Vec<usize>,
    /// Odd values for the `Γ` index of `R^n_m`.
    pub right_gamma: Vec<usize>,
    /// Odd values for the `Ω` index of `R^n_m`.
    pub right_omega: Vec<usize>,
    /// `R`-chain checks use only corpus members up to this size.
    pub right_max_vertices: usize,
    /// Odd cycle indices `k` for the `L^m_n(C_k)` readings.
    pub cycles: Vec<usize>,
}

impl Default for ChainParams {
    fn default() -> Self {
        ChainParams {
            left: vec![3, 5, 7],
            right_gamma: vec![3, 5, 7],
            right_omega: vec![3, 5],
            right_max_vertices: 5,
            cycles: vec![1, 3, 5, 7],
        }
    }
}

fn frac(a: usize, b: usize) -> Fraction {
    Fraction::new(a as u64, b as u64).expect("positive")
}

fn chain_opts(cfg: &SuiteConfig) -> ChainOptions {
    ChainOptions { core_reduce: cfg.core_reduce, limits: cfg.limits() }
}

type Table = BTreeMap<(usize, usize), Vec<Result<Digraph, HomError>>>;

/// Applies `f(a, b)` to every member for every parameter pair.
fn table(params: &[(usize, usize)], members: &[Graph], f: impl Fn(usize, usize, &Graph) -> Result<Graph, HomError> + Sync) -> Table {
    params
        .iter()
        .map(|&(a, b)| {
            let col = members.par_iter().map(|g| f(a, b, g).map(Graph::into_digraph)).collect();
            ((a, b), col)
        })
        .collect()
}

fn record_hom(
    r: &mut VerificationReport,
    from: (&str, &Result<Digraph, HomError>),
    to: (&str, &Result<Digraph, HomError>),
    g: &Digraph,
    cfg: &SuiteConfig,
) {
    let (Ok(x), Ok(y)) = (from.1, to.1) else {
        let e = from.1.as_ref().err().or(to.1.as_ref().err()).expect("one side failed");
        r.skip(e);
        return;
    };
    match hom(x, y, cfg) {
        Ok(ok) => r.record(ok, || {
            Counterexample::new(format!("{} -/-> {}", from.0, to.0))
                .graph("G", g)
                .graph(from.0, x)
                .graph(to.0, y)
                .fact(Fact::hom((from.0, to.0), x, y))
        }),
        Err(e) => r.skip(e),
    }
}

/// Monotonicity of `L^m_n` and `R^n_m` in `m/n`, the `T(2)` sandwiches,
/// strictness witnesses, and the two readings of the odd cycle index.
pub fn suite_functor_chains(graphs: &Corpus, params: &ChainParams, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    timed_all(cfg, || {
        let opts = chain_opts(cfg);
        let gs: Vec<Graph> = graphs.members().iter().map(as_graph).collect();
        let small: Vec<Graph> = gs.iter().filter(|g| g.vertex_count() <= params.right_max_vertices).cloned().collect();
        let lp: Vec<(usize, usize)> = params.left.iter().flat_map(|&m| params.left.iter().map(move |&n| (m, n))).collect();
        let rp: Vec<(usize, usize)> =
            params.right_gamma.iter().flat_map(|&n| params.right_omega.iter().map(move |&m| (n, m))).collect();
        let lt = table(&lp, &gs, |m, n, g| chain_left(m, n, g, &opts));
        let rt = table(&rp, &small, |n, m, g| chain_right(n, m, g, &opts));
        let desc = graphs.describe();
        let small_desc = format!("members of {desc} with at most {} vertices", params.right_max_vertices);

        let mut l_mono = VerificationReport::new(
            "functor-chains",
            "m/n <= m'/n' implies L^m_n(G) -> L^m'_n'(G)",
            "chains of functors, \"L^m_n ≤ L^{m′}_{n′} if and only if m/n ≤ m′/n′\"",
            Expectation::Holds,
        )
        .with_config("corpus", &desc)
        .with_config("(m, n)", format!("{lp:?}"));
        for &(m, n) in &lp {
            for &(m2, n2) in &lp {
                if (m, n) == (m2, n2) || frac(m, n) > frac(m2, n2) {
                    continue;
                }
                for (i, g) in gs.iter().enumerate() {
                    let (a, b) = (&lt[&(m, n)][i], &lt[&(m2, n2)][i]);
                    record_hom(&mut l_mono, (&format!("L^{m}_{n}(G)"), a), (&format!("L^{m2}_{n2}(G)"), b), g, cfg);
                }
            }
        }

        let mut r_mono = VerificationReport::new(
            "functor-chains",
            "n/m <= n'/m' implies R^n_m(G) -> R^n'_m'(G)",
            "chains of functors, \"R^m_n ≤ R^{m′}_{n′} if and only if m/n ≤ m′/n′\"",
            Expectation::Holds,
        )
        .with_config("corpus", &small_desc)
        .with_config("(n, m)", format!("{rp:?}"));
        for &(n, m) in &rp {
            for &(n2, m2) in &rp {
                if (n, m) == (n2, m2) || frac(n, m) > frac(n2, m2) {
                    continue;
                }
                for (i, g) in small.iter().enumerate() {
                    let (a, b) = (&rt[&(n, m)][i], &rt[&(n2, m2)][i]);
                    record_hom(&mut r_mono, (&format!("R^{n}_{m}(G)"), a), (&format!("R^{n2}_{m2}(G)"), b), g, cfg);
                }
            }
        }

        // the template with an edgeless P, which differs from T(2) only on edgeless inputs
        let t2 = template_box2_edgeless_base();
        let mut l_sand = VerificationReport::new(
            "functor-chains",
            "L^m_n(G) -> Lambda_T(2)(G) if m/n < 1/2, Lambda_T(2)(G) -> L^m_n(G) if m/n > 1/2",
            "limit functor, \"L^m_n(G) → Λ_T(2)(G) when m/n < 1/2\"",
            Expectation::Holds,
        )
        .with_config("corpus", &desc)
        .with_config("T(2) base", "two vertices, no edge");
        let lam: Vec<Result<Digraph, HomError>> =
            gs.par_iter().map(|g| Ok(lambda_graph(&t2, g)?.into_digraph())).collect();
        for &(m, n) in &lp {
            for (i, g) in gs.iter().enumerate() {
                let l = (format!("L^{m}_{n}(G)"), &lt[&(m, n)][i]);
                let t = ("Lambda_T(2)(G)".to_string(), &lam[i]);
                let (from, to) = if frac(m, n) < frac(1, 2) { (l, t) } else { (t, l) };
                record_hom(&mut l_sand, (&from.0, from.1), (&to.0, to.1), g, cfg);
            }
        }

        let mut r_sand = VerificationReport::new(
            "functor-chains",
            "R^n_m(G) -> Gamma_T(2)(G) if n/m < 2, Gamma_T(2)(G) -> R^n_m(G) if n/m > 2",
            "limit functor, \"Γ_T(2)(G) → R^n_m(G) when n/m > 2\"",
            Expectation::Holds,
        )
        .with_config("corpus", &small_desc)
        .with_config("T(2) base", "two vertices, no edge");
        let gam: Vec<Result<Digraph, HomError>> =
            small.par_iter().map(|g| gamma_with(&t2, g, &cfg.limits())).collect();
        for &(n, m) in &rp {
            for (i, g) in small.iter().enumerate() {
                let r = (format!("R^{n}_{m}(G)"), &rt[&(n, m)][i]);
                let t = ("Gamma_T(2)(G)".to_string(), &gam[i]);
                let (from, to) = if frac(n, m) < frac(2, 1) { (r, t) } else { (t, r) };
                record_hom(&mut r_sand, (&from.0, from.1), (&to.0, to.1), g, cfg);
            }
        }

        vec![l_mono, r_mono, l_sand, r_sand, strictness(&lp, cfg), reading(params, true, cfg), reading(params, false, cfg)]
    })
}

/// For `m/n > m'/n'` some circular complete graph `K` has
/// `L^m_n(K) -/-> L^m'_n'(K)`.
fn strictness(lp: &[(usize, usize)], cfg: &SuiteConfig) -> VerificationReport {
    let opts = chain_opts(cfg);
    let mut r = VerificationReport::new(
        "functor-chains",
        "m/n > m'/n' is witnessed by a circular complete graph K with L^m_n(K) -/-> L^m'_n'(K)",
        "\"witnessed by suitably chosen circular complete graphs\"",
        Expectation::Holds,
    );
    let family: Vec<(usize, usize)> = vec![(3, 1), (5, 2), (7, 3), (7, 2), (8, 3), (9, 4), (12, 5)];
    r.config.insert("candidates".into(), format!("K_s/r for (s, r) in {family:?}"));
    let ks: Vec<Graph> = family.iter().map(|&(s, q)| circular_complete(s, q).expect("s >= 2r")).collect();
    let lt = table(lp, &ks, |m, n, g| chain_left(m, n, g, &opts));
    for &(m, n) in lp {
        for &(m2, n2) in lp {
            if frac(m, n) <= frac(m2, n2) {
                continue;
            }
            let mut found = None;
            let mut err = None;
            for (i, &(s, q)) in family.iter().enumerate() {
                let (Ok(a), Ok(b)) = (&lt[&(m, n)][i], &lt[&(m2, n2)][i]) else { continue };
                match hom(a, b, cfg) {
                    Ok(false) => {
                        found = Some((s, q));
                        break;
                    }
                    Ok(true) => {}
                    Err(e) => err = Some(e),
                }
            }
            match (found, err) {
                (Some((s, q)), _) => {
                    r.pass();
                    if r.notes.len() < 12 {
                        r.note(format!("L^{m}_{n} vs L^{m2}_{n2}: K_{s}/{q}"));
                    }
                }
                (None, Some(e)) => r.skip(e),
                (None, None) => r.fail(|| Counterexample::new(format!("no witness for L^{m}_{n} vs L^{m2}_{n2}"))),
            }
        }
    }
    r
}

/// The two readings of the cycle index in `L^m_n(C) <-> K_{nk/((nk-m)/2)}`:
/// `C = C_k` (`direct`) or `C = C_{2k+1}`. `R^m_n = Γ_T(m) ∘ Ω_T(n)` is checked
/// alongside `L^m_n` for `n` in `right_omega`.
fn reading(params: &ChainParams, direct: bool, cfg: &SuiteConfig) -> VerificationReport {
    let opts = chain_opts(cfg);
    let (law, expectation) = if direct {
        ("L^m_n(C_k) <-> R^m_n(C_k) <-> K_{s/r}, s = nk, r = (nk - m)/2", Expectation::Holds)
    } else {
        ("L^m_n(C_{2k+1}) <-> R^m_n(C_{2k+1}) <-> K_{s/r}, s = nk, r = (nk - m)/2", Expectation::Fails)
    };
    let mut r = VerificationReport::new(
        "functor-chains",
        law,
        "odd cycles under the chains, \"where s = nk and r = (nk−m)/2\"",
        expectation,
    )
    .with_config("k", format!("{:?}", params.cycles))
    .with_config("(m, n)", format!("{:?}", params.left))
    .with_config("R^m_n checked for n in", format!("{:?}", params.right_omega));
    let mut cases = Vec::new();
    for &m in &params.left {
        for &n in &params.left {
            for &k in &params.cycles {
                let len = if direct { k } else { 2 * k + 1 };
                // C_len must exist, k >= m/n, and r a positive integer
                if len < 3 || n * k <= m || (n * k - m) % 2 != 0 {
                    continue;
                }
                cases.push((m, n, k, len));
            }
        }
    }
    let res: Vec<Result<(bool, Counterexample), HomError>> = cases
        .par_iter()
        .map(|&(m, n, k, len)| {
            let c = cycle(len).expect("len >= 3");
            let (s, q) = (n * k, (n * k - m) / 2);
            let target = circular_complete(s, q).expect("s >= 2r").into_digraph();
            let l = chain_left(m, n, &c, &opts)?.into_digraph();
            let ok_l = equiv(&l, &target, cfg)?;
            let (ok_r, rg) = if ok_l && params.right_omega.contains(&n) {
                let rg = Functor::ChainRight { n: m, m: n }.apply(&c, &cfg.apply_options())?;
                (equiv(&rg, &target, cfg)?, Some(rg))
            } else {
                (true, None)
            };
            let mut cx = Counterexample::new(format!("m = {m}, n = {n}, k = {k}: C_{len} vs K_{s}/{q}"))
                .graph("C", &c.clone().into_digraph())
                .graph("K", &target)
                .graph("L(C)", &l)
                .fact(Fact::Equivalent { left: "L(C)".into(), right: "K".into(), holds: ok_l });
            if let Some(rg) = rg {
                cx = cx.graph("R(C)", &rg).fact(Fact::Equivalent { left: "R(C)".into(), right: "K".into(), holds: ok_r });
            }
            Ok((ok_l && ok_r, cx))
        })
        .collect();
    let mut matched = 0;
    for x in res {
        match x {
            Ok((ok, cx)) => {
                matched += ok as usize;
                r.record(ok, || cx);
            }
            Err(e) => r.skip(e),
        }
    }
    r.note(format!("{matched} of {} cases match this reading", cases.len()));
    r
}

/// The partial adjunction of `Γ_T(2)` and `Ω_T(2)`.
pub fn suite_omega2(graphs: &Corpus, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    timed_all(cfg, || {
        let suite = "omega2";
        let desc = graphs.describe();
        let mut fwd = VerificationReport::new(
            suite,
            "Gamma_T(2)(G) -> H implies G -> Omega_T(2)(H)",
            "partial right adjoint, direction (i)",
            Expectation::Holds,
        )
        .with_config("corpus", &desc);
        let t = PairTables::new(Adjunction::omega2(), graphs.members(), cfg);
        for i in 0..t.members.len() {
            for j in 0..t.members.len() {
                match t.get(i, j) {
                    (Ok(x), Ok(y)) => fwd.record(!x || *y, || t.counterexample(i, j)),
                    (Err(e), _) | (_, Err(e)) => fwd.skip(e),
                }
            }
        }
        fwd.note(t.summary());

        let mut inst: Vec<(String, Digraph)> =
            t.members.iter().enumerate().map(|(i, g)| (format!("member {i}"), g.clone())).collect();
        let o4 = omega2(&complete(4)).map(Graph::into_digraph);
        if let Ok(o) = &o4 {
            inst.push(("Omega_T(2)(K_4)".into(), o.clone()));
        }
        let back = |name: &str, target: Graph, citation: &str, expectation: Expectation| {
            let k = target.as_digraph().clone();
            let mut r = VerificationReport::new(
                suite,
                &format!("G -> Omega_T(2)({name}) implies Gamma_T(2)(G) -> {name}"),
                citation,
                expectation,
            )
            .with_config("instances", format!("{desc}, and Omega_T(2)(K_4)"));
            let ok = match omega2(&target) {
                Ok(o) => o.into_digraph(),
                Err(e) => {
                    r.skip(e);
                    return r;
                }
            };
            let t2 = template_box2();
            let res: Vec<Result<Option<Digraph>, HomError>> = inst
                .par_iter()
                .map(|(_, g)| {
                    if !hom(g, &ok, cfg)? {
                        return Ok(None);
                    }
                    Ok(Some(gamma_with(&t2, g, &cfg.limits())?))
                })
                .collect();
            for ((name, g), x) in inst.iter().zip(res) {
                match x.and_then(|gg| match gg {
                    None => Ok((true, None)),
                    Some(gg) => hom(&gg, &k, cfg).map(|b| (b, Some(gg))),
                }) {
                    Ok((ok_, gg)) => r.record(ok_, || {
                        let gg = gg.expect("premise held");
                        Counterexample::new(name.clone())
                            .graph("G", g)
                            .graph("Omega", &ok)
                            .graph("Gamma(G)", &gg)
                            .graph("K", &k)
                            .fact(Fact::hom(("G", "Omega"), g, &ok))
                            .fact(Fact::hom(("Gamma(G)", "K"), &gg, &k))
                    }),
                    Err(e) => r.skip(e),
                }
            }
            r
        };
        let k3 = back("K_3", complete(3), "partial right adjoint, direction (ii) at K_3", Expectation::Holds);
        let k4 = back("K_4", complete(4), "Ω_T(2) \"is not a right adjoint\"", Expectation::Fails);
        let odd: Vec<VerificationReport> = [5, 7]
            .into_iter()
            .map(|len| {
                let c = cycle(len).expect("len >= 3");
                back(&format!("C_{len}"), c, "the adjoint-like behaviour \"extends to the odd cycles\"", Expectation::Holds)
            })
            .collect();

        let mut named = VerificationReport::new(
            suite,
            "K_6 -> Gamma_T(2)(Omega_T(2)(K_4)) and Gamma_T(2)(Omega_T(2)(K_4)) -/-> K_4",
            "\"K_6 → Γ_T(2)(Ω_T(2)(K_4))\"",
            Expectation::Holds,
        );
        match o4.map_err(HomError::from).and_then(|o| gamma_with(&template_box2(), &o, &cfg.limits())) {
            Ok(g) => {
                let (k6, k4g) = (complete(6).into_digraph(), complete(4).into_digraph());
                for (from, to, want, names) in
                    [(&k6, &g, true, ("K_6", "Gamma")), (&g, &k4g, false, ("Gamma", "K_4"))]
                {
                    match try_hom_exists(from, to, &cfg.limits()) {
                        Ok(w) => named.record(w.is_some() == want, || {
                            Counterexample::new(format!("{} -> {}", names.0, names.1))
                                .graph(names.0, from)
                                .graph(names.1, to)
                                .fact(Fact::hom(names, from, to))
                        }),
                        Err(e) => named.skip(e),
                    }
                }
                named.note(format!("Gamma_T(2)(Omega_T(2)(K_4)) has {} vertices", g.vertex_count()));
            }
            Err(e) => named.skip(e),
        }
        [vec![fwd, k3, k4], odd, vec![named]].concat()
    })
}
