use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use thinhom::families::{circular_complete, complete, cycle, Family};
use thinhom::format::{parse_text, write_text};
use thinhom::functor::{ApplyOptions, Functor};
use thinhom::hom::{
    chromatic_number, circular_chromatic_number, core_reduce, hom_equivalent, hom_exists,
};
use thinhom::ops::{direct_product, induced_subgraph, orient, reverse, symmetrize, OrientRule};
use thinhom::verify::{self, Corpus, ReportDocument, RunOptions};
use thinhom::{ChromaticValue, Digraph, Fraction, Graph};

fn digraph(max_n: usize, loops: bool) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&i| bits[i] && (loops || i / n != i % n))
                .map(|i| (i / n, i % n));
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            Graph::new(n, pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e)).unwrap()
        })
    })
}

fn arc_set(d: &Digraph) -> BTreeSet<(usize, usize)> {
    d.arcs().collect()
}

/// Tries all `|V(H)|^|V(G)|` maps.
fn brute_hom(g: &Digraph, h: &Digraph) -> bool {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    let mut map = vec![0usize; n];
    loop {
        if g.arcs().all(|(u, v)| h.has_arc(map[u], map[v])) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn apply(f: &str, g: &Digraph) -> Digraph {
    f.parse::<Functor>().unwrap().apply(g, &ApplyOptions::default()).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn hom_matches_brute_force(g in digraph(4, true), h in digraph(4, true)) {
        let got = hom_exists(&g, &h);
        prop_assert_eq!(got.is_some(), brute_hom(&g, &h));
        if let Some(w) = got {
            prop_assert_eq!(w.map().len(), g.vertex_count());
            prop_assert!(g.arcs().all(|(u, v)| h.has_arc(w.image(u), w.image(v))));
        }
    }

    #[test]
    fn witnesses_compose(g in digraph(4, false), h in digraph(4, false), k in digraph(4, false)) {
        if let (Some(a), Some(b)) = (hom_exists(&g, &h), hom_exists(&h, &k)) {
            prop_assert!(a.then(&b).is_valid(&g, &k));
        }
    }

    #[test]
    fn product_counts(g in digraph(4, true), h in digraph(4, true)) {
        let p = direct_product(&g, &h);
        prop_assert_eq!(p.vertex_count(), g.vertex_count() * h.vertex_count());
        prop_assert_eq!(p.arc_count(), g.arc_count() * h.arc_count());
        prop_assert!(p.arcs().all(|(u, v)| u < p.vertex_count() && v < p.vertex_count()));
    }

    #[test]
    fn product_chi_at_most_min(g in graph(5), h in graph(5)) {
        let p = direct_product(&g, &h);
        prop_assert!(chromatic_number(&p) <= chromatic_number(&g).min(chromatic_number(&h)));
    }

    #[test]
    fn chi_is_infinite_iff_loop(g in digraph(5, true)) {
        prop_assert_eq!(chromatic_number(&g) == ChromaticValue::Infinite, g.has_loop());
    }

    #[test]
    fn circular_chi_sandwich(g in graph(5)) {
        let cc = circular_chromatic_number(&g).unwrap();
        let chi = chromatic_number(&g).finite().unwrap() as u64;
        prop_assert!(cc.num() <= chi * cc.den());
        prop_assert!(chi * cc.den() < cc.num() + cc.den());
    }

    #[test]
    fn circular_chi_matches_wide_scan(g in graph(5)) {
        let n = g.vertex_count();
        let mut best: Option<(u64, u64)> = None;
        if g.arc_count() == 0 {
            best = Some((1, 1));
        }
        for s in 2..=2 * n.max(2) {
            for r in 1..=s / 2 {
                let k = circular_complete(s, r).unwrap();
                let better = best.is_none_or(|(bs, br)| (s as u64) * br < bs * r as u64);
                if better && hom_exists(&g, &k).is_some() {
                    best = Some((s as u64, r as u64));
                }
            }
        }
        let (s, r) = best.unwrap();
        prop_assert_eq!(circular_chromatic_number(&g).unwrap(), Fraction::new(s, r).unwrap());
    }

    #[test]
    fn core_is_equivalent_and_minimal(g in digraph(5, true)) {
        let c = core_reduce(&g);
        prop_assert!(c.vertex_count() <= g.vertex_count());
        prop_assert!(hom_equivalent(&g, &c));
        for v in 0..c.vertex_count() {
            let keep: Vec<usize> = (0..c.vertex_count()).filter(|&u| u != v).collect();
            let smaller = induced_subgraph(&c, &keep).unwrap();
            prop_assert!(hom_exists(&c, &smaller).is_none());
        }
    }

    #[test]
    fn orientation_round_trips(g in graph(6), d in digraph(5, true)) {
        let o = orient(&g, OrientRule::LowToHigh).unwrap();
        prop_assert_eq!(arc_set(&symmetrize(&o)), arc_set(&g));
        prop_assert_eq!(arc_set(&reverse(&reverse(&d))), arc_set(&d));
    }

    #[test]
    fn orientation_partitions_products(g in graph(4), h in graph(4)) {
        let og = orient(&g, OrientRule::LowToHigh).unwrap();
        let oh = orient(&h, OrientRule::LowToHigh).unwrap();
        let all = arc_set(&direct_product(&og, &h));
        let fwd = arc_set(&direct_product(&og, &oh));
        let back = arc_set(&direct_product(&og, &reverse(&oh)));
        prop_assert!(fwd.is_disjoint(&back));
        prop_assert_eq!(all, fwd.union(&back).copied().collect::<BTreeSet<_>>());
    }

    #[test]
    fn text_format_round_trips(d in digraph(6, true)) {
        let (_, back) = parse_text(&write_text(&d)).unwrap();
        prop_assert_eq!(arc_set(&back), arc_set(&d));
        prop_assert_eq!(back.vertex_count(), d.vertex_count());
    }

    #[test]
    fn fractions_reduce_and_order(a in 1u64..200, b in 1u64..200, c in 1u64..200, d in 1u64..200) {
        let (x, y) = (Fraction::new(a, b).unwrap(), Fraction::new(c, d).unwrap());
        let gcd = |mut p: u64, mut q: u64| { while q != 0 { (p, q) = (q, p % q); } p };
        prop_assert_eq!(gcd(x.num(), x.den()), 1);
        prop_assert_eq!(x.num() * b, a * x.den());
        prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn thin_adjunction_graph_templates(g in graph(3), h in graph(3), t in prop::sample::select(vec!["T3", "T5", "T2", "Tx:K2"])) {
        let left = hom_exists(&apply(&format!("lambda:{t}"), &g), &h).is_some();
        let right = hom_exists(&g, &apply(&format!("gamma:{t}"), &h)).is_some();
        prop_assert_eq!(left, right, "template {}", t);
    }

    #[test]
    fn thin_adjunction_arc(g in digraph(3, true), h in digraph(3, true)) {
        let left = hom_exists(&apply("deltaL", &g), &h).is_some();
        let right = hom_exists(&g, &apply("delta", &h)).is_some();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn right_adjoint_laws(g in graph(4), h in graph(3)) {
        for (gamma, omega) in [("gamma:T3", "omega:3"), ("gamma:T5", "omega:5")] {
            let left = hom_exists(&apply(gamma, &g), &h).is_some();
            let right = hom_exists(&g, &apply(omega, &h)).is_some();
            prop_assert_eq!(left, right, "{} / {}", gamma, omega);
        }
        let left = hom_exists(&apply("gamma:T2", &g), &h).is_some();
        prop_assert!(!left || hom_exists(&g, &apply("omega2", &h)).is_some());
    }

    #[test]
    fn delta_right_adjoint(g in digraph(3, true), h in digraph(3, true)) {
        let left = hom_exists(&apply("delta", &g), &h).is_some();
        let right = hom_exists(&g, &apply("deltaR", &h)).is_some();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gamma_t3_is_walks_of_length_three(h in graph(6)) {
        let out = apply("gamma:T3", &h);
        let n = h.vertex_count();
        prop_assert_eq!(out.vertex_count(), n);
        let step = |from: &BTreeSet<usize>| -> BTreeSet<usize> {
            from.iter().flat_map(|&u| h.out_neighbors(u).iter().map(|&v| v as usize)).collect()
        };
        for u in 0..n {
            let ends = step(&step(&step(&BTreeSet::from([u]))));
            for v in 0..n {
                prop_assert_eq!(out.has_arc(u, v), ends.contains(&v));
            }
        }
    }

    #[test]
    fn composite_identities(g in graph(4)) {
        let d: &Digraph = &g;
        prop_assert!(hom_equivalent(&apply("gamma:T3", &apply("omega:3", d)), d));
        prop_assert!(hom_equivalent(&apply("gamma:T3", &apply("lambda:T3", d)), d));
    }

    #[test]
    fn functors_are_monotone(g in graph(4), h in graph(4)) {
        if hom_exists(&g, &h).is_some() {
            for f in ["gamma:T3", "lambda:T3", "gamma:T2", "omega:3"] {
                prop_assert!(hom_exists(&apply(f, &g), &apply(f, &h)).is_some(), "{}", f);
            }
        }
    }

    #[test]
    fn family_descriptors_round_trip(
        kind in 0usize..8,
        a in 1usize..7,
        b in 1usize..4,
    ) {
        let desc = match kind {
            0 => format!("K:{a}"),
            1 => format!("C:{}", a + 2),
            2 => format!("P:{a}"),
            3 => format!("Kc:{}/{b}", 2 * b + a),
            4 => format!("Kneser:{},{b}", 2 * b + a),
            5 => format!("TT:{a}"),
            6 => format!("Gmn:{a},{b}"),
            _ => format!("S:{},{b}", a + b),
        };
        let fam: Family = desc.parse().unwrap();
        prop_assert_eq!(fam.to_string(), desc.clone());
        let Ok(built) = fam.build() else { return Ok(()); };
        prop_assert!(built.arcs().all(|(u, v)| u < built.vertex_count() && v < built.vertex_count()));
        let (_, back) = parse_text(&write_text(&built)).unwrap();
        prop_assert_eq!(arc_set(&back), arc_set(&built));
    }
}

#[test]
fn circular_complete_specialisations() {
    for s in 2..9 {
        let a = circular_complete(s, 1).unwrap();
        assert_eq!(arc_set(&a), arc_set(&complete(s)));
    }
    for r in 1..6 {
        let k = circular_complete(2 * r + 1, r).unwrap();
        let c = cycle(2 * r + 1).unwrap();
        assert_eq!((k.vertex_count(), k.arc_count()), (c.vertex_count(), c.arc_count()));
        assert!(hom_equivalent(&k, &c));
    }
}

#[test]
fn exhaustive_corpora_have_advertised_counts() {
    for (directed, max_n) in [(false, 5), (true, 3)] {
        let corpus = if directed { Corpus::digraphs(max_n) } else { Corpus::graphs(max_n) };
        let mut by_size: BTreeMap<usize, u64> = BTreeMap::new();
        for g in corpus.members() {
            *by_size.entry(g.vertex_count()).or_default() += 1;
            assert!(!g.has_loop());
            assert!(directed || g.is_symmetric());
        }
        for n in 1..=max_n {
            let pairs = (n * (n - 1) / 2) as u32 * if directed { 2 } else { 1 };
            assert_eq!(by_size.get(&n).copied(), Some(1u64 << pairs), "n = {n}");
        }
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let opts = RunOptions { max_n: Some(3), ..RunOptions::default() };
    let doc = |id: &str| {
        let mut reports = verify::run(id, &opts).unwrap();
        for r in &mut reports {
            r.wall_time = Default::default();
        }
        ReportDocument::new(BTreeMap::from([("suite".to_string(), id.to_string())]), reports)
    };
    for id in ["adjunction:T3", "products:delta", "arc"] {
        let (a, b) = (doc(id), doc(id));
        assert_eq!(a.to_json(), b.to_json(), "{id}");
        assert_eq!(ReportDocument::from_json(&a.to_json()).unwrap(), a, "{id}");
    }
}

#[test]
fn counterexamples_revalidate() {
    let reports = verify::run("arc", &RunOptions::default()).unwrap();
    let failing: Vec<_> = reports.iter().filter(|r| r.violations > 0).collect();
    assert!(!failing.is_empty());
    for r in failing {
        assert!(!r.counterexamples.is_empty());
        for c in &r.counterexamples {
            c.revalidate().unwrap();
        }
    }
}
