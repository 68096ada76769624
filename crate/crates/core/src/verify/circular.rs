use rayon::prelude::*;

use crate::adjoints::{omega2, omega3, omega_odd};
use crate::error::HomError;
use crate::families::{circular_complete, complete, cycle};
use crate::fraction::Fraction;
use crate::graph::{Digraph, Graph};
use crate::hom::{try_circular_chromatic_number, ChromaticValue};
use crate::ops;
use crate::pultr::{gamma_with, template_path};

use super::laws::{absorb, Check};
use super::report::{Counterexample, Expectation, Fact, VerificationReport};
use super::{chi, equiv, hom, timed_all, SuiteConfig};

fn kc(s: usize, r: usize) -> Digraph {
    circular_complete(s, r).expect("s >= 2r").into_digraph()
}

/// Reduced `s/r` with `s/r >= 2` and `s <= s_max`, in increasing `(s, r)`.
fn fractions(s_max: usize) -> Vec<(usize, usize)> {
    (2..=s_max)
        .flat_map(|s| (1..=s / 2).map(move |r| (s, r)))
        .filter(|&(s, r)| Fraction::new(s as u64, r as u64).map(|f| f.den() as usize == r).unwrap_or(false))
        .collect()
}

fn gamma3(g: &Digraph, cfg: &SuiteConfig) -> Result<Digraph, HomError> {
    gamma_with(&template_path(3).expect("odd"), g, &cfg.limits())
}

fn equivalence(left: (&str, &Digraph), right: (&str, &Digraph)) -> Counterexample {
    Counterexample::new(format!("{} vs {}", left.0, right.0))
        .graph(left.0, left.1)
        .graph(right.0, right.1)
        .fact(Fact::hom((left.0, right.0), left.1, right.1))
        .fact(Fact::hom((right.0, left.0), right.1, left.1))
}

type Named<'a> = Box<dyn Fn() -> Result<(bool, Counterexample), HomError> + Sync + 'a>;
type Build<'a> = Box<dyn Fn() -> Result<Digraph, HomError> + Sync + 'a>;

/// Named equivalences and values from the circular and adjoint identities.
fn named(cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new(
        "circular",
        "named identities",
        "Ω_T(3)(K_3) ↔ C_9, Ω_T(5)(K_3) ↔ C_15, \"Γ_T(3)(K_{12/5}) ↔ K_4\", \"Ω_T(2)(K_3) = K_{12/5}\", \"Ω_T(3)(K_4) is 4-chromatic\"",
        Expectation::Holds,
    );
    fn eq<'a>(ln: &'static str, l: Build<'a>, rn: &'static str, rg: Digraph, cfg: &'a SuiteConfig) -> Named<'a> {
        Box::new(move || {
            let lg = l()?;
            Ok((equiv(&lg, &rg, cfg)?, equivalence((ln, &lg), (rn, &rg))))
        })
    }
    let k3 = complete(3);
    let k3b = k3.clone();
    let k3c = k3.clone();
    let items: Vec<(&'static str, Named<'_>)> = vec![
        ("omega3(K_3) <-> C_9", eq("omega3(K_3)", Box::new(move || Ok(omega3(&k3)?.into_digraph())), "C_9", cyc(9), cfg)),
        (
            "omega_odd(2, K_3) <-> C_15",
            eq("omega_odd(2,K_3)", Box::new(move || Ok(omega_odd(2, &k3b)?.into_digraph())), "C_15", cyc(15), cfg),
        ),
        (
            "omega3(C_5) <-> C_15",
            eq("omega3(C_5)", Box::new(|| Ok(omega3(&cycle(5).expect("k >= 3"))?.into_digraph())), "C_15", cyc(15), cfg),
        ),
        (
            "gamma(T3, K_{7/3}) <-> K_{7/2}",
            eq("gamma(T3,K_7/3)", Box::new(move || gamma3(&kc(7, 3), cfg)), "K_7/2", kc(7, 2), cfg),
        ),
        (
            "gamma(T3, K_{12/5}) <-> K_4",
            eq("gamma(T3,K_12/5)", Box::new(move || gamma3(&kc(12, 5), cfg)), "K_4", complete(4).into_digraph(), cfg),
        ),
        (
            "gamma(T3, C_5) <-> K_5",
            eq("gamma(T3,C_5)", Box::new(move || gamma3(&cyc(5), cfg)), "K_5", complete(5).into_digraph(), cfg),
        ),
        (
            "omega2(K_3) <-> K_{12/5}",
            eq("omega2(K_3)", Box::new(move || Ok(omega2(&k3c)?.into_digraph())), "K_12/5", kc(12, 5), cfg),
        ),
        (
            "chi(omega3(K_4)) = 4",
            Box::new(move || {
                let o = omega3(&complete(4))?.into_digraph();
                let c = chi(&o, cfg)?;
                let cx = Counterexample::new(format!("chi = {c}")).graph("omega3(K_4)", &o).fact(Fact::chromatic("omega3(K_4)", &o));
                Ok((c == ChromaticValue::Finite(4), cx))
            }),
        ),
    ];
    let res: Vec<Result<(bool, Counterexample), HomError>> = items.par_iter().map(|(_, f)| f()).collect();
    for ((name, _), x) in items.iter().zip(res) {
        match x {
            Ok((ok, cx)) => r.record(ok, || cx),
            Err(e) => r.skip(format!("{name}: {e}")),
        }
    }
    r.config.insert("identities".into(), items.iter().map(|(n, _)| *n).collect::<Vec<_>>().join("; "));
    r
}

fn cyc(k: usize) -> Digraph {
    cycle(k).expect("k >= 3").into_digraph()
}

/// The circular complete graph identities for reduced fractions with
/// numerator at most `s_max`.
pub fn suite_circular(s_max: usize, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    timed_all(cfg, || {
        let fr = fractions(s_max);
        let range = format!("reduced s/r >= 2 with s <= {s_max}");
        let frac = |(s, r): (usize, usize)| Fraction::new(s as u64, r as u64).expect("positive");

        let mut order = VerificationReport::new(
            "circular",
            "K_{s/r} -> K_{s'/r'} iff s/r <= s'/r'",
            "circular complete graphs, \"if and only if s/r ≤ s′/r′\"",
            Expectation::Holds,
        )
        .with_config("fractions", &range);
        let pairs: Vec<((usize, usize), (usize, usize))> =
            fr.iter().flat_map(|&a| fr.iter().map(move |&b| (a, b))).collect();
        let checks: Vec<Check> = pairs
            .par_iter()
            .map(|&(a, b)| Check::from_result(hom(&kc(a.0, a.1), &kc(b.0, b.1), cfg).map(|x| x == (frac(a) <= frac(b)))))
            .collect();
        absorb(&mut order, &checks, |i| {
            let (a, b) = pairs[i];
            let (ga, gb) = (kc(a.0, a.1), kc(b.0, b.1));
            Counterexample::new(format!("K_{}/{} vs K_{}/{}", a.0, a.1, b.0, b.1))
                .graph("A", &ga)
                .graph("B", &gb)
                .fact(Fact::hom(("A", "B"), &ga, &gb))
        });

        let mut deleted = VerificationReport::new(
            "circular",
            "s/r > 2: some s'/r' < s/r receives every K_{s/r} - x",
            "vertex-deleted circular graphs, \"there exists s′/r′ < s/r\"",
            Expectation::Holds,
        )
        .with_config("fractions", &range);
        let above: Vec<(usize, usize)> = fr.iter().copied().filter(|&(s, r)| s > 2 * r).collect();
        let res: Vec<Result<Fraction, HomError>> = above
            .par_iter()
            .map(|&(s, r)| {
                let g = kc(s, r);
                let mut worst = Fraction::integer(1).expect("positive");
                for x in 0..s {
                    let keep: Vec<usize> = (0..s).filter(|&v| v != x).collect();
                    let sub = Graph::try_from_digraph(ops::induced_subgraph(&g, &keep)?)?;
                    worst = worst.max(try_circular_chromatic_number(&sub, &cfg.limits())?);
                }
                Ok(worst)
            })
            .collect();
        for (&(s, r), x) in above.iter().zip(res) {
            match x {
                Ok(w) => deleted.record(w < frac((s, r)), || {
                    let g = kc(s, r);
                    let sub = ops::induced_subgraph(&g, &(1..s).collect::<Vec<_>>()).expect("in range");
                    Counterexample::new(format!("K_{s}/{r}: chi_c of a vertex-deleted subgraph is {w}"))
                        .graph("K", &g)
                        .graph("K-0", &sub)
                        .fact(Fact::hom(("K", "K-0"), &g, &sub))
                }),
                Err(e) => deleted.skip(e),
            }
        }

        let mut gamma_i = VerificationReport::new(
            "circular",
            "2 <= s/r < 3: Gamma_T(3)(K_{s/r}) <-> K_{s/(3r-s)}",
            "\"Γ_T(3)(K_{s/r}) ↔ K_{s/(3r−s)}\" when s/r < 3",
            Expectation::Holds,
        )
        .with_config("fractions", &range);
        let below3: Vec<(usize, usize)> = fr.iter().copied().filter(|&(s, r)| s < 3 * r).collect();
        let res: Vec<Result<(bool, Counterexample), HomError>> = below3
            .par_iter()
            .map(|&(s, r)| {
                let g = gamma3(&kc(s, r), cfg)?;
                let want = kc(s, 3 * r - s);
                Ok((equiv(&g, &want, cfg)?, equivalence(("Gamma", &g), ("K", &want))))
            })
            .collect();
        for x in res {
            match x {
                Ok((ok, cx)) => gamma_i.record(ok, || cx),
                Err(e) => gamma_i.skip(e),
            }
        }

        let mut gamma_ii = VerificationReport::new(
            "circular",
            "s/r < 12/5: Omega_T(3)(Gamma_T(3)(K_{s/r})) <-> K_{s/r}",
            "\"Ω_T(3)(Γ_T(3)(K_{s/r})) ↔ K_{s/r}\" when s/r < 12/5",
            Expectation::Holds,
        )
        .with_config("fractions", &range);
        let below = fr.iter().copied().filter(|&(s, r)| 5 * s < 12 * r).collect::<Vec<_>>();
        let res: Vec<Result<(bool, Counterexample), HomError>> = below
            .par_iter()
            .map(|&(s, r)| {
                let mut g = gamma3(&kc(s, r), cfg)?;
                if cfg.core_reduce {
                    g = crate::hom::try_core_reduce(&g, &cfg.limits())?.core;
                }
                let o = omega3(&Graph::try_from_digraph(g)?)?.into_digraph();
                let k = kc(s, r);
                Ok((equiv(&o, &k, cfg)?, equivalence(("Omega(Gamma(K))", &o), ("K", &k))))
            })
            .collect();
        for x in res {
            match x {
                Ok((ok, cx)) => gamma_ii.record(ok, || cx),
                Err(e) => gamma_ii.skip(e),
            }
        }
        vec![order, deleted, gamma_i, gamma_ii, named(cfg)]
    })
}
