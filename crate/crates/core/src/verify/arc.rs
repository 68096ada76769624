use rayon::prelude::*;

use crate::error::HomError;
use crate::families::shift_graph;
use crate::graph::Digraph;
use crate::hom::odd_girth;
use crate::ops;
use crate::pultr::delta;

use super::corpus::Corpus;
use super::report::{Counterexample, Expectation, Fact, VerificationReport};
use super::{chi, timed_all, SuiteConfig};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The least `n` with `c <= C(n, ⌊n/2⌋)`.
pub fn sperner_bound(c: usize) -> usize {
    (0..).find(|&n| c <= binomial(n, n / 2)).expect("binomials grow")
}

fn finite(g: &Digraph, cfg: &SuiteConfig) -> Result<usize, HomError> {
    Ok(chi(g, cfg)?.finite().expect("loop-free input"))
}

fn per_member(
    r: &mut VerificationReport,
    members: &[Digraph],
    cfg: &SuiteConfig,
    law: impl Fn(usize, usize) -> bool + Sync,
) {
    let res: Vec<Result<(usize, usize), HomError>> = members
        .par_iter()
        .map(|g| Ok((finite(g, cfg)?, finite(&delta(g), cfg)?)))
        .collect();
    for (g, x) in members.iter().zip(res) {
        match x {
            Ok((a, b)) => r.record(law(a, b), || {
                let d = delta(g);
                Counterexample::new(format!("chi(G) = {a}, chi(delta(G)) = {b}"))
                    .graph("G", g)
                    .graph("delta(G)", &d)
                    .fact(Fact::chromatic("G", g))
                    .fact(Fact::chromatic("delta(G)", &d))
            }),
            Err(e) => r.skip(e),
        }
    }
}

/// `log₂` applied `times` times; `None` once the value drops to zero or below.
fn iterated_log(n: usize, times: usize) -> Option<f64> {
    let mut x = n as f64;
    for _ in 0..times {
        if x <= 0.0 {
            return None;
        }
        x = x.log2();
    }
    Some(x)
}

/// The arc-graph bounds on `digraphs`, Sperner tightness on `graphs`, and the
/// shift graph properties for `n <= n_max`, `k <= k_max`.
pub fn suite_arc_graph(
    digraphs: &Corpus,
    graphs: &Corpus,
    n_max: usize,
    k_max: usize,
    cfg: &SuiteConfig,
) -> Vec<VerificationReport> {
    timed_all(cfg, || {
        let ds = digraphs.members();
        let gs = graphs.members();
        let suite = "arc-graph";
        let mut i = VerificationReport::new(
            suite,
            "chi(delta(G)) <= n implies chi(G) <= 2^n",
            "arc graph bound (i), \"then χ(G) ≤ 2ⁿ\"",
            Expectation::Holds,
        )
        .with_config("corpus", digraphs.describe());
        per_member(&mut i, &ds, cfg, |a, b| a <= 1 << b);
        let mut ii = VerificationReport::new(
            suite,
            "chi(G) <= C(n, n/2) implies chi(delta(G)) <= n",
            "arc graph bound (ii), \"then χ(δ(G)) ≤ n\"",
            Expectation::Holds,
        )
        .with_config("corpus", digraphs.describe());
        per_member(&mut ii, &ds, cfg, |a, b| b <= sperner_bound(a));
        let mut tight = VerificationReport::new(
            suite,
            "chi(delta(G)) = min { n : chi(G) <= C(n, n/2) } for graphs",
            "Sperner's theorem, the least n with χ(G) ≤ C(n, ⌊n/2⌋)",
            Expectation::Holds,
        )
        .with_config("corpus", graphs.describe());
        per_member(&mut tight, &gs, cfg, |a, b| b == sperner_bound(a));

        let shifts: Vec<(usize, usize, Digraph)> = (1..=n_max)
            .flat_map(|n| (1..=k_max).map(move |k| (n, k)))
            .map(|(n, k)| (n, k, shift_graph(n, k).expect("k >= 1")))
            .collect();
        let range = format!("n <= {n_max}, k <= {k_max}");
        let mut girth = VerificationReport::new(
            suite,
            "odd girth of S(n,k) is at least 2k+1",
            "shift graphs have \"no odd cycle with fewer than 2k+1 vertices\"",
            Expectation::Holds,
        )
        .with_config("instances", &range);
        for (n, k, s) in &shifts {
            let og = odd_girth(&ops::symmetrize(s));
            girth.record(og.is_none_or(|g| g > 2 * k), || {
                Counterexample::new(format!("S({n},{k})"))
                    .graph("S", s)
                    .fact(Fact::OddGirth { graph: "S".into(), value: og })
            });
        }
        let mut lower = VerificationReport::new(
            suite,
            "chi(S(n,k)) >= m whenever log2^(k-1)(n) > m",
            "shift graphs, \"for log₂^{k−1}(n) > m we have χ(S(n,k)) ≥ m\"",
            Expectation::Holds,
        )
        .with_config("instances", &range);
        let chis: Vec<Result<usize, HomError>> = shifts.par_iter().map(|(_, _, s)| finite(s, cfg)).collect();
        for ((n, k, s), c) in shifts.iter().zip(&chis) {
            let Some(x) = iterated_log(*n, k - 1) else { continue };
            if x <= 0.0 {
                continue;
            }
            // the largest integer m < x
            let m = x.ceil() as usize - 1;
            match c {
                Ok(c) => lower.record(*c >= m, || {
                    Counterexample::new(format!("S({n},{k}) needs chi >= {m}"))
                        .graph("S", s)
                        .fact(Fact::chromatic("S", s))
                }),
                Err(e) => lower.skip(e),
            }
        }

        let s2: Vec<(usize, &Digraph, &Result<usize, HomError>)> =
            shifts.iter().zip(&chis).filter(|((_, k, _), _)| *k == 2).map(|((n, _, s), c)| (*n, s, c)).collect();
        let mut sperner = VerificationReport::new(
            suite,
            "chi(S(n,2)) = min { n' : n <= C(n', n'/2) }",
            "Sperner's theorem applied to S(n,2) = δ(K⃗_n)",
            Expectation::Holds,
        )
        .with_config("instances", format!("n <= {n_max}"));
        let mut log = VerificationReport::new(
            suite,
            "chi(S(n,2)) = ceil(log2 n)",
            "\"χ(K⃗_n) = n, hence the iterated logarithmic lower bounds\"",
            Expectation::Holds,
        )
        .with_config("instances", format!("n <= {n_max}"));
        for (n, s, c) in s2 {
            let want_log = (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize;
            match c {
                Ok(c) => {
                    let cx = |want: usize| {
                        Counterexample::new(format!("S({n},2): chi = {c}, formula gives {want}"))
                            .graph("S", s)
                            .fact(Fact::chromatic("S", s))
                    };
                    sperner.record(*c == sperner_bound(n), || cx(sperner_bound(n)));
                    log.record(*c == want_log, || cx(want_log));
                }
                Err(e) => {
                    sperner.skip(e);
                    log.skip(e);
                }
            }
        }
        vec![i, ii, tight, girth, lower, sperner, log]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sperner_values() {
        // C(n, n/2) for n = 0..6: 1 1 2 3 6 10 20
        let want = [(0, 0), (1, 0), (2, 2), (3, 3), (4, 4), (6, 4), (7, 5), (10, 5), (11, 6), (20, 6)];
        for (c, n) in want {
            assert_eq!(sperner_bound(c), n, "c = {c}");
        }
    }

    #[test]
    fn iterated_logs() {
        assert_eq!(iterated_log(8, 0), Some(8.0));
        assert_eq!(iterated_log(8, 1), Some(3.0));
        assert!(iterated_log(1, 2).is_none());
    }
}
