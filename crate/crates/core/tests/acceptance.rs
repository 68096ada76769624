//! Acceptance criteria. Prints one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails that is not listed in
//! [`KNOWN_DEFECTS`]. A known defect still prints FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use thinhom::families::{complete, cycle, kneser};
use thinhom::functor::{ApplyOptions, Functor};
use thinhom::hom::{chromatic_number, hom_equivalent};
use thinhom::verify::{self, canonical_form, suite_poljak_rodl, Outcome, RunOptions, SuiteConfig, VerificationReport};
use thinhom::ChromaticValue;

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    check: Check,
}

/// Criteria whose stated law is false; the reason is printed with the FAIL line.
const KNOWN_DEFECTS: &[(usize, &str)] = &[(
    5,
    "the Sperner formula describes chi(delta(G)) for graphs G; S(n,2) = delta(TT_n) \
     and chi(S(n,2)) = ceil(log2 n)",
)];

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn run(id: &str, max_n: Option<usize>, directed: Option<bool>) -> Result<Vec<VerificationReport>, String> {
    let opts = RunOptions { max_n, directed, ..RunOptions::default() };
    verify::run(id, &opts).map_err(|e| format!("{id}: {e}"))
}

fn describe(r: &VerificationReport) -> String {
    let mut s = format!(
        "{:?} on `{}`: {} checked, {} violations, {} skipped",
        r.outcome(),
        r.law,
        r.checked,
        r.violations,
        r.skipped
    );
    if let Some(c) = r.counterexamples.first() {
        s += &format!("; first counterexample: {}", c.description);
        if let Err(e) = c.revalidate() {
            s += &format!(" (does not revalidate: {e})");
        }
    }
    s
}

/// Every report must PASS with at least one check.
fn all_pass(reports: &[VerificationReport]) -> Result<String, String> {
    let bad: Vec<String> = reports.iter().filter(|r| r.outcome() != Outcome::Pass).map(describe).collect();
    if !bad.is_empty() {
        return Err(bad.join(" | "));
    }
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    Ok(format!("{} reports, {checked} checks, 0 violations", reports.len()))
}

/// Every report must match its recorded expectation without skips.
fn all_conform(reports: &[VerificationReport]) -> Result<String, String> {
    let bad: Vec<String> =
        reports.iter().filter(|r| !r.conforms() || r.skipped > 0).map(describe).collect();
    if !bad.is_empty() {
        return Err(bad.join(" | "));
    }
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    Ok(format!("{} reports conform, {checked} checks", reports.len()))
}

fn pick<'a>(reports: &'a [VerificationReport], needle: &str) -> Result<&'a VerificationReport, String> {
    reports.iter().find(|r| r.law.contains(needle)).ok_or_else(|| format!("no report for `{needle}`"))
}

fn golden() -> Result<String, String> {
    let c5 = cycle(5).map_err(|e| e.to_string())?.into_digraph();
    let k5 = complete(5).into_digraph();
    let f: Functor = "gamma:T3".parse().map_err(|e: thinhom::GraphError| e.to_string())?;
    let out = f.apply(&c5, &ApplyOptions::default()).map_err(|e| e.to_string())?;
    let counts = (out.vertex_count(), out.arc_count());
    if counts != (5, 20) {
        return Err(format!("gamma(T3, C5) has {} vertices and {} arcs", counts.0, counts.1));
    }
    if !hom_equivalent(&out, &k5) {
        return Err("gamma(T3, C5) is not hom-equivalent to K5".into());
    }
    if canonical_form(&out) != canonical_form(&k5) {
        return Err("canonical forms differ".into());
    }
    Ok("5 vertices, 10 edges, hom-equivalent and isomorphic to K5".into())
}

fn adjunctions() -> Result<String, String> {
    let mut reports = Vec::new();
    for adj in ["T3", "T5", "arc", "T2", "Tx:K2", "omega:3", "omega:5", "deltaR"] {
        reports.extend(run(&format!("adjunction:{adj}"), Some(4), None)?);
    }
    all_pass(&reports)
}

fn products() -> Result<String, String> {
    let mut reports = run("products:gamma:T3", None, None)?;
    reports.extend(run("products:delta", None, None)?);
    for r in &reports {
        let c = r.config.get("pairs").map(String::as_str).unwrap_or("");
        if !c.contains("<= 3") || !c.contains("200 seeded") {
            return Err(format!("unexpected corpus `{c}`"));
        }
    }
    all_pass(&reports)
}

fn arc_bounds() -> Result<String, String> {
    let reports = run("arc", None, None)?;
    let picked = [
        pick(&reports, "chi(delta(G)) <= n implies")?.clone(),
        pick(&reports, "chi(G) <= C(n, n/2) implies")?.clone(),
        pick(&reports, "for graphs")?.clone(),
    ];
    all_pass(&picked)
}

fn shift_graphs() -> Result<String, String> {
    let reports = run("arc", None, None)?;
    let picked = [pick(&reports, "odd girth of S(n,k)")?.clone(), pick(&reports, "chi(S(n,2)) = min")?.clone()];
    all_pass(&picked)
}

fn poljak() -> Result<String, String> {
    let rec = suite_poljak_rodl(3, &SuiteConfig::default());
    if rec.pair.is_none() {
        return Err(format!("no pair among {} factors ({} skipped)", rec.factors, rec.skipped));
    }
    rec.revalidate()?;
    Ok(format!(
        "{} factors with chi 4, {} types, pair found with chi(GxH) = 3 and revalidated",
        rec.factors, rec.types
    ))
}

fn multiplicativity() -> Result<String, String> {
    all_pass(&run("multiplicativity:K3", Some(5), Some(false))?)
}

fn circular() -> Result<String, String> {
    all_pass(&run("circular", None, None)?)
}

fn omega2() -> Result<String, String> {
    let reports = run("omega2", None, None)?;
    let fwd = pick(&reports, "implies G -> Omega_T(2)(H)")?;
    if fwd.outcome() != Outcome::Pass {
        return Err(describe(fwd));
    }
    all_conform(&reports)
}

fn chromatic() -> Result<String, String> {
    let summary = all_pass(&run("chromatic", None, None)?)?;
    for (n, m, want) in [(5, 2, 3), (6, 2, 4)] {
        let k = kneser(n, m).map_err(|e| e.to_string())?;
        let got = chromatic_number(&k);
        if got != ChromaticValue::Finite(want) {
            return Err(format!("chi(K({n},{m})) = {got:?}, expected {want}"));
        }
    }
    Ok(format!("{summary}; chi(K(5,2)) = 3, chi(K(6,2)) = 4"))
}

fn strong_mult() -> Result<String, String> {
    let reports = run("strong-mult:5,3", None, None)?;
    let mut out = Vec::new();
    for needle in ["L_{5,3} -> K_4", "G_{5,3} -/-> K_4"] {
        let r = pick(&reports, needle)?;
        match r.outcome() {
            Outcome::Pass => out.push(format!("{needle} confirmed")),
            Outcome::Skip if r.notes.iter().any(|n| n.contains("timed out") || n.contains("timeout")) => {
                out.push(format!("{needle} SKIP ({})", r.notes.join("; ")))
            }
            _ => return Err(describe(r)),
        }
    }
    Ok(out.join(", "))
}

fn chains() -> Result<String, String> {
    all_conform(&run("chains", None, None)?)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "gamma(T3, C5) is K5", budget: secs(1), check: golden },
        Criterion { id: 2, title: "adjunctions on <= 4 vertices", budget: secs(600), check: adjunctions },
        Criterion { id: 3, title: "product preservation", budget: secs(300), check: products },
        Criterion { id: 4, title: "arc graph bounds and Sperner tightness", budget: secs(600), check: arc_bounds },
        Criterion { id: 5, title: "shift graph odd girth and Sperner formula", budget: secs(120), check: shift_graphs },
        Criterion { id: 6, title: "Poljak-Rodl pair at n = 3", budget: secs(300), check: poljak },
        Criterion { id: 7, title: "multiplicativity of K3 on <= 5 vertices", budget: secs(1800), check: multiplicativity },
        Criterion { id: 8, title: "circular battery", budget: secs(300), check: circular },
        Criterion { id: 9, title: "omega2 partiality", budget: secs(600), check: omega2 },
        Criterion { id: 10, title: "chromatic identities and Kneser values", budget: secs(600), check: chromatic },
        Criterion { id: 11, title: "strong multiplicativity obstruction", budget: secs(240), check: strong_mult },
        Criterion { id: 12, title: "functor chains and T(2) sandwiches", budget: secs(600), check: chains },
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut result = (c.check)();
        let took = start.elapsed();
        if result.is_ok() && took > c.budget {
            result = Err(format!("took {took:.1?}, over the {:?} budget", c.budget));
        }
        match result {
            Ok(msg) => {
                passed += 1;
                println!("PASS [{:2}] {} ({took:.2?}): {msg}", c.id, c.title);
            }
            Err(msg) => {
                let known = KNOWN_DEFECTS.iter().find(|(id, _)| *id == c.id);
                println!("FAIL [{:2}] {} ({took:.2?}): {msg}", c.id, c.title);
                match known {
                    Some((_, why)) => println!("     known defect: {why}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    let failed = criteria.len() - passed;
    println!("{passed} passed, {failed} failed, {unexpected} unexpected");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
