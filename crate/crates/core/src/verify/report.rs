use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::format::{parse_text, write_text};
use crate::graph::{Digraph, Graph};
use crate::hom::{chromatic_number, hom_equivalent, hom_exists, odd_girth, ChromaticValue, HomWitness};
use crate::ops;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

/// Whether a law is expected to hold on the corpus, to be refuted, or is
/// only being explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    Fails,
    /// No claim either way; any decided outcome conforms.
    Open,
}

/// One recomputable statement about named graphs of a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "kebab-case")]
pub enum Fact {
    Hom { from: String, to: String, exists: bool, witness: Option<HomWitness> },
    Equivalent { left: String, right: String, holds: bool },
    Chromatic { graph: String, value: ChromaticValue },
    /// Odd girth of the symmetrization; `None` is infinite.
    OddGirth { graph: String, value: Option<usize> },
}

impl Fact {
    /// Computes a `Hom` fact, keeping the witness when there is one.
    pub fn hom(names: (&str, &str), g: &Digraph, h: &Digraph) -> Fact {
        let w = hom_exists(g, h);
        Fact::Hom { from: names.0.into(), to: names.1.into(), exists: w.is_some(), witness: w }
    }

    pub fn chromatic(name: &str, g: &Digraph) -> Fact {
        Fact::Chromatic { graph: name.into(), value: chromatic_number(g) }
    }
}

/// A violating instance with the graphs it concerns, serialized in the text
/// format, and the facts that make it a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub description: String,
    pub graphs: BTreeMap<String, String>,
    pub facts: Vec<Fact>,
}

impl Counterexample {
    pub fn new(description: impl Into<String>) -> Self {
        Counterexample { description: description.into(), graphs: BTreeMap::new(), facts: Vec::new() }
    }

    pub fn graph(mut self, name: &str, g: &Digraph) -> Self {
        self.graphs.insert(name.into(), write_text(g));
        self
    }

    pub fn fact(mut self, f: Fact) -> Self {
        self.facts.push(f);
        self
    }

    /// Reloads every graph from its text and recomputes every fact from
    /// scratch. Witnesses are checked arc by arc; the absence of a
    /// homomorphism is re-decided by search.
    pub fn revalidate(&self) -> Result<(), String> {
        let mut graphs = BTreeMap::new();
        for (name, text) in &self.graphs {
            let (_, g) = parse_text(text).map_err(|e| format!("graph {name}: {e}"))?;
            graphs.insert(name.as_str(), g);
        }
        let get = |name: &str| graphs.get(name).ok_or_else(|| format!("no graph named {name}"));
        for f in &self.facts {
            match f {
                Fact::Hom { from, to, exists, witness } => {
                    let (g, h) = (get(from)?, get(to)?);
                    let ok = match (exists, witness) {
                        (true, Some(w)) => w.map().len() == g.vertex_count() && w.is_valid(g, h),
                        _ => hom_exists(g, h).is_some() == *exists,
                    };
                    if !ok {
                        return Err(format!("{from} -> {to} exists = {exists} does not re-check"));
                    }
                }
                Fact::Equivalent { left, right, holds } => {
                    if hom_equivalent(get(left)?, get(right)?) != *holds {
                        return Err(format!("{left} <-> {right} = {holds} does not re-check"));
                    }
                }
                Fact::Chromatic { graph, value } => {
                    let got = chromatic_number(get(graph)?);
                    if got != *value {
                        return Err(format!("chi({graph}) recorded {value}, recomputed {got}"));
                    }
                }
                Fact::OddGirth { graph, value } => {
                    let got = odd_girth(&ops::symmetrize(get(graph)?));
                    if got != *value {
                        return Err(format!("odd girth of {graph} recorded {value:?}, recomputed {got:?}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The result of one suite run on one law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub law: String,
    pub citation: String,
    pub expectation: Expectation,
    pub config: BTreeMap<String, String>,
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    /// All violations found; only the first few are kept as counterexamples.
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// How many counterexamples a report keeps.
pub const KEPT_COUNTEREXAMPLES: usize = 3;

impl VerificationReport {
    pub fn new(suite: &str, law: &str, citation: &str, expectation: Expectation) -> Self {
        VerificationReport {
            suite: suite.into(),
            law: law.into(),
            citation: citation.into(),
            expectation,
            config: BTreeMap::new(),
            checked: 0,
            passed: 0,
            skipped: 0,
            violations: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn with_config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.insert(key.into(), value.to_string());
        self
    }

    pub fn pass(&mut self) {
        self.checked += 1;
        self.passed += 1;
    }

    pub fn skip(&mut self, why: impl fmt::Display) {
        self.checked += 1;
        self.skipped += 1;
        if self.skipped == 1 {
            self.notes.push(format!("first skip: {why}"));
        }
    }

    /// Records a violation; `make` runs only while counterexample slots remain.
    pub fn fail(&mut self, make: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        self.violations += 1;
        if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
            self.counterexamples.push(make());
        }
    }

    /// Records the outcome of one check.
    pub fn record(&mut self, ok: bool, make: impl FnOnce() -> Counterexample) {
        if ok {
            self.pass()
        } else {
            self.fail(make)
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// FAIL if anything was violated, else SKIP if anything was skipped or
    /// nothing was checked, else PASS.
    pub fn outcome(&self) -> Outcome {
        if self.violations > 0 {
            Outcome::Fail
        } else if self.skipped > 0 || self.checked == 0 {
            Outcome::Skip
        } else {
            Outcome::Pass
        }
    }

    /// Whether the outcome is the expected one: PASS for laws that hold,
    /// FAIL for documented failures.
    pub fn conforms(&self) -> bool {
        matches!(
            (self.expectation, self.outcome()),
            (Expectation::Holds, Outcome::Pass)
                | (Expectation::Fails, Outcome::Fail)
                | (Expectation::Open, Outcome::Pass | Outcome::Fail)
        )
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let expect = match self.expectation {
            Expectation::Holds => "holds",
            Expectation::Fails => "expected to fail",
            Expectation::Open => "open",
        };
        writeln!(s, "{} {} :: {} ({expect})", self.outcome(), self.suite, self.law).unwrap();
        writeln!(s, "  citation: {}", self.citation).unwrap();
        for (k, v) in &self.config {
            writeln!(s, "  {k}: {v}").unwrap();
        }
        writeln!(
            s,
            "  checked {}, passed {}, skipped {}, violations {}",
            self.checked, self.passed, self.skipped, self.violations
        )
        .unwrap();
        for n in &self.notes {
            writeln!(s, "  note: {n}").unwrap();
        }
        for c in &self.counterexamples {
            writeln!(s, "  counterexample: {}", c.description).unwrap();
            for f in &c.facts {
                writeln!(s, "    {}", fact_text(f)).unwrap();
            }
        }
        s
    }
}

fn fact_text(f: &Fact) -> String {
    match f {
        Fact::Hom { from, to, exists, .. } => format!("{from} {} {to}", if *exists { "->" } else { "-/->" }),
        Fact::Equivalent { left, right, holds } => format!("{left} {} {right}", if *holds { "<->" } else { "<-/->" }),
        Fact::Chromatic { graph, value } => format!("chi({graph}) = {value}"),
        Fact::OddGirth { graph, value } => match value {
            Some(v) => format!("odd girth({graph}) = {v}"),
            None => format!("odd girth({graph}) = inf"),
        },
    }
}

/// A set of reports with the configuration that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub header: BTreeMap<String, String>,
    pub reports: Vec<VerificationReport>,
}

impl ReportDocument {
    pub fn new(header: BTreeMap<String, String>, reports: Vec<VerificationReport>) -> Self {
        ReportDocument { header, reports }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.header {
            writeln!(s, "# {k}: {v}").unwrap();
        }
        for r in &self.reports {
            s.push_str(&r.render_text());
        }
        s
    }

    pub fn all_conform(&self) -> bool {
        self.reports.iter().all(VerificationReport::conforms)
    }

    pub fn any_skipped(&self) -> bool {
        self.reports.iter().any(|r| r.outcome() == Outcome::Skip)
    }
}

/// Graph view of a symmetric digraph, for suites that build graph inputs.
pub(crate) fn as_graph(d: &Digraph) -> Graph {
    Graph::try_from_digraph(d.clone()).expect("graph corpus members are symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle};

    fn sample() -> Counterexample {
        let k4 = complete(4).into_digraph();
        let k3 = complete(3).into_digraph();
        let c5 = cycle(5).unwrap().into_digraph();
        Counterexample::new("K4 is not 3-colourable")
            .graph("K4", &k4)
            .graph("K3", &k3)
            .graph("C5", &c5)
            .fact(Fact::hom(("K4", "K3"), &k4, &k3))
            .fact(Fact::hom(("C5", "K3"), &c5, &k3))
            .fact(Fact::chromatic("K4", &k4))
            .fact(Fact::OddGirth { graph: "C5".into(), value: Some(5) })
    }

    #[test]
    fn counterexamples_revalidate() {
        let c = sample();
        assert!(c.revalidate().is_ok());
        let mut bad = c.clone();
        bad.facts.push(Fact::Equivalent { left: "K3".into(), right: "C5".into(), holds: true });
        assert!(bad.revalidate().is_err());
        let mut forged = c;
        forged.facts[1] = Fact::Hom { from: "C5".into(), to: "K3".into(), exists: true, witness: Some(HomWitness::new(vec![0; 5])) };
        assert!(forged.revalidate().is_err());
    }

    #[test]
    fn outcomes() {
        let mut r = VerificationReport::new("s", "law", "cite", Expectation::Holds);
        assert_eq!(r.outcome(), Outcome::Skip);
        r.pass();
        assert_eq!(r.outcome(), Outcome::Pass);
        assert!(r.conforms());
        r.skip("timeout");
        assert_eq!(r.outcome(), Outcome::Skip);
        assert!(!r.conforms());
        for _ in 0..5 {
            r.fail(sample);
        }
        assert_eq!(r.outcome(), Outcome::Fail);
        assert_eq!(r.counterexamples.len(), KEPT_COUNTEREXAMPLES);
        assert_eq!(r.violations, 5);
        r.expectation = Expectation::Open;
        assert!(r.conforms());
        r.expectation = Expectation::Fails;
        assert!(r.conforms());
    }

    #[test]
    fn documents_round_trip_without_wall_time() {
        let mut r = VerificationReport::new("s", "law", "cite", Expectation::Fails).with_config("corpus", "x");
        r.fail(sample);
        r.wall_time = Duration::from_millis(5);
        let doc = ReportDocument::new(BTreeMap::from([("seed".into(), "1".into())]), vec![r]);
        let json = doc.to_json();
        for key in ["\"suite\"", "\"law\"", "\"citation\"", "\"checked\"", "\"passed\"", "\"skipped\"", "\"counterexamples\""] {
            assert!(json.contains(key), "{key}");
        }
        let back = ReportDocument::from_json(&json).unwrap();
        assert_eq!(back.reports[0].wall_time, Duration::ZERO);
        assert_eq!(back.to_json(), json);
        assert!(back.all_conform());
        assert!(back.reports[0].counterexamples[0].revalidate().is_ok());
        assert!(back.render_text().contains("FAIL s :: law"));
    }
}
