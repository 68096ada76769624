//! Homomorphism existence, enumeration and the invariants built on them.

pub(crate) mod invariants;
mod solver;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::HomError;
use crate::graph::Digraph;
use crate::ops;

pub use invariants::{
    chromatic_number, circular_chromatic_number, core_reduce, greedy_colouring, max_clique, odd_girth,
    try_chromatic_number, try_circular_chromatic_number, try_core_reduce, CoreReduction,
};

/// Default cap on enumerated homomorphisms.
pub const DEFAULT_MAX_WITNESSES: usize = 1_000_000;

/// An explicit vertex map `V(G) -> V(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomWitness {
    map: Vec<usize>,
}

impl HomWitness {
    pub fn new(map: Vec<usize>) -> Self {
        HomWitness { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    /// Checks arc preservation independently of the solver.
    pub fn is_valid(&self, g: &Digraph, h: &Digraph) -> bool {
        g.is_hom_to(h, &self.map)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &HomWitness) -> HomWitness {
        HomWitness { map: self.map.iter().map(|&v| other.map[v]).collect() }
    }
}

impl fmt::Display for HomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `χ(G)`: a natural number, or infinity for graphs with a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChromaticValue {
    Finite(usize),
    Infinite,
}

impl ChromaticValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            ChromaticValue::Finite(k) => Some(k),
            ChromaticValue::Infinite => None,
        }
    }
}

impl fmt::Display for ChromaticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChromaticValue::Finite(k) => write!(f, "{k}"),
            ChromaticValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Resource limits for a single query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub timeout: Option<Duration>,
    pub max_witnesses: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { timeout: None, max_witnesses: DEFAULT_MAX_WITNESSES }
    }
}

impl SearchLimits {
    pub fn with_timeout(timeout: Duration) -> Self {
        SearchLimits { timeout: Some(timeout), ..Self::default() }
    }

    pub(crate) fn start(&self) -> Deadline {
        Deadline(self.timeout.map(|t| Instant::now() + t), self.max_witnesses)
    }
}

/// A started clock, shared by the sub-queries of one logical query.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline(Option<Instant>, usize);

impl Deadline {
    fn limits(&self) -> solver::Limits {
        solver::Limits { deadline: self.0, max_solutions: self.1 }
    }

    pub fn check(&self) -> Result<(), HomError> {
        match self.0 {
            Some(d) if Instant::now() >= d => Err(HomError::Timeout),
            _ => Ok(()),
        }
    }
}

/// Finds a homomorphism `G -> H` if one exists.
pub fn hom_exists(g: &Digraph, h: &Digraph) -> Option<HomWitness> {
    try_hom_exists(g, h, &SearchLimits::default()).expect("unlimited search cannot abort")
}

pub fn try_hom_exists(g: &Digraph, h: &Digraph, limits: &SearchLimits) -> Result<Option<HomWitness>, HomError> {
    exists_within(g, h, limits.start())
}

pub(crate) fn exists_within(g: &Digraph, h: &Digraph, dl: Deadline) -> Result<Option<HomWitness>, HomError> {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return Ok(Some(HomWitness::new(Vec::new())));
    }
    if m == 0 {
        return Ok(None);
    }
    if let Some(l) = h.loops().next() {
        return Ok(Some(HomWitness::new(vec![l; n])));
    }
    if g.has_loop() {
        return Ok(None);
    }
    if g.arc_count() == 0 {
        return Ok(Some(HomWitness::new(vec![0; n])));
    }
    if h.arc_count() == m * (m - 1) && max_clique(&ops::symmetrize(g)).len() > m {
        return Ok(None);
    }
    if odd_girth_excludes(g, h) {
        return Ok(None);
    }

    let comps: Vec<Vec<usize>> = g.weak_components().into_iter().filter(|c| c.len() > 1).collect();
    if comps.len() <= 1 {
        let sols = solver::search(g, h, solver::Mode::Exists, &dl.limits())?;
        return Ok(sols.into_iter().next().map(|s| HomWitness::new(s.into_iter().map(|x| x as usize).collect())));
    }
    // Components are independent; isolated vertices go to vertex 0.
    let mut map = vec![0usize; n];
    for comp in comps {
        let sub = ops::induced_subgraph(g, &comp)?;
        let sols = solver::search(&sub, h, solver::Mode::Exists, &dl.limits())?;
        let Some(sol) = sols.into_iter().next() else {
            return Ok(None);
        };
        for (i, &v) in comp.iter().enumerate() {
            map[v] = sol[i] as usize;
        }
    }
    Ok(Some(HomWitness::new(map)))
}

/// Graphs only: a homomorphism cannot shorten the shortest odd cycle, so
/// `og(H) > og(G)` rules one out. Skipped where the search is cheap anyway.
fn odd_girth_excludes(g: &Digraph, h: &Digraph) -> bool {
    const MIN_SOURCE: usize = 12;
    const MAX_WORK: usize = 1 << 24;
    let work = |d: &Digraph| d.vertex_count() * (d.vertex_count() + d.arc_count());
    if g.vertex_count() < MIN_SOURCE || work(g) + work(h) > MAX_WORK || !g.is_symmetric() || !h.is_symmetric() {
        return false;
    }
    match (invariants::odd_girth_symmetric(g), invariants::odd_girth_symmetric(h)) {
        (Some(a), Some(b)) => b > a,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// All homomorphisms `G -> H` in lexicographic order of their map arrays.
pub fn hom_enumerate(g: &Digraph, h: &Digraph, limits: &SearchLimits) -> Result<Vec<HomWitness>, HomError> {
    let mut sols = solver::search(g, h, solver::Mode::Enumerate, &limits.start().limits())?;
    sols.sort_unstable();
    Ok(sols.into_iter().map(|s| HomWitness::new(s.into_iter().map(|x| x as usize).collect())).collect())
}

/// The distinct restrictions to `vars` of homomorphisms `G -> H`, sorted
/// lexicographically. Far cheaper than enumerating and projecting when the
/// homomorphisms outnumber their restrictions.
pub fn hom_project(
    g: &Digraph,
    h: &Digraph,
    vars: &[usize],
    limits: &SearchLimits,
) -> Result<Vec<Vec<usize>>, HomError> {
    let mut sols = solver::search(g, h, solver::Mode::Project(vars.to_vec()), &limits.start().limits())?;
    sols.sort_unstable();
    sols.dedup();
    Ok(sols.into_iter().map(|s| s.into_iter().map(|x| x as usize).collect()).collect())
}

/// `G ↔ H`.
pub fn hom_equivalent(g: &Digraph, h: &Digraph) -> bool {
    hom_exists(g, h).is_some() && hom_exists(h, g).is_some()
}

pub fn try_hom_equivalent(g: &Digraph, h: &Digraph, limits: &SearchLimits) -> Result<bool, HomError> {
    let dl = limits.start();
    Ok(exists_within(g, h, dl)?.is_some() && exists_within(h, g, dl)?.is_some())
}
