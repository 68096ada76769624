use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Digraph;

/// A reproducible list of test inputs. Exhaustive corpora hold every labelled
/// loop-free graph or digraph on `1..=max_vertices` vertices, ordered by size
/// and then by arc mask.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Corpus {
    ExhaustiveGraphs { max_vertices: usize },
    ExhaustiveDigraphs { max_vertices: usize },
    SeededRandom { directed: bool, count: usize, min_vertices: usize, max_vertices: usize, edge_probability: f64, seed: u64 },
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

impl Corpus {
    pub fn graphs(max_vertices: usize) -> Self {
        Corpus::ExhaustiveGraphs { max_vertices }
    }

    pub fn digraphs(max_vertices: usize) -> Self {
        Corpus::ExhaustiveDigraphs { max_vertices }
    }

    /// `count` random graphs (or digraphs) with `1..=max_vertices` vertices
    /// and each possible edge (arc) present with probability `p`.
    pub fn seeded(directed: bool, count: usize, max_vertices: usize, p: f64, seed: u64) -> Self {
        Corpus::SeededRandom { directed, count, min_vertices: 1, max_vertices, edge_probability: p, seed }
    }

    /// The number of members, computed without materializing them.
    pub fn len(&self) -> usize {
        match *self {
            Corpus::ExhaustiveGraphs { max_vertices } => (1..=max_vertices).map(|n| 1usize << (n * (n - 1) / 2)).sum(),
            Corpus::ExhaustiveDigraphs { max_vertices } => (1..=max_vertices).map(|n| 1usize << (n * (n - 1))).sum(),
            Corpus::SeededRandom { count, .. } => count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_directed(&self) -> bool {
        match *self {
            Corpus::ExhaustiveGraphs { .. } => false,
            Corpus::ExhaustiveDigraphs { .. } => true,
            Corpus::SeededRandom { directed, .. } => directed,
        }
    }

    pub fn members(&self) -> Vec<Digraph> {
        match *self {
            Corpus::ExhaustiveGraphs { max_vertices } => {
                (1..=max_vertices).flat_map(|n| exhaustive(n, graph_slots(n), true)).collect()
            }
            Corpus::ExhaustiveDigraphs { max_vertices } => {
                (1..=max_vertices).flat_map(|n| exhaustive(n, digraph_slots(n), false)).collect()
            }
            Corpus::SeededRandom { directed, count, min_vertices, max_vertices, edge_probability, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let n = rng.gen_range(min_vertices..=max_vertices);
                        let slots = if directed { digraph_slots(n) } else { graph_slots(n) };
                        let chosen: Vec<(usize, usize)> =
                            slots.into_iter().filter(|_| rng.gen_bool(edge_probability)).collect();
                        build(n, &chosen, !directed)
                    })
                    .collect()
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Corpus::ExhaustiveGraphs { max_vertices } => format!("exhaustive graphs <= {max_vertices}"),
            Corpus::ExhaustiveDigraphs { max_vertices } => format!("exhaustive digraphs <= {max_vertices}"),
            Corpus::SeededRandom { directed, count, min_vertices, max_vertices, edge_probability, seed } => format!(
                "{count} seeded {} on {min_vertices}..={max_vertices} vertices, p = {edge_probability}, seed = {seed}",
                if *directed { "digraphs" } else { "graphs" }
            ),
        }
    }
}

fn graph_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn digraph_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

fn build(n: usize, chosen: &[(usize, usize)], symmetric: bool) -> Digraph {
    let arcs = chosen.iter().flat_map(|&(a, b)| if symmetric { vec![(a, b), (b, a)] } else { vec![(a, b)] });
    Digraph::new(n, arcs).expect("slots are in range")
}

fn exhaustive(n: usize, slots: Vec<(usize, usize)>, symmetric: bool) -> impl Iterator<Item = Digraph> {
    (0u64..1 << slots.len()).map(move |mask| {
        let chosen: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
        build(n, &chosen, symmetric)
    })
}

/// Largest order for which [`canonical_form`] is computed.
pub const CANONICAL_MAX: usize = 7;

/// An isomorphism invariant that separates non-isomorphic digraphs: the least
/// adjacency-matrix bit code over all vertex orders. `None` above
/// [`CANONICAL_MAX`] vertices.
pub fn canonical_form(g: &Digraph) -> Option<(usize, u64)> {
    let n = g.vertex_count();
    if n > CANONICAL_MAX {
        return None;
    }
    let code = |p: &[usize]| g.arcs().fold(0u64, |acc, (a, b)| acc | 1 << (p[a] * n + p[b]));
    let mut p: Vec<usize> = (0..n).collect();
    let mut best = code(&p);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            best = best.min(code(&p));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some((n, best))
}

/// Groups members by isomorphism type: returns each member's class and a
/// representative (first member) per class. Members too large for
/// [`canonical_form`] get singleton classes.
pub fn iso_classes(members: &[Digraph]) -> (Vec<usize>, Vec<usize>) {
    let mut seen = std::collections::HashMap::new();
    let mut reps = Vec::new();
    let class = members
        .iter()
        .enumerate()
        .map(|(i, g)| match canonical_form(g) {
            Some(key) => *seen.entry(key).or_insert_with(|| {
                reps.push(i);
                reps.len() - 1
            }),
            None => {
                reps.push(i);
                reps.len() - 1
            }
        })
        .collect();
    (class, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops;

    #[test]
    fn advertised_counts() {
        for max in 1..=4 {
            let c = Corpus::graphs(max);
            let m = c.members();
            assert_eq!(m.len(), c.len());
            assert!(m.iter().all(|g| g.is_symmetric() && !g.has_loop()));
        }
        assert_eq!(Corpus::graphs(5).len(), 1 + 2 + 8 + 64 + 1024);
        let d = Corpus::digraphs(3);
        assert_eq!(d.members().len(), 1 + 4 + 64);
        assert_eq!(Corpus::digraphs(4).len(), 4165);
    }

    #[test]
    fn exhaustive_members_are_distinct() {
        let m = Corpus::digraphs(3).members();
        let set: std::collections::HashSet<_> = m.iter().collect();
        assert_eq!(set.len(), m.len());
    }

    #[test]
    fn seeded_is_reproducible() {
        let c = Corpus::seeded(false, 30, 6, 0.5, 7);
        assert_eq!(c.members(), c.members());
        assert!(c.members().iter().all(|g| g.is_symmetric() && (1..=6).contains(&g.vertex_count())));
        assert_ne!(c.members(), Corpus::seeded(false, 30, 6, 0.5, 8).members());
        let d = Corpus::seeded(true, 30, 5, 0.3, 7);
        assert!(d.members().iter().any(|g| !g.is_symmetric()));
    }

    #[test]
    fn iso_class_counts() {
        // unlabelled graphs on <= 4 vertices: 1 + 2 + 4 + 11
        let (_, reps) = iso_classes(&Corpus::graphs(4).members());
        assert_eq!(reps.len(), 18);
        // unlabelled loop-free digraphs on 3 vertices: 16
        let m: Vec<Digraph> = Corpus::digraphs(3).members().into_iter().filter(|g| g.vertex_count() == 3).collect();
        assert_eq!(iso_classes(&m).1.len(), 16);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let r = ops::reverse(&ops::reverse(&g));
        let p = Digraph::new(4, [(3, 2), (2, 1), (1, 3), (1, 0)]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&r));
        assert_eq!(canonical_form(&g), canonical_form(&p));
        assert_ne!(canonical_form(&g), canonical_form(&ops::reverse(&g)));
    }
}
