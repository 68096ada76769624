//! Finite simple digraphs and graphs.
//!
//! Vertices are the dense integers `0..n`. A digraph is a vertex count plus a
//! duplicate-free arc set; loops `(u, u)` are allowed and never dropped. A
//! [`Graph`] is a digraph whose arc relation is symmetric, so an edge `{u, v}`
//! is stored as the two arcs `(u, v)` and `(v, u)`.
//!
//! Constructions whose vertices are structured objects (pairs, subsets,
//! homomorphisms) attach a label table mapping each integer vertex back to the
//! object it stands for. Labels never take part in equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::OnceLock;

use crate::bits;
use crate::error::{GraphError, Result};

/// Largest vertex count for which dense bit rows are built.
pub const MAX_DENSE_VERTICES: usize = 16_384;

/// Out- and in-neighbourhood bit rows, `words` u64s per vertex.
#[derive(Debug)]
pub struct BitRows {
    pub words: usize,
    pub out: Vec<u64>,
    pub inn: Vec<u64>,
}

impl BitRows {
    #[inline]
    pub fn out_row(&self, v: usize) -> &[u64] {
        &self.out[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn in_row(&self, v: usize) -> &[u64] {
        &self.inn[v * self.words..(v + 1) * self.words]
    }
}

#[derive(Clone)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
    rows: OnceLock<std::sync::Arc<BitRows>>,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut v = Vec::new();
        for (a, b) in arcs {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            v.push((a as u32, b as u32));
        }
        Ok(Self::from_raw(n, v))
    }

    /// Builds from arcs already known to be in range.
    pub(crate) fn from_raw(n: usize, mut arcs: Vec<(u32, u32)>) -> Self {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        arcs.sort_unstable();
        arcs.dedup();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            out[a as usize].push(b);
            inn[b as usize].push(a);
        }
        for l in &mut inn {
            l.sort_unstable();
        }
        Digraph { n, arcs, out, inn, labels: None, rows: OnceLock::new() }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_raw(n, Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "label table length must equal vertex count");
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    pub(crate) fn raw_arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    /// Sorted out-neighbours.
    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    /// Sorted in-neighbours.
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.inn[v]
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn has_loop_at(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&v| self.has_loop_at(v))
    }

    pub fn has_loop(&self) -> bool {
        self.arcs.iter().any(|&(a, b)| a == b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetric_arc().is_none()
    }

    fn first_asymmetric_arc(&self) -> Option<(usize, usize)> {
        self.arcs().find(|&(a, b)| !self.has_arc(b, a))
    }

    /// [`Digraph::bit_rows`], refused above [`MAX_DENSE_VERTICES`].
    pub fn try_bit_rows(&self) -> Result<&BitRows> {
        if self.n > MAX_DENSE_VERTICES {
            return Err(GraphError::SizeGuard(format!(
                "{} vertices exceed the dense limit {MAX_DENSE_VERTICES}",
                self.n
            )));
        }
        Ok(self.bit_rows())
    }

    /// Lazily built adjacency bit rows, shared between clones.
    pub fn bit_rows(&self) -> &BitRows {
        self.rows.get_or_init(|| {
            let words = bits::words_for(self.n);
            let mut out = vec![0u64; self.n * words];
            let mut inn = vec![0u64; self.n * words];
            for &(a, b) in &self.arcs {
                let (a, b) = (a as usize, b as usize);
                bits::set(&mut out[a * words..(a + 1) * words], b);
                bits::set(&mut inn[b * words..(b + 1) * words], a);
            }
            std::sync::Arc::new(BitRows { words, out, inn })
        })
    }

    /// Whether `map` is a homomorphism of `self` into `target`.
    pub fn is_hom_to(&self, target: &Digraph, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&x| x < target.n)
            && self.arcs().all(|(a, b)| target.has_arc(map[a], map[b]))
    }

    /// Weakly connected components, each sorted, ordered by least vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.out[v].iter().chain(self.inn[v].iter()) {
                    let w = w as usize;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl Hash for Digraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.arcs.hash(state);
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs).finish()
    }
}

/// A digraph with a symmetric arc relation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph(Digraph);

impl Graph {
    /// Builds a graph from undirected edges, each listed once in either
    /// orientation. `(u, u)` is a loop.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut v = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            v.push((a as u32, b as u32));
            v.push((b as u32, a as u32));
        }
        Ok(Graph(Digraph::from_raw(n, v)))
    }

    pub fn try_from_digraph(d: Digraph) -> Result<Self> {
        match d.first_asymmetric_arc() {
            Some((a, b)) => Err(GraphError::NotSymmetric(a, b)),
            None => Ok(Graph(d)),
        }
    }

    pub(crate) fn from_symmetric(d: Digraph) -> Self {
        debug_assert!(d.is_symmetric());
        Graph(d)
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_digraph(self) -> Digraph {
        self.0
    }

    pub fn with_labels(self, labels: Vec<String>) -> Self {
        Graph(self.0.with_labels(labels))
    }

    /// Edges `{u, v}` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.arcs().filter(|&(a, b)| a <= b)
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.0.out_neighbors(v).len()
    }
}

impl Deref for Graph {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}

impl AsRef<Digraph> for Graph {
    fn as_ref(&self) -> &Digraph {
        &self.0
    }
}

impl From<Graph> for Digraph {
    fn from(g: Graph) -> Digraph {
        g.0
    }
}

impl TryFrom<Digraph> for Graph {
    type Error = GraphError;

    fn try_from(d: Digraph) -> Result<Self> {
        Graph::try_from_digraph(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_arcs() {
        assert_eq!(
            Digraph::new(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, n: 2 }
        );
    }

    #[test]
    fn parallel_arcs_merge_and_loops_survive() {
        let d = Digraph::new(2, [(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(d.arc_count(), 2);
        assert!(d.has_loop_at(1));
        assert!(!d.is_symmetric());
    }

    #[test]
    fn graph_requires_symmetry() {
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(Graph::try_from_digraph(d).unwrap_err(), GraphError::NotSymmetric(0, 1));
        let g = Graph::new(3, [(0, 1), (2, 1)]).unwrap();
        assert_eq!(g.arc_count(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a = Digraph::new(1, []).unwrap();
        let b = a.clone().with_labels(vec!["x".into()]);
        assert_eq!(a, b);
        assert_eq!(b.label(0), "x");
    }

    #[test]
    fn components() {
        let d = Digraph::new(5, [(0, 3), (4, 3)]).unwrap();
        assert_eq!(d.weak_components(), vec![vec![0, 3, 4], vec![1], vec![2]]);
    }
}
