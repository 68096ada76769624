//! Products, quotients and other structural operations.
//!
//! Product vertices `(a, b)` are numbered `a * |V(H)| + b`; the label table
//! records the pair.

use crate::error::{GraphError, Result};
use crate::graph::{Digraph, Graph};

fn pair_labels(g: &Digraph, h: &Digraph) -> Vec<String> {
    let mut labels = Vec::with_capacity(g.vertex_count() * h.vertex_count());
    for a in 0..g.vertex_count() {
        for b in 0..h.vertex_count() {
            labels.push(format!("({},{})", g.label(a), h.label(b)));
        }
    }
    labels
}

/// The categorical product: `((a,b),(c,d))` is an arc iff `(a,c)` and `(b,d)` are.
pub fn direct_product(g: &Digraph, h: &Digraph) -> Digraph {
    let m = h.vertex_count();
    let mut arcs = Vec::with_capacity(g.arc_count() * h.arc_count());
    for (a, c) in g.arcs() {
        for (b, d) in h.arcs() {
            arcs.push(((a * m + b) as u32, (c * m + d) as u32));
        }
    }
    Digraph::from_raw(g.vertex_count() * m, arcs).with_labels(pair_labels(g, h))
}

/// Direct product of two graphs, which is again a graph.
pub fn direct_product_graph(g: &Graph, h: &Graph) -> Graph {
    Graph::from_symmetric(direct_product(g, h))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let mut arcs = Vec::new();
    for (a, c) in g.arcs() {
        for b in 0..m {
            arcs.push(((a * m + b) as u32, (c * m + b) as u32));
        }
    }
    for a in 0..n {
        for (b, d) in h.arcs() {
            arcs.push(((a * m + b) as u32, (a * m + d) as u32));
        }
    }
    Graph::from_symmetric(Digraph::from_raw(n * m, arcs).with_labels(pair_labels(g, h)))
}

/// `G ∘ H`: `G` is the outer factor, so a `G`-edge joins every pair of
/// second coordinates.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let mut arcs = Vec::new();
    for (a, c) in g.arcs() {
        for b in 0..m {
            for d in 0..m {
                arcs.push(((a * m + b) as u32, (c * m + d) as u32));
            }
        }
    }
    for a in 0..n {
        for (b, d) in h.arcs() {
            arcs.push(((a * m + b) as u32, (a * m + d) as u32));
        }
    }
    Graph::from_symmetric(Digraph::from_raw(n * m, arcs).with_labels(pair_labels(g, h)))
}

pub fn symmetrize(d: &Digraph) -> Graph {
    let arcs = d.raw_arcs().iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let mut out = Digraph::from_raw(d.vertex_count(), arcs);
    if let Some(l) = d.labels() {
        out = out.with_labels(l.to_vec());
    }
    Graph::from_symmetric(out)
}

pub fn reverse(d: &Digraph) -> Digraph {
    let arcs = d.raw_arcs().iter().map(|&(a, b)| (b, a)).collect();
    let out = Digraph::from_raw(d.vertex_count(), arcs);
    match d.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => out,
    }
}

/// Which arc of an edge `{u, v}` an orientation keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrientRule {
    /// Keep `(u, v)` with `u < v`.
    #[default]
    LowToHigh,
    HighToLow,
}

pub fn orient(g: &Graph, rule: OrientRule) -> Result<Digraph> {
    if let Some(v) = g.loops().next() {
        return Err(GraphError::LoopNotAllowed(v));
    }
    let arcs = g
        .raw_arcs()
        .iter()
        .copied()
        .filter(|&(a, b)| match rule {
            OrientRule::LowToHigh => a < b,
            OrientRule::HighToLow => a > b,
        })
        .collect();
    Ok(Digraph::from_raw(g.vertex_count(), arcs))
}

/// Subgraph induced by `keep` (deduplicated); kept vertices are renumbered in
/// increasing order.
pub fn induced_subgraph(g: &Digraph, keep: &[usize]) -> Result<Digraph> {
    let n = g.vertex_count();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut index = vec![u32::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        index[v] = i as u32;
    }
    let mut arcs = Vec::new();
    for &v in &keep {
        for &w in g.out_neighbors(v) {
            let j = index[w as usize];
            if j != u32::MAX {
                arcs.push((index[v], j));
            }
        }
    }
    let out = Digraph::from_raw(keep.len(), arcs);
    Ok(match g.labels() {
        Some(l) => out.with_labels(keep.iter().map(|&v| l[v].clone()).collect()),
        None => out,
    })
}

pub fn induced_subgraph_graph(g: &Graph, keep: &[usize]) -> Result<Graph> {
    induced_subgraph(g, keep).map(Graph::from_symmetric)
}

/// `G + H` with the vertices of `H` shifted by `|V(G)|`.
pub fn disjoint_union(g: &Digraph, h: &Digraph) -> Digraph {
    let off = g.vertex_count() as u32;
    let arcs = g
        .raw_arcs()
        .iter()
        .copied()
        .chain(h.raw_arcs().iter().map(|&(a, b)| (a + off, b + off)))
        .collect();
    let out = Digraph::from_raw(g.vertex_count() + h.vertex_count(), arcs);
    if g.labels().is_none() && h.labels().is_none() {
        return out;
    }
    let labels = (0..g.vertex_count())
        .map(|v| g.label(v))
        .chain((0..h.vertex_count()).map(|v| h.label(v)))
        .collect();
    out.with_labels(labels)
}

/// Union-find with the smallest index as representative.
pub(crate) struct MinUnionFind {
    parent: Vec<usize>,
}

impl MinUnionFind {
    pub fn new(n: usize) -> Self {
        MinUnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Quotient by the equivalence closure of `pairs`.
///
/// Each class is represented by its least original vertex; representatives
/// are renumbered in increasing order. Arcs are carried over, so identifying
/// the ends of an arc produces a loop. Returns the quotient and the map from
/// original vertices to quotient vertices.
pub fn identify_with_map(g: &Digraph, pairs: &[(usize, usize)]) -> Result<(Digraph, Vec<usize>)> {
    let n = g.vertex_count();
    let mut uf = MinUnionFind::new(n);
    for &(a, b) in pairs {
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        uf.union(a, b);
    }
    let mut new_index = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if r == v {
            new_index[v] = reps.len();
            reps.push(v);
        }
    }
    let map: Vec<usize> = (0..n).map(|v| new_index[uf.find(v)]).collect();
    let arcs = g.raw_arcs().iter().map(|&(a, b)| (map[a as usize] as u32, map[b as usize] as u32)).collect();
    let mut out = Digraph::from_raw(reps.len(), arcs);
    if let Some(l) = g.labels() {
        out = out.with_labels(reps.iter().map(|&r| l[r].clone()).collect());
    }
    Ok((out, map))
}

pub fn identify(g: &Digraph, pairs: &[(usize, usize)]) -> Result<Digraph> {
    identify_with_map(g, pairs).map(|(d, _)| d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, directed_path, path, transitive_tournament};

    #[test]
    fn direct_product_counts() {
        let k2 = complete(2);
        let p = direct_product(&k2, &k2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.arc_count(), 4);
        // (0,0)-(1,1) and (0,1)-(1,0)
        assert!(p.has_arc(0, 3) && p.has_arc(1, 2));
        assert_eq!(p.label(3), "(1,1)");
    }

    #[test]
    fn cartesian_k2_square_is_c4() {
        let c = cartesian_product(&complete(2), &complete(2));
        assert_eq!(c.edge_count(), 4);
        assert!((0..4).all(|v| c.degree(v) == 2));
    }

    #[test]
    fn lexicographic_k2_k2_is_k4() {
        let l = lexicographic_product(&complete(2), &complete(2));
        assert_eq!(l, complete(4));
    }

    #[test]
    fn products_with_k1() {
        let c5 = cycle(5).unwrap();
        let k1 = complete(1);
        assert_eq!(cartesian_product(&c5, &k1).into_digraph(), c5.as_digraph().clone());
        assert_eq!(lexicographic_product(&c5, &k1).into_digraph(), c5.as_digraph().clone());
    }

    #[test]
    fn orient_reverse_symmetrize() {
        let k3 = complete(3);
        assert_eq!(orient(&k3, OrientRule::LowToHigh).unwrap(), transitive_tournament(3));
        let r = reverse(&directed_path(2));
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
        assert_eq!(symmetrize(&orient(&k3, OrientRule::HighToLow).unwrap()), k3);
        let looped = Graph::new(1, [(0, 0)]).unwrap();
        assert_eq!(orient(&looped, OrientRule::LowToHigh).unwrap_err(), GraphError::LoopNotAllowed(0));
    }

    #[test]
    fn induced_and_identify() {
        let k4 = complete(4);
        assert_eq!(induced_subgraph(&k4, &[2, 0, 1]).unwrap(), complete(3).into_digraph());
        assert!(induced_subgraph(&k4, &[7]).is_err());

        let two = disjoint_union(&complete(2), &complete(2));
        let wedge = identify(&two, &[(1, 2)]).unwrap();
        assert_eq!(wedge, path(2).into_digraph());

        let looped = identify(&complete(2), &[(0, 1)]).unwrap();
        assert!(looped.has_loop_at(0));
        assert!(identify(&complete(2), &[(0, 5)]).is_err());
    }
}
