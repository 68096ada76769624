use std::collections::VecDeque;

use crate::bits;
use crate::error::{GraphError, HomError};
use crate::families::{circular_complete, complete};
use crate::fraction::Fraction;
use crate::graph::{Digraph, Graph, MAX_DENSE_VERTICES};
use crate::ops;

use super::{exists_within, ChromaticValue, Deadline, SearchLimits};

const CLIQUE_NODE_BUDGET: u64 = 200_000;

/// Rows of the mutual adjacency relation (`u -> v` and `v -> u`), loops removed.
fn mutual_rows(g: &Digraph) -> (usize, Vec<u64>) {
    let n = g.vertex_count();
    let rows = g.bit_rows();
    let w = rows.words;
    let mut adj = vec![0u64; n * w];
    for v in 0..n {
        let row = &mut adj[v * w..(v + 1) * w];
        for (i, r) in row.iter_mut().enumerate() {
            *r = rows.out_row(v)[i] & rows.in_row(v)[i];
        }
        bits::clear(row, v);
    }
    (w, adj)
}

/// A largest set of pairwise mutually adjacent vertices, sorted.
///
/// Exact branch and bound with a colouring bound; on very large inputs the
/// search stops after a fixed node budget and returns the best clique found,
/// which is still a valid lower bound.
pub fn max_clique(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    if n > MAX_DENSE_VERTICES {
        return greedy_clique(g);
    }
    let (w, adj) = mutual_rows(g);
    let mut best = vec![0usize];
    let mut cur = Vec::new();
    let mut nodes = 0u64;
    expand(&adj, w, &mut cur, bits::full(n), &mut best, &mut nodes);
    best.sort_unstable();
    best
}

/// A maximal clique grown from a vertex of largest degree.
fn greedy_clique(g: &Digraph) -> Vec<usize> {
    let mutual = |v: usize| -> Vec<usize> {
        g.out_neighbors(v).iter().map(|&w| w as usize).filter(|&w| w != v && g.has_arc(w, v)).collect()
    };
    let start = (0..g.vertex_count()).max_by_key(|&v| g.out_neighbors(v).len()).expect("non-empty");
    let mut clique = vec![start];
    for w in mutual(start) {
        if clique.iter().all(|&c| g.has_arc(c, w) && g.has_arc(w, c)) {
            clique.push(w);
        }
    }
    clique.sort_unstable();
    clique
}

fn expand(adj: &[u64], w: usize, cur: &mut Vec<usize>, mut cand: Vec<u64>, best: &mut Vec<usize>, nodes: &mut u64) {
    *nodes += 1;
    if *nodes > CLIQUE_NODE_BUDGET {
        return;
    }
    // Greedy colour classes of the candidates give the bound.
    let mut order = Vec::new();
    let mut uncol = cand.clone();
    let mut colour = 0;
    while !bits::is_zero(&uncol) {
        colour += 1;
        let mut avail = uncol.clone();
        while let Some(v) = bits::first(&avail) {
            bits::clear(&mut avail, v);
            bits::clear(&mut uncol, v);
            for (a, r) in avail.iter_mut().zip(&adj[v * w..(v + 1) * w]) {
                *a &= !r;
            }
            order.push((v, colour));
        }
    }
    for &(v, c) in order.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        let next: Vec<u64> = cand.iter().zip(&adj[v * w..(v + 1) * w]).map(|(a, b)| a & b).collect();
        if bits::is_zero(&next) {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(adj, w, cur, next, best, nodes);
        }
        cur.pop();
        bits::clear(&mut cand, v);
    }
}

/// DSatur colouring of the underlying undirected graph (loops ignored).
/// Returns one colour per vertex, colours numbered from 0.
pub fn greedy_colouring(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    let s = ops::symmetrize(g);
    let mut colour = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| (sat[v], s.out_neighbors(v).len(), std::cmp::Reverse(v)))
            .expect("uncoloured vertex remains");
        let c = (0..).find(|&c| seen[v].get(c) != Some(&true)).expect("unbounded");
        colour[v] = c;
        for &u in s.out_neighbors(v) {
            let u = u as usize;
            if u == v || colour[u] != usize::MAX {
                continue;
            }
            let sv = &mut seen[u];
            if sv.len() <= c {
                sv.resize(c + 1, false);
            }
            if !sv[c] {
                sv[c] = true;
                sat[u] += 1;
            }
        }
    }
    colour
}

/// `χ(G)`, colouring the underlying undirected graph.
pub fn chromatic_number(g: &Digraph) -> ChromaticValue {
    try_chromatic_number(g, &SearchLimits::default()).expect("unlimited search cannot abort")
}

pub fn try_chromatic_number(g: &Digraph, limits: &SearchLimits) -> Result<ChromaticValue, HomError> {
    chromatic_within(g, limits.start())
}

pub(crate) fn chromatic_within(g: &Digraph, dl: Deadline) -> Result<ChromaticValue, HomError> {
    if g.has_loop() {
        return Ok(ChromaticValue::Infinite);
    }
    if g.vertex_count() == 0 {
        return Ok(ChromaticValue::Finite(0));
    }
    if g.arc_count() == 0 {
        return Ok(ChromaticValue::Finite(1));
    }
    let s = ops::symmetrize(g);
    let lo = max_clique(&s).len().max(2);
    let hi = greedy_colouring(&s).into_iter().max().expect("non-empty") + 1;
    for k in lo..hi {
        if exists_within(&s, &complete(k), dl)?.is_some() {
            return Ok(ChromaticValue::Finite(k));
        }
    }
    Ok(ChromaticValue::Finite(hi))
}

/// `χ_c(G)`: the least `s/r` with `G -> K_{s/r}`. The minimum is attained
/// with `s <= |V(G)|`, so only those numerators are tried. Edgeless non-empty
/// graphs give `1/1`.
pub fn circular_chromatic_number(g: &Graph) -> Result<Fraction, GraphError> {
    match try_circular_chromatic_number(g, &SearchLimits::default()) {
        Ok(f) => Ok(f),
        Err(HomError::Graph(e)) => Err(e),
        Err(e) => unreachable!("unlimited search aborted: {e}"),
    }
}

pub fn try_circular_chromatic_number(g: &Graph, limits: &SearchLimits) -> Result<Fraction, HomError> {
    let n = g.vertex_count();
    if let Some(v) = g.loops().next() {
        return Err(GraphError::LoopNotAllowed(v).into());
    }
    if n == 0 {
        return Err(GraphError::InvalidParameter("circular chromatic number of the empty graph".into()).into());
    }
    if g.arc_count() == 0 {
        return Ok(Fraction::integer(1)?);
    }
    let dl = limits.start();
    let chi = chromatic_within(g, dl)?.finite().expect("loop-free") as u64;
    if chi == 2 {
        return Ok(Fraction::integer(2)?);
    }
    // χ - 1 < χ_c <= χ; the hom order on K_{s/r} follows the fractions, so
    // the feasible candidates form a suffix of the sorted list.
    let mut cands: Vec<Fraction> = Vec::new();
    for r in 1..=n as u64 {
        for s in (chi - 1) * r + 1..=(chi * r).min(n as u64) {
            let f = Fraction::new(s, r)?;
            if f.den() == r {
                cands.push(f);
            }
        }
    }
    cands.sort_unstable();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let f = cands[mid];
        let k = circular_complete(f.num() as usize, f.den() as usize)?;
        if exists_within(g, &k, dl)?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo])
}

/// Length of a shortest odd closed walk, which is also the length of a
/// shortest odd cycle; `None` for bipartite graphs. A loop counts as 1.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    odd_girth_symmetric(g)
}

/// [`odd_girth`] for a digraph whose arcs are symmetric.
pub(crate) fn odd_girth_symmetric(g: &Digraph) -> Option<usize> {
    let n = g.vertex_count();
    if g.has_loop() {
        return Some(1);
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; 2 * n];
    for s in 0..n {
        // BFS on the bipartite double cover: state 2v + parity.
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[2 * s] = 0;
        let mut q = VecDeque::from([2 * s]);
        while let Some(x) = q.pop_front() {
            let (v, p) = (x / 2, x % 2);
            let d = dist[x];
            if best.is_some_and(|b| d + 1 >= b) {
                break;
            }
            for &u in g.out_neighbors(v) {
                let y = 2 * u as usize + (1 - p);
                if dist[y] == usize::MAX {
                    dist[y] = d + 1;
                    q.push_back(y);
                }
            }
        }
        let d = dist[2 * s + 1];
        if d != usize::MAX && best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    }
    best
}

/// A core of `G` together with the original vertices it occupies.
#[derive(Clone, Debug)]
pub struct CoreReduction {
    pub core: Digraph,
    pub vertices: Vec<usize>,
}

/// An induced subgraph of `G` that is homomorphically equivalent to `G` and
/// has no homomorphism to a proper subgraph of itself.
pub fn core_reduce(g: &Digraph) -> Digraph {
    try_core_reduce(g, &SearchLimits::default()).expect("unlimited search cannot abort").core
}

pub fn try_core_reduce(g: &Digraph, limits: &SearchLimits) -> Result<CoreReduction, HomError> {
    let (keep, status) = reduce(g, limits.start());
    status?;
    Ok(CoreReduction { core: ops::induced_subgraph(g, &keep)?, vertices: keep })
}

/// Reduces as far as the deadline allows. The result is always
/// homomorphically equivalent to `g`; the flag says whether it is a core.
pub(crate) fn core_reduce_best_effort(g: &Digraph, dl: Deadline) -> (Digraph, bool) {
    let (keep, status) = reduce(g, dl);
    let d = ops::induced_subgraph(g, &keep).expect("vertices in range");
    (d, status.is_ok())
}

fn reduce(g: &Digraph, dl: Deadline) -> (Vec<usize>, Result<(), HomError>) {
    let n = g.vertex_count();
    if n == 0 {
        return (Vec::new(), Ok(()));
    }
    if let Some(l) = g.loops().next() {
        return (vec![l], Ok(()));
    }
    if g.arc_count() == 0 {
        return (vec![0], Ok(()));
    }
    if let Err(e) = g.try_bit_rows() {
        return ((0..n).collect(), Err(e.into()));
    }
    let clique = max_clique(g);
    if clique.len() >= 2 {
        match exists_within(g, &complete(clique.len()), dl) {
            Ok(Some(_)) => return (clique, Ok(())),
            Ok(None) => {}
            Err(e) => return ((0..n).collect(), Err(e)),
        }
    }

    let mut keep = fold_dominated(g, (0..n).collect());
    'outer: loop {
        let h = ops::induced_subgraph(g, &keep).expect("in range");
        for i in 0..keep.len() {
            if let Err(e) = dl.check() {
                return (keep, Err(e));
            }
            let rest: Vec<usize> = (0..keep.len()).filter(|&j| j != i).collect();
            let target = ops::induced_subgraph(&h, &rest).expect("in range");
            match exists_within(&h, &target, dl) {
                Ok(Some(w)) => {
                    let mut image: Vec<usize> = w.map().iter().map(|&j| keep[rest[j]]).collect();
                    image.sort_unstable();
                    image.dedup();
                    keep = fold_dominated(g, image);
                    continue 'outer;
                }
                Ok(None) => {}
                Err(e) => return (keep, Err(e)),
            }
        }
        return (keep, Ok(()));
    }
}

/// Drops vertices `u` whose in- and out-neighbourhoods (within `keep`) are
/// contained in those of another kept vertex `w`; `u ↦ w` is then a
/// homomorphism onto the rest in a loop-free digraph.
fn fold_dominated(g: &Digraph, mut keep: Vec<usize>) -> Vec<usize> {
    let rows = g.bit_rows();
    let w = rows.words;
    loop {
        let mut alive = vec![0u64; w];
        for &v in &keep {
            bits::set(&mut alive, v);
        }
        let mut removed = false;
        for &u in &keep {
            if !bits::test(&alive, u) {
                continue;
            }
            let dominated = keep.iter().any(|&x| {
                x != u
                    && bits::test(&alive, x)
                    && (0..w).all(|i| {
                        let a = alive[i];
                        rows.out_row(u)[i] & a & !rows.out_row(x)[i] == 0
                            && rows.in_row(u)[i] & a & !rows.in_row(x)[i] == 0
                    })
            });
            if dominated {
                bits::clear(&mut alive, u);
                removed = true;
            }
        }
        keep.retain(|&v| bits::test(&alive, v));
        if !removed {
            return keep;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, kneser, looped_vertex, path, transitive_tournament};

    #[test]
    fn chromatic_examples() {
        for n in 0..6 {
            assert_eq!(chromatic_number(&complete(n)), ChromaticValue::Finite(n));
        }
        assert_eq!(chromatic_number(&looped_vertex()), ChromaticValue::Infinite);
        assert_eq!(chromatic_number(&kneser(5, 2).unwrap()), ChromaticValue::Finite(3));
        assert_eq!(chromatic_number(&cycle(4).unwrap()), ChromaticValue::Finite(2));
        assert_eq!(chromatic_number(&transitive_tournament(4)), ChromaticValue::Finite(4));
        assert_eq!(chromatic_number(&Digraph::empty(3)), ChromaticValue::Finite(1));
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&complete(5)), vec![0, 1, 2, 3, 4]);
        assert_eq!(max_clique(&cycle(5).unwrap()).len(), 2);
        assert_eq!(max_clique(&kneser(5, 2).unwrap()).len(), 2);
        // one-way arcs do not count
        assert_eq!(max_clique(&transitive_tournament(4)).len(), 1);
    }

    #[test]
    fn circular_examples() {
        assert_eq!(circular_chromatic_number(&cycle(5).unwrap()).unwrap(), Fraction::new(5, 2).unwrap());
        assert_eq!(circular_chromatic_number(&complete(4)).unwrap(), Fraction::integer(4).unwrap());
        let k73 = circular_complete(7, 3).unwrap();
        assert_eq!(circular_chromatic_number(&k73).unwrap(), Fraction::new(7, 3).unwrap());
        assert_eq!(circular_chromatic_number(&cycle(4).unwrap()).unwrap(), Fraction::integer(2).unwrap());
        assert!(circular_chromatic_number(&looped_vertex()).is_err());
        assert_eq!(circular_chromatic_number(&Graph::new(2, []).unwrap()).unwrap(), Fraction::integer(1).unwrap());
    }

    #[test]
    fn odd_girths() {
        assert_eq!(odd_girth(&complete(3)), Some(3));
        assert_eq!(odd_girth(&cycle(4).unwrap()), None);
        assert_eq!(odd_girth(&cycle(9).unwrap()), Some(9));
        assert_eq!(odd_girth(&kneser(5, 2).unwrap()), Some(5));
    }

    #[test]
    fn cores() {
        assert_eq!(core_reduce(&path(3)), complete(2).into_digraph());
        assert_eq!(core_reduce(&complete(4)), complete(4).into_digraph());
        let c5 = cycle(5).unwrap();
        assert_eq!(core_reduce(&c5), c5.clone().into_digraph());
        // C_9 with the chord {0,2} closes a triangle
        let g = Graph::new(9, (0..9).map(|i| (i, (i + 1) % 9)).chain([(0, 2)])).unwrap();
        let core = core_reduce(&g);
        assert_eq!(core, complete(3).into_digraph());
        // C_5 plus a pendant path retracts onto the C_5
        let tail = Graph::new(7, (0..5).map(|i| (i, (i + 1) % 5)).chain([(0, 5), (5, 6)])).unwrap();
        assert_eq!(core_reduce(&tail).vertex_count(), 5);
        assert_eq!(core_reduce(&transitive_tournament(3)).vertex_count(), 3);
        assert_eq!(core_reduce(&crate::families::directed_path(4)), crate::families::directed_path(4));
    }
}
