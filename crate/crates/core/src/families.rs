//! Named graph and digraph families.

use crate::error::{GraphError, Result};
use crate::graph::{Digraph, Graph};
use crate::ops;

fn bad(msg: String) -> GraphError {
    GraphError::InvalidParameter(msg)
}

/// `K_n`: all arcs `(i, j)` with `i != j`.
pub fn complete(n: usize) -> Graph {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            if i != j {
                arcs.push((i, j));
            }
        }
    }
    Graph::from_symmetric(Digraph::from_raw(n, arcs))
}

/// A single vertex carrying a loop.
pub fn looped_vertex() -> Graph {
    Graph::from_symmetric(Digraph::from_raw(1, vec![(0, 0)]))
}

/// The path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Graph {
    Graph::new(k + 1, (0..k).map(|i| (i, i + 1))).expect("in range")
}

/// The cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(bad(format!("cycle length {k} < 3")));
    }
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// The directed path with `i` arcs `(0,1), …, (i-1,i)`.
pub fn directed_path(i: usize) -> Digraph {
    Digraph::from_raw(i + 1, (0..i as u32).map(|j| (j, j + 1)).collect())
}

/// The transitive tournament: arcs `(i, j)` with `i < j`.
pub fn transitive_tournament(n: usize) -> Digraph {
    let mut arcs = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            arcs.push((i, j));
        }
    }
    Digraph::from_raw(n, arcs)
}

/// The circular complete graph `K_{s/r}` on `Z_s`: `{x, y}` is an edge iff
/// `(y - x) mod s` lies in `r..=s-r`. Requires `1 <= r` and `2r <= s`.
pub fn circular_complete(s: usize, r: usize) -> Result<Graph> {
    if r < 1 || 2 * r > s {
        return Err(bad(format!("K_{{{s}/{r}}} needs 1 <= r <= s/2")));
    }
    let mut arcs = Vec::new();
    for x in 0..s {
        for d in r..=s - r {
            arcs.push((x as u32, ((x + d) % s) as u32));
        }
    }
    Ok(Graph::from_symmetric(Digraph::from_raw(s, arcs)))
}

/// All `m`-subsets of `0..n` as bit masks, in lexicographic order of their
/// sorted element lists.
pub(crate) fn combinations(n: usize, m: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if m <= n {
        rec(0, n, m, 0, &mut out);
    }
    out
}

/// The Kneser graph `K(n, m)`: `m`-subsets of `0..n`, adjacent when disjoint.
/// Vertex `i` is the `i`-th subset in lexicographic order.
pub fn kneser(n: usize, m: usize) -> Result<Graph> {
    if m < 1 || m > n || n > 63 {
        return Err(bad(format!("K({n},{m}) needs 1 <= m <= n <= 63")));
    }
    let sets = combinations(n, m);
    let mut arcs = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if a & b == 0 {
                arcs.push((i as u32, j as u32));
            }
        }
    }
    let labels = sets.iter().map(|&s| crate::bits::mask_label(s)).collect();
    Ok(Graph::from_symmetric(Digraph::from_raw(sets.len(), arcs)).with_labels(labels))
}

/// `G_{m,n}`: `K_{7/2}` and `K_m` joined by a path with `n` edges, one end of
/// the path identified with vertex 0 of `K_{7/2}` and the other with the first
/// vertex of `K_m`. Vertices `0..7` are the `K_{7/2}`.
pub fn pendant_join(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(bad(format!("G_{{{m},{n}}} needs m, n >= 1")));
    }
    let k72 = circular_complete(7, 2)?;
    let joined = ops::disjoint_union(&ops::disjoint_union(&k72, &path(n)), &complete(m));
    let path_start = 7;
    let path_end = 7 + n;
    let clique_first = 7 + n + 1;
    let d = ops::identify(&joined, &[(0, path_start), (path_end, clique_first)])?;
    Ok(Graph::from_symmetric(d))
}

/// Shift graph `S(n, k)`: the arc graph applied `k - 1` times to the
/// transitive tournament on `n` vertices.
pub fn shift_graph(n: usize, k: usize) -> Result<Digraph> {
    if k < 1 {
        return Err(bad("shift graph needs k >= 1".into()));
    }
    let mut g = transitive_tournament(n);
    for _ in 1..k {
        g = crate::pultr::delta(&g);
    }
    Ok(g)
}

/// A family member named by a descriptor such as `K:4`, `Kc:12/5` or `S:8,3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CircularComplete(usize, usize),
    Kneser(usize, usize),
    TransitiveTournament(usize),
    PendantJoin(usize, usize),
    Shift(usize, usize),
}

impl Family {
    pub fn build(self) -> Result<Digraph> {
        Ok(match self {
            Family::Complete(n) => complete(n).into_digraph(),
            Family::Cycle(k) => cycle(k)?.into_digraph(),
            Family::Path(k) => path(k).into_digraph(),
            Family::CircularComplete(s, r) => circular_complete(s, r)?.into_digraph(),
            Family::Kneser(n, m) => kneser(n, m)?.into_digraph(),
            Family::TransitiveTournament(n) => transitive_tournament(n),
            Family::PendantJoin(m, n) => pendant_join(m, n)?.into_digraph(),
            Family::Shift(n, k) => shift_graph(n, k)?,
        })
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "K:{n}"),
            Family::Cycle(k) => write!(f, "C:{k}"),
            Family::Path(k) => write!(f, "P:{k}"),
            Family::CircularComplete(s, r) => write!(f, "Kc:{s}/{r}"),
            Family::Kneser(n, m) => write!(f, "Kneser:{n},{m}"),
            Family::TransitiveTournament(n) => write!(f, "TT:{n}"),
            Family::PendantJoin(m, n) => write!(f, "Gmn:{m},{n}"),
            Family::Shift(n, k) => write!(f, "S:{n},{k}"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = s.split_once(':').ok_or_else(|| bad(format!("expected <family>:<args>, got {s:?}")))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad(format!("{s:?}: not a number: {t:?}")));
        let two = |sep: char| -> Result<(usize, usize)> {
            let (a, b) = arg.split_once(sep).ok_or_else(|| bad(format!("{s:?}: expected a{sep}b")))?;
            Ok((num(a)?, num(b)?))
        };
        let f = match head {
            "K" => Family::Complete(num(arg)?),
            "C" => Family::Cycle(num(arg)?),
            "P" => Family::Path(num(arg)?),
            "TT" => Family::TransitiveTournament(num(arg)?),
            "Kc" => {
                let (s, r) = two('/')?;
                Family::CircularComplete(s, r)
            }
            "Kneser" => {
                let (n, m) = two(',')?;
                Family::Kneser(n, m)
            }
            "Gmn" => {
                let (m, n) = two(',')?;
                Family::PendantJoin(m, n)
            }
            "S" => {
                let (n, k) = two(',')?;
                Family::Shift(n, k)
            }
            _ => return Err(bad(format!("unknown family {head:?}"))),
        };
        Ok(f)
    }
}
