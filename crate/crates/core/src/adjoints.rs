//! Explicit right adjoints: `Ω_T(3)`, `Ω_T(2k+1)`, `δ_R` and the partial
//! adjoint `Ω_T(2)`.
//!
//! Vertices are tuples of vertex subsets held as `u64` masks. Tuples are
//! generated by extending partial tuples only within the sets their
//! constraints still allow, and neighbours are generated the same way from
//! each vertex. Vertex numbering follows lexicographic order of the tuple of
//! masks (the singleton `A₀ = {u}` compared by `u`).

use std::collections::HashMap;

use crate::bits::{mask_label, submasks};
use crate::error::{GraphError, Result};
use crate::graph::{Digraph, Graph};

/// Largest input for any construction here.
pub const MAX_INPUT_VERTICES: usize = 30;
/// `δ_R` has up to `3^n` vertices.
pub const MAX_DELTA_R_INPUT: usize = 20;
pub const MAX_OUTPUT_VERTICES: usize = 500_000;
pub const MAX_OUTPUT_ARCS: usize = 50_000_000;

fn guard_input(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(GraphError::SizeGuard(format!("{what} input has {n} vertices, limit {max}")));
    }
    Ok(())
}

fn guard_vertices(count: usize, what: &str) -> Result<()> {
    if count > MAX_OUTPUT_VERTICES {
        return Err(GraphError::SizeGuard(format!("{what} exceeds {MAX_OUTPUT_VERTICES} vertices")));
    }
    Ok(())
}

fn guard_arcs(count: usize, what: &str) -> Result<()> {
    if count > MAX_OUTPUT_ARCS {
        return Err(GraphError::SizeGuard(format!("{what} exceeds {MAX_OUTPUT_ARCS} arcs")));
    }
    Ok(())
}

/// Out-neighbourhood masks and the "common out-neighbourhood" operator.
struct Masks {
    full: u64,
    out: Vec<u64>,
}

impl Masks {
    fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let out = (0..n).map(|v| g.out_neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
        Masks { full, out }
    }

    /// Vertices receiving an arc from every member of `a`.
    fn common(&self, a: u64) -> u64 {
        crate::bits::mask_ones(a).fold(self.full, |m, v| m & self.out[v])
    }
}

/// `Ω_T(3)(G)`: vertices `(u, U)` with `U ⊆ N(u)`; `(u,U) ~ (v,V)` iff
/// `u ∈ V`, `v ∈ U` and `U`, `V` are completely joined.
pub fn omega3(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    guard_input(n, MAX_INPUT_VERTICES, "omega3")?;
    let mk = Masks::new(g);
    let mut offset = vec![0usize; n + 1];
    for u in 0..n {
        offset[u + 1] = offset[u] + (1usize << mk.out[u].count_ones());
    }
    let total = offset[n];
    guard_vertices(total, "omega3")?;
    // Submasks of N(u) are listed in increasing order, so the rank of V
    // among them is V with the bits of N(u) compressed.
    let index = |v: usize, m: u64| offset[v] + compress(m, mk.out[v]) as usize;

    let mut arcs = Vec::new();
    let mut labels = Vec::with_capacity(total);
    for u in 0..n {
        for uu in submasks(mk.out[u]) {
            labels.push(format!("({u},{})", mask_label(uu)));
            let a = index(u, uu) as u32;
            let cu = mk.common(uu);
            for v in crate::bits::mask_ones(uu) {
                let room = cu & mk.out[v];
                if room >> u & 1 == 0 {
                    continue;
                }
                let rest = room & !(1u64 << u);
                for s in submasks(rest) {
                    arcs.push((a, index(v, s | 1 << u) as u32));
                }
                guard_arcs(arcs.len(), "omega3")?;
            }
        }
    }
    Ok(Graph::from_symmetric(Digraph::from_raw(total, arcs).with_labels(labels)))
}

/// Packs the bits of `x` selected by `mask` into the low bits.
fn compress(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    for v in crate::bits::mask_ones(mask) {
        if x >> v & 1 == 1 {
            out |= 1 << bit;
        }
        bit += 1;
    }
    out
}

/// `Ω_T(2k+1)(G)`. Vertices are tuples `(A₀, …, A_k)` with `A₀ = {u}`,
/// consecutive sets completely joined and `A_{i-1} ⊆ A_{i+1}`. `(A) ~ (B)`
/// iff `A_{i-1} ⊆ B_i` and `B_{i-1} ⊆ A_i` for `i = 1..=k`, and `A_k`, `B_k`
/// are completely joined. `omega_odd(1, G)` is [`omega3`] with `u` read as
/// `{u}`.
pub fn omega_odd(k: usize, g: &Graph) -> Result<Graph> {
    if k < 1 {
        return Err(GraphError::InvalidParameter("omega_odd needs k >= 1".into()));
    }
    let n = g.vertex_count();
    guard_input(n, MAX_INPUT_VERTICES, "omega_odd")?;
    let mk = Masks::new(g);

    // Vertex generation: A_{i+1} = A_{i-1} ∪ S with S ⊆ N(A_i) \ A_{i-1}.
    let mut verts: Vec<Vec<u64>> = Vec::new();
    let mut cur = vec![0u64; k + 1];
    fn gen(mk: &Masks, cur: &mut Vec<u64>, i: usize, out: &mut Vec<Vec<u64>>) -> Result<()> {
        let k = cur.len() - 1;
        if i > k {
            out.push(cur.clone());
            return guard_vertices(out.len(), "omega_odd");
        }
        let lower = if i >= 2 { cur[i - 2] } else { 0 };
        let upper = mk.common(cur[i - 1]);
        if lower & !upper != 0 {
            return Ok(());
        }
        for s in submasks(upper & !lower) {
            cur[i] = lower | s;
            gen(mk, cur, i + 1, out)?;
        }
        Ok(())
    }
    for u in 0..n {
        cur[0] = 1 << u;
        gen(&mk, &mut cur, 1, &mut verts)?;
    }
    let index: HashMap<&[u64], u32> = verts.iter().enumerate().map(|(i, v)| (v.as_slice(), i as u32)).collect();

    // Neighbour generation from A: B_0 = {v} with v ∈ A_1, and for i >= 1
    // A_{i-1} ⊆ B_i ⊆ A_{i+1} (i < k), A_{k-1} ⊆ B_k ⊆ N(A_k), on top of the
    // vertex constraints B_{i-1} ⊆ B_{i+1} ⊆ N(B_i).
    struct Nb<'a> {
        mk: &'a Masks,
        a: &'a [u64],
        ck: u64,
    }
    fn nb(ctx: &Nb, cur: &mut Vec<u64>, i: usize, found: &mut Vec<Vec<u64>>) {
        let k = cur.len() - 1;
        if i > k {
            found.push(cur.clone());
            return;
        }
        let mut lower = ctx.a[i - 1];
        if i >= 2 {
            lower |= cur[i - 2];
        }
        let mut upper = ctx.mk.common(cur[i - 1]);
        upper &= if i < k { ctx.a[i + 1] } else { ctx.ck };
        if lower & !upper != 0 {
            return;
        }
        for s in submasks(upper & !lower) {
            cur[i] = lower | s;
            nb(ctx, cur, i + 1, found);
        }
    }

    let mut arcs = Vec::new();
    let mut found = Vec::new();
    for (ai, a) in verts.iter().enumerate() {
        let ctx = Nb { mk: &mk, a, ck: mk.common(a[k]) };
        for v in crate::bits::mask_ones(a[1]) {
            cur[0] = 1 << v;
            found.clear();
            nb(&ctx, &mut cur, 1, &mut found);
            for b in &found {
                arcs.push((ai as u32, index[b.as_slice()]));
            }
        }
        guard_arcs(arcs.len(), "omega_odd")?;
    }
    let labels = verts
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(|&m| mask_label(m)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Graph::from_symmetric(Digraph::from_raw(verts.len(), arcs).with_labels(labels)))
}

/// `δ_R(G)`: vertices are pairs `(U, V)` with every `(u, v) ∈ U × V` an arc
/// (empty sets allowed); `(U,V) -> (W,X)` iff `V ∩ W ≠ ∅`.
pub fn delta_right(g: &Digraph) -> Result<Digraph> {
    let n = g.vertex_count();
    guard_input(n, MAX_DELTA_R_INPUT, "delta_right")?;
    let mk = Masks::new(g);
    let mut verts: Vec<(u64, u64)> = Vec::new();
    for u in 0..=mk.full {
        for v in submasks(mk.common(u)) {
            verts.push((u, v));
            guard_vertices(verts.len(), "delta_right")?;
        }
    }
    // Vertices are grouped by first component, in increasing order.
    let mut groups: Vec<(u64, std::ops::Range<usize>)> = Vec::new();
    for (i, &(u, _)) in verts.iter().enumerate() {
        match groups.last_mut() {
            Some((w, r)) if *w == u => r.end = i + 1,
            _ => groups.push((u, i..i + 1)),
        }
    }
    let mut arcs = Vec::new();
    for (i, &(_, v)) in verts.iter().enumerate() {
        for (w, r) in &groups {
            if v & w != 0 {
                arcs.extend(r.clone().map(|j| (i as u32, j as u32)));
            }
        }
        guard_arcs(arcs.len(), "delta_right")?;
    }
    let labels = verts.iter().map(|&(u, v)| format!("({},{})", mask_label(u), mask_label(v))).collect();
    Ok(Digraph::from_raw(verts.len(), arcs).with_labels(labels))
}

/// `Ω_T(2)(G)`: ordered pairs `(A, B)` of non-empty completely joined sets;
/// `{(A,B),(C,D)}` is an edge iff `A,C` and `B,D` are completely joined,
/// `A ∩ D ≠ ∅` and `B ∩ C ≠ ∅`. Pairs with an empty side would be isolated
/// and are left out, except that an edgeless `G` keeps `(∅, ∅)` so the result
/// is never null.
pub fn omega2(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    guard_input(n, MAX_INPUT_VERTICES, "omega2")?;
    let mk = Masks::new(g);
    let mut verts: Vec<(u64, u64)> = Vec::new();
    for a in 1..=mk.full {
        for b in submasks(mk.common(a)) {
            if b != 0 {
                verts.push((a, b));
                guard_vertices(verts.len(), "omega2")?;
            }
        }
    }
    if verts.is_empty() {
        verts.push((0, 0));
    }
    let index: HashMap<(u64, u64), u32> = verts.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut arcs = Vec::new();
    for (i, &(a, b)) in verts.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let (ca, cb) = (mk.common(a), mk.common(b));
        for c in submasks(ca) {
            if c & b == 0 {
                continue;
            }
            for d in submasks(cb & mk.common(c)) {
                if d & a != 0 {
                    arcs.push((i as u32, index[&(c, d)]));
                }
            }
        }
        guard_arcs(arcs.len(), "omega2")?;
    }
    let labels = verts.iter().map(|&(a, b)| format!("({},{})", mask_label(a), mask_label(b))).collect();
    Ok(Graph::from_symmetric(Digraph::from_raw(verts.len(), arcs).with_labels(labels)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circular_complete, complete, cycle, transitive_tournament};
    use crate::hom::{chromatic_number, hom_equivalent, ChromaticValue};

    /// Direct transcription of the definitions over all subset tuples.
    fn omega_odd_naive(k: usize, g: &Graph) -> (usize, usize) {
        let n = g.vertex_count();
        let mk = Masks::new(g);
        let joined = |a: u64, b: u64| a & !mk.common(b) == 0;
        let mut verts = Vec::new();
        let mut t = vec![0u64; k + 1];
        fn all(n: usize, t: &mut Vec<u64>, i: usize, out: &mut Vec<Vec<u64>>) {
            if i == t.len() {
                out.push(t.clone());
                return;
            }
            for m in 0..1u64 << n {
                t[i] = m;
                all(n, t, i + 1, out);
            }
        }
        let mut cands = Vec::new();
        all(n, &mut t, 1, &mut cands);
        for u in 0..n {
            for c in &cands {
                let mut v = c.clone();
                v[0] = 1 << u;
                let ok = (1..=k).all(|i| joined(v[i - 1], v[i])) && (1..k).all(|i| v[i - 1] & !v[i + 1] == 0);
                if ok {
                    verts.push(v);
                }
            }
        }
        let mut edges = 0;
        for a in &verts {
            for b in &verts {
                let ok = (1..=k).all(|i| a[i - 1] & !b[i] == 0 && b[i - 1] & !a[i] == 0) && joined(a[k], b[k]);
                if ok {
                    edges += 1;
                }
            }
        }
        (verts.len(), edges)
    }

    #[test]
    fn omega_odd_matches_definition() {
        for g in [complete(3), cycle(4).unwrap(), crate::families::path(2)] {
            for k in 1..=2 {
                let o = omega_odd(k, &g).unwrap();
                assert_eq!((o.vertex_count(), o.arc_count()), omega_odd_naive(k, &g), "k={k}");
            }
        }
    }

    #[test]
    fn omega_odd_one_is_omega3() {
        for g in [complete(3), complete(4), cycle(5).unwrap()] {
            assert_eq!(omega3(&g).unwrap().into_digraph(), omega_odd(1, &g).unwrap().into_digraph());
        }
    }

    #[test]
    fn omega3_of_k3_is_c9() {
        let o = omega3(&complete(3)).unwrap();
        assert_eq!(o.vertex_count(), 12);
        assert!(hom_equivalent(&o, &cycle(9).unwrap()));
        assert_eq!(o.label(0), "(0,{})");
    }

    #[test]
    fn omega_odd_two_of_k3_is_c15() {
        assert!(hom_equivalent(&omega_odd(2, &complete(3)).unwrap(), &cycle(15).unwrap()));
    }

    #[test]
    fn omega3_k4_four_chromatic() {
        assert_eq!(chromatic_number(&omega3(&complete(4)).unwrap()), ChromaticValue::Finite(4));
    }

    #[test]
    fn delta_right_counts() {
        for n in 1..=4 {
            let d = delta_right(&complete(n)).unwrap();
            assert_eq!(d.vertex_count(), 3usize.pow(n as u32));
        }
        let d = delta_right(&transitive_tournament(2)).unwrap();
        // U = ∅ allows any V; U = {0} allows V ⊆ {1}; otherwise V = ∅
        assert_eq!(d.vertex_count(), 4 + 2 + 1 + 1);
    }

    #[test]
    fn omega2_counts_and_k125() {
        let o3 = omega2(&complete(3)).unwrap();
        assert_eq!(o3.vertex_count(), 12);
        assert!(hom_equivalent(&o3, &circular_complete(12, 5).unwrap()));
        assert_eq!(omega2(&complete(4)).unwrap().vertex_count(), 50);
    }

    #[test]
    fn omega2_of_edgeless_is_one_isolated_vertex() {
        for n in 0..3 {
            let o = omega2(&Graph::new(n, []).unwrap()).unwrap();
            assert_eq!((o.vertex_count(), o.arc_count()), (1, 0));
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(delta_right(&Digraph::empty(21)), Err(GraphError::SizeGuard(_))));
        assert!(omega_odd(0, &complete(2)).is_err());
    }

    #[test]
    fn compress_ranks_submasks() {
        let m = 0b1011_0100u64;
        for (i, s) in submasks(m).enumerate() {
            assert_eq!(compress(s, m), i as u64);
        }
    }
}
