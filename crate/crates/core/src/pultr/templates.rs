use crate::error::{GraphError, Result};
use crate::families::{complete, directed_path, path};
use crate::graph::{Digraph, Graph};
use crate::ops;

use super::{lambda, PultrTemplate};

/// `T(len) = (K_1, P_len, ε₁, ε₂)` with the `ε`s at the two ends of the
/// path and reversal as symmetry. `len` is the full (odd) path length.
pub fn template_path(len: usize) -> Result<PultrTemplate> {
    if len < 3 || len.is_multiple_of(2) {
        return Err(GraphError::InvalidParameter(format!("path template length {len} must be odd and >= 3")));
    }
    Ok(PultrTemplate::new(
        complete(1).into(),
        path(len).into(),
        vec![0],
        vec![len],
        Some((0..=len).rev().collect()),
    ))
}

/// `(P⃗_1, P⃗_2)` with `ε₁`, `ε₂` mapping the arc onto the first and second arc.
pub fn template_arc() -> PultrTemplate {
    PultrTemplate::new(directed_path(1), directed_path(2), vec![0, 1], vec![1, 2], None)
}

/// The arc graph `δ(G)`: one vertex per arc of `G` (in arc order), and an
/// arc from `(a, b)` to `(b, c)` for every pair of consecutive arcs.
/// Equal to `Γ` of [`template_arc`], computed directly.
pub fn delta(g: &Digraph) -> Digraph {
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    // arcs are sorted, so those leaving b form a contiguous block
    let mut start = vec![0usize; g.vertex_count() + 1];
    for &(a, _) in &arcs {
        start[a + 1] += 1;
    }
    for v in 0..g.vertex_count() {
        start[v + 1] += start[v];
    }
    let mut out = Vec::new();
    for (i, &(_, b)) in arcs.iter().enumerate() {
        for j in start[b]..start[b + 1] {
            out.push((i as u32, j as u32));
        }
    }
    let labels = arcs.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    Digraph::from_raw(arcs.len(), out).with_labels(labels)
}

/// `Λ` of [`template_arc`].
pub fn delta_left(g: &Digraph) -> Digraph {
    lambda(&template_arc(), g).expect("arc template is valid")
}

/// The graph products with a Pultr template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Direct,
    Cartesian,
    Lexicographic,
}

/// `T(⋆, H)`, whose left functor is `G ↦ G ⋆ H` (vertex `(g, h)` numbered
/// `g·|H| + h`, exactly as the product constructors number it).
///
/// For `×` and `□` the template is `(H ⋆ K_1, H ⋆ K_2)` with `ε_i(u) = (u, i-1)`.
/// For `∘` the second factor must be the outer one, so `Q = K_2 ∘ H` and
/// `ε_i(u) = (i-1, u)`.
pub fn template_product(kind: ProductKind, h: &Graph) -> PultrTemplate {
    let m = h.vertex_count();
    let (k1, k2) = (complete(1), complete(2));
    match kind {
        ProductKind::Direct | ProductKind::Cartesian => {
            let (p, q) = if kind == ProductKind::Direct {
                (ops::direct_product_graph(h, &k1), ops::direct_product_graph(h, &k2))
            } else {
                (ops::cartesian_product(h, &k1), ops::cartesian_product(h, &k2))
            };
            let sym = (0..2 * m).map(|x| x ^ 1).collect();
            PultrTemplate::new(
                p.into(),
                q.into(),
                (0..m).map(|u| 2 * u).collect(),
                (0..m).map(|u| 2 * u + 1).collect(),
                Some(sym),
            )
        }
        ProductKind::Lexicographic => {
            let sym = (0..2 * m).map(|x| (x + m) % (2 * m)).collect();
            PultrTemplate::new(
                ops::lexicographic_product(h, &k1).into(),
                ops::lexicographic_product(&k2, h).into(),
                (0..m).collect(),
                (m..2 * m).collect(),
                Some(sym),
            )
        }
    }
}

/// `T(2)`: `P` a single edge, `Q = P_1 □ P_2` (vertex `(i, j)` numbered
/// `3i + j`), `ε₁ = ((0,0),(1,0))`, `ε₂ = ((1,2),(0,2))`. The symmetry is the
/// half-turn `(i, j) ↦ (1-i, 2-j)`.
pub fn template_box2() -> PultrTemplate {
    box2_with_base(complete(2).into())
}

/// `T(2)` with the two-vertex edgeless `P`; differs from [`template_box2`]
/// only on graphs without edges.
pub fn template_box2_edgeless_base() -> PultrTemplate {
    box2_with_base(Digraph::empty(2))
}

fn box2_with_base(p: Digraph) -> PultrTemplate {
    let q = ops::cartesian_product(&path(1), &path(2));
    let at = |i: usize, j: usize| 3 * i + j;
    let sym = (0..6).map(|x| at(1 - x / 3, 2 - x % 3)).collect();
    PultrTemplate::new(p, q.into(), vec![at(0, 0), at(1, 0)], vec![at(1, 2), at(0, 2)], Some(sym))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, transitive_tournament};
    use crate::hom::{chromatic_number, ChromaticValue, SearchLimits};
    use crate::pultr::{gamma, gamma_general};

    #[test]
    fn path_templates_validate() {
        for len in [3, 5, 7, 9] {
            let t = template_path(len).unwrap();
            assert!(t.validate().is_ok());
            assert_eq!(t.q().vertex_count(), len + 1);
        }
        assert!(template_path(4).is_err());
        assert!(template_path(1).is_err());
    }

    #[test]
    fn arc_template_and_delta() {
        let t = template_arc();
        assert!(t.validate().is_ok());
        let tt3 = transitive_tournament(3);
        let d = delta(&tt3);
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(d.label(2), "[1,2]");
        assert_eq!(delta(&directed_path(2)), directed_path(1));
        for g in [transitive_tournament(4), cycle(5).unwrap().into_digraph(), directed_path(3)] {
            assert_eq!(delta(&g), gamma_general(&t, &g, &SearchLimits::default()).unwrap());
        }
        let s42 = delta(&transitive_tournament(4));
        assert_eq!(s42.vertex_count(), 6);
        assert_eq!(chromatic_number(&s42), ChromaticValue::Finite(2));
    }

    #[test]
    fn delta_left_arc_count_on_oriented_cycles() {
        // one arc per vertex of C before parallel arcs merge
        for n in [5, 6] {
            for mask in 0u32..1 << n {
                let arcs = (0..n).map(|i| if mask >> i & 1 == 1 { (i, (i + 1) % n) } else { ((i + 1) % n, i) });
                let c = Digraph::new(n, arcs).unwrap();
                assert!(delta_left(&c).arc_count() <= n);
            }
        }
        let directed = Digraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(delta_left(&directed).arc_count(), 5);
        let alternating = Digraph::new(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)]).unwrap();
        assert_eq!(delta_left(&alternating).arc_count(), 6);
    }

    #[test]
    fn product_templates_give_products() {
        let c5 = cycle(5).unwrap();
        let h = crate::families::path(2);
        for kind in [ProductKind::Direct, ProductKind::Cartesian, ProductKind::Lexicographic] {
            let t = template_product(kind, &h);
            assert!(t.validate().is_ok(), "{kind:?}");
            let expect = match kind {
                ProductKind::Direct => ops::direct_product_graph(&c5, &h),
                ProductKind::Cartesian => ops::cartesian_product(&c5, &h),
                ProductKind::Lexicographic => ops::lexicographic_product(&c5, &h),
            };
            assert_eq!(lambda(&t, &c5).unwrap(), expect.into_digraph(), "{kind:?}");
        }
    }

    #[test]
    fn exponential_graph_size() {
        let t = template_product(ProductKind::Direct, &complete(2));
        assert_eq!(gamma(&t, &complete(3)).unwrap().vertex_count(), 9);
    }

    #[test]
    fn box2_shape() {
        let t = template_box2();
        let q = Graph::try_from_digraph(t.q().clone()).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (6, 7));
        assert!(t.validate().is_ok());
        assert!(template_box2_edgeless_base().validate().is_ok());
    }
}
