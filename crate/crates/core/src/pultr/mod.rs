//! Pultr templates and their left and central functors.
//!
//! A template `T = (P, Q, ε₁, ε₂)` consists of two digraphs and two
//! homomorphisms `P -> Q`. `Λ_T(G)` glues one copy of `P` per vertex of `G`
//! and one copy of `Q` per arc, attaching `ε₁(P)` to the tail's copy and
//! `ε₂(P)` to the head's. `Γ_T(H)` has the homomorphisms `P -> H` as vertices
//! and an arc `g∘ε₁ -> g∘ε₂` for every homomorphism `g : Q -> H`.
//!
//! `Γ_T` vertices are numbered in lexicographic order of their map arrays and
//! labelled `[f(0),f(1),…]`.

mod chains;
mod templates;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bits;
use crate::error::{GraphError, HomError, Result};
use crate::graph::{Digraph, Graph};
use crate::hom::{hom_enumerate, hom_project, SearchLimits};
use crate::ops;

pub use chains::{chain_left, chain_right, ChainOptions};
pub use templates::{
    delta, delta_left, template_arc, template_box2, template_box2_edgeless_base, template_path, template_product,
    ProductKind,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PultrTemplate {
    p: Digraph,
    q: Digraph,
    eps1: Vec<usize>,
    eps2: Vec<usize>,
    symmetry: Option<Vec<usize>>,
}

/// A reason a template is unusable.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TemplateDiagnostic {
    #[error("eps{which} has length {len}, P has {expected} vertices")]
    WrongLength { which: u8, len: usize, expected: usize },
    #[error("eps{which} is not a homomorphism P -> Q: arc ({0}, {1}) of P is not preserved", arc.0, arc.1)]
    NotHomomorphism { which: u8, arc: (usize, usize) },
    #[error("symmetric template needs P and Q to be graphs")]
    NotGraph,
    #[error("symmetry witness is not an automorphism of Q")]
    NotAutomorphism,
    #[error("symmetry witness does not exchange eps1 and eps2")]
    DoesNotSwap,
}

/// How `Λ_T` attaches `Q`-copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// One `Q`-copy per arc.
    Digraph,
    /// One `Q`-copy per edge; needs a symmetry witness and a symmetric input.
    Graph,
}

impl PultrTemplate {
    pub fn new(p: Digraph, q: Digraph, eps1: Vec<usize>, eps2: Vec<usize>, symmetry: Option<Vec<usize>>) -> Self {
        PultrTemplate { p, q, eps1, eps2, symmetry }
    }

    pub fn p(&self) -> &Digraph {
        &self.p
    }

    pub fn q(&self) -> &Digraph {
        &self.q
    }

    pub fn eps1(&self) -> &[usize] {
        &self.eps1
    }

    pub fn eps2(&self) -> &[usize] {
        &self.eps2
    }

    pub fn symmetry(&self) -> Option<&[usize]> {
        self.symmetry.as_deref()
    }

    pub fn with_symmetry(mut self, q: Option<Vec<usize>>) -> Self {
        self.symmetry = q;
        self
    }

    pub fn default_mode(&self) -> Mode {
        if self.symmetry.is_some() {
            Mode::Graph
        } else {
            Mode::Digraph
        }
    }

    /// Checks both maps and, if present, the symmetry witness.
    pub fn validate(&self) -> std::result::Result<(), Vec<TemplateDiagnostic>> {
        let mut diags = Vec::new();
        let np = self.p.vertex_count();
        for (which, eps) in [(1u8, &self.eps1), (2, &self.eps2)] {
            if eps.len() != np || eps.iter().any(|&x| x >= self.q.vertex_count()) {
                diags.push(TemplateDiagnostic::WrongLength { which, len: eps.len(), expected: np });
            } else if let Some(arc) = self.p.arcs().find(|&(a, b)| !self.q.has_arc(eps[a], eps[b])) {
                diags.push(TemplateDiagnostic::NotHomomorphism { which, arc });
            }
        }
        if let Some(q) = &self.symmetry {
            if !self.p.is_symmetric() || !self.q.is_symmetric() {
                diags.push(TemplateDiagnostic::NotGraph);
            }
            if !is_automorphism(&self.q, q) {
                diags.push(TemplateDiagnostic::NotAutomorphism);
            } else if diags.is_empty() && !self.swaps(q) {
                diags.push(TemplateDiagnostic::DoesNotSwap);
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    fn swaps(&self, q: &[usize]) -> bool {
        (0..self.p.vertex_count()).all(|x| q[self.eps1[x]] == self.eps2[x] && q[self.eps2[x]] == self.eps1[x])
    }

    /// Searches all permutations of `V(Q)` for an automorphism exchanging
    /// `ε₁` and `ε₂`; the least in lexicographic order is returned.
    pub fn find_symmetry(&self) -> Option<Vec<usize>> {
        let n = self.q.vertex_count();
        let mut fixed = vec![usize::MAX; n];
        for x in 0..self.p.vertex_count() {
            for (a, b) in [(self.eps1[x], self.eps2[x]), (self.eps2[x], self.eps1[x])] {
                if fixed[a] != usize::MAX && fixed[a] != b {
                    return None;
                }
                fixed[a] = b;
            }
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(q: &Digraph, fixed: &[usize], perm: &mut [usize], used: &mut [bool], v: usize) -> bool {
            let n = q.vertex_count();
            if v == n {
                return true;
            }
            let choices: Vec<usize> = if fixed[v] != usize::MAX { vec![fixed[v]] } else { (0..n).collect() };
            for c in choices {
                if used[c] {
                    continue;
                }
                let ok = (0..v).all(|u| {
                    q.has_arc(u, v) == q.has_arc(perm[u], c) && q.has_arc(v, u) == q.has_arc(c, perm[u])
                }) && q.has_arc(v, v) == q.has_arc(c, c);
                if !ok {
                    continue;
                }
                perm[v] = c;
                used[c] = true;
                if rec(q, fixed, perm, used, v + 1) {
                    return true;
                }
                used[c] = false;
            }
            perm[v] = usize::MAX;
            false
        }
        rec(&self.q, &fixed, &mut perm, &mut used, 0).then_some(perm)
    }

    /// If `Γ_T` counts walks: `P = K_1`, `Q` the path `0..=L` with `ε`s at
    /// the ends. Returns `L`.
    fn walk_length(&self) -> Option<usize> {
        let len = self.q.vertex_count().checked_sub(1)?;
        (self.p.vertex_count() == 1
            && self.p.arc_count() == 0
            && self.eps1 == [0]
            && self.eps2 == [len]
            && self.q == *crate::families::path(len).as_digraph())
        .then_some(len)
    }

    fn check_mode(&self, mode: Mode) -> Result<()> {
        if let Err(d) = self.validate() {
            let msg = d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            return Err(GraphError::InvalidTemplate(msg));
        }
        if mode == Mode::Graph && self.symmetry.is_none() {
            return Err(GraphError::InvalidTemplate("graph mode needs a symmetry witness".into()));
        }
        Ok(())
    }
}

fn is_automorphism(q: &Digraph, perm: &[usize]) -> bool {
    let n = q.vertex_count();
    let mut seen = vec![false; n];
    perm.len() == n
        && perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        && q.arcs().all(|(a, b)| q.has_arc(perm[a], perm[b]))
}

fn map_label(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `Λ_T(G)` in the template's default mode.
pub fn lambda(t: &PultrTemplate, g: &Digraph) -> Result<Digraph> {
    lambda_mode(t, g, t.default_mode())
}

/// `Λ_T(G)` for graph inputs; the result is a graph.
pub fn lambda_graph(t: &PultrTemplate, g: &Graph) -> Result<Graph> {
    Graph::try_from_digraph(lambda_mode(t, g, Mode::Graph)?)
}

/// `Λ_T(G)`. The copy of `P` for vertex `u` occupies `u·|P| .. (u+1)·|P|`
/// before identification; since identification keeps the least index of each
/// class, vertices of `P`-copies keep their relative order.
pub fn lambda_mode(t: &PultrTemplate, g: &Digraph, mode: Mode) -> Result<Digraph> {
    t.check_mode(mode)?;
    if mode == Mode::Graph && !g.is_symmetric() {
        return Err(GraphError::InvalidTemplate("graph mode needs a symmetric input".into()));
    }
    let (np, nq, n) = (t.p.vertex_count(), t.q.vertex_count(), g.vertex_count());
    let copies: Vec<(usize, usize)> = match mode {
        Mode::Digraph => g.arcs().collect(),
        Mode::Graph => g.arcs().filter(|&(a, b)| a <= b).collect(),
    };
    let total = n * np + copies.len() * nq;
    let mut arcs = Vec::new();
    let mut labels = Vec::with_capacity(total);
    for u in 0..n {
        let base = (u * np) as u32;
        arcs.extend(t.p.raw_arcs().iter().map(|&(a, b)| (base + a, base + b)));
        labels.extend((0..np).map(|x| format!("P{u}.{x}")));
    }
    let mut pairs = Vec::new();
    for (c, &(u, v)) in copies.iter().enumerate() {
        let base = n * np + c * nq;
        arcs.extend(t.q.raw_arcs().iter().map(|&(a, b)| ((base + a as usize) as u32, (base + b as usize) as u32)));
        labels.extend((0..nq).map(|x| format!("Q{u}-{v}.{x}")));
        for x in 0..np {
            pairs.push((base + t.eps1[x], u * np + x));
            pairs.push((base + t.eps2[x], v * np + x));
        }
    }
    let glued = Digraph::from_raw(total, arcs).with_labels(labels);
    ops::identify(&glued, &pairs)
}

/// `Γ_T(H)`.
pub fn gamma(t: &PultrTemplate, h: &Digraph) -> std::result::Result<Digraph, HomError> {
    gamma_with(t, h, &SearchLimits::default())
}

/// `Γ_T(H)` for graph inputs with a symmetric template; the result is a graph.
pub fn gamma_graph(t: &PultrTemplate, h: &Graph) -> std::result::Result<Graph, HomError> {
    t.check_mode(Mode::Graph)?;
    Ok(Graph::try_from_digraph(gamma(t, h)?)?)
}

pub fn gamma_with(t: &PultrTemplate, h: &Digraph, limits: &SearchLimits) -> std::result::Result<Digraph, HomError> {
    t.check_mode(Mode::Digraph)?;
    match t.walk_length() {
        Some(len) => gamma_walks(len, h),
        None => gamma_general(t, h, limits),
    }
}

pub(crate) fn gamma_general(
    t: &PultrTemplate,
    h: &Digraph,
    limits: &SearchLimits,
) -> std::result::Result<Digraph, HomError> {
    let verts: Vec<Vec<usize>> = hom_enumerate(&t.p, h, limits)?.into_iter().map(|w| w.into_map()).collect();
    let index: HashMap<&[usize], u32> = verts.iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();

    let mut boundary: Vec<usize> = t.eps1.iter().chain(&t.eps2).copied().collect();
    boundary.sort_unstable();
    boundary.dedup();
    let pos = |x: usize| boundary.binary_search(&x).expect("boundary vertex");
    let e1: Vec<usize> = t.eps1.iter().map(|&x| pos(x)).collect();
    let e2: Vec<usize> = t.eps2.iter().map(|&x| pos(x)).collect();

    let mut arcs = Vec::new();
    let mut buf = Vec::with_capacity(t.p.vertex_count());
    for g in hom_project(&t.q, h, &boundary, limits)? {
        buf.clear();
        buf.extend(e1.iter().map(|&i| g[i]));
        let a = index[buf.as_slice()];
        buf.clear();
        buf.extend(e2.iter().map(|&i| g[i]));
        let b = index[buf.as_slice()];
        arcs.push((a, b));
    }
    let labels = verts.iter().map(|f| map_label(f)).collect();
    Ok(Digraph::from_raw(verts.len(), arcs).with_labels(labels))
}

/// `Γ` of a path template: `(a, b)` is an arc iff a walk of length `len`
/// along symmetric arcs of `H` joins `a` to `b`.
fn gamma_walks(len: usize, h: &Digraph) -> std::result::Result<Digraph, HomError> {
    let n = h.vertex_count();
    let rows = h.try_bit_rows()?;
    let w = rows.words;
    let sym: Vec<u64> = rows.out.iter().zip(&rows.inn).map(|(a, b)| a & b).collect();
    let mut arcs = Vec::new();
    let mut cur = vec![0u64; w];
    let mut next = vec![0u64; w];
    for a in 0..n {
        cur.iter_mut().for_each(|x| *x = 0);
        bits::set(&mut cur, a);
        for _ in 0..len {
            next.iter_mut().for_each(|x| *x = 0);
            for v in bits::iter_ones(&cur) {
                for (x, r) in next.iter_mut().zip(&sym[v * w..(v + 1) * w]) {
                    *x |= r;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        arcs.extend(bits::iter_ones(&cur).map(|b| (a as u32, b as u32)));
    }
    let labels = (0..n).map(|v| format!("[{v}]")).collect();
    Ok(Digraph::from_raw(n, arcs).with_labels(labels))
}

impl fmt::Display for PultrTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "template P[{}] Q[{}] eps1={} eps2={}",
            self.p.vertex_count(),
            self.q.vertex_count(),
            map_label(&self.eps1),
            map_label(&self.eps2)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circular_complete, complete, cycle, path};
    use crate::hom::{hom_equivalent, hom_exists};

    #[test]
    fn gamma_t3_of_c5_is_k5() {
        let t = template_path(3).unwrap();
        let g = gamma(&t, &cycle(5).unwrap()).unwrap();
        assert_eq!(g, complete(5).into_digraph());
        assert_eq!(g.label(2), "[2]");
    }

    #[test]
    fn walk_fast_path_matches_general() {
        for len in [3, 5] {
            let t = template_path(len).unwrap();
            for h in [cycle(5).unwrap(), cycle(7).unwrap(), circular_complete(12, 5).unwrap(), path(4)] {
                let fast = gamma(&t, &h).unwrap();
                let slow = gamma_general(&t, &h, &SearchLimits::default()).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn lambda_t3_subdivides() {
        let t = template_path(3).unwrap();
        let p3 = lambda_graph(&t, &complete(2)).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count()), (4, 3));
        assert_eq!(crate::ops::symmetrize(&p3).weak_components().len(), 1);
        assert!((0..4).all(|v| p3.degree(v) <= 2));
        let l = lambda(&t, &complete(3)).unwrap();
        assert_eq!(l.vertex_count(), 9);
        assert!(hom_equivalent(&l, &cycle(9).unwrap()));
        assert_eq!(l.label(0), "P0.0");
    }

    #[test]
    fn lambda_handles_loops() {
        let t = template_path(3).unwrap();
        let l = lambda(&t, &crate::families::looped_vertex()).unwrap();
        // a closed walk of length 3 through one vertex: a triangle
        assert_eq!(l.vertex_count(), 3);
        assert!(hom_equivalent(&l, &complete(3)));
    }

    #[test]
    fn validation_diagnostics() {
        assert!(template_path(3).unwrap().validate().is_ok());
        let broken = PultrTemplate::new(complete(2).into(), complete(3).into(), vec![0, 1], vec![1, 1], None);
        assert_eq!(
            broken.validate().unwrap_err(),
            vec![TemplateDiagnostic::NotHomomorphism { which: 2, arc: (0, 1) }]
        );
        let bad_sym = template_path(3).unwrap().with_symmetry(Some(vec![0, 1, 2, 3]));
        assert_eq!(bad_sym.validate().unwrap_err(), vec![TemplateDiagnostic::DoesNotSwap]);
        assert!(lambda(&broken, &complete(2)).is_err());
    }

    #[test]
    fn symmetry_search() {
        let t = template_path(5).unwrap();
        assert_eq!(t.find_symmetry().unwrap(), vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(template_arc().find_symmetry(), None);
        assert_eq!(template_box2().find_symmetry().as_deref(), template_box2().symmetry());
    }

    #[test]
    fn adjunction_spot_check() {
        let t = template_path(3).unwrap();
        let c5 = cycle(5).unwrap();
        for g in [complete(3), complete(5), cycle(7).unwrap()] {
            let left = hom_exists(&lambda(&t, &g).unwrap(), &c5).is_some();
            let right = hom_exists(&g, &gamma(&t, &c5).unwrap()).is_some();
            assert_eq!(left, right);
        }
    }
}
