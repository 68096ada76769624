//! `L^m_n = Γ_T(m) ∘ Λ_T(n)` and its right adjoint `R^n_m = Γ_T(n) ∘ Ω_T(m)`.

use crate::adjoints::omega_odd;
use crate::error::HomError;
use crate::graph::Graph;
use crate::hom::{invariants::core_reduce_best_effort, SearchLimits};

use super::{gamma_graph, lambda_graph, template_path};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    /// Replace the intermediate graph by a core before the second stage.
    pub core_reduce: bool,
    /// Budget for the intermediate core reduction; on expiry the partially
    /// reduced (still equivalent) graph is used.
    pub limits: SearchLimits,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { core_reduce: true, limits: SearchLimits::default() }
    }
}

fn between(g: Graph, opts: &ChainOptions) -> Graph {
    if !opts.core_reduce {
        return g;
    }
    let (core, _) = core_reduce_best_effort(&g, opts.limits.start());
    Graph::try_from_digraph(core).expect("induced subgraphs of graphs are graphs")
}

/// `L^m_n(G) = Γ_T(m)(Λ_T(n)(G))` for odd `m, n >= 3`.
pub fn chain_left(m: usize, n: usize, g: &Graph, opts: &ChainOptions) -> Result<Graph, HomError> {
    let (tm, tn) = (template_path(m)?, template_path(n)?);
    let mid = between(lambda_graph(&tn, g)?, opts);
    gamma_graph(&tm, &mid)
}

/// `R^n_m(G) = Γ_T(n)(Ω_T(m)(G))` for odd `m, n >= 3`.
pub fn chain_right(n: usize, m: usize, g: &Graph, opts: &ChainOptions) -> Result<Graph, HomError> {
    let tn = template_path(n)?;
    template_path(m)?;
    let mid = between(omega_odd((m - 1) / 2, g)?, opts);
    gamma_graph(&tn, &mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circular_complete, complete, cycle};
    use crate::hom::{hom_equivalent, hom_exists};

    #[test]
    fn l33_is_identity_up_to_equivalence() {
        for g in [complete(3), cycle(5).unwrap(), complete(4)] {
            let l = chain_left(3, 3, &g, &ChainOptions::default()).unwrap();
            assert!(hom_equivalent(&l, &g));
        }
    }

    #[test]
    fn chains_on_c5() {
        let c5 = cycle(5).unwrap();
        let opts = ChainOptions::default();
        let l35 = chain_left(3, 5, &c5, &opts).unwrap();
        let l53 = chain_left(5, 3, &c5, &opts).unwrap();
        assert!(hom_exists(&l35, &l53).is_some());
        assert!(hom_exists(&l53, &l35).is_none());
        // L^5_3(C_5) = Γ_T(5)(C_15) = K_{15/5}
        assert!(hom_equivalent(&l53, &circular_complete(15, 5).unwrap()));
    }

    #[test]
    fn reduction_flag_does_not_change_class() {
        let g = cycle(7).unwrap();
        let a = chain_left(5, 3, &g, &ChainOptions::default()).unwrap();
        let b = chain_left(5, 3, &g, &ChainOptions { core_reduce: false, ..ChainOptions::default() }).unwrap();
        assert!(hom_equivalent(&a, &b));
        let r = chain_right(3, 3, &complete(3), &ChainOptions::default()).unwrap();
        assert!(hom_equivalent(&r, &complete(3)));
    }
}
