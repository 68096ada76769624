//! Named functors, addressable by short ids such as `gamma:T3` or `L:3/5`.

use std::fmt;
use std::str::FromStr;

use crate::adjoints::{delta_right, omega2, omega3, omega_odd};
use crate::error::{GraphError, HomError};
use crate::families::complete;
use crate::graph::{Digraph, Graph};
use crate::hom::SearchLimits;
use crate::pultr::{
    chain_left, chain_right, gamma_with, lambda, lambda_graph, template_arc, template_box2, template_box2_edgeless_base,
    template_path, template_product, ChainOptions, ProductKind, PultrTemplate,
};

/// A built-in template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemplateId {
    /// `T(len)` for odd `len >= 3`.
    Path(usize),
    Arc,
    /// `T(2)` with a single edge as `P`.
    Box2,
    /// `T(2)` with the edgeless two-vertex `P`.
    Box2Edgeless,
    /// `T(⋆, K_n)`.
    Product(ProductKind, usize),
}

impl TemplateId {
    pub fn template(self) -> PultrTemplate {
        match self {
            TemplateId::Path(len) => template_path(len).expect("validated on parse"),
            TemplateId::Arc => template_arc(),
            TemplateId::Box2 => template_box2(),
            TemplateId::Box2Edgeless => template_box2_edgeless_base(),
            TemplateId::Product(kind, n) => template_product(kind, &complete(n)),
        }
    }

    /// Whether the template acts on digraphs rather than graphs.
    pub fn is_digraph(self) -> bool {
        self == TemplateId::Arc
    }
}

fn product_token(kind: ProductKind) -> &'static str {
    match kind {
        ProductKind::Direct => "x",
        ProductKind::Cartesian => "box",
        ProductKind::Lexicographic => "lex",
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateId::Path(len) => write!(f, "T{len}"),
            TemplateId::Arc => f.write_str("arc"),
            TemplateId::Box2 => f.write_str("T2"),
            TemplateId::Box2Edgeless => f.write_str("T2e"),
            TemplateId::Product(kind, n) => write!(f, "T{}:K{n}", product_token(*kind)),
        }
    }
}

fn bad(msg: String) -> GraphError {
    GraphError::InvalidParameter(msg)
}

fn parse_usize(s: &str, what: &str) -> Result<usize, GraphError> {
    s.parse().map_err(|_| bad(format!("{what}: not a number: {s:?}")))
}

impl FromStr for TemplateId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "arc" => return Ok(TemplateId::Arc),
            "T2" => return Ok(TemplateId::Box2),
            "T2e" => return Ok(TemplateId::Box2Edgeless),
            _ => {}
        }
        let rest = s.strip_prefix('T').ok_or_else(|| bad(format!("unknown template {s:?}")))?;
        if let Some((kind, k)) = rest.split_once(':') {
            let kind = match kind {
                "x" => ProductKind::Direct,
                "box" => ProductKind::Cartesian,
                "lex" => ProductKind::Lexicographic,
                _ => return Err(bad(format!("unknown product {kind:?}"))),
            };
            let n = parse_usize(k.strip_prefix('K').unwrap_or(k), "product factor")?;
            return Ok(TemplateId::Product(kind, n));
        }
        let len = parse_usize(rest, "template length")?;
        template_path(len)?;
        Ok(TemplateId::Path(len))
    }
}

/// A functor on graphs or digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    Lambda(TemplateId),
    Gamma(TemplateId),
    DeltaRight,
    /// `Ω_T(len)` for odd `len >= 3`.
    Omega(usize),
    Omega2,
    /// `L^m_n`.
    ChainLeft { m: usize, n: usize },
    /// `R^n_m`.
    ChainRight { n: usize, m: usize },
}

/// Options shared by all functor applications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApplyOptions {
    pub limits: SearchLimits,
    pub core_reduce: bool,
}

impl Default for ApplyOptions {
    fn default() -> Self {
        ApplyOptions { limits: SearchLimits::default(), core_reduce: true }
    }
}

impl Functor {
    /// Whether the functor takes and returns digraphs.
    pub fn is_digraph(self) -> bool {
        match self {
            Functor::Lambda(t) | Functor::Gamma(t) => t.is_digraph(),
            Functor::DeltaRight => true,
            _ => false,
        }
    }

    /// Applies the functor. Graph functors reject asymmetric inputs.
    pub fn apply(self, g: &Digraph, opts: &ApplyOptions) -> Result<Digraph, HomError> {
        if self.is_digraph() {
            return match self {
                Functor::Lambda(t) => Ok(lambda(&t.template(), g)?),
                Functor::Gamma(t) => gamma_with(&t.template(), g, &opts.limits),
                _ => Ok(delta_right(g)?),
            };
        }
        let g = Graph::try_from_digraph(g.clone())?;
        let chain = ChainOptions { core_reduce: opts.core_reduce, limits: opts.limits };
        let out = match self {
            Functor::Lambda(t) => lambda_graph(&t.template(), &g)?,
            Functor::Gamma(t) => return gamma_with(&t.template(), &g, &opts.limits),
            Functor::Omega(3) => omega3(&g)?,
            Functor::Omega(len) => omega_odd((len - 1) / 2, &g)?,
            Functor::Omega2 => omega2(&g)?,
            Functor::ChainLeft { m, n } => chain_left(m, n, &g, &chain)?,
            Functor::ChainRight { n, m } => chain_right(n, m, &g, &chain)?,
            Functor::DeltaRight => unreachable!("digraph functor"),
        };
        Ok(out.into_digraph())
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::Lambda(TemplateId::Arc) => f.write_str("deltaL"),
            Functor::Gamma(TemplateId::Arc) => f.write_str("delta"),
            Functor::Lambda(t) => write!(f, "lambda:{t}"),
            Functor::Gamma(t) => write!(f, "gamma:{t}"),
            Functor::DeltaRight => f.write_str("deltaR"),
            Functor::Omega(len) => write!(f, "omega:{len}"),
            Functor::Omega2 => f.write_str("omega2"),
            Functor::ChainLeft { m, n } => write!(f, "L:{m}/{n}"),
            Functor::ChainRight { n, m } => write!(f, "R:{n}/{m}"),
        }
    }
}

fn odd_pair(s: &str) -> Result<(usize, usize), GraphError> {
    let (a, b) = s.split_once('/').ok_or_else(|| bad(format!("expected `a/b`, got {s:?}")))?;
    let (a, b) = (parse_usize(a, "chain parameter")?, parse_usize(b, "chain parameter")?);
    template_path(a)?;
    template_path(b)?;
    Ok((a, b))
}

impl FromStr for Functor {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "delta" => return Ok(Functor::Gamma(TemplateId::Arc)),
            "deltaL" => return Ok(Functor::Lambda(TemplateId::Arc)),
            "deltaR" => return Ok(Functor::DeltaRight),
            "omega2" => return Ok(Functor::Omega2),
            _ => {}
        }
        let (head, arg) = s.split_once(':').ok_or_else(|| bad(format!("unknown functor {s:?}")))?;
        match head {
            "lambda" => Ok(Functor::Lambda(arg.parse()?)),
            "gamma" => Ok(Functor::Gamma(arg.parse()?)),
            "omega" => {
                let len = parse_usize(arg, "omega length")?;
                template_path(len)?;
                Ok(Functor::Omega(len))
            }
            "L" => odd_pair(arg).map(|(m, n)| Functor::ChainLeft { m, n }),
            "R" => odd_pair(arg).map(|(n, m)| Functor::ChainRight { n, m }),
            _ => Err(bad(format!("unknown functor {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, transitive_tournament};
    use crate::hom::hom_equivalent;

    #[test]
    fn ids_round_trip() {
        for id in [
            "lambda:T3", "gamma:T5", "delta", "deltaL", "deltaR", "omega:3", "omega:5", "omega2", "gamma:T2",
            "lambda:T2e", "L:3/5", "R:5/3", "gamma:Tx:K2", "lambda:Tbox:K3",
        ] {
            let f: Functor = id.parse().unwrap();
            assert_eq!(f.to_string(), id);
        }
        for bad in ["gamma:T4", "omega:1", "L:3", "L:2/3", "mu", "gamma:Tfoo:K2"] {
            assert!(bad.parse::<Functor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn apply_checks_modes() {
        let opts = ApplyOptions::default();
        let c5 = cycle(5).unwrap().into_digraph();
        let k5 = complete(5).into_digraph();
        let out = Functor::Gamma(TemplateId::Path(3)).apply(&c5, &opts).unwrap();
        assert!(hom_equivalent(&out, &k5));
        let tt = transitive_tournament(3);
        assert!(Functor::Omega(3).apply(&tt, &opts).is_err());
        assert_eq!(Functor::Gamma(TemplateId::Arc).apply(&tt, &opts).unwrap().vertex_count(), 3);
    }
}
