//! Graph homomorphisms, Pultr functors and their right adjoints.
//!
//! Graphs and digraphs are [`Digraph`] values; a [`Graph`] is a digraph with a
//! symmetric arc relation. The [`hom`] module decides and enumerates
//! homomorphisms and computes the invariants built on them. [`pultr`]
//! implements templates with their left and central functors, and
//! [`adjoints`] the explicit right adjoints. [`verify`] runs the property
//! suites that check the stated identities on generated corpora.

pub mod adjoints;
pub mod bits;
pub mod error;
pub mod families;
pub mod format;
pub mod functor;
pub mod fraction;
pub mod graph;
pub mod hom;
pub mod ops;
pub mod pultr;
pub mod verify;

pub use error::{GraphError, HomError};
pub use fraction::Fraction;
pub use graph::{Digraph, Graph};
pub use hom::{ChromaticValue, HomWitness, SearchLimits};
pub use pultr::PultrTemplate;
