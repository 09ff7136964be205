//! Exact analysis of the Random Edge simplex pivot rule on 3-dimensional
//! linear programs: polytope digraphs, realizability checks, expected path
//! lengths, lower-bound constructions, the `(α, β)` upper-bound certificate
//! and exhaustive enumeration for small facet counts.

pub mod cert;
pub mod constructions;
pub mod dpg;
pub mod engine;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod mk;
pub mod planar;
pub mod rational;
pub mod simulate;

pub use cert::{CertPoint, InequalitySystem, LinearInequality};
pub use engine::{edge_probabilities, expected_steps, ExpectationTable};
pub use graph::{PolytopeDigraph, VertexId};
pub use rational::Rational;
