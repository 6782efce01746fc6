//! Structural decompositions: diamonds and strings, the triangle/diamond
//! decomposition of bridgeless claw-free cubic graphs, and the bridge tree.

pub mod bridges;
pub mod diamonds;
pub mod oum;

use thiserror::Error;

use crate::graph::GraphError;

pub use bridges::{
    bridge_decompose, build_tilde, classify_component, component_boundary, BoundaryVertex, BridgeDecomposition,
    ComponentBoundary, ComponentClass, OddRemoval, Parity, TildeConstruction, UpEdge,
};
pub use diamonds::{detect_ring_of_diamonds, find_diamonds, ring_of_diamonds, Diamond, DiamondString};
pub use oum::{oum_decompose, reconstruct, substitute, HEdge, OumDecomposition, Realization, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("not decomposable: {0}")]
    NotDecomposable(String),
    #[error("graph has no bridges")]
    NoBridges,
    #[error("component matches none of K3, diamond, big: {0}")]
    ClassificationFailed(String),
    #[error("claim {claim} violated: {witness}")]
    ClaimViolation { claim: String, witness: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
