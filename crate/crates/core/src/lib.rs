//! Packing edge-colorings of claw-free cubic graphs.
//!
//! The main entry point is [`colorer::color_graph`], which produces a
//! `(1,1,1,3)`-packing edge-coloring of any connected claw-free cubic graph.
//! [`verify::verify`] checks colorings independently and
//! [`oracle::oracle_color`] decides feasibility exhaustively on small graphs.

pub mod graph;
pub mod iso;
pub mod recognition;
pub mod structure;
pub mod matching;
pub mod color;
pub mod verify;
pub mod oracle;
pub mod colorer;
pub mod families;
pub mod io;
