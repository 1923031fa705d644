//! Closed graphs: decision, construction, verification.
//!
//! A labeling of a simple graph is *closed* when any two edges meeting at a
//! vertex with both other endpoints labeled above it (or both below it)
//! close up into a triangle; a graph is closed when some labeling is. This
//! crate decides closedness, produces closed labelings for graphs that have
//! them, verifies labelings three independent ways, and machine-checks the
//! structural characterization — closed iff chordal, claw-free and narrow —
//! on exhaustively enumerated small graphs.
//!
//! Start with the runnable examples (`cargo run --example classify`) or the
//! `closed-graphs` binary.

pub mod closed;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod labeling;
pub mod oracle;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{DistanceMap, Graph, GraphBuilder};
pub use labeling::{Labeling, LayerDecomposition, ParentLabels, TieBreak};
pub use report::CheckReport;
