//! Alternating trails, alternating cycles and eulerian factors in
//! 2-edge-coloured multigraphs.

pub mod analysis;
pub mod connect;
pub mod error;
pub mod factor;
pub mod graph;
pub mod io;
pub mod matching;
pub mod merge;
pub mod oracle;
pub mod reductions;
pub mod structure;
pub mod supereuler;
pub mod witness;

pub use error::{Error, GraphError, Result};
pub use graph::{Colour, Edge, EdgeIdx, Graph, GraphBuilder, VertexIdx};
pub use witness::{
    AlternatingCycle, AlternatingTrail, CycleFactor, EulerianFactor, FactorPart, Violation, Witness,
};
