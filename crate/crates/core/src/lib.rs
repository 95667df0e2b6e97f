//! Deciding and certifying path arrowing `G -> (P_k, P_l)`.

pub mod critical;
pub mod engine;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod paths;
pub mod poly;
pub mod sat;

pub use error::{Error, Result};
pub use graph::{Color, Edge, EdgeColoring, Graph, PartialColoring};
pub use engine::{decide_arrows, enumerate_good_colorings, find_good_coloring, SearchConfig, Verdict};
