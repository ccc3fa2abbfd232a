//! Exact analysis of symbolic dynamics generated by directed graphs and by
//! scheduled combinations of graphs.
//!
//! Word counts are computed in unbounded integer arithmetic; floating point
//! only appears in closed forms, entropy values and fits.

pub mod census;
pub mod cli;
pub mod combiner;
mod decimal;
pub mod entropy;
mod error;
pub mod graph;
pub mod matrix;
pub mod presets;
pub mod spectral;

pub use census::{
    count_matrix, count_series, enumerate_words, is_admissible, total_count, CountMatrix,
    CountSeries, Word, WordSet,
};
pub use error::{Error, Result};
pub use graph::{Alphabet, DirectedGraph, GraphDiagnostics, GraphSpec};
