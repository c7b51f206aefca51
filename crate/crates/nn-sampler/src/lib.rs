//! Deterministic representative sampling for weighted networks and
//! n-dimensional point data.
//!
//! An object is scored on how its surroundings see it: its *proximity
//! degree* d(o) counts the neighborhoods it belongs to, and its *proximity
//! rank* k(o) counts the objects whose nearest-neighbor set contains it.
//! The *representativeness* r(o) = k(o) / log_x d(o) (with r = 0 at d = 0
//! and r = k at d = 1) combines both, and the sample is simply every object
//! with r(o) at or above a threshold. No randomness anywhere: equal inputs
//! and config always select the same sample, and a sample extracted from a
//! region of the data is exactly the global sample restricted to that
//! region.
//!
//! Two similarity spaces are built in:
//! - [`WeightedGraph`]: adjacency as proximity, edge weight as similarity;
//! - [`PointSet`] behind a [`PointProvider`]: Euclidean distance at most a
//!   radius as proximity, nearest neighbors ranked by floor-discretized
//!   distance, served by a uniform [`GridIndex`] so scoring stays linear in
//!   the number of points at fixed density.
//!
//! ```
//! use nn_sampler::{sample_graph, SamplerConfig, WeightedGraph};
//!
//! let graph = WeightedGraph::from_triples([
//!     ("a", "b", 3.0),
//!     ("b", "c", 1.0),
//!     ("c", "d", 2.0),
//!     ("a", "c", 1.0),
//! ])
//! .unwrap();
//! let config = SamplerConfig::new(2.0).unwrap();
//! let sample = sample_graph(&graph, &config).unwrap();
//! let labels: Vec<&str> = sample.result.selected.iter().map(|&o| graph.label(o)).collect();
//! assert_eq!(labels, ["a", "b", "d"]);
//! assert_eq!(sample.subgraph.edge_count(), 1);
//! ```

mod config;
mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod points;
mod sampler;

pub use config::SamplerConfig;
pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use points::{discretize_distance, GridIndex, PointProvider, PointSet};
pub use sampler::{
    local_sample, representativeness, sample_graph, sample_points, score, select, GraphSample,
    NeighborhoodProvider, ObjectId, SampleResult, ScoreTable,
};
