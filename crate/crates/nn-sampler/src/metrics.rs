//! Sample quality measures: cumulative degree and edge-weight
//! distributions, retention percentages, a Kolmogorov-Smirnov style
//! distance between distributions, and a 2-d density histogram for
//! point data.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::points::PointSet;

/// A complementary cumulative distribution: entries are
/// (value, fraction of the population with value >= this value), sorted
/// ascending by value, so fractions are non-increasing and the first
/// fraction is 1 for a non-empty population.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulativeDistribution {
    entries: Vec<(f64, f64)>,
}

impl CumulativeDistribution {
    /// Builds the distribution of a population of values. All values must
    /// be finite.
    pub fn from_values(values: &[f64]) -> Self {
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        let n = sorted.len();
        let mut entries = Vec::new();
        let mut i = 0;
        while i < n {
            let v = sorted[i];
            // everything from index i on is >= v
            entries.push((v, (n - i) as f64 / n as f64));
            while i < n && sorted[i] == v {
                i += 1;
            }
        }
        CumulativeDistribution { entries }
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fraction of the population with value >= `v` (a right-continuous
    /// step function of `v`).
    pub fn fraction_at_least(&self, v: f64) -> f64 {
        // first entry with value >= v carries the answer
        match self
            .entries
            .binary_search_by(|&(value, _)| value.total_cmp(&v))
        {
            Ok(i) => self.entries[i].1,
            Err(i) if i < self.entries.len() => self.entries[i].1,
            Err(_) => 0.0,
        }
    }
}

/// Distribution of node degrees of `g`; empty for an empty graph.
pub fn cumulative_degree_distribution(g: &WeightedGraph) -> CumulativeDistribution {
    let degrees: Vec<f64> = (0..g.node_count() as u32)
        .map(|o| g.degree(o) as f64)
        .collect();
    CumulativeDistribution::from_values(&degrees)
}

/// Distribution of edge weights of `g` (each undirected edge once).
pub fn cumulative_weight_distribution(g: &WeightedGraph) -> CumulativeDistribution {
    let weights: Vec<f64> = g.edges().map(|(_, _, w)| w).collect();
    CumulativeDistribution::from_values(&weights)
}

/// Maximum absolute difference between two cumulative fraction curves,
/// evaluated over the union of their value points. Symmetric, zero for
/// identical distributions, always in [0, 1].
pub fn ks_distance(a: &CumulativeDistribution, b: &CumulativeDistribution) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput(
            "ks distance requires non-empty distributions".into(),
        ));
    }
    let mut max = 0.0f64;
    for &(v, _) in a.entries().iter().chain(b.entries()) {
        let diff = (a.fraction_at_least(v) - b.fraction_at_least(v)).abs();
        if diff > max {
            max = diff;
        }
    }
    Ok(max)
}

/// Object and edge counts of a dataset, for retention computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DatasetCounts {
    pub objects: usize,
    /// `None` for point data.
    pub edges: Option<usize>,
}

impl DatasetCounts {
    pub fn objects(objects: usize) -> Self {
        DatasetCounts {
            objects,
            edges: None,
        }
    }

    pub fn graph(nodes: usize, edges: usize) -> Self {
        DatasetCounts {
            objects: nodes,
            edges: Some(edges),
        }
    }
}

/// Sample size as a percentage of the original, rounded half-up to whole
/// percent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RetentionStats {
    pub objects_pct: u32,
    pub edges_pct: Option<u32>,
}

/// Rounds `100 * sample / original` half-up to an integer percentage.
pub fn retention_percent(original: usize, sample: usize) -> Result<u32> {
    if original == 0 {
        return Err(Error::InvalidInput(
            "retention is undefined for an empty original".into(),
        ));
    }
    if sample > original {
        return Err(Error::InvalidInput(format!(
            "sample count {sample} exceeds original count {original}"
        )));
    }
    Ok((100.0 * sample as f64 / original as f64).round() as u32)
}

/// Retention of a sample versus its original dataset. Edge retention is
/// computed when both counts carry edges.
pub fn retention_stats(original: DatasetCounts, sample: DatasetCounts) -> Result<RetentionStats> {
    let objects_pct = retention_percent(original.objects, sample.objects)?;
    let edges_pct = match (original.edges, sample.edges) {
        (Some(oe), Some(se)) => Some(retention_percent(oe, se)?),
        _ => None,
    };
    Ok(RetentionStats {
        objects_pct,
        edges_pct,
    })
}

/// Counts 2-d points per grid cell of the given size (floor bucketing per
/// axis). Only defined for 2-dimensional point sets.
pub fn grid_density_histogram(
    points: &PointSet,
    cell: f64,
) -> Result<HashMap<(i64, i64), u64>> {
    if points.dim() != 2 {
        return Err(Error::UnsupportedDimension(points.dim()));
    }
    if !cell.is_finite() || cell <= 0.0 {
        return Err(Error::Config(format!(
            "histogram cell size must be a finite number > 0, got {cell}"
        )));
    }
    let mut histogram = HashMap::new();
    for i in 0..points.len() as u32 {
        let p = points.point(i);
        let key = ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64);
        *histogram.entry(key).or_insert(0) += 1;
    }
    Ok(histogram)
}
