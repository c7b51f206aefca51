//! Object scoring and representative selection, generic over any
//! neighborhood provider (graph adjacency or fixed-radius point queries).
//!
//! Every object is scored on two counters: its proximity degree `d(o)` (how
//! many neighborhoods contain it) and its proximity rank `k(o)` (how many
//! objects have it in their nearest-neighbor set). Representativeness
//! combines the two as `r = k * ln(base) / ln(d)`, with `r = 0` when
//! `d = 0` and `r = k` when `d = 1`. The sample is the set of objects with
//! `r >= threshold` — fully deterministic, no randomness anywhere.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::config::SamplerConfig;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::points::{PointProvider, PointSet};

/// Dense object identifier, `0..universe`.
pub type ObjectId = u32;

/// Read-only neighborhood queries over a finite object universe.
///
/// Implementations must satisfy, for all objects `o`, `o'`:
/// - `nearest_neighbors(o) ⊆ neighborhood(o)`;
/// - symmetry: `o' ∈ neighborhood(o)` iff `o ∈ neighborhood(o')`
///   (this crate implements the symmetric case only);
/// - `o ∉ neighborhood(o)`.
///
/// Ids passed to the query methods must be below `universe()`; out-of-range
/// ids may panic. Providers are immutable once built, so concurrent queries
/// are safe.
pub trait NeighborhoodProvider: Sync {
    /// Number of objects; valid ids are `0..universe()`.
    fn universe(&self) -> usize;

    /// All neighbors of `o`, in ascending id order.
    fn neighborhood(&self, o: ObjectId) -> Vec<ObjectId>;

    /// The neighbors of `o` at maximal similarity (minimal distance),
    /// in ascending id order. Ties keep every member; empty iff `o` has
    /// an empty neighborhood.
    fn nearest_neighbors(&self, o: ObjectId) -> Vec<ObjectId>;

    /// Single visit of `o`'s neighborhood used by scoring: returns the
    /// neighborhood size and fills `nn` with the nearest-neighbor set
    /// (any order). Implementations override this to avoid scanning twice.
    fn survey(&self, o: ObjectId, nn: &mut Vec<ObjectId>) -> u32 {
        nn.clear();
        nn.extend(self.nearest_neighbors(o));
        self.neighborhood(o).len() as u32
    }

    /// A permutation of the universe that keeps consecutive queries close
    /// together (spatial indexes return their storage order). Scoring
    /// results do not depend on it; only cache behavior does.
    fn scan_order(&self) -> Option<&[ObjectId]> {
        None
    }
}

/// Per-object proximity degree and proximity rank counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreTable {
    degree: Vec<u32>,
    rank: Vec<u32>,
}

impl ScoreTable {
    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    /// Proximity degree d(o): the number of neighborhoods containing `o`,
    /// which under symmetric proximity equals `|neighborhood(o)|`.
    pub fn degree(&self, o: ObjectId) -> u32 {
        self.degree[o as usize]
    }

    /// Proximity rank k(o): the number of objects whose nearest-neighbor
    /// set contains `o`.
    pub fn rank(&self, o: ObjectId) -> u32 {
        self.rank[o as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// r(o) under the given log base.
    pub fn representativeness(&self, o: ObjectId, log_base: f64) -> f64 {
        representativeness(self.rank[o as usize], self.degree[o as usize], log_base)
    }
}

/// The representativeness score `r = k / log_base(d)`, computed as
/// `k * ln(base) / ln(d)`, with the defined special cases `r = 0` for
/// `d = 0` and `r = k` for `d = 1`.
///
/// `log_base` must be > 1 (enforced by [`SamplerConfig`] before any
/// scoring starts). The result is finite and non-negative.
pub fn representativeness(rank: u32, degree: u32, log_base: f64) -> f64 {
    match degree {
        0 => 0.0,
        1 => rank as f64,
        d => rank as f64 * log_base.ln() / (d as f64).ln(),
    }
}

/// Scores every object: one neighborhood visit per object, incrementing the
/// rank of each member of the visited object's nearest-neighbor set.
///
/// Runs in parallel over objects on the current rayon pool. Counter updates
/// are plain integer additions, so the result is identical to a sequential
/// run regardless of thread count or schedule.
pub fn score<P: NeighborhoodProvider + ?Sized>(provider: &P) -> ScoreTable {
    let n = provider.universe();
    let rank: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();

    let degree: Vec<u32> = match provider.scan_order() {
        None => (0..n as u32)
            .into_par_iter()
            .map_init(Vec::new, |nn, o| {
                let d = provider.survey(o, nn);
                for &y in nn.iter() {
                    rank[y as usize].fetch_add(1, Ordering::Relaxed);
                }
                d
            })
            .collect(),
        Some(order) => {
            debug_assert_eq!(order.len(), n);
            let degree: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();
            order.par_iter().for_each_init(Vec::new, |nn, &o| {
                let d = provider.survey(o, nn);
                degree[o as usize].store(d, Ordering::Relaxed);
                for &y in nn.iter() {
                    rank[y as usize].fetch_add(1, Ordering::Relaxed);
                }
            });
            degree.into_iter().map(AtomicU32::into_inner).collect()
        }
    };

    let rank = rank.into_iter().map(AtomicU32::into_inner).collect();
    ScoreTable { degree, rank }
}

/// A deterministic sample: the ids selected (ascending), the score snapshot
/// they were selected from, and the config that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleResult {
    /// Selected object ids in ascending order.
    pub selected: Vec<ObjectId>,
    /// Scores the selection was computed from. After [`local_sample`] the
    /// entries are only meaningful for region members.
    pub scores: ScoreTable,
    /// r(o) per object under `config.log_base()`.
    pub representativeness: Vec<f64>,
    pub config: SamplerConfig,
}

impl SampleResult {
    /// Size of the scored universe.
    pub fn universe(&self) -> usize {
        self.scores.len()
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn contains(&self, o: ObjectId) -> bool {
        self.selected.binary_search(&o).is_ok()
    }
}

/// Selects every object with `r(o) >= threshold` (inclusive, exact
/// comparison), in ascending id order.
pub fn select(scores: &ScoreTable, config: &SamplerConfig) -> SampleResult {
    let log_base = config.log_base();
    let threshold = config.threshold();
    let representativeness: Vec<f64> = (0..scores.len() as u32)
        .map(|o| scores.representativeness(o, log_base))
        .collect();
    let selected = representativeness
        .iter()
        .enumerate()
        .filter(|(_, &r)| r >= threshold)
        .map(|(o, _)| o as ObjectId)
        .collect();
    SampleResult {
        selected,
        scores: scores.clone(),
        representativeness,
        config: config.clone(),
    }
}

/// A graph sample: the selected nodes plus the subgraph they induce
/// (every original edge with both endpoints selected, weights preserved).
#[derive(Clone, Debug)]
pub struct GraphSample {
    pub result: SampleResult,
    pub subgraph: WeightedGraph,
}

/// Samples a weighted graph: score, then select, then induce the subgraph
/// on the selected nodes.
pub fn sample_graph(graph: &WeightedGraph, config: &SamplerConfig) -> Result<GraphSample> {
    let scores = score(graph);
    let result = select(&scores, config);
    let subgraph = graph.induced_subgraph(&result.selected)?;
    Ok(GraphSample { result, subgraph })
}

/// Samples a point set under `config`'s radius and step.
pub fn sample_points(points: &PointSet, config: &SamplerConfig) -> Result<SampleResult> {
    let (radius, step) = config.require_radius_step()?;
    let provider = PointProvider::new(points, radius, step)?;
    Ok(select(&score(&provider), config))
}

/// Samples only within `region`, visiting nothing beyond the region's
/// one-hop neighborhood closure, and returns exactly
/// `global sample ∩ region`.
///
/// Under symmetric proximity every contribution to d(o) and k(o) for
/// `o ∈ region` comes from an object in `o`'s neighborhood, all of which
/// lie inside the closure — so the regional counters equal the global ones.
/// Score entries outside the region are left at zero and `representativeness`
/// is only meaningful for region members.
pub fn local_sample<P: NeighborhoodProvider + ?Sized>(
    provider: &P,
    region: &[ObjectId],
    config: &SamplerConfig,
) -> Result<SampleResult> {
    let n = provider.universe();
    let mut in_region = vec![false; n];
    for &o in region {
        if o as usize >= n {
            return Err(Error::UnknownId(o.to_string()));
        }
        in_region[o as usize] = true;
    }

    let mut in_closure = in_region.clone();
    for &o in region {
        for nb in provider.neighborhood(o) {
            in_closure[nb as usize] = true;
        }
    }
    let closure: Vec<ObjectId> = (0..n as u32).filter(|&o| in_closure[o as usize]).collect();

    let rank: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();
    let degrees: Vec<(ObjectId, u32)> = closure
        .par_iter()
        .map_init(Vec::new, |nn, &c| {
            let d = provider.survey(c, nn);
            for &y in nn.iter() {
                if in_region[y as usize] {
                    rank[y as usize].fetch_add(1, Ordering::Relaxed);
                }
            }
            (c, d)
        })
        .collect();

    let mut degree = vec![0u32; n];
    for (c, d) in degrees {
        if in_region[c as usize] {
            degree[c as usize] = d;
        }
    }
    let rank: Vec<u32> = rank.into_iter().map(AtomicU32::into_inner).collect();

    let log_base = config.log_base();
    let threshold = config.threshold();
    let mut representativeness = vec![0.0; n];
    let mut selected = Vec::new();
    for o in 0..n {
        if !in_region[o] {
            continue;
        }
        let r = crate::sampler::representativeness(rank[o], degree[o], log_base);
        representativeness[o] = r;
        if r >= threshold {
            selected.push(o as ObjectId);
        }
    }

    Ok(SampleResult {
        selected,
        scores: ScoreTable { degree, rank },
        representativeness,
        config: config.clone(),
    })
}
