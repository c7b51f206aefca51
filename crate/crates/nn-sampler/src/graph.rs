//! Weighted undirected graphs as a similarity space: adjacency is
//! proximity, edge weight is similarity, so a node's neighborhood is its
//! adjacency set and its nearest neighbors are the adjacent nodes with
//! maximal edge weight.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::io::EdgeRecord;
use crate::sampler::{NeighborhoodProvider, ObjectId};

/// Immutable weighted undirected graph. Node labels are external strings;
/// internal ids are dense integers assigned in first-appearance order, so
/// loading the same edge list always yields the same id assignment.
///
/// No self-loops, no duplicate edges, all weights finite and > 0.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    labels: Vec<String>,
    ids: HashMap<String, ObjectId>,
    adjacency: Vec<Vec<(ObjectId, f64)>>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph from parsed edge records. Labels get dense ids in
    /// first-appearance order; each undirected edge is stored in both
    /// endpoint lists; adjacency lists end up sorted by neighbor id.
    ///
    /// Errors carry the offending record's line number: self-loops,
    /// duplicate unordered pairs, and non-positive or non-finite weights
    /// are all rejected.
    pub fn from_records(records: &[EdgeRecord]) -> Result<Self> {
        let mut graph = WeightedGraph {
            labels: Vec::new(),
            ids: HashMap::new(),
            adjacency: Vec::new(),
            edge_count: 0,
        };
        let mut seen: HashSet<(ObjectId, ObjectId)> = HashSet::with_capacity(records.len());

        for record in records {
            let line = record.line;
            if record.source.is_empty() || record.target.is_empty() {
                return Err(Error::parse(line, "empty node label"));
            }
            if !record.weight.is_finite() || record.weight <= 0.0 {
                return Err(Error::parse(
                    line,
                    format!("edge weight must be > 0, got {}", record.weight),
                ));
            }
            if record.source == record.target {
                return Err(Error::parse(
                    line,
                    format!("self-loop on node '{}'", record.source),
                ));
            }
            let u = graph.intern(&record.source);
            let v = graph.intern(&record.target);
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::parse(
                    line,
                    format!(
                        "duplicate edge between '{}' and '{}'",
                        record.source, record.target
                    ),
                ));
            }
            graph.adjacency[u as usize].push((v, record.weight));
            graph.adjacency[v as usize].push((u, record.weight));
            graph.edge_count += 1;
        }

        for list in &mut graph.adjacency {
            list.sort_unstable_by_key(|&(id, _)| id);
        }
        Ok(graph)
    }

    /// Convenience builder for in-memory edge lists; positions stand in
    /// for line numbers in error messages.
    pub fn from_triples<S, I>(triples: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, S, f64)>,
    {
        let records: Vec<EdgeRecord> = triples
            .into_iter()
            .enumerate()
            .map(|(i, (s, t, w))| EdgeRecord {
                source: s.into(),
                target: t.into(),
                weight: w,
                line: i as u64 + 1,
            })
            .collect();
        Self::from_records(&records)
    }

    fn intern(&mut self, label: &str) -> ObjectId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len() as ObjectId;
        self.labels.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        self.adjacency.push(Vec::new());
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, o: ObjectId) -> &str {
        &self.labels[o as usize]
    }

    pub fn node_id(&self, label: &str) -> Option<ObjectId> {
        self.ids.get(label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    /// Adjacency list of `o`: (neighbor id, weight), sorted by neighbor id.
    pub fn neighbors(&self, o: ObjectId) -> &[(ObjectId, f64)] {
        &self.adjacency[o as usize]
    }

    pub fn degree(&self, o: ObjectId) -> usize {
        self.adjacency[o as usize].len()
    }

    /// Every edge once, as (u, v, weight) with u < v, ascending by (u, v).
    pub fn edges(&self) -> impl Iterator<Item = (ObjectId, ObjectId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as ObjectId;
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    fn check_node(&self, o: ObjectId) -> Result<()> {
        if (o as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownId(o.to_string()))
        }
    }

    /// Validated neighborhood query; unknown ids are an input error.
    pub fn try_neighborhood(&self, o: ObjectId) -> Result<Vec<ObjectId>> {
        self.check_node(o)?;
        Ok(self.neighborhood(o))
    }

    /// Validated nearest-neighbor query; unknown ids are an input error.
    pub fn try_nearest_neighbors(&self, o: ObjectId) -> Result<Vec<ObjectId>> {
        self.check_node(o)?;
        Ok(self.nearest_neighbors(o))
    }

    /// The subgraph on `nodes`: exactly those nodes plus every original
    /// edge with both endpoints among them, weights preserved. Node ids are
    /// reassigned densely in ascending order of the original ids; labels
    /// carry over, so inducing twice with the full node set is an identity.
    pub fn induced_subgraph(&self, nodes: &[ObjectId]) -> Result<WeightedGraph> {
        let n = self.node_count();
        let mut keep: Vec<Option<ObjectId>> = vec![None; n];
        let mut sorted: Vec<ObjectId> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &o in &sorted {
            self.check_node(o)?;
        }
        for (new_id, &o) in sorted.iter().enumerate() {
            keep[o as usize] = Some(new_id as ObjectId);
        }

        let labels: Vec<String> = sorted
            .iter()
            .map(|&o| self.labels[o as usize].clone())
            .collect();
        let ids = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as ObjectId))
            .collect();
        let mut adjacency: Vec<Vec<(ObjectId, f64)>> = vec![Vec::new(); sorted.len()];
        let mut edge_count = 0;
        for &u in &sorted {
            let nu = keep[u as usize].unwrap();
            for &(v, w) in &self.adjacency[u as usize] {
                if u < v {
                    if let Some(nv) = keep[v as usize] {
                        adjacency[nu as usize].push((nv, w));
                        adjacency[nv as usize].push((nu, w));
                        edge_count += 1;
                    }
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(id, _)| id);
        }
        Ok(WeightedGraph {
            labels,
            ids,
            adjacency,
            edge_count,
        })
    }
}

impl NeighborhoodProvider for WeightedGraph {
    fn universe(&self) -> usize {
        self.node_count()
    }

    fn neighborhood(&self, o: ObjectId) -> Vec<ObjectId> {
        self.adjacency[o as usize].iter().map(|&(v, _)| v).collect()
    }

    fn nearest_neighbors(&self, o: ObjectId) -> Vec<ObjectId> {
        let list = &self.adjacency[o as usize];
        let mut max = f64::NEG_INFINITY;
        for &(_, w) in list {
            if w > max {
                max = w;
            }
        }
        list.iter()
            .filter(|&&(_, w)| w == max)
            .map(|&(v, _)| v)
            .collect()
    }

    fn survey(&self, o: ObjectId, nn: &mut Vec<ObjectId>) -> u32 {
        nn.clear();
        let mut max = f64::NEG_INFINITY;
        for &(v, w) in &self.adjacency[o as usize] {
            if w > max {
                max = w;
                nn.clear();
                nn.push(v);
            } else if w == max {
                nn.push(v);
            }
        }
        self.adjacency[o as usize].len() as u32
    }
}
