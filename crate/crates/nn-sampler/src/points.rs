//! n-dimensional points as a similarity space: proximity is Euclidean
//! distance at most `radius` (boundary included), and nearest neighbors
//! are the in-radius points at minimal *discretized* distance, so
//! near-equal neighbors tie.
//!
//! Fixed-radius queries go through a uniform grid with cell size equal to
//! the radius: a query inspects only the query point's cell and the 3^n
//! block of adjacent cells, which necessarily contains every point within
//! the radius (per axis, |Δx| <= radius moves the cell coordinate by at
//! most 1).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sampler::{NeighborhoodProvider, ObjectId};

/// Immutable set of n-dimensional points with 64-bit coordinates, stored
/// row-major. Duplicate coordinates are allowed: distinct objects at
/// distance zero become each other's nearest neighbors.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Wraps row-major coordinates. The dimension must be >= 1, the buffer
    /// a whole number of points, and every coordinate finite.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("point dimension must be >= 1".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidInput(format!(
                "coordinate buffer of length {} is not a multiple of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite coordinate: {bad}"
            )));
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_rows(dim: usize, rows: impl IntoIterator<Item = Vec<f64>>) -> Result<Self> {
        let mut coords = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            coords.extend_from_slice(&row);
        }
        Self::new(dim, coords)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: ObjectId) -> &[f64] {
        let start = i as usize * self.dim;
        &self.coords[start..start + self.dim]
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

/// Floors `dist` to a multiple of `step`. Monotone non-decreasing and
/// idempotent on its own outputs.
pub fn discretize_distance(dist: f64, step: f64) -> f64 {
    (dist / step).floor() * step
}

/// Uniform grid over a [`PointSet`] with cell size equal to the query
/// radius. Every point lives in exactly one cell (floor of coordinate /
/// cell size per axis).
///
/// Point ids and coordinates are stored grouped by cell, so a radius query
/// streams through at most 3^n contiguous candidate runs.
#[derive(Clone, Debug)]
pub struct GridIndex {
    cell_size: f64,
    dim: usize,
    /// cell key -> slot into `starts`
    slots: HashMap<Box<[i64]>, u32>,
    /// slot -> start of the cell's run in `ids` / `coords`; one past the
    /// last slot holds the total count
    starts: Vec<u32>,
    ids: Vec<ObjectId>,
    coords: Vec<f64>,
}

impl GridIndex {
    pub fn build(points: &PointSet, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::Config(format!(
                "grid radius must be a finite number > 0, got {radius}"
            )));
        }
        let dim = points.dim();
        let n = points.len();

        let mut keys: Vec<i64> = vec![0; n * dim];
        for i in 0..n {
            cell_of(
                points.point(i as ObjectId),
                radius,
                &mut keys[i * dim..(i + 1) * dim],
            );
        }
        let key_of = |i: u32| -> &[i64] { &keys[i as usize * dim..(i as usize + 1) * dim] };

        let mut order: Vec<ObjectId> = (0..n as ObjectId).collect();
        order.sort_unstable_by(|&a, &b| key_of(a).cmp(key_of(b)));

        let mut slots: HashMap<Box<[i64]>, u32> = HashMap::new();
        let mut starts: Vec<u32> = Vec::new();
        let mut ids: Vec<ObjectId> = Vec::with_capacity(n);
        let mut coords: Vec<f64> = Vec::with_capacity(n * dim);
        for &i in &order {
            let key = key_of(i);
            let new_cell = ids
                .last()
                .is_none_or(|&prev| key_of(prev) != key);
            if new_cell {
                slots.insert(key.into(), starts.len() as u32);
                starts.push(ids.len() as u32);
            }
            ids.push(i);
            coords.extend_from_slice(points.point(i));
        }
        starts.push(n as u32);

        Ok(GridIndex {
            cell_size: radius,
            dim,
            slots,
            starts,
            ids,
            coords,
        })
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    /// Number of occupied cells.
    pub fn cell_count(&self) -> usize {
        self.slots.len()
    }

    /// All point ids in cell-grouped storage order.
    pub(crate) fn grouped_ids(&self) -> &[ObjectId] {
        &self.ids
    }

    /// Calls `visit` with every (id, coordinates) stored in the 3^n block
    /// of cells around `point`'s cell. Includes `point`'s own id if it is
    /// indexed.
    fn for_each_candidate(&self, point: &[f64], visit: &mut impl FnMut(ObjectId, &[f64])) {
        let mut base = vec![0i64; self.dim];
        cell_of(point, self.cell_size, &mut base);
        let mut probe = vec![0i64; self.dim];
        let mut offsets = vec![-1i64; self.dim];
        loop {
            for i in 0..self.dim {
                // saturating: cell coordinates themselves saturate for
                // astronomically large inputs
                probe[i] = base[i].saturating_add(offsets[i]);
            }
            if let Some(&slot) = self.slots.get(probe.as_slice()) {
                let start = self.starts[slot as usize] as usize;
                let end = self.starts[slot as usize + 1] as usize;
                for (id, chunk) in self.ids[start..end]
                    .iter()
                    .zip(self.coords[start * self.dim..end * self.dim].chunks_exact(self.dim))
                {
                    visit(*id, chunk);
                }
            }
            // odometer over {-1, 0, 1}^dim
            let mut axis = 0;
            loop {
                if axis == self.dim {
                    return;
                }
                offsets[axis] += 1;
                if offsets[axis] <= 1 {
                    break;
                }
                offsets[axis] = -1;
                axis += 1;
            }
        }
    }
}

fn cell_of(point: &[f64], cell_size: f64, key: &mut [i64]) {
    for (k, &c) in key.iter_mut().zip(point) {
        *k = (c / cell_size).floor() as i64;
    }
}

/// Presents a point set to the sampler as a network: every point is an
/// object whose neighborhood is the set of points within `radius`, with
/// nearest neighbors ranked by discretized distance. The edge list is
/// never materialized.
pub struct PointProvider<'a> {
    points: &'a PointSet,
    index: GridIndex,
    radius_sq: f64,
    step: f64,
}

impl<'a> PointProvider<'a> {
    pub fn new(points: &'a PointSet, radius: f64, step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::Config(format!(
                "step must be a finite number > 0, got {step}"
            )));
        }
        let index = GridIndex::build(points, radius)?;
        Ok(PointProvider {
            points,
            index,
            radius_sq: radius * radius,
            step,
        })
    }

    pub fn points(&self) -> &PointSet {
        self.points
    }

    pub fn index(&self) -> &GridIndex {
        &self.index
    }

    fn check_id(&self, o: ObjectId) -> Result<()> {
        if (o as usize) < self.points.len() {
            Ok(())
        } else {
            Err(Error::UnknownId(o.to_string()))
        }
    }

    /// Validated radius query; unknown ids are an input error.
    pub fn try_neighborhood(&self, o: ObjectId) -> Result<Vec<ObjectId>> {
        self.check_id(o)?;
        Ok(self.neighborhood(o))
    }

    /// Validated nearest-neighbor query; unknown ids are an input error.
    pub fn try_nearest_neighbors(&self, o: ObjectId) -> Result<Vec<ObjectId>> {
        self.check_id(o)?;
        Ok(self.nearest_neighbors(o))
    }
}

impl NeighborhoodProvider for PointProvider<'_> {
    fn universe(&self) -> usize {
        self.points.len()
    }

    fn neighborhood(&self, o: ObjectId) -> Vec<ObjectId> {
        let mut out = Vec::new();
        let p = self.points.point(o);
        self.index.for_each_candidate(p, &mut |q, qc| {
            if q != o && squared_distance(p, qc) <= self.radius_sq {
                out.push(q);
            }
        });
        out.sort_unstable();
        out
    }

    fn nearest_neighbors(&self, o: ObjectId) -> Vec<ObjectId> {
        let mut nn = Vec::new();
        self.survey(o, &mut nn);
        nn.sort_unstable();
        nn
    }

    fn survey(&self, o: ObjectId, nn: &mut Vec<ObjectId>) -> u32 {
        nn.clear();
        let p = self.points.point(o);
        let mut degree = 0u32;
        let mut min_bucket = f64::INFINITY;
        self.index.for_each_candidate(p, &mut |q, qc| {
            if q == o {
                return;
            }
            let d_sq = squared_distance(p, qc);
            if d_sq > self.radius_sq {
                return;
            }
            degree += 1;
            let bucket = discretize_distance(d_sq.sqrt(), self.step);
            if bucket < min_bucket {
                min_bucket = bucket;
                nn.clear();
                nn.push(q);
            } else if bucket == min_bucket {
                nn.push(q);
            }
        });
        degree
    }

    fn scan_order(&self) -> Option<&[ObjectId]> {
        Some(self.index.grouped_ids())
    }
}
