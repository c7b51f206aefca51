//! Shared test support: a quadratic brute-force scoring oracle that stays
//! independent of the library's scoring path, plus deterministic random
//! instance generators.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use nn_sampler::PointSet;

/// Reference scores computed the slow, obviously-correct way: enumerate
/// every object's neighborhood, count containment for degrees and
/// nearest-neighbor membership for ranks.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleScores {
    pub degree: Vec<u32>,
    pub rank: Vec<u32>,
}

/// Brute-force oracle over a labeled edge list. `labels` fixes the id
/// order (ids are indices into it); edges are (source id, target id,
/// weight) with both orientations implied.
pub fn oracle_graph_scores(n: usize, edges: &[(usize, usize, f64)]) -> OracleScores {
    let mut weight = vec![vec![None::<f64>; n]; n];
    for &(u, v, w) in edges {
        weight[u][v] = Some(w);
        weight[v][u] = Some(w);
    }

    let neighborhood = |o: usize| -> Vec<usize> {
        (0..n).filter(|&x| weight[o][x].is_some()).collect()
    };
    let nearest = |o: usize| -> Vec<usize> {
        let nbh = neighborhood(o);
        let max = nbh
            .iter()
            .map(|&x| weight[o][x].unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        nbh.into_iter()
            .filter(|&x| weight[o][x].unwrap() == max)
            .collect()
    };

    let mut degree = vec![0u32; n];
    let mut rank = vec![0u32; n];
    for o in 0..n {
        for x in neighborhood(o) {
            degree[x] += 1;
        }
        for y in nearest(o) {
            rank[y] += 1;
        }
    }
    OracleScores { degree, rank }
}

/// Brute-force oracle over a point set: all-pairs scan, radius proximity,
/// nearest neighbors by floor-discretized distance.
pub fn oracle_point_scores(points: &PointSet, radius: f64, step: f64) -> OracleScores {
    let n = points.len();
    let dist_sq = |a: usize, b: usize| -> f64 {
        let pa = points.point(a as u32);
        let pb = points.point(b as u32);
        pa.iter().zip(pb).map(|(x, y)| (x - y) * (x - y)).sum()
    };
    let radius_sq = radius * radius;

    let neighborhood = |o: usize| -> Vec<usize> {
        (0..n)
            .filter(|&x| x != o && dist_sq(o, x) <= radius_sq)
            .collect()
    };
    let nearest = |o: usize| -> Vec<usize> {
        let nbh = neighborhood(o);
        let bucket = |x: usize| (dist_sq(o, x).sqrt() / step).floor() * step;
        let min = nbh.iter().map(|&x| bucket(x)).fold(f64::INFINITY, f64::min);
        nbh.into_iter().filter(|&x| bucket(x) == min).collect()
    };

    let mut degree = vec![0u32; n];
    let mut rank = vec![0u32; n];
    for o in 0..n {
        for x in neighborhood(o) {
            degree[x] += 1;
        }
        for y in nearest(o) {
            rank[y] += 1;
        }
    }
    OracleScores { degree, rank }
}

/// Representativeness recomputed from first principles, for oracle-side
/// selection.
pub fn oracle_representativeness(rank: u32, degree: u32, base: f64) -> f64 {
    if degree == 0 {
        0.0
    } else if degree == 1 {
        rank as f64
    } else {
        rank as f64 * base.ln() / (degree as f64).ln()
    }
}

/// A random weighted graph as an id-based edge list: up to `max_n` nodes,
/// tie-rich small-integer weights so nearest-neighbor tie handling gets
/// exercised hard.
pub fn random_graph_edges(rng: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<(usize, usize, f64)>) {
    let n = rng.random_range(2..=max_n);
    let p = rng.random_range(0.05..0.4);
    let integer_weights = rng.random_bool(0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                let w = if integer_weights {
                    rng.random_range(1..=5) as f64
                } else {
                    rng.random_range(0.1..10.0)
                };
                edges.push((u, v, w));
            }
        }
    }
    (n, edges)
}

/// Builds a library graph from id-based edges, labeling node `i` as `n{i}`.
/// Nodes that no edge touches do not exist in the graph, so the oracle must
/// be called with the returned node count.
pub fn graph_from_edges(edges: &[(usize, usize, f64)]) -> (nn_sampler::WeightedGraph, Vec<usize>) {
    // first-appearance order of ids, mirroring the builder's label interning
    let mut order = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &(u, v, _) in edges {
        if seen.insert(u) {
            order.push(u);
        }
        if seen.insert(v) {
            order.push(v);
        }
    }
    let triples: Vec<(String, String, f64)> = edges
        .iter()
        .map(|&(u, v, w)| (format!("n{u}"), format!("n{v}"), w))
        .collect();
    let graph = nn_sampler::WeightedGraph::from_triples(triples).unwrap();
    (graph, order)
}

/// A random point set with lattice-ish coordinates (collisions and exact
/// radius boundaries happen often) plus a random radius and step.
pub fn random_point_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (PointSet, f64, f64) {
    let n = rng.random_range(1..=max_n);
    let dim = rng.random_range(1..=3);
    let span = rng.random_range(20..=80);
    let mut coords = Vec::with_capacity(n * dim);
    for _ in 0..n * dim {
        coords.push(rng.random_range(0..=span) as f64);
    }
    let radius = *[3.0, 5.0, 8.0, 13.0, 21.0]
        .get(rng.random_range(0..5))
        .unwrap();
    let step = *[1.0, 2.0, 5.0, 10.0].get(rng.random_range(0..4)).unwrap();
    (PointSet::new(dim, coords).unwrap(), radius, step)
}

/// Standard normal via Box-Muller.
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Clustered 2-d points: `clusters` Gaussian blobs of random size and
/// spread scattered over a `side`-sized square, plus a sprinkle of uniform
/// noise. Shaped like the synthetic clustering benchmarks.
pub fn clustered_points(rng: &mut ChaCha8Rng, n: usize, clusters: usize, side: f64) -> PointSet {
    let mut centers = Vec::with_capacity(clusters);
    for _ in 0..clusters {
        let cx = rng.random_range(0.0..side);
        let cy = rng.random_range(0.0..side);
        let sigma = rng.random_range(side / 400.0..side / 40.0);
        centers.push((cx, cy, sigma));
    }
    let noise = n / 20;
    let mut coords = Vec::with_capacity(n * 2);
    for i in 0..n {
        if i < noise {
            coords.push(rng.random_range(0.0..side));
            coords.push(rng.random_range(0.0..side));
        } else {
            let (cx, cy, sigma) = centers[rng.random_range(0..clusters)];
            coords.push(cx + sigma * normal(rng));
            coords.push(cy + sigma * normal(rng));
        }
    }
    PointSet::new(2, coords).unwrap()
}

/// Uniform 2-d points over a square sized so that expected density is
/// `density` points per unit area — doubling `n` doubles the area.
pub fn uniform_points_at_density(rng: &mut ChaCha8Rng, n: usize, density: f64) -> PointSet {
    let side = (n as f64 / density).sqrt();
    let mut coords = Vec::with_capacity(n * 2);
    for _ in 0..n {
        coords.push(rng.random_range(0.0..side));
        coords.push(rng.random_range(0.0..side));
    }
    PointSet::new(2, coords).unwrap()
}

/// Scale-free weighted graph by preferential attachment. Each new node
/// attaches a heavy-tailed random number of edges (many nodes bring just
/// one, a few bring several) to endpoints sampled from the running edge
/// list, with discrete heavy-tailed weights — the degree shape of a
/// co-authorship network, where most authors have few collaborators.
pub fn scale_free_graph(rng: &mut ChaCha8Rng, n: usize, max_m: usize) -> nn_sampler::WeightedGraph {
    let mut endpoints: Vec<usize> = Vec::with_capacity(3 * n);
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(3 * n);
    let mut seen = std::collections::HashSet::with_capacity(3 * n);
    let seed = max_m + 2;
    for u in 0..seed {
        for v in (u + 1)..seed {
            edges.push((u, v, heavy_tail_weight(rng)));
            seen.insert((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    for u in seed..n {
        let m = {
            let roll: f64 = rng.random();
            if roll < 0.55 {
                1
            } else if roll < 0.80 {
                2
            } else if roll < 0.92 {
                3
            } else {
                rng.random_range(4..=max_m.max(4))
            }
        };
        let mut attached = 0;
        let mut guard = 0;
        while attached < m && guard < 50 * m {
            guard += 1;
            let v = endpoints[rng.random_range(0..endpoints.len())];
            let key = (v.min(u), v.max(u));
            if v == u || seen.contains(&key) {
                continue;
            }
            seen.insert(key);
            edges.push((key.0, key.1, heavy_tail_weight(rng)));
            endpoints.push(u);
            endpoints.push(v);
            attached += 1;
        }
    }
    graph_from_edges(&edges).0
}

fn heavy_tail_weight(rng: &mut ChaCha8Rng) -> f64 {
    // Pareto-ish integers: mostly 1s and 2s, occasional hundreds. Discrete
    // values make nearest-neighbor ties common, like co-occurrence counts.
    let u: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    u.powf(-0.7).floor().min(433.0)
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    pearson(&ra, &rb)
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        return 0.0;
    }
    cov / (va * vb).sqrt()
}
