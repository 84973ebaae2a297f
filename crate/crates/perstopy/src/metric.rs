//! Finite (pointed) metric spaces, validation, and the canonical generators
//! used throughout: cycle graphs, star graphs, circle samples, uniform
//! spaces, random trees, l-infinity products and wedge sums.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{TOL, TOL_INTERNAL};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("distance matrix is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("labels/matrix size mismatch: {labels} labels for {n} rows")]
    LabelMismatch { labels: usize, n: usize },
    #[error("matrix is asymmetric at ({i},{j}): {a} != {b}")]
    AsymmetricMatrix { i: usize, j: usize, a: f64, b: f64 },
    #[error("negative entry at ({i},{j}): {value}")]
    NegativeEntry { i: usize, j: usize, value: f64 },
    #[error("nonzero diagonal at {i}: {value}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("triangle inequality fails: d({i},{j}) > d({i},{via}) + d({via},{j})")]
    TriangleViolation { i: usize, via: usize, j: usize },
    #[error("basepoint {basepoint} out of range for {n} points")]
    BasepointOutOfRange { basepoint: usize, n: usize },
    #[error("need at least {min} points, got {n}")]
    TooFewPoints { min: usize, n: usize },
}

/// A finite metric space: labeled points plus a validated symmetric distance
/// matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

/// Serde helper mirroring the on-disk JSON format
/// `{"labels": [...], "dist": [[...]], "basepoint": optional}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
}

impl FiniteMetricSpace {
    /// Validates the metric axioms (within `TOL_INTERNAL`) and builds a space.
    /// Labels default to `"0".."n-1"` when not supplied.
    pub fn validate(
        labels: Option<Vec<String>>,
        dist: Vec<Vec<f64>>,
    ) -> Result<Self, MetricError> {
        let n = dist.len();
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, len: r.len(), n });
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(MetricError::LabelMismatch { labels: l.len(), n });
                }
                l
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        for i in 0..n {
            if dist[i][i].abs() > TOL_INTERNAL {
                return Err(MetricError::NonzeroDiagonal { i, value: dist[i][i] });
            }
            for j in 0..n {
                if dist[i][j] < -TOL_INTERNAL {
                    return Err(MetricError::NegativeEntry { i, j, value: dist[i][j] });
                }
                if (dist[i][j] - dist[j][i]).abs() > TOL_INTERNAL {
                    return Err(MetricError::AsymmetricMatrix {
                        i,
                        j,
                        a: dist[i][j],
                        b: dist[j][i],
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for via in 0..n {
                    if dist[i][j] > dist[i][via] + dist[via][j] + TOL_INTERNAL {
                        return Err(MetricError::TriangleViolation { i, via, j });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self, MetricError> {
        Self::validate(json.labels.clone(), json.dist.clone())
    }

    pub fn to_json(&self, basepoint: Option<usize>) -> SpaceJson {
        SpaceJson {
            labels: Some(self.labels.clone()),
            dist: self.dist.clone(),
            basepoint,
        }
    }

    pub fn n(&self) -> usize {
        self.dist.len()
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &Vec<Vec<f64>> {
        &self.dist
    }

    pub fn ecc(&self, i: usize) -> f64 {
        self.dist[i].iter().cloned().fold(0.0, f64::max)
    }

    pub fn diam(&self) -> f64 {
        (0..self.n()).map(|i| self.ecc(i)).fold(0.0, f64::max)
    }

    pub fn rad(&self) -> f64 {
        (0..self.n()).map(|i| self.ecc(i)).fold(f64::INFINITY, f64::min)
    }

    /// True iff the graph with edges `{d <= eps}` is connected.
    pub fn is_eps_connected(&self, eps: f64) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && self.dist[v][u] <= eps + TOL {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Sorted distinct positive pairwise distances (merged within `TOL`).
    /// These are the candidate critical values: the Vietoris-Rips complex
    /// only changes there.
    pub fn candidate_scales(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = Vec::new();
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                vals.push(self.dist[i][j]);
            }
        }
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut out: Vec<f64> = Vec::new();
        for v in vals {
            if v > TOL && out.last().map_or(true, |l| v > l + TOL) {
                out.push(v);
            }
        }
        out
    }

    /// Every point has an antipode: a point realizing the diameter with it.
    pub fn every_point_has_antipode(&self) -> bool {
        let diam = self.diam();
        (0..self.n()).all(|i| (self.ecc(i) - diam).abs() <= TOL)
    }
}

/// A finite metric space with a distinguished basepoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointedMetricSpace {
    pub space: FiniteMetricSpace,
    pub basepoint: usize,
}

impl PointedMetricSpace {
    pub fn new(space: FiniteMetricSpace, basepoint: usize) -> Result<Self, MetricError> {
        if basepoint >= space.n() {
            return Err(MetricError::BasepointOutOfRange { basepoint, n: space.n() });
        }
        Ok(PointedMetricSpace { space, basepoint })
    }
}

/// Cycle graph `C_m` with the shortest-path metric, unit edge weights:
/// `d(i,j) = min(|i-j|, m-|i-j|)`.
pub fn cycle_graph(m: usize) -> Result<FiniteMetricSpace, MetricError> {
    if m < 3 {
        return Err(MetricError::TooFewPoints { min: 3, n: m });
    }
    let dist = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = i.abs_diff(j);
                    k.min(m - k) as f64
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::validate(None, dist)
}

/// Star graph `S_n`: point 0 is the center (and basepoint), leaves at
/// distance 1 from the center and 2 from each other.
pub fn star_graph(n: usize) -> Result<PointedMetricSpace, MetricError> {
    if n < 3 {
        return Err(MetricError::TooFewPoints { min: 3, n });
    }
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else if i == 0 || j == 0 {
                        1.0
                    } else {
                        2.0
                    }
                })
                .collect()
        })
        .collect();
    PointedMetricSpace::new(FiniteMetricSpace::validate(None, dist)?, 0)
}

/// `Delta_n`: n equally spaced points on the unit circle with the geodesic
/// metric, i.e. `cycle_graph(n)` scaled by `2*pi/n`.
pub fn circle_sample(n: usize) -> Result<FiniteMetricSpace, MetricError> {
    let c = cycle_graph(n)?;
    let scale = 2.0 * std::f64::consts::PI / n as f64;
    let dist = c
        .matrix()
        .iter()
        .map(|row| row.iter().map(|d| d * scale).collect())
        .collect();
    FiniteMetricSpace::validate(None, dist)
}

/// `E_n`: all off-diagonal distances equal to 1.
pub fn uniform_space(n: usize) -> Result<FiniteMetricSpace, MetricError> {
    if n < 1 {
        return Err(MetricError::TooFewPoints { min: 1, n });
    }
    let dist = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
        .collect();
    FiniteMetricSpace::validate(None, dist)
}

/// Shortest-path metric of a uniformly random tree on `n` nodes (uniform
/// Prufer sequence), unit edge weights. Deterministic for a fixed seed.
pub fn random_tree_metric(n: usize, seed: u64) -> Result<FiniteMetricSpace, MetricError> {
    if n < 1 {
        return Err(MetricError::TooFewPoints { min: 1, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_tree_edges(n, &mut rng);
    tree_metric_from_edges(n, &edges)
}

fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n <= 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &p in &prufer {
        degree[p] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &p in &prufer {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(p), leaf.max(p)));
        degree[leaf] -= 1;
        degree[p] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Shortest-path metric of a weighted tree given by its edge list.
pub fn tree_metric_from_edges(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<FiniteMetricSpace, MetricError> {
    weighted_tree_metric(n, &edges.iter().map(|&(a, b)| (a, b, 1.0)).collect::<Vec<_>>())
}

pub fn weighted_tree_metric(
    n: usize,
    edges: &[(usize, usize, f64)],
) -> Result<FiniteMetricSpace, MetricError> {
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        dist[i][i] = 0.0;
    }
    for &(a, b, w) in edges {
        dist[a][b] = w;
        dist[b][a] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::validate(None, dist)
}

/// Random points in the unit square with the Euclidean metric. Used by the
/// randomized verification batteries; deterministic for a fixed seed.
pub fn random_euclidean(n: usize, seed: u64) -> Result<FiniteMetricSpace, MetricError> {
    if n < 1 {
        return Err(MetricError::TooFewPoints { min: 1, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
        .collect();
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dx = pts[i].0 - pts[j].0;
                    let dy = pts[i].1 - pts[j].1;
                    (dx * dx + dy * dy).sqrt()
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::validate(None, dist)
}

/// True iff the four-point condition holds for all quadruples, i.e. the
/// metric is a tree metric.
pub fn check_four_point(x: &FiniteMetricSpace) -> bool {
    let n = x.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let s1 = x.d(a, c) + x.d(b, e);
                    let s2 = x.d(a, b) + x.d(c, e);
                    let s3 = x.d(c, b) + x.d(a, e);
                    if s1 > s2.max(s3) + TOL_INTERNAL {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Cartesian product with the l-infinity metric
/// `d((x,y),(x',y')) = max(d_X, d_Y)`. Point `(i,j)` gets index `i*|Y|+j`.
pub fn linf_product(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<FiniteMetricSpace, MetricError> {
    let (nx, ny) = (x.n(), y.n());
    let mut labels = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for j in 0..ny {
            labels.push(format!("{}|{}", x.labels()[i], y.labels()[j]));
        }
    }
    let mut dist = vec![vec![0.0; nx * ny]; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nx {
                for l in 0..ny {
                    dist[i * ny + j][k * ny + l] = x.d(i, k).max(y.d(j, l));
                }
            }
        }
    }
    FiniteMetricSpace::validate(Some(labels), dist)
}

/// Wedge sum with the gluing metric: basepoints are identified, and the
/// cross-distance is `d_X(x, x0) + d_Y(y, y0)`. The glued point keeps X's
/// basepoint index; Y's remaining points are appended after X's.
pub fn wedge_sum(
    x: &PointedMetricSpace,
    y: &PointedMetricSpace,
) -> Result<PointedMetricSpace, MetricError> {
    let (nx, ny) = (x.space.n(), y.space.n());
    let y_keep: Vec<usize> = (0..ny).filter(|&j| j != y.basepoint).collect();
    let n = nx + ny - 1;
    let mut labels: Vec<String> = x.space.labels().to_vec();
    labels.extend(y_keep.iter().map(|&j| format!("{}'", y.space.labels()[j])));
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..nx {
        for j in 0..nx {
            dist[i][j] = x.space.d(i, j);
        }
    }
    for (a, &i) in y_keep.iter().enumerate() {
        for (b, &j) in y_keep.iter().enumerate() {
            dist[nx + a][nx + b] = y.space.d(i, j);
        }
        for k in 0..nx {
            let cross = x.space.d(k, x.basepoint) + y.space.d(y.basepoint, i);
            dist[k][nx + a] = cross;
            dist[nx + a][k] = cross;
        }
    }
    PointedMetricSpace::new(FiniteMetricSpace::validate(Some(labels), dist)?, x.basepoint)
}
