//! Bottleneck distance between persistence diagrams, interleaving distance
//! between interval persistent groups over the catalog {trivial, free, free
//! abelian}, and dendrograms with their linearized persistence modules.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::PersistenceDiagram;
use crate::presentation::GroupClass;
use crate::TOL;

#[derive(Debug, Error, PartialEq)]
pub enum DistanceError {
    #[error("group class outside the catalog {{Trivial, Free, FreeAbelian}}")]
    GroupOutsideCatalog,
    #[error("matrix is not an ultrametric: entry ({i},{j}) violates the strong triangle inequality via {k}")]
    NotUltrametric { i: usize, j: usize, k: usize },
    #[error("matrix is not a metric: {0}")]
    NotMetric(String),
}

/// Exact bottleneck distance between two diagrams. Points with infinite
/// death must match each other (otherwise the distance is infinite); finite
/// points may match the diagonal.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let (fin1, inf1): (Vec<(f64, f64)>, Vec<(f64, f64)>) =
        d1.points.iter().partition(|p| p.1.is_finite());
    let (fin2, inf2): (Vec<(f64, f64)>, Vec<(f64, f64)>) =
        d2.points.iter().partition(|p| p.1.is_finite());
    if inf1.len() != inf2.len() {
        return f64::INFINITY;
    }
    // essential classes: sorted pairing is optimal for the sup norm on a line
    let mut b1: Vec<f64> = inf1.iter().map(|p| p.0).collect();
    let mut b2: Vec<f64> = inf2.iter().map(|p| p.0).collect();
    b1.sort_by(|a, b| a.partial_cmp(b).unwrap());
    b2.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let inf_cost = b1
        .iter()
        .zip(&b2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    inf_cost.max(bottleneck_finite(&fin1, &fin2))
}

fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

fn diag_cost(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

fn bottleneck_finite(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
    if p1.is_empty() && p2.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = vec![0.0];
    for &p in p1 {
        candidates.push(diag_cost(p));
        for &q in p2 {
            candidates.push(linf(p, q));
        }
    }
    for &q in p2 {
        candidates.push(diag_cost(q));
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    // binary search the smallest feasible candidate
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    debug_assert!(matching_feasible(p1, p2, candidates[hi]));
    if matching_feasible(p1, p2, candidates[0]) {
        return candidates[0];
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if matching_feasible(p1, p2, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    candidates[hi]
}

/// Is there a perfect matching moving no point by more than `delta`?
/// Standard formulation: each diagram is padded with one diagonal copy per
/// point of the other side; diagonal copies match each other freely.
fn matching_feasible(p1: &[(f64, f64)], p2: &[(f64, f64)], delta: f64) -> bool {
    let delta = delta + 1e-12;
    let n1 = p1.len();
    let n2 = p2.len();
    let left = n1 + n2; // p1 points then diagonal copies of p2's points
    let right = n2 + n1; // p2 points then diagonal copies of p1's points
    let adj: Vec<Vec<usize>> = (0..left)
        .map(|l| {
            let mut out = Vec::new();
            for r in 0..right {
                let ok = match (l < n1, r < n2) {
                    (true, true) => linf(p1[l], p2[r]) <= delta,
                    (true, false) => r - n2 == l && diag_cost(p1[l]) <= delta,
                    (false, true) => l - n1 == r && diag_cost(p2[l - n1]) <= delta,
                    (false, false) => true,
                };
                if ok {
                    out.push(r);
                }
            }
            out
        })
        .collect();
    max_bipartite_matching(&adj, right) == left
}

fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    let mut size = 0;
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(l, adj, &mut match_right, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_right: &mut Vec<Option<usize>>,
    seen: &mut Vec<bool>,
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r].is_none() || augment(match_right[r].unwrap(), adj, match_right, seen) {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// An interval persistent group `G[a, b)`: the group `G` on the interval,
/// trivial outside, identity structure maps inside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalPersistentGroup {
    pub group: GroupClass,
    pub left: f64,
    pub right: f64,
    pub closed_left: bool,
    pub open_right: bool,
}

impl IntervalPersistentGroup {
    pub fn new(group: GroupClass, left: f64, right: f64) -> Self {
        IntervalPersistentGroup { group, left, right, closed_left: true, open_right: true }
    }

    pub fn trivial() -> Self {
        Self::new(GroupClass::Trivial, 0.0, 0.0)
    }

    /// Trivial groups and empty intervals normalize to the empty module.
    fn canonical(&self) -> (GroupClass, f64, f64) {
        let g = self.group.normalized();
        if g == GroupClass::Trivial || self.right <= self.left + TOL {
            (GroupClass::Trivial, 0.0, 0.0)
        } else {
            (g, self.left, self.right)
        }
    }

    pub fn length(&self) -> f64 {
        let (_, a, b) = self.canonical();
        b - a
    }
}

/// JSON form used by the CLI:
/// `{"group":{"tag":"Free","rank":2},"interval":[a,b],"open_right":true}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalGroupJson {
    pub group: GroupTagJson,
    pub interval: [f64; 2],
    #[serde(default = "default_true")]
    pub open_right: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTagJson {
    pub tag: String,
    #[serde(default)]
    pub rank: usize,
}

impl IntervalGroupJson {
    pub fn to_interval_group(&self) -> Result<IntervalPersistentGroup, DistanceError> {
        let group = match self.group.tag.as_str() {
            "Trivial" => GroupClass::Trivial,
            "Free" => GroupClass::Free { rank: self.group.rank },
            "FreeAbelian" => GroupClass::FreeAbelian { rank: self.group.rank },
            _ => return Err(DistanceError::GroupOutsideCatalog),
        };
        Ok(IntervalPersistentGroup::new(group, self.interval[0], self.interval[1]))
    }
}

/// Does `g` retract through `h`, i.e. is some composite `g -> h -> g` the
/// identity? Hard-coded for the catalog.
pub fn retracts_through(g: &GroupClass, h: &GroupClass) -> Result<bool, DistanceError> {
    use GroupClass::*;
    let g = g.normalized();
    let h = h.normalized();
    if matches!(g, Unclassified { .. }) || matches!(h, Unclassified { .. }) {
        return Err(DistanceError::GroupOutsideCatalog);
    }
    Ok(match (&g, &h) {
        (Trivial, _) => true,
        (Free { rank: rg }, Free { rank: rh }) => rg <= rh,
        (FreeAbelian { rank: rg }, FreeAbelian { rank: rh }) => rg <= rh,
        // Z includes into Z^m and splits off; higher-rank free groups have no
        // faithful route through an abelian group, and free abelian groups of
        // rank >= 2 have none through a free group (abelian subgroups of free
        // groups are cyclic)
        (Free { rank: 1 }, FreeAbelian { rank: rh }) => *rh >= 1,
        _ => false,
    })
}

/// Exact interleaving distance between two interval persistent groups over
/// the catalog, by case analysis on the retract table:
/// mutually retracting (isomorphic) groups reduce to the interval-module
/// formula; a one-way retract leaves the non-retracting side to die out; no
/// retract forces both to die out.
pub fn interleaving_interval_groups(
    p: &IntervalPersistentGroup,
    q: &IntervalPersistentGroup,
) -> Result<f64, DistanceError> {
    let (g, a, b) = p.canonical();
    let (h, c, d) = q.canonical();
    let g_through_h = retracts_through(&g, &h)?;
    let h_through_g = retracts_through(&h, &g)?;
    let half_g = (b - a) / 2.0;
    let half_h = (d - c) / 2.0;
    Ok(if g == h {
        let shift = (a - c).abs().max((b - d).abs());
        shift.min(half_g.max(half_h))
    } else if g_through_h && !h_through_g {
        half_h.max(half_g.min((c - a).max(b - d).max(0.0)))
    } else if h_through_g && !g_through_h {
        half_g.max(half_h.min((a - c).max(d - b).max(0.0)))
    } else {
        half_g.max(half_h)
    })
}

/// A dendrogram over `{0, .., n-1}`: partitions at each scale, refining as
/// the scale grows, singletons at 0, a single block at the end.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dendrogram {
    pub scales: Vec<f64>,
    pub partitions: Vec<Vec<Vec<usize>>>,
}

/// Builds the dendrogram of an ultrametric: blocks at scale `t` are the
/// equivalence classes of `u <= t`.
pub fn dendrogram_from_ultrametric(u: &[Vec<f64>]) -> Result<Dendrogram, DistanceError> {
    let n = u.len();
    for (i, row) in u.iter().enumerate() {
        if row.len() != n {
            return Err(DistanceError::NotMetric("matrix not square".into()));
        }
        if u[i][i].abs() > TOL {
            return Err(DistanceError::NotMetric(format!("nonzero diagonal at {i}")));
        }
        for j in 0..n {
            if (u[i][j] - u[j][i]).abs() > TOL {
                return Err(DistanceError::NotMetric(format!("asymmetric at ({i},{j})")));
            }
            if i != j && u[i][j] <= TOL {
                return Err(DistanceError::NotMetric(format!("zero off-diagonal at ({i},{j})")));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if u[i][j] > u[i][k].max(u[k][j]) + TOL {
                    return Err(DistanceError::NotUltrametric { i, j, k });
                }
            }
        }
    }
    let mut scales = vec![0.0];
    let mut vals: Vec<f64> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            vals.push(u[i][j]);
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for v in vals {
        if scales.last().map_or(true, |l| v > l + TOL) {
            scales.push(v);
        }
    }
    let mut partitions = Vec::with_capacity(scales.len());
    for &t in &scales {
        let mut part: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; n];
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let block: Vec<usize> = (0..n).filter(|&j| u[i][j] <= t + TOL).collect();
            for &j in &block {
                assigned[j] = true;
            }
            part.push(block);
        }
        part.sort_by_key(|b| b[0]);
        partitions.push(part);
    }
    Ok(Dendrogram { scales, partitions })
}

impl Dendrogram {
    /// The induced ultrametric: least scale at which two points share a block.
    pub fn induced_ultrametric(&self) -> Vec<Vec<f64>> {
        let n: usize = self.partitions[0].iter().map(|b| b.len()).sum();
        let mut u = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                for (si, part) in self.partitions.iter().enumerate() {
                    if part.iter().any(|b| b.contains(&i) && b.contains(&j)) {
                        u[i][j] = self.scales[si];
                        u[j][i] = self.scales[si];
                        break;
                    }
                }
            }
        }
        u
    }

    /// Barcode of the linearized persistence module: one infinite bar for
    /// the final block, one `(0, merge scale)` bar per lost block.
    pub fn barcode(&self) -> PersistenceDiagram {
        let mut points = Vec::new();
        for i in 1..self.partitions.len() {
            let lost = self.partitions[i - 1].len() - self.partitions[i].len();
            for _ in 0..lost {
                points.push((0.0, self.scales[i]));
            }
        }
        points.push((0.0, f64::INFINITY));
        PersistenceDiagram::new(points)
    }
}

/// Interleaving distance of the two linearized dendrogram modules, computed
/// as the bottleneck distance of their barcodes.
pub fn dendrogram_module_interleaving(a: &Dendrogram, b: &Dendrogram) -> f64 {
    bottleneck(&a.barcode(), &b.barcode())
}
