//! Exact Gromov-Hausdorff distance on small spaces by branch-and-bound
//! search over map pairs, the pointed variant, and invariant-based lower
//! bounds.
//!
//! The search minimizes `max(dis phi, dis psi, codis(phi, psi))` over all
//! function pairs, which equals twice the GH distance (and twice the
//! generalized GH distance defined through correspondences when the inputs
//! are merely symmetric dissimilarity matrices, e.g. loop spaces whose
//! self-distances are nonzero).

use serde::Serialize;
use thiserror::Error;

use crate::distances::{bottleneck, interleaving_interval_groups, IntervalPersistentGroup};
use crate::homology::{mu0_ultrametric, ph0_diagram, ph1_diagram};
use crate::metric::{FiniteMetricSpace, PointedMetricSpace};
use crate::pi1::{detect_critical_values, persistent_pi1, CriticalVerdict, PersistentPi1};
use crate::presentation::GroupClass;
use crate::{TOL, TOL_INTERNAL};

// prune strictly below the incumbent so the returned minimum is exact up to
// floating-point noise, not up to the API tolerance
const PRUNE_EPS: f64 = TOL_INTERNAL;

#[derive(Debug, Error, PartialEq)]
pub enum GhError {
    #[error("search budget exceeded: needs {required} map pairs, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("empty space")]
    EmptySpace,
}

/// A correspondence between two index sets: every index on each side must
/// appear in some pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn identity(n: usize) -> Self {
        Correspondence { pairs: (0..n).map(|i| (i, i)).collect() }
    }

    fn check(&self, nx: usize, ny: usize) -> Result<(), GhError> {
        let mut cx = vec![false; nx];
        let mut cy = vec![false; ny];
        for &(i, j) in &self.pairs {
            if i >= nx || j >= ny {
                return Err(GhError::InvalidCorrespondence(format!(
                    "pair ({i},{j}) out of range for {nx} x {ny}"
                )));
            }
            cx[i] = true;
            cy[j] = true;
        }
        if let Some(i) = cx.iter().position(|&c| !c) {
            return Err(GhError::InvalidCorrespondence(format!("index {i} of X uncovered")));
        }
        if let Some(j) = cy.iter().position(|&c| !c) {
            return Err(GhError::InvalidCorrespondence(format!("index {j} of Y uncovered")));
        }
        Ok(())
    }
}

/// Distortion of a correspondence: `max |d_X(i,i') - d_Y(j,j')|` over pairs
/// of pairs.
pub fn distortion(
    r: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, GhError> {
    r.check(x.n(), y.n())?;
    Ok(distortion_matrices(&r.pairs, x.matrix(), y.matrix()))
}

fn distortion_matrices(pairs: &[(usize, usize)], dx: &[Vec<f64>], dy: &[Vec<f64>]) -> f64 {
    let mut m: f64 = 0.0;
    for &(i, j) in pairs {
        for &(i2, j2) in pairs {
            m = m.max((dx[i][i2] - dy[j][j2]).abs());
        }
    }
    m
}

fn pair_count(nx: u32, ny: u32) -> u128 {
    let phi = (ny as u128).saturating_pow(nx);
    let psi = (nx as u128).saturating_pow(ny);
    phi.saturating_mul(psi)
}

/// Exact GH distance between finite metric spaces: half the minimum over
/// map pairs of `max(dis phi, dis psi, codis)`. Errors out when the search
/// space `|Y|^|X| * |X|^|Y|` exceeds `limit`.
pub fn gh_exact(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    limit: u128,
) -> Result<f64, GhError> {
    gh_exact_dissimilarity(x.matrix(), y.matrix(), limit)
}

/// As [`gh_exact`] but restricted to map pairs fixing the basepoints.
pub fn gh_pointed_exact(
    x: &PointedMetricSpace,
    y: &PointedMetricSpace,
    limit: u128,
) -> Result<f64, GhError> {
    min_distortion(
        x.space.matrix(),
        y.space.matrix(),
        Some((x.basepoint, y.basepoint)),
        limit,
    )
    .map(|d| d / 2.0)
}

/// Generalized GH distance between symmetric dissimilarity matrices (the
/// tripod formula); self-distances may be nonzero, as for loop spaces under
/// `mu^(1)`.
pub fn gh_exact_dissimilarity(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    limit: u128,
) -> Result<f64, GhError> {
    min_distortion(dx, dy, None, limit).map(|d| d / 2.0)
}

/// Pointed variant on raw matrices.
pub fn gh_pointed_dissimilarity(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    basepoints: (usize, usize),
    limit: u128,
) -> Result<f64, GhError> {
    min_distortion(dx, dy, Some(basepoints), limit).map(|d| d / 2.0)
}

fn min_distortion(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    pinned: Option<(usize, usize)>,
    limit: u128,
) -> Result<f64, GhError> {
    let nx = dx.len();
    let ny = dy.len();
    if nx == 0 || ny == 0 {
        return Err(GhError::EmptySpace);
    }
    let required = pair_count(nx as u32, ny as u32);
    if required > limit {
        return Err(GhError::BudgetExceeded { required, budget: limit });
    }

    // order points so that early assignments constrain the most: farthest
    // point first ordering, basepoint pinned at the front
    let order_x = search_order(dx, pinned.map(|p| p.0));
    let order_y = search_order(dy, pinned.map(|p| p.1));

    // greedy initial bound
    let mut best = greedy_bound(dx, dy, &order_x, &order_y, pinned);

    let mut phi: Vec<usize> = vec![usize::MAX; nx];
    search_phi(dx, dy, &order_x, &order_y, pinned, 0, &mut phi, 0.0, &mut best);
    Ok(best)
}

/// Farthest-point ordering; the pinned index (if any) goes first.
fn search_order(d: &[Vec<f64>], pinned: Option<usize>) -> Vec<usize> {
    let n = d.len();
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let first = pinned.unwrap_or(0);
    order.push(first);
    used[first] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !used[v])
            .max_by(|&a, &b| {
                let da: f64 = order.iter().map(|&o| d[o][a]).fold(f64::INFINITY, f64::min);
                let db: f64 = order.iter().map(|&o| d[o][b]).fold(f64::INFINITY, f64::min);
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        order.push(next);
        used[next] = true;
    }
    order
}

fn greedy_bound(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    order_x: &[usize],
    order_y: &[usize],
    pinned: Option<(usize, usize)>,
) -> f64 {
    let nx = dx.len();
    let ny = dy.len();
    let mut phi = vec![usize::MAX; nx];
    for &i in order_x {
        let mut best_j = 0;
        let mut best_cost = f64::INFINITY;
        for j in 0..ny {
            if let Some((px, py)) = pinned {
                if i == px && j != py {
                    continue;
                }
            }
            let cost = order_x
                .iter()
                .filter(|&&i2| phi[i2] != usize::MAX)
                .map(|&i2| (dx[i][i2] - dy[j][phi[i2]]).abs())
                .fold((dx[i][i] - dy[j][j]).abs(), f64::max);
            if cost < best_cost {
                best_cost = cost;
                best_j = j;
            }
        }
        phi[i] = best_j;
    }
    let mut psi = vec![usize::MAX; ny];
    for &j in order_y {
        let mut best_i = 0;
        let mut best_cost = f64::INFINITY;
        for i in 0..nx {
            if let Some((px, py)) = pinned {
                if j == py && i != px {
                    continue;
                }
            }
            let mut cost = (dy[j][j] - dx[i][i]).abs();
            for &j2 in order_y.iter().filter(|&&j2| psi[j2] != usize::MAX) {
                cost = cost.max((dy[j][j2] - dx[i][psi[j2]]).abs());
            }
            for (i2, &fj) in phi.iter().enumerate() {
                cost = cost.max((dx[i2][i] - dy[fj][j]).abs());
            }
            if cost < best_cost {
                best_cost = cost;
                best_i = i;
            }
        }
        psi[j] = best_i;
    }
    full_cost(dx, dy, &phi, &psi)
}

fn full_cost(dx: &[Vec<f64>], dy: &[Vec<f64>], phi: &[usize], psi: &[usize]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..dx.len() {
        for i2 in 0..dx.len() {
            m = m.max((dx[i][i2] - dy[phi[i]][phi[i2]]).abs());
        }
    }
    for j in 0..dy.len() {
        for j2 in 0..dy.len() {
            m = m.max((dy[j][j2] - dx[psi[j]][psi[j2]]).abs());
        }
    }
    for i in 0..dx.len() {
        for j in 0..dy.len() {
            m = m.max((dx[i][psi[j]] - dy[phi[i]][j]).abs());
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn search_phi(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    order_x: &[usize],
    order_y: &[usize],
    pinned: Option<(usize, usize)>,
    depth: usize,
    phi: &mut Vec<usize>,
    partial: f64,
    best: &mut f64,
) {
    if partial >= *best - PRUNE_EPS {
        return;
    }
    if depth == order_x.len() {
        search_psi(dx, dy, order_y, pinned, phi, 0, &mut vec![usize::MAX; dy.len()], partial, best);
        return;
    }
    let i = order_x[depth];
    for j in 0..dy.len() {
        if let Some((px, py)) = pinned {
            if i == px && j != py {
                continue;
            }
        }
        let mut cost = partial.max((dx[i][i] - dy[j][j]).abs());
        for &i2 in &order_x[..depth] {
            cost = cost.max((dx[i][i2] - dy[j][phi[i2]]).abs());
            if cost >= *best - PRUNE_EPS {
                break;
            }
        }
        if cost < *best - PRUNE_EPS {
            phi[i] = j;
            search_phi(dx, dy, order_x, order_y, pinned, depth + 1, phi, cost, best);
            phi[i] = usize::MAX;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search_psi(
    dx: &[Vec<f64>],
    dy: &[Vec<f64>],
    order_y: &[usize],
    pinned: Option<(usize, usize)>,
    phi: &[usize],
    depth: usize,
    psi: &mut Vec<usize>,
    partial: f64,
    best: &mut f64,
) {
    if partial >= *best - PRUNE_EPS {
        return;
    }
    if depth == order_y.len() {
        *best = partial;
        return;
    }
    let j = order_y[depth];
    for i in 0..dx.len() {
        if let Some((px, py)) = pinned {
            if j == py && i != px {
                continue;
            }
        }
        let mut cost = partial.max((dy[j][j] - dx[i][i]).abs());
        for &j2 in &order_y[..depth] {
            cost = cost.max((dy[j][j2] - dx[i][psi[j2]]).abs());
            if cost >= *best - PRUNE_EPS {
                break;
            }
        }
        // codis against the fully assigned phi
        if cost < *best - PRUNE_EPS {
            for (i2, &fj) in phi.iter().enumerate() {
                cost = cost.max((dx[i2][i] - dy[fj][j]).abs());
                if cost >= *best - PRUNE_EPS {
                    break;
                }
            }
        }
        if cost < *best - PRUNE_EPS {
            psi[j] = i;
            search_psi(dx, dy, order_y, pinned, phi, depth + 1, psi, cost, best);
            psi[j] = usize::MAX;
        }
    }
}

/// Certified lower bounds for the GH distance, each from a stability
/// inequality, together with the exact value when the search fits the budget.
#[derive(Debug, Clone, Serialize)]
pub struct GhBoundsReport {
    /// `|diam X - diam Y| / 2`.
    pub diam_bound: f64,
    /// `(diam X - rad Y) / 2` when every point of the larger-diameter space
    /// has an antipode, else 0.
    pub radius_bound: f64,
    /// GH distance of the single-linkage ultrametric spaces.
    pub mu0_bound: f64,
    /// Half the bottleneck distance of the degree-0 diagrams.
    pub bottleneck0_bound: f64,
    /// Half the bottleneck distance of the degree-1 diagrams.
    pub bottleneck1_bound: f64,
    /// Half the interleaving distance of the persistent fundamental groups,
    /// minimized over basepoint pairs; 0 when either group is not certified
    /// interval-shaped.
    pub pi1_interleaving_bound: f64,
    pub exact: Option<f64>,
    pub notes: Vec<String>,
}

impl GhBoundsReport {
    pub fn best_bound(&self) -> f64 {
        self.diam_bound
            .max(self.radius_bound)
            .max(self.mu0_bound)
            .max(self.bottleneck0_bound)
            .max(self.bottleneck1_bound)
            .max(self.pi1_interleaving_bound)
    }
}

/// Extracts the interval form of a persistent fundamental group when it is
/// certified: trivial scales, then a constant classified group with
/// certified-bijective structure maps, then trivial again.
pub fn pi1_interval_group(pp: &PersistentPi1) -> Option<IntervalPersistentGroup> {
    let verdicts = detect_critical_values(pp);
    let classes: Vec<GroupClass> = pp.levels.iter().map(|l| l.class.normalized()).collect();
    if classes.iter().any(|c| !c.is_classified()) {
        return None;
    }
    if verdicts.iter().any(|(_, v)| *v == CriticalVerdict::Undetermined) {
        return None;
    }
    let nontrivial: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != GroupClass::Trivial)
        .map(|(i, _)| i)
        .collect();
    if nontrivial.is_empty() {
        return Some(IntervalPersistentGroup::trivial());
    }
    let first = nontrivial[0];
    let last = *nontrivial.last().unwrap();
    if nontrivial.len() != last - first + 1 {
        return None; // the group vanishes and comes back: not an interval
    }
    let g = classes[first].clone();
    if classes[first..=last].iter().any(|c| *c != g) {
        return None;
    }
    // inside the bar every consecutive map must be a certified bijection
    for i in (first + 1)..=last {
        if verdicts[i].1 != CriticalVerdict::NonCritical {
            return None;
        }
    }
    let left = pp.scales[first];
    let right = if last + 1 < pp.scales.len() {
        pp.scales[last + 1]
    } else {
        // cannot happen for metric inputs: the final scale is trivial
        return None;
    };
    Some(IntervalPersistentGroup::new(g, left, right))
}

/// Computes every lower bound, and the exact distance when affordable.
pub fn gh_lower_bounds(x: &FiniteMetricSpace, y: &FiniteMetricSpace, budget: u128) -> GhBoundsReport {
    gh_lower_bounds_opts(x, y, budget, true)
}

/// As [`gh_lower_bounds`]; `with_exact = false` skips the exact search.
pub fn gh_lower_bounds_opts(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    budget: u128,
    with_exact: bool,
) -> GhBoundsReport {
    let mut notes = Vec::new();
    let diam_bound = (x.diam() - y.diam()).abs() / 2.0;

    let (big, small) = if x.diam() >= y.diam() { (x, y) } else { (y, x) };
    let radius_bound = if big.every_point_has_antipode() && small.rad() <= big.diam() + TOL {
        ((big.diam() - small.rad()) / 2.0).max(0.0)
    } else {
        0.0
    };

    let mu0x = mu0_ultrametric(x);
    let mu0y = mu0_ultrametric(y);
    let mu0_bound = match gh_exact_dissimilarity(&mu0x, &mu0y, budget) {
        Ok(v) => v,
        Err(e) => {
            notes.push(format!("mu0 bound unavailable: {e}"));
            0.0
        }
    };

    let bottleneck0_bound = bottleneck(&ph0_diagram(x), &ph0_diagram(y)) / 2.0;
    let bottleneck1_bound = bottleneck(&ph1_diagram(x), &ph1_diagram(y)) / 2.0;

    // half d_I of interval persistent groups, minimized over basepoint pairs
    let mut pi1_interleaving_bound = f64::INFINITY;
    let mut pi1_ok = true;
    let gx: Vec<Option<IntervalPersistentGroup>> = (0..x.n())
        .map(|b| pi1_interval_group(&persistent_pi1(&PointedMetricSpace::new(x.clone(), b).unwrap())))
        .collect();
    let gy: Vec<Option<IntervalPersistentGroup>> = (0..y.n())
        .map(|b| pi1_interval_group(&persistent_pi1(&PointedMetricSpace::new(y.clone(), b).unwrap())))
        .collect();
    'outer: for a in &gx {
        for b in &gy {
            match (a, b) {
                (Some(a), Some(b)) => match interleaving_interval_groups(a, b) {
                    Ok(v) => pi1_interleaving_bound = pi1_interleaving_bound.min(v / 2.0),
                    Err(_) => {
                        pi1_ok = false;
                        break 'outer;
                    }
                },
                _ => {
                    pi1_ok = false;
                    break 'outer;
                }
            }
        }
    }
    if !pi1_ok || !pi1_interleaving_bound.is_finite() {
        notes.push("pi1 bound unavailable: persistent group not certified interval-shaped".into());
        pi1_interleaving_bound = 0.0;
    }

    let exact = if with_exact {
        match gh_exact(x, y, budget) {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("exact value unavailable: {e}"));
                None
            }
        }
    } else {
        None
    };

    GhBoundsReport {
        diam_bound,
        radius_bound,
        mu0_bound,
        bottleneck0_bound,
        bottleneck1_bound,
        pi1_interleaving_bound,
        exact,
        notes,
    }
}

pub const DEFAULT_BUDGET: u128 = 1_000_000_000_000;

/// Reads the search budget from `PERSTOPY_BUDGET` when set.
pub fn budget_from_env() -> u128 {
    std::env::var("PERSTOPY_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{circle_sample, cycle_graph, random_euclidean, star_graph, uniform_space};
    use std::f64::consts::PI;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    const B: u128 = DEFAULT_BUDGET;

    #[test]
    fn distortion_examples() {
        let c4 = cycle_graph(4).unwrap();
        let id = Correspondence::identity(4);
        assert!(close(distortion(&id, &c4, &c4).unwrap(), 0.0));

        // anything against the one-point space distorts by the diameter
        let one = uniform_space(1).unwrap();
        let all = Correspondence { pairs: (0..4).map(|i| (i, 0)).collect() };
        assert!(close(distortion(&all, &c4, &one).unwrap(), c4.diam()));

        // explicit correspondence between C_7 and S_5 with distortion 2;
        // the index range must reach k inclusive to cover both sides
        let c7 = cycle_graph(7).unwrap();
        let s5 = star_graph(5).unwrap().space;
        let (m, k, n) = (7usize, 3usize, 5usize);
        let mut pairs = vec![(0usize, 0usize)];
        for i in 0..=k {
            pairs.push((k - i, (2 * i + 1) % n));
            pairs.push(((m - i) % m, (2 * i) % n));
        }
        let r = Correspondence { pairs };
        assert!(close(distortion(&r, &c7, &s5).unwrap(), 2.0));

        // invalid correspondence
        let bad = Correspondence { pairs: vec![(0, 0)] };
        assert!(distortion(&bad, &c4, &c4).is_err());
    }

    #[test]
    fn gh_against_one_point_is_half_diameter() {
        let one = uniform_space(1).unwrap();
        let c4 = cycle_graph(4).unwrap();
        assert!(close(gh_exact(&c4, &one, B).unwrap(), 1.0));
        let s5 = star_graph(5).unwrap().space;
        assert!(close(gh_exact(&s5, &one, B).unwrap(), 1.0));
    }

    #[test]
    fn gh_delta3_delta4() {
        let d3 = circle_sample(3).unwrap();
        let d4 = circle_sample(4).unwrap();
        assert!(close(gh_exact(&d3, &d4, B).unwrap(), PI / 4.0));
    }

    #[test]
    fn gh_c3_s4() {
        let c3 = cycle_graph(3).unwrap();
        let s4 = star_graph(4).unwrap().space;
        assert!(close(gh_exact(&c3, &s4, B).unwrap(), 0.5));
    }

    #[test]
    fn gh_pointed_examples() {
        let c3 = PointedMetricSpace::new(cycle_graph(3).unwrap(), 0).unwrap();
        assert!(close(gh_pointed_exact(&c3, &c3, B).unwrap(), 0.0));
        let s4 = star_graph(4).unwrap();
        assert!(close(gh_pointed_exact(&c3, &s4, B).unwrap(), 0.5));
    }

    #[test]
    fn gh_pointed_dominates_unpointed() {
        for seed in 0..8 {
            let x = random_euclidean(4, seed).unwrap();
            let y = random_euclidean(4, seed + 100).unwrap();
            let plain = gh_exact(&x, &y, B).unwrap();
            let pointed = gh_pointed_exact(
                &PointedMetricSpace::new(x.clone(), 0).unwrap(),
                &PointedMetricSpace::new(y.clone(), 0).unwrap(),
                B,
            )
            .unwrap();
            assert!(pointed >= plain - TOL);
        }
    }

    #[test]
    fn gh_is_symmetric_and_zero_on_isometric() {
        for seed in 0..5 {
            let x = random_euclidean(4, seed).unwrap();
            let y = random_euclidean(4, seed + 50).unwrap();
            let ab = gh_exact(&x, &y, B).unwrap();
            let ba = gh_exact(&y, &x, B).unwrap();
            assert!(close(ab, ba));
            assert!(ab >= 0.0);
            assert!(close(gh_exact(&x, &x, B).unwrap(), 0.0));
        }
    }

    #[test]
    fn optimal_distortion_is_twice_gh() {
        // reconstruct: brute-force all correspondences on tiny spaces agrees
        let x = uniform_space(2).unwrap();
        let y = cycle_graph(3).unwrap();
        let gh = gh_exact(&x, &y, B).unwrap();
        // enumerate all correspondences (subsets of X x Y covering both)
        let mut best = f64::INFINITY;
        let cells: Vec<(usize, usize)> =
            (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        for mask in 1u32..(1 << cells.len()) {
            let pairs: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &c)| c)
                .collect();
            let r = Correspondence { pairs };
            if r.check(2, 3).is_ok() {
                best = best.min(distortion(&r, &x, &y).unwrap());
            }
        }
        assert!(close(best, 2.0 * gh));
    }

    #[test]
    fn budget_is_enforced() {
        let x = uniform_space(9).unwrap();
        let err = gh_exact(&x, &x, 10).unwrap_err();
        assert!(matches!(err, GhError::BudgetExceeded { .. }));
    }

    #[test]
    fn bounds_report_examples() {
        // C_8 vs S_5: radius bound (diam 4 - rad 1)/2 = 3/2
        let c8 = cycle_graph(8).unwrap();
        let s5 = star_graph(5).unwrap().space;
        let rep = gh_lower_bounds(&c8, &s5, B);
        assert!(close(rep.radius_bound, 1.5));

        // identical spaces: all bounds 0
        let c5 = cycle_graph(5).unwrap();
        let rep = gh_lower_bounds(&c5, &c5, B);
        assert!(close(rep.best_bound(), 0.0));
        assert!(close(rep.exact.unwrap(), 0.0));

        // Delta_3 vs Delta_4: bottleneck1 bound = pi/8
        let d3 = circle_sample(3).unwrap();
        let d4 = circle_sample(4).unwrap();
        let rep = gh_lower_bounds(&d3, &d4, B);
        assert!(close(rep.bottleneck1_bound, PI / 8.0));
        // and every bound is below the exact value
        let exact = rep.exact.unwrap();
        assert!(rep.best_bound() <= exact + TOL);
    }

    #[test]
    fn bounds_below_exact_on_random_pairs() {
        for seed in 0..6 {
            let x = random_euclidean(4, seed).unwrap();
            let y = random_euclidean(5, seed + 30).unwrap();
            let rep = gh_lower_bounds(&x, &y, B);
            let exact = rep.exact.unwrap();
            assert!(
                rep.best_bound() <= exact + TOL,
                "seed {seed}: bound {} > exact {exact}",
                rep.best_bound()
            );
        }
    }

    #[test]
    fn pi1_interval_extraction() {
        let c7 = PointedMetricSpace::new(cycle_graph(7).unwrap(), 0).unwrap();
        let ig = pi1_interval_group(&persistent_pi1(&c7)).unwrap();
        assert_eq!(ig.group, GroupClass::Free { rank: 1 });
        assert!(close(ig.left, 1.0));
        assert!(close(ig.right, 3.0));

        let s4 = star_graph(4).unwrap();
        let ig = pi1_interval_group(&persistent_pi1(&s4)).unwrap();
        assert_eq!(ig.group.normalized(), GroupClass::Trivial);
    }
}
