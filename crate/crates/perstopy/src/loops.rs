//! Discrete loops: epsilon-chains based at a point, basic moves, brute-force
//! and word-problem homotopy oracles, birth/death, the loop-space
//! pseudo-ultrametric `mu^(1)`, enumeration of the loop classes `L(X, x0)`,
//! and generalized subdendrograms.
//!
//! Two loops are identified (`~`) when they have the same birth time and are
//! homotopic at that shared birth scale. Note that `mu^(1)` has nonzero
//! self-distances: `mu1(g, g) = birth(g)`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, PointedMetricSpace};
use crate::pi1::{persistent_pi1, PersistentPi1};
use crate::presentation::WordVerdict;
use crate::TOL;

#[derive(Debug, Error, PartialEq)]
pub enum LoopError {
    #[error("a loop must contain at least its basepoint")]
    Empty,
    #[error("loop endpoints differ: starts at {start}, ends at {end}")]
    OpenChain { start: usize, end: usize },
    #[error("point index {index} out of range for {n} points")]
    PointOutOfRange { index: usize, n: usize },
    #[error("loop is based at {got}, expected basepoint {expected}")]
    WrongBasepoint { got: usize, expected: usize },
    #[error("not an eps-loop at scale {scale}: step ({a},{b}) has length {len}")]
    NotAnEpsLoop { scale: f64, a: usize, b: usize, len: f64 },
}

/// A based discrete loop: a finite point sequence with equal first and last
/// entries. `size` is the number of steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiscreteLoop {
    points: Vec<usize>,
}

impl DiscreteLoop {
    pub fn new(points: Vec<usize>, x: &FiniteMetricSpace) -> Result<Self, LoopError> {
        if points.is_empty() {
            return Err(LoopError::Empty);
        }
        if let Some(&bad) = points.iter().find(|&&p| p >= x.n()) {
            return Err(LoopError::PointOutOfRange { index: bad, n: x.n() });
        }
        let (start, end) = (points[0], *points.last().unwrap());
        if start != end {
            return Err(LoopError::OpenChain { start, end });
        }
        Ok(DiscreteLoop { points })
    }

    pub fn constant(basepoint: usize) -> Self {
        DiscreteLoop { points: vec![basepoint] }
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn basepoint(&self) -> usize {
        self.points[0]
    }

    pub fn size(&self) -> usize {
        self.points.len() - 1
    }

    pub fn reversal(&self) -> Self {
        DiscreteLoop { points: self.points.iter().rev().copied().collect() }
    }

    /// Concatenation `self * other` (same basepoint required).
    pub fn concat(&self, other: &DiscreteLoop) -> Self {
        debug_assert_eq!(self.basepoint(), other.basepoint());
        let mut pts = self.points.clone();
        pts.extend_from_slice(&other.points[1..]);
        DiscreteLoop { points: pts }
    }

    pub fn repeat(&self, k: usize) -> Self {
        let mut out = DiscreteLoop::constant(self.basepoint());
        for _ in 0..k {
            out = out.concat(self);
        }
        out
    }
}

/// Maximum step length; 0 for the constant loop.
pub fn birth(l: &DiscreteLoop, x: &FiniteMetricSpace) -> f64 {
    l.points
        .windows(2)
        .map(|w| x.d(w[0], w[1]))
        .fold(0.0, f64::max)
}

pub fn is_eps_loop(l: &DiscreteLoop, x: &FiniteMetricSpace, eps: f64) -> bool {
    birth(l, x) <= eps + TOL
}

fn require_eps_loop(l: &DiscreteLoop, x: &FiniteMetricSpace, eps: f64) -> Result<(), LoopError> {
    for w in l.points.windows(2) {
        let len = x.d(w[0], w[1]);
        if len > eps + TOL {
            return Err(LoopError::NotAnEpsLoop { scale: eps, a: w[0], b: w[1], len });
        }
    }
    Ok(())
}

/// All loops reachable from `l` by one basic move at scale `eps`: removal of
/// an interior point when the bridged gap stays within `eps`, or insertion of
/// a point between adjacent entries keeping both new steps within `eps`.
/// Endpoints are never touched.
pub fn basic_moves(
    l: &DiscreteLoop,
    eps: f64,
    x: &FiniteMetricSpace,
) -> Result<Vec<DiscreteLoop>, LoopError> {
    require_eps_loop(l, x, eps)?;
    let mut out = Vec::new();
    let pts = &l.points;
    for i in 1..pts.len().saturating_sub(1) {
        if x.d(pts[i - 1], pts[i + 1]) <= eps + TOL {
            let mut np = pts.clone();
            np.remove(i);
            out.push(DiscreteLoop { points: np });
        }
    }
    if pts.len() == 1 {
        // the constant loop inflates to x0 p x0 for every p within eps
        let b = pts[0];
        for p in 0..x.n() {
            if x.d(b, p) <= eps + TOL {
                out.push(DiscreteLoop { points: vec![b, p, b] });
            }
        }
    } else {
        for i in 0..pts.len() - 1 {
            for p in 0..x.n() {
                if x.d(pts[i], p) <= eps + TOL && x.d(p, pts[i + 1]) <= eps + TOL {
                    let mut np = pts.clone();
                    np.insert(i + 1, p);
                    out.push(DiscreteLoop { points: np });
                }
            }
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out.dedup();
    Ok(out)
}

/// Three-valued homotopy verdict. `No` is certified only within the size cap
/// given to the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HomotopyVerdict {
    Yes,
    No,
    Unknown,
}

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Default size cap for the brute-force homotopy search.
pub fn default_homotopy_cap(a: &DiscreteLoop, b: &DiscreteLoop, x: &FiniteMetricSpace) -> usize {
    a.size().max(b.size()) + x.n()
}

/// The size-0 loop and the trivial edge loop `b b` are the same class; the
/// search works on the latter so that contractions terminate there.
fn normalize_points(points: &[usize]) -> Vec<usize> {
    if points.len() == 1 {
        vec![points[0], points[0]]
    } else {
        points.to_vec()
    }
}

/// Breadth-first search over the graph of eps-loops of size `<= max_size`
/// under basic moves. `Yes` when `b` is reached, `No` when the component of
/// `a` is exhausted within the cap, `Unknown` when `max_states` is hit.
pub fn homotopic_bruteforce(
    a: &DiscreteLoop,
    b: &DiscreteLoop,
    eps: f64,
    x: &FiniteMetricSpace,
    max_size: usize,
    max_states: usize,
) -> Result<HomotopyVerdict, LoopError> {
    require_eps_loop(a, x, eps)?;
    require_eps_loop(b, x, eps)?;
    if a.basepoint() != b.basepoint() {
        return Err(LoopError::WrongBasepoint { got: b.basepoint(), expected: a.basepoint() });
    }
    let start = DiscreteLoop { points: normalize_points(&a.points) };
    let target = normalize_points(&b.points);
    if start.points == target {
        return Ok(HomotopyVerdict::Yes);
    }
    if start.size() > max_size || target.len() - 1 > max_size {
        return Ok(HomotopyVerdict::Unknown);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<DiscreteLoop> = VecDeque::new();
    seen.insert(start.points.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for next in basic_moves(&cur, eps, x)? {
            if next.size() > max_size || seen.contains(&next.points) {
                continue;
            }
            if next.points == target {
                return Ok(HomotopyVerdict::Yes);
            }
            if seen.len() >= max_states {
                return Ok(HomotopyVerdict::Unknown);
            }
            seen.insert(next.points.clone());
            queue.push_back(next);
        }
    }
    Ok(HomotopyVerdict::No)
}

/// Batch form of [`homotopic_bruteforce`]: labels the connected components
/// of the whole graph of based eps-loops of size `<= max_size` under basic
/// moves. `None` when the state budget is exceeded. Two loops are homotopic
/// within the cap iff they carry the same label.
pub fn homotopy_components(
    x: &FiniteMetricSpace,
    basepoint: usize,
    eps: f64,
    max_size: usize,
    max_states: usize,
) -> Option<HashMap<Vec<usize>, u32>> {
    // enumerate every eps-loop of size <= max_size (lazy steps included)
    let n = x.n();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| x.d(v, u) <= eps + TOL).collect())
        .collect();
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![basepoint]];
    while let Some(seq) = stack.pop() {
        // the bare basepoint normalizes to the trivial edge loop, which the
        // enumeration reaches as a lazy step
        if *seq.last().unwrap() == basepoint && seq.len() >= 2 {
            all.push(seq.clone());
        }
        if seq.len() <= max_size {
            for &u in &neighbors[*seq.last().unwrap()] {
                let mut next = seq.clone();
                next.push(u);
                stack.push(next);
            }
        }
        if all.len() > max_states {
            return None;
        }
    }
    all.sort();
    all.dedup();
    let mut label: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut next_label = 0u32;
    for seed in &all {
        if label.contains_key(seed) {
            continue;
        }
        let id = next_label;
        next_label += 1;
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        label.insert(seed.clone(), id);
        queue.push_back(seed.clone());
        while let Some(cur) = queue.pop_front() {
            let cur_loop = DiscreteLoop { points: cur };
            for mv in basic_moves(&cur_loop, eps, x).expect("loops stay eps-loops") {
                if mv.size() > max_size || label.contains_key(&mv.points) {
                    continue;
                }
                label.insert(mv.points.clone(), id);
                queue.push_back(mv.points);
            }
        }
    }
    Some(label)
}

/// Looks up a loop's component label (normalizing the size-0 loop).
pub fn component_label(labels: &HashMap<Vec<usize>, u32>, l: &DiscreteLoop) -> Option<u32> {
    labels.get(&normalize_points(&l.points)).copied()
}

/// Homotopy oracle through the edge-path presentation: writes `a * b^{-1}`
/// as a word at scale `eps` and consults the word problem.
pub fn homotopic_via_pi1(
    a: &DiscreteLoop,
    b: &DiscreteLoop,
    eps: f64,
    x: &PointedMetricSpace,
) -> HomotopyVerdict {
    let pp = persistent_pi1(x);
    homotopic_via_pi1_with(&pp, a, b, eps, x)
}

/// As [`homotopic_via_pi1`], reusing a precomputed persistent group.
pub fn homotopic_via_pi1_with(
    pp: &PersistentPi1,
    a: &DiscreteLoop,
    b: &DiscreteLoop,
    eps: f64,
    x: &PointedMetricSpace,
) -> HomotopyVerdict {
    debug_assert_eq!(a.basepoint(), x.basepoint);
    debug_assert_eq!(b.basepoint(), x.basepoint);
    let Some(level) = pp.level_at(eps) else {
        // below the first candidate scale the only eps-loops are lazy
        // paddings of the constant loop
        let strip = |l: &DiscreteLoop| {
            let mut v: Vec<usize> = l.points().to_vec();
            v.dedup();
            v
        };
        return if strip(a) == strip(b) {
            HomotopyVerdict::Yes
        } else {
            HomotopyVerdict::Unknown
        };
    };
    let l = &pp.levels[level];
    let (Some(wa), Some(wb)) = (
        l.epp.walk_word(&l.skeleton, a.points()),
        l.epp.walk_word(&l.skeleton, b.points()),
    ) else {
        return HomotopyVerdict::Unknown; // not eps-loops at this scale
    };
    let w = wa.concat(&wb.inverse());
    match pp.word_verdict(level, &w) {
        WordVerdict::Trivial => HomotopyVerdict::Yes,
        WordVerdict::Nontrivial => HomotopyVerdict::No,
        WordVerdict::Unknown => HomotopyVerdict::Unknown,
    }
}

/// The loop-space pseudo-ultrametric: the smallest candidate scale
/// `>= max(birth a, birth b)` at which the loops become homotopic.
/// `None` when a needed verdict is unknown.
pub fn mu1(a: &DiscreteLoop, b: &DiscreteLoop, x: &PointedMetricSpace) -> Option<f64> {
    let pp = persistent_pi1(x);
    mu1_with(&pp, a, b, x)
}

pub fn mu1_with(
    pp: &PersistentPi1,
    a: &DiscreteLoop,
    b: &DiscreteLoop,
    x: &PointedMetricSpace,
) -> Option<f64> {
    let floor = birth(a, &x.space).max(birth(b, &x.space));
    if floor <= TOL {
        // birth-0 loops are lazy paddings of the constant loop
        let strip = |l: &DiscreteLoop| {
            let mut v: Vec<usize> = l.points().to_vec();
            v.dedup();
            v
        };
        if strip(a) == strip(b) {
            return Some(0.0);
        }
    }
    for &s in &pp.scales {
        if s < floor - TOL {
            continue;
        }
        // homotopy classes are constant between candidate scales, so the
        // infimum is attained at a candidate scale
        match homotopic_via_pi1_with(pp, a, b, s, x) {
            HomotopyVerdict::Yes => return Some(s),
            HomotopyVerdict::No => continue,
            HomotopyVerdict::Unknown => return None,
        }
    }
    None
}

/// Death time: smallest scale at which the loop is null-homotopic.
pub fn death(l: &DiscreteLoop, x: &PointedMetricSpace) -> Option<f64> {
    mu1(l, &DiscreteLoop::constant(x.basepoint), x)
}

pub fn death_with(pp: &PersistentPi1, l: &DiscreteLoop, x: &PointedMetricSpace) -> Option<f64> {
    mu1_with(pp, l, &DiscreteLoop::constant(x.basepoint), x)
}

/// One equivalence class of `~`: same birth and homotopic at that birth.
#[derive(Debug, Clone, Serialize)]
pub struct LoopClass {
    /// Size-then-lexicographically smallest representative found.
    pub representative: DiscreteLoop,
    pub birth: f64,
    /// Set when an unknown word-problem verdict forced this class to be kept
    /// separate without certainty.
    pub flagged: bool,
}

/// The enumerated loop space `L(X, x0)` up to a size cap.
#[derive(Debug, Clone, Serialize)]
pub struct LoopSpace {
    pub classes: Vec<LoopClass>,
}

/// Key identifying the homotopy class of a based walk at its birth level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ClassKey {
    /// Canonical form (free-reduced word or exponent vector); classified
    /// groups only.
    Canonical(Vec<i64>),
    /// Free-reduced raw word; may split a class, merged in a second pass.
    Raw(Vec<i64>),
}

fn walk_class_key(
    pp: &PersistentPi1,
    level: usize,
    closed_points: &[usize],
) -> ClassKey {
    let l = &pp.levels[level];
    let raw = l
        .epp
        .walk_word(&l.skeleton, closed_points)
        .expect("closed walk stays within its birth scale");
    use crate::presentation::GroupClass::*;
    match l.class.normalized() {
        Trivial => ClassKey::Canonical(Vec::new()),
        Free { .. } => ClassKey::Canonical(l.simplified.rewrite(&raw).0),
        FreeAbelian { .. } => ClassKey::Canonical(
            l.simplified
                .rewrite(&raw)
                .exponents(l.simplified.presentation.n_gens),
        ),
        Unclassified { .. } => ClassKey::Raw(raw.free_reduced().0),
    }
}

/// Enumerates canonical representatives of the classes of `~` among based
/// loops of size `<= max_size`.
///
/// The walk search deduplicates states by (endpoint, birth level, class at
/// birth), so equivalent prefixes are explored once; this keeps spaces with
/// few homotopy classes cheap even at generous size caps.
pub fn enumerate_l(x: &PointedMetricSpace, max_size: usize) -> LoopSpace {
    let pp = persistent_pi1(x);
    enumerate_l_with(&pp, x, max_size)
}

pub fn enumerate_l_with(
    pp: &PersistentPi1,
    x: &PointedMetricSpace,
    max_size: usize,
) -> LoopSpace {
    let n = x.space.n();
    let x0 = x.basepoint;
    // birth level of a step (level index of its distance)
    let step_level = |a: usize, b: usize| -> usize {
        pp.level_index(x.space.d(a, b))
            .expect("pairwise distances are candidate scales")
    };

    type State = (usize, Option<usize>, ClassKey);
    let mut walks: HashMap<State, Vec<usize>> = HashMap::new();
    let start: State = (x0, None, ClassKey::Canonical(Vec::new()));
    walks.insert(start.clone(), vec![x0]);
    let mut frontier: Vec<State> = vec![start];

    for _size in 1..=max_size {
        // deterministic order: states sorted by their stored walks
        frontier.sort_by(|a, b| walks[a].cmp(&walks[b]));
        let mut next_frontier: Vec<State> = Vec::new();
        for state in &frontier {
            let walk = walks[state].clone();
            let v = *walk.last().unwrap();
            for u in 0..n {
                if u == v {
                    continue;
                }
                let lvl = step_level(v, u);
                let new_level = match state.1 {
                    None => lvl,
                    Some(old) => old.max(lvl),
                };
                let mut new_walk = walk.clone();
                new_walk.push(u);
                // closing tree path at the new birth level
                let mut closed = new_walk.clone();
                let tp = pp.levels[new_level].epp.tree_path(u);
                closed.extend_from_slice(&tp[1..]);
                let key = walk_class_key(pp, new_level, &closed);
                let st: State = (u, Some(new_level), key);
                if let std::collections::hash_map::Entry::Vacant(e) = walks.entry(st.clone()) {
                    e.insert(new_walk);
                    next_frontier.push(st);
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }

    // collect loop classes: states that end at the basepoint
    struct Cand {
        rep: Vec<usize>,
        birth_level: Option<usize>,
        raw_key: bool,
    }
    let mut cands: Vec<Cand> = walks
        .into_iter()
        .filter(|((v, _, _), _)| *v == x0)
        .map(|((_, b, key), rep)| Cand {
            rep,
            birth_level: b,
            raw_key: matches!(key, ClassKey::Raw(_)),
        })
        .collect();
    cands.sort_by(|a, b| (a.rep.len(), &a.rep).cmp(&(b.rep.len(), &b.rep)));

    // merge pass for raw-key candidates of equal birth
    let mut classes: Vec<LoopClass> = Vec::new();
    let mut kept: Vec<(Option<usize>, DiscreteLoop, bool, bool)> = Vec::new(); // (birth, rep, raw, flagged)
    'cand: for c in cands {
        let lp = DiscreteLoop { points: c.rep };
        if c.raw_key {
            let lvl = c.birth_level.unwrap();
            let mut unknown = false;
            for (b2, rep2, raw2, flagged2) in kept.iter_mut() {
                if *raw2 && *b2 == c.birth_level {
                    match homotopic_via_pi1_with(pp, &lp, rep2, pp.scales[lvl], x) {
                        HomotopyVerdict::Yes => continue 'cand,
                        HomotopyVerdict::No => {}
                        HomotopyVerdict::Unknown => {
                            unknown = true;
                            *flagged2 = true;
                        }
                    }
                }
            }
            kept.push((c.birth_level, lp, true, unknown));
        } else {
            kept.push((c.birth_level, lp, false, false));
        }
    }
    for (b, rep, _raw, flagged) in kept {
        let birth_val = match b {
            None => 0.0,
            Some(lvl) => pp.scales[lvl],
        };
        classes.push(LoopClass { representative: rep, birth: birth_val, flagged });
    }
    classes.sort_by(|a, b| {
        a.birth
            .partial_cmp(&b.birth)
            .unwrap()
            .then((a.representative.size(), a.representative.points())
                .cmp(&(b.representative.size(), b.representative.points())))
    });
    LoopSpace { classes }
}

/// The `mu^(1)` matrix on the enumerated representatives (diagonal entries
/// are birth times). `None` entries are unknown verdicts.
pub fn mu1_matrix(
    pp: &PersistentPi1,
    x: &PointedMetricSpace,
    classes: &[LoopClass],
) -> Vec<Vec<Option<f64>>> {
    let k = classes.len();
    let mut m = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = mu1_with(pp, &classes[i].representative, &classes[j].representative, x);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// A generalized subdendrogram over the enumerated loop classes: at each
/// scale, the partition of the representatives born by then into scale-level
/// homotopy classes. Supports grow monotonically and the last scale carries
/// a single block.
#[derive(Debug, Clone, Serialize)]
pub struct GSubdendrogram {
    pub scales: Vec<f64>,
    /// Per scale: blocks of indices into `representatives`.
    pub blocks: Vec<Vec<Vec<usize>>>,
    pub representatives: Vec<DiscreteLoop>,
    pub flagged: bool,
}

pub fn generalized_subdendrogram(x: &PointedMetricSpace, max_size: usize) -> GSubdendrogram {
    let pp = persistent_pi1(x);
    let ls = enumerate_l_with(&pp, x, max_size);
    generalized_subdendrogram_with(&pp, x, &ls)
}

pub fn generalized_subdendrogram_with(
    pp: &PersistentPi1,
    x: &PointedMetricSpace,
    ls: &LoopSpace,
) -> GSubdendrogram {
    let mut scales = vec![0.0];
    scales.extend(pp.scales.iter().copied());
    let reps: Vec<DiscreteLoop> = ls.classes.iter().map(|c| c.representative.clone()).collect();
    let mut flagged = ls.classes.iter().any(|c| c.flagged);
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::with_capacity(scales.len());
    for (si, &s) in scales.iter().enumerate() {
        let support: Vec<usize> = ls
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.birth <= s + TOL)
            .map(|(i, _)| i)
            .collect();
        let mut part: Vec<Vec<usize>> = Vec::new();
        if si == 0 {
            if !support.is_empty() {
                part.push(support);
            }
        } else {
            let level = si - 1;
            let mut key_of: HashMap<ClassKey, usize> = HashMap::new();
            let mut raw_blocks: Vec<(usize, Vec<usize>)> = Vec::new(); // (rep idx of first member, members)
            for &i in &support {
                let key = walk_class_key(pp, level, reps[i].points());
                match key {
                    ClassKey::Canonical(_) => {
                        let slot = *key_of.entry(key).or_insert_with(|| {
                            part.push(Vec::new());
                            part.len() - 1
                        });
                        part[slot].push(i);
                    }
                    ClassKey::Raw(_) => {
                        // merge by pairwise word problem
                        let mut placed = false;
                        for (first, members) in raw_blocks.iter_mut() {
                            match homotopic_via_pi1_with(
                                pp,
                                &reps[i],
                                &reps[*first],
                                pp.scales[level],
                                x,
                            ) {
                                HomotopyVerdict::Yes => {
                                    members.push(i);
                                    placed = true;
                                    break;
                                }
                                HomotopyVerdict::No => {}
                                HomotopyVerdict::Unknown => {
                                    flagged = true;
                                }
                            }
                        }
                        if !placed {
                            raw_blocks.push((i, vec![i]));
                        }
                    }
                }
            }
            part.extend(raw_blocks.into_iter().map(|(_, m)| m));
        }
        for b in part.iter_mut() {
            b.sort_unstable();
        }
        part.sort_by_key(|b| b.first().copied());
        blocks.push(part);
    }
    GSubdendrogram { scales, blocks, representatives: reps, flagged }
}

impl GSubdendrogram {
    /// Induced pseudo-ultrametric: smallest scale at which two
    /// representatives share a block.
    pub fn induced_mu(&self, i: usize, j: usize) -> Option<f64> {
        for (si, part) in self.blocks.iter().enumerate() {
            if part.iter().any(|b| b.contains(&i) && b.contains(&j)) {
                return Some(self.scales[si]);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{circle_sample, cycle_graph, star_graph};
    use std::f64::consts::PI;

    fn pointed(x: FiniteMetricSpace) -> PointedMetricSpace {
        PointedMetricSpace::new(x, 0).unwrap()
    }
    use crate::metric::FiniteMetricSpace;

    fn lp(points: &[usize], x: &FiniteMetricSpace) -> DiscreteLoop {
        DiscreteLoop::new(points.to_vec(), x).unwrap()
    }

    fn gamma_r(n: usize, r: usize) -> Vec<usize> {
        // 0 r r+1 ... n-1 0
        let mut v = vec![0, r];
        v.extend(r + 1..n);
        v.push(0);
        v
    }

    #[test]
    fn birth_examples() {
        let c5 = cycle_graph(5).unwrap();
        for r in 1..=2 {
            let g = lp(&gamma_r(5, r), &c5);
            assert!((birth(&g, &c5) - r as f64).abs() <= TOL);
        }
        assert_eq!(birth(&DiscreteLoop::constant(0), &c5), 0.0);
        assert!((birth(&lp(&[0, 2, 0], &c5), &c5) - 2.0).abs() <= TOL);
    }

    #[test]
    fn basic_moves_examples() {
        let c3 = cycle_graph(3).unwrap();
        let constant = DiscreteLoop::constant(0);
        let moves = basic_moves(&constant, 1.0, &c3).unwrap();
        // insertions of every point within 1 of the basepoint
        assert_eq!(moves.len(), 3);
        assert!(moves.iter().all(|m| m.points().len() == 3));

        let tri = lp(&[0, 1, 2, 0], &c3);
        let moves = basic_moves(&tri, 1.0, &c3).unwrap();
        let removals: Vec<&DiscreteLoop> =
            moves.iter().filter(|m| m.size() < tri.size()).collect();
        assert_eq!(removals.len(), 2);
        assert!(removals.iter().any(|m| m.points() == [0, 2, 0]));
        assert!(removals.iter().any(|m| m.points() == [0, 1, 0]));

        // removal blocked when the bridged gap exceeds eps
        let c5 = cycle_graph(5).unwrap();
        let g = lp(&[0, 1, 2, 3, 4, 0], &c5);
        let moves = basic_moves(&g, 1.0, &c5).unwrap();
        assert!(moves.iter().all(|m| m.size() >= g.size()));

        // not an eps-loop -> error
        assert!(basic_moves(&lp(&[0, 2, 0], &c5), 1.0, &c5).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let c4 = cycle_graph(4).unwrap();
        let g1 = lp(&gamma_r(4, 1), &c4);
        let constant = DiscreteLoop::constant(0);
        assert_eq!(
            homotopic_bruteforce(&g1, &g1, 1.0, &c4, 8, 100_000).unwrap(),
            HomotopyVerdict::Yes
        );
        assert_eq!(
            homotopic_bruteforce(&g1, &constant, 1.0, &c4, 8, 1_000_000).unwrap(),
            HomotopyVerdict::No
        );
        assert_eq!(
            homotopic_bruteforce(&g1, &constant, 2.0, &c4, 8, 1_000_000).unwrap(),
            HomotopyVerdict::Yes
        );
    }

    #[test]
    fn via_pi1_examples() {
        let c7 = pointed(cycle_graph(7).unwrap());
        let g1 = lp(&gamma_r(7, 1), &c7.space);
        let g2 = lp(&gamma_r(7, 2), &c7.space);
        assert_eq!(homotopic_via_pi1(&g1, &g1, 1.0, &c7), HomotopyVerdict::Yes);
        assert_eq!(homotopic_via_pi1(&g1, &g2, 2.0, &c7), HomotopyVerdict::Yes);
        let g11 = g1.concat(&g1);
        assert_eq!(homotopic_via_pi1(&g1, &g11, 2.0, &c7), HomotopyVerdict::No);
    }

    #[test]
    fn mu1_examples() {
        // mu1(g, g) = birth(g)
        let c5 = pointed(cycle_graph(5).unwrap());
        for r in 1..=2 {
            let g = lp(&gamma_r(5, r), &c5.space);
            assert!((mu1(&g, &g, &c5).unwrap() - r as f64).abs() <= TOL);
        }
        // mu1_{S_4}(lambda_0, lambda_2) = 2
        let s4 = star_graph(4).unwrap();
        let l0 = DiscreteLoop::constant(0);
        let l2 = lp(&[0, 1, 2, 0], &s4.space);
        assert!((mu1(&l0, &l2, &s4).unwrap() - 2.0).abs() <= TOL);
        // mu1_{C_3}(gamma_0, gamma_1) = 1
        let c3 = pointed(cycle_graph(3).unwrap());
        let g1 = lp(&[0, 1, 2, 0], &c3.space);
        assert!((mu1(&DiscreteLoop::constant(0), &g1, &c3).unwrap() - 1.0).abs() <= TOL);
    }

    #[test]
    fn death_examples() {
        let c4 = pointed(cycle_graph(4).unwrap());
        assert_eq!(death(&DiscreteLoop::constant(0), &c4), Some(0.0));
        let g1 = lp(&gamma_r(4, 1), &c4.space);
        assert!((death(&g1, &c4).unwrap() - 2.0).abs() <= TOL);

        let d6 = pointed(circle_sample(6).unwrap());
        let g1 = lp(&gamma_r(6, 1), &d6.space);
        assert!((death(&g1, &d6).unwrap() - 2.0 * PI / 3.0).abs() <= TOL);
    }

    #[test]
    fn enumerate_star_has_three_classes() {
        let s4 = star_graph(4).unwrap();
        let ls = enumerate_l(&s4, 6);
        assert_eq!(ls.classes.len(), 3);
        assert_eq!(ls.classes[0].representative.points(), [0]);
        assert_eq!(ls.classes[1].representative.points(), [0, 1, 0]);
        assert_eq!(ls.classes[2].representative.points(), [0, 1, 2, 0]);
        assert!(ls.classes.iter().all(|c| !c.flagged));
    }

    #[test]
    fn enumerate_c3_has_two_classes() {
        let c3 = pointed(cycle_graph(3).unwrap());
        let ls = enumerate_l(&c3, 6);
        assert_eq!(ls.classes.len(), 2);
        assert_eq!(ls.classes[1].representative.points(), [0, 1, 0]);
        assert!((ls.classes[1].birth - 1.0).abs() <= TOL);
    }

    #[test]
    fn enumerate_c4_classes() {
        // gamma_0; the birth-1 null class (e.g. 0 1 0, born at 1 and
        // instantly null); gamma_1^k for k in -2..2 nonzero; gamma_2.
        let c4 = pointed(cycle_graph(4).unwrap());
        let ls = enumerate_l(&c4, 8);
        let births: Vec<f64> = ls.classes.iter().map(|c| c.birth).collect();
        assert_eq!(births.iter().filter(|&&b| b == 0.0).count(), 1);
        assert_eq!(births.iter().filter(|&&b| (b - 1.0).abs() <= TOL).count(), 5);
        assert_eq!(births.iter().filter(|&&b| (b - 2.0).abs() <= TOL).count(), 1);
        assert_eq!(ls.classes.len(), 7);
        // winding representatives
        let reps: Vec<&[usize]> = ls.classes.iter().map(|c| c.representative.points()).collect();
        assert!(reps.contains(&[0, 1, 2, 3, 0].as_slice()));
        assert!(reps.contains(&[0, 3, 2, 1, 0].as_slice()));
        assert!(reps.contains(&[0, 1, 2, 3, 0, 1, 2, 3, 0].as_slice()));
        assert!(reps.contains(&[0, 2, 0].as_slice()));
    }

    #[test]
    fn mu1_concatenation_invariance() {
        let c5 = pointed(cycle_graph(5).unwrap());
        let pp = persistent_pi1(&c5);
        let a = lp(&gamma_r(5, 1), &c5.space);
        let b = lp(&gamma_r(5, 2), &c5.space);
        let g = lp(&[0, 1, 0], &c5.space);
        let lhs = mu1_with(&pp, &a.concat(&g), &b.concat(&g), &c5);
        let rhs = mu1_with(&pp, &a, &b, &c5);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mu1_strong_triangle_inequality() {
        let s4 = star_graph(4).unwrap();
        let pp = persistent_pi1(&s4);
        let ls = enumerate_l_with(&pp, &s4, 6);
        let m = mu1_matrix(&pp, &s4, &ls.classes);
        let k = ls.classes.len();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (a, b, c) = (m[i][j].unwrap(), m[i][l].unwrap(), m[l][j].unwrap());
                    assert!(a <= b.max(c) + TOL);
                }
            }
        }
    }

    #[test]
    fn subdendrogram_of_star() {
        let s4 = star_graph(4).unwrap();
        let sd = generalized_subdendrogram(&s4, 6);
        assert_eq!(sd.scales, vec![0.0, 1.0, 2.0]);
        // scale 0: just the constant class
        assert_eq!(sd.blocks[0], vec![vec![0]]);
        // scale 1: lambda_1 merges into lambda_0 at 1
        assert_eq!(sd.blocks[1], vec![vec![0, 1]]);
        // scale 2: single block
        assert_eq!(sd.blocks[2], vec![vec![0, 1, 2]]);
    }

    #[test]
    fn subdendrogram_of_c4_matches_mu1() {
        let c4 = pointed(cycle_graph(4).unwrap());
        let pp = persistent_pi1(&c4);
        let ls = enumerate_l_with(&pp, &c4, 8);
        let sd = generalized_subdendrogram_with(&pp, &c4, &ls);
        // single block at the final scale
        assert_eq!(sd.blocks.last().unwrap().len(), 1);
        // induced metric equals mu1 on every representative pair
        let m = mu1_matrix(&pp, &c4, &ls.classes);
        for i in 0..ls.classes.len() {
            for j in 0..ls.classes.len() {
                assert_eq!(sd.induced_mu(i, j), m[i][j]);
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        // brute force and pi1 route agree on definite verdicts
        let c4 = pointed(cycle_graph(4).unwrap());
        let pp = persistent_pi1(&c4);
        let loops: Vec<DiscreteLoop> = vec![
            DiscreteLoop::constant(0),
            lp(&[0, 1, 0], &c4.space),
            lp(&[0, 1, 2, 3, 0], &c4.space),
            lp(&[0, 3, 2, 1, 0], &c4.space),
            lp(&[0, 2, 0], &c4.space),
        ];
        for eps in [1.0, 2.0] {
            for a in &loops {
                for b in &loops {
                    if birth(a, &c4.space) > eps || birth(b, &c4.space) > eps {
                        continue;
                    }
                    let cap = default_homotopy_cap(a, b, &c4.space);
                    let bf = homotopic_bruteforce(a, b, eps, &c4.space, cap, 500_000).unwrap();
                    let wp = homotopic_via_pi1_with(&pp, a, b, eps, &c4);
                    if bf != HomotopyVerdict::Unknown && wp != HomotopyVerdict::Unknown {
                        assert_eq!(bf, wp, "{:?} vs {:?} at {eps}", a.points(), b.points());
                    }
                }
            }
        }
    }
}
