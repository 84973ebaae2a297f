//! Edge-path presentations of the discrete fundamental group at each scale,
//! assembled into the persistent fundamental group with structure maps and
//! critical-value detection.
//!
//! At a fixed scale the group `pi_1^eps(X, x0)` is isomorphic to the
//! edge-path group of the Vietoris-Rips complex: one generator per non-tree
//! edge of a BFS spanning tree of the basepoint component, one relator per
//! triangle.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{vr_skeleton, VrSkeleton2};
use crate::metric::PointedMetricSpace;
use crate::presentation::{
    classify_simplified, tietze_simplify_tracked, GroupClass, GroupPresentation, Simplification,
    Word, WordVerdict, DEFAULT_TIETZE_EFFORT,
};
use crate::TOL;

#[derive(Debug, Error, PartialEq)]
pub enum Pi1Error {
    #[error("scale {0} is not a candidate scale of the filtration")]
    ScaleNotInFiltration(f64),
    #[error("scales out of order: {0} > {1}")]
    ScalesOutOfOrder(f64, f64),
    #[error("word references generator {gen} but scale {scale} has {n_gens} generators")]
    MalformedWord { gen: usize, scale: f64, n_gens: usize },
}

/// Edge-path presentation data at a single scale: the BFS tree, the
/// generator edges, and the raw presentation (one relator per triangle,
/// empty relators from all-tree triangles included).
#[derive(Debug, Clone)]
pub struct EdgePathPresentation {
    pub scale: f64,
    pub basepoint: usize,
    pub in_component: Vec<bool>,
    /// BFS parent; `None` for the basepoint and for vertices outside the
    /// component.
    pub parent: Vec<Option<usize>>,
    /// Non-tree edges of the basepoint component, ascending; one generator
    /// each, in this order.
    pub gen_edges: Vec<(usize, usize)>,
    pub presentation: GroupPresentation,
    edge_gen: HashMap<(usize, usize), usize>,
    tree_edge: std::collections::HashSet<(usize, usize)>,
}

impl EdgePathPresentation {
    /// Generator letter of traversing `a -> b`: `None` for a silent (tree or
    /// lazy) step; an error value is signalled by `is_edge` first.
    fn step_letter(&self, a: usize, b: usize) -> Option<i64> {
        if a == b {
            return None;
        }
        let key = (a.min(b), a.max(b));
        if self.tree_edge.contains(&key) {
            return None;
        }
        let g = self.edge_gen[&key] as i64 + 1;
        Some(if a < b { g } else { -g })
    }

    /// The word of an edge walk (consecutive points joined by skeleton
    /// edges). Returns `None` when some step is not an edge at this scale.
    pub fn walk_word(&self, k: &VrSkeleton2, points: &[usize]) -> Option<Word> {
        let mut letters = Vec::new();
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                continue;
            }
            if !k.has_edge(a, b) {
                return None;
            }
            if let Some(l) = self.step_letter(a, b) {
                letters.push(l);
            }
        }
        Some(Word(letters).free_reduced())
    }

    /// Tree path from `v` down to the basepoint (inclusive).
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    /// The based loop represented by a generator: basepoint -> u along the
    /// tree, the edge (u, v), then v -> basepoint along the tree.
    pub fn generator_loop(&self, g: usize) -> Vec<usize> {
        let (u, v) = self.gen_edges[g];
        let mut pts: Vec<usize> = self.tree_path(u);
        pts.reverse();
        pts.extend(self.tree_path(v));
        pts
    }
}

/// Builds the edge-path presentation of the basepoint component of `k`.
/// BFS uses lowest-index tie-breaking so presentations are deterministic.
pub fn edge_path_presentation_full(k: &VrSkeleton2, basepoint: usize) -> EdgePathPresentation {
    let n = k.n_vertices;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &k.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut in_component = vec![false; n];
    let mut tree_edge = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    in_component[basepoint] = true;
    queue.push_back(basepoint);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !in_component[u] {
                in_component[u] = true;
                parent[u] = Some(v);
                tree_edge.insert((v.min(u), v.max(u)));
                queue.push_back(u);
            }
        }
    }

    let gen_edges: Vec<(usize, usize)> = k
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| in_component[a] && in_component[b] && !tree_edge.contains(&(a, b)))
        .collect();
    let edge_gen: HashMap<(usize, usize), usize> =
        gen_edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();

    let mut epp = EdgePathPresentation {
        scale: k.scale,
        basepoint,
        in_component,
        parent,
        gen_edges,
        presentation: GroupPresentation::free(0),
        edge_gen,
        tree_edge,
    };

    let mut relators = Vec::new();
    for &(a, b, c) in &k.triangles {
        if !(epp.in_component[a] && epp.in_component[b] && epp.in_component[c]) {
            continue;
        }
        // path a -> b -> c is edge equivalent to a -> c
        let mut letters = Vec::new();
        if let Some(l) = epp.step_letter(a, b) {
            letters.push(l);
        }
        if let Some(l) = epp.step_letter(b, c) {
            letters.push(l);
        }
        if let Some(l) = epp.step_letter(c, a) {
            letters.push(l);
        }
        relators.push(Word(letters).free_reduced());
    }
    epp.presentation = GroupPresentation::new(epp.gen_edges.len(), relators);
    epp
}

/// Convenience entry point returning just the presentation.
pub fn edge_path_presentation(k: &VrSkeleton2, basepoint: usize) -> GroupPresentation {
    edge_path_presentation_full(k, basepoint).presentation
}

/// One scale of the persistent fundamental group.
#[derive(Debug, Clone)]
pub struct Pi1Level {
    pub skeleton: VrSkeleton2,
    pub epp: EdgePathPresentation,
    pub simplified: Simplification,
    pub class: GroupClass,
    /// Image of each raw generator as a raw word at the next scale;
    /// `None` at the last scale.
    pub maps_to_next: Option<Vec<Word>>,
}

/// The persistent fundamental group of a finite pointed metric space:
/// presentations, classifications, and structure maps at every candidate
/// scale (the distinct pairwise distances).
#[derive(Debug, Clone)]
pub struct PersistentPi1 {
    pub basepoint: usize,
    pub scales: Vec<f64>,
    pub levels: Vec<Pi1Level>,
}

pub fn persistent_pi1(x: &PointedMetricSpace) -> PersistentPi1 {
    let mut scales = x.space.candidate_scales();
    if scales.is_empty() {
        // one-point space: a single scale at 0 keeps the invariants honest
        scales.push(0.0);
    }
    let mut levels: Vec<Pi1Level> = Vec::with_capacity(scales.len());
    for &s in &scales {
        let skeleton = vr_skeleton(&x.space, s);
        let epp = edge_path_presentation_full(&skeleton, x.basepoint);
        let simplified = tietze_simplify_tracked(&epp.presentation, DEFAULT_TIETZE_EFFORT);
        let class = classify_simplified(&simplified.presentation).normalized();
        levels.push(Pi1Level { skeleton, epp, simplified, class, maps_to_next: None });
    }
    for i in 0..levels.len().saturating_sub(1) {
        let (head, tail) = levels.split_at_mut(i + 1);
        let cur = &head[i];
        let next = &tail[0];
        let maps: Vec<Word> = (0..cur.epp.gen_edges.len())
            .map(|g| {
                let pts = cur.epp.generator_loop(g);
                next.epp
                    .walk_word(&next.skeleton, &pts)
                    .expect("edges persist into larger scales")
            })
            .collect();
        head[i].maps_to_next = Some(maps);
    }
    PersistentPi1 { basepoint: x.basepoint, scales, levels }
}

impl PersistentPi1 {
    pub fn level_index(&self, eps: f64) -> Option<usize> {
        self.scales.iter().position(|&s| (s - eps).abs() <= TOL)
    }

    /// Index of the level governing an arbitrary scale `eps` (the largest
    /// candidate scale `<= eps`), or `None` below the first one.
    pub fn level_at(&self, eps: f64) -> Option<usize> {
        let mut ans = None;
        for (i, &s) in self.scales.iter().enumerate() {
            if s <= eps + TOL {
                ans = Some(i);
            }
        }
        ans
    }

    /// Classification at an arbitrary scale (`Trivial` below the first
    /// candidate scale, where the based component is a single vertex).
    pub fn class_at(&self, eps: f64) -> GroupClass {
        match self.level_at(eps) {
            Some(i) => self.levels[i].class.clone(),
            None => GroupClass::Trivial,
        }
    }

    /// Decides triviality of a raw word at the given level.
    pub fn word_verdict(&self, level: usize, w: &Word) -> WordVerdict {
        let l = &self.levels[level];
        crate::presentation::word_problem_simplified(
            &l.simplified.presentation,
            &l.class,
            &l.simplified.rewrite(w),
        )
    }
}

/// Pushes a raw word at scale `eps` forward to a raw word at scale `eps2` by
/// composing the stored generator-image maps; both must be candidate scales.
pub fn structure_map_image(
    pp: &PersistentPi1,
    eps: f64,
    eps2: f64,
    word: &Word,
) -> Result<Word, Pi1Error> {
    if eps > eps2 + TOL {
        return Err(Pi1Error::ScalesOutOfOrder(eps, eps2));
    }
    let i = pp.level_index(eps).ok_or(Pi1Error::ScaleNotInFiltration(eps))?;
    let j = pp.level_index(eps2).ok_or(Pi1Error::ScaleNotInFiltration(eps2))?;
    let mut w = word.clone();
    for l in &w.0 {
        let g = (l.unsigned_abs() - 1) as usize;
        let n_gens = pp.levels[i].epp.gen_edges.len();
        if g >= n_gens {
            return Err(Pi1Error::MalformedWord { gen: g, scale: eps, n_gens });
        }
    }
    for level in i..j {
        let maps = pp.levels[level].maps_to_next.as_ref().unwrap();
        w = w.substitute(maps);
    }
    Ok(w.free_reduced())
}

/// Verdict for one candidate scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriticalVerdict {
    Critical,
    NonCritical,
    Undetermined,
}

/// Classifies each candidate scale as critical (the group provably changes
/// there), non-critical (the structure map into it is a certified bijection),
/// or undetermined.
///
/// Certification is by classification: matching class and rank with the
/// abelianized generator images forming a basis. A matching class whose
/// image matrix is *not* unimodular is a certified non-bijection, hence
/// critical.
pub fn detect_critical_values(pp: &PersistentPi1) -> Vec<(f64, CriticalVerdict)> {
    let mut out = Vec::new();
    let mut prev: Option<usize> = None; // previous level index; None = trivial baseline
    for (i, &scale) in pp.scales.iter().enumerate() {
        let cur_class = pp.levels[i].class.normalized();
        let verdict = match prev {
            None => {
                if !cur_class.is_classified() {
                    CriticalVerdict::Undetermined
                } else if cur_class == GroupClass::Trivial {
                    CriticalVerdict::NonCritical
                } else {
                    CriticalVerdict::Critical
                }
            }
            Some(p) => {
                let prev_class = pp.levels[p].class.normalized();
                if !prev_class.is_classified() || !cur_class.is_classified() {
                    CriticalVerdict::Undetermined
                } else if prev_class != cur_class {
                    CriticalVerdict::Critical
                } else if map_is_abelianized_basis(pp, p) {
                    CriticalVerdict::NonCritical
                } else {
                    CriticalVerdict::Critical
                }
            }
        };
        out.push((scale, verdict));
        prev = Some(i);
    }
    out
}

/// For matching classified classes of rank k: do the images of the previous
/// level's simplified generators abelianize to a basis at the next level?
fn map_is_abelianized_basis(pp: &PersistentPi1, prev_level: usize) -> bool {
    let prev = &pp.levels[prev_level];
    let next = &pp.levels[prev_level + 1];
    let k = prev.class.rank();
    if next.class.rank() != k {
        return false;
    }
    if k == 0 {
        return true;
    }
    let maps = prev.maps_to_next.as_ref().unwrap();
    // surviving simplified generator j of the previous level is the raw
    // generator prev.simplified.survivors[j]
    let mut matrix: Vec<Vec<i64>> = Vec::with_capacity(k);
    for j in 0..k {
        let raw_gen = prev.simplified.survivors[j];
        let image_raw = &maps[raw_gen];
        let image_simplified = next.simplified.rewrite(image_raw);
        matrix.push(image_simplified.exponents(next.simplified.presentation.n_gens));
    }
    if matrix.iter().any(|row| row.len() != k) {
        return false;
    }
    let det = det_i64(&matrix);
    det == 1 || det == -1
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0i64;
    for j in 0..n {
        let minor: Vec<Vec<i64>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c]).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][j] * det_i64(&minor);
    }
    det
}

/// Serializable summary of a persistent fundamental group.
#[derive(Debug, Clone, Serialize)]
pub struct PersistentPi1Report {
    pub basepoint: usize,
    pub scales: Vec<f64>,
    pub levels: Vec<LevelReport>,
    pub critical_values: Vec<CriticalValueReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub scale: f64,
    pub n_generators: usize,
    pub n_relators: usize,
    pub simplified: String,
    pub class: GroupClass,
    pub class_display: String,
    /// Images of the raw generators at the next scale, as display words.
    pub generator_images: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalValueReport {
    pub scale: f64,
    pub verdict: CriticalVerdict,
}

pub fn report(pp: &PersistentPi1) -> PersistentPi1Report {
    let critical = detect_critical_values(pp);
    PersistentPi1Report {
        basepoint: pp.basepoint,
        scales: pp.scales.clone(),
        levels: pp
            .levels
            .iter()
            .zip(&pp.scales)
            .map(|(l, &scale)| LevelReport {
                scale,
                n_generators: l.epp.presentation.n_gens,
                n_relators: l.epp.presentation.relators.len(),
                simplified: l.simplified.presentation.to_string(),
                class: l.class.clone(),
                class_display: l.class.to_string(),
                generator_images: l
                    .maps_to_next
                    .as_ref()
                    .map(|ms| ms.iter().map(|w| w.to_string()).collect()),
            })
            .collect(),
        critical_values: critical
            .into_iter()
            .map(|(scale, verdict)| CriticalValueReport { scale, verdict })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{
        circle_sample, cycle_graph, linf_product, random_tree_metric, star_graph, uniform_space,
        wedge_sum, PointedMetricSpace,
    };
    use std::f64::consts::PI;

    fn pointed(x: crate::metric::FiniteMetricSpace) -> PointedMetricSpace {
        PointedMetricSpace::new(x, 0).unwrap()
    }

    #[test]
    fn edge_path_counts_match_euler_formula() {
        for n in 3..9 {
            let x = cycle_graph(n).unwrap();
            for eps in x.candidate_scales() {
                let k = vr_skeleton(&x, eps);
                let epp = edge_path_presentation_full(&k, 0);
                let comp: usize = epp.in_component.iter().filter(|&&b| b).count();
                let comp_edges = k
                    .edges
                    .iter()
                    .filter(|&&(a, b)| epp.in_component[a] && epp.in_component[b])
                    .count();
                assert_eq!(epp.presentation.n_gens, comp_edges - (comp - 1));
                let comp_triangles = k
                    .triangles
                    .iter()
                    .filter(|&&(a, b, c)| {
                        epp.in_component[a] && epp.in_component[b] && epp.in_component[c]
                    })
                    .count();
                assert_eq!(epp.presentation.relators.len(), comp_triangles);
            }
        }
    }

    #[test]
    fn presentation_examples() {
        // C_4 at 1: one generator, no relators -> Z
        let p = edge_path_presentation(&vr_skeleton(&cycle_graph(4).unwrap(), 1.0), 0);
        assert_eq!(p.n_gens, 1);
        assert!(p.relators.is_empty());

        // C_3 at 1: one generator killed by the triangle -> trivial
        let p = edge_path_presentation(&vr_skeleton(&cycle_graph(3).unwrap(), 1.0), 0);
        assert_eq!(p.n_gens, 1);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(crate::presentation::classify_group(&p), GroupClass::Trivial);

        // S_4 at 1: a tree, no generators
        let p = edge_path_presentation(&vr_skeleton(&star_graph(4).unwrap().space, 1.0), 0);
        assert_eq!(p.n_gens, 0);

        // VR_1(C_5) simplifies to a single generator, no relators
        let p = edge_path_presentation(&vr_skeleton(&cycle_graph(5).unwrap(), 1.0), 0);
        let s = crate::presentation::tietze_simplify(&p, 1000);
        assert_eq!(s.n_gens, 1);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn persistent_pi1_of_cycles() {
        // P Pi_1(C_n) = Z on integer scales [1, floor((n+2)/3)), trivial after
        for n in 3..=9usize {
            let pp = persistent_pi1(&pointed(cycle_graph(n).unwrap()));
            let death = ((n + 2) / 3) as f64;
            for (i, &s) in pp.scales.iter().enumerate() {
                let expected = if s < death - 0.5 {
                    GroupClass::Free { rank: 1 }
                } else {
                    GroupClass::Trivial
                };
                assert_eq!(pp.levels[i].class, expected, "C_{n} at scale {s}");
            }
        }
    }

    #[test]
    fn persistent_pi1_of_trees_is_trivial() {
        for seed in 0..10 {
            let t = random_tree_metric(2 + (seed as usize % 8), seed).unwrap();
            let pp = persistent_pi1(&pointed(t));
            for l in &pp.levels {
                assert_eq!(l.class, GroupClass::Trivial);
            }
        }
    }

    #[test]
    fn persistent_pi1_of_delta4() {
        let pp = persistent_pi1(&pointed(circle_sample(4).unwrap()));
        assert_eq!(pp.scales.len(), 2);
        assert!((pp.scales[0] - PI / 2.0).abs() <= TOL);
        assert!((pp.scales[1] - PI).abs() <= TOL);
        assert_eq!(pp.levels[0].class, GroupClass::Free { rank: 1 });
        assert_eq!(pp.levels[1].class, GroupClass::Trivial);
    }

    #[test]
    fn final_scale_is_trivial() {
        let spaces = vec![
            cycle_graph(6).unwrap(),
            star_graph(5).unwrap().space,
            uniform_space(4).unwrap(),
            random_tree_metric(7, 3).unwrap(),
        ];
        for x in spaces {
            let pp = persistent_pi1(&pointed(x));
            assert_eq!(pp.levels.last().unwrap().class, GroupClass::Trivial);
        }
    }

    #[test]
    fn structure_map_examples() {
        let pp = persistent_pi1(&pointed(cycle_graph(7).unwrap()));
        // identity scale: same word freely reduced
        let w = Word(vec![1, -1, 1]);
        let img = structure_map_image(&pp, 1.0, 1.0, &w).unwrap();
        assert_eq!(img, Word(vec![1]));
        // generator at 1 maps to a nontrivial word at 2
        let g = Word::gen(0);
        let img2 = structure_map_image(&pp, 1.0, 2.0, &g).unwrap();
        assert_eq!(pp.word_verdict(1, &img2), WordVerdict::Nontrivial);
        // and dies at 3
        let img3 = structure_map_image(&pp, 1.0, 3.0, &g).unwrap();
        assert_eq!(pp.word_verdict(2, &img3), WordVerdict::Trivial);
        // errors
        assert!(structure_map_image(&pp, 2.0, 1.0, &g).is_err());
        assert!(structure_map_image(&pp, 1.5, 2.0, &g).is_err());
    }

    #[test]
    fn structure_maps_compose() {
        let spaces = vec![
            cycle_graph(7).unwrap(),
            cycle_graph(8).unwrap(),
            wedge_sum(
                &pointed(cycle_graph(4).unwrap()),
                &pointed(cycle_graph(5).unwrap()),
            )
            .unwrap()
            .space,
        ];
        for x in spaces {
            let pp = persistent_pi1(&pointed(x));
            let s = &pp.scales;
            if s.len() < 3 {
                continue;
            }
            for g in 0..pp.levels[0].epp.presentation.n_gens {
                let w = Word::gen(g);
                let direct = structure_map_image(&pp, s[0], s[2], &w).unwrap();
                let step1 = structure_map_image(&pp, s[0], s[1], &w).unwrap();
                let via = structure_map_image(&pp, s[1], s[2], &step1).unwrap();
                let diff = direct.concat(&via.inverse());
                let j = pp.level_index(s[2]).unwrap();
                if pp.levels[j].class.is_classified() {
                    assert_eq!(pp.word_verdict(j, &diff), WordVerdict::Trivial);
                }
            }
        }
    }

    #[test]
    fn critical_values_examples() {
        let pp = persistent_pi1(&pointed(cycle_graph(7).unwrap()));
        let cv = detect_critical_values(&pp);
        let criticals: Vec<f64> = cv
            .iter()
            .filter(|(_, v)| *v == CriticalVerdict::Critical)
            .map(|(s, _)| *s)
            .collect();
        assert_eq!(criticals, vec![1.0, 3.0]);

        for n in 3..7 {
            let pp = persistent_pi1(&star_graph(n).unwrap());
            assert!(detect_critical_values(&pp)
                .iter()
                .all(|(_, v)| *v == CriticalVerdict::NonCritical));
        }

        let pp = persistent_pi1(&pointed(uniform_space(3).unwrap()));
        assert!(detect_critical_values(&pp)
            .iter()
            .all(|(_, v)| *v == CriticalVerdict::NonCritical));
    }

    #[test]
    fn product_abelianization_adds_ranks() {
        let c4 = cycle_graph(4).unwrap();
        let prod = linf_product(&c4, &c4).unwrap();
        let pp = persistent_pi1(&pointed(prod));
        // scale 1: rank 1 + 1 = 2; scale 2 = diam: trivial
        assert_eq!(pp.class_at(1.0).abelian_rank(), 2);
        assert_eq!(pp.class_at(2.0).abelian_rank(), 0);
    }

    #[test]
    fn torus_classification_at_scale_one() {
        // either certified Z^2 or unclassified with abelianization rank 2
        let c4 = cycle_graph(4).unwrap();
        let prod = linf_product(&c4, &c4).unwrap();
        let p = edge_path_presentation(&vr_skeleton(&prod, 1.0), 0);
        match crate::presentation::classify_group(&p) {
            GroupClass::FreeAbelian { rank } => assert_eq!(rank, 2),
            GroupClass::Unclassified { abelianization } => {
                assert_eq!(abelianization.rank, 2);
                assert!(abelianization.torsion.is_empty());
            }
            other => panic!("unexpected class {other}"),
        }
    }

    #[test]
    fn wedge_free_ranks_add() {
        let w = wedge_sum(
            &pointed(cycle_graph(4).unwrap()),
            &pointed(cycle_graph(5).unwrap()),
        )
        .unwrap();
        let pp = persistent_pi1(&w);
        match pp.class_at(1.0) {
            GroupClass::Free { rank } => assert_eq!(rank, 2),
            other => panic!("expected F2 at scale 1, got {other}"),
        }
    }

    #[test]
    fn one_point_space() {
        let pp = persistent_pi1(&pointed(uniform_space(1).unwrap()));
        assert_eq!(pp.scales, vec![0.0]);
        assert_eq!(pp.levels[0].class, GroupClass::Trivial);
    }
}
