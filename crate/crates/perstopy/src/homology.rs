//! Homology of Vietoris-Rips 2-skeletons: integer `H_1` via Smith normal
//! form, persistence diagrams in dimensions 0 and 1 over the rationals, the
//! single-linkage ultrametric `mu^(0)`, and the discrete Hurewicz check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{chain_complex, vr_skeleton, VrSkeleton2};
use crate::metric::{FiniteMetricSpace, PointedMetricSpace};
use crate::pi1::edge_path_presentation_full;
use crate::snf::{smith_normal_form, AbelianInvariants};
use crate::TOL;

/// A finite multiset of (birth, death) pairs; death may be `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistenceDiagram {
    pub points: Vec<(f64, f64)>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<(f64, f64)>) -> Self {
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        PersistenceDiagram { points }
    }

    pub fn empty() -> Self {
        PersistenceDiagram { points: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("birth,death\n");
        for &(b, d) in &self.points {
            if d.is_infinite() {
                s.push_str(&format!("{b:.12},inf\n"));
            } else {
                s.push_str(&format!("{b:.12},{d:.12}\n"));
            }
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("birth")) {
                continue;
            }
            let mut it = line.split(',');
            let b: f64 = it
                .next()
                .ok_or_else(|| format!("line {}: missing birth", i + 1))?
                .trim()
                .parse()
                .map_err(|e| format!("line {}: {e}", i + 1))?;
            let d_raw = it.next().ok_or_else(|| format!("line {}: missing death", i + 1))?.trim();
            let d = if d_raw == "inf" { f64::INFINITY } else { d_raw.parse().map_err(|e| format!("line {}: {e}", i + 1))? };
            points.push((b, d));
        }
        Ok(PersistenceDiagram::new(points))
    }
}

/// Integer first homology `H_1 = ker d1 / im d2` of a 2-skeleton.
pub fn h1_integer(k: &VrSkeleton2) -> AbelianInvariants {
    let cc = chain_complex(k);
    let rank_d1 = if cc.boundary1.is_empty() {
        0
    } else {
        smith_normal_form(&cc.boundary1, false).rank
    };
    let cycle_rank = cc.edges.len() - rank_d1;
    if cc.boundary2.is_empty() {
        return AbelianInvariants::free(cycle_rank);
    }
    let snf2 = smith_normal_form(&cc.boundary2, false);
    let torsion: Vec<BigInt> = snf2
        .invariant_factors
        .iter()
        .filter(|d| d.abs() > BigInt::one())
        .map(|d| d.abs())
        .collect();
    AbelianInvariants { rank: cycle_rank - snf2.rank, torsion }
}

/// `H_1` of the subcomplex induced on the basepoint component.
pub fn h1_integer_component(k: &VrSkeleton2, basepoint: usize) -> AbelianInvariants {
    let comp = k.component_of(basepoint);
    h1_integer(&k.induced(&comp))
}

/// Single-linkage ultrametric: `mu0(i,j)` is the minimum over chains from
/// `i` to `j` of the maximum step.
pub fn mu0_ultrametric(x: &FiniteMetricSpace) -> Vec<Vec<f64>> {
    let n = x.n();
    let mut m: Vec<Vec<f64>> = x.matrix().clone();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = m[i][k].max(m[k][j]);
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    m
}

/// Dimension-0 persistence diagram: one `(0, merge)` point per single-linkage
/// merge plus one `(0, +inf)` point.
pub fn ph0_diagram(x: &FiniteMetricSpace) -> PersistenceDiagram {
    let n = x.n();
    if n == 0 {
        return PersistenceDiagram::empty();
    }
    // Prim's algorithm; the MST edge weights are exactly the merge scales.
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    in_tree[0] = true;
    for j in 1..n {
        best[j] = x.d(0, j);
    }
    let mut merges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let v = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].partial_cmp(&best[b]).unwrap())
            .unwrap();
        merges.push(best[v]);
        in_tree[v] = true;
        for u in 0..n {
            if !in_tree[u] && x.d(v, u) < best[u] {
                best[u] = x.d(v, u);
            }
        }
    }
    let mut points: Vec<(f64, f64)> = merges.into_iter().map(|m| (0.0, m)).collect();
    points.push((0.0, f64::INFINITY));
    PersistenceDiagram::new(points)
}

/// Dimension-1 persistence diagram over the rationals, by standard column
/// reduction of the 2-skeleton filtration. Within equal scales the insertion
/// order is vertices, then edges sorted lexicographically, then triangles.
pub fn ph1_diagram(x: &FiniteMetricSpace) -> PersistenceDiagram {
    let n = x.n();
    #[derive(Clone)]
    struct Simplex {
        scale: f64,
        dim: usize,
        verts: Vec<usize>,
    }
    let mut simplices: Vec<Simplex> = Vec::new();
    for v in 0..n {
        simplices.push(Simplex { scale: 0.0, dim: 0, verts: vec![v] });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            simplices.push(Simplex { scale: x.d(i, j), dim: 1, verts: vec![i, j] });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let s = x.d(i, j).max(x.d(i, k)).max(x.d(j, k));
                simplices.push(Simplex { scale: s, dim: 2, verts: vec![i, j, k] });
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.scale
            .partial_cmp(&b.scale)
            .unwrap()
            .then(a.dim.cmp(&b.dim))
            .then(a.verts.cmp(&b.verts))
    });
    let index_of: std::collections::HashMap<Vec<usize>, usize> =
        simplices.iter().enumerate().map(|(i, s)| (s.verts.clone(), i)).collect();

    // sparse columns of the boundary matrix, reduced left to right
    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(simplices.len());
    for s in &simplices {
        let mut col: Vec<(usize, BigRational)> = Vec::new();
        if s.dim >= 1 {
            for (pos, omit) in (0..s.verts.len()).enumerate() {
                let face: Vec<usize> = s
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                col.push((index_of[&face], sign));
            }
            col.sort_by_key(|&(i, _)| i);
        }
        columns.push(col);
    }

    let mut low_of: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new(); // (birth simplex, death simplex)
    for j in 0..columns.len() {
        loop {
            let Some(&(low, _)) = columns[j].last() else { break };
            let Some(&k) = low_of.get(&low) else { break };
            // columns[j] -= (lead_j / lead_k) * columns[k]
            let lead_j = columns[j].last().unwrap().1.clone();
            let lead_k = columns[k].last().unwrap().1.clone();
            let factor = lead_j / lead_k;
            let scaled: Vec<(usize, BigRational)> =
                columns[k].iter().map(|(i, c)| (*i, c * &factor)).collect();
            columns[j] = sub_sparse(&columns[j], &scaled);
        }
        if let Some(&(low, _)) = columns[j].last() {
            low_of.insert(low, j);
            pairs.push((low, j));
        }
    }

    let mut points = Vec::new();
    for &(b, d) in &pairs {
        if simplices[b].dim == 1 {
            let (bs, ds) = (simplices[b].scale, simplices[d].scale);
            if ds > bs + TOL {
                points.push((bs, ds));
            }
        }
    }
    // unpaired positive 1-simplices would give infinite classes; on a finite
    // space the final complex is a full 2-skeleton, so there are none, but
    // handle the general case anyway
    let paired_births: std::collections::HashSet<usize> = pairs.iter().map(|&(b, _)| b).collect();
    let paired_deaths: std::collections::HashSet<usize> = pairs.iter().map(|&(_, d)| d).collect();
    for (j, s) in simplices.iter().enumerate() {
        if s.dim == 1 && columns_is_zero(&columns[j]) && !paired_births.contains(&j)
            && !paired_deaths.contains(&j)
        {
            points.push((s.scale, f64::INFINITY));
        }
    }
    PersistenceDiagram::new(points)
}

fn columns_is_zero(col: &[(usize, BigRational)]) -> bool {
    col.is_empty()
}

fn sub_sparse(
    a: &[(usize, BigRational)],
    b: &[(usize, BigRational)],
) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -b[j].1.clone()));
            j += 1;
        } else {
            let v = &a[i].1 - &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Checks the discrete Hurewicz theorem at one scale: the abelianization of
/// the edge-path presentation of the basepoint component must equal the
/// integer `H_1` of that component's 2-skeleton.
pub fn hurewicz_check(x: &PointedMetricSpace, eps: f64) -> bool {
    let k = vr_skeleton(&x.space, eps);
    let epp = edge_path_presentation_full(&k, x.basepoint);
    let ab = epp.presentation.abelian_invariants();
    let h1 = h1_integer_component(&k, x.basepoint);
    ab == h1
}

/// Rank after tensoring with the rationals: torsion dies.
pub fn rationalize(a: &AbelianInvariants) -> usize {
    a.rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{
        circle_sample, cycle_graph, random_tree_metric, star_graph, uniform_space, wedge_sum,
        weighted_tree_metric, FiniteMetricSpace, PointedMetricSpace,
    };
    use std::f64::consts::PI;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    #[test]
    fn h1_examples() {
        let h = h1_integer(&vr_skeleton(&cycle_graph(7).unwrap(), 1.0));
        assert_eq!(h, AbelianInvariants::free(1));

        let h = h1_integer(&vr_skeleton(&star_graph(4).unwrap().space, 1.0));
        assert_eq!(h, AbelianInvariants::free(0));

        let w = wedge_sum(
            &PointedMetricSpace::new(cycle_graph(4).unwrap(), 0).unwrap(),
            &PointedMetricSpace::new(cycle_graph(4).unwrap(), 0).unwrap(),
        )
        .unwrap();
        // independent check: connected 1-complex with no triangles at scale 1,
        // rank = E - V + 1 = 8 - 7 + 1 = 2
        let k = vr_skeleton(&w.space, 1.0);
        assert_eq!(k.edges.len(), 8);
        assert!(k.triangles.is_empty());
        assert_eq!(h1_integer(&k), AbelianInvariants::free(2));
    }

    #[test]
    fn mu0_examples() {
        for m in 3..7 {
            let mu = mu0_ultrametric(&cycle_graph(m).unwrap());
            for i in 0..m {
                for j in 0..m {
                    let want = if i == j { 0.0 } else { 1.0 };
                    assert!(close(mu[i][j], want));
                }
            }
        }
        let e4 = uniform_space(4).unwrap();
        assert_eq!(mu0_ultrametric(&e4), e4.matrix().clone());

        let path = weighted_tree_metric(3, &[(0, 1, 1.0), (1, 2, 3.0)]).unwrap();
        let mu = mu0_ultrametric(&path);
        assert!(close(mu[0][2], 3.0));
    }

    #[test]
    fn mu0_is_ultrametric_below_d() {
        for seed in 0..10 {
            let x = crate::metric::random_euclidean(6, seed).unwrap();
            let mu = mu0_ultrametric(&x);
            let n = x.n();
            for i in 0..n {
                for j in 0..n {
                    assert!(mu[i][j] <= x.d(i, j) + TOL);
                    for k in 0..n {
                        assert!(mu[i][j] <= mu[i][k].max(mu[k][j]) + TOL);
                    }
                }
            }
        }
    }

    #[test]
    fn ph0_examples() {
        let two = FiniteMetricSpace::validate(None, vec![vec![0.0, 1.5], vec![1.5, 0.0]]).unwrap();
        let d = ph0_diagram(&two);
        assert_eq!(d.points, vec![(0.0, 1.5), (0.0, f64::INFINITY)]);

        let one = uniform_space(1).unwrap();
        assert_eq!(ph0_diagram(&one).points, vec![(0.0, f64::INFINITY)]);

        let e3 = uniform_space(3).unwrap();
        assert_eq!(
            ph0_diagram(&e3).points,
            vec![(0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]
        );
    }

    #[test]
    fn ph0_has_n_minus_one_finite_bars() {
        for seed in 0..6 {
            let x = crate::metric::random_euclidean(5, seed).unwrap();
            let d = ph0_diagram(&x);
            let finite = d.points.iter().filter(|p| p.1.is_finite()).count();
            assert_eq!(finite, 4);
        }
    }

    #[test]
    fn ph1_examples() {
        let d = ph1_diagram(&circle_sample(4).unwrap());
        assert_eq!(d.points.len(), 1);
        assert!(close(d.points[0].0, PI / 2.0));
        assert!(close(d.points[0].1, PI));

        for n in 3..7 {
            assert!(ph1_diagram(&star_graph(n).unwrap().space).points.is_empty());
        }

        let d = ph1_diagram(&cycle_graph(7).unwrap());
        assert_eq!(d.points, vec![(1.0, 3.0)]);
    }

    #[test]
    fn ph1_endpoints_are_candidate_scales() {
        for seed in 0..6 {
            let x = crate::metric::random_euclidean(6, seed).unwrap();
            let scales = x.candidate_scales();
            for (b, d) in ph1_diagram(&x).points {
                assert!(scales.iter().any(|&s| close(s, b)));
                assert!(d.is_infinite() || scales.iter().any(|&s| close(s, d)));
            }
        }
    }

    #[test]
    fn hurewicz_examples() {
        let c7 = PointedMetricSpace::new(cycle_graph(7).unwrap(), 0).unwrap();
        assert!(hurewicz_check(&c7, 1.0));

        for seed in 0..5 {
            let t = random_tree_metric(6, seed).unwrap();
            let p = PointedMetricSpace::new(t, 0).unwrap();
            for eps in p.space.candidate_scales() {
                assert!(hurewicz_check(&p, eps));
            }
        }

        let w = wedge_sum(
            &PointedMetricSpace::new(cycle_graph(4).unwrap(), 0).unwrap(),
            &PointedMetricSpace::new(cycle_graph(4).unwrap(), 0).unwrap(),
        )
        .unwrap();
        assert!(hurewicz_check(&w, 1.0));
    }

    #[test]
    fn rationalize_examples() {
        let a = AbelianInvariants { rank: 2, torsion: vec![BigInt::from(3)] };
        assert_eq!(rationalize(&a), 2);
        assert_eq!(rationalize(&AbelianInvariants::trivial()), 0);
        assert_eq!(rationalize(&h1_integer(&vr_skeleton(&cycle_graph(7).unwrap(), 1.0))), 1);
    }

    #[test]
    fn csv_round_trip() {
        let d = PersistenceDiagram::new(vec![(0.0, 1.0), (0.5, f64::INFINITY)]);
        let csv = d.to_csv();
        let back = PersistenceDiagram::from_csv(&csv).unwrap();
        assert_eq!(d, back);
    }
}
