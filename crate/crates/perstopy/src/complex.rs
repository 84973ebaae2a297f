//! Vietoris-Rips 2-skeletons (closed convention, `d <= eps`) and their
//! integer chain complexes.

use num_bigint::BigInt;
use serde::Serialize;

use crate::metric::FiniteMetricSpace;
use crate::snf::IntMatrix;
use crate::TOL;

/// The complete 2-skeleton of a Vietoris-Rips complex at one scale.
/// Edges and triangles are stored with ascending vertex indices, sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VrSkeleton2 {
    pub scale: f64,
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

/// Builds the closed VR 2-skeleton at scale `eps`.
pub fn vr_skeleton(x: &FiniteMetricSpace, eps: f64) -> VrSkeleton2 {
    let n = x.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if x.d(i, j) <= eps + TOL {
                edges.push((i, j));
            }
        }
    }
    let mut triangles = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if x.d(i, j) > eps + TOL {
                continue;
            }
            for k in (j + 1)..n {
                if x.d(i, k) <= eps + TOL && x.d(j, k) <= eps + TOL {
                    triangles.push((i, j, k));
                }
            }
        }
    }
    VrSkeleton2 { scale: eps, n_vertices: n, edges, triangles }
}

impl VrSkeleton2 {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    /// Restriction to a vertex subset (used for basepoint components).
    pub fn induced(&self, keep: &[bool]) -> VrSkeleton2 {
        VrSkeleton2 {
            scale: self.scale,
            n_vertices: self.n_vertices,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| keep[a] && keep[b])
                .collect(),
            triangles: self
                .triangles
                .iter()
                .copied()
                .filter(|&(a, b, c)| keep[a] && keep[b] && keep[c])
                .collect(),
        }
    }

    /// Connected component of `v` in the 1-skeleton.
    pub fn component_of(&self, v: usize) -> Vec<bool> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Integer boundary matrices of a 2-skeleton.
///
/// `boundary1` is edges x vertices (row per edge, `-1` at the smaller
/// endpoint, `+1` at the larger); `boundary2` is triangles x edges with the
/// usual alternating signs. `boundary1 . boundary2 = 0` by construction.
#[derive(Debug, Clone)]
pub struct ChainComplex2 {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
    pub boundary1: IntMatrix,
    pub boundary2: IntMatrix,
}

pub fn chain_complex(k: &VrSkeleton2) -> ChainComplex2 {
    let edge_index: std::collections::HashMap<(usize, usize), usize> =
        k.edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
    let boundary1: IntMatrix = k
        .edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![BigInt::from(0); k.n_vertices];
            row[a] = BigInt::from(-1);
            row[b] = BigInt::from(1);
            row
        })
        .collect();
    let boundary2: IntMatrix = k
        .triangles
        .iter()
        .map(|&(a, b, c)| {
            let mut row = vec![BigInt::from(0); k.edges.len()];
            // d[a,b,c] = [b,c] - [a,c] + [a,b]
            row[edge_index[&(b, c)]] = BigInt::from(1);
            row[edge_index[&(a, c)]] = BigInt::from(-1);
            row[edge_index[&(a, b)]] = BigInt::from(1);
            row
        })
        .collect();
    ChainComplex2 {
        n_vertices: k.n_vertices,
        edges: k.edges.clone(),
        triangles: k.triangles.clone(),
        boundary1,
        boundary2,
    }
}

impl ChainComplex2 {
    /// Checks `boundary1 . boundary2 = 0` (composition of boundary maps).
    pub fn boundary_squares_to_zero(&self) -> bool {
        use num_traits::Zero;
        for trow in &self.boundary2 {
            let mut acc = vec![BigInt::zero(); self.n_vertices];
            for (e, coef) in trow.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (v, b) in self.boundary1[e].iter().enumerate() {
                    acc[v] += coef * b;
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
        true
    }
}
