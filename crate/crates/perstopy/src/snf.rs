//! Smith normal form over the integers, with exact arbitrary-precision
//! arithmetic. Shared by the homology computations (torsion of `H_1`) and by
//! presentation abelianization.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix<T: Into<i64> + Copy>(rows: &[Vec<T>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v.into())).collect())
        .collect()
}

/// Rank and divisibility-ordered torsion coefficients of a finitely
/// generated abelian group `Z^g / rowspan(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Torsion coefficients, each >= 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Result of a Smith normal form computation `u * m * v = s` with `s`
/// diagonal and `s[i][i] | s[i+1][i+1]`.
pub struct Snf {
    /// Nonzero diagonal entries (positive, divisibility-ordered).
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Right transform `v` (cols of `m` -> cols of `s`), tracked on demand.
    pub v: Option<IntMatrix>,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Computes the Smith normal form of `m` (destructively on a copy).
/// When `track_v` is set, the accumulated column transform is returned so
/// membership in the row span can be decided afterwards.
pub fn smith_normal_form(m: &IntMatrix, track_v: bool) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut v = if track_v { Some(identity(cols)) } else { None };

    let mut t = 0usize; // current pivot position
    while t < rows.min(cols) {
        // find the nonzero entry of smallest absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        if let Some(v) = v.as_mut() {
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }

        // clear column t with row operations, column t's row with column ops
        let mut clean = true;
        for i in (t + 1)..rows {
            if !a[i][t].is_zero() {
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !a[t][j].is_zero() {
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for i in 0..rows {
                        let sub = &q * &a[i][t];
                        a[i][j] -= sub;
                    }
                    if let Some(v) = v.as_mut() {
                        for row in v.iter_mut() {
                            let sub = &q * &row[t];
                            let val = &row[j] - sub;
                            row[j] = val;
                        }
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // rerun with a smaller pivot
        }

        // divisibility: the pivot must divide the rest of the block
        let mut fixed = false;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    // add row i to row t and restart the pivot step
                    for jj in t..cols {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }

        if a[t][t].is_negative() {
            for j in t..cols {
                a[t][j] = -a[t][j].clone();
            }
        }
        t += 1;
    }

    let mut invariant_factors = Vec::new();
    for i in 0..t {
        invariant_factors.push(a[i][i].clone());
    }
    Snf { rank: t, invariant_factors, v }
}

/// Invariants of `Z^g / rowspan(relations)` where `relations` has `g` columns.
pub fn abelian_invariants_of(relations: &IntMatrix, g: usize) -> AbelianInvariants {
    if relations.is_empty() {
        return AbelianInvariants::free(g);
    }
    debug_assert!(relations.iter().all(|r| r.len() == g));
    let snf = smith_normal_form(relations, false);
    let torsion: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| d.abs() > BigInt::one())
        .map(|d| d.abs())
        .collect();
    AbelianInvariants { rank: g - snf.rank, torsion }
}

/// Decides whether `target` lies in the integer row span of `relations`.
pub fn in_row_span(relations: &IntMatrix, target: &[BigInt]) -> bool {
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    if relations.is_empty() {
        return false;
    }
    let g = target.len();
    let snf = smith_normal_form(relations, true);
    let v = snf.v.as_ref().unwrap();
    // x * M = target has an integer solution iff (target * V) is divisible by
    // the invariant factors and vanishes past the rank.
    let mut tv = vec![BigInt::zero(); g];
    for (j, slot) in tv.iter_mut().enumerate() {
        for (i, t) in target.iter().enumerate() {
            *slot += t * &v[i][j];
        }
    }
    for (j, val) in tv.iter().enumerate() {
        if j < snf.rank {
            if !(val % &snf.invariant_factors[j]).is_zero() {
                return false;
            }
        } else if !val.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m, false)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_matrix() {
        assert_eq!(factors(&mat(&[&[2, 0], &[0, 6]])), vec![2, 6]);
        assert_eq!(factors(&mat(&[&[6, 0], &[0, 2]])), vec![2, 6]);
    }

    #[test]
    fn classic_example() {
        // SNF of [[2,4,4],[-6,6,12],[10,-4,-16]] is diag(2,6,12)
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(factors(&m), vec![2, 6, 12]);
    }

    #[test]
    fn rank_deficient() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(factors(&m), vec![1]);
    }

    #[test]
    fn abelian_invariants_examples() {
        // <a, b | 2a, 3b> = Z/2 + Z/3 = Z/6
        let inv = abelian_invariants_of(&mat(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(inv.rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        // <a, b | a + b> = Z
        let inv = abelian_invariants_of(&mat(&[&[1, 1]]), 2);
        assert_eq!(inv.rank, 1);
        assert!(inv.torsion.is_empty());
        // no relations
        let inv = abelian_invariants_of(&mat(&[]), 3);
        assert_eq!(inv, AbelianInvariants::free(3));
    }

    #[test]
    fn row_span_membership() {
        let rel = mat(&[&[2, 0], &[0, 2]]);
        assert!(in_row_span(&rel, &[BigInt::from(4), BigInt::from(-2)]));
        assert!(!in_row_span(&rel, &[BigInt::from(1), BigInt::from(0)]));
        assert!(in_row_span(&rel, &[BigInt::zero(), BigInt::zero()]));
        assert!(!in_row_span(&mat(&[]), &[BigInt::one()]));
    }

    #[test]
    fn snf_randomized_determinant_invariance() {
        // product of invariant factors = |det| for square full-rank matrices
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..5usize);
            let m: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5i64)).collect()).collect();
            let det = det_i64(&m);
            let snf = smith_normal_form(&int_matrix(&m), false);
            let prod: BigInt = snf.invariant_factors.iter().product();
            if det != 0 {
                assert_eq!(prod, BigInt::from(det.abs()));
            } else {
                assert!(snf.rank < n);
            }
        }
    }

    fn det_i64(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut det = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c]).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            det += sign * m[0][j] * det_i64(&minor);
        }
        det
    }
}
