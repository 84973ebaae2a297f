//! Finitely presented groups: words, presentations, Tietze simplification,
//! classification against the catalog {trivial, free, free abelian}, and a
//! partial word problem.
//!
//! The word problem is undecidable in general; everything here is sound but
//! deliberately partial. Simplification only ever *eliminates* generators, so
//! the surviving generators of a simplified presentation are a subset of the
//! original ones and carry their indices in [`Simplification::survivors`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::snf::{abelian_invariants_of, in_row_span, AbelianInvariants, IntMatrix};

/// A word over the free group on `n` generators: letters are `+(g+1)` for a
/// generator and `-(g+1)` for its inverse, `g` zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(pub Vec<i64>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![g as i64 + 1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).free_reduced()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduced(&self) -> Word {
        let mut out: Vec<i64> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().map_or(false, |&t| t == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Cyclic reduction: conjugation-invariant normal form step for relators.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.free_reduced().0;
        while w.len() >= 2 && w[0] == -w[w.len() - 1] {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Exponent-sum vector over `n` generators.
    pub fn exponents(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.0 {
            let g = (l.unsigned_abs() - 1) as usize;
            debug_assert!(g < n);
            v[g] += l.signum();
        }
        v
    }

    /// Substitutes each generator by the given image word (inverting for
    /// negative letters) and freely reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<i64> = Vec::new();
        for &l in &self.0 {
            let g = (l.unsigned_abs() - 1) as usize;
            let img = &images[g];
            if l > 0 {
                out.extend_from_slice(&img.0);
            } else {
                out.extend(img.0.iter().rev().map(|&x| -x));
            }
        }
        Word(out).free_reduced()
    }

    /// Canonical form of the relator up to rotation and inversion: the
    /// lexicographically smallest rotation among the word and its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return w;
        }
        let mut best: Option<Vec<i64>> = None;
        for cand in [&w, &w.inverse()] {
            let n = cand.0.len();
            for r in 0..n {
                let rot: Vec<i64> = (0..n).map(|i| cand.0[(i + r) % n]).collect();
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap())
    }
}

fn letter_name(l: i64) -> String {
    let g = (l.unsigned_abs() - 1) as usize;
    let base = if g < 26 {
        ((b'a' + g as u8) as char).to_string()
    } else {
        format!("x{g}")
    };
    if l < 0 {
        format!("{base}-")
    } else {
        base
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|&l| letter_name(l)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite group presentation: `n_gens` generators and a list of relators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupPresentation {
    pub n_gens: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(n_gens: usize, relators: Vec<Word>) -> Self {
        debug_assert!(relators
            .iter()
            .all(|r| r.0.iter().all(|&l| (l.unsigned_abs() as usize) <= n_gens && l != 0)));
        GroupPresentation { n_gens, relators }
    }

    pub fn free(n_gens: usize) -> Self {
        GroupPresentation { n_gens, relators: Vec::new() }
    }

    /// Exponent-sum matrix of the relators (relators x generators).
    pub fn exponent_matrix(&self) -> IntMatrix {
        self.relators
            .iter()
            .map(|r| r.exponents(self.n_gens).into_iter().map(BigInt::from).collect())
            .collect()
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        abelian_invariants_of(&self.exponent_matrix(), self.n_gens)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.n_gens).map(|g| letter_name(g as i64 + 1)).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.to_string())
            .collect();
        write!(f, "gens: {}; rels: {}", gens.join(" "), rels.join(", "))
    }
}

/// Classification of a presented group.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "tag")]
pub enum GroupClass {
    Trivial,
    Free { rank: usize },
    FreeAbelian { rank: usize },
    /// Could not be certified; carries the abelianization invariants.
    Unclassified { abelianization: AbelianInvariants },
}

impl GroupClass {
    /// Normalizes degenerate ranks: rank 0 is trivial, rank 1 free abelian is
    /// the same group as rank 1 free.
    pub fn normalized(&self) -> GroupClass {
        match self {
            GroupClass::Free { rank: 0 } | GroupClass::FreeAbelian { rank: 0 } => {
                GroupClass::Trivial
            }
            GroupClass::FreeAbelian { rank: 1 } => GroupClass::Free { rank: 1 },
            other => other.clone(),
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, GroupClass::Unclassified { .. })
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupClass::Trivial => 0,
            GroupClass::Free { rank } | GroupClass::FreeAbelian { rank } => *rank,
            GroupClass::Unclassified { abelianization } => abelianization.rank,
        }
    }

    pub fn abelian_rank(&self) -> usize {
        self.rank()
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::Trivial => write!(f, "0"),
            GroupClass::Free { rank: 1 } => write!(f, "Z"),
            GroupClass::Free { rank } => write!(f, "F{rank}"),
            GroupClass::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            GroupClass::Unclassified { abelianization } => write!(
                f,
                "unclassified(ab rank {}, torsion {:?})",
                abelianization.rank,
                abelianization.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()
            ),
        }
    }
}

/// A simplified presentation together with the data needed to transport
/// words of the original presentation into it.
#[derive(Debug, Clone)]
pub struct Simplification {
    pub presentation: GroupPresentation,
    /// Original generator index of each surviving generator.
    pub survivors: Vec<usize>,
    /// Image of each original generator as a word over the survivors.
    pub images: Vec<Word>,
}

impl Simplification {
    /// Rewrites a word over the original generators as a word over the
    /// simplified generators.
    pub fn rewrite(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

/// Bounded Tietze simplification tracking generator images.
///
/// Moves used: free/cyclic reduction of relators, removal of empty and
/// duplicate relators, elimination of a generator that occurs exactly once
/// in some relator, and shortening a relator by a larger-than-half overlap
/// with another. `effort` bounds the total number of elimination/rewrite
/// operations, so the procedure always terminates.
pub fn tietze_simplify_tracked(p: &GroupPresentation, effort: usize) -> Simplification {
    let n = p.n_gens;
    // images of original gens over the *original* gen space; eliminated gens
    // get rewritten in terms of the still-alive ones
    let mut images: Vec<Word> = (0..n).map(Word::gen).collect();
    let mut alive = vec![true; n];
    let mut relators: Vec<Word> = p.relators.clone();
    let mut ops = 0usize;

    loop {
        normalize_relators(&mut relators);
        if ops >= effort {
            break;
        }

        if let Some((ri, pos)) = find_single_occurrence(&relators, &alive) {
            // relator r = u g^s v  (g occurs exactly once): g = (v u)^{-s}
            let r = relators[ri].clone();
            let l = r.0[pos];
            let g = (l.unsigned_abs() - 1) as usize;
            let mut rest: Vec<i64> = Vec::with_capacity(r.len() - 1);
            rest.extend_from_slice(&r.0[pos + 1..]);
            rest.extend_from_slice(&r.0[..pos]);
            let rest = Word(rest);
            let replacement = if l > 0 { rest.inverse() } else { rest };

            let mut sub: Vec<Word> = (0..n).map(Word::gen).collect();
            sub[g] = replacement;
            relators.remove(ri);
            for rel in relators.iter_mut() {
                *rel = rel.substitute(&sub);
            }
            for img in images.iter_mut() {
                *img = img.substitute(&sub);
            }
            alive[g] = false;
            ops += 1;
            continue;
        }

        if shorten_one_overlap(&mut relators) {
            ops += 1;
            continue;
        }
        break;
    }
    normalize_relators(&mut relators);

    // compact the surviving generators
    let survivors: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
    let mut remap: HashMap<usize, usize> = HashMap::new();
    for (new, &old) in survivors.iter().enumerate() {
        remap.insert(old, new);
    }
    let remap_word = |w: &Word| -> Word {
        Word(
            w.0.iter()
                .map(|&l| {
                    let g = (l.unsigned_abs() - 1) as usize;
                    let ng = remap[&g] as i64 + 1;
                    if l > 0 {
                        ng
                    } else {
                        -ng
                    }
                })
                .collect(),
        )
    };
    let relators: Vec<Word> = relators.iter().map(&remap_word).collect();
    let images: Vec<Word> = images.iter().map(&remap_word).collect();
    Simplification {
        presentation: GroupPresentation::new(survivors.len(), relators),
        survivors,
        images,
    }
}

/// Convenience entry point returning just the simplified presentation.
pub fn tietze_simplify(p: &GroupPresentation, effort: usize) -> GroupPresentation {
    tietze_simplify_tracked(p, effort).presentation
}

pub const DEFAULT_TIETZE_EFFORT: usize = 20_000;

fn normalize_relators(relators: &mut Vec<Word>) {
    for r in relators.iter_mut() {
        *r = r.cyclic_canonical();
    }
    relators.retain(|r| !r.is_empty());
    relators.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    relators.dedup();
}

/// Finds a relator containing some generator exactly once; scans relators in
/// increasing length so cheap eliminations happen first.
fn find_single_occurrence(relators: &[Word], alive: &[bool]) -> Option<(usize, usize)> {
    for (ri, r) in relators.iter().enumerate() {
        let mut counts: HashMap<usize, (usize, usize)> = HashMap::new(); // gen -> (count, first pos)
        for (i, &l) in r.0.iter().enumerate() {
            let g = (l.unsigned_abs() - 1) as usize;
            let e = counts.entry(g).or_insert((0, i));
            e.0 += 1;
        }
        let mut best: Option<usize> = None;
        for (&g, &(c, pos)) in &counts {
            debug_assert!(alive[g]);
            if c == 1 && best.map_or(true, |b: usize| r.0[b].unsigned_abs() > g as u64 + 1) {
                best = Some(pos);
            }
        }
        if let Some(pos) = best {
            return Some((ri, pos));
        }
    }
    None
}

/// Replaces, in some relator, an overlap longer than half of a shorter
/// relator by the shorter complement. Returns true if a rewrite happened.
fn shorten_one_overlap(relators: &mut [Word]) -> bool {
    let snapshot: Vec<Word> = relators.to_vec();
    for (i, long) in relators.iter_mut().enumerate() {
        for (j, short) in snapshot.iter().enumerate() {
            if i == j || short.len() < 2 || long.len() < short.len() {
                continue;
            }
            let half = short.len() / 2;
            for variant in [short.clone(), short.inverse()] {
                let m = variant.0.len();
                for rot in 0..m {
                    let rotated: Vec<i64> = (0..m).map(|k| variant.0[(k + rot) % m]).collect();
                    // piece = first `take` letters, complement = inverse of the rest
                    for take in (half + 1..=m.min(long.len())).rev() {
                        let piece = &rotated[..take];
                        if let Some(at) = find_subword(&long.0, piece) {
                            let complement: Vec<i64> =
                                rotated[take..].iter().rev().map(|&x| -x).collect();
                            let mut new = long.0[..at].to_vec();
                            new.extend_from_slice(&complement);
                            new.extend_from_slice(&long.0[at + take..]);
                            let new = Word(new).cyclically_reduced();
                            if new.len() < long.len() {
                                *long = new;
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

fn find_subword(haystack: &[i64], needle: &[i64]) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len()).find(|&i| &haystack[i..i + needle.len()] == needle)
}

/// Classifies the group presented by `p`, simplifying first.
pub fn classify_group(p: &GroupPresentation) -> GroupClass {
    classify_simplified(&tietze_simplify(p, DEFAULT_TIETZE_EFFORT))
}

/// Classifies an already-simplified presentation. Sound, not complete:
/// free abelian recognition demands the relators be exactly the pairwise
/// commutators, anything else falls through to `Unclassified`.
pub fn classify_simplified(p: &GroupPresentation) -> GroupClass {
    if p.n_gens == 0 {
        return GroupClass::Trivial;
    }
    if p.relators.iter().all(|r| r.is_empty()) {
        return GroupClass::Free { rank: p.n_gens };
    }
    if is_commutator_presentation(p) {
        return GroupClass::FreeAbelian { rank: p.n_gens }.normalized();
    }
    GroupClass::Unclassified { abelianization: p.abelian_invariants() }
}

fn is_commutator_presentation(p: &GroupPresentation) -> bool {
    let k = p.n_gens;
    if k < 2 {
        return false;
    }
    let mut needed: Vec<Word> = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let (a, b) = (i as i64 + 1, j as i64 + 1);
            needed.push(Word(vec![a, b, -a, -b]).cyclic_canonical());
        }
    }
    needed.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    let mut have: Vec<Word> = p.relators.iter().map(|r| r.cyclic_canonical()).collect();
    have.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    have.dedup();
    have == needed
}

/// Verdict of the partial word problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordVerdict {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Decides triviality of `w` in the group presented by `p` with known
/// classification `class` (as returned by [`classify_group`] for `p`).
///
/// Free groups are decided by free reduction, free abelian ones by exponent
/// sums; otherwise only a nonzero abelianized image certifies nontriviality.
pub fn word_problem(p: &GroupPresentation, class: &GroupClass, w: &Word) -> WordVerdict {
    let simp = tietze_simplify_tracked(p, DEFAULT_TIETZE_EFFORT);
    word_problem_simplified(&simp.presentation, class, &simp.rewrite(w))
}

/// As [`word_problem`] but for a word already over the simplified
/// presentation's generators.
pub fn word_problem_simplified(
    p: &GroupPresentation,
    class: &GroupClass,
    w: &Word,
) -> WordVerdict {
    match class.normalized() {
        GroupClass::Trivial => WordVerdict::Trivial,
        GroupClass::Free { .. } => {
            if w.free_reduced().is_empty() {
                WordVerdict::Trivial
            } else {
                WordVerdict::Nontrivial
            }
        }
        GroupClass::FreeAbelian { .. } => {
            if w.exponents(p.n_gens).iter().all(|&e| e == 0) {
                WordVerdict::Trivial
            } else {
                WordVerdict::Nontrivial
            }
        }
        GroupClass::Unclassified { .. } => {
            let target: Vec<BigInt> =
                w.exponents(p.n_gens).into_iter().map(BigInt::from).collect();
            if target.iter().all(|t| t.is_zero()) {
                // zero in the abelianization; the group itself stays undecided
                WordVerdict::Unknown
            } else if in_row_span(&p.exponent_matrix(), &target) {
                WordVerdict::Unknown
            } else {
                WordVerdict::Nontrivial
            }
        }
    }
}
