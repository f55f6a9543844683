//! Maximal sets of roots closed under no pairwise sums, and the resulting
//! bound on abelian subalgebra dimensions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{build_root_system, RootSystem, RootType};
use crate::error::{Error, Result};
use crate::gfla::field::is_prime;

/// A largest set of roots no two of which sum to a root or to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFreeSet {
    pub size: usize,
    /// Roots in simple-root coordinates, in positive-root order.
    pub witness: Vec<Vec<i32>>,
    /// Number of sum-free upper sets visited.
    pub upper_sets_visited: usize,
}

/// Search the sum-free upper sets of the positive-root poset.
///
/// A set of roots pairwise summing to neither a root nor zero spans an
/// abelian subalgebra; one of maximal size can be moved into the positive
/// roots as an upper set by a fixed-point argument for the Borel subgroup,
/// so the upper sets suffice. Grows sets by adding one minimal element at a
/// time; the witness is the lexicographically least optimum by position in
/// `positive_roots`.
pub fn max_sum_free_root_set(r: &RootSystem) -> SumFreeSet {
    let n = r.num_positive();
    assert!(n <= 128, "positive roots exceed the bitset width");
    let bit = |i: usize| 1u128 << i;
    let mut up = vec![0u128; n];
    for (i, j) in r.poset_covers() {
        up[i] |= bit(j);
    }
    let mut conflict = vec![0u128; n];
    for a in 0..n {
        for b in 0..n {
            if r.sum_index(a, b).is_some() {
                conflict[a] |= bit(b);
            }
        }
    }
    let indices = |set: u128| -> Vec<usize> { (0..n).filter(|&i| set & bit(i) != 0).collect() };
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(0);
    let mut layer = vec![0u128];
    let mut best: Vec<usize> = Vec::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &set in &layer {
            for a in 0..n {
                if set & bit(a) != 0 || up[a] & !set != 0 || conflict[a] & (set | bit(a)) != 0 {
                    continue;
                }
                let grown = set | bit(a);
                if seen.insert(grown) {
                    next.push(grown);
                }
            }
        }
        for &set in &next {
            let idx = indices(set);
            if idx.len() > best.len() || (idx.len() == best.len() && idx < best) {
                best = idx;
            }
        }
        layer = next;
    }
    SumFreeSet {
        size: best.len(),
        witness: best.iter().map(|&i| r.positive_roots[i].clone()).collect(),
        upper_sets_visited: seen.len(),
    }
}

/// Unrestricted search over all subsets of roots (rank ≤ 4 only), used to
/// validate the upper-set restriction. Returns the maximum size.
pub fn full_subset_sum_free(r: &RootSystem) -> Result<usize> {
    let n = r.roots.len();
    if r.rank > 4 || n > 64 {
        return Err(Error::Invalid(format!(
            "full subset search is limited to rank 4 (got {}{})",
            r.ty, r.rank
        )));
    }
    let mut adj = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && (r.sum_index(a, b).is_some() || r.negative_index(a) == b) {
                adj[a] |= 1 << b;
            }
        }
    }
    let mut best = 0;
    branch(&adj, 0, if n == 64 { u64::MAX } else { (1u64 << n) - 1 }, &mut best);
    Ok(best)
}

/// Maximum independent set in the conflict graph, bounded by a greedy
/// clique cover of the remaining candidates.
fn branch(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover(adj, cand) <= *best {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    branch(adj, size + 1, cand & !adj[v] & !(1 << v), best);
    branch(adj, size, cand & !(1 << v), best);
}

fn clique_cover(adj: &[u64], mut cand: u64) -> usize {
    let mut count = 0;
    while cand != 0 {
        let mut clique_cand = cand;
        while clique_cand != 0 {
            let v = clique_cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            clique_cand &= adj[v];
        }
        count += 1;
    }
    count
}

/// The result of a maximal abelian dimension query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianBoundQuery {
    pub ty: RootType,
    pub rank: usize,
    pub p: u32,
    /// Size of the largest sum-free root set.
    pub search_size: usize,
    pub witness: Vec<Vec<i32>>,
    /// Dimension of the center in characteristic `p`.
    pub correction: usize,
    pub result: usize,
    /// The closed-form value, for cross-checking.
    pub formula: usize,
    pub formula_text: String,
}

impl AbelianBoundQuery {
    pub fn formula_agrees(&self) -> bool {
        self.formula == self.result
    }
}

fn check_validity(ty: RootType, n: usize, p: u32) -> Result<()> {
    if p != 0 && !is_prime(p) {
        return Err(Error::OutsideValidity(format!("characteristic {} is neither 0 nor prime", p)));
    }
    let fail = |msg: &str| Err(Error::OutsideValidity(msg.to_string()));
    match ty {
        RootType::B if n < 3 => fail("B_n requires n >= 3"),
        RootType::C if n < 2 => fail("C_n requires n >= 2"),
        RootType::D if n < 4 => fail("D_n requires n >= 4"),
        RootType::B | RootType::C | RootType::F if p == 2 => fail("p = 2 is excluded for types B, C and F4"),
        RootType::G if p == 2 || p == 3 => fail("p = 2, 3 are excluded for G2"),
        _ => Ok(()),
    }
}

fn central_correction(ty: RootType, n: usize, p: u32) -> usize {
    match ty {
        RootType::A => usize::from(p != 0 && (n as u32 + 1) % p == 0),
        RootType::D => 2 * usize::from(p == 2),
        RootType::E if n == 6 => usize::from(p == 3),
        RootType::E if n == 7 => usize::from(p == 2),
        _ => 0,
    }
}

/// Closed-form maximal abelian subalgebra dimension, with the formula used.
pub fn closed_form_abelian_dimension(ty: RootType, n: usize, p: u32) -> Result<(usize, String)> {
    check_validity(ty, n, p)?;
    let d2 = usize::from(p == 2);
    let d3 = usize::from(p == 3);
    Ok(match (ty, n) {
        (RootType::A, _) => {
            let eps = usize::from(p != 0 && (n as u32 + 1) % p == 0);
            ((n + 1) * (n + 1) / 4 + eps, "floor((n+1)^2/4) + eps_n".into())
        }
        (RootType::B, 3) => (5, "5".into()),
        (RootType::B, _) => (n * (n - 1) / 2 + 1, "n(n-1)/2 + 1".into()),
        (RootType::C, _) => (n * (n + 1) / 2, "n(n+1)/2".into()),
        (RootType::D, _) => (n * (n - 1) / 2 + 2 * d2, "n(n-1)/2 + 2 delta_{p,2}".into()),
        (RootType::G, _) => (3, "3".into()),
        (RootType::F, _) => (9, "9".into()),
        (RootType::E, 6) => (16 + d3, "16 + delta_{p,3}".into()),
        (RootType::E, 7) => (27 + d2, "27 + delta_{p,2}".into()),
        (RootType::E, _) => (36, "36".into()),
    })
}

/// Maximal dimension of an abelian subalgebra of the simple Lie algebra of
/// the given type in characteristic `p` (0 allowed): the sum-free search
/// plus the central correction, checked against the closed form.
///
/// ```
/// use modlie::roots::{max_abelian_dimension, RootType};
/// let q = max_abelian_dimension(RootType::E, 7, 2).unwrap();
/// assert_eq!((q.search_size, q.result), (27, 28));
/// assert!(q.formula_agrees());
/// ```
pub fn max_abelian_dimension(ty: RootType, n: usize, p: u32) -> Result<AbelianBoundQuery> {
    check_validity(ty, n, p)?;
    let r = build_root_system(ty, n)?;
    let found = max_sum_free_root_set(&r);
    let correction = central_correction(ty, n, p);
    let (formula, formula_text) = closed_form_abelian_dimension(ty, n, p)?;
    Ok(AbelianBoundQuery {
        ty,
        rank: n,
        p,
        search_size: found.size,
        witness: found.witness,
        correction,
        result: found.size + correction,
        formula,
        formula_text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairwise_sum_free(r: &RootSystem, set: &[Vec<i32>]) -> bool {
        set.iter().all(|a| {
            set.iter().all(|b| {
                let s: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                !r.is_root(&s) && s.iter().any(|&x| x != 0)
            })
        })
    }

    #[test]
    fn small_cases() {
        let a1 = build_root_system(RootType::A, 1).unwrap();
        assert_eq!(max_sum_free_root_set(&a1).size, 1);
        assert_eq!(full_subset_sum_free(&a1).unwrap(), 1);
        let b3 = build_root_system(RootType::B, 3).unwrap();
        let s = max_sum_free_root_set(&b3);
        assert_eq!(s.size, 5);
        assert!(pairwise_sum_free(&b3, &s.witness));
        let neg: Vec<Vec<i32>> = s.witness.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        assert!(pairwise_sum_free(&b3, &neg));
    }

    #[test]
    fn upper_sets_agree_with_full_search() {
        let cases = [
            (RootType::A, 2),
            (RootType::A, 3),
            (RootType::A, 4),
            (RootType::B, 3),
            (RootType::B, 4),
            (RootType::C, 3),
            (RootType::C, 4),
            (RootType::D, 4),
            (RootType::G, 2),
            (RootType::F, 4),
        ];
        for (t, n) in cases {
            let r = build_root_system(t, n).unwrap();
            assert_eq!(
                max_sum_free_root_set(&r).size,
                full_subset_sum_free(&r).unwrap(),
                "{}{}",
                t,
                n
            );
        }
    }

    #[test]
    fn validity() {
        assert!(matches!(max_abelian_dimension(RootType::G, 2, 3), Err(Error::OutsideValidity(_))));
        assert!(matches!(max_abelian_dimension(RootType::B, 2, 5), Err(Error::OutsideValidity(_))));
        assert!(matches!(max_abelian_dimension(RootType::F, 4, 2), Err(Error::OutsideValidity(_))));
        assert!(matches!(max_abelian_dimension(RootType::A, 2, 4), Err(Error::OutsideValidity(_))));
        assert_eq!(max_abelian_dimension(RootType::A, 3, 2).unwrap().result, 5);
        assert_eq!(max_abelian_dimension(RootType::D, 4, 2).unwrap().result, 8);
    }

    #[test]
    fn search_matches_closed_form() {
        let mut cases: Vec<(RootType, usize, u32)> = Vec::new();
        for n in 1..=7 {
            for p in [0, 2, 3, 5, 7] {
                cases.push((RootType::A, n, p));
            }
        }
        for (t, ns) in [(RootType::B, 3..=4), (RootType::C, 2..=4), (RootType::D, 4..=6)] {
            for n in ns {
                for p in [0, 2, 3, 5] {
                    if p == 2 && t != RootType::D {
                        continue;
                    }
                    cases.push((t, n, p));
                }
            }
        }
        for p in [0, 2, 3, 5] {
            cases.push((RootType::E, 6, p));
            cases.push((RootType::E, 7, p));
            cases.push((RootType::E, 8, p));
        }
        cases.push((RootType::G, 2, 5));
        cases.push((RootType::F, 4, 3));
        for (t, n, p) in cases {
            let q = max_abelian_dimension(t, n, p).unwrap();
            assert!(q.formula_agrees(), "{}{} p={}: {} vs {}", t, n, p, q.result, q.formula);
        }
    }
}
