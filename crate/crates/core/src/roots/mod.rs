//! Root systems of simple Lie types and maximal abelian subalgebra dimensions.

mod abelian;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use abelian::{
    closed_form_abelian_dimension, full_subset_sum_free, max_abelian_dimension, max_sum_free_root_set,
    AbelianBoundQuery, SumFreeSet,
};

/// Cartan–Killing family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E => "E",
            RootType::F => "F",
            RootType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<RootType> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            _ => Err(Error::InvalidType(s.to_string())),
        }
    }
}

/// Parse labels such as `G2`, `E7`, `A3`.
pub fn parse_type_label(label: &str) -> Result<(RootType, usize)> {
    let label = label.trim();
    if label.len() < 2 {
        return Err(Error::InvalidType(label.to_string()));
    }
    let (t, n) = label.split_at(1);
    let ty: RootType = t.parse()?;
    let rank: usize = n.parse().map_err(|_| Error::InvalidType(label.to_string()))?;
    Ok((ty, rank))
}

/// A root system in simple-root coordinates, with Bourbaki numbering.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ty: RootType,
    pub rank: usize,
    /// `(α_i, α_j)` for simple roots, normalised so short roots have norm 2.
    pub gram: Vec<Vec<i32>>,
    /// Positive roots sorted by height, then lexicographically; simple roots first.
    pub positive_roots: Vec<Vec<i32>>,
    /// Positive roots followed by their negatives in the same order.
    pub roots: Vec<Vec<i32>>,
    index: BTreeMap<Vec<i32>, usize>,
}

fn dynkin(ty: RootType, n: usize) -> Result<(Vec<i32>, Vec<(usize, usize, i32)>)> {
    let bad = || Error::InvalidType(format!("{}{}", ty, n));
    let chain = |norm: i32| -> Vec<(usize, usize, i32)> { (0..n.saturating_sub(1)).map(|i| (i, i + 1, -norm / 2)).collect() };
    Ok(match ty {
        RootType::A => {
            if n < 1 {
                return Err(bad());
            }
            (vec![2; n], chain(2))
        }
        RootType::B => {
            if n < 2 {
                return Err(bad());
            }
            let mut norms = vec![4; n];
            norms[n - 1] = 2;
            let mut edges = chain(4);
            edges[n - 2].2 = -2;
            (norms, edges)
        }
        RootType::C => {
            if n < 2 {
                return Err(bad());
            }
            let mut norms = vec![2; n];
            norms[n - 1] = 4;
            let mut edges = chain(2);
            edges[n - 2].2 = -2;
            (norms, edges)
        }
        RootType::D => {
            if n < 3 {
                return Err(bad());
            }
            let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, -1)).collect();
            edges.push((n - 3, n - 1, -1));
            (vec![2; n], edges)
        }
        RootType::E => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            // 1-3-4-5-6(-7-8), 2 attached to 4
            let mut edges = vec![(0, 2, -1), (1, 3, -1)];
            for i in 2..n - 1 {
                edges.push((i, i + 1, -1));
            }
            (vec![2; n], edges)
        }
        RootType::F => {
            if n != 4 {
                return Err(bad());
            }
            (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)])
        }
        RootType::G => {
            if n != 2 {
                return Err(bad());
            }
            (vec![2, 6], vec![(0, 1, -3)])
        }
    })
}

/// Construct the root system of the given type and rank.
///
/// ```
/// use modlie::roots::{build_root_system, RootType};
/// assert_eq!(build_root_system(RootType::G, 2).unwrap().roots.len(), 12);
/// assert_eq!(build_root_system(RootType::E, 8).unwrap().roots.len(), 240);
/// ```
pub fn build_root_system(ty: RootType, rank: usize) -> Result<RootSystem> {
    let (norms, edges) = dynkin(ty, rank)?;
    let n = rank;
    let mut gram = vec![vec![0i32; n]; n];
    for i in 0..n {
        gram[i][i] = norms[i];
    }
    for &(i, j, v) in &edges {
        gram[i][j] = v;
        gram[j][i] = v;
    }
    // string algorithm: β + α_i is a root iff q > 0, with
    // q = p - <β, α_i^∨> and p the length of the downward α_i-string
    let mut positive: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: BTreeMap<Vec<i32>, ()> = positive.iter().map(|v| (v.clone(), ())).collect();
    let mut layer = positive.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i32>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..n).map(|j| beta[j] * gram[j][i]).sum::<i32>() * 2 / gram[i][i];
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        positive.extend(next.iter().cloned());
        layer = next;
    }
    positive.sort_by(|a, b| {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i32>>()));
    let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    Ok(RootSystem {
        ty,
        rank,
        gram,
        positive_roots: positive,
        roots,
        index,
    })
}

impl RootSystem {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index into `roots`, if `v` is a root.
    pub fn root_index(&self, v: &[i32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i32]) -> bool {
        self.index.contains_key(v)
    }

    /// `(a, b)` for vectors in simple-root coordinates.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `<β, α^∨> = 2(β, α)/(α, α)`.
    pub fn pairing(&self, beta: &[i32], alpha: &[i32]) -> i32 {
        2 * self.inner(beta, alpha) / self.inner(alpha, alpha)
    }

    /// Index of `roots[a] + roots[b]` when that sum is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i32> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.root_index(&s)
    }

    /// Index of `-roots[a]`.
    pub fn negative_index(&self, a: usize) -> usize {
        let n = self.num_positive();
        if a < n {
            a + n
        } else {
            a - n
        }
    }

    pub fn height(&self, a: usize) -> i32 {
        self.roots[a].iter().sum()
    }

    /// Covering relation on positive roots: `(i, j)` with `β_j = β_i + α_k`.
    pub fn poset_covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, beta) in self.positive_roots.iter().enumerate() {
            for k in 0..self.rank {
                let mut up = beta.clone();
                up[k] += 1;
                if let Some(j) = self.root_index(&up) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cartan matrix entries `<α_i, α_j^∨>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| 2 * self.gram[i][j] / self.gram[j][j]).collect())
            .collect()
    }

    /// Dimension of the corresponding simple Lie algebra.
    pub fn lie_dimension(&self) -> usize {
        self.roots.len() + self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: closure of the simple roots under simple reflections.
    fn reflection_closure(r: &RootSystem) -> usize {
        let mut seen: std::collections::BTreeSet<Vec<i32>> = std::collections::BTreeSet::new();
        let mut stack: Vec<Vec<i32>> = (0..r.rank)
            .map(|i| {
                let mut v = vec![0; r.rank];
                v[i] = 1;
                v
            })
            .collect();
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for i in 0..r.rank {
                let mut a = vec![0; r.rank];
                a[i] = 1;
                let c = r.pairing(&v, &a);
                let mut w = v.clone();
                w[i] -= c;
                if !seen.contains(&w) {
                    stack.push(w);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn root_counts() {
        let cases = [
            (RootType::A, 1, 2),
            (RootType::A, 4, 20),
            (RootType::B, 3, 18),
            (RootType::C, 4, 32),
            (RootType::D, 5, 40),
            (RootType::G, 2, 12),
            (RootType::F, 4, 48),
            (RootType::E, 6, 72),
            (RootType::E, 7, 126),
            (RootType::E, 8, 240),
        ];
        for (t, n, count) in cases {
            let r = build_root_system(t, n).unwrap();
            assert_eq!(r.roots.len(), count, "{}{}", t, n);
            assert_eq!(reflection_closure(&r), count, "{}{}", t, n);
            for i in 0..r.roots.len() {
                assert_eq!(r.negative_index(r.negative_index(i)), i);
            }
        }
    }

    #[test]
    fn simple_roots_first_and_highest_root_last() {
        let r = build_root_system(RootType::E, 8).unwrap();
        for i in 0..8 {
            assert_eq!(r.height(i), 1);
        }
        assert_eq!(r.positive_roots.last().unwrap(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let g = build_root_system(RootType::G, 2).unwrap();
        assert_eq!(g.positive_roots.last().unwrap(), &vec![3, 2]);
        assert_eq!(g.cartan_matrix(), vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn invalid_types() {
        assert!(build_root_system(RootType::E, 5).is_err());
        assert!(build_root_system(RootType::G, 3).is_err());
        assert!(build_root_system(RootType::A, 0).is_err());
        assert_eq!(parse_type_label("E7").unwrap(), (RootType::E, 7));
        assert!(parse_type_label("X2").is_err());
    }
}
