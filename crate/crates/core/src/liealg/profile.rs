//! Structural invariants, subalgebra generation and abelian witnesses.

use serde::{Deserialize, Serialize};

use super::{LieBracket, StructureConstants};
use crate::gfla::{Elem, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraProfile {
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub killing_rank: usize,
    pub is_abelian: bool,
    /// Smallest `c` with the `(c+1)`-th lower central term zero.
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
}

/// Span of `[a, b]` over `a ∈ left`, `b ∈ right`.
fn bracket_span<B: LieBracket>(l: &B, left: &[Vec<Elem>], right: &[Vec<Elem>], symmetric: bool) -> Subspace {
    let mut s = Subspace::zero(l.field(), l.dim());
    for (i, a) in left.iter().enumerate() {
        let start = if symmetric { i + 1 } else { 0 };
        for b in &right[start..] {
            if s.dim() == l.dim() {
                return s;
            }
            s.insert(&l.bracket(a, b));
        }
    }
    s
}

/// Terms of a series until it stabilises; the last entry repeats the limit.
fn series<B: LieBracket>(l: &B, start: &[Vec<Elem>], derived: bool) -> Vec<Subspace> {
    let mut out = vec![Subspace::span(l.field(), l.dim(), start)];
    loop {
        let cur = out.last().unwrap();
        let next = if derived {
            bracket_span(l, cur.basis(), cur.basis(), true)
        } else {
            bracket_span(l, start, cur.basis(), false)
        };
        let stable = next.dim() == cur.dim();
        out.push(next);
        if stable || out.last().unwrap().dim() == 0 {
            return out;
        }
    }
}

fn killing_matrix(l: &StructureConstants) -> Matrix {
    let d = l.dim();
    let f = l.field();
    // dense ad matrices: ad[i][m * d + n] = c_in^m
    let ad: Vec<Vec<Elem>> = (0..d)
        .map(|i| {
            let mut a = vec![0; d * d];
            for n in 0..d {
                for &(m, c) in l.basis_bracket(i, n) {
                    a[m * d + n] = c;
                }
            }
            a
        })
        .collect();
    let mut k = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in i..d {
            // tr(ad_i ad_j) = Σ_{n,m} c_in^m c_jm^n
            let mut s = 0;
            for n in 0..d {
                for &(m, c) in l.basis_bracket(i, n) {
                    let t = ad[j][n * d + m];
                    if t != 0 {
                        s = f.add(s, f.mul(c, t));
                    }
                }
            }
            k.set(i, j, s);
            k.set(j, i, s);
        }
    }
    k
}

/// Rank of the Killing form `κ(x, y) = tr(ad x ad y)`.
pub fn killing_rank(l: &StructureConstants) -> usize {
    killing_matrix(l).rank()
}

/// `{x ∈ span(sub) : [x, a] = 0 for all a ∈ others}` as vectors.
pub fn centralizer_in<B: LieBracket>(l: &B, sub: &[Vec<Elem>], others: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let f = l.field();
    let d = l.dim();
    let mut current: Vec<Vec<Elem>> = sub.to_vec();
    for a in others {
        if current.is_empty() {
            break;
        }
        let images: Vec<Vec<Elem>> = current.iter().map(|x| l.bracket(x, a)).collect();
        if images.iter().all(|v| v.iter().all(|&c| c == 0)) {
            continue;
        }
        let m = Matrix::from_columns(f, d, &images);
        let kernel = m.nullspace();
        current = kernel
            .iter()
            .map(|coeffs| {
                let mut v = vec![0; d];
                for (c, x) in coeffs.iter().zip(&current) {
                    if *c != 0 {
                        f.axpy(&mut v, *c, x);
                    }
                }
                v
            })
            .collect();
    }
    current
}

/// Center, derived algebra, Killing rank and series.
///
/// ```
/// use modlie::gfla::Field;
/// use modlie::liealg::{algebra_profile, StructureConstants};
/// let f = Field::prime(7).unwrap();
/// let p = algebra_profile(&StructureConstants::zero(&f, 4));
/// assert!(p.is_abelian && p.solvable);
/// assert_eq!((p.center_dim, p.derived_dim, p.killing_rank), (4, 0, 0));
/// ```
pub fn algebra_profile(l: &StructureConstants) -> AlgebraProfile {
    let d = l.dim();
    let full: Vec<Vec<Elem>> = Matrix::identity(l.field(), d).row_vectors();
    let center_dim = centralizer_in(l, &full, &full).len();
    let derived = series(l, &full, true);
    let lower = series(l, &full, false);
    let derived_dim = derived[1].dim();
    let lower_dims: Vec<usize> = lower.iter().map(|s| s.dim()).collect();
    let nilpotency_class = if *lower_dims.last().unwrap() == 0 {
        Some(lower_dims.len() - 1)
    } else {
        None
    };
    AlgebraProfile {
        dim: d,
        center_dim,
        derived_dim,
        killing_rank: killing_rank(l),
        is_abelian: derived_dim == 0,
        nilpotency_class,
        solvable: derived.last().unwrap().dim() == 0,
        derived_series: derived.iter().map(|s| s.dim()).collect(),
        lower_central_series: lower_dims,
    }
}

/// Outcome of closing a seed set under the bracket.
#[derive(Debug, Clone)]
pub enum Generated {
    Subalgebra(Subspace),
    /// The span grew beyond the cap; `dim` is the first dimension above it.
    CapExceeded { dim: usize },
}

impl Generated {
    pub fn dim(&self) -> usize {
        match self {
            Generated::Subalgebra(s) => s.dim(),
            Generated::CapExceeded { dim } => *dim,
        }
    }
}

/// The subalgebra generated by `seeds`, stopping once its dimension
/// exceeds `cap`.
pub fn subalgebra_generate<B: LieBracket>(l: &B, seeds: &[Vec<Elem>], cap: usize) -> Generated {
    let mut span = Subspace::zero(l.field(), l.dim());
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            gens.push(s.clone());
        }
    }
    if span.dim() > cap {
        return Generated::CapExceeded { dim: span.dim() };
    }
    let mut k = 0;
    while k < gens.len() {
        for i in 0..k {
            let b = l.bracket(&gens[i], &gens[k]);
            if span.insert(&b) {
                gens.push(b);
                if span.dim() > cap {
                    return Generated::CapExceeded { dim: span.dim() };
                }
            }
        }
        k += 1;
    }
    Generated::Subalgebra(span)
}

/// Whether all brackets among `basis` vanish.
pub fn is_abelian_subspace<B: LieBracket>(l: &B, basis: &[Vec<Elem>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if l.bracket(&basis[i], &basis[j]).iter().any(|&x| x != 0) {
                return false;
            }
        }
    }
    true
}

/// An explicit abelian subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianWitness {
    pub dim: usize,
    pub basis: Vec<Vec<Elem>>,
    /// Where the greedy extension started.
    pub origin: String,
}

/// Extend an abelian set inside `sub` greedily through centralizers.
fn extend_abelian<B: LieBracket>(l: &B, sub: &[Vec<Elem>], start: &[Vec<Elem>], stop_above: usize) -> Vec<Vec<Elem>> {
    let mut span = Subspace::zero(l.field(), l.dim());
    let mut basis = Vec::new();
    for v in start {
        if span.insert(v) {
            basis.push(v.clone());
        }
    }
    let mut cent = centralizer_in(l, sub, &basis);
    while basis.len() <= stop_above {
        let Some(x) = cent.iter().find(|v| !span.contains(v)).cloned() else {
            break;
        };
        span.insert(&x);
        basis.push(x.clone());
        cent = centralizer_in(l, &cent, &[x]);
    }
    basis
}

/// Search `span(sub)` for an abelian subalgebra of dimension above `bound`.
///
/// Starting points are the center, the last nonzero derived and lower
/// central terms, and single basis vectors; each is extended greedily
/// through centralizers. Sound but incomplete: `None` means no witness was
/// found, not that none exists.
pub fn largest_abelian_in<B: LieBracket>(l: &B, sub: &[Vec<Elem>], bound: usize) -> Option<AbelianWitness> {
    let best = abelian_search(l, sub, bound);
    (best.dim > bound).then_some(best)
}

/// The largest abelian witness found by the greedy search.
pub fn abelian_search<B: LieBracket>(l: &B, sub: &[Vec<Elem>], stop_above: usize) -> AbelianWitness {
    let mut starts: Vec<(String, Vec<Vec<Elem>>)> = Vec::new();
    starts.push(("center".into(), centralizer_in(l, sub, sub)));
    let derived = series(l, sub, true);
    if let Some(s) = derived.iter().rev().find(|s| s.dim() > 0) {
        starts.push(("derived series".into(), s.basis().to_vec()));
    }
    let lower = series(l, sub, false);
    if let Some(s) = lower.iter().rev().find(|s| s.dim() > 0) {
        starts.push(("lower central series".into(), s.basis().to_vec()));
    }
    for (i, v) in sub.iter().take(8).enumerate() {
        starts.push((format!("basis vector {}", i), vec![v.clone()]));
    }
    let mut best = AbelianWitness {
        dim: 0,
        basis: Vec::new(),
        origin: "empty".into(),
    };
    for (origin, start) in starts {
        if !is_abelian_subspace(l, &start) {
            continue;
        }
        let basis = extend_abelian(l, sub, &start, stop_above);
        if basis.len() > best.dim {
            best = AbelianWitness {
                dim: basis.len(),
                basis,
                origin,
            };
            if best.dim > stop_above {
                break;
            }
        }
    }
    best
}

#[cfg(test)]
pub(crate) fn abelian_witness_all(l: &StructureConstants) -> AbelianWitness {
    let full = Matrix::identity(l.field(), l.dim()).row_vectors();
    abelian_search(l, &full, usize::MAX - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;
    use crate::liealg::chevalley_algebra;
    use crate::roots::RootType;

    fn heisenberg(f: &Field) -> StructureConstants {
        let mut l = StructureConstants::zero(f, 3);
        l.set(0, 1, &[0, 0, 1]);
        l
    }

    fn unit(d: usize, i: usize) -> Vec<Elem> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn sl2_profile_and_killing_oracle() {
        let f = Field::prime(7).unwrap();
        let l = crate::liealg::tests::sl2(&f);
        let p = algebra_profile(&l);
        assert_eq!((p.center_dim, p.derived_dim, p.killing_rank), (0, 3, 3));
        assert!(!p.solvable && p.nilpotency_class.is_none());
        // direct Killing computation: κ(e,f) = 4, κ(h,h) = 8
        let k = killing_matrix(&l);
        let direct = |x: usize, y: usize| l.ad(&unit(3, x)).mul_ok(&l.ad(&unit(3, y))).trace();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k.get(i, j), direct(i, j));
            }
        }
        assert_eq!(k.get(0, 2), f.from_int(4));
        assert_eq!(k.get(1, 1), f.from_int(8));
    }

    #[test]
    fn heisenberg_witness_matches_exhaustive() {
        let f = Field::prime(3).unwrap();
        let l = heisenberg(&f);
        let p = algebra_profile(&l);
        assert_eq!(p.nilpotency_class, Some(2));
        assert_eq!(p.killing_rank, 0);
        let full: Vec<_> = (0..3).map(|i| unit(3, i)).collect();
        let w = largest_abelian_in(&l, &full, 1).unwrap();
        assert_eq!(w.dim, 2);
        assert!(is_abelian_subspace(&l, &w.basis));
        // exhaustive over all pairs of vectors in GF(3)^3
        let vecs: Vec<Vec<Elem>> = (0..27u32).map(|n| vec![n % 3, n / 3 % 3, n / 9]).collect();
        let mut best = 0;
        for a in &vecs {
            for b in &vecs {
                let s = Subspace::span(&f, 3, &[a.clone(), b.clone()]);
                if s.dim() == 2 && is_abelian_subspace(&l, s.basis()) {
                    best = 2;
                }
            }
        }
        assert_eq!(best, 2);
        assert!(largest_abelian_in(&l, &full, 2).is_none());
    }

    #[test]
    fn generation_and_cap() {
        let f = Field::prime(7).unwrap();
        let l = crate::liealg::tests::sl2(&f);
        assert_eq!(subalgebra_generate(&l, &[unit(3, 1)], 3).dim(), 1);
        let full = subalgebra_generate(&l, &[unit(3, 0), unit(3, 2)], 3);
        assert!(matches!(full, Generated::Subalgebra(ref s) if s.dim() == 3));
        assert!(matches!(
            subalgebra_generate(&l, &[unit(3, 0), unit(3, 2)], 2),
            Generated::CapExceeded { dim: 3 }
        ));
    }

    #[test]
    fn cartan_of_sl3_is_abelian() {
        let f = Field::prime(7).unwrap();
        let c = chevalley_algebra(RootType::A, 2, &f).unwrap();
        let h: Vec<Vec<Elem>> = (0..2).map(|i| unit(8, c.h_index(i))).collect();
        assert!(is_abelian_subspace(&c.algebra, &h));
        assert!(!is_abelian_subspace(&c.algebra, &(0..8).map(|i| unit(8, i)).collect::<Vec<_>>()));
        // the greedy search finds the maximal abelian dimension 2 of sl3
        assert_eq!(abelian_witness_all(&c.algebra).dim, 2);
    }
}
