//! Small permutation groups and the modules they give, used as fixtures
//! and as building blocks for larger constructions.

use std::collections::{HashMap, HashSet};

use super::Representation;
use crate::gfla::{Field, Matrix};

/// A permutation of `0..n`, stored as its image list.
pub type Perm = Vec<usize>;

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// Permutation from disjoint cycles on `0..n`.
pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
    let mut p = identity_perm(n);
    for c in cycles {
        for (i, &a) in c.iter().enumerate() {
            p[a] = c[(i + 1) % c.len()];
        }
    }
    p
}

/// Permutation matrix sending `e_i` to `e_{p(i)}`.
pub fn permutation_matrix(field: &Field, p: &Perm) -> Matrix {
    let n = p.len();
    let mut m = Matrix::zeros(field, n, n);
    for (i, &j) in p.iter().enumerate() {
        m.set(j, i, 1);
    }
    m
}

pub fn permutation_module(field: &Field, gens: &[Perm], label: &str) -> Representation {
    let n = gens.first().map_or(0, |g| g.len());
    let mats = gens.iter().map(|g| permutation_matrix(field, g)).collect();
    Representation::new_unchecked(field, n, mats, label)
}

/// All elements of the group generated by `gens`, identity first, in BFS order.
pub fn enumerate_perm_group(gens: &[Perm]) -> Vec<Perm> {
    let n = gens.first().map_or(0, |g| g.len());
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = vec![identity_perm(n)];
    seen.insert(out[0].clone());
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = compose(g, &out[i]);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

/// The left regular module of the permutation group generated by `gens`.
pub fn regular_module(field: &Field, gens: &[Perm], label: &str) -> Representation {
    let elements = enumerate_perm_group(gens);
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let regular: Vec<Perm> = gens
        .iter()
        .map(|g| elements.iter().map(|h| index[&compose(g, h)]).collect())
        .collect();
    permutation_module(field, &regular, label)
}

pub fn cyclic_gens(n: usize) -> Vec<Perm> {
    vec![(0..n).map(|i| (i + 1) % n).collect()]
}

pub fn symmetric_gens(n: usize) -> Vec<Perm> {
    vec![from_cycles(n, &[&[0, 1]]), (0..n).map(|i| (i + 1) % n).collect()]
}

pub fn alternating4_gens() -> Vec<Perm> {
    vec![from_cycles(4, &[&[0, 1, 2]]), from_cycles(4, &[&[0, 1], &[2, 3]])]
}

/// The regular module of the cyclic group of order `n`.
pub fn cyclic_regular(field: &Field, n: usize) -> Representation {
    regular_module(field, &cyclic_gens(n), &format!("F[C{}]", n))
}

/// All elements of the matrix group generated by the representation's
/// generators, or `None` if there are more than `limit`.
pub fn enumerate_matrix_group(rep: &Representation, limit: usize) -> Option<Vec<Matrix>> {
    let id = Matrix::identity(rep.field(), rep.dim());
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.data().to_vec());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in rep.generators() {
            let h = g.mul_ok(&out[i]);
            if seen.insert(h.data().to_vec()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(h);
            }
        }
        i += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_perm_group(&symmetric_gens(3)).len(), 6);
        assert_eq!(enumerate_perm_group(&alternating4_gens()).len(), 12);
        assert_eq!(enumerate_perm_group(&cyclic_gens(5)).len(), 5);
    }

    #[test]
    fn regular_module_matrix_group() {
        let f = Field::prime(5).unwrap();
        let m = regular_module(&f, &symmetric_gens(3), "reg");
        assert_eq!(m.dim(), 6);
        assert_eq!(enumerate_matrix_group(&m, 100).unwrap().len(), 6);
    }
}
