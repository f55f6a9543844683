//! Orbits of solutions under a finite sample of the normalizer.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GenericBracket, SolutionSet};
use crate::error::{Error, Result};
use crate::gfla::{Elem, Field, Matrix};
use crate::modrep::{ext2, hom_space, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_ORBIT: usize = 100_000;

/// The matrix `C` with `a ↦ C a` induced by `φ ↦ g ∘ φ ∘ Λ²(g⁻¹)`.
///
/// `element` only labels the error when `g` does not preserve the space.
pub fn coefficient_action(b: &GenericBracket, g: &Matrix, element: usize) -> Result<Matrix> {
    let f = b.module.field();
    let d = b.module.dim();
    if g.rows() != d || g.cols() != d {
        return Err(Error::DimensionMismatch(format!("normalizer element {} is not {}x{}", element, d, d)));
    }
    let ginv = g.inverse()?;
    let l2 = ext2(&Representation::new(f, d, vec![ginv], "g")?).generator(0).clone();
    let n = b.dimension();
    let mut cols = Vec::with_capacity(n);
    for (i, phi) in b.basis_maps.iter().enumerate() {
        let moved = g.mul_ok(phi).mul_ok(&l2);
        match b.coefficients_of(&moved) {
            Some(c) => cols.push(c),
            None => return Err(Error::NotNormalizing { element, map: i }),
        }
    }
    Ok(Matrix::from_columns(f, n, &cols))
}

/// `count` invertible elements of `End_H(M)`, drawn from a seeded generator.
///
/// Units of `End_H(M)` centralize the image of `H`, so they normalize it.
pub fn centralizer_sample(m: &Representation, count: usize, seed: u64) -> Result<Vec<Matrix>> {
    let f = m.field();
    let basis = hom_space(m, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 64 * count.max(1) {
        tries += 1;
        let mut g = Matrix::zeros(f, m.dim(), m.dim());
        for b in &basis {
            g.add_scaled(f.random(&mut rng), b);
        }
        if g.is_invertible() && !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitReport {
    /// Lexicographically least candidate of each orbit.
    pub representatives: Vec<Vec<Elem>>,
    /// For each input candidate, the index of its representative.
    pub assignment: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    /// False when some orbit exceeded the enumeration limit.
    pub complete: bool,
}

fn normal(f: &Field, v: Vec<Elem>, projective: bool) -> Vec<Elem> {
    if projective {
        SolutionSet::normalize(f, &v)
    } else {
        v
    }
}

/// Merge candidates lying in one orbit of the group generated by `actions`.
pub fn orbit_reduce(f: &Field, candidates: &[Vec<Elem>], actions: &[Matrix], projective: bool) -> OrbitReport {
    let cands: Vec<Vec<Elem>> = candidates.iter().map(|c| normal(f, c.clone(), projective)).collect();
    let mut orbit_of: BTreeMap<Vec<Elem>, usize> = BTreeMap::new();
    let mut orbits: Vec<BTreeSet<Vec<Elem>>> = Vec::new();
    let mut complete = true;
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by(|&a, &b| cands[a].cmp(&cands[b]));
    for &i in &order {
        if orbit_of.contains_key(&cands[i]) {
            continue;
        }
        let id = orbits.len();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(cands[i].clone());
        queue.push_back(cands[i].clone());
        while let Some(v) = queue.pop_front() {
            for a in actions {
                let w = normal(f, a.mul_vec(&v), projective);
                if !seen.contains(&w) {
                    if seen.len() >= MAX_ORBIT {
                        complete = false;
                        break;
                    }
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        for v in &seen {
            orbit_of.insert(v.clone(), id);
        }
        orbits.push(seen);
    }
    let mut reps: Vec<Option<Vec<Elem>>> = vec![None; orbits.len()];
    for c in &cands {
        let id = orbit_of[c];
        if reps[id].as_ref().is_none_or(|r| c < r) {
            reps[id] = Some(c.clone());
        }
    }
    OrbitReport {
        representatives: reps.into_iter().map(|r| r.unwrap()).collect(),
        assignment: cands.iter().map(|c| orbit_of[c]).collect(),
        orbit_sizes: orbits.iter().map(|o| o.len()).collect(),
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lieproduct::alternating_product_space;

    #[test]
    fn scalars_scale_coefficients() {
        let f = Field::prime(5).unwrap();
        let m = Representation::trivial(&f, 2, 1);
        let b = alternating_product_space(&m).unwrap();
        let lam = f.from_int(2);
        let g = Matrix::identity(&f, 2).scale(lam);
        let c = coefficient_action(&b, &g, 0).unwrap();
        // φ^g(u∧v) = λ φ(λ⁻¹u ∧ λ⁻¹v) = λ⁻¹ φ(u∧v)
        assert_eq!(c, Matrix::identity(&f, 2).scale(f.inv(lam).unwrap()));
        let r = orbit_reduce(&f, &[vec![1, 0], vec![2, 0], vec![0, 1]], &[c], false);
        assert_eq!(r.representatives, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(r.assignment, vec![1, 1, 0]);
    }

    #[test]
    fn swap_of_two_constructed_solutions_merges_them() {
        let f = Field::prime(5).unwrap();
        let b = alternating_product_space(&Representation::trivial(&f, 3, 1)).unwrap();
        let sl2 = crate::liealg::chevalley_algebra(crate::roots::RootType::A, 1, &f).unwrap().algebra;
        // swapping e and f while fixing h is an involution but not an automorphism
        let g = Matrix::from_ints(&f, &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let c = coefficient_action(&b, &g, 0).unwrap();
        assert!(c.mul_ok(&c).is_identity());
        let x = b.coefficients_of(&sl2.to_ext2_map()).unwrap();
        let y = c.mul_vec(&x);
        assert_ne!(x, y);
        let moved = g.mul_ok(&sl2.to_ext2_map());
        assert!(crate::liealg::jacobi_residual(&b.bracket_at(&y)).is_lie);
        assert!(!moved.is_zero());
        let r = orbit_reduce(&f, &[x.clone(), y.clone()], &[c], false);
        assert_eq!(r.representatives, vec![x.min(y)]);
        assert_eq!(r.orbit_sizes, vec![2]);
    }

    #[test]
    fn centralizer_sample_commutes_with_generators() {
        let f = Field::prime(7).unwrap();
        let m = crate::modrep::groups::cyclic_regular(&f, 3);
        let s = centralizer_sample(&m, 4, 1).unwrap();
        assert_eq!(s.len(), 4);
        for g in &s {
            assert_eq!(g.mul_ok(m.generator(0)), m.generator(0).mul_ok(g));
        }
    }

    #[test]
    fn identity_action_changes_nothing() {
        let f = Field::prime(3).unwrap();
        let cands = vec![vec![1, 2], vec![2, 1]];
        let r = orbit_reduce(&f, &cands, &[Matrix::identity(&f, 2)], false);
        assert_eq!(r.representatives, cands);
    }

    #[test]
    fn non_normalizing_element_is_named() {
        let f = Field::prime(5).unwrap();
        // C2 swapping the two coordinates of k^2
        let s = Matrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]);
        let m = Representation::new(&f, 2, vec![s], "swap").unwrap();
        let b = alternating_product_space(&m).unwrap();
        assert_eq!(b.dimension(), 1);
        let g = Matrix::from_ints(&f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(
            coefficient_action(&b, &g, 3).unwrap_err(),
            Error::NotNormalizing { element: 3, map: 0 }
        );
    }
}
