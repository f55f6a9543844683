//! Round-trip scenarios: a Chevalley algebra viewed as a module for a finite
//! group of its automorphisms.
//!
//! The group is generated by a torus element acting on `e_α` by `t^{ht α}`
//! (with `t` a primitive root) and the Weyl representatives
//! `n_i = exp(ad e_i) exp(ad -f_i) exp(ad e_i)`. The Chevalley bracket is then
//! an invariant product, so classifying the module must find it again.

use std::collections::HashSet;

use super::{alternating_product_space, centralizer_sample, GenericBracket, TargetSpec};
use crate::error::{Error, Result};
use crate::gfla::{Elem, Field, Matrix};
use crate::liealg::{chevalley_algebra, ChevalleyBasis, StructureConstants};
use crate::modrep::groups::enumerate_matrix_group;
use crate::modrep::Representation;
use crate::roots::RootType;

const CENTRALIZER_SAMPLE: usize = 4;
const GROUP_LIMIT: usize = 100_000;

/// `exp(ad x) = Σ (ad x)^k / k!`, defined when `(ad x)^k = 0` for some `k < p`.
pub fn exp_ad(l: &StructureConstants, x: &[Elem]) -> Result<Matrix> {
    let f = l.field();
    let a = l.ad(x);
    let mut out = Matrix::identity(f, l.dim());
    let mut term = Matrix::identity(f, l.dim());
    for k in 1..f.p() as i64 {
        term = term.mul_ok(&a).scale(f.inv(f.from_int(k)).expect("k < p"));
        if term.is_zero() {
            return Ok(out);
        }
        out.add_scaled(1, &term);
    }
    Err(Error::NotNilpotent)
}

#[derive(Debug, Clone)]
pub struct SeededScenario {
    pub chevalley: ChevalleyBasis,
    /// `L` as a module for the automorphism group.
    pub module: Representation,
    /// Sampled normalizer elements: a generating scalar and random units of
    /// `End_H(L)`.
    pub normalizer: Vec<Matrix>,
    pub target: TargetSpec,
}

impl SeededScenario {
    pub fn generic_bracket(&self) -> Result<GenericBracket> {
        alternating_product_space(&self.module)
    }

    /// Coefficients of the Chevalley bracket in the basis of `Hom_H(Λ²L, L)`.
    pub fn seeded_point(&self, b: &GenericBracket) -> Option<Vec<Elem>> {
        b.coefficients_of(&self.chevalley.algebra.to_ext2_map())
    }
}

/// Diagonal elements that normalize the image of `H`, among two kinds of
/// candidates: adjoint torus elements `e_α ↦ Π c_i^{a_i} e_α` with each
/// `c_i ∈ {1, t}`, and `e_α ↦ t^{ht α} e_α` on positive roots only.
fn normalizing_diagonals(cb: &ChevalleyBasis, m: &Representation) -> Result<Vec<Matrix>> {
    let f = m.field();
    let r = &cb.roots;
    let group = enumerate_matrix_group(m, GROUP_LIMIT)
        .ok_or_else(|| Error::Invalid(format!("automorphism group has more than {} elements", GROUP_LIMIT)))?;
    let elements: HashSet<&[Elem]> = group.iter().map(|g| g.data()).collect();
    let t = f.primitive_element();
    let diagonal = |exponent: &dyn Fn(usize) -> i64| {
        let mut s = Matrix::identity(f, m.dim());
        for a in 0..r.roots.len() {
            let i = cb.root_index(a);
            s.set(i, i, f.pow(t, exponent(a).rem_euclid(f.order() as i64 - 1) as u64));
        }
        s
    };
    let mut candidates = Vec::new();
    for mask in 1u32..(1 << r.rank) {
        candidates.push(diagonal(&|a| {
            (0..r.rank).filter(|i| mask >> i & 1 == 1).map(|i| r.roots[a][i] as i64).sum()
        }));
    }
    candidates.push(diagonal(&|a| if a < r.num_positive() { r.height(a) as i64 } else { 0 }));
    let mut out = Vec::new();
    for s in candidates {
        let sinv = s.inverse()?;
        if m.generators().iter().all(|g| elements.contains(s.mul_ok(g).mul_ok(&sinv).data())) {
            out.push(s);
        }
    }
    Ok(out)
}

/// The seeded scenario for `ty_rank` over GF(p).
pub fn seeded_scenario(ty: RootType, rank: usize, p: u32) -> Result<SeededScenario> {
    let f = Field::prime(p)?;
    let cb = chevalley_algebra(ty, rank, &f)?;
    let l = &cb.algebra;
    let d = l.dim();
    let r = &cb.roots;
    let t = f.primitive_element();
    let mut torus = Matrix::identity(&f, d);
    for a in 0..r.roots.len() {
        let h = r.height(a) as i64;
        let v = f.pow(t, h.rem_euclid(f.order() as i64 - 1) as u64);
        let i = cb.root_index(a);
        torus.set(i, i, v);
    }
    let mut gens = vec![torus];
    for i in 0..r.rank {
        let mut e = vec![0; d];
        e[cb.root_index(i)] = 1;
        let mut minus_f = vec![0; d];
        minus_f[cb.root_index(r.negative_index(i))] = f.neg(1);
        let xe = exp_ad(l, &e)?;
        gens.push(xe.mul_ok(&exp_ad(l, &minus_f)?).mul_ok(&xe));
    }
    let module = Representation::new(&f, d, gens, &format!("{} adjoint", cb.label()))?;
    let mut normalizer = vec![Matrix::identity(&f, d).scale(t)];
    normalizer.extend(centralizer_sample(&module, CENTRALIZER_SAMPLE, 0x5eed)?);
    normalizer.extend(normalizing_diagonals(&cb, &module)?);
    let target = TargetSpec { label: cb.label(), p };
    Ok(SeededScenario {
        chevalley: cb,
        module,
        normalizer,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieBracket;

    fn is_automorphism(l: &StructureConstants, g: &Matrix) -> bool {
        let d = l.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let lhs = g.mul_vec(&l.basis_bracket_vec(i, j));
                let rhs = l.bracket(&g.column(i), &g.column(j));
                lhs == rhs
            })
        })
    }

    #[test]
    fn generators_are_automorphisms() {
        for (ty, n) in [(RootType::A, 1), (RootType::A, 2), (RootType::G, 2)] {
            let s = seeded_scenario(ty, n, 7).unwrap();
            for g in s.module.generators() {
                assert!(is_automorphism(&s.chevalley.algebra, g));
            }
        }
    }

    #[test]
    fn weyl_representative_of_sl2_swaps_e_and_f() {
        let s = seeded_scenario(RootType::A, 1, 7).unwrap();
        let f = Field::prime(7).unwrap();
        // basis e, h, f: n e = -f, n f = -e, n h = -h
        assert_eq!(s.module.generator(1), &Matrix::from_ints(&f, &[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]));
    }

    #[test]
    fn seeded_point_exists() {
        let s = seeded_scenario(RootType::A, 2, 7).unwrap();
        let b = s.generic_bracket().unwrap();
        assert!(s.seeded_point(&b).is_some());
    }

    fn round_trip(ty: RootType, n: usize, p: u32) {
        use crate::lieproduct::{classify, ClassifyOptions, SolveBudget};
        let s = seeded_scenario(ty, n, p).unwrap();
        let b = s.generic_bracket().unwrap();
        let seed = s.seeded_point(&b).unwrap();
        let opts = ClassifyOptions {
            target: Some(s.target.clone()),
            budget: SolveBudget {
                projective: true,
                ..SolveBudget::default()
            },
            ..ClassifyOptions::default()
        };
        let r = classify(&s.module, &s.normalizer, &opts).unwrap();
        assert!(r.exhausted);
        let want = crate::lieproduct::SolutionSet::normalize(s.module.field(), &seed);
        assert_eq!(r.representatives.len(), 1);
        assert!(r.representatives[0].members.contains(&want));
    }

    #[test]
    fn rank_one_and_two_round_trips() {
        round_trip(RootType::A, 1, 7);
        round_trip(RootType::A, 2, 7);
    }
}
