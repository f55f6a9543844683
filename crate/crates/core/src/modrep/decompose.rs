//! Direct-sum decomposition via endomorphisms.
//!
//! An endomorphism `x` of `M` whose characteristic polynomial has two
//! distinct irreducible factors splits `M` into the generalized eigenspaces
//! `ker f_i(x)^{e_i}`, each of which is a submodule because `x` commutes with
//! the group. Endomorphisms are drawn from a seeded sample of the
//! endomorphism ring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, Representation};
use crate::error::Result;
use crate::gfla::{charpoly, Elem, Matrix, Subspace};

const SAMPLES: usize = 64;

/// A summand of a decomposition, with its basis in the coordinates of the
/// original module.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Representation,
    pub basis: Vec<Vec<Elem>>,
}

fn split_once(m: &Representation, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Subspace>>> {
    let f = m.field();
    let ends = hom_space(m, m)?;
    if ends.len() <= 1 {
        return Ok(None);
    }
    let mut candidates: Vec<Matrix> = ends.clone();
    for _ in 0..SAMPLES {
        let mut x = Matrix::zeros(f, m.dim(), m.dim());
        for e in &ends {
            x.add_scaled(rng.gen_range(0..f.order()), e);
        }
        candidates.push(x);
    }
    for x in candidates {
        let factors = charpoly(&x).factor(f);
        if factors.len() < 2 {
            continue;
        }
        let parts = factors
            .iter()
            .map(|(g, e)| {
                let mut h = crate::gfla::Poly::one();
                for _ in 0..*e {
                    h = h.mul(f, g);
                }
                Subspace::span(f, m.dim(), &h.eval_matrix(&x).nullspace())
            })
            .collect();
        return Ok(Some(parts));
    }
    Ok(None)
}

/// Decompose into summands that no sampled endomorphism splits further.
///
/// Summands are returned in a deterministic order; the bases of all
/// summands together form a basis of the module.
pub fn decompose(m: &Representation) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0_u64 ^ m.dim() as u64);
    let d = m.dim();
    let identity: Vec<Vec<Elem>> = (0..d)
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .collect();
    let mut stack = vec![Summand {
        module: m.clone(),
        basis: identity,
    }];
    let mut done = Vec::new();
    while let Some(s) = stack.pop() {
        if s.module.dim() <= 1 {
            done.push(s);
            continue;
        }
        match split_once(&s.module, &mut rng)? {
            None => done.push(s),
            Some(parts) => {
                for sub in parts.into_iter().rev() {
                    let module = s.module.submodule(&sub);
                    let basis = sub
                        .basis()
                        .iter()
                        .map(|c| {
                            let mut v = vec![0; d];
                            for (k, &x) in c.iter().enumerate() {
                                m.field().axpy(&mut v, x, &s.basis[k]);
                            }
                            v
                        })
                        .collect();
                    stack.push(Summand { module, basis });
                }
            }
        }
    }
    done.sort_by(|a, b| a.module.dim().cmp(&b.module.dim()).then(a.basis.cmp(&b.basis)));
    Ok(done)
}

/// Whether a sampled endomorphism splits the module.
pub fn is_decomposable(m: &Representation) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0_u64 ^ m.dim() as u64);
    Ok(split_once(m, &mut rng)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;
    use crate::modrep::groups;

    #[test]
    fn regular_s3_in_coprime_characteristic() {
        let f = Field::prime(5).unwrap();
        let m = groups::regular_module(&f, &groups::symmetric_gens(3), "reg");
        let parts = decompose(&m).unwrap();
        let dims: Vec<usize> = parts.iter().map(|s| s.module.dim()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2]);
        let all: Vec<Vec<u32>> = parts.iter().flat_map(|s| s.basis.clone()).collect();
        assert_eq!(Subspace::span(&f, 6, &all).dim(), 6);
        for s in &parts {
            assert!(m.is_invariant_subspace(&s.basis));
        }
    }

    #[test]
    fn regular_c2_in_characteristic_two_is_indecomposable() {
        let f = Field::prime(2).unwrap();
        let m = groups::cyclic_regular(&f, 2);
        assert!(!is_decomposable(&m).unwrap());
        assert_eq!(decompose(&m).unwrap().len(), 1);
    }
}
