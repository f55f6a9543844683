//! Classifying invariant Lie brackets on a module.
//!
//! The invariant alternating products `Λ²M → M` form the space
//! `Hom_H(Λ²M, M)`; writing a generic product as `Σ a_i φ_i`, the Jacobi
//! identity becomes a homogeneous quadratic system in the `a_i`. Its
//! solutions are filtered for simplicity and reduced modulo a sample of the
//! normalizer of `H`.

mod classify;
mod filter;
mod orbit;
mod poly;
pub mod seeded;
mod solve;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfla::{Elem, Matrix};
use crate::liealg::StructureConstants;
use crate::modrep::{ext2, hom_space, Representation};

pub use classify::{
    classify, ClassificationReport, ClassifyOptions, Representative, DEFAULT_EXPAND_LIMIT, MAX_PRODUCT_DIMENSION,
};
pub use filter::{filter_candidates, CandidateVerdict, FilterConfig, TargetSpec, Verdict};
pub use orbit::{centralizer_sample, coefficient_action, orbit_reduce, OrbitReport};
pub use poly::{reduce_span, MPoly, Monomial, QuadraticSystem};
pub use solve::{solve_system, Family, SolutionSet, SolveBudget};

/// A generic alternating product `Σ a_i φ_i` on a module.
#[derive(Debug, Clone)]
pub struct GenericBracket {
    pub module: Representation,
    /// Basis of `Hom_H(Λ²M, M)`, each `dim M × dim Λ²M`, in canonical order.
    pub basis_maps: Vec<Matrix>,
    pub parameter_names: Vec<String>,
}

impl GenericBracket {
    pub fn dimension(&self) -> usize {
        self.basis_maps.len()
    }

    /// `Σ a_i φ_i`.
    pub fn product(&self, coeffs: &[Elem]) -> Matrix {
        let d = self.module.dim();
        let mut out = Matrix::zeros(self.module.field(), d, d * d.saturating_sub(1) / 2);
        for (c, m) in coeffs.iter().zip(&self.basis_maps) {
            if *c != 0 {
                out.add_scaled(*c, m);
            }
        }
        out
    }

    /// The bracket `Σ a_i φ_i` as structure constants.
    pub fn bracket_at(&self, coeffs: &[Elem]) -> StructureConstants {
        StructureConstants::from_ext2_map(&self.product(coeffs)).expect("shape checked at construction")
    }

    /// Coefficients of a product in the basis, if it lies in the span.
    pub fn coefficients_of(&self, phi: &Matrix) -> Option<Vec<Elem>> {
        let f = self.module.field();
        if self.basis_maps.is_empty() {
            return phi.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<Elem>> = self.basis_maps.iter().map(|m| m.data().to_vec()).collect();
        let a = Matrix::from_columns(f, phi.rows() * phi.cols(), &cols);
        a.solve(phi.data())
    }
}

/// `Hom_H(Λ²M, M)` with parameters `a1..an`.
///
/// ```
/// use modlie::gfla::Field;
/// use modlie::lieproduct::alternating_product_space;
/// use modlie::modrep::Representation;
/// // trivial group on k^2: Λ² is 1-dimensional, so 2 parameters
/// let f = Field::prime(5).unwrap();
/// let b = alternating_product_space(&Representation::trivial(&f, 2, 1)).unwrap();
/// assert_eq!(b.dimension(), 2);
/// ```
pub fn alternating_product_space(m: &Representation) -> Result<GenericBracket> {
    let basis_maps = hom_space(&ext2(m), m)?;
    let parameter_names = (1..=basis_maps.len()).map(|i| format!("a{}", i)).collect();
    Ok(GenericBracket {
        module: m.clone(),
        basis_maps,
        parameter_names,
    })
}

/// One equation per coordinate and basis triple `i < j < k`:
/// `Σ_cyc φ(φ(e_i ∧ e_j) ∧ e_k) = 0`, expanded in the `a`'s and deduplicated.
pub fn jacobi_system(b: &GenericBracket) -> QuadraticSystem {
    let f = b.module.field().clone();
    let d = b.module.dim();
    let n = b.dimension();
    let maps: Vec<StructureConstants> = b
        .basis_maps
        .iter()
        .map(|m| StructureConstants::from_ext2_map(m).expect("shape"))
        .collect();
    let per_i: Vec<Vec<MPoly>> = (0..d)
        .into_par_iter()
        .map(|i| {
            let mut eqs = Vec::new();
            // coeff[a][b][m]: coefficient of a_a a_b in coordinate m
            let mut coeff = vec![vec![vec![0 as Elem; d]; n]; n];
            for j in i + 1..d {
                for k in j + 1..d {
                    for row in coeff.iter_mut() {
                        for v in row.iter_mut() {
                            v.iter_mut().for_each(|x| *x = 0);
                        }
                    }
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (bi, inner) in maps.iter().enumerate() {
                            for &(l, s) in inner.basis_bracket(x, y) {
                                for (ai, outer) in maps.iter().enumerate() {
                                    let slot = &mut coeff[ai.min(bi)][ai.max(bi)];
                                    for &(m, t) in outer.basis_bracket(l, z) {
                                        slot[m] = f.add(slot[m], f.mul(s, t));
                                    }
                                }
                            }
                        }
                    }
                    for m in 0..d {
                        let mut p = MPoly::zero();
                        for a in 0..n {
                            for bb in a..n {
                                p.add_term(&f, vec![a, bb], coeff[a][bb][m]);
                            }
                        }
                        if !p.is_zero() {
                            eqs.push(p);
                        }
                    }
                }
            }
            eqs
        })
        .collect();
    let mut s = QuadraticSystem::new(&f, b.parameter_names.clone());
    let triples = if d >= 3 { d * (d - 1) * (d - 2) / 6 } else { 0 };
    s.extend(per_i.into_iter().flatten());
    // zero polynomials were skipped above; count every (triple, coordinate)
    s.raw_count = triples * d;
    s
}

/// Check that every basis map is an intertwiner `Λ²M → M`.
pub fn verify_generic_bracket(b: &GenericBracket) -> Result<()> {
    let l2 = ext2(&b.module);
    for (i, m) in b.basis_maps.iter().enumerate() {
        if !Representation::is_intertwiner(m, &l2, &b.module) {
            return Err(Error::Invalid(format!("basis map {} is not an intertwiner", i)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;
    use crate::liealg::jacobi_residual;

    #[test]
    fn single_lie_map_gives_empty_system() {
        let f = Field::prime(7).unwrap();
        let l = crate::liealg::chevalley_algebra(crate::roots::RootType::A, 1, &f).unwrap().algebra;
        let b = GenericBracket {
            module: Representation::trivial(&f, 3, 1),
            basis_maps: vec![l.to_ext2_map()],
            parameter_names: vec!["a1".into()],
        };
        assert!(jacobi_system(&b).equations.is_empty());
    }

    #[test]
    fn non_lie_map_gives_a_squared() {
        let f = Field::prime(7).unwrap();
        // [e0,e1] = e2, [e0,e2] = e0: the Jacobi sum on (e0,e1,e2) is -e2
        let mut l = StructureConstants::zero(&f, 3);
        l.set(0, 1, &[0, 0, 1]);
        l.set(0, 2, &[1, 0, 0]);
        assert!(!jacobi_residual(&l).is_lie);
        let b = GenericBracket {
            module: Representation::trivial(&f, 3, 1),
            basis_maps: vec![l.to_ext2_map()],
            parameter_names: vec!["a1".into()],
        };
        let s = jacobi_system(&b);
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.equations[0].terms.keys().collect::<Vec<_>>(), vec![&vec![0, 0]]);
    }

    #[test]
    fn substituting_a_known_bracket_gives_zero() {
        let f = Field::prime(5).unwrap();
        // trivial group on k^3: every alternating product is allowed
        let b = alternating_product_space(&Representation::trivial(&f, 3, 1)).unwrap();
        assert_eq!(b.dimension(), 9);
        verify_generic_bracket(&b).unwrap();
        let s = jacobi_system(&b);
        let sl2 = crate::liealg::chevalley_algebra(crate::roots::RootType::A, 1, &f).unwrap().algebra;
        let c = b.coefficients_of(&sl2.to_ext2_map()).unwrap();
        assert!(s.is_satisfied(&c));
        assert_eq!(b.bracket_at(&c), sl2);
    }
}
