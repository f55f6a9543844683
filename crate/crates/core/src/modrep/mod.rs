//! Matrix representations of finitely generated groups and the module
//! operations built on them: Hom spaces, derived modules, spinning,
//! composition factors and invariant bilinear forms.

mod decompose;
mod derived;
mod forms;
pub mod groups;
mod hom;
pub mod io;
mod meataxe;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gfla::{Elem, Field, Matrix, Subspace};

pub use decompose::{decompose, is_decomposable, Summand};
pub use derived::{
    derived_module, dual, ext2, ext2_index, ext2_pairs, sym2, sym2_index, sym2_pairs, tensor,
    DerivedKind,
};
pub use forms::{
    form_radical, form_uniqueness_verdict, invariant_forms, is_alternating, is_invariant_form,
    BilinearFormSpace, DualityType, FactorReport, FormKind, UniquenessVerdict,
};
pub use hom::{hom_space, hom_space_dense};
pub use meataxe::{
    chop, factor_shape, find_submodule, is_irreducible, isomorphic, Factor, Irreducibility,
};

/// A group action by invertible matrices, one per abstract generator.
///
/// Vectors are columns: generator `g` sends `v` to `g v`.
#[derive(Clone)]
pub struct Representation {
    field: Field,
    dim: usize,
    generators: Arc<Vec<Matrix>>,
    inverses: Arc<OnceLock<Vec<Matrix>>>,
    label: String,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Representation({}, dim {}, {} generators over {})",
            self.label,
            self.dim,
            self.generators.len(),
            self.field
        )
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.generators == other.generators
    }
}

impl Representation {
    /// Build a representation, checking shapes and invertibility.
    pub fn new(field: &Field, dim: usize, generators: Vec<Matrix>, label: &str) -> Result<Representation> {
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "generator {} is over {}, expected {}",
                    i,
                    g.field(),
                    field
                )));
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {}x{}",
                    i,
                    g.rows(),
                    g.cols(),
                    dim,
                    dim
                )));
            }
        }
        let rep = Representation::new_unchecked(field, dim, generators, label);
        let inverses: Result<Vec<Matrix>> = rep
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().map_err(|_| Error::SingularGenerator { index: i }))
            .collect();
        let _ = rep.inverses.set(inverses?);
        Ok(rep)
    }

    /// Build without checks; inverses are computed on first use.
    pub(crate) fn new_unchecked(field: &Field, dim: usize, generators: Vec<Matrix>, label: &str) -> Representation {
        Representation {
            field: field.clone(),
            dim,
            generators: Arc::new(generators),
            inverses: Arc::new(OnceLock::new()),
            label: label.to_string(),
        }
    }

    /// The trivial module of dimension `dim` for a group with `gens` generators.
    pub fn trivial(field: &Field, dim: usize, gens: usize) -> Representation {
        let id = Matrix::identity(field, dim);
        Representation::new_unchecked(field, dim, vec![id; gens], "trivial")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Matrix {
        &self.generators[i]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn inverses(&self) -> &[Matrix] {
        self.inverses.get_or_init(|| {
            self.generators
                .iter()
                .map(|g| g.inverse().expect("generators are invertible"))
                .collect()
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Representation {
        self.label = label.to_string();
        self
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.num_generators() != other.num_generators() {
            return Err(Error::GeneratorCountMismatch {
                left: self.num_generators(),
                right: other.num_generators(),
            });
        }
        Ok(())
    }

    /// Matrix of a word given as signed 1-based generator indices.
    pub fn word_matrix(&self, word: &[i32]) -> Matrix {
        let mut m = Matrix::identity(&self.field, self.dim);
        for &letter in word {
            let i = letter.unsigned_abs() as usize - 1;
            let g = if letter > 0 {
                &self.generators[i]
            } else {
                &self.inverses()[i]
            };
            m = m.mul_ok(g);
        }
        m
    }

    /// Change of basis: generators become `P^{-1} g P`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Representation> {
        let pinv = p.inverse()?;
        let gens = self
            .generators
            .iter()
            .map(|g| pinv.mul_ok(g).mul_ok(p))
            .collect();
        Ok(Representation::new_unchecked(&self.field, self.dim, gens, &self.label))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let gens = self
            .generators
            .iter()
            .zip(other.generators.iter())
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Representation::new_unchecked(
            &self.field,
            self.dim + other.dim,
            gens,
            &format!("{}+{}", self.label, other.label),
        ))
    }

    /// Direct sum of a list of modules (all with the same generator count).
    pub fn direct_sum_all(parts: &[Representation]) -> Result<Representation> {
        let mut it = parts.iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        it.try_fold(first.clone(), |acc, r| acc.direct_sum(r))
    }

    /// Restrict to a subset of generators, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Representation {
        let gens = indices.iter().map(|&i| self.generators[i].clone()).collect();
        Representation::new_unchecked(&self.field, self.dim, gens, &self.label)
    }

    /// Replace the generating set by words in the old generators.
    pub fn with_generator_words(&self, words: &[Vec<i32>]) -> Representation {
        let gens = words.iter().map(|w| self.word_matrix(w)).collect();
        Representation::new_unchecked(&self.field, self.dim, gens, &self.label)
    }

    /// Apply a field automorphism entrywise (e.g. a Frobenius twist).
    pub fn twist(&self, f: impl Fn(Elem) -> Elem + Copy) -> Representation {
        let gens = self.generators.iter().map(|g| g.map_entries(f)).collect();
        Representation::new_unchecked(&self.field, self.dim, gens, &self.label)
    }

    /// Whether `X g_M = g_N X` for every generator.
    pub fn is_intertwiner(x: &Matrix, m: &Representation, n: &Representation) -> bool {
        x.rows() == n.dim
            && x.cols() == m.dim
            && m.generators
                .iter()
                .zip(n.generators.iter())
                .all(|(gm, gn)| x.mul_ok(gm) == gn.mul_ok(x))
    }

    /// Whether the span of `basis` is stable under every generator.
    pub fn is_invariant_subspace(&self, basis: &[Vec<Elem>]) -> bool {
        let s = Subspace::span(&self.field, self.dim, basis);
        basis
            .iter()
            .all(|v| self.generators.iter().all(|g| s.contains(&g.mul_vec(v))))
    }

    /// Smallest invariant subspace containing the seeds.
    pub fn spin(&self, seeds: &[Vec<Elem>]) -> SubmoduleWitness {
        let mut s = Subspace::zero(&self.field, self.dim);
        let mut queue: Vec<Vec<Elem>> = Vec::new();
        for v in seeds {
            if s.insert(v) {
                queue.push(v.clone());
            }
        }
        let mut i = 0;
        while i < queue.len() && s.dim() < self.dim {
            let v = queue[i].clone();
            for g in self.generators.iter() {
                let w = g.mul_vec(&v);
                if s.insert(&w) {
                    queue.push(w);
                }
            }
            i += 1;
        }
        SubmoduleWitness { space: s }
    }

    /// Action on an invariant subspace, in the subspace's echelon basis.
    pub fn submodule(&self, sub: &Subspace) -> Representation {
        let k = sub.dim();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coordinates(&g.mul_vec(b)).expect("invariant subspace"))
                    .collect();
                Matrix::from_columns(&self.field, k, &cols)
            })
            .collect();
        Representation::new_unchecked(&self.field, k, gens, &format!("sub({})", self.label))
    }

    /// Action on the quotient by an invariant subspace, with the non-pivot
    /// standard basis vectors as quotient basis.
    pub fn quotient(&self, sub: &Subspace) -> Representation {
        let idx = sub.complement_indices();
        let k = idx.len();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = idx
                    .iter()
                    .map(|&i| sub.quotient_coordinates(&g.column(i)))
                    .collect();
                Matrix::from_columns(&self.field, k, &cols)
            })
            .collect();
        Representation::new_unchecked(&self.field, k, gens, &format!("quot({})", self.label))
    }
}

/// A generator-stable subspace of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleWitness {
    pub space: Subspace,
}

impl SubmoduleWitness {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        self.space.basis()
    }
}
