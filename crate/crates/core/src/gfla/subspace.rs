//! Subspaces of `GF(q)^n` held in reduced echelon form.

use super::field::{Elem, Field};
use super::matrix::Matrix;

/// A subspace of `field^ambient`, stored as RREF rows with their pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis in reduced row echelon form, sorted by pivot.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_vec(
            &self.field,
            self.rows.len(),
            self.ambient,
            self.rows.iter().flatten().copied().collect(),
        )
        .unwrap()
    }

    /// Reduce `v` against the basis in place; returns the coordinates of the
    /// removed part with respect to the echelon basis.
    pub fn reduce(&self, v: &mut [Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut coords = vec![0; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[p];
            if c != 0 {
                coords[i] = c;
                f.axpy(v, f.neg(c), row);
            }
        }
        coords
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let mut w = v.to_vec();
        let c = self.reduce(&mut w);
        w.iter().all(|&x| x == 0).then_some(c)
    }

    /// Add a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).unwrap();
        f.scale_slice(&mut w, inv);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                f.axpy(row, f.neg(c), &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // solve a·A = b·B via the left nullspace of [A; B]
        let f = &self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, self.ambient);
        }
        let stacked = self.basis_matrix().vstack(&other.basis_matrix());
        let kernel = stacked.left_nullspace();
        let vecs: Vec<Vec<Elem>> = kernel
            .iter()
            .map(|k| {
                let mut v = vec![0; self.ambient];
                for (i, row) in self.rows.iter().enumerate() {
                    f.axpy(&mut v, k[i], row);
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Coordinates of the image of `v` in the quotient by this subspace,
    /// using the non-pivot positions as the quotient basis.
    pub fn quotient_coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.complement_indices().iter().map(|&i| w[i]).collect()
    }
}
