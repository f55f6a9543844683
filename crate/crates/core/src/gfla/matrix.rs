//! Dense matrices over a finite field.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Rows at or above this count are multiplied in parallel.
const PAR_ROWS: usize = 64;

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of a row reduction.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Reduced row echelon form; only the first `rank` rows are nonzero.
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from row-major data; entries are checked against the field order.
    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.order()) {
            return Err(Error::Invalid(format!("entry {} is not an element of {}", bad, field)));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Build from nested rows; panics on ragged input (test and literal use).
    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data: Vec<Elem> = rows.iter().flatten().copied().collect();
        Matrix::from_vec(field, rows.len(), cols, data).expect("valid matrix literal")
    }

    /// Build from integer entries reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let converted: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, &converted)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, len: usize, cols: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for i in 0..len {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    pub fn random<R: Rng>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// A uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .all(|(c, &x)| x == if r == c { 1 } else { 0 })
            })
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let mut m = self.clone();
        m.field.clone().scale_slice(&mut m.data, c);
        m
    }

    /// `self + c * other`, in place.
    pub fn add_scaled(&mut self, c: Elem, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.clone();
        f.axpy(&mut self.data, c, &other.data);
    }

    /// Matrix product. Rows of the result are computed independently (and in
    /// parallel for large inputs), so the output does not depend on threading.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let n = other.cols;
        let mut data = vec![0; self.rows * n];
        let kernel = |(r, out): (usize, &mut [Elem])| {
            let row = self.row(r);
            if f.k() == 1 {
                prime_row_times(f.order() as u64, row, other, out);
            } else {
                for (i, &a) in row.iter().enumerate() {
                    if a != 0 {
                        f.axpy(out, a, other.row(i));
                    }
                }
            }
        };
        if self.rows >= PAR_ROWS && n > 0 {
            data.par_chunks_mut(n).enumerate().for_each(kernel);
        } else if n > 0 {
            data.chunks_mut(n).enumerate().for_each(kernel);
        }
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: n,
            data,
        })
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul_ok(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("compatible matrices")
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// `v^T * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (r, &c) in v.iter().enumerate() {
            if c != 0 {
                self.field.axpy(&mut out, c, self.row(r));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ok(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ok(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Elem {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Echelon { rref: m, pivots }
    }

    /// Reduce in place to RREF; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).unwrap();
            f.scale_slice(&mut self.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<Elem> = self.data[r * cols..(r + 1) * cols].to_vec();
            let eliminate = |(i, row): (usize, &mut [Elem])| {
                if i != r && row[c] != 0 {
                    let factor = f.neg(row[c]);
                    f.axpy(&mut row[c..], factor, &pivot_row[c..]);
                }
            };
            if rows >= PAR_ROWS && cols >= PAR_ROWS {
                self.data.par_chunks_mut(cols).enumerate().for_each(eliminate);
            } else {
                self.data.chunks_mut(cols).enumerate().for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Rank and a canonical basis of the right nullspace `{v : A v = 0}`.
    ///
    /// The basis is the reduced echelon basis: each vector has a 1 in one
    /// free column and zeros in the other free columns, and the vectors are
    /// ordered by that free column.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Elem>>) {
        let e = self.echelon();
        let basis = nullspace_from_echelon(&e, self.cols);
        (e.rank(), basis)
    }

    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        self.rank_nullspace().1
    }

    /// Left nullspace `{v : v^T A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Elem>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            inv.row_mut(r)
                .copy_from_slice(&aug.data[r * 2 * n + n..(r + 1) * 2 * n]);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Elem {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            let pivot_row: Vec<Elem> = m.row(c).to_vec();
            for i in c + 1..n {
                let x = m.get(i, c);
                if x != 0 {
                    let factor = f.neg(f.mul(x, inv));
                    f.axpy(&mut m.data[i * n..(i + 1) * n], factor, &pivot_row);
                }
            }
        }
        det
    }

    /// Solve `self * x = b`; `None` if inconsistent. Returns one particular solution.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = b[r];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Some(x)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let row = m.row_mut(r);
            row[..self.cols].copy_from_slice(self.row(r));
            row[self.cols..].copy_from_slice(other.row(r));
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
        }
        for r in 0..other.rows {
            m.row_mut(self.rows + r)[self.cols..].copy_from_slice(other.row(r));
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut m = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        let width = self.cols * c2;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    let dst = &mut m.data[(i * r2 + k) * width + j * c2..(i * r2 + k) * width + (j + 1) * c2];
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        m
    }

    /// Submatrix of the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Conjugate `P^{-1} self P`.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        Ok(p.inverse()?.mul(self)?.mul(p)?)
    }

    /// Apply a field automorphism (such as Frobenius) entrywise.
    pub fn map_entries(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Multiplicative order of an invertible matrix, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = Matrix::identity(&self.field, self.rows);
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur == id {
                return Some(k);
            }
            cur = cur.mul_ok(self);
        }
        None
    }
}

/// One output row of a prime-field product with delayed reduction.
fn prime_row_times(p: u64, row: &[Elem], other: &Matrix, out: &mut [Elem]) {
    let n = other.cols;
    let mut acc = vec![0u64; n];
    // (p-1)^2 * batch must stay below 2^64
    let batch = (u64::MAX / ((p - 1) * (p - 1)).max(1)).clamp(1, 1 << 20) as usize;
    let mut pending = 0usize;
    for (i, &a) in row.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let a = a as u64;
        for (dst, &b) in acc.iter_mut().zip(other.row(i)) {
            *dst += a * b as u64;
        }
        pending += 1;
        if pending + 1 >= batch {
            for x in acc.iter_mut() {
                *x %= p;
            }
            pending = 0;
        }
    }
    for (o, a) in out.iter_mut().zip(acc) {
        *o = (a % p) as u32;
    }
}

fn nullspace_from_echelon(e: &Echelon, cols: usize) -> Vec<Vec<Elem>> {
    let f = e.rref.field();
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &p) in e.pivots.iter().enumerate() {
            v[p] = f.neg(e.rref.get(i, free));
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    #[test]
    fn identity_and_zero_nullspace() {
        let f = gf(5, 1);
        let (r, ns) = Matrix::identity(&f, 4).rank_nullspace();
        assert_eq!(r, 4);
        assert!(ns.is_empty());
        let f2 = gf(2, 1);
        let (r, ns) = Matrix::zeros(&f2, 3, 3).rank_nullspace();
        assert_eq!(r, 0);
        assert_eq!(ns, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn empty_matrix() {
        let f = gf(3, 1);
        let (r, ns) = Matrix::zeros(&f, 0, 0).rank_nullspace();
        assert_eq!(r, 0);
        assert!(ns.is_empty());
        let (r, ns) = Matrix::zeros(&f, 0, 2).rank_nullspace();
        assert_eq!(r, 0);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn nullspace_matches_brute_force() {
        let f = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Matrix::random(&f, 3, 4, &mut rng);
            let (rank, ns) = a.rank_nullspace();
            assert_eq!(rank + ns.len(), 4);
            let mut kernel_count = 0;
            for code in 0..625u32 {
                let v: Vec<u32> = (0..4).map(|i| (code / 5u32.pow(i)) % 5).collect();
                if a.mul_vec(&v).iter().all(|&x| x == 0) {
                    kernel_count += 1;
                }
            }
            assert_eq!(kernel_count, 5usize.pow(ns.len() as u32));
            for v in &ns {
                assert!(a.mul_vec(v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, k) in [(2, 1), (7, 1), (5, 2), (2, 3)] {
            let f = gf(p, k);
            for _ in 0..10 {
                let a = Matrix::random_invertible(&f, 5, &mut rng);
                let inv = a.inverse().unwrap();
                assert!(a.mul_ok(&inv).is_identity());
                assert_ne!(a.determinant(), 0);
                let b = Matrix::random(&f, 5, 5, &mut rng);
                assert_eq!(
                    a.mul_ok(&b).determinant(),
                    f.mul(a.determinant(), b.determinant())
                );
            }
        }
        let f = gf(3, 1);
        let s = Matrix::from_ints(&f, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn parallel_product_matches_naive() {
        let f = gf(31, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Matrix::random(&f, 70, 65, &mut rng);
        let b = Matrix::random(&f, 65, 66, &mut rng);
        let c = a.mul_ok(&b);
        for i in [0, 13, 69] {
            for j in [0, 40, 65] {
                let mut s = 0;
                for k in 0..65 {
                    s = f.add(s, f.mul(a.get(i, k), b.get(k, j)));
                }
                assert_eq!(c.get(i, j), s);
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = gf(7, 1);
        let a = Matrix::from_ints(&f, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let x = a.solve(&[1, 2]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![1, 2]);
        assert!(a.solve(&[1, 3]).is_none());
    }

    #[test]
    fn kronecker_mixed_product() {
        let f = gf(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = Matrix::random(&f, 2, 2, &mut rng);
        let b = Matrix::random(&f, 3, 3, &mut rng);
        let c = Matrix::random(&f, 2, 2, &mut rng);
        let d = Matrix::random(&f, 3, 3, &mut rng);
        assert_eq!(
            a.kronecker(&b).mul_ok(&c.kronecker(&d)),
            a.mul_ok(&c).kronecker(&b.mul_ok(&d))
        );
    }
}
