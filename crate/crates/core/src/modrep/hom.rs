//! Spaces of module homomorphisms.

use super::Representation;
use crate::error::Result;
use crate::gfla::{Elem, Field, Matrix};

/// Reduce flattened matrices to RREF and reshape.
pub(crate) fn canonical_matrices(field: &Field, rows: usize, cols: usize, flat: Vec<Vec<Elem>>) -> Vec<Matrix> {
    if flat.is_empty() {
        return Vec::new();
    }
    let n = flat.len();
    let data: Vec<Elem> = flat.into_iter().flatten().collect();
    let e = Matrix::from_vec(field, n, rows * cols, data).unwrap().echelon();
    (0..e.rank())
        .map(|i| Matrix::from_vec(field, rows, cols, e.rref.row(i).to_vec()).unwrap())
        .collect()
}

/// Semi-echelon basis that remembers how each row is written in terms of
/// the spin basis vectors.
struct TrackedEchelon {
    field: Field,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    coords: Vec<Vec<Elem>>,
    count: usize,
}

impl TrackedEchelon {
    fn new(field: &Field) -> TrackedEchelon {
        TrackedEchelon {
            field: field.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
            coords: Vec::new(),
            count: 0,
        }
    }

    /// Reduce `w`; returns the residual and `w - residual` in spin coordinates.
    fn reduce(&self, w: &[Elem], d: usize) -> (Vec<Elem>, Vec<Elem>) {
        let f = &self.field;
        let mut r = w.to_vec();
        let mut c = vec![0; d];
        for ((row, &p), co) in self.rows.iter().zip(&self.pivots).zip(&self.coords) {
            let x = r[p];
            if x != 0 {
                f.axpy(&mut r, f.neg(x), row);
                f.axpy(&mut c[..co.len()], x, co);
            }
        }
        (r, c)
    }

    /// Add `w` as the next spin basis vector given its reduction.
    fn push(&mut self, residual: Vec<Elem>, partial: Vec<Elem>) {
        let f = self.field.clone();
        let p = residual.iter().position(|&x| x != 0).unwrap();
        let inv = f.inv(residual[p]).unwrap();
        let mut row = residual;
        f.scale_slice(&mut row, inv);
        // residual = b_new - partial
        let mut co: Vec<Elem> = partial.iter().map(|&x| f.neg(x)).collect();
        co.truncate(self.count + 1);
        co.resize(self.count + 1, 0);
        co[self.count] = 1;
        f.scale_slice(&mut co, inv);
        self.rows.push(row);
        self.pivots.push(p);
        self.coords.push(co);
        self.count += 1;
    }
}

/// Linear parametrization of the unknown images `X b_j` of spin basis vectors.
struct Parametrization {
    field: Field,
    dn: usize,
    params: usize,
    images: Vec<Matrix>,
    equations: Vec<Vec<Elem>>,
}

impl Parametrization {
    fn add_params(&mut self, extra: usize) -> usize {
        let old = self.params;
        self.params += extra;
        for y in self.images.iter_mut() {
            *y = y.hstack(&Matrix::zeros(&self.field, self.dn, extra));
        }
        for e in self.equations.iter_mut() {
            e.resize(self.params, 0);
        }
        old
    }

    fn reduce(&mut self) {
        if self.equations.is_empty() {
            return;
        }
        let n = self.equations.len();
        let data: Vec<Elem> = self.equations.drain(..).flatten().collect();
        let e = Matrix::from_vec(&self.field, n, self.params, data).unwrap();
        let kernel = e.nullspace();
        let k = Matrix::from_columns(&self.field, self.params, &kernel);
        for y in self.images.iter_mut() {
            *y = y.mul_ok(&k);
        }
        self.params = kernel.len();
    }
}

/// Basis of `Hom_{kH}(M, N)`: matrices `X` (dim N × dim M) with
/// `X g_M = g_N X` for every generator, in reduced echelon form over the
/// row-major flattened entries.
///
/// Works by spinning `M` from standard basis vectors: the image of each seed
/// is a vector of unknowns, images of the other spin basis vectors follow
/// from the tree edges, and every non-tree edge imposes linear equations.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Matrix>> {
    m.check_compatible(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let mut tracked = TrackedEchelon::new(f);
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut par = Parametrization {
        field: f.clone(),
        dn,
        params: 0,
        images: Vec::new(),
        equations: Vec::new(),
    };
    let mut next_standard = 0;
    while basis.len() < dm {
        // next seed: first standard vector outside the current span
        let seed = loop {
            let mut e = vec![0; dm];
            e[next_standard] = 1;
            next_standard += 1;
            let (res, part) = tracked.reduce(&e, dm);
            if res.iter().any(|&x| x != 0) {
                break (e, res, part);
            }
        };
        let start = par.add_params(dn);
        let mut y = Matrix::zeros(f, dn, par.params);
        for i in 0..dn {
            y.set(i, start + i, 1);
        }
        tracked.push(seed.1, seed.2);
        basis.push(seed.0);
        par.images.push(y);
        let mut j = basis.len() - 1;
        while j < basis.len() {
            for (gm, gn) in m.generators().iter().zip(n.generators()) {
                let w = gm.mul_vec(&basis[j]);
                let (res, part) = tracked.reduce(&w, dm);
                let image = gn.mul_ok(&par.images[j]);
                if res.iter().any(|&x| x != 0) {
                    tracked.push(res, part);
                    basis.push(w);
                    par.images.push(image);
                } else {
                    // g b_j = sum c_l b_l  =>  g_N Y_j - sum c_l Y_l = 0
                    let mut eq = image;
                    for (l, &c) in part.iter().enumerate() {
                        if c != 0 {
                            eq.add_scaled(f.neg(c), &par.images[l]);
                        }
                    }
                    par.equations.extend(eq.row_vectors().into_iter().filter(|r| r.iter().any(|&x| x != 0)));
                    if par.equations.len() >= 2 * par.params.max(8) {
                        par.reduce();
                    }
                }
            }
            j += 1;
        }
        par.reduce();
    }
    par.reduce();
    if par.params == 0 {
        return Ok(Vec::new());
    }
    let bmat = Matrix::from_columns(f, dm, &basis);
    let binv = bmat.inverse()?;
    let flat: Vec<Vec<Elem>> = (0..par.params)
        .map(|k| {
            let cols: Vec<Vec<Elem>> = par.images.iter().map(|y| y.column(k)).collect();
            Matrix::from_columns(f, dn, &cols).mul_ok(&binv).into_data()
        })
        .collect();
    Ok(canonical_matrices(f, dn, dm, flat))
}

/// The same space computed from the dense Kronecker system
/// `(g_N ⊗ I - I ⊗ g_Mᵀ) vec(X) = 0`; independent of [`hom_space`] and used
/// to cross-check it.
pub fn hom_space_dense(m: &Representation, n: &Representation) -> Result<Vec<Matrix>> {
    m.check_compatible(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let id_m = Matrix::identity(f, dm);
    let id_n = Matrix::identity(f, dn);
    let mut system: Option<Matrix> = None;
    for (gm, gn) in m.generators().iter().zip(n.generators()) {
        let block = gn.kronecker(&id_m).sub(&id_n.kronecker(&gm.transpose()))?;
        system = Some(match system {
            None => block,
            Some(s) => s.vstack(&block),
        });
    }
    let flat = match system {
        None => (0..dm * dn)
            .map(|i| {
                let mut v = vec![0; dm * dn];
                v[i] = 1;
                v
            })
            .collect(),
        Some(s) => s.nullspace(),
    };
    Ok(canonical_matrices(f, dn, dm, flat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::groups;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn regular_c2_over_gf3_brute_force() {
        let f = Field::prime(3).unwrap();
        let m = groups::cyclic_regular(&f, 2);
        let basis = hom_space(&m, &m).unwrap();
        assert_eq!(basis.len(), 2);
        let mut count = 0;
        for code in 0..81u32 {
            let data: Vec<u32> = (0..4).map(|i| (code / 3u32.pow(i)) % 3).collect();
            let x = Matrix::from_vec(&f, 2, 2, data).unwrap();
            if Representation::is_intertwiner(&x, &m, &m) {
                count += 1;
            }
        }
        assert_eq!(count, 9);
        for x in &basis {
            assert!(Representation::is_intertwiner(x, &m, &m));
        }
    }

    #[test]
    fn spin_route_matches_dense_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let f = Field::new(p, k).unwrap();
            let reg = groups::regular_module(&f, &groups::symmetric_gens(3), "reg");
            let perm = groups::permutation_module(&f, &groups::symmetric_gens(3), "perm");
            let a = reg.conjugate(&Matrix::random_invertible(&f, 6, &mut rng)).unwrap();
            for (x, y) in [(&a, &perm), (&perm, &a), (&perm, &perm), (&a, &a)] {
                assert_eq!(hom_space(x, y).unwrap(), hom_space_dense(x, y).unwrap());
            }
        }
    }

    #[test]
    fn trivial_group_hom_is_everything() {
        let f = Field::prime(5).unwrap();
        let m = Representation::trivial(&f, 2, 0);
        let n = Representation::trivial(&f, 3, 0);
        assert_eq!(hom_space(&m, &n).unwrap().len(), 6);
        assert_eq!(hom_space_dense(&m, &n).unwrap().len(), 6);
    }
}
