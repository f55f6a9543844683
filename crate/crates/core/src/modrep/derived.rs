//! Duals, tensor products, exterior and symmetric squares.

use rayon::prelude::*;

use super::Representation;
use crate::error::Result;
use crate::gfla::{Elem, Field, Matrix};

/// Which module to derive from a given one.
#[derive(Clone, Debug)]
pub enum DerivedKind {
    Dual,
    Tensor(Representation),
    Ext2,
    Sym2,
}

/// Build a derived module.
///
/// Bases are lexicographic: `e_i ⊗ f_j` by `(i, j)`, `e_i ∧ e_j` for `i < j`,
/// `e_i e_j` for `i <= j`.
pub fn derived_module(m: &Representation, kind: &DerivedKind) -> Result<Representation> {
    match kind {
        DerivedKind::Dual => Ok(dual(m)),
        DerivedKind::Tensor(n) => tensor(m, n),
        DerivedKind::Ext2 => Ok(ext2(m)),
        DerivedKind::Sym2 => Ok(sym2(m)),
    }
}

pub fn dual(m: &Representation) -> Representation {
    let gens = m.inverses().iter().map(|g| g.transpose()).collect();
    Representation::new_unchecked(m.field(), m.dim(), gens, &format!("{}*", m.label()))
}

pub fn tensor(m: &Representation, n: &Representation) -> Result<Representation> {
    m.check_compatible(n)?;
    let gens = m
        .generators()
        .iter()
        .zip(n.generators())
        .map(|(a, b)| a.kronecker(b))
        .collect();
    Ok(Representation::new_unchecked(
        m.field(),
        m.dim() * n.dim(),
        gens,
        &format!("{}x{}", m.label(), n.label()),
    ))
}

/// Index of `e_i ∧ e_j` (`i < j`) in the lexicographic basis of Λ²(k^d).
pub fn ext2_index(i: usize, j: usize, d: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

/// Index of `e_i e_j` (`i <= j`) in the lexicographic basis of S²(k^d).
pub fn sym2_index(i: usize, j: usize, d: usize) -> usize {
    debug_assert!(i <= j && j < d);
    i * (2 * d - i + 1) / 2 + (j - i)
}

/// Lexicographic list of pairs `i < j`.
pub fn ext2_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

/// Lexicographic list of pairs `i <= j`.
pub fn sym2_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect()
}

fn ext2_matrix(f: &Field, g: &Matrix) -> Matrix {
    let d = g.rows();
    let pairs = ext2_pairs(d);
    let n = pairs.len();
    let mut data = vec![0; n * n];
    // row (k,l), column (i,j): g_ki g_lj - g_li g_kj
    data.par_chunks_mut(n.max(1)).enumerate().for_each(|(r, row)| {
        let (k, l) = pairs[r];
        for (c, &(i, j)) in pairs.iter().enumerate() {
            let a = f.mul(g.get(k, i), g.get(l, j));
            let b = f.mul(g.get(l, i), g.get(k, j));
            row[c] = f.sub(a, b);
        }
    });
    Matrix::from_vec(f, n, n, data).unwrap()
}

fn sym2_matrix(f: &Field, g: &Matrix) -> Matrix {
    let d = g.rows();
    let pairs = sym2_pairs(d);
    let n = pairs.len();
    let mut data: Vec<Elem> = vec![0; n * n];
    data.par_chunks_mut(n.max(1)).enumerate().for_each(|(r, row)| {
        let (k, l) = pairs[r];
        for (c, &(i, j)) in pairs.iter().enumerate() {
            row[c] = if k == l {
                f.mul(g.get(k, i), g.get(k, j))
            } else {
                let a = f.mul(g.get(k, i), g.get(l, j));
                let b = f.mul(g.get(l, i), g.get(k, j));
                f.add(a, b)
            };
        }
    });
    Matrix::from_vec(f, n, n, data).unwrap()
}

pub fn ext2(m: &Representation) -> Representation {
    let gens: Vec<Matrix> = m.generators().iter().map(|g| ext2_matrix(m.field(), g)).collect();
    let d = m.dim();
    Representation::new_unchecked(m.field(), d * d.saturating_sub(1) / 2, gens, &format!("L2({})", m.label()))
}

pub fn sym2(m: &Representation) -> Representation {
    let gens: Vec<Matrix> = m.generators().iter().map(|g| sym2_matrix(m.field(), g)).collect();
    let d = m.dim();
    Representation::new_unchecked(m.field(), d * (d + 1) / 2, gens, &format!("S2({})", m.label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::groups;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn indices_are_lexicographic() {
        let d = 5;
        for (n, &(i, j)) in ext2_pairs(d).iter().enumerate() {
            assert_eq!(ext2_index(i, j, d), n);
        }
        for (n, &(i, j)) in sym2_pairs(d).iter().enumerate() {
            assert_eq!(sym2_index(i, j, d), n);
        }
    }

    #[test]
    fn dimensions_and_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            let a = Matrix::random_invertible(&f, 4, &mut rng);
            let b = Matrix::random_invertible(&f, 4, &mut rng);
            let m = Representation::new(&f, 4, vec![a.clone(), b.clone(), a.mul_ok(&b)], "m").unwrap();
            let e = ext2(&m);
            let s = sym2(&m);
            assert_eq!((e.dim(), s.dim()), (6, 10));
            // the constructions are multiplicative
            assert_eq!(e.generator(0).mul_ok(e.generator(1)), *e.generator(2));
            assert_eq!(s.generator(0).mul_ok(s.generator(1)), *s.generator(2));
            let dd = dual(&dual(&m));
            assert_eq!(dd.generators(), m.generators());
        }
    }

    #[test]
    fn sym2_of_56_has_dimension_1596() {
        let f = Field::prime(2).unwrap();
        let m = Representation::trivial(&f, 56, 1);
        assert_eq!(sym2(&m).dim(), 1596);
    }

    #[test]
    fn char2_squares_are_stable() {
        let f = Field::new(2, 2).unwrap();
        let m = groups::regular_module(&f, &groups::symmetric_gens(3), "reg");
        let e = ext2(&m);
        let s = sym2(&m);
        assert_eq!((e.dim(), s.dim()), (15, 21));
        let ge = crate::modrep::groups::enumerate_matrix_group(&e, 100).unwrap();
        let gs = crate::modrep::groups::enumerate_matrix_group(&s, 100).unwrap();
        assert_eq!(ge.len(), 6);
        assert_eq!(gs.len(), 6);
    }
}
