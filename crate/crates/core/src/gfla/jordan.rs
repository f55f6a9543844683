//! Jordan block structure of nilpotent matrices and pencils.

use serde::{Deserialize, Serialize};

use super::field::Elem;
use super::matrix::Matrix;
use super::partition::Partition;
use crate::error::{Error, Result};

/// Rank sequence `rank(A^0), rank(A^1), ...` up to the first zero.
/// Returns `None` if `A^n != 0`.
fn nilpotent_rank_sequence(a: &Matrix) -> Option<Vec<usize>> {
    let n = a.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(a.field(), n);
    for _ in 0..n {
        if *ranks.last().unwrap() == 0 {
            break;
        }
        power = power.mul_ok(a);
        ranks.push(power.rank());
    }
    (*ranks.last().unwrap() == 0).then_some(ranks)
}

/// Jordan block sizes of a nilpotent matrix.
///
/// ```
/// use modlie::gfla::{Field, Matrix, nilpotent_jordan_partition};
/// let f = Field::prime(7).unwrap();
/// let j = Matrix::from_ints(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
/// assert_eq!(nilpotent_jordan_partition(&j).unwrap().to_string(), "3");
/// ```
pub fn nilpotent_jordan_partition(a: &Matrix) -> Result<Partition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Jordan partition of a non-square matrix".into()));
    }
    let ranks = nilpotent_rank_sequence(a).ok_or(Error::NotNilpotent)?;
    Ok(Partition::from_rank_sequence(&ranks))
}

/// Generic and exceptional Jordan types of the pencil `A + xB`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilProfile {
    pub generic: Partition,
    /// Field elements whose partition differs from the generic one, in
    /// increasing packed order.
    pub exceptional: Vec<(Elem, Partition)>,
}

/// Jordan types of `A + xB` over every field element.
///
/// For each `i` the rank of `(A + xB)^i` is a maximal-minor rank of a matrix
/// polynomial in `x`; for nilpotent matrices that rank is at most `n - i`, so
/// the witnessing minors have degree at most `i (n - i) <= n^2/4`. When the
/// field is larger than that bound the maximum over field points is the rank
/// over `GF(q)(x)`, and the coordinatewise-maximal rank sequence gives the
/// generic partition.
pub fn pencil_profile(a: &Matrix, b: &Matrix) -> Result<PencilProfile> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("pencil matrices must be square of equal size".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let f = a.field();
    let n = a.rows();
    let bound = (n as u64 * n as u64) / 4;
    if (f.order() as u64) <= bound {
        return Err(Error::FieldTooSmall {
            order: f.order() as u64,
            size: n,
            bound,
        });
    }
    if !a.pow(n as u64).is_zero() {
        return Err(Error::NotNilpotentPencil { x: 0 });
    }
    if !b.pow(n as u64).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut sequences = Vec::with_capacity(f.order() as usize);
    for x in f.elements() {
        let mut m = a.clone();
        m.add_scaled(x, b);
        let mut ranks = nilpotent_rank_sequence(&m).ok_or(Error::NotNilpotentPencil { x })?;
        ranks.resize(n + 1, 0);
        sequences.push(ranks);
    }
    let generic_ranks: Vec<usize> = (0..=n)
        .map(|i| sequences.iter().map(|r| r[i]).max().unwrap())
        .collect();
    let generic = Partition::from_rank_sequence(&generic_ranks);
    let exceptional = sequences
        .iter()
        .enumerate()
        .filter(|(_, r)| **r != generic_ranks)
        .map(|(x, r)| (x as Elem, Partition::from_rank_sequence(r)))
        .collect();
    Ok(PencilProfile { generic, exceptional })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jordan_block(f: &crate::gfla::Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, 1);
        }
        m
    }

    #[test]
    fn zero_and_single_block() {
        let f = Field::prime(7).unwrap();
        assert_eq!(
            nilpotent_jordan_partition(&Matrix::zeros(&f, 5, 5)).unwrap().to_string(),
            "1^5"
        );
        assert_eq!(
            nilpotent_jordan_partition(&jordan_block(&f, 4)).unwrap().to_string(),
            "4"
        );
        assert_eq!(
            nilpotent_jordan_partition(&Matrix::identity(&f, 2)).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn conjugated_block_sum() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let j = jordan_block(&f, 3).direct_sum(&jordan_block(&f, 2));
        for _ in 0..10 {
            let p = Matrix::random_invertible(&f, 5, &mut rng);
            let c = j.conjugate_by(&p).unwrap();
            assert_eq!(nilpotent_jordan_partition(&c).unwrap().to_string(), "3,2");
        }
    }

    #[test]
    fn scaling_pencil() {
        let f = Field::prime(7).unwrap();
        let a = jordan_block(&f, 3);
        let prof = pencil_profile(&a, &Matrix::zeros(&f, 3, 3)).unwrap();
        assert_eq!(prof.generic.to_string(), "3");
        assert!(prof.exceptional.is_empty());
        let prof = pencil_profile(&a, &a).unwrap();
        assert_eq!(prof.generic.to_string(), "3");
        assert_eq!(prof.exceptional, vec![(6, "1^3".parse().unwrap())]);
    }

    #[test]
    fn field_too_small() {
        let f = Field::prime(3).unwrap();
        let a = jordan_block(&f, 4);
        assert!(matches!(
            pencil_profile(&a, &a),
            Err(Error::FieldTooSmall { bound: 4, .. })
        ));
    }
}
