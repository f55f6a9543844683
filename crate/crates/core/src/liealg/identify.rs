//! Coarse identification of simple types by invariants.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{algebra_profile, chevalley_algebra, profile::killing_rank, StructureConstants};
use crate::gfla::Elem;
use crate::roots::RootType;

const SAMPLES: usize = 64;
const SEED: u64 = 0x1d_e47;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIdentification {
    /// `Some("G2")` etc. when exactly one type matches.
    pub label: Option<String>,
    pub reason: String,
    pub killing_rank: Option<usize>,
    pub min_centralizer_dim: Option<usize>,
    /// Types whose invariants were compared.
    pub candidates: Vec<String>,
}

/// Smallest `dim ker(ad x)` over seeded random `x`.
fn min_centralizer_dim(l: &StructureConstants) -> usize {
    let f = l.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut best = l.dim();
    for _ in 0..SAMPLES {
        let x: Vec<Elem> = (0..l.dim()).map(|_| f.random(&mut rng)).collect();
        best = best.min(l.ad(&x).nullspace().len());
    }
    best
}

/// Simple types of a given dimension.
fn types_of_dimension(dim: usize) -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    for n in 1.. {
        if n * (n + 2) > dim {
            break;
        }
        if n * (n + 2) == dim {
            out.push((RootType::A, n));
        }
    }
    for n in 2.. {
        if n * (2 * n + 1) > dim {
            break;
        }
        if n * (2 * n + 1) == dim {
            if n >= 3 {
                out.push((RootType::B, n));
            }
            out.push((RootType::C, n));
        }
    }
    for n in 4.. {
        if n * (2 * n - 1) > dim {
            break;
        }
        if n * (2 * n - 1) == dim {
            out.push((RootType::D, n));
        }
    }
    for (t, n, d) in [
        (RootType::G, 2, 14),
        (RootType::F, 4, 52),
        (RootType::E, 6, 78),
        (RootType::E, 7, 133),
        (RootType::E, 8, 248),
    ] {
        if d == dim {
            out.push((t, n));
        }
    }
    out
}

/// Match `(dim, Killing rank, minimal centralizer dimension)` against the
/// Chevalley algebras of the same dimension over the same field. Returns a
/// label only when exactly one type matches.
///
/// ```
/// use modlie::gfla::Field;
/// use modlie::liealg::{chevalley_algebra, identify_simple_type};
/// use modlie::roots::RootType;
/// let f = Field::prime(11).unwrap();
/// let sl2 = chevalley_algebra(RootType::A, 1, &f).unwrap();
/// assert_eq!(identify_simple_type(&sl2.algebra).label.as_deref(), Some("A1"));
/// ```
pub fn identify_simple_type(l: &StructureConstants) -> TypeIdentification {
    let p = algebra_profile(l);
    let unrecognized = |reason: String| TypeIdentification {
        label: None,
        reason,
        killing_rank: Some(p.killing_rank),
        min_centralizer_dim: None,
        candidates: Vec::new(),
    };
    if p.center_dim != 0 {
        return unrecognized(format!("center has dimension {}", p.center_dim));
    }
    if p.derived_dim != p.dim {
        return unrecognized(format!("derived ≠ L (derived dimension {} of {})", p.derived_dim, p.dim));
    }
    let types = types_of_dimension(p.dim);
    if types.is_empty() {
        return unrecognized(format!("no simple type has dimension {}", p.dim));
    }
    let cent = min_centralizer_dim(l);
    let mut matches = Vec::new();
    let mut candidates = Vec::new();
    for (t, n) in types {
        let label = format!("{}{}", t, n);
        candidates.push(label.clone());
        let Ok(reference) = chevalley_algebra(t, n, l.field()) else {
            continue;
        };
        let rp = algebra_profile(&reference.algebra);
        if rp.center_dim != 0 || rp.derived_dim != rp.dim {
            continue;
        }
        if killing_rank(&reference.algebra) == p.killing_rank && min_centralizer_dim(&reference.algebra) == cent {
            matches.push(label);
        }
    }
    let (label, reason) = match matches.len() {
        0 => (None, format!("no type of dimension {} matches the invariants", p.dim)),
        1 => (Some(matches[0].clone()), "unique match on dimension, Killing rank and minimal centralizer".to_string()),
        _ => (None, format!("invariants collide between {}", matches.join(", "))),
    };
    TypeIdentification {
        label,
        reason,
        killing_rank: Some(p.killing_rank),
        min_centralizer_dim: Some(cent),
        candidates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::{Field, Matrix};

    #[test]
    fn g2_and_conjugates() {
        let f = Field::prime(11).unwrap();
        let g2 = chevalley_algebra(RootType::G, 2, &f).unwrap().algebra;
        let id = identify_simple_type(&g2);
        assert_eq!(id.label.as_deref(), Some("G2"));
        assert_eq!(id.min_centralizer_dim, Some(2));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = Matrix::random_invertible(&f, 14, &mut rng);
        let moved = g2.change_basis(&p).unwrap();
        assert_eq!(identify_simple_type(&moved).label.as_deref(), Some("G2"));
    }

    #[test]
    fn abelian_is_unrecognized() {
        let f = Field::prime(7).unwrap();
        let id = identify_simple_type(&StructureConstants::zero(&f, 3));
        assert!(id.label.is_none());
        assert!(id.reason.contains("center") || id.reason.contains("derived"));
        let id = identify_simple_type(&StructureConstants::zero(&f, 0));
        assert!(id.label.is_none());
    }

    #[test]
    fn dimension_table() {
        assert_eq!(types_of_dimension(21), vec![(RootType::B, 3), (RootType::C, 3)]);
        assert_eq!(types_of_dimension(28), vec![(RootType::D, 4)]);
        assert_eq!(types_of_dimension(133), vec![(RootType::E, 7)]);
        assert_eq!(types_of_dimension(10), vec![(RootType::C, 2)]);
    }
}
