//! First cohomology of finitely presented groups.

mod coset;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfla::io::{parse_num, Lines};
use crate::gfla::{Elem, Field, Matrix};
use crate::modrep::Representation;

pub use coset::coset_enumeration;

/// Longest relator accepted, in letters.
pub const MAX_RELATOR_LENGTH: usize = 10_000;

/// Generators `1..=m` and relators as words in signed generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePresentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<i32>>,
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl FinitePresentation {
    /// Build a presentation; relators are freely reduced and checked.
    pub fn new(generator_count: usize, relators: Vec<Vec<i32>>) -> Result<FinitePresentation> {
        let mut reduced = Vec::with_capacity(relators.len());
        for (index, r) in relators.iter().enumerate() {
            if r.len() > MAX_RELATOR_LENGTH {
                return Err(Error::RelatorTooLong {
                    index,
                    len: r.len(),
                    limit: MAX_RELATOR_LENGTH,
                });
            }
            if let Some(&bad) = r
                .iter()
                .find(|&&x| x == 0 || x.unsigned_abs() as usize > generator_count)
            {
                return Err(Error::Invalid(format!(
                    "relator {} uses letter {} outside 1..={}",
                    index, bad, generator_count
                )));
            }
            reduced.push(free_reduce(r));
        }
        Ok(FinitePresentation {
            generator_count,
            relators: reduced,
        })
    }

    /// Check that every relator evaluates to the identity.
    pub fn validate(&self, m: &Representation) -> Result<()> {
        if m.num_generators() != self.generator_count {
            return Err(Error::GeneratorCountMismatch {
                left: self.generator_count,
                right: m.num_generators(),
            });
        }
        for (index, r) in self.relators.iter().enumerate() {
            if !m.word_matrix(r).is_identity() {
                return Err(Error::RelatorViolation { index });
            }
        }
        Ok(())
    }
}

/// Dimensions of cocycles, coboundaries and first cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpace {
    pub module_dim: usize,
    pub fixed_dim: usize,
    pub dimension_z1: usize,
    pub dimension_b1: usize,
    pub dimension_h1: usize,
}

/// Fox-derivative coefficient blocks of one relator: `A_i` with
/// `d(r) = Σ_i A_i d(x_i)` for a derivation `d(gh) = d(g) + g d(h)`.
fn fox_blocks(m: &Representation, word: &[i32]) -> Vec<Matrix> {
    let f = m.field();
    let d = m.dim();
    let mut blocks = vec![Matrix::zeros(f, d, d); m.num_generators()];
    let mut prefix = Matrix::identity(f, d);
    for &letter in word {
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            blocks[i].add_scaled(1, &prefix);
            prefix = prefix.mul_ok(m.generator(i));
        } else {
            // d(x^-1) = -x^-1 d(x)
            prefix = prefix.mul_ok(&m.inverses()[i]);
            blocks[i].add_scaled(f.neg(1), &prefix);
        }
    }
    blocks
}

/// `dim H¹(G, M)` from a presentation of `G`.
///
/// `Z¹` is the solution space of the Fox-derivative system (one block row per
/// relator); `B¹` is the image of `v ↦ (g ↦ g v - v)`, of dimension
/// `dim M - dim M^G`.
///
/// ```
/// use modlie::cohom::{h1_dimension, FinitePresentation};
/// use modlie::gfla::{Field, Matrix};
/// use modlie::modrep::Representation;
/// // C2 = <x | x^2> acting by -1 on GF(3): H^1 = 0
/// let f = Field::prime(3).unwrap();
/// let p = FinitePresentation::new(1, vec![vec![1, 1]]).unwrap();
/// let m = Representation::new(&f, 1, vec![Matrix::from_ints(&f, &[vec![-1]])], "sign").unwrap();
/// assert_eq!(h1_dimension(&p, &m).unwrap().dimension_h1, 0);
/// ```
pub fn h1_dimension(p: &FinitePresentation, m: &Representation) -> Result<CocycleSpace> {
    p.validate(m)?;
    let f = m.field();
    let d = m.dim();
    let gens = p.generator_count;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for r in &p.relators {
        let blocks = fox_blocks(m, r);
        for i in 0..d {
            let mut row = Vec::with_capacity(gens * d);
            for b in &blocks {
                row.extend_from_slice(b.row(i));
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    let rank_z = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(f, &rows).rank()
    };
    let dimension_z1 = gens * d - rank_z;
    let fixed_dim = fixed_points(m).len();
    let dimension_b1 = d - fixed_dim;
    Ok(CocycleSpace {
        module_dim: d,
        fixed_dim,
        dimension_z1,
        dimension_b1,
        dimension_h1: dimension_z1 - dimension_b1,
    })
}

/// Basis of the fixed points `{v : g v = v for all generators}`.
pub fn fixed_points(m: &Representation) -> Vec<Vec<Elem>> {
    let f = m.field();
    let d = m.dim();
    if m.num_generators() == 0 {
        return Matrix::identity(f, d).row_vectors();
    }
    let id = Matrix::identity(f, d);
    let mut stacked: Option<Matrix> = None;
    for g in m.generators() {
        let block = g.sub(&id).expect("square generator");
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.vstack(&block),
        });
    }
    stacked.unwrap().nullspace()
}

/// `dim H¹(G, GF(p))` for trivial coefficients: the number of generators
/// minus the rank over GF(p) of the relator exponent-sum matrix.
pub fn trivial_h1_from_exponent_sums(p: &FinitePresentation, field: &Field) -> usize {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            let mut sums = vec![0i64; p.generator_count];
            for &x in r {
                sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
            }
            sums
        })
        .collect();
    if rows.is_empty() {
        return p.generator_count;
    }
    p.generator_count - Matrix::from_ints(field, &rows).rank()
}

/// The complement-counting annotation attached to an H¹ value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementVerdict {
    pub h1_dimension: usize,
    /// Number of complement classes when the value determines it.
    pub classes: Option<usize>,
    pub annotation: String,
    pub assumption: String,
}

/// Translate `dim H¹(H, U)` into the complement-class statement for `U.H`
/// inside a parabolic subgroup with unipotent radical `U`.
pub fn complement_count_contract(h1dim: usize) -> ComplementVerdict {
    let assumption = "the unipotent radical U is abelian and forms a module for the Levi subgroup".to_string();
    let (classes, annotation) = match h1dim {
        0 => (Some(1), "H^1 = 0: every complement to U in U.H is conjugate to H; one class".to_string()),
        1 => (
            Some(2),
            "H^1 is 1-dimensional: exactly two classes of complements to U in U.H under the torus action, one of which lies in the Levi subgroup".to_string(),
        ),
        n => (
            None,
            format!("H^1 has dimension {}: the complement count is not determined by the dimension alone; manual analysis required", n),
        ),
    };
    ComplementVerdict {
        h1_dimension: h1dim,
        classes,
        annotation,
        assumption,
    }
}

/// Parse a `GFPRES v1` document: `gens m` then one relator per line.
pub fn parse_presentation(text: &str) -> Result<FinitePresentation> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("GFPRES")?;
    if toks != ["v1"] {
        return Err(Error::Parse {
            line,
            msg: "expected 'GFPRES v1'".into(),
        });
    }
    let (line, toks) = lines.expect("gens")?;
    if toks.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: "expected 'gens m'".into(),
        });
    }
    let m: usize = parse_num(line, toks[0])?;
    let mut relators = Vec::new();
    while !lines.is_done() {
        let (line, text) = lines.next_line()?;
        let word: Vec<i32> = text
            .split_whitespace()
            .map(|t| parse_num(line, t))
            .collect::<Result<_>>()?;
        relators.push(word);
    }
    FinitePresentation::new(m, relators)
}

pub fn write_presentation(p: &FinitePresentation) -> String {
    let mut out = String::from("GFPRES v1\n");
    let _ = writeln!(out, "gens {}", p.generator_count);
    for r in &p.relators {
        let w: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", w.join(" "));
    }
    out
}
