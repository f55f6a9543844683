//! Lie algebras given by structure constants.

mod chevalley;
mod identify;
mod profile;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfla::io::{parse_field_line, parse_num, write_field_line, Lines};
use crate::gfla::{Elem, Field, Matrix};
use crate::modrep::ext2_index;

pub use chevalley::{chevalley_algebra, ChevalleyBasis};
pub use identify::{identify_simple_type, TypeIdentification};
pub use profile::{
    algebra_profile, centralizer_in, is_abelian_subspace, largest_abelian_in, subalgebra_generate,
    AbelianWitness, AlgebraProfile, Generated,
};

/// Anything with a bilinear bracket on coordinate vectors.
pub trait LieBracket: Sync {
    fn field(&self) -> &Field;
    fn dim(&self) -> usize;
    fn bracket(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem>;
}

/// `[e_i, e_j] = Σ_m c_ij^m e_m`, stored sparsely per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    field: Field,
    dim: usize,
    table: Vec<Vec<(usize, Elem)>>,
}

impl StructureConstants {
    /// The abelian algebra.
    pub fn zero(field: &Field, dim: usize) -> StructureConstants {
        StructureConstants {
            field: field.clone(),
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Set `[e_i, e_j] = v` and `[e_j, e_i] = -v`. Panics if `i == j`.
    pub fn set(&mut self, i: usize, j: usize, v: &[Elem]) {
        assert_ne!(i, j, "[e_i, e_i] is always zero");
        let f = &self.field;
        let pos: Vec<(usize, Elem)> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(m, &c)| (m, c)).collect();
        let neg = pos.iter().map(|&(m, c)| (m, f.neg(c))).collect();
        self.table[i * self.dim + j] = pos;
        self.table[j * self.dim + i] = neg;
    }

    /// Build from `(i, j, m, c)` entries. Entries for both `(i, j)` and
    /// `(j, i)` may be given and must then agree up to sign.
    pub fn from_entries(field: &Field, dim: usize, entries: &[(usize, usize, usize, Elem)]) -> Result<StructureConstants> {
        let f = field;
        let mut dense = vec![vec![0 as Elem; dim]; dim * dim];
        let mut given = vec![false; dim * dim * dim];
        for &(i, j, m, c) in entries {
            if i >= dim || j >= dim || m >= dim {
                return Err(Error::DimensionMismatch(format!("entry ({}, {}, {}) outside dimension {}", i, j, m, dim)));
            }
            if c >= f.order() {
                return Err(Error::Invalid(format!("coefficient {} is not a field element", c)));
            }
            if i == j && c != 0 {
                return Err(Error::Invalid(format!("[e_{}, e_{}] must vanish", i, i)));
            }
            let fwd = i * dim + j;
            let back = j * dim + i;
            if given[back * dim + m] && dense[back][m] != f.neg(c) {
                return Err(Error::Invalid(format!("entries ({}, {}, {}) and ({}, {}, {}) are not antisymmetric", i, j, m, j, i, m)));
            }
            dense[fwd][m] = c;
            dense[back][m] = f.neg(c);
            given[fwd * dim + m] = true;
        }
        let table = dense
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| *c != 0).collect())
            .collect();
        Ok(StructureConstants {
            field: f.clone(),
            dim,
            table,
        })
    }

    /// From a map `Λ²V → V` whose column `ext2_index(i, j)` is `[e_i, e_j]`.
    pub fn from_ext2_map(phi: &Matrix) -> Result<StructureConstants> {
        let d = phi.rows();
        if phi.cols() != d * d.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "a bracket on dimension {} needs {} columns, got {}",
                d,
                d * d.saturating_sub(1) / 2,
                phi.cols()
            )));
        }
        let mut l = StructureConstants::zero(phi.field(), d);
        for i in 0..d {
            for j in i + 1..d {
                let col = phi.column(ext2_index(i, j, d));
                if col.iter().any(|&x| x != 0) {
                    l.set(i, j, &col);
                }
            }
        }
        Ok(l)
    }

    /// The map `Λ²V → V` inverse to [`StructureConstants::from_ext2_map`].
    pub fn to_ext2_map(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(&self.field, d, d * d.saturating_sub(1) / 2);
        for i in 0..d {
            for j in i + 1..d {
                let c = ext2_index(i, j, d);
                for &(m, v) in self.basis_bracket(i, j) {
                    out.set(m, c, v);
                }
            }
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_bracket_vec(&self, i: usize, j: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        for &(m, c) in self.basis_bracket(i, j) {
            v[m] = c;
        }
        v
    }

    pub fn get(&self, i: usize, j: usize, m: usize) -> Elem {
        self.basis_bracket(i, j)
            .iter()
            .find(|&&(k, _)| k == m)
            .map_or(0, |&(_, c)| c)
    }

    /// `(i, j, m, c)` for `i < j` and nonzero `c`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Elem)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for &(m, c) in self.basis_bracket(i, j) {
                    out.push((i, j, m, c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| v.is_empty())
    }

    /// `ad x`, with column `j` equal to `[x, e_j]`.
    pub fn ad(&self, x: &[Elem]) -> Matrix {
        let f = &self.field;
        let d = self.dim;
        let mut out = Matrix::zeros(f, d, d);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..d {
                for &(m, c) in self.basis_bracket(i, j) {
                    let cur = out.get(m, j);
                    out.set(m, j, f.add(cur, f.mul(xi, c)));
                }
            }
        }
        out
    }

    /// Change of basis: the columns of `p` are the new basis vectors.
    pub fn change_basis(&self, p: &Matrix) -> Result<StructureConstants> {
        let pinv = p.inverse()?;
        let d = self.dim;
        let cols: Vec<Vec<Elem>> = (0..d).map(|j| p.column(j)).collect();
        let mut out = StructureConstants::zero(&self.field, d);
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket(&cols[i], &cols[j]);
                let v = pinv.mul_vec(&b);
                if v.iter().any(|&x| x != 0) {
                    out.set(i, j, &v);
                }
            }
        }
        Ok(out)
    }
}

impl LieBracket for StructureConstants {
    fn field(&self) -> &Field {
        &self.field
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn bracket(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        let ys: Vec<(usize, Elem)> = y.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for &(j, yj) in &ys {
                let s = f.mul(xi, yj);
                for &(m, c) in self.basis_bracket(i, j) {
                    out[m] = f.add(out[m], f.mul(s, c));
                }
            }
        }
        out
    }
}

/// Outcome of checking the Jacobi identity on basis triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub is_lie: bool,
    pub violation_count: usize,
    /// The first violating triples `i < j < k`, at most 100.
    pub violations: Vec<(usize, usize, usize)>,
}

/// Evaluate `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` for all
/// `i < j < k`.
pub fn jacobi_residual(l: &StructureConstants) -> JacobiReport {
    let d = l.dim();
    let f = l.field();
    let per_i: Vec<Vec<(usize, usize, usize)>> = (0..d)
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            let mut acc = vec![0 as Elem; d];
            for j in i + 1..d {
                for k in j + 1..d {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(m, s) in l.basis_bracket(a, b) {
                            for &(n, t) in l.basis_bracket(m, c) {
                                acc[n] = f.add(acc[n], f.mul(s, t));
                            }
                        }
                    }
                    if acc.iter().any(|&x| x != 0) {
                        bad.push((i, j, k));
                    }
                }
            }
            bad
        })
        .collect();
    let all: Vec<(usize, usize, usize)> = per_i.into_iter().flatten().collect();
    JacobiReport {
        is_lie: all.is_empty(),
        violation_count: all.len(),
        violations: all.into_iter().take(100).collect(),
    }
}

/// Parse a `GFLIE v1` document: field line, `dim n`, then `i j m c` lines
/// (0-based indices).
pub fn parse_structure_constants(text: &str) -> Result<StructureConstants> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("GFLIE")?;
    if toks != ["v1"] {
        return Err(Error::Parse {
            line,
            msg: "expected 'GFLIE v1'".into(),
        });
    }
    let field = parse_field_line(&mut lines)?;
    let (line, toks) = lines.expect("dim")?;
    if toks.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: "expected 'dim n'".into(),
        });
    }
    let dim: usize = parse_num(line, toks[0])?;
    let mut entries = Vec::new();
    while !lines.is_done() {
        let (line, text) = lines.next_line()?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::Parse {
                line,
                msg: "expected 'i j m c'".into(),
            });
        }
        entries.push((
            parse_num(line, toks[0])?,
            parse_num(line, toks[1])?,
            parse_num(line, toks[2])?,
            parse_num(line, toks[3])?,
        ));
    }
    StructureConstants::from_entries(&field, dim, &entries)
}

/// Write the entries with `i < j`.
pub fn write_structure_constants(l: &StructureConstants) -> String {
    let mut out = String::from("GFLIE v1\n");
    write_field_line(&mut out, l.field());
    let _ = writeln!(out, "dim {}", l.dim());
    for (i, j, m, c) in l.entries() {
        let _ = writeln!(out, "{} {} {} {}", i, j, m, c);
    }
    out
}
