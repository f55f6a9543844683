//! Invariant bilinear forms.

use serde::{Deserialize, Serialize};

use super::derived::dual;
use super::hom::canonical_matrices;
use super::{chop, hom_space, isomorphic, Representation, SubmoduleWitness};
use crate::error::Result;
use crate::gfla::{Elem, Matrix, Subspace};

/// Which invariant forms to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// `Fᵀ = -F` with zero diagonal.
    Alternating,
    Symmetric,
    All,
}

/// A basis of invariant bilinear forms `F` (`gᵀ F g = F`) of one kind.
#[derive(Debug, Clone)]
pub struct BilinearFormSpace {
    pub module: Representation,
    pub kind: FormKind,
    pub basis: Vec<Matrix>,
}

impl BilinearFormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_i F_i`.
    pub fn combination(&self, coeffs: &[Elem]) -> Matrix {
        let d = self.module.dim();
        let mut out = Matrix::zeros(self.module.field(), d, d);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            out.add_scaled(*c, f);
        }
        out
    }
}

/// Whether `gᵀ F g = F` for every generator.
pub fn is_invariant_form(f: &Matrix, m: &Representation) -> bool {
    m.generators()
        .iter()
        .all(|g| g.transpose().mul_ok(f).mul_ok(g) == *f)
}

/// Whether `F` is alternating: skew with zero diagonal.
pub fn is_alternating(f: &Matrix) -> bool {
    let fld = f.field();
    (0..f.rows()).all(|i| {
        f.get(i, i) == 0 && (0..i).all(|j| fld.add(f.get(i, j), f.get(j, i)) == 0)
    })
}

/// Basis of the invariant forms of the requested kind, in reduced echelon
/// form over the flattened Gram matrices.
pub fn invariant_forms(m: &Representation, kind: FormKind) -> Result<BilinearFormSpace> {
    let all = hom_space(m, &dual(m))?;
    let d = m.dim();
    let fld = m.field();
    let basis = if kind == FormKind::All || all.is_empty() {
        all
    } else {
        // linear conditions on the coefficient vector
        let mut conditions: Vec<Vec<Elem>> = Vec::new();
        for i in 0..d {
            for j in 0..=i {
                let row: Vec<Elem> = all
                    .iter()
                    .map(|f| match kind {
                        FormKind::Alternating if i == j => f.get(i, i),
                        FormKind::Alternating => fld.add(f.get(i, j), f.get(j, i)),
                        _ => fld.sub(f.get(i, j), f.get(j, i)),
                    })
                    .collect();
                if row.iter().any(|&x| x != 0) {
                    conditions.push(row);
                }
            }
        }
        let coeffs = if conditions.is_empty() {
            (0..all.len())
                .map(|k| {
                    let mut v = vec![0; all.len()];
                    v[k] = 1;
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(fld, &conditions).nullspace()
        };
        let flat = coeffs
            .iter()
            .map(|c| {
                let mut f = Matrix::zeros(fld, d, d);
                for (x, b) in c.iter().zip(&all) {
                    f.add_scaled(*x, b);
                }
                f.into_data()
            })
            .collect();
        canonical_matrices(fld, d, d, flat)
    };
    Ok(BilinearFormSpace {
        module: m.clone(),
        kind,
        basis,
    })
}

/// `{v : F(v, ·) = 0}` where `F(u, w) = uᵀ F w`.
pub fn form_radical(f: &Matrix, m: &Representation) -> SubmoduleWitness {
    let space = Subspace::span(m.field(), m.dim(), &f.transpose().nullspace());
    SubmoduleWitness { space }
}

/// How a self-dual factor pairs with itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityType {
    NotSelfDual { dual: String },
    Alternating,
    Symmetric,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorReport {
    pub label: String,
    pub dim: usize,
    pub multiplicity: usize,
    pub duality: DualityType,
    /// Whether this factor meets its multiplicity condition.
    pub condition_met: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    pub unique: bool,
    pub semisimple: bool,
    pub reason: String,
    pub factors: Vec<FactorReport>,
}

/// Decide whether the multiplicity conditions for uniqueness of a symplectic
/// embedding hold: non-self-dual factors (and their duals) with multiplicity
/// one, self-dual factors of symmetric type with multiplicity exactly two,
/// self-dual factors of alternating type with multiplicity one. The module
/// must be semisimple; faithfulness is assumed, not checked.
pub fn form_uniqueness_verdict(m: &Representation) -> Result<UniquenessVerdict> {
    let factors = chop(m)?;
    // semisimple iff the homogeneous socle components fill the module
    let mut socle = Subspace::zero(m.field(), m.dim());
    for fac in &factors {
        for x in hom_space(&fac.module, m)? {
            for c in 0..x.cols() {
                socle.insert(&x.column(c));
            }
        }
    }
    let semisimple = socle.dim() == m.dim();
    let mut reports = Vec::new();
    for fac in &factors {
        let w_dual = dual(&fac.module);
        let mut duality = None;
        for other in &factors {
            if other.module.dim() == fac.module.dim() && isomorphic(&w_dual, &other.module)? {
                duality = Some(if other.label == fac.label {
                    let alt = invariant_forms(&fac.module, FormKind::Alternating)?;
                    if alt.dim() > 0 {
                        DualityType::Alternating
                    } else {
                        DualityType::Symmetric
                    }
                } else {
                    DualityType::NotSelfDual {
                        dual: other.label.clone(),
                    }
                });
                break;
            }
        }
        let duality = duality.unwrap_or(DualityType::NotSelfDual {
            dual: format!("{}*", fac.label),
        });
        let condition_met = match &duality {
            DualityType::NotSelfDual { dual } => {
                fac.multiplicity == 1
                    && factors
                        .iter()
                        .any(|o| &o.label == dual && o.multiplicity == 1)
            }
            DualityType::Symmetric => fac.multiplicity == 2,
            DualityType::Alternating => fac.multiplicity == 1,
        };
        reports.push(FactorReport {
            label: fac.label.clone(),
            dim: fac.module.dim(),
            multiplicity: fac.multiplicity,
            duality,
            condition_met,
        });
    }
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| !r.condition_met)
        .map(|r| r.label.as_str())
        .collect();
    let (unique, reason) = if !semisimple {
        (
            false,
            format!("module is not semisimple (socle dimension {} of {})", socle.dim(), m.dim()),
        )
    } else if !failing.is_empty() {
        (false, format!("multiplicity condition fails for {}", failing.join(", ")))
    } else {
        (true, "all multiplicity conditions hold".to_string())
    };
    Ok(UniquenessVerdict {
        unique,
        semisimple,
        reason,
        factors: reports,
    })
}
