//! Rejecting solutions that cannot be the target simple algebra.

use serde::{Deserialize, Serialize};

use super::{GenericBracket, SolutionSet};
use crate::error::Result;
use crate::gfla::{pencil_profile, Elem, Matrix, Partition};
use crate::liealg::{
    algebra_profile, identify_simple_type, jacobi_residual, largest_abelian_in, AlgebraProfile, TypeIdentification,
};
use crate::roots::{max_abelian_dimension, parse_type_label};

/// Expected simple type, e.g. `G2` in characteristic 7.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub label: String,
    pub p: u32,
}

impl TargetSpec {
    /// The maximal abelian dimension for the target, when defined.
    pub fn abelian_bound(&self) -> Result<usize> {
        let (t, n) = parse_type_label(&self.label)?;
        Ok(max_abelian_dimension(t, n, self.p)?.result)
    }
}

#[derive(Debug, Clone, Default)]
pub struct FilterConfig {
    pub target: Option<TargetSpec>,
    /// An element of M whose adjoint action is tested on 1-parameter families.
    pub reference_element: Option<Vec<Elem>>,
    /// Jordan partitions the reference element may have.
    pub allowed_partitions: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Keep,
    /// Families are kept on the strength of sampled points.
    KeepSampled { sampled: usize, kept: usize },
    Reject { filter: String, evidence: String },
}

impl Verdict {
    pub fn is_kept(&self) -> bool {
        !matches!(self, Verdict::Reject { .. })
    }

    fn reject(filter: &str, evidence: String) -> Verdict {
        Verdict::Reject {
            filter: filter.into(),
            evidence,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateVerdict {
    /// Coefficients (points) or `None` for a family.
    pub coefficients: Option<Vec<Elem>>,
    pub family: Option<usize>,
    pub verdict: Verdict,
    pub profile: Option<AlgebraProfile>,
    pub identification: Option<TypeIdentification>,
}

/// Run the point filters in order: zero, Jacobi, center, derived, abelian
/// bound, type.
pub fn filter_point(
    b: &GenericBracket,
    coeffs: &[Elem],
    cfg: &FilterConfig,
) -> (Verdict, Option<AlgebraProfile>, Option<TypeIdentification>) {
    if coeffs.iter().all(|&x| x == 0) {
        return (Verdict::reject("zero", "zero product".into()), None, None);
    }
    let l = b.bracket_at(coeffs);
    if l.is_zero() {
        return (Verdict::reject("zero", "zero product".into()), None, None);
    }
    let jac = jacobi_residual(&l);
    if !jac.is_lie {
        return (
            Verdict::reject("jacobi", format!("{} violating triples", jac.violation_count)),
            None,
            None,
        );
    }
    let p = algebra_profile(&l);
    if p.center_dim != 0 {
        return (
            Verdict::reject("center", format!("center of dimension {}", p.center_dim)),
            Some(p),
            None,
        );
    }
    if p.derived_dim != p.dim {
        return (
            Verdict::reject("derived", format!("derived algebra of dimension {} of {}", p.derived_dim, p.dim)),
            Some(p),
            None,
        );
    }
    if let Some(t) = &cfg.target {
        if let Ok(bound) = t.abelian_bound() {
            let full = Matrix::identity(l.field(), l.dim()).row_vectors();
            if let Some(w) = largest_abelian_in(&l, &full, bound) {
                return (
                    Verdict::reject(
                        "abelian bound",
                        format!("abelian subalgebra of dimension {} > {} ({})", w.dim, bound, w.origin),
                    ),
                    Some(p),
                    None,
                );
            }
        }
    }
    let id = identify_simple_type(&l);
    if let (Some(t), Some(label)) = (&cfg.target, &id.label) {
        if *label != t.label {
            return (
                Verdict::reject("identify", format!("identified as {}, expected {}", label, t.label)),
                Some(p),
                Some(id),
            );
        }
    }
    (Verdict::Keep, Some(p), Some(id))
}

/// Pencil test on a 1-parameter affine family: reject when no partition of
/// `ad x` along the family is allowed.
fn pencil_test(b: &GenericBracket, sol: &SolutionSet, fam: usize, cfg: &FilterConfig) -> Option<Verdict> {
    let x = cfg.reference_element.as_ref()?;
    if cfg.allowed_partitions.is_empty() {
        return None;
    }
    let family = &sol.families[fam];
    if family.free.len() != 1 || !family.is_affine() {
        return None;
    }
    let f = b.module.field();
    let at0 = family.point(f, &[0]);
    let at1 = family.point(f, &[1]);
    let slope: Vec<Elem> = at1.iter().zip(&at0).map(|(&u, &v)| f.sub(u, v)).collect();
    let a = b.bracket_at(&at0).ad(x);
    let bm = b.bracket_at(&slope).ad(x);
    let prof = pencil_profile(&a, &bm).ok()?;
    let allowed = |p: &Partition| cfg.allowed_partitions.contains(p);
    if allowed(&prof.generic) || prof.exceptional.iter().any(|(_, p)| allowed(p)) {
        return None;
    }
    Some(Verdict::reject(
        "pencil",
        format!(
            "generic partition {} and {} exceptional partitions are not allowed",
            prof.generic,
            prof.exceptional.len()
        ),
    ))
}

/// Families with at most this many points are enumerated before being kept.
const FAMILY_ENUMERATION_LIMIT: usize = 1024;

fn digits(idx: usize, q: usize, n: usize) -> Vec<Elem> {
    (0..n).map(|i| (idx / q.pow(i as u32) % q) as Elem).collect()
}

/// Apply the filters to every point, and to `min(q, 16)` sampled points of
/// every family. A family with no kept sample is enumerated when small, and
/// rejected if no point at all survives.
pub fn filter_candidates(sol: &SolutionSet, b: &GenericBracket, cfg: &FilterConfig) -> Vec<CandidateVerdict> {
    let f = b.module.field();
    let mut out = Vec::new();
    for p in &sol.points {
        let (verdict, profile, identification) = filter_point(b, p, cfg);
        out.push(CandidateVerdict {
            coefficients: Some(p.clone()),
            family: None,
            verdict,
            profile,
            identification,
        });
    }
    for (k, fam) in sol.families.iter().enumerate() {
        if let Some(v) = pencil_test(b, sol, k, cfg) {
            out.push(CandidateVerdict {
                coefficients: None,
                family: Some(k),
                verdict: v,
                profile: None,
                identification: None,
            });
            continue;
        }
        let q = f.order() as usize;
        let total = q.checked_pow(fam.free.len() as u32).unwrap_or(usize::MAX);
        let samples = q.min(16).min(total);
        let mut kept = 0;
        let mut first_reject = None;
        let mut kept_profile = None;
        for t in 0..samples {
            // sample t spreads over the parameter space by base-q digits
            let idx = if total <= 16 { t } else { t * (total / samples) };
            let values = digits(idx, q, fam.free.len());
            let (v, prof, _) = filter_point(b, &fam.point(f, &values), cfg);
            if v.is_kept() {
                kept += 1;
                kept_profile = kept_profile.or(prof);
            } else if first_reject.is_none() {
                first_reject = Some(v);
            }
        }
        // a family is only rejected when every one of its points was tested
        let mut tested = samples;
        if kept == 0 && total <= FAMILY_ENUMERATION_LIMIT {
            for idx in 0..total {
                let values = digits(idx, q, fam.free.len());
                if filter_point(b, &fam.point(f, &values), cfg).0.is_kept() {
                    kept = 1;
                    break;
                }
            }
            if kept == 0 {
                tested = total;
            }
        }
        let verdict = match first_reject {
            Some(v) if kept == 0 && tested == total => v,
            _ => Verdict::KeepSampled { sampled: samples, kept },
        };
        out.push(CandidateVerdict {
            coefficients: None,
            family: Some(k),
            verdict,
            profile: kept_profile,
            identification: None,
        });
    }
    out
}
