//! The whole pipeline: product space, Jacobi system, solve, filter, orbits.

use serde::{Deserialize, Serialize};

use super::{
    alternating_product_space, coefficient_action, filter_candidates, jacobi_system, orbit_reduce, solve_system,
    CandidateVerdict, FilterConfig, SolutionSet, SolveBudget, TargetSpec,
};
use crate::error::{Error, Result};
use crate::gfla::{Elem, Matrix};
use crate::liealg::{algebra_profile, identify_simple_type, jacobi_residual, AlgebraProfile, TypeIdentification};
use crate::modrep::Representation;

/// Above this many parameters the Jacobi system is usually too large to solve.
pub const MAX_PRODUCT_DIMENSION: usize = 100;

pub const DEFAULT_EXPAND_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub target: Option<TargetSpec>,
    pub budget: SolveBudget,
    /// Pencil test data for 1-parameter families.
    pub filter: FilterConfig,
    /// Run even when the product space is larger than [`MAX_PRODUCT_DIMENSION`].
    pub allow_large: bool,
    /// Expand the families into explicit points when there are at most this
    /// many solutions in total. Zero keeps families as they are.
    pub expand_limit: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            target: None,
            budget: SolveBudget::default(),
            filter: FilterConfig::default(),
            allow_large: false,
            expand_limit: DEFAULT_EXPAND_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Representative {
    pub coefficients: Vec<Elem>,
    /// Kept candidates in this orbit.
    pub members: Vec<Vec<Elem>>,
    pub jacobi_violations: usize,
    pub profile: AlgebraProfile,
    pub identification: TypeIdentification,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub module_dimension: usize,
    pub r_dimension: usize,
    pub raw_equations: usize,
    pub equations: usize,
    pub solver_points: usize,
    pub solver_families: usize,
    pub solver_branches: usize,
    /// Families were small enough to be replaced by their points.
    pub families_expanded: bool,
    pub projective: bool,
    pub ledger: Vec<CandidateVerdict>,
    pub representatives: Vec<Representative>,
    /// Families that survived sampling; they are not orbit-reduced.
    pub surviving_families: Vec<usize>,
    pub family_descriptions: Vec<Vec<String>>,
    pub orbits_complete: bool,
    pub exhausted: bool,
}

fn normal(f: &crate::gfla::Field, c: &[Elem], projective: bool) -> Vec<Elem> {
    if projective {
        SolutionSet::normalize(f, c)
    } else {
        c.to_vec()
    }
}

/// Classify the `H`-invariant Lie brackets on `m` up to the group generated
/// by `normalizer`.
pub fn classify(m: &Representation, normalizer: &[Matrix], opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let b = alternating_product_space(m)?;
    let n = b.dimension();
    if n > MAX_PRODUCT_DIMENSION && !opts.allow_large {
        return Err(Error::OutsideValidity(format!(
            "product space has dimension {} > {}; pass the override to run anyway",
            n, MAX_PRODUCT_DIMENSION
        )));
    }
    let actions = normalizer
        .iter()
        .enumerate()
        .map(|(i, g)| coefficient_action(&b, g, i))
        .collect::<Result<Vec<_>>>()?;
    let system = jacobi_system(&b);
    let mut sol = solve_system(&system, opts.budget.clone());
    let solver_points = sol.points.len();
    let solver_families = sol.families.len();
    let mut families_expanded = false;
    if !sol.families.is_empty() && opts.expand_limit > 0 {
        if let Some(all) = sol.all_points(m.field(), opts.expand_limit) {
            sol.points = all;
            sol.families.clear();
            families_expanded = true;
        }
    }
    let mut cfg = opts.filter.clone();
    if cfg.target.is_none() {
        cfg.target = opts.target.clone();
    }
    let ledger = filter_candidates(&sol, &b, &cfg);
    let kept: Vec<Vec<Elem>> = ledger
        .iter()
        .filter(|c| c.verdict.is_kept())
        .filter_map(|c| c.coefficients.clone())
        .collect();
    let f = m.field();
    let orbits = orbit_reduce(f, &kept, &actions, sol.projective);
    let mut representatives = Vec::new();
    for (k, rep) in orbits.representatives.iter().enumerate() {
        let l = b.bracket_at(rep);
        representatives.push(Representative {
            coefficients: rep.clone(),
            members: kept
                .iter()
                .zip(&orbits.assignment)
                .filter(|(_, &a)| a == k)
                .map(|(c, _)| normal(f, c, sol.projective))
                .collect(),
            jacobi_violations: jacobi_residual(&l).violation_count,
            profile: algebra_profile(&l),
            identification: identify_simple_type(&l),
        });
    }
    let surviving_families: Vec<usize> = ledger
        .iter()
        .filter(|c| c.verdict.is_kept())
        .filter_map(|c| c.family)
        .collect();
    Ok(ClassificationReport {
        module_dimension: m.dim(),
        r_dimension: n,
        raw_equations: system.raw_count,
        equations: system.equations.len(),
        solver_points,
        solver_families,
        families_expanded,
        solver_branches: sol.branches,
        projective: sol.projective,
        family_descriptions: surviving_families.iter().map(|&i| sol.families[i].description.clone()).collect(),
        surviving_families,
        ledger,
        representatives,
        orbits_complete: orbits.complete,
        exhausted: sol.exhausted,
    })
}
