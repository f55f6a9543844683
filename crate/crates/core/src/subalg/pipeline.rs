//! The full subalgebra run: form, ambient, window, equations, filters, orbits.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::filters::form_at;
use super::{
    ambient_bracket, build_window, candidate_filters, closure_constraints, form_space_mode, pencil_verdict,
    AmbientCheck, AmbientVariant, ClosureOptions, FormMode, ProfileTable, SubalgCandidate, SymplecticAmbient,
    TargetInfo, TargetWindow,
};
use crate::error::{Error, Result};
use crate::gfla::{Elem, Matrix};
use crate::lieproduct::{orbit_reduce, solve_system, SolutionSet, SolveBudget, Verdict};
use crate::modrep::Representation;

#[derive(Debug, Clone)]
pub enum FormChoice {
    /// Resolve with [`form_space_mode`](super::form_space_mode).
    Auto,
    Given(Matrix),
}

#[derive(Debug, Clone)]
pub struct SubalgScenario {
    /// The natural module `M`.
    pub module: Representation,
    /// The target module `L`.
    pub target_module: Representation,
    /// Chosen submodules `W ⊆ L`, by label.
    pub chosen: Vec<(String, Representation)>,
    pub form: FormChoice,
    pub variant: Option<AmbientVariant>,
    /// Sampled elements of the centralizer of `H` in `GL(M)` preserving the
    /// form up to a scalar.
    pub symmetries: Vec<Matrix>,
    pub target: TargetInfo,
    pub table: ProfileTable,
    pub budget: SolveBudget,
    pub closure: ClosureOptions,
    /// Expand families with at most this many points in total.
    pub expand_limit: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: String,
    pub dim: usize,
    pub hom_to_ambient: usize,
    pub hom_to_window: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub family: usize,
    pub description: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubalgRepresentative {
    pub coefficients: Vec<Elem>,
    pub members: Vec<Vec<Elem>>,
    pub candidate: SubalgCandidate,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SubalgReport {
    pub form_mode: String,
    pub form_space_dim: Option<usize>,
    pub essential_parameters: Option<usize>,
    pub ambient_dim: usize,
    pub ambient_check: Option<AmbientCheck>,
    pub target_hom_dim: usize,
    pub window_dim: usize,
    pub components: Vec<ComponentReport>,
    pub parameters: Vec<String>,
    pub pairs_used: usize,
    pub triples_used: usize,
    pub equations: usize,
    pub equations_by_degree: BTreeMap<usize, usize>,
    pub solver_points: usize,
    pub solver_families: usize,
    pub solver_branches: usize,
    pub families_expanded: bool,
    pub candidates: Vec<SubalgCandidate>,
    pub families: Vec<FamilyVerdict>,
    pub representatives: Vec<SubalgRepresentative>,
    pub orbits_complete: bool,
    pub exhausted: bool,
    /// Why the run stopped early, if it did.
    pub stopped: Option<String>,
    pub notes: Vec<String>,
}

const FAMILY_SAMPLES: usize = 16;

/// Run the subalgebra method on a scenario.
pub fn run_pipeline(sc: &SubalgScenario) -> Result<SubalgReport> {
    let mut rep = SubalgReport::default();
    let f = sc.module.field();
    let variant = sc.variant.unwrap_or_else(|| AmbientVariant::default_for(f));
    let (form, direction) = match &sc.form {
        FormChoice::Given(m) => {
            rep.form_mode = "given".into();
            (m.clone(), None)
        }
        FormChoice::Auto => {
            let r = form_space_mode(&sc.module)?;
            rep.form_space_dim = Some(r.space_dim);
            rep.essential_parameters = Some(r.essential);
            match r.mode {
                FormMode::Unique => {
                    rep.form_mode = "unique".into();
                    (r.base, None)
                }
                FormMode::Pencil => {
                    rep.form_mode = "pencil".into();
                    (r.base, r.direction)
                }
                FormMode::Wider => {
                    rep.form_mode = "wider".into();
                    if variant != AmbientVariant::FullTensor {
                        rep.stopped = Some(format!(
                            "{} essential form parameters; use the full-tensor ambient variant",
                            r.essential
                        ));
                        return Ok(rep);
                    }
                    (r.base, None)
                }
            }
        }
    };
    let ambient = ambient_bracket(&sc.module, &form, variant)?;
    rep.ambient_dim = ambient.dim();
    rep.ambient_check = Some(ambient.check.clone());
    let window = match build_window(&sc.target_module, &ambient, &sc.chosen) {
        Ok(w) => w,
        Err(Error::EmptyWindow) => {
            rep.stopped = Some(Error::EmptyWindow.to_string());
            rep.exhausted = true;
            rep.orbits_complete = true;
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.target_hom_dim = window.target_hom_dim;
    rep.window_dim = window.u.dim();
    rep.components = window
        .components
        .iter()
        .map(|c| ComponentReport {
            label: c.label.clone(),
            dim: c.module.dim(),
            hom_to_ambient: c.hom_to_ambient,
            hom_to_window: c.maps.len(),
        })
        .collect();
    let mut budget = sc.budget.clone();
    if direction.is_some() && budget.projective {
        // the equations are not homogeneous in the form parameter
        budget.projective = false;
        rep.notes.push("projective normalization disabled in pencil mode".into());
    }
    let mut opts = sc.closure.clone();
    let triples_allowed = opts.triples;
    opts.triples = false;
    let mut closure = closure_constraints(&window, &ambient, direction.as_ref(), &opts);
    let mut sol = solve_system(&closure.system, budget.clone());
    if triples_allowed && !sol.families.is_empty() {
        opts.triples = true;
        closure = closure_constraints(&window, &ambient, direction.as_ref(), &opts);
        sol = solve_system(&closure.system, budget.clone());
    }
    rep.parameters = closure.system.variables.clone();
    rep.pairs_used = closure.pairs_used;
    rep.triples_used = closure.triples_used;
    rep.equations = closure.system.equations.len();
    rep.equations_by_degree = closure.degrees.clone();
    rep.solver_points = sol.points.len();
    rep.solver_families = sol.families.len();
    rep.solver_branches = sol.branches;
    rep.exhausted = sol.exhausted;
    if !sol.families.is_empty() && sc.expand_limit > 0 {
        if let Some(all) = sol.all_points(f, sc.expand_limit) {
            sol.points = all;
            sol.families.clear();
            rep.families_expanded = true;
        }
    }
    let dir = direction.as_ref();
    rep.candidates = sol
        .points
        .par_iter()
        .map(|p| candidate_filters(p, &window, &ambient, dir, &sc.target, &sc.table))
        .collect();
    for (k, fam) in sol.families.iter().enumerate() {
        let verdict = family_verdict(&sol, k, &window, &ambient, dir, sc)?;
        rep.families.push(FamilyVerdict {
            family: k,
            description: fam.description.clone(),
            verdict,
        });
    }
    let actions = sc
        .symmetries
        .iter()
        .enumerate()
        .map(|(i, g)| symmetry_action(&window, &ambient, dir, g, i))
        .collect::<Result<Vec<_>>>()?;
    let kept: Vec<&SubalgCandidate> = rep.candidates.iter().filter(|c| c.verdict.is_kept()).collect();
    let points: Vec<Vec<Elem>> = kept.iter().map(|c| c.coefficients.clone()).collect();
    let orbits = orbit_reduce(f, &points, &actions, sol.projective);
    rep.orbits_complete = orbits.complete;
    let norm = |v: &[Elem]| {
        if sol.projective {
            SolutionSet::normalize(f, v)
        } else {
            v.to_vec()
        }
    };
    for (o, r) in orbits.representatives.iter().enumerate() {
        let members: Vec<Vec<Elem>> = points
            .iter()
            .zip(&orbits.assignment)
            .filter(|(_, &a)| a == o)
            .map(|(p, _)| norm(p))
            .collect();
        let candidate = kept
            .iter()
            .find(|c| norm(&c.coefficients) == *r)
            .map(|c| (*c).clone())
            .expect("representative is a kept candidate");
        rep.representatives.push(SubalgRepresentative {
            coefficients: r.clone(),
            members,
            candidate,
        });
    }
    Ok(rep)
}

/// Pencil test on 1-parameter affine families, then sampling.
fn family_verdict(
    sol: &SolutionSet,
    k: usize,
    window: &TargetWindow,
    ambient: &SymplecticAmbient,
    direction: Option<&Matrix>,
    sc: &SubalgScenario,
) -> Result<Verdict> {
    let f = ambient.module.field();
    let fam = &sol.families[k];
    let n = window.num_parameters();
    let form_fixed = direction.is_none() || fam.exprs.get(n).is_some_and(|e| e.is_constant());
    if fam.free.len() == 1 && fam.is_affine() && form_fixed {
        let at0 = fam.point(f, &[0]);
        let at1 = fam.point(f, &[1]);
        let form = form_at(ambient, direction, at0.get(n).copied());
        let s0 = window.images(&at0[..n]);
        let s1 = window.images(&at1[..n]);
        for (x0, x1) in s0.iter().zip(&s1) {
            let a = ambient.natural_action(&form, x0);
            let b = ambient.natural_action(&form, x1).sub(&a)?;
            if b.is_zero() {
                continue;
            }
            match pencil_verdict(&a, &b, &sc.table, "minimal") {
                Ok(Some(v)) => return Ok(v),
                Ok(None) => break,
                Err(Error::NotNilpotentPencil { .. }) | Err(Error::FieldTooSmall { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    let q = f.order() as usize;
    let total = q.checked_pow(fam.free.len() as u32).unwrap_or(usize::MAX);
    let samples = total.min(q.min(FAMILY_SAMPLES));
    let mut kept = 0;
    let mut first_reject = None;
    for t in 0..samples {
        let idx = if total <= FAMILY_SAMPLES { t } else { t * (total / samples) };
        let values: Vec<Elem> = (0..fam.free.len()).map(|i| (idx / q.pow(i as u32) % q) as Elem).collect();
        let c = candidate_filters(&fam.point(f, &values), window, ambient, direction, &sc.target, &sc.table);
        if c.verdict.is_kept() {
            kept += 1;
        } else if first_reject.is_none() {
            first_reject = Some(c.verdict);
        }
    }
    Ok(match first_reject {
        Some(v) if kept == 0 && samples == total => v,
        _ => Verdict::KeepSampled { sampled: samples, kept },
    })
}

/// The action of a centralizing symmetry `g` on the parameters: each map
/// `φ : W → U` goes to `S(g) ∘ φ`. The form parameter, if any, is fixed.
fn symmetry_action(
    window: &TargetWindow,
    ambient: &SymplecticAmbient,
    direction: Option<&Matrix>,
    g: &Matrix,
    element: usize,
) -> Result<Matrix> {
    let m = &ambient.module;
    let f = m.field();
    if g.rows() != m.dim() || g.cols() != m.dim() || !g.is_invertible() {
        return Err(Error::Invalid(format!("symmetry {} is not an invertible {}x{} matrix", element, m.dim(), m.dim())));
    }
    for (i, h) in m.generators().iter().enumerate() {
        if g.mul_ok(h) != h.mul_ok(g) {
            return Err(Error::NotNormalizing { element, map: i });
        }
    }
    let similitude = |form: &Matrix| -> bool {
        let moved = g.transpose().mul_ok(form).mul_ok(g);
        let Some(k) = (0..form.data().len()).find(|&k| form.data()[k] != 0) else {
            return moved.is_zero();
        };
        let lam = f.div(moved.data()[k], form.data()[k]);
        moved == form.scale(lam)
    };
    if !similitude(&ambient.form) || direction.is_some_and(|d| !similitude(d)) {
        return Err(Error::Invalid(format!("symmetry {} does not preserve the form up to a scalar", element)));
    }
    let n = ambient.dim();
    let gt = g.transpose();
    let sg_cols: Vec<Vec<Elem>> = (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            ambient.from_matrix(&g.mul_ok(&ambient.to_matrix(&e)).mul_ok(&gt))
        })
        .collect();
    let sg = Matrix::from_columns(f, n, &sg_cols);
    let total = window.num_parameters() + usize::from(direction.is_some());
    let mut action = Matrix::identity(f, total);
    for c in &window.components {
        if c.maps.is_empty() {
            continue;
        }
        let cols: Vec<Vec<Elem>> = c.maps.iter().map(|x| x.data().to_vec()).collect();
        let basis = Matrix::from_columns(f, cols[0].len(), &cols);
        for (r, phi) in c.maps.iter().enumerate() {
            let moved = sg.mul_ok(phi);
            let coeffs = basis
                .solve(moved.data())
                .ok_or(Error::NotNormalizing { element, map: c.offset + r })?;
            for (s, &v) in coeffs.iter().enumerate() {
                action.set(c.offset + s, c.offset + r, v);
            }
        }
    }
    Ok(action)
}
