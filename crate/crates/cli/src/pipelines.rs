//! Dispatch from a loaded scenario to the library pipelines.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use modlie::cohom::{coset_enumeration, h1_dimension, parse_presentation};
use modlie::liealg::parse_structure_constants;
use modlie::lieproduct::seeded::seeded_scenario;
use modlie::lieproduct::{alternating_product_space, classify, ClassifyOptions, SolutionSet, SolveBudget, TargetSpec};
use modlie::modrep::{chop, hom_space, invariant_forms, FormKind, Representation};
use modlie::roots::{max_abelian_dimension, parse_type_label};
use modlie::subalg::{
    ambient_bracket, build_window, form_space_mode, parse_profile_table, run_pipeline, AmbientVariant, ClosureOptions,
    FormChoice, FormMode, ProfileTable, SubalgScenario, TargetInfo,
};
use modlie::Error;

use crate::scenario::{Loaded, Pipeline};

pub type Summary = BTreeMap<String, Value>;

pub struct Outcome {
    pub summary: Summary,
    pub result: Value,
}

fn lib<T>(what: &str, r: modlie::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{}: {}", what, e))
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T> {
    s.as_ref().ok_or_else(|| anyhow!("pipeline needs a [{}] section", name))
}

fn budget(l: &Loaded) -> SolveBudget {
    let b = &l.scenario.budget;
    let d = SolveBudget::default();
    SolveBudget {
        enum_vars: b.enum_vars.unwrap_or(d.enum_vars),
        enum_limit: b.enum_limit.unwrap_or(d.enum_limit),
        max_branches: b.max_branches.unwrap_or(d.max_branches),
        projective: l.scenario.symmetries.scalars_centralize,
    }
}

fn variant(name: &Option<String>, m: &Representation) -> Result<AmbientVariant> {
    match name {
        None => Ok(AmbientVariant::default_for(m.field())),
        Some(s) => serde_json::from_value(Value::String(s.clone()))
            .map_err(|_| anyhow!("ambient_variant must be sym2, ext2-char2 or full-tensor, not '{}'", s)),
    }
}

pub fn run(l: &mut Loaded) -> Result<Outcome> {
    match l.scenario.pipeline {
        Pipeline::AbelianDim => abelian_dim(l),
        Pipeline::Hom => hom(l),
        Pipeline::Chop => chop_pipeline(l),
        Pipeline::Forms => forms(l),
        Pipeline::H1 => h1(l),
        Pipeline::ProductSpace => product_space(l),
        Pipeline::Lieproduct => lieproduct(l),
        Pipeline::Subalg => subalg(l),
        Pipeline::Window => window(l),
    }
}

fn abelian_dim(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.abelian_dim, "abelian_dim")?;
    let mut summary = Summary::new();
    let mut results = Vec::new();
    for c in &d.cases {
        let (t, n) = lib("type", parse_type_label(&c.ty))?;
        let q = lib(&format!("{} at p = {}", c.ty, c.p), max_abelian_dimension(t, n, c.p))?;
        summary.insert(format!("abelian_dimension.{}.p{}", c.ty, c.p), json!(q.result));
        summary.insert(format!("formula_agrees.{}.p{}", c.ty, c.p), json!(q.formula_agrees()));
        results.push(serde_json::to_value(&q)?);
    }
    Ok(Outcome {
        summary,
        result: Value::Array(results),
    })
}

fn hom(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.hom, "hom")?;
    let basis = lib("hom", hom_space(l.module(&d.source)?, l.module(&d.target)?))?;
    let mut summary = Summary::new();
    summary.insert("hom_dimension".into(), json!(basis.len()));
    Ok(Outcome {
        summary,
        result: json!({ "hom_dimension": basis.len() }),
    })
}

pub fn factor_list(m: &Representation) -> Result<Vec<Value>> {
    Ok(lib("chop", chop(m))?
        .iter()
        .map(|f| json!({ "label": f.label, "dim": f.module.dim(), "multiplicity": f.multiplicity }))
        .collect())
}

fn chop_pipeline(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.chop, "chop")?;
    let factors = factor_list(l.module(&d.module)?)?;
    let shape: Vec<String> = factors
        .iter()
        .map(|f| format!("{}^{}", f["label"].as_str().unwrap(), f["multiplicity"]))
        .collect();
    let mut summary = Summary::new();
    summary.insert("factors".into(), json!(shape.join(" ")));
    summary.insert(
        "composition_length".into(),
        json!(factors.iter().map(|f| f["multiplicity"].as_u64().unwrap()).sum::<u64>()),
    );
    Ok(Outcome {
        summary,
        result: Value::Array(factors),
    })
}

pub fn form_kind(s: &str) -> Result<FormKind> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| anyhow!("form kind must be alternating, symmetric or all"))
}

pub fn forms_outcome(m: &Representation, kind: FormKind) -> Result<Outcome> {
    let space = lib("forms", invariant_forms(m, kind))?;
    let mut summary = Summary::new();
    summary.insert("form_space_dim".into(), json!(space.dim()));
    if kind == FormKind::Alternating {
        match form_space_mode(m) {
            Ok(r) => {
                let mode = match r.mode {
                    FormMode::Unique => "unique",
                    FormMode::Pencil => "pencil",
                    FormMode::Wider => "wider",
                };
                summary.insert("form_mode".into(), json!(mode));
                summary.insert("essential_parameters".into(), json!(r.essential));
                summary.insert("summands".into(), json!(r.summands));
            }
            Err(Error::NoNondegenerateForm) => {
                summary.insert("form_mode".into(), json!("none"));
            }
            Err(e) => bail!("forms: {}", e),
        }
    }
    let result = json!({
        "kind": kind,
        "basis": space.basis.iter().map(|b| b.data().to_vec()).collect::<Vec<_>>(),
    });
    Ok(Outcome { summary, result })
}

fn forms(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.forms, "forms")?.clone();
    forms_outcome(l.module(&d.module)?, form_kind(&d.kind)?)
}

fn h1(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.h1, "h1")?.clone();
    let text = l.read(&d.presentation)?;
    let pres = parse_presentation(&text).map_err(|e| anyhow!("{}: {}", d.presentation, e))?;
    let m = l.module(&d.module)?.clone();
    let mut summary = Summary::new();
    if let Some(order) = d.group_order {
        let found = coset_enumeration(&pres, &[], order.saturating_mul(4).max(1000));
        summary.insert("group_order".into(), found.map_or(Value::Null, |n| json!(n)));
    }
    let c = lib(&format!("h1 of {}", d.module), h1_dimension(&pres, &m))?;
    summary.insert("module_dim".into(), json!(c.module_dim));
    summary.insert("h1_dimension".into(), json!(c.dimension_h1));
    summary.insert("z1_dimension".into(), json!(c.dimension_z1));
    summary.insert("b1_dimension".into(), json!(c.dimension_b1));
    Ok(Outcome {
        summary,
        result: serde_json::to_value(&c)?,
    })
}

fn product_space(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.product_space, "product_space")?;
    let b = lib("product space", alternating_product_space(l.module(&d.module)?))?;
    let mut summary = Summary::new();
    summary.insert("r_dimension".into(), json!(b.dimension()));
    Ok(Outcome {
        summary,
        result: json!({ "r_dimension": b.dimension() }),
    })
}

fn lieproduct(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.lieproduct, "lieproduct")?.clone();
    let mut normalizer = Vec::new();
    let mut seeded_point = None;
    let mut target = d.target.clone();
    let module = match (&d.module, &d.seeded) {
        (Some(name), None) => l.module(name)?.clone(),
        (None, Some(label)) => {
            let p = l.scenario.field.as_ref().map(|f| f.p).ok_or_else(|| anyhow!("seeded scenarios need [field]"))?;
            let (t, n) = lib("type", parse_type_label(label))?;
            let s = lib("seeded scenario", seeded_scenario(t, n, p))?;
            if let Some(file) = &d.constants {
                let text = l.read(file)?;
                let shipped = parse_structure_constants(&text).map_err(|e| anyhow!("{}: {}", file, e))?;
                if shipped.entries() != s.chevalley.algebra.entries() || shipped.dim() != s.chevalley.algebra.dim() {
                    bail!("{}: structure constants differ from the {} Chevalley basis", file, label);
                }
            }
            let b = lib("product space", s.generic_bracket())?;
            seeded_point = s.seeded_point(&b);
            normalizer.extend(s.normalizer.iter().cloned());
            target.get_or_insert_with(|| label.clone());
            s.module
        }
        _ => bail!("[lieproduct] needs exactly one of module, seeded"),
    };
    for file in l.scenario.symmetries.elements.clone() {
        normalizer.push(l.matrix(&file)?);
    }
    let p = module.field().p();
    let opts = ClassifyOptions {
        target: target.clone().map(|label| TargetSpec { label, p }),
        budget: budget(l),
        allow_large: d.allow_large,
        expand_limit: d.expand_limit.unwrap_or(modlie::lieproduct::DEFAULT_EXPAND_LIMIT),
        ..ClassifyOptions::default()
    };
    let r = lib("classify", classify(&module, &normalizer, &opts))?;
    let mut summary = Summary::new();
    summary.insert("module_dimension".into(), json!(r.module_dimension));
    summary.insert("r_dimension".into(), json!(r.r_dimension));
    summary.insert("raw_equations".into(), json!(r.raw_equations));
    summary.insert("equations".into(), json!(r.equations));
    summary.insert("solver_points".into(), json!(r.solver_points));
    summary.insert("solver_families".into(), json!(r.solver_families));
    summary.insert("exhausted".into(), json!(r.exhausted));
    summary.insert("orbits_complete".into(), json!(r.orbits_complete));
    summary.insert("kept".into(), json!(r.ledger.iter().filter(|c| c.verdict.is_kept()).count()));
    summary.insert("representatives".into(), json!(r.representatives.len()));
    summary.insert("surviving_families".into(), json!(r.surviving_families.len()));
    let labels: Vec<String> = r
        .representatives
        .iter()
        .map(|x| x.identification.label.clone().unwrap_or_else(|| "?".into()))
        .collect();
    summary.insert("representative_types".into(), json!(labels.join(" ")));
    if let Some(seed) = seeded_point {
        let want = if r.projective {
            SolutionSet::normalize(module.field(), &seed)
        } else {
            seed
        };
        let entry = r.ledger.iter().find(|c| c.coefficients.as_ref() == Some(&want));
        summary.insert("seeded.in_solution_set".into(), json!(entry.is_some()));
        summary.insert("seeded.survives".into(), json!(entry.is_some_and(|c| c.verdict.is_kept())));
        let label = entry
            .and_then(|c| c.identification.as_ref())
            .and_then(|i| i.label.clone())
            .unwrap_or_else(|| "?".into());
        summary.insert("seeded.identified_as".into(), json!(label));
        let orbit = r.representatives.iter().position(|x| x.members.contains(&want));
        summary.insert("seeded.orbit".into(), orbit.map_or(Value::Null, |o| json!(o)));
    }
    Ok(Outcome {
        summary,
        result: serde_json::to_value(&r)?,
    })
}

fn resolve_form(l: &mut Loaded, form: &str, m: &Representation) -> Result<FormChoice> {
    if form == "auto" {
        Ok(FormChoice::Auto)
    } else {
        let f = l.matrix(form)?;
        if f.rows() != m.dim() || f.cols() != m.dim() {
            bail!("{}: form must be {}x{}", form, m.dim(), m.dim());
        }
        Ok(FormChoice::Given(f))
    }
}

fn chosen(l: &Loaded, names: &[String]) -> Result<Vec<(String, Representation)>> {
    names.iter().map(|n| Ok((n.clone(), l.module(n)?.clone()))).collect()
}

fn subalg(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.subalg, "subalg")?.clone();
    let module = l.module(&d.module)?.clone();
    let form = resolve_form(l, &d.form, &module)?;
    let table = match &d.profile_table {
        Some(file) => {
            let text = l.read(file)?;
            parse_profile_table(&text).map_err(|e| anyhow!("{}: {}", file, e))?
        }
        None => ProfileTable::default(),
    };
    let mut symmetries = Vec::new();
    for file in l.scenario.symmetries.elements.clone() {
        symmetries.push(l.matrix(&file)?);
    }
    let mut closure = ClosureOptions {
        triples: d.triples,
        ..ClosureOptions::default()
    };
    if let Some(n) = d.max_pairs {
        closure.max_pairs = n;
    }
    let sc = SubalgScenario {
        target_module: l.module(&d.target_module)?.clone(),
        chosen: chosen(l, &d.chosen)?,
        form,
        variant: Some(variant(&d.ambient_variant, &module)?),
        symmetries,
        target: TargetInfo {
            spec: TargetSpec {
                label: d.target.clone(),
                p: module.field().p(),
            },
            dim: d.target_dim,
        },
        table,
        budget: budget(l),
        closure,
        expand_limit: d.expand_limit.unwrap_or(modlie::lieproduct::DEFAULT_EXPAND_LIMIT),
        module,
    };
    let r = lib("subalgebra method", run_pipeline(&sc))?;
    let mut summary = Summary::new();
    summary.insert("form_mode".into(), json!(r.form_mode));
    summary.insert("ambient_dim".into(), json!(r.ambient_dim));
    summary.insert("window_dim".into(), json!(r.window_dim));
    summary.insert("target_hom_dim".into(), json!(r.target_hom_dim));
    for c in &r.components {
        summary.insert(format!("hom.{}", c.label), json!(c.hom_to_window));
    }
    summary.insert("parameters".into(), json!(r.parameters.len()));
    summary.insert("equations".into(), json!(r.equations));
    summary.insert("candidates".into(), json!(r.candidates.len()));
    summary.insert("kept".into(), json!(r.candidates.iter().filter(|c| c.verdict.is_kept()).count()));
    summary.insert("representatives".into(), json!(r.representatives.len()));
    summary.insert("exhausted".into(), json!(r.exhausted));
    summary.insert("orbits_complete".into(), json!(r.orbits_complete));
    summary.insert("stopped".into(), json!(r.stopped.clone().unwrap_or_else(|| "no".into())));
    Ok(Outcome {
        summary,
        result: serde_json::to_value(&r)?,
    })
}

fn window(l: &mut Loaded) -> Result<Outcome> {
    let d = section(&l.scenario.window, "window")?.clone();
    let module = l.module(&d.module)?.clone();
    let form = match resolve_form(l, &d.form, &module)? {
        FormChoice::Given(f) => f,
        FormChoice::Auto => lib("form", form_space_mode(&module))?.base,
    };
    let ambient = lib("ambient", ambient_bracket(&module, &form, variant(&d.ambient_variant, &module)?))?;
    let target = l.module(&d.target_module)?.clone();
    let w = build_window(&target, &ambient, &chosen(l, &d.chosen)?).context("window")?;
    let mut summary = Summary::new();
    summary.insert("ambient_dim".into(), json!(ambient.dim()));
    summary.insert("window_dim".into(), json!(w.u.dim()));
    summary.insert("target_hom_dim".into(), json!(w.target_hom_dim));
    let mut comps = Vec::new();
    for c in &w.components {
        summary.insert(format!("hom.{}", c.label), json!(c.maps.len()));
        comps.push(json!({ "label": c.label, "dim": c.module.dim(), "hom_to_window": c.maps.len() }));
    }
    Ok(Outcome {
        summary,
        result: json!({ "ambient_check": ambient.check, "components": comps }),
    })
}
