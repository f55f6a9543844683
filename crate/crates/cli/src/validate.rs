//! Input validation without running pipelines.

use std::path::Path;

use anyhow::Result;

use modlie::cohom::parse_presentation;
use modlie::gfla::io::parse_matrix;
use modlie::gfla::Matrix;
use modlie::liealg::{jacobi_residual, parse_structure_constants};
use modlie::modrep::io::parse_representation_unchecked;
use modlie::modrep::{is_alternating, Representation};
use modlie::subalg::parse_profile_table;

use crate::scenario::{read_text, Loaded};

#[derive(Debug, Clone)]
pub struct Item {
    pub file: String,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

impl Item {
    fn new(file: &str, check: &str, ok: bool, detail: impl Into<String>) -> Item {
        Item {
            file: file.into(),
            check: check.into(),
            ok,
            detail: detail.into(),
        }
    }
}

fn header(text: &str) -> Option<&str> {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'))?.split_whitespace().next()
}

fn rep_checks(name: &str, rep: &Representation, items: &mut Vec<Item>) {
    for (i, g) in rep.generators().iter().enumerate() {
        let ok = g.is_invertible();
        let detail = if ok {
            String::new()
        } else {
            format!("SingularGenerator: generator {} is not invertible", i)
        };
        items.push(Item::new(name, &format!("generator {} invertible", i), ok, detail));
    }
}

fn relator_checks(name: &str, pres: &modlie::cohom::FinitePresentation, rep: &Representation, items: &mut Vec<Item>) {
    if pres.generator_count != rep.num_generators() {
        items.push(Item::new(
            name,
            "generator count",
            false,
            format!("presentation has {} generators, module {}", pres.generator_count, rep.num_generators()),
        ));
        return;
    }
    for (i, r) in pres.relators.iter().enumerate() {
        let ok = rep.word_matrix(r).is_identity();
        let detail = if ok {
            String::new()
        } else {
            format!("RelatorViolation: relator {} does not act as the identity on {}", i, rep.label())
        };
        items.push(Item::new(name, &format!("relator {}", i), ok, detail));
    }
}

fn form_checks(name: &str, form: &Matrix, rep: &Representation, items: &mut Vec<Item>) {
    if form.rows() != rep.dim() || form.cols() != rep.dim() {
        items.push(Item::new(
            name,
            "form shape",
            false,
            format!("form is {}x{}, module has dimension {}", form.rows(), form.cols(), rep.dim()),
        ));
        return;
    }
    for (i, g) in rep.generators().iter().enumerate() {
        let ok = g.transpose().mul(form).and_then(|t| t.mul(g)).is_ok_and(|m| m == *form);
        let detail = if ok {
            String::new()
        } else {
            format!("generator {} does not preserve the form", i)
        };
        items.push(Item::new(name, &format!("form invariant under generator {}", i), ok, detail));
    }
    items.push(Item::new(name, "form alternating", is_alternating(form), ""));
}

/// Check one file; `against` is a module for presentations and forms.
pub fn validate_file(path: &Path, against: Option<&Representation>) -> Vec<Item> {
    let name = path.display().to_string();
    let mut items = Vec::new();
    let text = match read_text(path) {
        Ok(t) => t,
        Err(e) => return vec![Item::new(&name, "read", false, format!("{:#}", e))],
    };
    if path.extension().is_some_and(|e| e == "toml") {
        validate_scenario(path, &mut items);
        return items;
    }
    let parse_fail = |items: &mut Vec<Item>, e: modlie::Error| items.push(Item::new(&name, "parse", false, e.to_string()));
    match header(&text) {
        Some("GFREP") => match parse_representation_unchecked(&text) {
            Ok(rep) => rep_checks(&name, &rep, &mut items),
            Err(e) => parse_fail(&mut items, e),
        },
        Some("GFPRES") => match parse_presentation(&text) {
            Ok(p) => {
                items.push(Item::new(&name, "parse", true, format!("{} relators", p.relators.len())));
                if let Some(rep) = against {
                    relator_checks(&name, &p, rep, &mut items);
                }
            }
            Err(e) => parse_fail(&mut items, e),
        },
        Some("GFMAT") => match parse_matrix(&text) {
            Ok(m) => {
                items.push(Item::new(&name, "parse", true, format!("{}x{}", m.rows(), m.cols())));
                if let Some(rep) = against {
                    form_checks(&name, &m, rep, &mut items);
                }
            }
            Err(e) => parse_fail(&mut items, e),
        },
        Some("GFLIE") => match parse_structure_constants(&text) {
            Ok(l) => {
                let j = jacobi_residual(&l);
                let detail = format!("{} Jacobi violations", j.violation_count);
                items.push(Item::new(&name, "jacobi", j.is_lie, detail));
            }
            Err(e) => parse_fail(&mut items, e),
        },
        Some("GFPROF") => match parse_profile_table(&text) {
            Ok(t) => items.push(Item::new(&name, "parse", true, format!("{} rows", t.rows.len()))),
            Err(e) => parse_fail(&mut items, e),
        },
        other => items.push(Item::new(
            &name,
            "format",
            false,
            format!("unrecognised header {:?}", other.unwrap_or("")),
        )),
    }
    items
}

fn validate_scenario(path: &Path, items: &mut Vec<Item>) {
    let name = path.display().to_string();
    let mut l = match Loaded::open(path) {
        Ok(l) => l,
        Err(e) => {
            items.push(Item::new(&name, "load", false, format!("{:#}", e)));
            return;
        }
    };
    items.push(Item::new(&name, "load", true, format!("{} modules", l.scenario.modules.len())));
    if let Err(e) = scenario_checks(&mut l, &name, items) {
        items.push(Item::new(&name, "inputs", false, format!("{:#}", e)));
    }
}

fn scenario_checks(l: &mut Loaded, name: &str, items: &mut Vec<Item>) -> Result<()> {
    if let Some(h) = l.scenario.h1.clone() {
        let text = l.read(&h.presentation)?;
        let p = parse_presentation(&text).map_err(|e| anyhow::anyhow!("{}: {}", h.presentation, e))?;
        let rep = l.module(&h.module)?.clone();
        relator_checks(&format!("{} [{}]", name, h.presentation), &p, &rep, items);
    }
    let forms: Vec<(String, String)> = l
        .scenario
        .subalg
        .iter()
        .map(|s| (s.form.clone(), s.module.clone()))
        .chain(l.scenario.window.iter().map(|w| (w.form.clone(), w.module.clone())))
        .filter(|(f, _)| f != "auto")
        .collect();
    for (file, module) in forms {
        let m = l.matrix(&file)?;
        let rep = l.module(&module)?.clone();
        form_checks(&format!("{} [{}]", name, file), &m, &rep, items);
    }
    if let Some(s) = l.scenario.subalg.clone() {
        if let Some(t) = &s.profile_table {
            let text = l.read(t)?;
            let ok = parse_profile_table(&text);
            items.push(Item::new(
                &format!("{} [{}]", name, t),
                "parse",
                ok.is_ok(),
                ok.err().map(|e| e.to_string()).unwrap_or_default(),
            ));
        }
    }
    if let Some(c) = l.scenario.lieproduct.as_ref().and_then(|d| d.constants.clone()) {
        let text = l.read(&c)?;
        match parse_structure_constants(&text) {
            Ok(sc) => {
                let j = jacobi_residual(&sc);
                items.push(Item::new(
                    &format!("{} [{}]", name, c),
                    "jacobi",
                    j.is_lie,
                    format!("{} Jacobi violations", j.violation_count),
                ));
            }
            Err(e) => items.push(Item::new(&format!("{} [{}]", name, c), "parse", false, e.to_string())),
        }
    }
    for file in l.scenario.symmetries.elements.clone() {
        let m = l.matrix(&file)?;
        items.push(Item::new(&format!("{} [{}]", name, file), "invertible", m.is_invertible(), ""));
    }
    Ok(())
}
