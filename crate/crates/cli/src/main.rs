//! `modlie`: command-line front end for scenarios and one-off computations.
//!
//! Exit codes: 0 success, 1 error, 2 a scenario's expected values differ.

mod pipelines;
mod report;
mod scenario;
mod validate;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use modlie::cohom::{h1_dimension, parse_presentation};
use modlie::gfla::io::parse_matrix;
use modlie::gfla::{pencil_profile, Matrix};
use modlie::liealg::{algebra_profile, identify_simple_type, jacobi_residual, parse_structure_constants};
use modlie::modrep::io::parse_representation;
use modlie::modrep::{hom_space, Representation};
use modlie::roots::{max_abelian_dimension, parse_type_label};

use scenario::{read_text, Loaded, Pipeline, Scale};

#[derive(Parser)]
#[command(name = "modlie", version, about = "Modular representations, Lie products and subalgebra searches")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct RunArgs {
    scenario: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write wall-clock timings here (kept out of the report).
    #[arg(long)]
    timings: Option<PathBuf>,
    /// Allow scenarios marked `scale = "paper"`.
    #[arg(long)]
    paper_scale: bool,
    /// Classify even when the product space exceeds the desk-scale limit.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file.
    Run(RunArgs),
    /// Check input files without running anything.
    Validate {
        files: Vec<PathBuf>,
        /// Module to check presentations and forms against.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Hom spaces, composition factors and forms of one module.
    #[command(subcommand)]
    Modrep(ModrepCmd),
    /// Jacobi check, profile and type of a `GFLIE` algebra.
    #[command(subcommand)]
    Liealg(LiealgCmd),
    /// Root system queries.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// First cohomology from a presentation.
    #[command(subcommand)]
    Cohom(CohomCmd),
    /// Classify invariant brackets (a `lieproduct` scenario).
    #[command(subcommand)]
    Lieproduct(LieproductCmd),
    /// Run the subalgebra search (a `subalg` scenario).
    #[command(subcommand)]
    Subalg(SubalgCmd),
    /// Jordan types of the pencil `A + xB`.
    Pencil { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum ModrepCmd {
    /// Dimension of `Hom_G(A, B)`.
    Hom { a: PathBuf, b: PathBuf },
    /// Composition factors with multiplicities.
    Chop { module: PathBuf },
    /// Invariant bilinear forms.
    Forms {
        module: PathBuf,
        #[arg(long, default_value = "alternating")]
        kind: String,
    },
}

#[derive(Subcommand)]
enum LiealgCmd {
    /// Check the Jacobi identity.
    Verify { file: PathBuf },
    /// Center, derived and lower central series, Killing rank.
    Profile { file: PathBuf },
    /// Match against the simple types of the same dimension.
    Identify { file: PathBuf },
}

#[derive(Subcommand)]
enum RootsCmd {
    /// Maximal dimension of an abelian subalgebra.
    AbelianDim {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand)]
enum CohomCmd {
    /// `dim H^1(G, M)` from a presentation.
    H1 {
        #[arg(long)]
        presentation: PathBuf,
        module: PathBuf,
    },
}

#[derive(Subcommand)]
enum LieproductCmd {
    /// Run a `pipeline = "lieproduct"` scenario.
    Classify(RunArgs),
}

#[derive(Subcommand)]
enum SubalgCmd {
    /// Run a `pipeline = "subalg"` scenario.
    Run(RunArgs),
}

fn load_rep(path: &Path) -> Result<Representation> {
    parse_representation(&read_text(path)?).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

fn load_matrix(path: &Path) -> Result<Matrix> {
    parse_matrix(&read_text(path)?).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

fn load_lie(path: &Path) -> Result<modlie::liealg::StructureConstants> {
    parse_structure_constants(&read_text(path)?).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

fn emit(json_out: bool, summary: &pipelines::Summary, full: &Value) {
    if json_out {
        print!("{}", report::to_json(full));
    } else {
        print!("{}", report::render_summary(summary));
    }
}

fn summary_of(pairs: &[(&str, Value)]) -> pipelines::Summary {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn run_scenario(args: &RunArgs, only: Option<Pipeline>, json_out: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let head = scenario::parse_scenario(&args.scenario)?;
    if head.scale == Scale::Paper && !args.paper_scale {
        bail!(
            "{}: scenario '{}' is paper-scale; pass --paper-scale to run it",
            args.scenario.display(),
            head.name
        );
    }
    let mut l = Loaded::open(&args.scenario)?;
    if let Some(p) = only {
        if l.scenario.pipeline != p {
            bail!(
                "{}: scenario pipeline is '{}', expected '{}'",
                args.scenario.display(),
                l.scenario.pipeline.name(),
                p.name()
            );
        }
    }
    if args.allow_large {
        if let Some(d) = l.scenario.lieproduct.as_mut() {
            d.allow_large = true;
        }
    }
    let loaded = start.elapsed();
    let outcome = pipelines::run(&mut l).with_context(|| format!("{}", args.scenario.display()))?;
    let computed = start.elapsed();
    let mismatches = report::check_expected(l.scenario.expected.as_ref(), &outcome.summary);
    let doc = report::build(&l, &outcome, &mismatches);
    if let Some(out) = &args.out {
        std::fs::write(out, report::to_json(&doc)).with_context(|| format!("cannot write {}", out.display()))?;
    }
    if json_out {
        print!("{}", report::to_json(&doc));
    } else {
        print!("{}", report::render_text(&doc));
    }
    if let Some(t) = &args.timings {
        let timings = json!({
            "scenario": l.scenario.name,
            "threads": rayon::current_num_threads(),
            "load_seconds": loaded.as_secs_f64(),
            "total_seconds": computed.as_secs_f64(),
        });
        std::fs::write(t, report::to_json(&timings)).with_context(|| format!("cannot write {}", t.display()))?;
    }
    if mismatches.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}: {} expected value(s) differ", args.scenario.display(), mismatches.len());
        Ok(ExitCode::from(2))
    }
}

fn validate_cmd(files: &[PathBuf], rep: Option<&PathBuf>, json_out: bool) -> Result<ExitCode> {
    let against = rep.map(|p| load_rep(p)).transpose()?;
    let items: Vec<validate::Item> = files.iter().flat_map(|f| validate::validate_file(f, against.as_ref())).collect();
    if json_out {
        let v: Vec<Value> = items
            .iter()
            .map(|i| json!({ "file": i.file, "check": i.check, "ok": i.ok, "detail": i.detail }))
            .collect();
        print!("{}", report::to_json(&Value::Array(v)));
    } else {
        for i in &items {
            let tag = if i.ok { "ok  " } else { "FAIL" };
            if i.detail.is_empty() {
                println!("{} {}: {}", tag, i.file, i.check);
            } else {
                println!("{} {}: {} ({})", tag, i.file, i.check, i.detail);
            }
        }
    }
    Ok(if items.iter().all(|i| i.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let j = cli.json;
    match &cli.cmd {
        Cmd::Run(a) => return run_scenario(a, None, j),
        Cmd::Lieproduct(LieproductCmd::Classify(a)) => return run_scenario(a, Some(Pipeline::Lieproduct), j),
        Cmd::Subalg(SubalgCmd::Run(a)) => return run_scenario(a, Some(Pipeline::Subalg), j),
        Cmd::Validate { files, rep } => return validate_cmd(files, rep.as_ref(), j),
        Cmd::Modrep(ModrepCmd::Hom { a, b }) => {
            let (ma, mb) = (load_rep(a)?, load_rep(b)?);
            let h = hom_space(&ma, &mb).map_err(|e| anyhow!("hom: {}", e))?;
            let s = summary_of(&[("hom_dimension", json!(h.len()))]);
            emit(j, &s, &json!(s));
        }
        Cmd::Modrep(ModrepCmd::Chop { module }) => {
            let factors = pipelines::factor_list(&load_rep(module)?)?;
            if j {
                print!("{}", report::to_json(&Value::Array(factors)));
            } else {
                for f in &factors {
                    println!("{} dim {} multiplicity {}", f["label"].as_str().unwrap_or(""), f["dim"], f["multiplicity"]);
                }
            }
        }
        Cmd::Modrep(ModrepCmd::Forms { module, kind }) => {
            let o = pipelines::forms_outcome(&load_rep(module)?, pipelines::form_kind(kind)?)?;
            emit(j, &o.summary, &json!({ "summary": o.summary, "result": o.result }));
        }
        Cmd::Liealg(LiealgCmd::Verify { file }) => {
            let r = jacobi_residual(&load_lie(file)?);
            let s = summary_of(&[("is_lie", json!(r.is_lie)), ("violations", json!(r.violation_count))]);
            emit(j, &s, &json!(s));
            if !r.is_lie {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Liealg(LiealgCmd::Profile { file }) => {
            let p = algebra_profile(&load_lie(file)?);
            let v = serde_json::to_value(&p)?;
            let s = v.as_object().map(|o| o.clone().into_iter().collect()).unwrap_or_default();
            emit(j, &s, &v);
        }
        Cmd::Liealg(LiealgCmd::Identify { file }) => {
            let t = identify_simple_type(&load_lie(file)?);
            let s = summary_of(&[
                ("type", json!(t.label.clone().unwrap_or_else(|| "unidentified".into()))),
                ("reason", json!(t.reason)),
            ]);
            emit(j, &s, &serde_json::to_value(&t)?);
        }
        Cmd::Roots(RootsCmd::AbelianDim { ty, p }) => {
            let (t, n) = parse_type_label(ty).map_err(|e| anyhow!("{}", e))?;
            let q = max_abelian_dimension(t, n, *p).map_err(|e| anyhow!("{} at p = {}: {}", ty, p, e))?;
            let s = summary_of(&[
                ("abelian_dimension", json!(q.result)),
                ("formula", json!(q.formula)),
                ("formula_agrees", json!(q.formula_agrees())),
            ]);
            emit(j, &s, &serde_json::to_value(&q)?);
        }
        Cmd::Cohom(CohomCmd::H1 { presentation, module }) => {
            let p = parse_presentation(&read_text(presentation)?)
                .map_err(|e| anyhow!("{}: {}", presentation.display(), e))?;
            let m = load_rep(module)?;
            let c = h1_dimension(&p, &m).map_err(|e| anyhow!("{}: {}", module.display(), e))?;
            let s = summary_of(&[
                ("module_dim", json!(c.module_dim)),
                ("z1_dimension", json!(c.dimension_z1)),
                ("b1_dimension", json!(c.dimension_b1)),
                ("h1_dimension", json!(c.dimension_h1)),
            ]);
            emit(j, &s, &serde_json::to_value(&c)?);
        }
        Cmd::Pencil { a, b } => {
            let p = pencil_profile(&load_matrix(a)?, &load_matrix(b)?).map_err(|e| anyhow!("pencil: {}", e))?;
            let v = serde_json::to_value(&p)?;
            let s = summary_of(&[
                ("generic", json!(p.generic.to_string())),
                ("exceptional_points", json!(p.exceptional.len())),
            ]);
            emit(j, &s, &v);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::FAILURE;
        }
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}
