//! Scenario files (TOML) and the inputs they reference.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use modlie::gfla::io::parse_matrix;
use modlie::gfla::{Field, Matrix};
use modlie::modrep::io::parse_representation;
use modlie::modrep::{dual, ext2, sym2, tensor, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    Lieproduct,
    Subalg,
    Window,
    ProductSpace,
    H1,
    AbelianDim,
    Hom,
    Chop,
    Forms,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Lieproduct => "lieproduct",
            Pipeline::Subalg => "subalg",
            Pipeline::Window => "window",
            Pipeline::ProductSpace => "product-space",
            Pipeline::H1 => "h1",
            Pipeline::AbelianDim => "abelian-dim",
            Pipeline::Hom => "hom",
            Pipeline::Chop => "chop",
            Pipeline::Forms => "forms",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    #[default]
    Desk,
    /// Gated behind `--paper-scale`.
    Paper,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDecl {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

/// A named module: read from a file or built from other named modules.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub name: String,
    pub file: Option<String>,
    pub sum: Option<Vec<String>>,
    pub tensor: Option<Vec<String>>,
    pub sym2: Option<String>,
    pub ext2: Option<String>,
    pub dual: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetDecl {
    pub enum_vars: Option<usize>,
    pub enum_limit: Option<u64>,
    pub max_branches: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryDecl {
    /// Scalars centralize `H`: solutions are taken up to scalars.
    #[serde(default)]
    pub scalars_centralize: bool,
    /// Matrix files of normalizing (lieproduct) or centralizing (subalg)
    /// elements.
    #[serde(default)]
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianCase {
    #[serde(rename = "type")]
    pub ty: String,
    pub p: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianDimDecl {
    pub cases: Vec<AbelianCase>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDecl {
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleRef {
    pub module: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsDecl {
    pub module: String,
    #[serde(default = "alternating")]
    pub kind: String,
}

fn alternating() -> String {
    "alternating".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Decl {
    pub presentation: String,
    pub module: String,
    /// Check the presented group's order by coset enumeration.
    pub group_order: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieproductDecl {
    /// A named module, or
    pub module: Option<String>,
    /// a seeded Chevalley scenario of this type over the scenario field.
    pub seeded: Option<String>,
    /// Shipped structure constants that must match the seeded algebra.
    pub constants: Option<String>,
    pub target: Option<String>,
    #[serde(default)]
    pub allow_large: bool,
    pub expand_limit: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgDecl {
    pub module: String,
    pub target_module: String,
    /// Named modules, each a submodule of the target module.
    pub chosen: Vec<String>,
    /// `"auto"` or a matrix file.
    #[serde(default = "auto")]
    pub form: String,
    pub ambient_variant: Option<String>,
    pub target: String,
    pub target_dim: usize,
    pub profile_table: Option<String>,
    #[serde(default)]
    pub triples: bool,
    pub max_pairs: Option<usize>,
    pub expand_limit: Option<usize>,
}

fn auto() -> String {
    "auto".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowDecl {
    pub module: String,
    pub target_module: String,
    pub chosen: Vec<String>,
    #[serde(default = "auto")]
    pub form: String,
    pub ambient_variant: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub pipeline: Pipeline,
    #[serde(default)]
    pub scale: Scale,
    pub field: Option<FieldDecl>,
    #[serde(default)]
    pub modules: Vec<ModuleDecl>,
    #[serde(default)]
    pub budget: BudgetDecl,
    #[serde(default)]
    pub symmetries: SymmetryDecl,
    pub abelian_dim: Option<AbelianDimDecl>,
    pub hom: Option<HomDecl>,
    pub chop: Option<ModuleRef>,
    pub forms: Option<FormsDecl>,
    pub h1: Option<H1Decl>,
    pub product_space: Option<ModuleRef>,
    pub lieproduct: Option<LieproductDecl>,
    pub subalg: Option<SubalgDecl>,
    pub window: Option<WindowDecl>,
    /// Values the summary must contain, by dotted key.
    pub expected: Option<toml::Table>,
}

/// A file read on behalf of a scenario, with its digest.
#[derive(Debug, Clone)]
pub struct Input {
    /// As written in the scenario.
    pub path: String,
    pub sha256: String,
}

/// A parsed scenario plus everything loaded from disk.
pub struct Loaded {
    pub scenario: Scenario,
    pub source_sha256: String,
    dir: PathBuf,
    inputs: BTreeMap<String, Input>,
    modules: BTreeMap<String, Representation>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Parse a scenario without touching the files it references.
pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let text = read_text(path)?;
    toml::from_str(&text).with_context(|| format!("{}", path.display()))
}

impl Loaded {
    pub fn open(path: &Path) -> Result<Loaded> {
        let text = read_text(path)?;
        let scenario: Scenario = toml::from_str(&text).with_context(|| format!("{}", path.display()))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut loaded = Loaded {
            scenario,
            source_sha256: sha256_hex(text.as_bytes()),
            dir,
            inputs: BTreeMap::new(),
            modules: BTreeMap::new(),
        };
        loaded.load_modules()?;
        Ok(loaded)
    }

    pub fn inputs(&self) -> Vec<Input> {
        self.inputs.values().cloned().collect()
    }

    /// Read a referenced file, recording its digest.
    pub fn read(&mut self, rel: &str) -> Result<String> {
        let path = self.dir.join(rel);
        let text = read_text(&path)?;
        self.inputs.insert(
            rel.to_string(),
            Input {
                path: rel.to_string(),
                sha256: sha256_hex(text.as_bytes()),
            },
        );
        Ok(text)
    }

    pub fn matrix(&mut self, rel: &str) -> Result<Matrix> {
        let text = self.read(rel)?;
        let m = parse_matrix(&text).map_err(|e| anyhow!("{}: {}", rel, e))?;
        self.check_field(m.field(), rel)?;
        Ok(m)
    }

    fn check_field(&self, f: &Field, what: &str) -> Result<()> {
        if let Some(d) = &self.scenario.field {
            if f.p() != d.p || f.k() != d.k {
                bail!(
                    "{}: field GF({}^{}) disagrees with the scenario field GF({}^{})",
                    what,
                    f.p(),
                    f.k(),
                    d.p,
                    d.k
                );
            }
        }
        Ok(())
    }

    pub fn module(&self, name: &str) -> Result<&Representation> {
        self.modules.get(name).ok_or_else(|| anyhow!("unknown module '{}'", name))
    }

    fn load_modules(&mut self) -> Result<()> {
        let decls = self.scenario.modules.clone();
        for d in &decls {
            if self.modules.contains_key(&d.name) {
                bail!("module '{}' is defined twice", d.name);
            }
            let sources = [
                d.file.is_some(),
                d.sum.is_some(),
                d.tensor.is_some(),
                d.sym2.is_some(),
                d.ext2.is_some(),
                d.dual.is_some(),
            ];
            if sources.iter().filter(|&&s| s).count() != 1 {
                bail!("module '{}' needs exactly one of file, sum, tensor, sym2, ext2, dual", d.name);
            }
            let m = if let Some(file) = &d.file {
                let text = self.read(file)?;
                let m = parse_representation(&text).map_err(|e| anyhow!("{}: {}", file, e))?;
                self.check_field(m.field(), file)?;
                m
            } else if let Some(parts) = &d.sum {
                let parts = parts.iter().map(|n| self.module(n).cloned()).collect::<Result<Vec<_>>>()?;
                Representation::direct_sum_all(&parts).map_err(|e| anyhow!("module '{}': {}", d.name, e))?
            } else if let Some(parts) = &d.tensor {
                if parts.len() != 2 {
                    bail!("module '{}': tensor takes two modules", d.name);
                }
                tensor(self.module(&parts[0])?, self.module(&parts[1])?)
                    .map_err(|e| anyhow!("module '{}': {}", d.name, e))?
            } else if let Some(n) = &d.sym2 {
                sym2(self.module(n)?)
            } else if let Some(n) = &d.ext2 {
                ext2(self.module(n)?)
            } else {
                dual(self.module(d.dual.as_ref().unwrap())?)
            };
            self.modules.insert(d.name.clone(), m.with_label(&d.name));
        }
        Ok(())
    }
}
