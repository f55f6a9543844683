//! The window `U` and the closure equations for parametrized images.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SymplecticAmbient;
use crate::error::{Error, Result};
use crate::gfla::{Elem, Matrix, Subspace};
use crate::lieproduct::{MPoly, QuadraticSystem};
use crate::modrep::{hom_space, Representation};

/// One chosen submodule `W` and the maps `φ_i : W → U`.
#[derive(Debug, Clone)]
pub struct WindowComponent {
    pub label: String,
    pub module: Representation,
    /// `dim Hom_H(W, S)`.
    pub hom_to_ambient: usize,
    /// Basis of `Hom_H(W, U)`, as `dim S × dim W` matrices.
    pub maps: Vec<Matrix>,
    /// Index of the first parameter of this component.
    pub offset: usize,
}

#[derive(Debug, Clone)]
pub struct TargetWindow {
    /// Sum of the images of all maps `L → S`.
    pub u: Subspace,
    /// `dim Hom_H(L, S)`.
    pub target_hom_dim: usize,
    pub components: Vec<WindowComponent>,
    pub parameter_names: Vec<String>,
}

impl TargetWindow {
    pub fn num_parameters(&self) -> usize {
        self.parameter_names.len()
    }

    /// `Σ a_i φ_i(e_k)` for every component and basis vector `e_k` of `W`.
    pub fn images(&self, coeffs: &[Elem]) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        for c in &self.components {
            let f = c.module.field();
            for k in 0..c.module.dim() {
                let mut v = vec![0; self.u.ambient()];
                for (r, m) in c.maps.iter().enumerate() {
                    f.axpy(&mut v, coeffs[c.offset + r], &m.column(k));
                }
                out.push(v);
            }
        }
        out
    }
}

/// Compute `U` from `Hom_H(L, S)` and the maps from each chosen submodule.
pub fn build_window(
    target: &Representation,
    ambient: &SymplecticAmbient,
    chosen: &[(String, Representation)],
) -> Result<TargetWindow> {
    let s = &ambient.space;
    let f = s.field();
    if target.field() != f {
        return Err(Error::FieldMismatch(format!("{} vs {}", target.field(), f)));
    }
    let homs = hom_space(target, s)?;
    let mut u = Subspace::zero(f, s.dim());
    for h in &homs {
        for k in 0..h.cols() {
            u.insert(&h.column(k));
        }
    }
    if u.dim() == 0 {
        return Err(Error::EmptyWindow);
    }
    let u_rep = s.submodule(&u);
    let mut components = Vec::new();
    let mut names = Vec::new();
    for (label, w) in chosen {
        if w.field() != f || w.num_generators() != s.num_generators() {
            return Err(Error::Invalid(format!("submodule {} does not match the ambient group", label)));
        }
        let to_s = hom_space(w, s)?.len();
        let maps: Vec<Matrix> = hom_space(w, &u_rep)?
            .iter()
            .map(|m| {
                // back to S coordinates
                let cols: Vec<Vec<Elem>> = (0..m.cols())
                    .map(|k| {
                        let mut v = vec![0; s.dim()];
                        for (c, b) in m.column(k).iter().zip(u.basis()) {
                            f.axpy(&mut v, *c, b);
                        }
                        v
                    })
                    .collect();
                Matrix::from_columns(f, s.dim(), &cols)
            })
            .collect();
        let offset = names.len();
        names.extend((0..maps.len()).map(|i| format!("a{}", offset + i + 1)));
        components.push(WindowComponent {
            label: label.clone(),
            module: w.clone(),
            hom_to_ambient: to_s,
            maps,
            offset,
        });
    }
    Ok(TargetWindow {
        u,
        target_hom_dim: homs.len(),
        components,
        parameter_names: names,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ClosureOptions {
    pub max_pairs: usize,
    /// Also emit cubic equations from triple brackets.
    pub triples: bool,
    pub max_triples: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_pairs: 10_000,
            triples: false,
            max_triples: 2_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureSystem {
    pub system: QuadraticSystem,
    pub pairs_used: usize,
    pub triples_used: usize,
    /// Number of stored equations of each total degree.
    pub degrees: BTreeMap<usize, usize>,
    /// Index of the form parameter `s`, in pencil mode.
    pub form_variable: Option<usize>,
}

/// A vector in `S` whose coordinates are polynomials in the parameters.
type PolyVec = Vec<MPoly>;

/// Closure equations: the coordinates of `[ū, w̄]` (and, optionally,
/// `[[ū, v̄], w̄]`) outside `U`, for basis vectors `u, v, w` of the chosen
/// submodules. With `direction` set, the form is `F + s · direction` and `s`
/// is an extra variable.
pub fn closure_constraints(
    window: &TargetWindow,
    ambient: &SymplecticAmbient,
    direction: Option<&Matrix>,
    opts: &ClosureOptions,
) -> ClosureSystem {
    let f = ambient.module.field();
    let n = window.num_parameters();
    let mut names = window.parameter_names.clone();
    let form_variable = direction.map(|_| {
        names.push("s".into());
        n
    });
    let forms: Vec<(Matrix, Option<usize>)> = match direction {
        Some(d) => vec![(ambient.form.clone(), None), (d.clone(), form_variable)],
        None => vec![(ambient.form.clone(), None)],
    };
    // annihilator of U: y · u = 0 for all u in U
    let ann: Vec<Vec<Elem>> = if window.u.dim() == 0 {
        Matrix::identity(f, ambient.dim()).row_vectors()
    } else {
        Matrix::from_rows(f, window.u.basis()).nullspace()
    };
    // seeds as parametrized vectors, component by component
    let mut seeds: Vec<(usize, Vec<(usize, Vec<Elem>)>)> = Vec::new();
    for (ci, c) in window.components.iter().enumerate() {
        for k in 0..c.module.dim() {
            let terms = c.maps.iter().enumerate().map(|(r, m)| (c.offset + r, m.column(k))).collect();
            seeds.push((ci, terms));
        }
    }
    let bracket_poly = |x: &PolyVec, y: &[(usize, Vec<Elem>)]| -> PolyVec {
        // x has polynomial coordinates; expand bilinearly over its monomials
        let mut out = vec![MPoly::zero(); ambient.dim()];
        let mut by_mono: BTreeMap<Vec<usize>, Vec<Elem>> = BTreeMap::new();
        for (i, p) in x.iter().enumerate() {
            for (m, &c) in &p.terms {
                by_mono.entry(m.clone()).or_insert_with(|| vec![0; ambient.dim()])[i] = c;
            }
        }
        for (mono, xv) in &by_mono {
            for (var, yv) in y {
                for (form, fv) in &forms {
                    let b = ambient.bracket_with(form, xv, yv);
                    let mut m = mono.clone();
                    m.push(*var);
                    if let Some(v) = fv {
                        m.push(*v);
                    }
                    m.sort_unstable();
                    for (i, &c) in b.iter().enumerate() {
                        out[i].add_term(f, m.clone(), c);
                    }
                }
            }
        }
        out
    };
    let as_poly = |terms: &[(usize, Vec<Elem>)]| -> PolyVec {
        let mut out = vec![MPoly::zero(); ambient.dim()];
        for (var, v) in terms {
            for (i, &c) in v.iter().enumerate() {
                out[i].add_term(f, vec![*var], c);
            }
        }
        out
    };
    let project = |v: &PolyVec| -> Vec<MPoly> {
        ann.iter()
            .map(|y| {
                let mut p = MPoly::zero();
                for (c, q) in y.iter().zip(v) {
                    if *c != 0 {
                        p = p.add(f, &q.scale(f, *c));
                    }
                }
                p
            })
            .collect()
    };
    // pairs inside each component first, then across components
    let mut pair_list = Vec::new();
    for same in [true, false] {
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                if (seeds[i].0 == seeds[j].0) == same {
                    pair_list.push((i, j));
                }
            }
        }
    }
    pair_list.truncate(opts.max_pairs);
    let mut system = QuadraticSystem::new(f, names);
    let mut seed_polys: Vec<PolyVec> = seeds.iter().map(|(_, t)| as_poly(t)).collect();
    let mut pair_brackets = Vec::new();
    for &(i, j) in &pair_list {
        let b = bracket_poly(&seed_polys[i], &seeds[j].1);
        system.extend(project(&b));
        if opts.triples {
            pair_brackets.push(b);
        }
    }
    let mut triples_used = 0;
    if opts.triples {
        'outer: for b in &pair_brackets {
            for (_, terms) in &seeds {
                if triples_used >= opts.max_triples {
                    break 'outer;
                }
                system.extend(project(&bracket_poly(b, terms)));
                triples_used += 1;
            }
        }
    }
    seed_polys.clear();
    let mut degrees = BTreeMap::new();
    for e in &system.equations {
        *degrees.entry(e.degree()).or_insert(0) += 1;
    }
    ClosureSystem {
        system,
        pairs_used: pair_list.len(),
        triples_used,
        degrees,
        form_variable,
    }
}
