//! MeatAxe: invariant subspaces, irreducibility and composition factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, Representation};
use crate::error::{Error, Result};
use crate::gfla::{charpoly, Matrix, Poly, Subspace};

const RANDOM_ELEMENTS: usize = 200;
const SEED: u64 = 0x6d65_6174_6178_65;

/// Outcome of the irreducibility test.
#[derive(Debug, Clone)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

/// An irreducible composition factor with its multiplicity.
#[derive(Debug, Clone)]
pub struct Factor {
    pub module: Representation,
    pub multiplicity: usize,
    /// `<dim><letter>` in order of dimension, then discovery.
    pub label: String,
}

fn annihilator(rep: &Representation, t: &Subspace) -> Subspace {
    let rows = t.basis_matrix();
    Subspace::span(rep.field(), rep.dim(), &rows.nullspace())
}

fn transpose_rep(rep: &Representation) -> Representation {
    let gens = rep.generators().iter().map(|g| g.transpose()).collect();
    Representation::new_unchecked(rep.field(), rep.dim(), gens, rep.label())
}

/// Apply the Norton test using `a` and its irreducible factor `f`.
/// Returns `Some` if the test is conclusive or finds a submodule.
fn norton(rep: &Representation, rep_t: &Representation, a: &Matrix, f: &Poly) -> Option<Irreducibility> {
    let d = rep.dim();
    let b = f.eval_matrix(a);
    let kernel = b.nullspace();
    if kernel.is_empty() {
        return None;
    }
    let s = rep.spin(&kernel[..1]);
    if s.dim() < d {
        return Some(Irreducibility::Reducible(s.space));
    }
    if kernel.len() != f.degree().unwrap() {
        // not a Norton element, but other kernel vectors may still spin small
        for v in kernel.iter().skip(1).take(4) {
            let s = rep.spin(std::slice::from_ref(v));
            if s.dim() < d {
                return Some(Irreducibility::Reducible(s.space));
            }
        }
        return None;
    }
    let kernel_t = b.transpose().nullspace();
    let t = rep_t.spin(&kernel_t[..1]);
    if t.dim() < d {
        return Some(Irreducibility::Reducible(annihilator(rep, &t.space)));
    }
    Some(Irreducibility::Irreducible)
}

fn try_element(rep: &Representation, rep_t: &Representation, a: &Matrix) -> Option<Irreducibility> {
    let cp = charpoly(a);
    for (f, _) in cp.factor(rep.field()) {
        if let Some(r) = norton(rep, rep_t, a, &f) {
            return Some(r);
        }
    }
    None
}

/// Search for a proper invariant subspace, proving irreducibility if none
/// exists.
///
/// Random algebra elements (products of generators combined linearly, from a
/// seeded generator) are tried first; if none is conclusive, all words of
/// length at most three in the generators are tried. If that also fails the
/// result is [`Error::InconclusiveIrreducibility`].
pub fn find_submodule(rep: &Representation) -> Result<Irreducibility> {
    let d = rep.dim();
    let f = rep.field();
    if d <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if rep.num_generators() == 0 {
        let mut e = vec![0; d];
        e[0] = 1;
        return Ok(Irreducibility::Reducible(Subspace::span(f, d, &[e])));
    }
    let rep_t = transpose_rep(rep);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ d as u64);
    let mut pool: Vec<Matrix> = rep.generators().to_vec();
    let q = f.order();
    for _ in 0..RANDOM_ELEMENTS {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        let prod = pool[i].mul_ok(&pool[j]);
        let mut a = prod.scale(rng.gen_range(1..q));
        for _ in 0..2 {
            let k = rng.gen_range(0..pool.len());
            a.add_scaled(rng.gen_range(0..q), &pool[k]);
        }
        pool.push(prod);
        if let Some(r) = try_element(rep, &rep_t, &a) {
            return Ok(r);
        }
    }
    let n = rep.num_generators();
    let mut words: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for len in 2..=3 {
        let prev: Vec<Vec<usize>> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for i in 0..n {
                let mut x = w.clone();
                x.push(i);
                words.push(x);
            }
        }
    }
    for w in &words {
        let mut a = Matrix::identity(f, d);
        for &i in w {
            a = a.mul_ok(rep.generator(i));
        }
        if let Some(r) = try_element(rep, &rep_t, &a) {
            return Ok(r);
        }
    }
    Err(Error::InconclusiveIrreducibility { dim: d })
}

pub fn is_irreducible(rep: &Representation) -> Result<bool> {
    Ok(matches!(find_submodule(rep)?, Irreducibility::Irreducible))
}

/// Whether two modules are isomorphic, witnessed by an invertible intertwiner.
///
/// Exact for irreducible modules. For others a `true` answer is always
/// correct; a `false` answer means no invertible element was found among the
/// basis and a seeded sample of combinations.
pub fn isomorphic(a: &Representation, b: &Representation) -> Result<bool> {
    a.check_compatible(b)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let homs = hom_space(a, b)?;
    if homs.is_empty() {
        return Ok(false);
    }
    if homs.iter().any(|x| x.is_invertible()) {
        return Ok(true);
    }
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.rotate_left(7));
    for _ in 0..32 {
        let mut x = Matrix::zeros(f, b.dim(), a.dim());
        for h in &homs {
            x.add_scaled(rng.gen_range(0..f.order()), h);
        }
        if x.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Composition factors with multiplicities, sorted by dimension and then
/// order of discovery.
pub fn chop(rep: &Representation) -> Result<Vec<Factor>> {
    let mut found: Vec<(Representation, usize)> = Vec::new();
    let mut stack = vec![rep.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match find_submodule(&m)? {
            Irreducibility::Reducible(s) => {
                stack.push(m.quotient(&s));
                stack.push(m.submodule(&s));
            }
            Irreducibility::Irreducible => {
                let mut merged = false;
                for (known, mult) in found.iter_mut() {
                    if known.dim() == m.dim() && isomorphic(known, &m)? {
                        *mult += 1;
                        merged = true;
                        break;
                    }
                }
                if !merged {
                    found.push((m, 1));
                }
            }
        }
    }
    found.sort_by_key(|(m, _)| m.dim());
    let mut out = Vec::new();
    let mut letter = 0u8;
    let mut last_dim = usize::MAX;
    for (m, mult) in found {
        if m.dim() != last_dim {
            letter = 0;
            last_dim = m.dim();
        }
        let label = format!("{}{}", m.dim(), (b'a' + letter) as char);
        letter += 1;
        out.push(Factor {
            module: m.with_label(&label),
            multiplicity: mult,
            label,
        });
    }
    Ok(out)
}

/// Dimensions and multiplicities, e.g. `[(1, 1), (1, 1), (2, 2)]`.
pub fn factor_shape(factors: &[Factor]) -> Vec<(usize, usize)> {
    factors.iter().map(|f| (f.module.dim(), f.multiplicity)).collect()
}
