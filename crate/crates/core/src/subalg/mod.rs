//! Locating a target Lie algebra inside a symplectic Lie algebra.
//!
//! A module `M` with an invariant alternating form `F` gives the Lie algebra
//! `S` of symmetric tensors in `M ⊗ M` (alternating tensors in characteristic
//! 2). Tensors are stored as `d × d` matrices, `u ⊗ v ↦ u vᵀ`, so that
//! `[u⊗v, x⊗y] = (u,y) x⊗v − (x,v) u⊗y` becomes `[X, Y] = Y Fᵀ X − X Fᵀ Y`,
//! and `g` acts by `X ↦ g X gᵀ`.
//!
//! The images in `S` of a target module `L` span a window `U`; requiring the
//! brackets of parametrized images of chosen submodules `W ⊆ L` to stay in
//! `U` gives polynomial equations in the parameters.

mod filters;
mod pipeline;
mod window;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfla::{Elem, Field, Matrix};
use crate::liealg::{jacobi_residual, LieBracket, StructureConstants};
use crate::modrep::{decompose, invariant_forms, is_alternating, is_invariant_form, FormKind, Representation};

pub use filters::{
    candidate_filters, parse_profile_table, pencil_verdict, write_profile_table, ProfileRow, ProfileTable,
    SubalgCandidate, TargetInfo,
};
pub use pipeline::{run_pipeline, FormChoice, SubalgReport, SubalgRepresentative, SubalgScenario};
pub use window::{build_window, closure_constraints, ClosureOptions, ClosureSystem, TargetWindow, WindowComponent};

/// Which part of `M ⊗ M` carries the ambient algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbientVariant {
    /// Symmetric tensors; `sp(M)` in odd characteristic.
    Sym2,
    /// Alternating tensors, for characteristic 2.
    Ext2Char2,
    /// All of `M ⊗ M`.
    FullTensor,
}

impl AmbientVariant {
    pub fn default_for(f: &Field) -> AmbientVariant {
        if f.p() == 2 {
            AmbientVariant::Ext2Char2
        } else {
            AmbientVariant::Sym2
        }
    }

    fn pairs(self, d: usize) -> Vec<(usize, usize)> {
        match self {
            AmbientVariant::Sym2 => (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect(),
            AmbientVariant::Ext2Char2 => (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect(),
            AmbientVariant::FullTensor => (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect(),
        }
    }
}

/// Exact Jacobi check up to this ambient dimension; sampled above it.
const FULL_CHECK_DIM: usize = 200;
const SAMPLED_TRIPLES: usize = 256;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmbientCheck {
    /// Whether every basis triple (resp. pair) was checked.
    pub full: bool,
    pub jacobi_violations: usize,
    pub equivariance_violations: usize,
}

/// The Lie algebra `S ⊆ M ⊗ M` attached to an invariant alternating form.
#[derive(Debug, Clone)]
pub struct SymplecticAmbient {
    pub module: Representation,
    pub form: Matrix,
    pub variant: AmbientVariant,
    /// Basis tensor `k` is `E_ij + E_ji` (or `E_ii`, or `E_ij` for the full
    /// tensor) with `(i, j) = pairs[k]`.
    pub pairs: Vec<(usize, usize)>,
    /// `H` acting on `S`.
    pub space: Representation,
    pub check: AmbientCheck,
}

impl SymplecticAmbient {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn to_matrix(&self, x: &[Elem]) -> Matrix {
        let f = self.module.field();
        let d = self.module.dim();
        let mut m = Matrix::zeros(f, d, d);
        for (&c, &(i, j)) in x.iter().zip(&self.pairs) {
            if c == 0 {
                continue;
            }
            m.set(i, j, f.add(m.get(i, j), c));
            if i != j && self.variant != AmbientVariant::FullTensor {
                m.set(j, i, f.add(m.get(j, i), c));
            }
        }
        m
    }

    /// Coordinates of a tensor known to lie in `S`.
    pub fn from_matrix(&self, m: &Matrix) -> Vec<Elem> {
        self.pairs.iter().map(|&(i, j)| m.get(i, j)).collect()
    }

    /// `[x, y]` computed with the form `form`.
    pub fn bracket_with(&self, form: &Matrix, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let a = self.to_matrix(x);
        let b = self.to_matrix(y);
        let ft = form.transpose();
        let m = b.mul_ok(&ft).mul_ok(&a).sub(&a.mul_ok(&ft).mul_ok(&b)).expect("shapes");
        self.from_matrix(&m)
    }

    /// `X F` on `M`: how an element of `S` acts on the natural module.
    pub fn natural_action(&self, form: &Matrix, x: &[Elem]) -> Matrix {
        self.to_matrix(x).mul_ok(form)
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let f = self.module.field();
        let n = self.dim();
        let mut l = StructureConstants::zero(f, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket(&unit(n, i), &unit(n, j));
                l.set(i, j, &v);
            }
        }
        l
    }

    /// The same ambient with another form of the same shape.
    pub fn with_form(&self, form: &Matrix) -> FormBracket<'_> {
        FormBracket {
            ambient: self,
            form: form.clone(),
        }
    }
}

impl LieBracket for SymplecticAmbient {
    fn field(&self) -> &Field {
        self.module.field()
    }

    fn dim(&self) -> usize {
        self.pairs.len()
    }

    fn bracket(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        self.bracket_with(&self.form, x, y)
    }
}

/// The ambient bracket taken with a different form (pencil members).
pub struct FormBracket<'a> {
    pub ambient: &'a SymplecticAmbient,
    pub form: Matrix,
}

impl LieBracket for FormBracket<'_> {
    fn field(&self) -> &Field {
        self.ambient.module.field()
    }

    fn dim(&self) -> usize {
        self.ambient.dim()
    }

    fn bracket(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        self.ambient.bracket_with(&self.form, x, y)
    }
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Build `S` for the alternating invariant form `form` on `m`.
///
/// ```
/// use modlie::gfla::{Field, Matrix};
/// use modlie::modrep::Representation;
/// use modlie::subalg::{ambient_bracket, AmbientVariant};
/// let f = Field::prime(7).unwrap();
/// let m = Representation::trivial(&f, 4, 1);
/// let form = Matrix::from_ints(&f, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]);
/// let s = ambient_bracket(&m, &form, AmbientVariant::Sym2).unwrap();
/// assert_eq!(s.dim(), 10);
/// ```
pub fn ambient_bracket(m: &Representation, form: &Matrix, variant: AmbientVariant) -> Result<SymplecticAmbient> {
    let f = m.field();
    let d = m.dim();
    if form.rows() != d || form.cols() != d {
        return Err(Error::DimensionMismatch(format!("form must be {}x{}", d, d)));
    }
    if !is_alternating(form) {
        return Err(Error::Invalid("form is not alternating".into()));
    }
    if !is_invariant_form(form, m) {
        return Err(Error::Invalid("form is not invariant".into()));
    }
    let radical = d - form.rank();
    if radical > 0 {
        return Err(Error::DegenerateForm { radical });
    }
    if variant == AmbientVariant::Ext2Char2 && f.p() != 2 {
        return Err(Error::Invalid("alternating tensors are closed under the bracket only in characteristic 2".into()));
    }
    let pairs = variant.pairs(d);
    let mut ambient = SymplecticAmbient {
        module: m.clone(),
        form: form.clone(),
        variant,
        pairs,
        space: Representation::trivial(f, 0, m.num_generators()),
        check: AmbientCheck {
            full: false,
            jacobi_violations: 0,
            equivariance_violations: 0,
        },
    };
    let n = ambient.dim();
    let gens = m
        .generators()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Elem>> = (0..n)
                .map(|k| ambient.from_matrix(&g.mul_ok(&ambient.to_matrix(&unit(n, k))).mul_ok(&g.transpose())))
                .collect();
            Matrix::from_columns(f, n, &cols)
        })
        .collect();
    ambient.space = Representation::new(f, n, gens, &format!("S({})", m.label()))?;
    ambient.check = check_ambient(&ambient);
    if ambient.check.jacobi_violations > 0 || ambient.check.equivariance_violations > 0 {
        return Err(Error::Invalid(format!(
            "ambient bracket failed its checks: {} Jacobi and {} equivariance violations",
            ambient.check.jacobi_violations, ambient.check.equivariance_violations
        )));
    }
    Ok(ambient)
}

fn check_ambient(a: &SymplecticAmbient) -> AmbientCheck {
    let n = a.dim();
    let f = a.module.field();
    let full = n <= FULL_CHECK_DIM;
    let mut rng = ChaCha8Rng::seed_from_u64(0xa3b1e7);
    let pairs: Vec<(usize, usize)> = if full {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    } else {
        use rand::Rng;
        (0..SAMPLED_TRIPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    };
    let mut equivariance_violations = 0;
    for g in a.space.generators() {
        for &(i, j) in &pairs {
            let lhs = g.mul_vec(&a.bracket(&unit(n, i), &unit(n, j)));
            let rhs = a.bracket(&g.column(i), &g.column(j));
            if lhs != rhs {
                equivariance_violations += 1;
            }
        }
    }
    let jacobi_violations = if full {
        jacobi_residual(&a.structure_constants()).violation_count
    } else {
        use rand::Rng;
        let mut bad = 0;
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (
                unit(n, rng.gen_range(0..n)),
                unit(n, rng.gen_range(0..n)),
                unit(n, rng.gen_range(0..n)),
            );
            let mut s = a.bracket(&a.bracket(&x, &y), &z);
            f.axpy(&mut s, 1, &a.bracket(&a.bracket(&y, &z), &x));
            f.axpy(&mut s, 1, &a.bracket(&a.bracket(&z, &x), &y));
            if s.iter().any(|&c| c != 0) {
                bad += 1;
            }
        }
        bad
    };
    AmbientCheck {
        full,
        jacobi_violations,
        equivariance_violations,
    }
}

/// How many essential parameters the invariant alternating forms have.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FormMode {
    Unique,
    /// `base + s · direction`.
    Pencil,
    /// Two or more essential parameters; the full tensor ambient is needed.
    Wider,
}

#[derive(Debug, Clone)]
pub struct FormResolution {
    pub mode: FormMode,
    pub space_dim: usize,
    pub summands: usize,
    pub essential: usize,
    /// A non-degenerate member of the form space.
    pub base: Matrix,
    /// In pencil mode, the direction of the essential parameter.
    pub direction: Option<Matrix>,
}

const FORM_SAMPLES: usize = 64;
const FORM_EXHAUSTIVE: u64 = 4096;

/// Classify the invariant alternating forms on `m` up to rescaling the
/// indecomposable summands independently.
///
/// Scaling summand `i` by `c_i` multiplies the block `F_ij` by `c_i c_j`,
/// so the scaling orbit of a generic form has dimension equal to the rank
/// of the vectors `e_i + e_j` over the nonzero blocks. The remaining
/// dimensions of the form space are the essential parameters.
pub fn form_space_mode(m: &Representation) -> Result<FormResolution> {
    let f = m.field();
    let d = m.dim();
    let space = invariant_forms(m, FormKind::Alternating)?;
    let k = space.dim();
    if k == 0 {
        return Err(Error::NoNondegenerateForm);
    }
    // candidates: the basis forms, their sum, then random combinations
    let mut candidates: Vec<Vec<Elem>> = (0..k).map(|i| unit(k, i)).collect();
    candidates.push(vec![1; k]);
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0e5);
    for _ in 0..FORM_SAMPLES {
        candidates.push((0..k).map(|_| f.random(&mut rng)).collect());
    }
    let total = (f.order() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if total <= FORM_EXHAUSTIVE {
        let q = f.order() as u64;
        for t in 0..total {
            candidates.push((0..k).map(|i| (t / q.pow(i as u32) % q) as Elem).collect());
        }
    }
    // prefer a random combination so that every block shows up
    let generic = candidates[k + 1..]
        .iter()
        .chain(&candidates[..=k])
        .map(|c| space.combination(c))
        .find(|g| g.rank() == d)
        .ok_or(Error::NoNondegenerateForm)?;
    let summands = decompose(m)?;
    let r = summands.len();
    let basis_cols: Vec<Vec<Elem>> = summands.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    let p = Matrix::from_columns(f, d, &basis_cols);
    // Gram matrix in the summand basis
    let g = p.transpose().mul_ok(&generic).mul_ok(&p);
    let mut offsets = vec![0];
    for s in &summands {
        offsets.push(offsets.last().unwrap() + s.basis.len());
    }
    let grams: Vec<Matrix> = space.basis.iter().map(|b| p.transpose().mul_ok(b).mul_ok(&p)).collect();
    let mut exponents: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        for j in i..r {
            // a generic combination is nonzero on every block some basis form touches
            let nonzero = grams.iter().any(|h| {
                (offsets[i]..offsets[i + 1]).any(|a| (offsets[j]..offsets[j + 1]).any(|b| h.get(a, b) != 0))
            });
            if nonzero {
                let mut e = vec![0i64; r];
                e[i] += 1;
                e[j] += 1;
                exponents.push(e);
            }
        }
    }
    let orbit_dim = integer_rank(&exponents);
    let essential = k.saturating_sub(orbit_dim);
    let mode = match essential {
        0 => FormMode::Unique,
        1 => FormMode::Pencil,
        _ => FormMode::Wider,
    };
    let direction = if essential == 1 {
        // tangent directions of the summand scalings at `generic`; leave them
        let pinv = p.inverse()?;
        let mut blocks = Vec::new();
        for i in 0..r {
            let mut b = Matrix::zeros(f, d, d);
            for a in 0..d {
                for c in 0..d {
                    let inside = |x: usize| (offsets[i]..offsets[i + 1]).contains(&x);
                    let weight = usize::from(inside(a)) + usize::from(inside(c));
                    b.set(a, c, f.mul(f.from_int(weight as i64), g.get(a, c)));
                }
            }
            let back = pinv.transpose().mul_ok(&b).mul_ok(&pinv);
            blocks.push(back.data().to_vec());
        }
        let orbit_span = crate::gfla::Subspace::span(f, d * d, &blocks);
        space.basis.iter().find(|b| !orbit_span.contains(b.data())).cloned()
    } else {
        None
    };
    Ok(FormResolution {
        mode,
        space_dim: k,
        summands: r,
        essential,
        base: generic,
        direction,
    })
}

/// Rank over the rationals of a small integer matrix.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[rank][k] * b;
                }
                let g = m[i].iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::liealg::algebra_profile;

    pub(crate) fn standard_form(f: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, 2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, 1);
            m.set(n + i, i, f.neg(1));
        }
        m
    }

    #[test]
    fn sp2_is_sl2() {
        let f = Field::prime(7).unwrap();
        let s = ambient_bracket(&Representation::trivial(&f, 2, 1), &standard_form(&f, 1), AmbientVariant::Sym2).unwrap();
        let p = algebra_profile(&s.structure_constants());
        assert_eq!((p.dim, p.center_dim, p.derived_dim), (3, 0, 3));
        assert!(s.check.full);
    }

    #[test]
    fn sp4_killing_rank() {
        let f = Field::prime(7).unwrap();
        let s = ambient_bracket(&Representation::trivial(&f, 4, 1), &standard_form(&f, 2), AmbientVariant::Sym2).unwrap();
        assert_eq!(algebra_profile(&s.structure_constants()).killing_rank, 10);
    }

    #[test]
    fn characteristic_two_uses_alternating_tensors() {
        let f = Field::prime(2).unwrap();
        let m = Representation::trivial(&f, 4, 1);
        let v = AmbientVariant::default_for(&f);
        let s = ambient_bracket(&m, &standard_form(&f, 2), v).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.check.jacobi_violations, 0);
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let f = Field::prime(5).unwrap();
        let mut form = Matrix::zeros(&f, 3, 3);
        form.set(0, 1, 1);
        form.set(1, 0, 4);
        let err = ambient_bracket(&Representation::trivial(&f, 3, 1), &form, AmbientVariant::Sym2).unwrap_err();
        assert_eq!(err, Error::DegenerateForm { radical: 1 });
    }

    fn cyclic_character(f: &Field, w: i64) -> Representation {
        Representation::new(f, 1, vec![Matrix::from_ints(f, &[vec![w]])], "chi").unwrap()
    }

    #[test]
    fn form_modes() {
        let f = Field::prime(7).unwrap();
        // W + W* for a character of order 3
        let w = cyclic_character(&f, 2);
        let wd = cyclic_character(&f, 4);
        let m = w.direct_sum(&wd).unwrap();
        let r = form_space_mode(&m).unwrap();
        assert!(matches!(r.mode, FormMode::Unique));
        // two copies: four pairings, three scaling directions
        let m2 = m.direct_sum(&m).unwrap();
        let r2 = form_space_mode(&m2).unwrap();
        assert_eq!((r2.space_dim, r2.essential), (4, 1));
        assert!(matches!(r2.mode, FormMode::Pencil));
        let dir = r2.direction.unwrap();
        assert!(is_invariant_form(&dir, &m2) && is_alternating(&dir));
        // trivial group on k^4: six forms, four summands
        let r3 = form_space_mode(&Representation::trivial(&f, 4, 1)).unwrap();
        assert_eq!((r3.summands, r3.essential), (4, 2));
        assert!(matches!(r3.mode, FormMode::Wider));
    }

    #[test]
    fn degenerate_form_space() {
        let f = Field::prime(7).unwrap();
        let m = cyclic_character(&f, 2)
            .direct_sum(&cyclic_character(&f, 4))
            .unwrap()
            .direct_sum(&Representation::trivial(&f, 1, 1))
            .unwrap();
        assert_eq!(form_space_mode(&m).unwrap_err(), Error::NoNondegenerateForm);
        let odd = cyclic_character(&f, 2);
        assert_eq!(form_space_mode(&odd).unwrap_err(), Error::NoNondegenerateForm);
    }

    #[test]
    fn integer_rank_of_exponents() {
        let rows = vec![vec![1, 1, 0, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 0, 1, 1]];
        assert_eq!(integer_rank(&rows), 3);
        assert_eq!(integer_rank(&[vec![2, 0], vec![0, 2], vec![1, 1]]), 2);
    }
}
