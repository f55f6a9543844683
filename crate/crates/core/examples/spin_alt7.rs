//! Builds the characteristic-5 data for 2·Alt(7) used by the cohomology
//! fixtures: a presentation and the modules 4, 4* and 14 over GF(25).
//!
//! The group comes from the basic spin representation: in the Clifford
//! algebra on `e_1..e_7` (with `e_i² = 1`) the even products
//! `(e_i − e_j)(e_k − e_l)/2` lift products of two transpositions, and the
//! 8-dimensional Clifford module splits over GF(25) as `4 ⊕ 4*`. The 14 is
//! cut out of `4* ⊗ S²4`, which has two non-isomorphic 14-dimensional
//! factors, both self-dual; we keep the one with `Ext¹(4, 14) ≠ 0`.
//!
//! Usage: `cargo run --example spin_alt7 [output-dir]` (default
//! `fixtures/alt7`).

use std::path::PathBuf;

use modlie::cohom::{coset_enumeration, h1_dimension, write_presentation, FinitePresentation};
use modlie::gfla::{Field, Matrix};
use modlie::modrep::io::write_representation;
use modlie::modrep::{chop, dual, isomorphic, sym2, tensor, Representation};
use modlie::Result;

pub struct Alt7Data {
    pub presentation: FinitePresentation,
    pub four: Representation,
    pub four_dual: Representation,
    pub fourteen: Representation,
}

/// `e_1..e_7` as 8×8 matrices over GF(5) (Jordan–Wigner construction).
fn clifford_generators(f: &Field) -> Vec<Matrix> {
    let i2 = Matrix::identity(f, 2);
    let x = Matrix::from_ints(f, &[vec![0, 1], vec![1, 0]]);
    // [[0, -i], [i, 0]] with i = 2
    let y = Matrix::from_ints(f, &[vec![0, -2], vec![2, 0]]);
    let z = Matrix::from_ints(f, &[vec![1, 0], vec![0, -1]]);
    let kron3 = |a: &Matrix, b: &Matrix, c: &Matrix| a.kronecker(b).kronecker(c);
    vec![
        kron3(&x, &i2, &i2),
        kron3(&y, &i2, &i2),
        kron3(&z, &x, &i2),
        kron3(&z, &y, &i2),
        kron3(&z, &z, &x),
        kron3(&z, &z, &y),
        kron3(&z, &z, &z),
    ]
}

/// Lift of the product of transpositions `(i j)(k l)` (points 1-based).
fn double_transposition(f: &Field, e: &[Matrix], (i, j): (usize, usize), (k, l): (usize, usize)) -> Matrix {
    let u = e[i - 1].sub(&e[j - 1]).unwrap();
    let v = e[k - 1].sub(&e[l - 1]).unwrap();
    u.mul_ok(&v).scale(f.inv(2).unwrap())
}

fn pow(m: &Matrix, k: u64) -> Matrix {
    m.pow(k)
}

/// `±1` for a scalar matrix `±I`.
fn sign(m: &Matrix) -> Option<i32> {
    if m.is_identity() {
        Some(1)
    } else if m.neg().is_identity() {
        Some(-1)
    } else {
        None
    }
}

fn word(a: &Matrix, b: &Matrix, ai: &Matrix, bi: &Matrix, w: &[i32]) -> Matrix {
    let mut out = Matrix::identity(a.field(), a.rows());
    for &x in w {
        let g = match x {
            1 => a,
            -1 => ai,
            2 => b,
            -2 => bi,
            _ => unreachable!(),
        };
        out = out.mul_ok(g);
    }
    out
}

/// Relators of Alt(7) on `a = (1 2 3)`, `b = (3 4 5 6 7)`:
/// `a³, b⁵, (ab)⁷, (a b⁻¹ a b)², (a b⁻² a b²)²`.
fn alt7_relators() -> Vec<Vec<i32>> {
    vec![
        vec![1; 3],
        vec![2; 5],
        [1, 2].repeat(7),
        [1, -2, 1, 2].repeat(2),
        [1, -2, -2, 1, 2, 2].repeat(2),
    ]
}

fn extend(f: &Field, m: &Matrix) -> Matrix {
    let rows: Vec<Vec<u32>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    Matrix::from_rows(f, &rows)
}

pub fn build() -> Result<Alt7Data> {
    let f5 = Field::prime(5)?;
    let e = clifford_generators(&f5);
    let mut a = double_transposition(&f5, &e, (1, 2), (2, 3));
    let mut b = double_transposition(&f5, &e, (3, 4), (4, 5)).mul_ok(&double_transposition(&f5, &e, (5, 6), (6, 7)));
    // choose the lifts of odd order, then an orientation of the 3-cycle that
    // satisfies the Alt(7) relations up to sign
    let fix_order = |m: &mut Matrix, k: u64| {
        if sign(&pow(m, k)) == Some(-1) {
            *m = m.neg();
        }
    };
    fix_order(&mut a, 3);
    fix_order(&mut b, 5);
    let mut signs = None;
    for candidate in [a.clone(), a.inverse()?] {
        let ai = candidate.inverse()?;
        let bi = b.inverse()?;
        let s: Option<Vec<i32>> = alt7_relators()
            .iter()
            .map(|r| sign(&word(&candidate, &b, &ai, &bi, r)))
            .collect();
        if let Some(s) = s {
            a = candidate;
            signs = Some(s);
            break;
        }
    }
    let signs = signs.expect("one orientation satisfies the relations");
    // 2·Alt(7) = <a, b, z | z², [z, a], [z, b], r_i z^{ε_i}>
    let mut relators = vec![vec![3, 3], vec![3, 1, -3, -1], vec![3, 2, -3, -2]];
    for (r, s) in alt7_relators().into_iter().zip(signs) {
        let mut w = r;
        if s == -1 {
            w.push(3);
        }
        relators.push(w);
    }
    let presentation = FinitePresentation::new(3, relators)?;
    assert_eq!(coset_enumeration(&presentation, &[], 20_000), Some(5040));

    let f = Field::new(5, 2)?;
    let minus = Matrix::identity(&f, 8).neg();
    let spin = Representation::new(&f, 8, vec![extend(&f, &a), extend(&f, &b), minus], "8")?;
    presentation.validate(&spin)?;
    let halves = chop(&spin)?;
    assert_eq!(halves.iter().map(|h| h.module.dim()).collect::<Vec<_>>(), vec![4, 4]);
    let four = halves[0].module.clone().with_label("4");
    let four_dual = dual(&four).with_label("4*");
    assert!(isomorphic(&four_dual, &halves[1].module)?);

    let mut fourteen = None;
    for factor in chop(&tensor(&four_dual, &sym2(&four))?)? {
        // Ext¹(4, 14) = H¹(4* ⊗ 14)
        if factor.module.dim() == 14
            && h1_dimension(&presentation, &tensor(&four_dual, &factor.module)?)?.dimension_h1 > 0
        {
            fourteen = Some(factor.module.with_label("14"));
            break;
        }
    }
    Ok(Alt7Data {
        presentation,
        four,
        four_dual,
        fourteen: fourteen.expect("a 14 extending 4"),
    })
}

/// `(file name, contents)` for every fixture file.
pub fn files(d: &Alt7Data) -> Vec<(&'static str, String)> {
    vec![
        ("2alt7.pres", write_presentation(&d.presentation)),
        ("4.rep", write_representation(&d.four)),
        ("4d.rep", write_representation(&d.four_dual)),
        ("14.rep", write_representation(&d.fourteen)),
    ]
}

#[allow(dead_code)]
fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures/alt7"));
    std::fs::create_dir_all(&dir)?;
    let data = build()?;
    for (name, text) in files(&data) {
        std::fs::write(dir.join(name), text)?;
    }
    Ok(())
}
