//! Univariate polynomials over GF(q): arithmetic, factorization and
//! characteristic polynomials of matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field};
use super::matrix::Matrix;

/// A polynomial with coefficients listed low to high; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *other.coeffs.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        self.add(f, &other.scale(f, f.neg(1)))
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                f.axpy(&mut out[i..i + other.coeffs.len()], a, &other.coeffs);
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()).unwrap())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead()).unwrap();
        let mut q = vec![0; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            if c != 0 {
                q[i] = c;
                f.axpy(&mut r[i..i + dd + 1], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Field, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base).rem(f, m);
            }
        }
        acc
    }

    /// Evaluate at a square matrix (Horner).
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = a.field();
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_ok(a);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// degree then coefficients. The constant factor is dropped.
    pub fn factor(&self, f: &Field) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        for (sqf, mult) in squarefree(f, &self.monic(f)) {
            for (g, d) in distinct_degree(f, &sqf) {
                for h in equal_degree(f, &g, d) {
                    out.push((h, mult));
                }
            }
        }
        out.sort();
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => merged.push((p, m)),
            }
        }
        merged.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        merged
    }
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Field, a: &Poly) -> Poly {
    let p = f.p() as usize;
    let e = (f.order() / f.p()) as u64;
    Poly::new(
        a.coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, e))
            .collect(),
    )
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree and the input equal to the product of `g^m`.
fn squarefree(f: &Field, a: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = a.derivative(f);
    if d.is_zero() {
        for (g, m) in squarefree(f, &pth_root(f, a)) {
            out.push((g, m * f.p() as usize));
        }
        return out;
    }
    let c = a.gcd(f, &d);
    let mut w = a.divrem(f, &c).0;
    let mut c = c;
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(f, &c);
        let z = w.divrem(f, &y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(f), i));
        }
        i += 1;
        w = y;
        c = c.divrem(f, &w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree(f, &pth_root(f, &c.monic(f))) {
            out.push((g, m * f.p() as usize));
        }
    }
    out
}

fn distinct_degree(f: &Field, a: &Poly) -> Vec<(Poly, usize)> {
    let q = f.order() as u128;
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = Poly::x();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(f, q, &rest);
        let g = rest.gcd(f, &h.sub(f, &Poly::x()));
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(f, &g).0;
            h = h.rem(f, &rest);
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest.monic(f), deg));
        }
    }
    out
}

fn equal_degree(f: &Field, a: &Poly, d: usize) -> Vec<Poly> {
    let n = a.degree().unwrap();
    if n == d {
        return vec![a.monic(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ d as u64);
    let q = f.order() as u128;
    loop {
        let r = Poly::new((0..n).map(|_| rng.gen_range(0..f.order())).collect());
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if f.p() == 2 {
            // trace map r + r^2 + ... + r^{2^{kd-1}}
            let mut t = r.rem(f, a);
            let mut acc = t.clone();
            for _ in 1..(f.k() as usize * d) {
                t = t.mul(f, &t).rem(f, a);
                acc = acc.add(f, &t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            r.powmod(f, e, a).sub(f, &Poly::one())
        };
        let g = a.gcd(f, &candidate);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(f, &g, d);
            out.extend(equal_degree(f, &a.divrem(f, &g).0, d));
            return out;
        }
    }
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let f = a.field().clone();
    let n = a.rows();
    let mut h: Vec<Vec<Elem>> = a.row_vectors();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]).unwrap();
        for k in j + 2..n {
            let u = f.mul(h[k][j], inv);
            if u == 0 {
                continue;
            }
            let pivot = h[j + 1].clone();
            f.axpy(&mut h[k], f.neg(u), &pivot);
            for row in h.iter_mut() {
                let add = f.mul(u, row[k]);
                row[j + 1] = f.add(row[j + 1], add);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{k=i+1}^{m} h_{k,k-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for m in 0..n {
        let mut pm = Poly::new(vec![f.neg(h[m][m]), 1]).mul(&f, &ps[m]);
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let c = f.mul(h[i][m], prod);
            if c != 0 {
                pm = pm.sub(&f, &ps[i].scale(&f, c));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(f: &Field, factors: &[(Poly, usize)]) -> Poly {
        factors.iter().fold(Poly::one(), |acc, (p, m)| {
            (0..*m).fold(acc, |a, _| a.mul(f, p))
        })
    }

    #[test]
    fn divrem_identity() {
        let f = Field::new(5, 2).unwrap();
        let a = Poly::new(vec![3, 7, 0, 12, 1, 24]);
        let b = Poly::new(vec![2, 0, 9]);
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn factor_round_trip() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (5, 2), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64 * 10 + k as u64);
            for _ in 0..20 {
                let mut a = Poly::one();
                for _ in 0..3 {
                    let deg = rng.gen_range(1..4);
                    let mut c: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..f.order())).collect();
                    c.push(1);
                    let g = Poly::new(c);
                    a = a.mul(&f, &g);
                    if rng.gen_bool(0.3) {
                        a = a.mul(&f, &g);
                    }
                }
                let factors = a.factor(&f);
                assert_eq!(expand(&f, &factors), a);
                for (g, _) in &factors {
                    // irreducible: no roots when degree <= 3, checked exhaustively
                    if g.degree().unwrap() <= 3 && g.degree().unwrap() > 1 {
                        assert!(f.elements().all(|x| g.eval(&f, x) != 0));
                    }
                }
            }
        }
    }

    #[test]
    fn charpoly_matches_cayley_hamilton() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, k) in [(2, 1), (3, 2), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            for n in 1..7 {
                let a = Matrix::random(&f, n, n, &mut rng);
                let c = charpoly(&a);
                assert_eq!(c.degree(), Some(n));
                assert!(c.eval_matrix(&a).is_zero());
                // constant term is (-1)^n det
                let det = a.determinant();
                let expect = if n % 2 == 0 { det } else { f.neg(det) };
                assert_eq!(c.coeffs()[0], expect);
            }
        }
    }
}
