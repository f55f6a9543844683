//! Arithmetic in GF(p^k).
//!
//! An element of GF(p^k) is stored as a `u32` holding its `k` coefficients in
//! the polynomial basis `1, x, ..., x^{k-1}` as base-`p` digits, least
//! significant digit first. The same packing is used by every file format.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element in packed form.
pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 24;
const ADD_TABLE_LIMIT: u32 = 1024;

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus of degree `k`, coefficients low to high (length `k + 1`).
    pub modulus: Vec<u32>,
}

/// A finite field with precomputed log/antilog tables.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    digit_weights: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.k())
        }
    }
}

fn cache() -> &'static Mutex<HashMap<FieldSpec, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldSpec, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn conway_cache() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^k) defined by its Conway polynomial.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || (p as u64).checked_pow(k).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge { p, k });
        }
        let modulus = conway_polynomial(p, k)?;
        Field::with_modulus(p, modulus)
    }

    /// GF(p^k) defined by an explicit monic modulus (low-to-high coefficients).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Invalid("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus coefficient out of range".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if (p as u64).checked_pow(k).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge { p, k });
        }
        let spec = FieldSpec { p, k, modulus };
        if let Some(f) = cache().lock().unwrap().get(&spec) {
            return Ok(f.clone());
        }
        if k > 1 && !prime_poly::is_irreducible(p, &spec.modulus) {
            return Err(Error::ReducibleModulus {
                p,
                degree: k as usize,
            });
        }
        let field = Field {
            inner: Arc::new(Inner::build(spec.clone())),
        };
        cache().lock().unwrap().insert(spec, field.clone());
        Ok(field)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::with_modulus(spec.p, spec.modulus.clone())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn p(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn k(&self) -> u32 {
        self.inner.spec.k
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// A uniformly random element.
    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.inner.q)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.spec.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// All elements in packed order `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p() as i64) as u32
    }

    /// Whether `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a < self.p()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.spec.k == 1 {
            let s = a + b;
            if s >= inner.q {
                s - inner.q
            } else {
                s
            }
        } else if let Some(t) = &inner.add {
            t[(a * inner.q + b) as usize]
        } else {
            inner.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        if inner.spec.k == 1 {
            ((a as u64 * b as u64) % inner.q as u64) as u32
        } else {
            inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let l = inner.log[a as usize];
        let e = if l == 0 { 0 } else { inner.q - 1 - l };
        Some(inner.exp[e as usize])
    }

    /// `a / b`; panics when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let l = (inner.log[a as usize] as u64 * (e % (inner.q as u64 - 1))) % (inner.q as u64 - 1);
        inner.exp[l as usize]
    }

    /// The Frobenius automorphism `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p() as u64)
    }

    /// The fixed primitive element (a generator of the multiplicative group).
    pub fn primitive_element(&self) -> Elem {
        self.inner.exp[1]
    }

    /// Discrete logarithm to the base of [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.inner.log[a as usize])
        }
    }

    /// `g^e` for the primitive element `g`.
    pub fn exp(&self, e: u64) -> Elem {
        self.inner.exp[(e % (self.inner.q as u64 - 1)) as usize]
    }

    /// Base-`p` digits (polynomial coefficients, low to high).
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut a = a;
        (0..self.k())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits
            .iter()
            .zip(&self.inner.digit_weights)
            .map(|(d, w)| d * w)
            .sum()
    }

    /// `dst[i] += c * src[i]` over the whole slice.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        let inner = &*self.inner;
        if inner.spec.k == 1 {
            let p = inner.q as u64;
            let c = c as u64;
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = ((*d as u64 + c * s as u64) % p) as u32;
                }
            }
        } else {
            let lc = inner.log[c as usize];
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    let prod = inner.exp[(lc + inner.log[s as usize]) as usize];
                    *d = self.add(*d, prod);
                }
            }
        }
    }

    /// `v[i] *= c`.
    pub fn scale_slice(&self, v: &mut [Elem], c: Elem) {
        if c == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Dot product of two slices.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let inner = &*self.inner;
        if inner.spec.k == 1 {
            let p = inner.q as u64;
            let mut acc = 0u64;
            for (&x, &y) in a.iter().zip(b) {
                acc += x as u64 * y as u64;
                if acc >= 1 << 62 {
                    acc %= p;
                }
            }
            (acc % p) as u32
        } else {
            let mut acc = 0;
            for (&x, &y) in a.iter().zip(b) {
                acc = self.add(acc, self.mul(x, y));
            }
            acc
        }
    }
}

impl Inner {
    fn build(spec: FieldSpec) -> Inner {
        let p = spec.p;
        let k = spec.k;
        let q = p.pow(k);
        let digit_weights: Vec<u32> = (0..k).map(|i| p.pow(i)).collect();
        let mut inner = Inner {
            spec,
            q,
            exp: Vec::new(),
            log: vec![0; q as usize],
            neg: vec![0; q as usize],
            add: None,
            digit_weights,
        };
        for a in 0..q {
            let mut out = 0;
            let mut rest = a;
            for w in &inner.digit_weights {
                let d = rest % p;
                rest /= p;
                out += ((p - d) % p) * w;
            }
            inner.neg[a as usize] = out;
        }
        if k > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = inner.add_digits(a, b);
                }
            }
            inner.add = Some(table);
        }
        inner.build_logs();
        inner
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for w in &self.digit_weights {
            let s = (a % p + b % p) % p;
            out += s * w;
            a /= p;
            b /= p;
        }
        out
    }

    /// Multiply a packed element by `x` modulo the defining polynomial.
    fn times_x(&self, a: u32) -> u32 {
        let p = self.spec.p as u64;
        let k = self.spec.k as usize;
        let mut digits = vec![0u64; k + 1];
        let mut rest = a;
        for d in digits.iter_mut().skip(1).take(k) {
            *d = (rest % self.spec.p) as u64;
            rest /= self.spec.p;
        }
        let top = digits[k];
        for i in 0..k {
            let m = self.spec.modulus[i] as u64;
            digits[i] = (digits[i] + p * p - top * m % p) % p;
        }
        digits[..k]
            .iter()
            .zip(&self.digit_weights)
            .map(|(&d, &w)| d as u32 * w)
            .sum()
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        // schoolbook via repeated multiplication by x
        let p = self.spec.p;
        let mut result = 0u32;
        let mut power = a;
        let mut rest = b;
        for _ in 0..self.spec.k {
            let d = rest % p;
            rest /= p;
            for _ in 0..d {
                result = self.add_digits(result, power);
            }
            power = self.times_x(power);
        }
        result
    }

    fn build_logs(&mut self) {
        let q = self.q;
        let n = (q - 1) as usize;
        let order_factors = prime_factors(n as u64);
        // Find the least primitive element in packed order.
        let generator = (1..q)
            .find(|&g| {
                if n == 1 {
                    return true;
                }
                order_factors.iter().all(|&r| self.pow_slow(g, n as u64 / r) != 1)
            })
            .expect("multiplicative group has a generator");
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut cur = 1u32;
        for i in 0..n.max(1) {
            exp[i] = cur;
            self.log[cur as usize] = i as u32;
            cur = if self.spec.k == 1 {
                ((cur as u64 * generator as u64) % q as u64) as u32
            } else {
                self.mul_slow(cur, generator)
            };
        }
        for i in 0..n.max(1) {
            exp[n.max(1) + i] = exp[i];
        }
        self.exp = exp;
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mul = |x: u32, y: u32| -> u32 {
            if self.spec.k == 1 {
                ((x as u64 * y as u64) % self.q as u64) as u32
            } else {
                self.mul_slow(x, y)
            }
        };
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// The Conway polynomial for GF(p^k), low-to-high coefficients.
///
/// Computed by scanning monic degree-`k` polynomials in Conway order (the
/// coefficient of `x^i` weighted by `(-1)^{k-i}`, compared from the top) and
/// keeping the first primitive one compatible with the Conway polynomials of
/// all proper subfields.
pub fn conway_polynomial(p: u32, k: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || (p as u64).checked_pow(k).map_or(true, |q| q > MAX_ORDER) {
        return Err(Error::FieldTooLarge { p, k });
    }
    if let Some(c) = conway_cache().lock().unwrap().get(&(p, k)) {
        return Ok(c.clone());
    }
    let q = (p as u64).pow(k);
    let order_factors = prime_factors(q - 1);
    let subfields: Vec<(u32, Vec<u32>)> = (1..k)
        .filter(|d| k % d == 0)
        .map(|d| conway_polynomial(p, d).map(|c| (d, c)))
        .collect::<Result<_>>()?;
    let k_us = k as usize;
    let total = (p as u64).pow(k);
    for code in 0..total {
        // digits of `code` from most significant = sign-adjusted coefficient of x^{k-1}
        let mut seq = vec![0u32; k_us];
        let mut rest = code;
        for i in (0..k_us).rev() {
            seq[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let mut poly = vec![0u32; k_us + 1];
        poly[k_us] = 1;
        for (pos, &s) in seq.iter().enumerate() {
            let i = k_us - 1 - pos;
            let sign_neg = (k_us - i) % 2 == 1;
            poly[i] = if sign_neg { (p - s) % p } else { s };
        }
        if poly[0] == 0 {
            continue;
        }
        let x = vec![0, 1];
        let is_primitive = prime_poly::powmod(p, &x, q - 1, &poly) == vec![1]
            && order_factors
                .iter()
                .all(|&r| prime_poly::powmod(p, &x, (q - 1) / r, &poly) != vec![1]);
        if !is_primitive {
            continue;
        }
        let compatible = subfields.iter().all(|(d, sub)| {
            let e = (q - 1) / ((p as u64).pow(*d) - 1);
            let root = prime_poly::powmod(p, &x, e, &poly);
            prime_poly::eval_poly_at(p, sub, &root, &poly).is_empty()
        });
        if compatible {
            conway_cache().lock().unwrap().insert((p, k), poly.clone());
            return Ok(poly);
        }
    }
    Err(Error::Invalid(format!("no Conway polynomial found for {}^{}", p, k)))
}

/// Polynomial arithmetic over a prime field on plain coefficient vectors,
/// used only for bootstrapping field tables.
mod prime_poly {
    fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mulmod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(p, prod.into_iter().map(|x| x as u32).collect(), m)
    }

    pub fn rem(p: u32, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(p, *m.last().unwrap());
        a = trim(a);
        while a.len() > dm && !a.is_empty() {
            let shift = a.len() - 1 - dm;
            let c = (*a.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = ((a[idx] as u64 + (p as u64 - c as u64) * mi as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn inv(p: u32, a: u32) -> u32 {
        let mut e = p - 2;
        let mut base = a as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn powmod(p: u32, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut base = rem(p, a.to_vec(), m);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(p, &acc, &base, m);
            }
            base = mulmod(p, &base, &base, m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate polynomial `f` (coefficients in GF(p)) at the residue `x` modulo `m`.
    pub fn eval_poly_at(p: u32, f: &[u32], x: &[u32], m: &[u32]) -> Vec<u32> {
        let mut acc: Vec<u32> = Vec::new();
        for &c in f.iter().rev() {
            acc = mulmod(p, &acc, x, m);
            let mut sum = acc.clone();
            if sum.is_empty() {
                sum.push(0);
            }
            sum[0] = (sum[0] + c) % p;
            acc = trim(sum);
        }
        acc
    }

    fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(p, a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(p: u32, m: &[u32]) -> bool {
        let n = m.len() - 1;
        let x = vec![0u32, 1];
        let frob = |times: usize| {
            let mut cur = x.clone();
            for _ in 0..times {
                cur = powmod(p, &cur, p as u64, m);
            }
            cur
        };
        if sub(p, &frob(n), &x).iter().any(|&c| c != 0) {
            return false;
        }
        for r in super::prime_factors(n as u64) {
            let t = frob(n / r as usize);
            let g = gcd(p, m, &sub(p, &t, &x));
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
