//! Sparse multivariate polynomials and polynomial systems over GF(q).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::gfla::{Elem, Field, Matrix};

/// A monomial as the sorted list of its variable indices, with repetition.
pub type Monomial = Vec<usize>;

/// `Σ c_m m` with nonzero coefficients only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Monomial, Elem>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: Elem) -> MPoly {
        let mut p = MPoly::zero();
        if c != 0 {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(i: usize) -> MPoly {
        let mut p = MPoly::zero();
        p.terms.insert(vec![i], 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Elem {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// Add `c · m`.
    pub fn add_term(&mut self, f: &Field, m: Monomial, c: Elem) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, f: &Field, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(f, m.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &Field, c: Elem) -> MPoly {
        if c == 0 {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, f: &Field, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort_unstable();
                out.add_term(f, m, f.mul(x, y));
            }
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.iter().copied()).collect()
    }

    /// Replace variable `v` by `expr`.
    pub fn substitute(&self, f: &Field, v: usize, expr: &MPoly) -> MPoly {
        if !self.terms.keys().any(|m| m.contains(&v)) {
            return self.clone();
        }
        let mut out = MPoly::zero();
        for (m, &c) in &self.terms {
            let k = m.iter().filter(|&&x| x == v).count();
            let rest: Monomial = m.iter().copied().filter(|&x| x != v).collect();
            let mut term = MPoly::zero();
            term.terms.insert(rest, c);
            for _ in 0..k {
                term = term.mul(f, expr);
            }
            out = out.add(f, &term);
        }
        out
    }

    /// Substitute every assigned variable.
    pub fn partial_eval(&self, f: &Field, values: &[Option<Elem>]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, &c) in &self.terms {
            let mut coeff = c;
            let mut rest = Vec::new();
            for &x in m {
                match values.get(x).copied().flatten() {
                    Some(v) => coeff = f.mul(coeff, v),
                    None => rest.push(x),
                }
            }
            out.add_term(f, rest, coeff);
        }
        out
    }

    pub fn eval(&self, f: &Field, point: &[Elem]) -> Elem {
        let mut s = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for &x in m {
                t = f.mul(t, point[x]);
            }
            s = f.add(s, t);
        }
        s
    }

    /// If `v` occurs only in the monomial `v` itself, its coefficient.
    pub fn linear_coefficient(&self, v: usize) -> Option<Elem> {
        let mut coeff = None;
        for (m, &c) in &self.terms {
            if m.contains(&v) {
                if m.len() == 1 {
                    coeff = Some(c);
                } else {
                    return None;
                }
            }
        }
        coeff
    }

    /// Scale so the first coefficient is 1.
    pub fn monic(&self, f: &Field) -> MPoly {
        match self.terms.values().next() {
            Some(&c) => self.scale(f, f.inv(c).expect("nonzero")),
            None => MPoly::zero(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if m.is_empty() || *c != 1 {
                let _ = write!(out, "{}", c);
            }
            for (j, &x) in m.iter().enumerate() {
                if j > 0 || *c != 1 {
                    out.push('*');
                }
                out.push_str(&names[x]);
            }
        }
        out
    }
}

/// Polynomial equations `p = 0` in named variables.
#[derive(Debug, Clone)]
pub struct QuadraticSystem {
    pub field: Field,
    pub variables: Vec<String>,
    pub equations: Vec<MPoly>,
    /// Equations offered before removing zeros and scalar duplicates.
    pub raw_count: usize,
}

impl QuadraticSystem {
    pub fn new(field: &Field, variables: Vec<String>) -> QuadraticSystem {
        QuadraticSystem {
            field: field.clone(),
            variables,
            equations: Vec::new(),
            raw_count: 0,
        }
    }

    /// Names `a1..an`.
    pub fn with_count(field: &Field, n: usize) -> QuadraticSystem {
        QuadraticSystem::new(field, (1..=n).map(|i| format!("a{}", i)).collect())
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Add all equations, dropping zeros and scalar multiples of earlier ones.
    pub fn extend<I: IntoIterator<Item = MPoly>>(&mut self, eqs: I) {
        let mut seen: BTreeSet<MPoly> = self.equations.iter().cloned().collect();
        for e in eqs {
            self.raw_count += 1;
            if e.is_zero() {
                continue;
            }
            assert!(
                e.vars().iter().all(|&v| v < self.variables.len()),
                "equation uses an undeclared variable"
            );
            let n = e.monic(&self.field);
            if seen.insert(n.clone()) {
                self.equations.push(n);
            }
        }
    }

    pub fn max_degree(&self) -> usize {
        self.equations.iter().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn is_satisfied(&self, point: &[Elem]) -> bool {
        self.equations.iter().all(|e| e.eval(&self.field, point) == 0)
    }

    /// An equivalent system whose equations are the reduced echelon basis of
    /// the span of the given ones (over the monomials).
    pub fn reduced(&self) -> QuadraticSystem {
        let mut out = QuadraticSystem::new(&self.field, self.variables.clone());
        out.equations = reduce_span(&self.field, &self.equations);
        out.raw_count = self.raw_count;
        out
    }

    pub fn render(&self) -> Vec<String> {
        self.equations.iter().map(|e| format!("{} = 0", e.render(&self.variables))).collect()
    }
}

/// Reduced echelon basis of the linear span of `eqs`.
pub fn reduce_span(f: &Field, eqs: &[MPoly]) -> Vec<MPoly> {
    let monos: Vec<Monomial> = eqs
        .iter()
        .flat_map(|e| e.terms.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    if monos.is_empty() {
        return Vec::new();
    }
    let pos: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<Elem>> = eqs
        .iter()
        .map(|e| {
            let mut r = vec![0; monos.len()];
            for (m, &c) in &e.terms {
                r[pos[m]] = c;
            }
            r
        })
        .collect();
    let ech = Matrix::from_rows(f, &rows).echelon();
    (0..ech.pivots.len())
        .map(|i| {
            let mut p = MPoly::zero();
            for (j, &c) in ech.rref.row(i).iter().enumerate() {
                if c != 0 {
                    p.terms.insert(monos[j].clone(), c);
                }
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_and_evaluation() {
        let f = Field::prime(7).unwrap();
        // x0 * x1 + 3 x1
        let mut p = MPoly::zero();
        p.add_term(&f, vec![0, 1], 1);
        p.add_term(&f, vec![1], 3);
        assert_eq!(p.eval(&f, &[2, 5]), f.from_int(25));
        // x0 = x1 + 1
        let e = MPoly::var(1).add(&f, &MPoly::constant(1));
        let q = p.substitute(&f, 0, &e);
        assert_eq!(q.eval(&f, &[0, 5]), p.eval(&f, &[6, 5]));
        assert_eq!(p.linear_coefficient(1), None);
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn system_dedup_and_reduction() {
        let f = Field::prime(5).unwrap();
        let mut s = QuadraticSystem::with_count(&f, 2);
        let x = MPoly::var(0).mul(&f, &MPoly::var(1));
        s.extend([x.clone(), x.scale(&f, 3), MPoly::zero(), MPoly::var(0)]);
        assert_eq!(s.equations.len(), 2);
        assert_eq!(s.raw_count, 4);
        let r = s.reduced();
        assert_eq!(r.equations.len(), 2);
        assert!(s.is_satisfied(&[0, 3]));
        assert!(!s.is_satisfied(&[1, 3]));
    }
}
