//! Elimination, case splitting and bounded enumeration for polynomial systems.

use serde::{Deserialize, Serialize};

use super::poly::{reduce_span, MPoly, QuadraticSystem};
use crate::gfla::{Elem, Field};

/// Limits for [`solve_system`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveBudget {
    /// Enumerate outright once this few variables remain.
    pub enum_vars: usize,
    /// Upper bound on the number of assignments in one enumeration.
    pub enum_limit: u64,
    /// Upper bound on search nodes; exceeding it clears `exhausted`.
    pub max_branches: usize,
    /// Solutions are only meaningful up to scalars: normalise the first
    /// nonzero coordinate to 1. Valid for homogeneous systems only.
    pub projective: bool,
}

impl Default for SolveBudget {
    fn default() -> SolveBudget {
        SolveBudget {
            enum_vars: 8,
            enum_limit: 1 << 20,
            max_branches: 200_000,
            projective: false,
        }
    }
}

/// Solutions `x_v = exprs[v](free)`, with `exprs` affine in the free variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub free: Vec<usize>,
    #[serde(skip)]
    pub exprs: Vec<MPoly>,
    /// Human-readable `x = expr` lines.
    pub description: Vec<String>,
}

impl Family {
    /// The point with the free variables set to `values`.
    pub fn point(&self, f: &Field, values: &[Elem]) -> Vec<Elem> {
        let mut assign = vec![None; self.exprs.len()];
        for (&v, &x) in self.free.iter().zip(values) {
            assign[v] = Some(x);
        }
        self.exprs
            .iter()
            .map(|e| e.partial_eval(f, &assign).constant_term())
            .collect()
    }

    pub fn contains(&self, f: &Field, point: &[Elem]) -> bool {
        let values: Vec<Elem> = self.free.iter().map(|&v| point[v]).collect();
        self.point(f, &values) == point
    }

    /// Whether every expression has degree at most one.
    pub fn is_affine(&self) -> bool {
        self.exprs.iter().all(|e| e.degree() <= 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub num_variables: usize,
    pub points: Vec<Vec<Elem>>,
    pub families: Vec<Family>,
    /// True only when every branch was closed.
    pub exhausted: bool,
    pub projective: bool,
    pub branches: usize,
}

impl SolutionSet {
    /// Normalise so the first nonzero coordinate is 1 (projective mode).
    pub fn normalize(f: &Field, point: &[Elem]) -> Vec<Elem> {
        match point.iter().find(|&&x| x != 0) {
            Some(&lead) => {
                let inv = f.inv(lead).expect("nonzero");
                point.iter().map(|&x| f.mul(x, inv)).collect()
            }
            None => point.to_vec(),
        }
    }

    pub fn contains(&self, f: &Field, point: &[Elem]) -> bool {
        let p = if self.projective {
            SolutionSet::normalize(f, point)
        } else {
            point.to_vec()
        };
        self.points.contains(&p) || self.families.iter().any(|fam| fam.contains(f, &p))
    }

    /// Every point, expanding families (returns `None` above `limit`).
    pub fn all_points(&self, f: &Field, limit: usize) -> Option<Vec<Vec<Elem>>> {
        let mut out: Vec<Vec<Elem>> = self.points.clone();
        let q = f.order() as usize;
        for fam in &self.families {
            let count = q.checked_pow(fam.free.len() as u32)?;
            if out.len() + count > limit {
                return None;
            }
            for t in 0..count {
                let values: Vec<Elem> = (0..fam.free.len()).map(|i| (t / q.pow(i as u32) % q) as Elem).collect();
                out.push(fam.point(f, &values));
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

struct Search<'a> {
    f: &'a Field,
    n: usize,
    budget: SolveBudget,
    names: &'a [String],
    branches: usize,
    exhausted: bool,
    points: Vec<Vec<Elem>>,
    families: Vec<Family>,
}

impl<'a> Search<'a> {
    fn emit(&mut self, elim: &[(usize, MPoly)]) {
        // back-substitute in reverse elimination order
        let mut exprs: Vec<Option<MPoly>> = vec![None; self.n];
        for (v, e) in elim.iter().rev() {
            let mut e = e.clone();
            for (w, ex) in exprs.iter().enumerate() {
                if let Some(ex) = ex {
                    e = e.substitute(self.f, w, ex);
                }
            }
            exprs[*v] = Some(e);
        }
        let free: Vec<usize> = (0..self.n).filter(|&v| exprs[v].is_none()).collect();
        let exprs: Vec<MPoly> = exprs
            .into_iter()
            .enumerate()
            .map(|(v, e)| e.unwrap_or_else(|| MPoly::var(v)))
            .collect();
        if free.is_empty() {
            self.points.push(exprs.iter().map(|e| e.constant_term()).collect());
        } else {
            let description = free
                .iter()
                .map(|&v| format!("{} free", self.names[v]))
                .chain(
                    (0..self.n)
                        .filter(|v| !free.contains(v))
                        .map(|v| format!("{} = {}", self.names[v], exprs[v].render(self.names))),
                )
                .collect();
            self.families.push(Family {
                free,
                exprs,
                description,
            });
        }
    }

    fn node(&mut self, eqs: Vec<MPoly>, mut elim: Vec<(usize, MPoly)>) {
        self.branches += 1;
        if self.branches > self.budget.max_branches {
            self.exhausted = false;
            return;
        }
        let f = self.f;
        let mut eqs = reduce_span(f, &eqs);
        // linear elimination
        loop {
            if eqs.iter().any(|e| e.is_constant() && !e.is_zero()) {
                return;
            }
            let mut pick = None;
            'outer: for (k, e) in eqs.iter().enumerate() {
                for v in e.vars() {
                    if let Some(c) = e.linear_coefficient(v) {
                        let rest_deg = e.terms.keys().filter(|m| **m != vec![v]).map(|m| m.len()).max().unwrap_or(0);
                        if rest_deg <= 1 {
                            pick = Some((k, v, c));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((k, v, c)) = pick else { break };
            let e = eqs.swap_remove(k);
            let mut rest = e.clone();
            rest.terms.remove(&vec![v]);
            let expr = rest.scale(f, f.neg(f.inv(c).unwrap()));
            eqs = eqs.iter().map(|x| x.substitute(f, v, &expr)).filter(|x| !x.is_zero()).collect();
            eqs = reduce_span(f, &eqs);
            elim.push((v, expr));
        }
        if eqs.is_empty() {
            self.emit(&elim);
            return;
        }
        let vars: Vec<usize> = eqs.iter().flat_map(|e| e.vars()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let q = f.order() as u64;
        let fits = vars.len() <= self.budget.enum_vars
            && q.checked_pow(vars.len() as u32).is_some_and(|c| c <= self.budget.enum_limit);
        if fits {
            let count = q.pow(vars.len() as u32);
            let mut assign = vec![None; self.n];
            for t in 0..count {
                let mut r = t;
                for &v in &vars {
                    assign[v] = Some((r % q) as Elem);
                    r /= q;
                }
                if eqs.iter().all(|e| e.partial_eval(f, &assign).is_zero()) {
                    let mut el = elim.clone();
                    for &v in &vars {
                        el.push((v, MPoly::constant(assign[v].unwrap())));
                    }
                    self.emit(&el);
                }
            }
            return;
        }
        // split on the variable occurring in the most equations
        let v = *vars
            .iter()
            .max_by_key(|&&v| (eqs.iter().filter(|e| e.vars().contains(&v)).count(), std::cmp::Reverse(v)))
            .unwrap();
        for x in 0..f.order() {
            let c = MPoly::constant(x);
            let sub: Vec<MPoly> = eqs.iter().map(|e| e.substitute(f, v, &c)).collect();
            let mut el = elim.clone();
            el.push((v, c));
            self.node(sub, el);
            if self.branches > self.budget.max_branches {
                self.exhausted = false;
                return;
            }
        }
    }
}

/// Solve by linear elimination, splitting on a variable's value, and
/// enumeration once few variables remain.
///
/// ```
/// use modlie::gfla::Field;
/// use modlie::lieproduct::{solve_system, MPoly, QuadraticSystem, SolveBudget};
/// let f = Field::prime(5).unwrap();
/// let mut s = QuadraticSystem::with_count(&f, 2);
/// let a = MPoly::var(0);
/// let b = MPoly::var(1);
/// // a1 a2 = 0, a1 + a2 - 1 = 0
/// s.extend([a.mul(&f, &b), a.add(&f, &b).add(&f, &MPoly::constant(4))]);
/// let sol = solve_system(&s, SolveBudget::default());
/// assert!(sol.exhausted);
/// assert_eq!(sol.points, vec![vec![0, 1], vec![1, 0]]);
/// ```
pub fn solve_system(s: &QuadraticSystem, budget: SolveBudget) -> SolutionSet {
    let f = &s.field;
    let n = s.num_variables();
    let mut search = Search {
        f,
        n,
        budget,
        names: &s.variables,
        branches: 0,
        exhausted: true,
        points: Vec::new(),
        families: Vec::new(),
    };
    if budget.projective {
        // zero point, then the first nonzero coordinate at each position
        for lead in 0..=n {
            let mut elim: Vec<(usize, MPoly)> = Vec::new();
            for v in 0..lead.min(n) {
                elim.push((v, MPoly::zero()));
            }
            if lead < n {
                elim.push((lead, MPoly::constant(1)));
            }
            let eqs: Vec<MPoly> = s
                .equations
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    for (v, x) in &elim {
                        e = e.substitute(f, *v, x);
                    }
                    e
                })
                .collect();
            search.node(eqs, elim);
            if !search.exhausted {
                break;
            }
        }
    } else {
        search.node(s.equations.clone(), Vec::new());
    }
    let mut points = search.points;
    points.sort();
    points.dedup();
    SolutionSet {
        num_variables: n,
        points,
        families: search.families,
        exhausted: search.exhausted,
        projective: budget.projective,
        branches: search.branches,
    }
}
