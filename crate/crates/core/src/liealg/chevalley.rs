//! Chevalley bases of simple Lie algebras from root data.
//!
//! Structure constants `N_{α,β} = ±(p+1)` are fixed by declaring
//! `N_{α,β} = +(p+1)` on extraspecial pairs (with positive roots ordered by
//! height, then lexicographically) and propagating through the standard
//! identities between the `N`'s.

use std::collections::HashMap;

use super::StructureConstants;
use crate::error::Result;
use crate::gfla::Field;
use crate::roots::{build_root_system, RootSystem, RootType};

/// A Chevalley basis: `e_α` for positive roots, then `h_1..h_n`, then `e_{-α}`.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    pub roots: RootSystem,
    pub algebra: StructureConstants,
}

impl ChevalleyBasis {
    /// Basis index of `e_α` for `roots.roots[a]`.
    pub fn root_index(&self, a: usize) -> usize {
        let n = self.roots.num_positive();
        if a < n {
            a
        } else {
            a + self.roots.rank
        }
    }

    /// Basis index of `h_i`.
    pub fn h_index(&self, i: usize) -> usize {
        self.roots.num_positive() + i
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.roots.ty, self.roots.rank)
    }
}

struct Constants<'a> {
    r: &'a RootSystem,
    extraspecial: HashMap<usize, (usize, usize)>,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> Constants<'a> {
    fn new(r: &'a RootSystem) -> Constants<'a> {
        let np = r.num_positive();
        let mut extraspecial = HashMap::new();
        for xi in r.rank..np {
            for a in 0..np {
                let diff: Vec<i32> = r.roots[xi].iter().zip(&r.roots[a]).map(|(x, y)| x - y).collect();
                if let Some(b) = r.root_index(&diff) {
                    if b < np {
                        extraspecial.insert(xi, (a, b));
                        break;
                    }
                }
            }
        }
        Constants {
            r,
            extraspecial,
            memo: HashMap::new(),
        }
    }

    fn is_pos(&self, a: usize) -> bool {
        a < self.r.num_positive()
    }

    fn norm(&self, a: usize) -> i64 {
        let v = &self.r.roots[a];
        self.r.inner(v, v) as i64
    }

    /// Largest `p` with `β - pα` a root.
    fn string_down(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = self.r.roots[b].clone();
        loop {
            for (c, x) in cur.iter_mut().zip(&self.r.roots[a]) {
                *c -= x;
            }
            if self.r.is_root(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    fn diff(&self, a: usize, b: usize) -> Option<usize> {
        self.r.sum_index(a, self.r.negative_index(b))
    }

    /// `N_{a,b}`, defined when `a + b` is a root.
    fn n(&mut self, a: usize, b: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let r = self.r;
        let s = r.sum_index(a, b).expect("N is defined only when a + b is a root");
        let neg = |x: usize| r.negative_index(x);
        let value = match (self.is_pos(a), self.is_pos(b)) {
            (true, true) => {
                let (a1, b1) = self.extraspecial[&s];
                let p1 = self.string_down(a1, b1);
                if (a, b) == (a1, b1) {
                    p1 + 1
                } else if (a, b) == (b1, a1) {
                    -(p1 + 1)
                } else {
                    // relation for a + b - a1 - b1 = 0
                    let (mut t2, mut l2) = (0, 1);
                    if let Some(d) = self.diff(b, a1) {
                        t2 = self.n(b, neg(a1)) * self.n(a, neg(b1));
                        l2 = self.norm(d);
                    }
                    let (mut t3, mut l3) = (0, 1);
                    if let Some(d) = self.diff(a, a1) {
                        t3 = self.n(neg(a1), a) * self.n(b, neg(b1));
                        l3 = self.norm(d);
                    }
                    let num = self.norm(s) * (t2 * l3 + t3 * l2);
                    let den = l2 * l3 * (p1 + 1);
                    debug_assert_eq!(num % den, 0);
                    num / den
                }
            }
            (true, false) => {
                if self.is_pos(s) {
                    // a + b + c = 0 with c = -s: N_{a,b} = (c,c)/(a,a) N_{b,c}
                    let c = neg(s);
                    let nbc = -self.n(neg(b), neg(c));
                    let num = self.norm(c) * nbc;
                    debug_assert_eq!(num % self.norm(a), 0);
                    num / self.norm(a)
                } else {
                    -self.n(neg(a), neg(b))
                }
            }
            (false, true) => -self.n(b, a),
            (false, false) => -self.n(neg(a), neg(b)),
        };
        debug_assert_eq!(value.abs(), self.string_down(a, b) + 1);
        self.memo.insert((a, b), value);
        value
    }
}

/// The Chevalley basis structure constants of the given type over `field`.
///
/// ```
/// use modlie::gfla::Field;
/// use modlie::liealg::{chevalley_algebra, jacobi_residual};
/// use modlie::roots::RootType;
/// let f = Field::prime(11).unwrap();
/// let g2 = chevalley_algebra(RootType::G, 2, &f).unwrap();
/// assert_eq!(g2.algebra.dim(), 14);
/// assert!(jacobi_residual(&g2.algebra).is_lie);
/// ```
pub fn chevalley_algebra(ty: RootType, rank: usize, field: &Field) -> Result<ChevalleyBasis> {
    let r = build_root_system(ty, rank)?;
    let np = r.num_positive();
    let nr = r.roots.len();
    let dim = nr + rank;
    let idx = |a: usize| if a < np { a } else { a + rank };
    let mut l = StructureConstants::zero(field, dim);
    let mut consts = Constants::new(&r);
    let simple: Vec<Vec<i32>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();
    for a in 0..nr {
        // [h_i, e_a] = <a, α_i^∨> e_a
        for (i, s) in simple.iter().enumerate() {
            let c = r.pairing(&r.roots[a], s);
            if c != 0 {
                let mut v = vec![0; dim];
                v[idx(a)] = field.from_int(c as i64);
                l.set(np + i, idx(a), &v);
            }
        }
        for b in a + 1..nr {
            if r.negative_index(a) == b {
                // [e_a, e_{-a}] = h_a, written in the simple coroots
                let (pos, sign) = if a < np { (a, 1) } else { (b, -1) };
                let na = consts.norm(pos);
                let mut v = vec![0; dim];
                for i in 0..rank {
                    let c = r.roots[pos][i] as i64 * r.gram[i][i] as i64 / na;
                    v[np + i] = field.from_int(sign * c);
                }
                l.set(idx(a), idx(b), &v);
            } else if let Some(s) = r.sum_index(a, b) {
                let mut v = vec![0; dim];
                v[idx(s)] = field.from_int(consts.n(a, b));
                l.set(idx(a), idx(b), &v);
            }
        }
    }
    Ok(ChevalleyBasis { roots: r, algebra: l })
}
