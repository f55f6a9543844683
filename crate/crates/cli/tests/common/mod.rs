//! Shared helpers for the CLI integration tests: running the binary, and a
//! small table-driven field arithmetic used as an oracle independent of the
//! library's own.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    root().join("fixtures").join(rel)
}

pub fn modlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("spawn modlie")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({}): {}{}", e, stdout(o), stderr(o)))
}

/// `GF(q)` for `q` prime or 4, with elements packed as base-`p` digits
/// (`a0 + a1 x` is `a0 + p a1`, modulus `x^2 + x + 1` for `q = 4`).
#[derive(Clone)]
pub struct Fq {
    pub q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Fq {
    pub fn new(q: u32) -> Fq {
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                let i = (a * q + b) as usize;
                if q == 4 {
                    add[i] = a ^ b;
                    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                    // (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1
                    let c2 = a1 & b1;
                    let c1 = (a0 & b1) ^ (a1 & b0) ^ c2;
                    let c0 = (a0 & b0) ^ c2;
                    mul[i] = c0 | (c1 << 1);
                } else {
                    add[i] = (a + b) % q;
                    mul[i] = a * b % q;
                }
            }
        }
        Fq { q, add, mul }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: u32) -> u32 {
        (1..self.q).find(|&b| self.mul(a, b) == 1).expect("nonzero")
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn from_int(&self, n: i64) -> u32 {
        assert!(self.q != 4);
        n.rem_euclid(self.q as i64) as u32
    }
}

pub type Mat = Vec<Vec<u32>>;

pub fn mat_mul(f: &Fq, a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut c = vec![vec![0; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..m {
                c[i][j] = f.add(c[i][j], f.mul(a[i][l], b[l][j]));
            }
        }
    }
    c
}

pub fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Fq, rows: &mut Mat) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for j in 0..cols {
                    let v = f.mul(t, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(f: &Fq, a: &Mat) -> usize {
    let mut m = a.clone();
    rref(f, &mut m).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(f: &Fq, a: &Mat, cols: usize) -> Mat {
    let mut m = a.clone();
    if m.is_empty() {
        return identity(cols);
    }
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Structure constants read straight from a `GFLIE v1` file, as a dense
/// `dim x dim x dim` table with antisymmetry filled in.
pub struct Table {
    pub p: u32,
    pub dim: usize,
    pub c: Vec<u32>,
}

impl Table {
    pub fn read(path: &Path) -> Table {
        let text = std::fs::read_to_string(path).unwrap();
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        assert_eq!(lines.next(), Some("GFLIE v1"));
        let field: Vec<u32> = lines.next().unwrap().split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect();
        assert_eq!(field.get(1).copied().unwrap_or(1), 1, "prime fields only");
        let p = field[0];
        let dim: usize = lines.next().unwrap().strip_prefix("dim ").unwrap().parse().unwrap();
        let mut c = vec![0; dim * dim * dim];
        for l in lines {
            let t: Vec<usize> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            let (i, j, m, v) = (t[0], t[1], t[2], t[3] as u32 % p);
            c[(i * dim + j) * dim + m] = v;
            c[(j * dim + i) * dim + m] = (p - v) % p;
        }
        Table { p, dim, c }
    }

    pub fn get(&self, i: usize, j: usize, m: usize) -> u32 {
        self.c[(i * self.dim + j) * self.dim + m]
    }

    /// `[x, y]` on coordinate vectors.
    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let n = self.dim;
        let mut out = vec![0u64; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let s = x[i] as u64 * y[j] as u64 % p;
                for (m, o) in out.iter_mut().enumerate() {
                    *o = (*o + s * self.get(i, j, m) as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }
}
