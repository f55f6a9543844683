//! Acceptance criteria AC-1 to AC-8. Prints one line per criterion and fails
//! if any criterion fails; AC-7 is skipped when its input files are absent.
//!
//! Tolerances are pinned: every criterion is an exact comparison.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, json, mat_mul, modlie, nullspace, rank, rref, stderr, transpose, Fq, Mat, Table};
use modlie::gfla::{pencil_profile, Field, Matrix, Partition};
use modlie::lieproduct::{solve_system, MPoly, QuadraticSystem, SolveBudget};
use modlie::modrep::groups::{alternating4_gens, cyclic_gens, permutation_module, symmetric_gens, Perm};
use modlie::modrep::{chop, dual, hom_space, invariant_forms, FormKind, Representation};

const TOLERANCE: &str = "exact";

#[derive(PartialEq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

struct Line {
    id: &'static str,
    status: Status,
    detail: String,
    seconds: f64,
}

fn criterion(id: &'static str, f: impl FnOnce() -> (Status, String)) -> Line {
    let t = Instant::now();
    let (status, detail) = f();
    Line {
        id,
        status,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn verdict(failures: &[String], ok: String) -> (Status, String) {
    if failures.is_empty() {
        (Status::Pass, ok)
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        (Status::Fail, format!("{} failure(s): {}", failures.len(), shown.join("; ")))
    }
}

// AC-1

fn table3(ty: &str, n: usize, p: u32) -> usize {
    let nn = n as u32;
    match ty {
        "A" => ((n + 1) * (n + 1) / 4) + usize::from((nn + 1) % p == 0),
        "B" if n == 3 => 5,
        "B" => n * (n - 1) / 2 + 1,
        "C" => n * (n + 1) / 2,
        "D" => n * (n - 1) / 2 + if p == 2 { 2 } else { 0 },
        "G" => 3,
        "F" => 9,
        "E" if n == 6 => 16 + usize::from(p == 3),
        "E" if n == 7 => 27 + usize::from(p == 2),
        "E" => 36,
        _ => unreachable!(),
    }
}

fn ac1() -> (Status, String) {
    let mut cases: Vec<(&str, usize, u32)> = Vec::new();
    for n in 1..=7 {
        for p in [2, 3, 5, 7] {
            cases.push(("A", n, p));
        }
    }
    cases.extend([("B", 3, 5), ("B", 4, 5), ("C", 2, 5), ("C", 3, 5), ("C", 4, 5)]);
    for n in 4..=6 {
        cases.push(("D", n, 2));
        cases.push(("D", n, 5));
    }
    cases.extend([("G", 2, 5), ("F", 4, 5), ("E", 6, 3), ("E", 6, 5), ("E", 7, 2), ("E", 7, 5), ("E", 8, 5)]);
    let mut failures = Vec::new();
    for &(ty, n, p) in &cases {
        let label = format!("{}{}", ty, n);
        let o = modlie(&["--json", "roots", "abelian-dim", &label, "--p", &p.to_string()]);
        if !o.status.success() {
            failures.push(format!("{} p={}: {}", label, p, stderr(&o).trim()));
            continue;
        }
        let v = json(&o);
        let want = table3(ty, n, p) as u64;
        let (got, formula) = (v["result"].as_u64(), v["formula"].as_u64());
        if got != Some(want) || formula != Some(want) {
            failures.push(format!("{} p={}: search {:?}, formula {:?}, table {}", label, p, got, formula, want));
        }
    }
    verdict(&failures, format!("{} table entries reproduced, search agrees with formula", cases.len()))
}

// AC-2

fn ac2() -> (Status, String) {
    let mut failures = Vec::new();
    for m in ["4.rep", "4d.rep", "14.rep"] {
        let o = modlie(&[
            "validate",
            "--rep",
            fixture(&format!("alt7/{}", m)).to_str().unwrap(),
            fixture("alt7/2alt7.pres").to_str().unwrap(),
        ]);
        if !o.status.success() {
            failures.push(format!("presentation does not validate on {}", m));
        }
    }
    let mut got = Vec::new();
    for (file, want) in [("h1_alt7.toml", 1), ("h1_alt7_natural.toml", 0)] {
        let path = fixture(&format!("scenarios/{}", file));
        let o = modlie(&["--json", "run", path.to_str().unwrap()]);
        if o.status.code() != Some(0) {
            failures.push(format!("{}: exit {:?} {}", file, o.status.code(), stderr(&o).trim()));
            continue;
        }
        let s = &json(&o)["summary"];
        let h1 = s["h1_dimension"].as_u64();
        got.push(format!("{}", h1.map_or("?".into(), |x| x.to_string())));
        if h1 != Some(want) {
            failures.push(format!("{}: H1 {:?}, want {}", file, h1, want));
        }
        if s["group_order"].as_u64() != Some(5040) {
            failures.push(format!("{}: group order {}", file, s["group_order"]));
        }
    }
    verdict(
        &failures,
        format!("dim H1 = {} for S2(4*+14) and S2(4+14); presentation of order 5040 validated", got.join(", ")),
    )
}

// AC-3

/// Jacobi on all basis triples, perfect, centerless.
fn lie_oracle(t: &Table) -> Result<(), String> {
    let n = t.dim;
    let unit = |i: usize| -> Vec<u32> { (0..n).map(|j| u32::from(i == j)).collect() };
    let f = Fq::new(t.p);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (unit(i), unit(j), unit(k));
                let x = t.bracket(&a, &t.bracket(&b, &c));
                let y = t.bracket(&b, &t.bracket(&c, &a));
                let z = t.bracket(&c, &t.bracket(&a, &b));
                if (0..n).any(|m| f.add(f.add(x[m], y[m]), z[m]) != 0) {
                    return Err(format!("Jacobi fails on ({}, {}, {})", i, j, k));
                }
            }
        }
    }
    let mut derived: Mat = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            derived.push(t.bracket(&unit(i), &unit(j)));
        }
    }
    if rank(&f, &derived) != n {
        return Err("not perfect".into());
    }
    // x central iff [x, e_j] = 0 for all j: rows indexed by (j, m), columns by x
    let mut ad: Mat = Vec::new();
    for j in 0..n {
        for m in 0..n {
            ad.push((0..n).map(|i| t.get(i, j, m)).collect());
        }
    }
    if !nullspace(&f, &ad, n).is_empty() {
        return Err("nonzero center".into());
    }
    Ok(())
}

fn ac3() -> (Status, String) {
    let mut failures = Vec::new();
    let mut count = 0;
    for ty in ["A1", "A2", "G2"] {
        for p in [7, 11] {
            count += 1;
            let t = Table::read(&fixture(&format!("chevalley/{}_p{}.lie", ty, p)));
            let want_dim = match ty {
                "A1" => 3,
                "A2" => 8,
                _ => 14,
            };
            if t.dim != want_dim || t.p != p {
                failures.push(format!("{} p={}: shipped table has dim {} over GF({})", ty, p, t.dim, t.p));
            }
            if let Err(e) = lie_oracle(&t) {
                failures.push(format!("{} p={}: shipped constants: {}", ty, p, e));
            }
            let path = fixture(&format!("scenarios/seeded_{}_p{}.toml", ty, p));
            let o = modlie(&["--json", "lieproduct", "classify", path.to_str().unwrap()]);
            if o.status.code() != Some(0) {
                failures.push(format!("{} p={}: exit {:?} {}", ty, p, o.status.code(), stderr(&o).trim()));
                continue;
            }
            let s = &json(&o)["summary"];
            if s["seeded.in_solution_set"] != true {
                failures.push(format!("{} p={}: seeded point not in the solution set", ty, p));
            }
            if s["seeded.survives"] != true {
                failures.push(format!("{} p={}: seeded point rejected", ty, p));
            }
            if s["seeded.identified_as"] != ty {
                failures.push(format!("{} p={}: identified as {}", ty, p, s["seeded.identified_as"]));
            }
            if s["exhausted"] != true {
                failures.push(format!("{} p={}: solver not exhausted", ty, p));
            }
        }
    }
    verdict(
        &failures,
        format!("{} seeded scenarios: seeded bracket found, kept and identified; shipped constants pass the oracle", count),
    )
}

// AC-4

fn random_system(rng: &mut ChaCha8Rng, q: u32) -> (Field, QuadraticSystem, Vec<Vec<(Vec<usize>, u32)>>) {
    let f = if q == 4 { Field::new(2, 2).unwrap() } else { Field::prime(q).unwrap() };
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=3);
    let mut monomials: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..n {
        monomials.push(vec![i]);
        for j in i..n {
            monomials.push(vec![i, j]);
        }
    }
    let mut sys = QuadraticSystem::with_count(&f, n);
    let mut raw = Vec::new();
    for _ in 0..m {
        let mut p = MPoly::zero();
        let mut terms = Vec::new();
        for mono in &monomials {
            if rng.gen_bool(0.4) {
                let c = rng.gen_range(1..q);
                p.add_term(&f, mono.clone(), c);
                terms.push((mono.clone(), c));
            }
        }
        raw.push(terms);
        sys.extend([p]);
    }
    (f, sys, raw)
}

fn ac4() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut exhausted = 0;
    let mut points = 0;
    for case in 0..200 {
        let q = [2, 3, 4, 5, 7][case % 5];
        let (f, sys, raw) = random_system(&mut rng, q);
        let o = Fq::new(q);
        let n = sys.num_variables();
        let mut brute = BTreeSet::new();
        for idx in 0..(q as usize).pow(n as u32) {
            let x: Vec<u32> = (0..n).map(|i| (idx / (q as usize).pow(i as u32) % q as usize) as u32).collect();
            let zero = raw.iter().all(|terms| {
                terms.iter().fold(0, |s, (mono, c)| {
                    let t = mono.iter().fold(*c, |t, &v| o.mul(t, x[v]));
                    o.add(s, t)
                }) == 0
            });
            if zero {
                brute.insert(x);
            }
        }
        let sol = solve_system(&sys, SolveBudget::default());
        if !sol.exhausted {
            continue;
        }
        exhausted += 1;
        let Some(found) = sol.all_points(&f, 1 << 20) else {
            failures.push(format!("case {}: families too large to expand", case));
            continue;
        };
        let found: BTreeSet<Vec<u32>> = found.into_iter().collect();
        points += brute.len();
        if found != brute {
            failures.push(format!("case {} over GF({}): {} solved vs {} enumerated", case, q, found.len(), brute.len()));
        }
    }
    if exhausted < 200 {
        failures.push(format!("only {} of 200 systems exhausted", exhausted));
    }
    verdict(
        &failures,
        format!("200 systems over GF(2,3,4,5,7), all exhausted, {} solutions match enumeration", points),
    )
}

// AC-5

fn invert(f: &Fq, a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    let piv = rref(f, &mut aug);
    (piv.len() == n && piv.iter().enumerate().all(|(i, &c)| c == i)).then(|| aug.iter().map(|r| r[n..].to_vec()).collect())
}

/// Jordan partition of a nilpotent matrix from the ranks of its powers.
fn jordan(f: &Fq, a: &Mat) -> Vec<usize> {
    let n = a.len();
    let mut ranks = vec![n];
    let mut pw = a.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank(f, &pw));
        pw = mat_mul(f, &pw, a);
        assert!(ranks.len() <= n + 1, "not nilpotent");
    }
    // blocks of size >= i: r_{i-1} - r_i
    let mut parts = Vec::new();
    for i in 1..ranks.len() {
        let at_least = ranks[i - 1] - ranks[i];
        let at_least_next = if i + 1 < ranks.len() { ranks[i] - ranks[i + 1] } else { 0 };
        parts.extend(std::iter::repeat(i).take(at_least - at_least_next));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn dominated(small: &[usize], big: &[usize]) -> bool {
    let (mut s, mut b) = (0, 0);
    for i in 0..small.len().max(big.len()) {
        s += small.get(i).copied().unwrap_or(0);
        b += big.get(i).copied().unwrap_or(0);
        if s > b {
            return false;
        }
    }
    true
}

fn ac5() -> (Status, String) {
    let q = 31;
    let f = Fq::new(q);
    let field = Field::prime(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut exceptional_total = 0;
    for case in 0..100 {
        let n = rng.gen_range(2..=6);
        let density = rng.gen_range(0.2..0.9);
        let mut upper = || -> Mat {
            (0..n)
                .map(|i| (0..n).map(|j| if j > i && rng.gen_bool(density) { rng.gen_range(1..q) } else { 0 }).collect())
                .collect()
        };
        let (u, v) = (upper(), upper());
        let (p, pinv) = loop {
            let p: Mat = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
            if let Some(pi) = invert(&f, &p) {
                break (p, pi);
            }
        };
        let a = mat_mul(&f, &mat_mul(&f, &p, &u), &pinv);
        let b = mat_mul(&f, &mat_mul(&f, &p, &v), &pinv);
        let per_x: Vec<Vec<usize>> = (0..q)
            .map(|x| {
                let c: Mat = (0..n).map(|i| (0..n).map(|j| f.add(a[i][j], f.mul(x, b[i][j]))).collect()).collect();
                jordan(&f, &c)
            })
            .collect();
        // the generic type has the fewest blocks of each size-or-more count; over
        // GF(31) with n <= 6 it is attained at some point
        let generic = per_x
            .iter()
            .find(|cand| per_x.iter().all(|o| dominated(o, cand)))
            .cloned();
        let Some(generic) = generic else {
            failures.push(format!("case {}: no dominating partition among the 31 points", case));
            continue;
        };
        let expected_exc: Vec<(u32, Vec<usize>)> = (0..q)
            .filter(|&x| per_x[x as usize] != generic)
            .map(|x| (x, per_x[x as usize].clone()))
            .collect();
        let prof = match pencil_profile(&Matrix::from_rows(&field, &a), &Matrix::from_rows(&field, &b)) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("case {}: {}", case, e));
                continue;
            }
        };
        if prof.generic != Partition::new(generic.clone()) {
            failures.push(format!("case {}: generic {} vs {:?}", case, prof.generic, generic));
        }
        let got: Vec<(u32, Vec<usize>)> = prof.exceptional.iter().map(|(x, p)| (*x, p.parts().to_vec())).collect();
        if got != expected_exc {
            failures.push(format!("case {}: exceptional {:?} vs {:?}", case, got, expected_exc));
        }
        if !prof.exceptional.iter().all(|(_, p)| prof.generic.dominates(p)) {
            failures.push(format!("case {}: exceptional partition not dominated", case));
        }
        exceptional_total += expected_exc.len();
    }
    verdict(
        &failures,
        format!("100 pencils over GF(31), {} exceptional points, all match per-point evaluation", exceptional_total),
    )
}

// AC-6

fn to_mat(m: &Matrix) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

fn gens_of(r: &Representation) -> Vec<Mat> {
    r.generators().iter().map(to_mat).collect()
}

/// `dim Hom_G(A, B)` by solving `X a = b X` entrywise.
fn hom_oracle(f: &Fq, a: &[Mat], b: &[Mat], da: usize, db: usize) -> usize {
    let var = |i: usize, j: usize| i * da + j;
    let mut rows: Mat = Vec::new();
    for (ga, gb) in a.iter().zip(b) {
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![0; db * da];
                // (X ga)_ij = Σ_l X_il ga_lj ; (gb X)_ij = Σ_l gb_il X_lj
                for l in 0..da {
                    row[var(i, l)] = f.add(row[var(i, l)], ga[l][j]);
                }
                for l in 0..db {
                    row[var(l, j)] = f.sub(row[var(l, j)], gb[i][l]);
                }
                rows.push(row);
            }
        }
    }
    nullspace(f, &rows, db * da).len()
}

/// Count intertwiners by enumerating every matrix.
fn hom_enumerate(f: &Fq, a: &[Mat], b: &[Mat], da: usize, db: usize) -> usize {
    let q = f.q as usize;
    let cells = da * db;
    (0..q.pow(cells as u32))
        .filter(|&idx| {
            let x: Mat = (0..db)
                .map(|i| (0..da).map(|j| (idx / q.pow((i * da + j) as u32) % q) as u32).collect())
                .collect();
            a.iter().zip(b).all(|(ga, gb)| mat_mul(f, &x, ga) == mat_mul(f, gb, &x))
        })
        .count()
}

/// Span of the `G`-orbit of `v`, in reduced echelon form.
fn spin(f: &Fq, gens: &[Mat], v: Vec<u32>) -> Mat {
    let mut basis: Mat = vec![v];
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let w: Vec<u32> = (0..g.len()).map(|r| (0..g.len()).fold(0, |s, c| f.add(s, f.mul(g[r][c], basis[i][c])))).collect();
            let mut test = basis.clone();
            test.push(w.clone());
            if rank(f, &test) > basis.len() {
                basis.push(w);
            }
        }
        i += 1;
    }
    rref(f, &mut basis);
    basis
}

/// Composition factor dimensions by repeatedly splitting off a cyclic
/// submodule of least dimension (which is irreducible).
fn composition_dims(f: &Fq, gens: &[Mat], d: usize) -> Vec<usize> {
    if d == 0 {
        return vec![];
    }
    let q = f.q as usize;
    let mut best: Option<Mat> = None;
    for idx in 1..q.pow(d as u32) {
        let v: Vec<u32> = (0..d).map(|i| (idx / q.pow(i as u32) % q) as u32).collect();
        let s = spin(f, gens, v);
        if best.as_ref().is_none_or(|b| s.len() < b.len()) {
            best = Some(s);
            if best.as_ref().unwrap().len() == 1 {
                break;
            }
        }
    }
    let w = best.unwrap();
    let pivots: Vec<usize> = w.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    let rest: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    // action on V/W in the basis of the non-pivot unit vectors
    let quotient: Vec<Mat> = gens
        .iter()
        .map(|g| {
            let mut cols: Mat = Vec::new();
            for &c in &rest {
                let mut y: Vec<u32> = (0..d).map(|r| g[r][c]).collect();
                for (row, &pc) in w.iter().zip(&pivots) {
                    let t = y[pc];
                    for k in 0..d {
                        y[k] = f.sub(y[k], f.mul(t, row[k]));
                    }
                }
                cols.push(rest.iter().map(|&r| y[r]).collect());
            }
            transpose(&cols)
        })
        .collect();
    let mut out = vec![w.len()];
    out.extend(composition_dims(f, &quotient, rest.len()));
    out.sort_unstable();
    out
}

fn perm_sign(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

fn family(field: &Field, q: u32, name: &str, gens: &[Perm]) -> Vec<Representation> {
    let k = gens.len();
    let one = |v: u32| Matrix::from_rows(field, &[vec![v]]);
    let trivial = Representation::new(field, 1, vec![one(1); k], "1").unwrap();
    let perm = permutation_module(field, gens, "P");
    let mut out = vec![trivial.clone(), perm.clone(), dual(&perm)];
    if q % 2 == 1 {
        let sign: Vec<Matrix> = gens.iter().map(|g| one(if perm_sign(g) { q - 1 } else { 1 })).collect();
        if sign.iter().any(|m| m.get(0, 0) != 1) {
            out.push(Representation::new(field, 1, sign, "sgn").unwrap());
        }
    }
    if q == 4 && (name == "C3" || name == "A4") {
        // a primitive cube root of unity on 3-cycles, 1 on double transpositions
        let omega: Vec<Matrix> = gens.iter().map(|g| one(if g.iter().enumerate().filter(|(i, &x)| *i != x).count() == 3 { 2 } else { 1 })).collect();
        let w = Representation::new(field, 1, omega, "w").unwrap();
        out.push(dual(&w));
        out.push(w);
    }
    // augmentation submodule, in the basis e_i - e_{n-1}
    let n = perm.dim();
    let f = Fq::new(q);
    let aug_gens: Vec<Matrix> = gens_of(&perm)
        .iter()
        .map(|g| {
            let mut m: Mat = vec![vec![0; n - 1]; n - 1];
            for c in 0..n - 1 {
                // g (e_c - e_{n-1}) = e_{g c} - e_{g (n-1)}
                let gc = (0..n).find(|&r| g[r][c] == 1).unwrap();
                let gl = (0..n).find(|&r| g[r][n - 1] == 1).unwrap();
                // e_x - e_y = b_x - b_y with b_{n-1} = 0
                for (idx, s) in [(gc, 1u32), (gl, f.neg(1))] {
                    if idx < n - 1 {
                        m[idx][c] = f.add(m[idx][c], s);
                    }
                }
            }
            Matrix::from_rows(field, &m)
        })
        .collect();
    if n > 1 {
        let aug = Representation::new(field, n - 1, aug_gens, "aug").unwrap();
        out.push(dual(&aug));
        out.push(aug);
    }
    let small: Vec<Representation> = out.iter().filter(|m| m.dim() <= 2).cloned().collect();
    for a in &small {
        for b in &small {
            if a.dim() + b.dim() <= 4 {
                out.push(a.direct_sum(b).unwrap());
            }
        }
    }
    // a random change of basis of the permutation module
    let mut rng = ChaCha8Rng::seed_from_u64(q as u64 * 31 + name.len() as u64);
    let (p, pinv) = loop {
        let p: Mat = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        if let Some(pi) = invert(&f, &p) {
            break (p, pi);
        }
    };
    let conj: Vec<Matrix> = gens_of(&perm)
        .iter()
        .map(|g| Matrix::from_rows(field, &mat_mul(&f, &mat_mul(&f, &p, g), &pinv)))
        .collect();
    out.push(Representation::new(field, n, conj, "P'").unwrap());
    out.retain(|m| m.dim() <= 4);
    out
}

fn ac6() -> (Status, String) {
    let groups: Vec<(&str, Vec<Perm>)> = vec![
        ("C2", cyclic_gens(2)),
        ("C3", cyclic_gens(3)),
        ("S3", symmetric_gens(3)),
        ("A4", alternating4_gens()),
    ];
    let mut failures = Vec::new();
    let (mut modules, mut pairs, mut enumerated, mut forms) = (0, 0, 0, 0);
    for q in [2u32, 3, 4, 5] {
        let field = if q == 4 { Field::new(2, 2).unwrap() } else { Field::prime(q).unwrap() };
        let f = Fq::new(q);
        for (name, gens) in &groups {
            let fam = family(&field, q, name, gens);
            modules += fam.len();
            for a in &fam {
                let ga = gens_of(a);
                for b in &fam {
                    pairs += 1;
                    let gb = gens_of(b);
                    let lib = match hom_space(a, b) {
                        Ok(h) => h,
                        Err(e) => {
                            failures.push(format!("{} GF({}) hom: {}", name, q, e));
                            continue;
                        }
                    };
                    let want = hom_oracle(&f, &ga, &gb, a.dim(), b.dim());
                    if lib.len() != want {
                        failures.push(format!("{} GF({}) Hom({},{}): {} vs {}", name, q, a.label(), b.label(), lib.len(), want));
                    }
                    for x in &lib {
                        let x = to_mat(x);
                        if ga.iter().zip(&gb).any(|(s, t)| mat_mul(&f, &x, s) != mat_mul(&f, t, &x)) {
                            failures.push(format!("{} GF({}): returned map is not an intertwiner", name, q));
                        }
                    }
                    if (q as usize).pow((a.dim() * b.dim()) as u32) <= 1 << 16 {
                        enumerated += 1;
                        let count = hom_enumerate(&f, &ga, &gb, a.dim(), b.dim());
                        if count != (q as usize).pow(want as u32) {
                            failures.push(format!("{} GF({}): enumeration found {} intertwiners", name, q, count));
                        }
                    }
                }
                let mut lib_dims = match chop(a) {
                    Ok(fs) => fs.iter().flat_map(|x| std::iter::repeat(x.module.dim()).take(x.multiplicity)).collect::<Vec<_>>(),
                    Err(e) => {
                        failures.push(format!("{} GF({}) chop: {}", name, q, e));
                        continue;
                    }
                };
                lib_dims.sort_unstable();
                let own = composition_dims(&f, &ga, a.dim());
                if lib_dims != own {
                    failures.push(format!("{} GF({}) chop({}): {:?} vs {:?}", name, q, a.label(), lib_dims, own));
                }
                let space = match invariant_forms(a, FormKind::All) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{} GF({}) forms: {}", name, q, e));
                        continue;
                    }
                };
                for b in &space.basis {
                    forms += 1;
                    let fm = to_mat(b);
                    if ga.iter().any(|g| mat_mul(&f, &mat_mul(&f, &transpose(g), &fm), g) != fm) {
                        failures.push(format!("{} GF({}): Gram matrix not invariant", name, q));
                    }
                }
                // forms are intertwiners M -> M*
                let dual_gens: Vec<Mat> = gens_of(&dual(a));
                let want = hom_oracle(&f, &ga, &dual_gens, a.dim(), a.dim());
                if space.basis.len() != want {
                    failures.push(format!("{} GF({}) forms({}): {} vs {}", name, q, a.label(), space.basis.len(), want));
                }
            }
        }
    }
    verdict(
        &failures,
        format!(
            "{} modules, {} Hom pairs ({} also by enumeration), chop and {} Gram matrices checked",
            modules, pairs, enumerated, forms
        ),
    )
}

// AC-7

fn ac7() -> (Status, String) {
    let needed = ["paper/2m12/56.rep", "paper/2m12/55c.rep", "paper/2m12/78.rep", "paper/2hs/133.rep"];
    let missing: Vec<&str> = needed.iter().copied().filter(|p| !fixture(p).exists()).collect();
    if !missing.is_empty() {
        return (
            Status::Skip,
            format!("paper-scale module files not shipped (missing {})", missing.join(", ")),
        );
    }
    let mut failures = Vec::new();
    for s in ["scenarios/paper/m12_window.toml", "scenarios/paper/hs_product_space.toml"] {
        let o = modlie(&["run", "--paper-scale", fixture(s).to_str().unwrap()]);
        if o.status.code() != Some(0) {
            failures.push(format!("{}: exit {:?} {}", s, o.status.code(), stderr(&o).trim()));
        }
    }
    verdict(&failures, "2.M12 window 4/2/376/1596 and 2.HS product space 1 reproduced".into())
}

// AC-8

fn ac8() -> (Status, String) {
    let dir = fixture("scenarios");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let mut failures = Vec::new();
    for path in &files {
        let p = path.to_str().unwrap();
        let runs: Vec<Vec<u8>> = ["1", "1", "4", "4"]
            .iter()
            .map(|t| modlie(&["--threads", t, "--json", "run", p]).stdout)
            .collect();
        if runs.iter().any(|r| r != &runs[0]) || runs[0].is_empty() {
            failures.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    verdict(
        &failures,
        format!("{} scenarios byte-identical over 2 runs at 1 and 4 threads", files.len()),
    )
}

#[test]
fn acceptance() {
    let lines = vec![
        criterion("AC-1", ac1),
        criterion("AC-2", ac2),
        criterion("AC-3", ac3),
        criterion("AC-4", ac4),
        criterion("AC-5", ac5),
        criterion("AC-6", ac6),
        criterion("AC-7", ac7),
        criterion("AC-8", ac8),
    ];
    let mut out = String::new();
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(out, "{} {} tol={} {:.1}s  {}", l.id, tag, TOLERANCE, l.seconds, l.detail);
    }
    println!("{}", out);
    let failed: Vec<&str> = lines.iter().filter(|l| l.status == Status::Fail).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed: {:?}", failed);
}
