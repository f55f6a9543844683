//! Todd–Coxeter coset enumeration (HLT strategy with coincidence processing).

use super::FinitePresentation;

struct Table {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
    overflow: bool,
}

fn col(letter: i32) -> usize {
    let i = letter.unsigned_abs() as usize - 1;
    2 * i + usize::from(letter < 0)
}

impl Table {
    fn new(gens: usize, limit: usize) -> Table {
        Table {
            cols: 2 * gens,
            rows: vec![vec![None; 2 * gens]],
            parent: vec![0],
            queue: Vec::new(),
            limit,
            overflow: false,
        }
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.rows.len() >= self.limit {
            self.overflow = true;
            return false;
        }
        let n = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(n);
        self.rows[c][x] = Some(n);
        self.rows[n][x ^ 1] = Some(c);
        true
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                if let Some(d) = self.rows[g][x] {
                    self.rows[d][x ^ 1] = None;
                    let mu = self.rep(g);
                    let nu = self.rep(d);
                    if let Some(t) = self.rows[mu][x] {
                        self.merge(nu, t);
                    } else if let Some(t) = self.rows[nu][x ^ 1] {
                        self.merge(mu, t);
                    } else {
                        self.rows[mu][x] = Some(nu);
                        self.rows[nu][x ^ 1] = Some(mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() - 1;
        loop {
            while i <= j {
                match self.rows[f][word[i]] {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                match self.rows[b][word[j] ^ 1] {
                    Some(t) => {
                        b = t;
                        if j == 0 {
                            // word fully scanned backwards
                            self.coincidence(f, b);
                            return;
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return;
            } else if i == j {
                self.rows[f][word[i]] = Some(b);
                self.rows[b][word[i] ^ 1] = Some(f);
                return;
            } else if !self.define(f, word[i]) {
                return;
            }
        }
    }
}

/// Index of the subgroup generated by `subgroup` words, or `None` when more
/// than `max_cosets` coset labels would be needed.
///
/// ```
/// use modlie::cohom::{coset_enumeration, FinitePresentation};
/// // S3 = <a, b | a^2, b^3, (ab)^2>
/// let p = FinitePresentation::new(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]).unwrap();
/// assert_eq!(coset_enumeration(&p, &[], 1000), Some(6));
/// assert_eq!(coset_enumeration(&p, &[vec![2]], 1000), Some(2));
/// ```
pub fn coset_enumeration(p: &FinitePresentation, subgroup: &[Vec<i32>], max_cosets: usize) -> Option<usize> {
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&x| col(x)).collect())
        .collect();
    let mut t = Table::new(p.generator_count, max_cosets.max(1));
    for w in subgroup {
        let w: Vec<usize> = super::free_reduce(w).iter().map(|&x| col(x)).collect();
        t.scan_and_fill(0, &w);
    }
    let mut c = 0;
    while c < t.rows.len() {
        for r in &rels {
            if !t.live(c) {
                break;
            }
            t.scan_and_fill(c, r);
            if t.overflow {
                return None;
            }
        }
        if t.live(c) {
            for x in 0..t.cols {
                if t.rows[c][x].is_none() && !t.define(c, x) {
                    return None;
                }
            }
        }
        c += 1;
    }
    Some((0..t.rows.len()).filter(|&c| t.live(c)).count())
}
