//! Reference computations written against raw Cayley tables, sharing no code
//! with the library's search routines.

#![allow(dead_code)]

/// A Cayley table with identity 0.
#[derive(Clone, Debug)]
pub struct Table(pub Vec<Vec<usize>>);

impl Table {
    pub fn cyclic(n: usize) -> Table {
        Table(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0[a][b]
    }

    pub fn power_is_identity(&self, x: usize, m: usize) -> bool {
        (0..m).fold(0, |acc, _| self.mul(acc, x)) == 0
    }
}

/// Every map `a → b` preserving products, by scanning all functions.
pub fn all_homs(a: &Table, b: &Table) -> Vec<Vec<usize>> {
    let (n, m) = (a.order(), b.order());
    let total = (m as u128).pow(n as u32);
    assert!(
        total <= 5_000_000,
        "function space too large for brute force: {m}^{n}"
    );
    let mut found = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let hom = (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])));
        if hom {
            found.push(f.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return found;
            }
            f[k] += 1;
            if f[k] < m {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| second[x]).collect()
}

/// Outcome of the exhaustive oracle on one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftOracle {
    pub squares: usize,
    /// Number of diagonals for each square, in enumeration order.
    pub diagonals: Vec<usize>,
}

impl LiftOracle {
    pub fn holds(&self) -> bool {
        self.diagonals.iter().all(|&d| d > 0)
    }

    pub fn holds_uniquely(&self) -> bool {
        self.diagonals.iter().all(|&d| d == 1)
    }
}

/// Lifting of `f: A → B` against `g: X → Y`: every pair of homomorphisms
/// `i: A → X`, `j: B → Y` with `f;j = i;g` is tested for a diagonal
/// `d: B → X` with `f;d = i` and `d;g = j`.
pub fn lift_oracle(
    a: &Table,
    b: &Table,
    f: &[usize],
    x: &Table,
    y: &Table,
    g: &[usize],
) -> LiftOracle {
    let is = all_homs(a, x);
    let js = all_homs(b, y);
    let ds = all_homs(b, x);
    let mut diagonals = Vec::new();
    for i in &is {
        for j in &js {
            if compose(f, j) != compose(i, g) {
                continue;
            }
            diagonals.push(
                ds.iter()
                    .filter(|d| compose(f, d) == *i && compose(d, g) == *j)
                    .count(),
            );
        }
    }
    LiftOracle {
        squares: diagonals.len(),
        diagonals,
    }
}

/// Subgroup generated by `seeds`, as a sorted element list.
pub fn generated(t: &Table, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut inside = vec![false; t.order()];
    inside[0] = true;
    let mut frontier: Vec<usize> = vec![0];
    let gens: Vec<usize> = seeds.into_iter().collect();
    while let Some(x) = frontier.pop() {
        for &s in &gens {
            let y = t.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..t.order()).filter(|&x| inside[x]).collect()
}

fn inverse(t: &Table, x: usize) -> usize {
    (0..t.order())
        .find(|&y| t.mul(x, y) == 0)
        .expect("tables are groups")
}

/// `[A, B]` for element sets of `t`.
pub fn commutator_span(t: &Table, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut seeds = Vec::new();
    for &x in a {
        for &y in b {
            seeds.push(t.mul(t.mul(inverse(t, x), inverse(t, y)), t.mul(x, y)));
        }
    }
    generated(t, seeds)
}

/// Whether iterated derived subgroups reach the identity.
pub fn is_soluble(t: &Table) -> bool {
    let mut current: Vec<usize> = (0..t.order()).collect();
    loop {
        if current.len() == 1 {
            return true;
        }
        let next = commutator_span(t, &current, &current);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

/// Whether the lower central series reaches the identity.
pub fn is_nilpotent(t: &Table) -> bool {
    let whole: Vec<usize> = (0..t.order()).collect();
    let mut current = whole.clone();
    loop {
        if current.len() == 1 {
            return true;
        }
        let next = commutator_span(t, &whole, &current);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}
