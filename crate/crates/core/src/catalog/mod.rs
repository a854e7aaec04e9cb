//! The curated small-group catalog and the morphism pools built from it.
//!
//! Every isomorphism type of order at most 15 is represented exactly once,
//! together with a handful of larger groups up to order 24 and the perfect
//! witnesses `A5` and `A5×C2`.

mod descriptor;
mod pools;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::group::{arith, direct_product, FiniteGroup, GroupRef};

pub use descriptor::{Action, Descriptor};
pub(crate) use pools::overgroup_inclusion;
pub use pools::{
    cp_zero_pool, hom_pool, inclusion_pool, normal_closure_pool, perfect_to_zero_pool,
    surjection_pool,
};

/// One manifest line: a name, its constructor, and the classical flags the
/// realized group must exhibit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub descriptor: &'static str,
    pub order: usize,
    pub abelian: bool,
    pub nilpotent: bool,
    pub soluble: bool,
    pub perfect: bool,
}

const fn entry(
    name: &'static str,
    descriptor: &'static str,
    order: usize,
    flags: (bool, bool, bool, bool),
) -> ManifestEntry {
    ManifestEntry {
        name,
        descriptor,
        order,
        abelian: flags.0,
        nilpotent: flags.1,
        soluble: flags.2,
        perfect: flags.3,
    }
}

const ABELIAN: (bool, bool, bool, bool) = (true, true, true, false);
const NILPOTENT: (bool, bool, bool, bool) = (false, true, true, false);
const SOLUBLE: (bool, bool, bool, bool) = (false, false, true, false);

pub const MANIFEST: &[ManifestEntry] = &[
    entry("C1", "cyclic:1", 1, (true, true, true, true)),
    entry("C2", "cyclic:2", 2, ABELIAN),
    entry("C3", "cyclic:3", 3, ABELIAN),
    entry("C4", "cyclic:4", 4, ABELIAN),
    entry("C2xC2", "elementary_abelian:2:2", 4, ABELIAN),
    entry("C5", "cyclic:5", 5, ABELIAN),
    entry("C6", "cyclic:6", 6, ABELIAN),
    entry("S3", "symmetric:3", 6, SOLUBLE),
    entry("C7", "cyclic:7", 7, ABELIAN),
    entry("C8", "cyclic:8", 8, ABELIAN),
    entry("C4xC2", "product(cyclic:4,cyclic:2)", 8, ABELIAN),
    entry("C2^3", "elementary_abelian:2:3", 8, ABELIAN),
    entry("D4", "dihedral:4", 8, NILPOTENT),
    entry("Q8", "quaternion", 8, NILPOTENT),
    entry("C9", "cyclic:9", 9, ABELIAN),
    entry("C3xC3", "elementary_abelian:3:2", 9, ABELIAN),
    entry("C10", "cyclic:10", 10, ABELIAN),
    entry("D5", "dihedral:5", 10, SOLUBLE),
    entry("C11", "cyclic:11", 11, ABELIAN),
    entry("C12", "cyclic:12", 12, ABELIAN),
    entry("C2xC6", "product(cyclic:2,cyclic:6)", 12, ABELIAN),
    entry("A4", "alternating:4", 12, SOLUBLE),
    entry("D6", "dihedral:6", 12, SOLUBLE),
    entry("Dic3", "semidirect(cyclic:3,cyclic:4,mul:2)", 12, SOLUBLE),
    entry("C13", "cyclic:13", 13, ABELIAN),
    entry("C14", "cyclic:14", 14, ABELIAN),
    entry("D7", "dihedral:7", 14, SOLUBLE),
    entry("C15", "cyclic:15", 15, ABELIAN),
    entry("D8", "dihedral:8", 16, NILPOTENT),
    entry("C2xD4", "product(cyclic:2,dihedral:4)", 16, NILPOTENT),
    entry("D9", "dihedral:9", 18, SOLUBLE),
    entry("C3xS3", "product(cyclic:3,symmetric:3)", 18, SOLUBLE),
    entry("F20", "semidirect(cyclic:5,cyclic:4,mul:2)", 20, SOLUBLE),
    entry("C7:C3", "semidirect(cyclic:7,cyclic:3,mul:2)", 21, SOLUBLE),
    entry("S4", "symmetric:4", 24, SOLUBLE),
    entry(
        "SL(2,3)",
        "semidirect(quaternion,cyclic:3,q8rot)",
        24,
        SOLUBLE,
    ),
    entry("C2xA4", "product(cyclic:2,alternating:4)", 24, SOLUBLE),
    entry("D12", "dihedral:12", 24, SOLUBLE),
    entry("A5", "alternating:5", 60, (false, false, false, true)),
    entry(
        "A5xC2",
        "product(alternating:5,cyclic:2)",
        120,
        (false, false, false, false),
    ),
];

/// A realized manifest entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub manifest: ManifestEntry,
    pub group: GroupRef,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.manifest.name
    }
}

fn all_entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let budget = Budget {
            max_group_order: 4096,
            ..Budget::default()
        };
        MANIFEST
            .iter()
            .map(|m| {
                let desc = Descriptor::parse(m.descriptor).expect("manifest descriptors parse");
                let group = build(&desc, &budget)
                    .expect("manifest descriptors build")
                    .with_name(m.name);
                CatalogEntry {
                    manifest: *m,
                    group: Arc::new(group),
                }
            })
            .collect()
    })
}

/// Catalog entries of order at most `n`, in manifest order.
pub fn groups_up_to_order(n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    ensure_within("catalog order", n as u128, budget.max_catalog_order as u128)?;
    Ok(all_entries()
        .iter()
        .filter(|e| e.manifest.order <= n)
        .cloned()
        .collect())
}

/// Every catalog entry, including the designated large witnesses.
pub fn catalog() -> Vec<CatalogEntry> {
    all_entries().to_vec()
}

/// Looks up a catalog entry by its manifest name.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    all_entries()
        .iter()
        .find(|e| e.manifest.name == name)
        .cloned()
}

/// Resolves a manifest name (`S3`) or a `builtin:<descriptor>` reference.
pub fn resolve_group_name(name: &str) -> Result<GroupRef> {
    if let Some(desc) = name.strip_prefix("builtin:") {
        return Ok(Arc::new(builtin_group(desc)?.with_name(desc)));
    }
    lookup(name)
        .map(|e| e.group)
        .ok_or_else(|| Error::UnknownDescriptor(name.to_string()))
}

/// Realizes a descriptor string with default budgets.
pub fn builtin_group(descriptor: &str) -> Result<FiniteGroup> {
    build(&Descriptor::parse(descriptor)?, &Budget::default())
}

pub fn build(desc: &Descriptor, budget: &Budget) -> Result<FiniteGroup> {
    let group = match desc {
        Descriptor::Cyclic(n) => cyclic(*n, budget)?,
        Descriptor::Dihedral(n) => dihedral(*n, budget)?,
        Descriptor::Quaternion => quaternion(),
        Descriptor::Symmetric(n) => permutation_group(*n, false, budget, desc)?,
        Descriptor::Alternating(n) => permutation_group(*n, true, budget, desc)?,
        Descriptor::ElementaryAbelian(p, k) => elementary_abelian(*p, *k, budget)?,
        Descriptor::Product(a, b) => {
            direct_product(&build(a, budget)?, &build(b, budget)?, budget)?
        }
        Descriptor::Semidirect(n, h, action) => {
            let (ng, hg) = (build(n, budget)?, build(h, budget)?);
            let tables = action_tables(n, h, &ng, &hg, action)?;
            ensure_within(
                "group order",
                (ng.order() * hg.order()) as u128,
                budget.max_group_order as u128,
            )?;
            semidirect(&ng, &hg, &tables)?
        }
    };
    Ok(group)
}

fn cyclic(n: usize, budget: &Budget) -> Result<FiniteGroup> {
    ensure_within("group order", n as u128, budget.max_group_order as u128)?;
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    Ok(FiniteGroup::from_flat_unchecked(format!("C{n}"), n, table).with_element_names(names))
}

/// Element `r^k s^f` has index `f·n + k`.
fn dihedral(n: usize, budget: &Budget) -> Result<FiniteGroup> {
    let order = 2 * n;
    ensure_within("group order", order as u128, budget.max_group_order as u128)?;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (f, a) = (x / n, x % n);
        for y in 0..order {
            let (g, b) = (y / n, y % n);
            let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
            table.push(((f + g) % 2) * n + k);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (f, k) = (x / n, x % n);
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (f, r.is_empty()) {
                (0, true) => "e".to_string(),
                (0, false) => r,
                (_, _) => format!("{r}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_flat_unchecked(format!("D{n}"), order, table).with_element_names(names))
}

/// Index `2u + s` stands for `(-1)^s · unit[u]` with units `1, i, j, k`.
fn quaternion() -> FiniteGroup {
    // unit_mul[u][v] = (sign, unit) of unit[u]·unit[v].
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = UNIT_MUL[x / 2][y / 2];
            table.push(2 * u + (s + x % 2 + y % 2) % 2);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_flat_unchecked("Q8", 8, table).with_element_names(names)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                current.push(x);
                rec(n, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Cycle notation on points `1..n`, e.g. `(1 2 3)(4 5)`; the identity is `e`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Permutations in lexicographic order of their image tuples, composed as
/// functions: `(a·b)(x) = a(b(x))`.
fn permutation_group(
    n: usize,
    even_only: bool,
    budget: &Budget,
    desc: &Descriptor,
) -> Result<FiniteGroup> {
    if n > 5 {
        return Err(Error::UnknownDescriptor(format!(
            "{desc}: degree above 5 is not supported"
        )));
    }
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| !even_only || is_even(p))
        .collect();
    let order = perms.len();
    ensure_within("group order", order as u128, budget.max_group_order as u128)?;
    let index: std::collections::HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(k, p)| (p.as_slice(), k))
        .collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let c: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
            table.push(index[c.as_slice()]);
        }
    }
    let name = format!("{}{n}", if even_only { 'A' } else { 'S' });
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_flat_unchecked(name, order, table).with_element_names(names))
}

fn elementary_abelian(p: u64, k: u32, budget: &Budget) -> Result<FiniteGroup> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    ensure_within("group order", order, budget.max_group_order as u128)?;
    let (p, order) = (p as usize, order as usize);
    let digits = |mut x: usize| {
        let mut d = vec![0; k as usize];
        for slot in d.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let dx = digits(x);
        for y in 0..order {
            let dy = digits(y);
            table.push(
                dx.iter()
                    .zip(&dy)
                    .fold(0, |acc, (a, b)| acc * p + (a + b) % p),
            );
        }
    }
    let names = (0..order)
        .map(|x| {
            let parts: Vec<String> = digits(x).iter().map(usize::to_string).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name = if k == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{k}")
    };
    Ok(FiniteGroup::from_flat_unchecked(name, order, table).with_element_names(names))
}

fn action_tables(
    n_desc: &Descriptor,
    h_desc: &Descriptor,
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &Action,
) -> Result<Vec<Vec<usize>>> {
    match action {
        Action::Trivial => Ok(vec![n.elements().collect(); h.order()]),
        Action::Mul(k) => {
            let (Descriptor::Cyclic(nn), Descriptor::Cyclic(m)) = (n_desc, h_desc) else {
                return Err(Error::NotAnAction(
                    "mul:k needs cyclic:n acted on by cyclic:m".into(),
                ));
            };
            let (nn, m) = (*nn as u64, *m as u64);
            Ok((0..m)
                .map(|e| {
                    let factor = (0..e).fold(1u64, |acc, _| acc * k % nn);
                    (0..nn).map(|x| (x * factor % nn) as usize).collect()
                })
                .collect())
        }
        Action::Q8Rotation => {
            if *n_desc != Descriptor::Quaternion || *h_desc != Descriptor::Cyclic(3) {
                return Err(Error::NotAnAction(
                    "q8rot needs quaternion acted on by cyclic:3".into(),
                ));
            }
            let rotate = |x: usize| {
                let (u, s) = (x / 2, x % 2);
                if u == 0 {
                    x
                } else {
                    2 * (u % 3 + 1) + s
                }
            };
            Ok((0..3)
                .map(|e| {
                    (0..8)
                        .map(|x| (0..e).fold(x, |acc, _| rotate(acc)))
                        .collect()
                })
                .collect())
        }
    }
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` by which `h` acts.
/// The pair `(n, h)` has index `n·|H| + h` and
/// `(n₁, h₁)(n₂, h₂) = (n₁·action[h₁](n₂), h₁h₂)`.
pub fn semidirect(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    if action.len() != h.order() {
        return Err(Error::NotAnAction(format!(
            "expected {} automorphisms, found {}",
            h.order(),
            action.len()
        )));
    }
    for (e, phi) in action.iter().enumerate() {
        if phi.len() != n.order() || phi.iter().any(|&x| x >= n.order()) {
            return Err(Error::NotAnAction(format!(
                "map for element {e} is not a map on N"
            )));
        }
        let mut hit = vec![false; n.order()];
        for &x in phi {
            hit[x] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(Error::NotAnAction(format!(
                "map for element {e} is not bijective"
            )));
        }
        for a in n.elements() {
            for b in n.elements() {
                if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                    return Err(Error::NotAnAction(format!(
                        "map for element {e} breaks the product of {a} and {b}"
                    )));
                }
            }
        }
    }
    for a in h.elements() {
        for b in h.elements() {
            let ab = &action[h.mul(a, b)];
            if n.elements().any(|x| ab[x] != action[a][action[b][x]]) {
                return Err(Error::NotAnAction(format!(
                    "action of {a}·{b} is not the composite"
                )));
            }
        }
    }
    let m = h.order();
    let order = n.order() * m;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (n1, h1) = (x / m, x % m);
        for y in 0..order {
            let (n2, h2) = (y / m, y % m);
            table.push(n.mul(n1, action[h1][n2]) * m + h.mul(h1, h2));
        }
    }
    let names = (0..order)
        .map(|x| format!("({},{})", n.element_name(x / m), h.element_name(x % m)))
        .collect();
    Ok(
        FiniteGroup::from_flat_unchecked(format!("{}:{}", n.name(), h.name()), order, table)
            .with_element_names(names),
    )
}
