use std::collections::BTreeSet;

use super::{normal_closure, subgroup_generated, FiniteGroup, Subgroup};
use crate::budget::{ensure_within, Budget};
use crate::error::Result;

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let class: BTreeSet<usize> = g.elements().map(|h| g.conjugate(h, x)).collect();
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// All subgroups, sorted by `(size, elements)`.
///
/// Every subgroup is a join of cyclic subgroups, so closing the cyclic
/// subgroups under joins with cyclic subgroups reaches all of them.
pub fn subgroups(g: &FiniteGroup, budget: &Budget) -> Result<Vec<Subgroup>> {
    ensure_within(
        "subgroup enumeration order",
        g.order() as u128,
        budget.max_subgroup_order as u128,
    )?;
    let cyclic: BTreeSet<Subgroup> = g.elements().map(|x| subgroup_generated(g, [x])).collect();
    let mut all = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset_of(&s) {
                continue;
            }
            let joined = s.join(g, c);
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// All normal subgroups, sorted by `(size, elements)`: joins of normal
/// closures of conjugacy classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let minimal: BTreeSet<Subgroup> = conjugacy_classes(g)
        .iter()
        .map(|class| normal_closure(g, [class[0]]))
        .collect();
    let mut all = minimal.clone();
    let mut frontier: Vec<Subgroup> = minimal.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for m in &minimal {
            if m.is_subset_of(&s) {
                continue;
            }
            let joined = s.join(g, m);
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    all.into_iter().collect()
}

/// Short labels for a list of subgroups of one group, as used on the command
/// line: `C<n>` for cyclic subgroups and `H<n>` otherwise, with a letter
/// suffix (`C2a`, `C2b`, ...) whenever a label would repeat.
pub fn subgroup_labels(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<String> {
    let bases: Vec<String> = subs
        .iter()
        .map(|s| {
            let cyclic = s.elements().iter().any(|&x| g.element_order(x) == s.len());
            format!("{}{}", if cyclic { 'C' } else { 'H' }, s.len())
        })
        .collect();
    let mut labels = Vec::with_capacity(subs.len());
    for (i, base) in bases.iter().enumerate() {
        let total = bases.iter().filter(|b| *b == base).count();
        if total == 1 {
            labels.push(base.clone());
        } else {
            let rank = bases[..i].iter().filter(|b| *b == base).count();
            labels.push(format!("{base}{}", letter_suffix(rank)));
        }
    }
    labels
}

fn letter_suffix(mut rank: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (rank % 26) as u8);
        if rank < 26 {
            break;
        }
        rank = rank / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}
