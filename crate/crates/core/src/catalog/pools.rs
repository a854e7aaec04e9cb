use std::sync::Arc;

use super::{lookup, CatalogEntry};
use crate::budget::Budget;
use crate::error::Result;
use crate::group::{
    normal_closure, normal_subgroups, quotient, subgroup_labels, subgroups, subnormal_chain,
    FiniteGroup, GroupRef, Subgroup, Subnormality,
};
use crate::hom::{hom_images, Homomorphism};
use crate::lifting::{MorphismPool, PoolMember};

fn member(label: String, h: Homomorphism) -> PoolMember {
    PoolMember {
        label,
        morphism: h.into(),
    }
}

fn within(entries: &[CatalogEntry], max_order: usize) -> impl Iterator<Item = &CatalogEntry> {
    entries.iter().filter(move |e| e.group.order() <= max_order)
}

/// Every subgroup inclusion `D ↪ G`, labelled `incl:<D>:<G>`.
pub fn inclusion_pool(
    entries: &[CatalogEntry],
    max_order: usize,
    budget: &Budget,
) -> Result<MorphismPool> {
    let mut members = Vec::new();
    for e in within(entries, max_order) {
        let subs = subgroups(&e.group, budget)?;
        for (sub, label) in subs.iter().zip(subgroup_labels(&e.group, &subs)) {
            let h = Homomorphism::inclusion(&e.group, sub, label.clone());
            members.push(member(format!("incl:{label}:{}", e.name()), h));
        }
    }
    MorphismPool::new(format!("inclusions<={max_order}"), members)
}

/// Every projection `G → G/N`, labelled `quot:<G>:<N>`.
pub fn surjection_pool(
    entries: &[CatalogEntry],
    max_order: usize,
    budget: &Budget,
) -> Result<MorphismPool> {
    let mut members = Vec::new();
    for e in within(entries, max_order) {
        let subs = subgroups(&e.group, budget)?;
        let labels = subgroup_labels(&e.group, &subs);
        for n in normal_subgroups(&e.group) {
            let label = &labels[subs
                .iter()
                .position(|s| *s == n)
                .expect("normal subgroups are subgroups")];
            let (_, proj) = quotient(&e.group, &n)?;
            members.push(member(format!("quot:{}:{label}", e.name()), proj));
        }
    }
    MorphismPool::new(format!("surjections<={max_order}"), members)
}

/// Every homomorphism between two entries, labelled `hom:<G>-><H>#<k>`.
pub fn hom_pool(
    entries: &[CatalogEntry],
    max_order: usize,
    budget: &Budget,
) -> Result<MorphismPool> {
    let mut members = Vec::new();
    for a in within(entries, max_order) {
        for b in within(entries, max_order) {
            for (k, images) in hom_images(&a.group, &b.group, budget)?
                .into_iter()
                .enumerate()
            {
                let h =
                    Homomorphism::from_images_unchecked(a.group.clone(), b.group.clone(), images);
                members.push(member(format!("hom:{}->{}#{k}", a.name(), b.name()), h));
            }
        }
    }
    MorphismPool::new(format!("homs<={max_order}"), members)
}

/// Inclusions whose image has normal closure equal to the whole target:
/// every `D ↪ G` with `⟨D^G⟩ = G` (labelled `ncl:<D>:<G>`), and for every
/// non-subnormal `D ≤ G` the inclusion of `D` into the least subnormal
/// subgroup containing it (labelled `ovr:<D>:<G>`).
pub fn normal_closure_pool(
    entries: &[CatalogEntry],
    max_order: usize,
    budget: &Budget,
) -> Result<MorphismPool> {
    let mut members = Vec::new();
    for e in within(entries, max_order) {
        let subs = subgroups(&e.group, budget)?;
        let labels = subgroup_labels(&e.group, &subs);
        for (sub, label) in subs.iter().zip(&labels) {
            if normal_closure(&e.group, sub.elements().iter().copied()).is_whole() {
                let h = Homomorphism::inclusion(&e.group, sub, label.clone());
                members.push(member(format!("ncl:{label}:{}", e.name()), h));
            }
        }
        for (sub, label) in subs.iter().zip(&labels) {
            if let Subnormality::NotSubnormal { overgroup } = subnormal_chain(&e.group, sub) {
                members.push(member(
                    format!("ovr:{label}:{}", e.name()),
                    overgroup_inclusion(&e.group, sub, &overgroup, label),
                ));
            }
        }
    }
    MorphismPool::new(format!("normal-closures<={max_order}"), members)
}

/// `D ↪ C` for subgroups `D ≤ C ≤ G`, with `C` realized as a group.
pub(crate) fn overgroup_inclusion(
    g: &GroupRef,
    d: &Subgroup,
    c: &Subgroup,
    label: &str,
) -> Homomorphism {
    let (c_group, c_incl) = g.subgroup_as_group(c, format!("{label}^"));
    let d_in_c = c_incl.preimage(d);
    Homomorphism::inclusion(&c_group, &d_in_c, label.to_string())
}

/// `C_p → 1` for each listed prime.
pub fn cp_zero_pool(primes: &[u64]) -> Result<MorphismPool> {
    let members = primes.iter().map(|&p| {
        let c =
            Arc::new(super::builtin_group(&format!("cyclic:{p}")).expect("cyclic groups build"));
        member(format!("C{p}->0"), Homomorphism::to_trivial(&c))
    });
    let names: Vec<String> = primes.iter().map(u64::to_string).collect();
    MorphismPool::new(format!("Cp->0 p={}", names.join(",")), members)
}

/// The perfect witness `A5 → 1`, plus `1 → 1`.
pub fn perfect_to_zero_pool() -> Result<MorphismPool> {
    let a5 = lookup("A5").expect("A5 is in the manifest").group;
    let one = Arc::new(FiniteGroup::trivial());
    MorphismPool::new(
        "perfect->0",
        [
            member("C1->0".into(), Homomorphism::identity(&one)),
            member("A5->0".into(), Homomorphism::to_trivial(&a5)),
        ],
    )
}
