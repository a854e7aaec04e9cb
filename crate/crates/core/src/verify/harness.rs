use std::fmt::Display;
use std::sync::Arc;

use super::{Options, PoolInfo, Stats, Witness};
use crate::budget::Budget;
use crate::catalog::{groups_up_to_order, lookup, CatalogEntry};
use crate::error::Result;
use crate::group::series::derived_series_of;
use crate::group::{
    commutator, normal_closure, normal_closure_within, FiniteGroup, GroupRef, Subgroup,
};
use crate::hom::{evaluate_word, for_each_tuple, hom_images, Homomorphism, Word};
use crate::lifting::{Lifter, Morphism, MorphismPool, PoolMember};

pub(crate) struct Ctx<'a> {
    pub lifter: &'a Lifter,
    pub max_order: usize,
    pub p: Option<u64>,
    pub s: Option<String>,
}

impl<'a> Ctx<'a> {
    pub fn new(lifter: &'a Lifter, options: &Options) -> Self {
        Ctx {
            lifter,
            max_order: options.max_order,
            p: options.p,
            s: options.s.clone(),
        }
    }

    pub fn budget(&self) -> &Budget {
        self.lifter.budget()
    }

    /// The lifter's budget with room for the subgroup lattice of `A5`.
    pub fn wide(&self) -> Budget {
        self.budget().clone().with_subgroup_order(60)
    }

    pub fn cap(&self, n: usize) -> usize {
        self.max_order.min(n)
    }

    pub fn entries(&self, n: usize) -> Result<Vec<CatalogEntry>> {
        groups_up_to_order(self.cap(n), self.budget())
    }

    pub fn primes(&self, default: &[u64]) -> Vec<u64> {
        self.p.map_or_else(|| default.to_vec(), |p| vec![p])
    }
}

/// Running evidence for one claim.
#[derive(Default)]
pub(crate) struct Tally {
    pub stats: Stats,
    pub pools: Vec<PoolInfo>,
    pub primes: Vec<u64>,
    pub targets: Vec<String>,
    pub witness: Option<Witness>,
}

impl Tally {
    pub fn pool(&mut self, role: impl Into<String>, pool: &MorphismPool) {
        self.pools.push(PoolInfo {
            role: role.into(),
            name: pool.name().to_string(),
            size: pool.len(),
        });
    }

    /// Records `left ⋌ right`, or a refutation if some square fails.
    pub fn expect_lift(
        &mut self,
        lifter: &Lifter,
        left: &PoolMember,
        right: &PoolMember,
    ) -> Result<bool> {
        self.stats.pairs_checked += 1;
        let g = right_map(right);
        let verdict = lifter.check_lift(&left.morphism, g)?;
        if let (false, Some(failing)) = (verdict.holds(), verdict.witness) {
            self.witness = Some(Witness::MissingLift {
                left_label: left.label.clone(),
                left: (&left.morphism).into(),
                right_label: right.label.clone(),
                right: g.into(),
                failing,
            });
            return Ok(false);
        }
        Ok(true)
    }

    /// Records that `left ⋌ right` fails, or a refutation if it holds.
    pub fn expect_fail(
        &mut self,
        lifter: &Lifter,
        left: &PoolMember,
        right: &PoolMember,
    ) -> Result<bool> {
        self.stats.pairs_checked += 1;
        let g = right_map(right);
        if lifter.check_lift(&left.morphism, g)?.holds() {
            self.witness = Some(Witness::UnexpectedLift {
                left_label: left.label.clone(),
                left: (&left.morphism).into(),
                right_label: right.label.clone(),
                right: g.into(),
            });
            return Ok(false);
        }
        Ok(true)
    }

    /// Records a structural comparison.
    pub fn instance(
        &mut self,
        ok: bool,
        subject: impl Display,
        expected: impl Display,
        found: impl Display,
    ) -> bool {
        self.stats.instances_checked += 1;
        if !ok {
            self.witness = Some(Witness::Instance {
                subject: subject.to_string(),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
        ok
    }
}

fn right_map(m: &PoolMember) -> &Homomorphism {
    m.morphism
        .as_finite()
        .expect("right-hand pool members are concrete")
}

pub(crate) fn pm(label: impl Into<String>, m: impl Into<Morphism>) -> PoolMember {
    PoolMember {
        label: label.into(),
        morphism: m.into(),
    }
}

pub(crate) fn finite(m: &PoolMember) -> &Homomorphism {
    right_map(m)
}

pub(crate) fn catalog_group(name: &str) -> GroupRef {
    lookup(name)
        .expect("designated groups are in the manifest")
        .group
}

pub(crate) fn cyclic(n: usize) -> GroupRef {
    Arc::new(
        crate::catalog::builtin_group(&format!("cyclic:{n}"))
            .expect("cyclic groups build")
            .with_name(format!("C{n}")),
    )
}

/// `K → 1` for the kernel `K` of `h`.
pub(crate) fn kernel_to_trivial(h: &Homomorphism) -> PoolMember {
    let (k, _) = h.source().subgroup_as_group(&h.kernel(), "ker");
    pm("ker->0", Homomorphism::to_trivial(&k))
}

/// `P → 1` for the last term `P` of the derived series of `ker h`.
pub(crate) fn perfect_kernel_core(h: &Homomorphism) -> PoolMember {
    let series = derived_series_of(h.source(), &h.kernel());
    let core = series.last().expect("derived series is nonempty");
    let (p, _) = h.source().subgroup_as_group(core, "P");
    pm(
        format!("perfect-core(ker):{}->0", p.order()),
        Homomorphism::to_trivial(&p),
    )
}

/// Least `C ≥ D` reached from `G` by repeatedly passing to the smallest
/// normal subgroup containing `D` with abelian quotient. `D` has an
/// abelian-step chain up to `G` exactly when the result is `D`.
pub fn abelian_overgroup(g: &FiniteGroup, d: &Subgroup) -> Subgroup {
    let mut current = g.whole();
    loop {
        let closure = normal_closure_within(g, &current, d.elements().iter().copied());
        let next = closure.join(g, &commutator(g, &current, &current));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Least `C ≥ D` reached from `G` by repeatedly intersecting the kernels of
/// all homomorphisms to `S` that vanish on `D`.
pub fn s_overgroup(
    g: &GroupRef,
    d: &Subgroup,
    s: &FiniteGroup,
    budget: &Budget,
) -> Result<Subgroup> {
    let mut current = g.whole();
    loop {
        let (h, incl) = g.subgroup_as_group(&current, "H");
        let d_in_h = incl.preimage(d);
        let mut keep = vec![true; h.order()];
        for images in hom_images(&h, s, budget)? {
            if d_in_h.elements().iter().all(|&x| images[x] == 0) {
                for (x, k) in keep.iter_mut().enumerate() {
                    *k &= images[x] == 0;
                }
            }
        }
        let kernel = Subgroup::from_elements(&h, (0..h.order()).filter(|&x| keep[x]))?;
        let next = incl.image_of(&kernel);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Normal closure in `G` of the values `w(x)` with `w ∈ words` that lie in `n`.
pub fn word_value_span(
    g: &FiniteGroup,
    n: &Subgroup,
    words: &[Word],
    budget: &Budget,
) -> Result<Subgroup> {
    let mut values = vec![false; g.order()];
    for w in words {
        let rank = w.rank().max(1);
        crate::budget::ensure_within(
            "word tuples",
            (g.order() as u128).pow(rank as u32),
            budget.max_tuples as u128,
        )?;
        let mut failure = None;
        for_each_tuple(g.order(), rank, |t| match evaluate_word(w, g, t) {
            Ok(v) => values[v] |= n.contains(v),
            Err(e) => failure = Some(e),
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(normal_closure(g, (0..g.order()).filter(|&v| values[v])))
}
