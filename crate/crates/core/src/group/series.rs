use serde::{Deserialize, Serialize};

use super::arith;
use super::{commutator, normal_closure_within, FiniteGroup, Subgroup};

/// `G ⊇ G′ ⊇ G″ ⊇ …`, listing each distinct term once; the last term is the
/// stable (perfect) one.
pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    derived_series_of(g, &g.whole())
}

pub(crate) fn derived_series_of(g: &FiniteGroup, start: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![start.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = commutator(g, last, last);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

/// `γ₁ = G, γₖ₊₁ = [G, γₖ]`, listing each distinct term once.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = commutator(g, &whole, last);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

/// Structural flags of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub order: usize,
    pub abelian: bool,
    pub perfect: bool,
    pub soluble: bool,
    pub nilpotent: bool,
    /// Primes dividing the order.
    pub primes: Vec<u64>,
    /// `Some(p)` when the order is a power of the prime `p`; `None` for the
    /// trivial group (a p-group for every p) and for non-prime-power orders.
    pub p_group_prime: Option<u64>,
}

impl PropertyRecord {
    pub fn is_p_group(&self, p: u64) -> bool {
        self.order == 1 || self.p_group_prime == Some(p)
    }
}

pub fn classify_group(g: &FiniteGroup) -> PropertyRecord {
    let derived = derived_series(g);
    let lower = lower_central_series(g);
    let order = g.order() as u64;
    let primes = arith::prime_divisors(order);
    let p_group_prime = if primes.len() == 1 {
        Some(primes[0])
    } else {
        None
    };
    PropertyRecord {
        order: g.order(),
        abelian: g.is_abelian(),
        perfect: derived.len() == 1,
        soluble: derived.last().is_some_and(Subgroup::is_trivial),
        nilpotent: lower.last().is_some_and(Subgroup::is_trivial),
        primes,
        p_group_prime,
    }
}

/// A chain `D = H₀ ◁ H₁ ◁ … ◁ Hₙ = G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubnormalChain {
    pub steps: Vec<Subgroup>,
}

impl SubnormalChain {
    /// Re-checks each consecutive normality.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        self.steps.last().is_some_and(Subgroup::is_whole)
            && self
                .steps
                .windows(2)
                .all(|w| w[0].is_normal_within(g, &w[1]))
    }
}

/// Outcome of [`subnormal_chain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subnormality {
    Subnormal(SubnormalChain),
    /// The descending closure iteration stabilized at `overgroup ⊋ D`, the
    /// least subnormal subgroup containing `D`.
    NotSubnormal {
        overgroup: Subgroup,
    },
}

impl Subnormality {
    pub fn is_subnormal(&self) -> bool {
        matches!(self, Subnormality::Subnormal(_))
    }
}

/// Decides subnormality of `d` by iterating `Hₖ₊₁ = ⟨D^{Hₖ}⟩` from `H₀ = G`.
pub fn subnormal_chain(g: &FiniteGroup, d: &Subgroup) -> Subnormality {
    let mut descending = vec![g.whole()];
    loop {
        let current = descending.last().expect("nonempty");
        if current == d {
            descending.reverse();
            return Subnormality::Subnormal(SubnormalChain { steps: descending });
        }
        let next = normal_closure_within(g, current, d.elements().iter().copied());
        if &next == current {
            return Subnormality::NotSubnormal { overgroup: next };
        }
        descending.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_group;
    use crate::group::subgroup_generated;

    fn sizes(series: &[Subgroup]) -> Vec<usize> {
        series.iter().map(Subgroup::len).collect()
    }

    #[test]
    fn derived_series_examples() {
        assert_eq!(
            sizes(&derived_series(&builtin_group("symmetric:4").unwrap())),
            vec![24, 12, 4, 1]
        );
        assert_eq!(
            sizes(&derived_series(&builtin_group("alternating:5").unwrap())),
            vec![60]
        );
        assert_eq!(
            sizes(&derived_series(&builtin_group("cyclic:6").unwrap())),
            vec![6, 1]
        );
    }

    #[test]
    fn lower_central_series_examples() {
        assert_eq!(
            sizes(&lower_central_series(
                &builtin_group("symmetric:3").unwrap()
            )),
            vec![6, 3]
        );
        assert_eq!(
            sizes(&lower_central_series(&builtin_group("dihedral:4").unwrap())),
            vec![8, 2, 1]
        );
        assert_eq!(
            sizes(&lower_central_series(&builtin_group("cyclic:2").unwrap())),
            vec![2, 1]
        );
    }

    #[test]
    fn classification_examples() {
        let s3 = classify_group(&builtin_group("symmetric:3").unwrap());
        assert!(s3.soluble && !s3.nilpotent && !s3.perfect && !s3.abelian);
        let a5 = classify_group(&builtin_group("alternating:5").unwrap());
        assert!(a5.perfect && !a5.soluble);
        let one = classify_group(&FiniteGroup::trivial());
        assert!(one.abelian && one.perfect && one.soluble && one.nilpotent);
        assert!([2, 3, 5, 7].iter().all(|&p| one.is_p_group(p)));
        let q8 = classify_group(&builtin_group("quaternion").unwrap());
        assert!(q8.nilpotent && q8.is_p_group(2) && !q8.is_p_group(3));
    }

    #[test]
    fn subnormal_chain_examples() {
        let s4 = builtin_group("symmetric:4").unwrap();
        let x = s4.element_by_name("(1 2)(3 4)").unwrap();
        let d = subgroup_generated(&s4, [x]);
        match subnormal_chain(&s4, &d) {
            Subnormality::Subnormal(chain) => {
                assert_eq!(sizes(&chain.steps), vec![2, 4, 24]);
                assert!(chain.verify(&s4));
            }
            other => panic!("{other:?}"),
        }

        let s3 = builtin_group("symmetric:3").unwrap();
        let a3 = subgroup_generated(&s3, [s3.element_by_name("(1 2 3)").unwrap()]);
        match subnormal_chain(&s3, &a3) {
            Subnormality::Subnormal(chain) => assert_eq!(sizes(&chain.steps), vec![3, 6]),
            other => panic!("{other:?}"),
        }

        let t = subgroup_generated(&s3, [s3.element_by_name("(1 2)").unwrap()]);
        match subnormal_chain(&s3, &t) {
            Subnormality::NotSubnormal { overgroup } => assert!(overgroup.is_whole()),
            other => panic!("{other:?}"),
        }
    }
}
