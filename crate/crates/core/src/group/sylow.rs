use super::{
    arith, derived_series, normal_subgroups, quotient, subgroup_generated, FiniteGroup, GroupRef,
    Subgroup,
};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// A Sylow p-subgroup, grown greedily: starting from the trivial subgroup,
/// repeatedly adjoin the least element that keeps the subgroup a p-group.
/// A p-subgroup that admits no such extension is maximal, hence Sylow.
pub fn sylow(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = arith::p_part(g.order() as u64, p) as usize;
    let mut current = g.trivial_subgroup();
    while current.len() < target {
        let next = g
            .elements()
            .filter(|&x| !current.contains(x) && arith::is_power_of(g.element_order(x) as u64, p))
            .map(|x| current.join(g, &subgroup_generated(g, [x])))
            .find(|s| arith::is_power_of(s.len() as u64, p))
            .expect("a non-Sylow p-subgroup always extends");
        current = next;
    }
    Ok(current)
}

/// The p-core tower of a group.
#[derive(Clone, Debug)]
pub struct Cores {
    pub p: u64,
    /// `O_p(G)`: largest normal p-subgroup.
    pub o_p: Subgroup,
    /// `O_{p'}(G)`: largest normal subgroup of order prime to p.
    pub o_pprime: Subgroup,
    /// Preimage in `G` of `O_p(G/O_{p'}(G))`.
    pub o_p_pprime: Subgroup,
    /// `G → G/O_{p'}(G)`.
    pub pprime_projection: Homomorphism,
    /// `O_p(G/O_{p'}(G))` as a subgroup of the first quotient.
    pub o_p_of_quotient: Subgroup,
    /// `G/O_{p'}(G) → (G/O_{p'}(G))/O_p(G/O_{p'}(G))`.
    pub p_projection: Homomorphism,
}

fn largest_normal(g: &FiniteGroup, keep: impl Fn(u64) -> bool) -> Subgroup {
    // The join of two normal subgroups of the kind kept below is again of
    // that kind, so the largest one contains all others.
    normal_subgroups(g)
        .into_iter()
        .filter(|n| keep(n.len() as u64))
        .max_by_key(Subgroup::len)
        .expect("the trivial subgroup always qualifies")
}

pub(crate) fn p_core(g: &FiniteGroup, p: u64) -> Subgroup {
    largest_normal(g, |n| arith::is_power_of(n, p))
}

pub(crate) fn pprime_core(g: &FiniteGroup, p: u64) -> Subgroup {
    largest_normal(g, |n| n % p != 0)
}

pub fn cores(g: &GroupRef, p: u64) -> Result<Cores> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let o_p = p_core(g, p);
    let o_pprime = pprime_core(g, p);
    let (q, pprime_projection) = quotient(g, &o_pprime)?;
    let o_p_of_quotient = p_core(&q, p);
    let (_, p_projection) = quotient(&q, &o_p_of_quotient)?;
    let o_p_pprime = pprime_projection.preimage(&o_p_of_quotient);
    Ok(Cores {
        p,
        o_p,
        o_pprime,
        o_p_pprime,
        pprime_projection,
        o_p_of_quotient,
        p_projection,
    })
}

/// The Fitting subgroup: join of the p-cores over the primes dividing `|G|`.
pub fn fitting(g: &FiniteGroup) -> Subgroup {
    arith::prime_divisors(g.order() as u64)
        .into_iter()
        .fold(g.trivial_subgroup(), |acc, p| acc.join(g, &p_core(g, p)))
}

/// The last term of the derived series.
pub fn perfect_core(g: &FiniteGroup) -> Subgroup {
    derived_series(g).pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::builtin_group;
    use crate::group::{classify_group, commutator};

    fn group(d: &str) -> GroupRef {
        Arc::new(builtin_group(d).unwrap())
    }

    #[test]
    fn sylow_examples() {
        let s4 = group("symmetric:4");
        let p2 = sylow(&s4, 2).unwrap();
        assert_eq!(p2.len(), 8);
        assert!(!p2.is_abelian(&s4));
        assert_eq!(sylow(&group("symmetric:3"), 3).unwrap().len(), 3);
        assert!(sylow(&group("cyclic:5"), 2).unwrap().is_trivial());
        assert_eq!(sylow(&group("alternating:5"), 2).unwrap().len(), 4);
        assert!(matches!(sylow(&s4, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn core_examples() {
        let s4 = group("symmetric:4");
        let c = cores(&s4, 2).unwrap();
        assert_eq!(c.o_p.len(), 4);
        assert!(c.o_pprime.is_trivial());
        assert_eq!(c.o_p_pprime.len(), 4);
        assert_eq!(c.p_projection.target().order(), 6);

        let s3 = group("symmetric:3");
        let c = cores(&s3, 2).unwrap();
        assert!(c.o_p.is_trivial());
        assert_eq!(c.o_pprime.len(), 3);
        assert!(c.o_p_pprime.is_whole());
        assert_eq!(c.o_p_of_quotient.len(), 2);

        let d4 = group("dihedral:4");
        assert!(cores(&d4, 2).unwrap().o_p.is_whole());
    }

    #[test]
    fn fitting_and_perfect_core() {
        assert_eq!(fitting(&group("symmetric:4")).len(), 4);
        assert_eq!(fitting(&group("symmetric:3")).len(), 3);
        assert!(fitting(&group("quaternion")).is_whole());
        assert!(fitting(&group("alternating:5")).is_trivial());

        let a5c2 = group("product(alternating:5,cyclic:2)");
        let core = perfect_core(&a5c2);
        assert_eq!(core.len(), 60);
        assert_eq!(commutator(&a5c2, &core, &core), core);
        assert!(perfect_core(&group("symmetric:4")).is_trivial());
        assert!(classify_group(&group("alternating:5")).perfect);
    }
}
