//! Decidable membership predicates for the orthogonal classes, each
//! returning a certificate that can be re-checked independently.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::catalog::resolve_group_name;
use crate::error::{Error, Result};
use crate::group::series::derived_series_of;
use crate::group::{
    arith, commutator, normal_closure, quotient, subgroups, subnormal_chain, FiniteGroup, GroupRef,
    Subgroup, Subnormality,
};
use crate::hom::{hom_images, Homomorphism};

/// An orthogonal class with a decidable characterization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    /// Abelian kernel.
    AbKer,
    /// Left orthogonal of `AbKer`: surjective with perfect kernel.
    AbKerL,
    /// Soluble kernel.
    AbKerLr,
    /// Left orthogonal of `0 → *`: the image normally generates the target.
    ZeroStarL,
    /// Injective with subnormal image.
    ZeroStarLr,
    /// Injective, reaching the target through normal steps with abelian
    /// factors.
    ZeroAbLr,
    /// Injective, reaching the target through normal steps whose factors
    /// embed into the named group.
    ZeroSLr(String),
    /// Kernel without elements of order `p`.
    ZpZeroR(u64),
    /// Surjective with p-group kernel. A claimed characterization of the
    /// double right orthogonal of `C_p → 0`, kept under adjudication.
    ZpZeroRrClaimed(u64),
    /// Admits a retraction.
    Retract,
    /// Admits a section.
    Split,
    Surj,
    Inj,
}

impl ClassId {
    /// Every parameterless id plus representative parameters, in a fixed
    /// order.
    pub fn examples() -> Vec<ClassId> {
        vec![
            ClassId::AbKer,
            ClassId::AbKerL,
            ClassId::AbKerLr,
            ClassId::ZeroStarL,
            ClassId::ZeroStarLr,
            ClassId::ZeroAbLr,
            ClassId::ZeroSLr("C2".into()),
            ClassId::ZpZeroR(2),
            ClassId::ZpZeroRrClaimed(2),
            ClassId::Retract,
            ClassId::Split,
            ClassId::Surj,
            ClassId::Inj,
        ]
    }

    /// One-line statement of the characterization.
    pub fn description(&self) -> String {
        match self {
            ClassId::AbKer => "kernel is abelian".into(),
            ClassId::AbKerL => "surjective and kernel is perfect".into(),
            ClassId::AbKerLr => "kernel is soluble".into(),
            ClassId::ZeroStarL => "normal closure of the image is the whole target".into(),
            ClassId::ZeroStarLr => "injective with subnormal image".into(),
            ClassId::ZeroAbLr => {
                "injective; image reaches the target by normal steps with abelian factors".into()
            }
            ClassId::ZeroSLr(s) => format!(
                "injective; image reaches the target by normal steps with factors embedding in {s}"
            ),
            ClassId::ZpZeroR(p) => format!("kernel has no element of order {p}"),
            ClassId::ZpZeroRrClaimed(p) => {
                format!("surjective with {p}-group kernel (claimed, under adjudication)")
            }
            ClassId::Retract => "has a retraction".into(),
            ClassId::Split => "has a section".into(),
            ClassId::Surj => "surjective".into(),
            ClassId::Inj => "injective".into(),
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::AbKer => write!(f, "ABKER"),
            ClassId::AbKerL => write!(f, "ABKER_L"),
            ClassId::AbKerLr => write!(f, "ABKER_LR"),
            ClassId::ZeroStarL => write!(f, "ZERO_STAR_L"),
            ClassId::ZeroStarLr => write!(f, "ZERO_STAR_LR"),
            ClassId::ZeroAbLr => write!(f, "ZERO_AB_LR"),
            ClassId::ZeroSLr(s) => write!(f, "ZERO_S_LR({s})"),
            ClassId::ZpZeroR(p) => write!(f, "ZP_ZERO_R({p})"),
            ClassId::ZpZeroRrClaimed(p) => write!(f, "ZP_ZERO_RR_CLAIMED({p})"),
            ClassId::Retract => write!(f, "RETRACT"),
            ClassId::Split => write!(f, "SPLIT"),
            ClassId::Surj => write!(f, "SURJ"),
            ClassId::Inj => write!(f, "INJ"),
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;

    /// Parses `ABKER`, `ZP_ZERO_R(3)`, `ZERO_S_LR(S3)` and so on. Primes are
    /// checked; the group parameter must name a catalog group or a
    /// `builtin:` descriptor.
    fn from_str(text: &str) -> Result<Self> {
        let unknown = || Error::UnknownClass(text.to_string());
        let (head, arg) = match text.split_once('(') {
            Some((head, rest)) => (head, Some(rest.strip_suffix(')').ok_or_else(unknown)?)),
            None => (text, None),
        };
        let prime = |a: Option<&str>| -> Result<u64> {
            let p: u64 = a.and_then(|a| a.parse().ok()).ok_or_else(unknown)?;
            if arith::is_prime(p) {
                Ok(p)
            } else {
                Err(Error::NotPrime(p))
            }
        };
        let id = match (head, arg) {
            ("ABKER", None) => ClassId::AbKer,
            ("ABKER_L", None) => ClassId::AbKerL,
            ("ABKER_LR", None) => ClassId::AbKerLr,
            ("ZERO_STAR_L", None) => ClassId::ZeroStarL,
            ("ZERO_STAR_LR", None) => ClassId::ZeroStarLr,
            ("ZERO_AB_LR", None) => ClassId::ZeroAbLr,
            ("ZERO_S_LR", Some(s)) => {
                resolve_group_name(s)?;
                ClassId::ZeroSLr(s.to_string())
            }
            ("ZP_ZERO_R", a) => ClassId::ZpZeroR(prime(a)?),
            ("ZP_ZERO_RR_CLAIMED", a) => ClassId::ZpZeroRrClaimed(prime(a)?),
            ("RETRACT", None) => ClassId::Retract,
            ("SPLIT", None) => ClassId::Split,
            ("SURJ", None) => ClassId::Surj,
            ("INJ", None) => ClassId::Inj,
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Evidence for a membership verdict. Subgroups live in the source for
/// kernel-based certificates and in the target for image-based ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    AbelianKernel {
        kernel: Subgroup,
    },
    /// Two kernel elements that do not commute.
    NoncommutingKernelPair {
        a: usize,
        b: usize,
    },
    /// Distinct terms of the derived series of the kernel.
    KernelDerivedSeries {
        terms: Vec<Subgroup>,
    },
    /// An element of the target outside the image.
    NotSurjective {
        missing: usize,
    },
    /// A nonidentity element of the kernel.
    NotInjective {
        element: usize,
    },
    NormalClosure {
        closure: Subgroup,
    },
    Subnormality {
        result: Subnormality,
    },
    /// Chain from the image up to the target.
    StepChain {
        chain: Vec<Subgroup>,
    },
    NoStepChain {
        subgroups_searched: usize,
    },
    KernelElementOfOrder {
        element: usize,
        order: usize,
    },
    /// Sorted distinct element orders of the kernel.
    KernelOrders {
        orders: Vec<usize>,
    },
    Section {
        images: Vec<usize>,
    },
    NoSection {
        homs_scanned: usize,
    },
    Retraction {
        images: Vec<usize>,
    },
    NoRetraction {
        homs_scanned: usize,
    },
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub class: ClassId,
    pub member: bool,
    pub certificate: Certificate,
}

fn not_injective(h: &Homomorphism) -> Option<Certificate> {
    h.kernel()
        .elements()
        .get(1)
        .map(|&element| Certificate::NotInjective { element })
}

fn not_surjective(h: &Homomorphism) -> Option<Certificate> {
    let image = h.image();
    h.target()
        .elements()
        .find(|&y| !image.contains(y))
        .map(|missing| Certificate::NotSurjective { missing })
}

fn kernel_series(h: &Homomorphism) -> Vec<Subgroup> {
    derived_series_of(h.source(), &h.kernel())
}

/// Decides `h ∈ class`.
pub fn member(class: &ClassId, h: &Homomorphism, budget: &Budget) -> Result<Membership> {
    let (member, certificate) = decide(class, h, budget)?;
    Ok(Membership {
        class: class.clone(),
        member,
        certificate,
    })
}

fn decide(class: &ClassId, h: &Homomorphism, budget: &Budget) -> Result<(bool, Certificate)> {
    let g = h.source();
    Ok(match class {
        ClassId::AbKer => {
            let kernel = h.kernel();
            let k = kernel.elements();
            let pair = k
                .iter()
                .flat_map(|&a| k.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| g.mul(a, b) != g.mul(b, a));
            match pair {
                Some((a, b)) => (false, Certificate::NoncommutingKernelPair { a, b }),
                None => (true, Certificate::AbelianKernel { kernel }),
            }
        }
        ClassId::AbKerL => {
            if let Some(c) = not_surjective(h) {
                return Ok((false, c));
            }
            let terms = kernel_series(h);
            (terms.len() == 1, Certificate::KernelDerivedSeries { terms })
        }
        ClassId::AbKerLr => {
            let terms = kernel_series(h);
            (
                terms.last().is_some_and(Subgroup::is_trivial),
                Certificate::KernelDerivedSeries { terms },
            )
        }
        ClassId::ZeroStarL => {
            let closure = normal_closure(h.target(), h.image().elements().iter().copied());
            (closure.is_whole(), Certificate::NormalClosure { closure })
        }
        ClassId::ZeroStarLr => {
            if let Some(c) = not_injective(h) {
                return Ok((false, c));
            }
            let result = subnormal_chain(h.target(), &h.image());
            (result.is_subnormal(), Certificate::Subnormality { result })
        }
        ClassId::ZeroAbLr | ClassId::ZeroSLr(_) => {
            if let Some(c) = not_injective(h) {
                return Ok((false, c));
            }
            let search = match class {
                ClassId::ZeroSLr(s) => {
                    s_step_reachable(&h.image(), h.target(), &*resolve_group_name(s)?, budget)?
                }
                _ => abelian_step_reachable(&h.image(), h.target(), budget)?,
            };
            match search {
                ChainSearch::Found(chain) => (true, Certificate::StepChain { chain }),
                ChainSearch::Absent { subgroups_searched } => {
                    (false, Certificate::NoStepChain { subgroups_searched })
                }
            }
        }
        ClassId::ZpZeroR(p) => match p_torsion(h, *p) {
            Some(c) => (false, c),
            None => (true, kernel_orders(h)),
        },
        ClassId::ZpZeroRrClaimed(p) => {
            if let Some(c) = not_surjective(h) {
                return Ok((false, c));
            }
            let kernel = h.kernel();
            let orders = kernel.elements().iter().map(|&x| g.element_order(x));
            match orders
                .zip(kernel.elements())
                .find(|&(o, _)| !arith::is_power_of(o as u64, *p))
            {
                Some((order, &element)) => {
                    (false, Certificate::KernelElementOfOrder { element, order })
                }
                None => (true, kernel_orders(h)),
            }
        }
        ClassId::Split => {
            let homs = hom_images(h.target(), g, budget)?;
            match homs
                .iter()
                .find(|s| s.iter().enumerate().all(|(y, &x)| h.apply(x) == y))
            {
                Some(s) => (true, Certificate::Section { images: s.clone() }),
                None => (
                    false,
                    Certificate::NoSection {
                        homs_scanned: homs.len(),
                    },
                ),
            }
        }
        ClassId::Retract => {
            let homs = hom_images(h.target(), g, budget)?;
            match homs
                .iter()
                .find(|r| g.elements().all(|x| r[h.apply(x)] == x))
            {
                Some(r) => (true, Certificate::Retraction { images: r.clone() }),
                None => (
                    false,
                    Certificate::NoRetraction {
                        homs_scanned: homs.len(),
                    },
                ),
            }
        }
        ClassId::Surj => match not_surjective(h) {
            Some(c) => (false, c),
            None => (true, Certificate::Trivial),
        },
        ClassId::Inj => match not_injective(h) {
            Some(c) => (false, c),
            None => (true, Certificate::Trivial),
        },
    })
}

/// Least kernel element whose order is divisible by `p`, reported with the
/// element of order exactly `p` it powers to.
fn p_torsion(h: &Homomorphism, p: u64) -> Option<Certificate> {
    let g = h.source();
    h.kernel()
        .elements()
        .iter()
        .find(|&&x| (g.element_order(x) as u64).is_multiple_of(p))
        .map(|&x| {
            let element = g.pow(x, g.element_order(x) as u64 / p);
            Certificate::KernelElementOfOrder {
                element,
                order: p as usize,
            }
        })
}

fn kernel_orders(h: &Homomorphism) -> Certificate {
    let g = h.source();
    let mut orders: Vec<usize> = h
        .kernel()
        .elements()
        .iter()
        .map(|&x| g.element_order(x))
        .collect();
    orders.sort_unstable();
    orders.dedup();
    Certificate::KernelOrders { orders }
}

/// Outcome of an upward chain search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainSearch {
    /// `H = G₀ ◁ G₁ ◁ … ◁ Gₙ = G`, lexicographically least among all valid
    /// chains under the canonical subgroup order.
    Found(Vec<Subgroup>),
    Absent {
        subgroups_searched: usize,
    },
}

impl ChainSearch {
    pub fn chain(&self) -> Option<&[Subgroup]> {
        match self {
            ChainSearch::Found(c) => Some(c),
            ChainSearch::Absent { .. } => None,
        }
    }
}

/// Searches for `H = G₀ ◁ … ◁ Gₙ = G` where each step `M ◁ M'` passes
/// `step_ok(M, M')`. Memoized over the subgroups lying above `H`.
fn chain_search(
    g: &FiniteGroup,
    h: &Subgroup,
    budget: &Budget,
    mut step_ok: impl FnMut(&Subgroup, &Subgroup) -> Result<bool>,
) -> Result<ChainSearch> {
    let above: Vec<Subgroup> = subgroups(g, budget)?
        .into_iter()
        .filter(|s| h.is_subset_of(s))
        .collect();
    // Process larger subgroups first so every successor is already solved.
    let mut best: BTreeMap<usize, Option<Vec<Subgroup>>> = BTreeMap::new();
    let mut order: Vec<usize> = (0..above.len()).collect();
    order.sort_by(|&a, &b| {
        above[b]
            .len()
            .cmp(&above[a].len())
            .then(above[a].cmp(&above[b]))
    });
    for &m in &order {
        let sub = &above[m];
        if sub.is_whole() {
            best.insert(m, Some(vec![sub.clone()]));
            continue;
        }
        let mut found: Option<Vec<Subgroup>> = None;
        for (n, next) in above.iter().enumerate() {
            if next.len() <= sub.len() || !sub.is_subset_of(next) || !sub.is_normal_within(g, next)
            {
                continue;
            }
            let Some(Some(rest)) = best.get(&n) else {
                continue;
            };
            if !step_ok(sub, next)? {
                continue;
            }
            if found.as_ref().is_none_or(|f| rest.as_slice() < &f[1..]) {
                let mut chain = vec![sub.clone()];
                chain.extend(rest.iter().cloned());
                found = Some(chain);
            }
        }
        best.insert(m, found);
    }
    let start = above
        .iter()
        .position(|s| s == h)
        .expect("h lies above itself");
    Ok(match best.remove(&start).flatten() {
        Some(chain) => ChainSearch::Found(chain),
        None => ChainSearch::Absent {
            subgroups_searched: above.len(),
        },
    })
}

/// A chain from `h` to `g` with abelian successive quotients.
pub fn abelian_step_reachable(
    h: &Subgroup,
    g: &FiniteGroup,
    budget: &Budget,
) -> Result<ChainSearch> {
    chain_search(g, h, budget, |m, next| {
        Ok(commutator(g, next, next).is_subset_of(m))
    })
}

/// A chain from `h` to `g` whose successive quotients embed into `s`.
pub fn s_step_reachable(
    h: &Subgroup,
    g: &GroupRef,
    s: &FiniteGroup,
    budget: &Budget,
) -> Result<ChainSearch> {
    let mut embeds: BTreeMap<[u8; 16], bool> = BTreeMap::new();
    chain_search(g, h, budget, |m, next| {
        if !s.order().is_multiple_of(next.len() / m.len()) {
            return Ok(false);
        }
        let (big, incl) = g.subgroup_as_group(next, "step");
        let (q, _) = quotient(&big, &incl.preimage(m))?;
        let key = q.fingerprint();
        if let Some(&known) = embeds.get(&key) {
            return Ok(known);
        }
        let known = embeds_into(&q, s, budget)?;
        embeds.insert(key, known);
        Ok(known)
    })
}

/// Whether some injective homomorphism `q → s` exists.
pub fn embeds_into(q: &FiniteGroup, s: &FiniteGroup, budget: &Budget) -> Result<bool> {
    if !s.order().is_multiple_of(q.order()) {
        return Ok(false);
    }
    Ok(hom_images(q, s, budget)?
        .iter()
        .any(|images| images.iter().skip(1).all(|&y| y != 0)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::{builtin_group, groups_up_to_order, lookup};
    use crate::group::{classify_group, normal_subgroups, subgroup_generated};

    fn group(d: &str) -> GroupRef {
        Arc::new(builtin_group(d).unwrap())
    }

    fn check(class: &str, h: &Homomorphism) -> Membership {
        member(&class.parse().unwrap(), h, &Budget::default()).unwrap()
    }

    #[test]
    fn class_ids_round_trip() {
        for id in ClassId::examples() {
            assert_eq!(id.to_string().parse::<ClassId>().unwrap(), id);
        }
        assert_eq!(
            "ZERO_S_LR(S3)".parse::<ClassId>().unwrap(),
            ClassId::ZeroSLr("S3".into())
        );
        assert!(matches!(
            "ZP_ZERO_R(4)".parse::<ClassId>(),
            Err(Error::NotPrime(4))
        ));
        assert!("ZERO_S_LR(nope)".parse::<ClassId>().is_err());
        assert!(matches!(
            "ABKER_X".parse::<ClassId>(),
            Err(Error::UnknownClass(_))
        ));
        let json = serde_json::to_string(&ClassId::ZpZeroR(3)).unwrap();
        assert_eq!(json, "\"ZP_ZERO_R(3)\"");
        assert_eq!(
            serde_json::from_str::<ClassId>(&json).unwrap(),
            ClassId::ZpZeroR(3)
        );
    }

    #[test]
    fn membership_examples() {
        let s3 = group("symmetric:3");
        let m = check("ABKER_LR", &Homomorphism::to_trivial(&s3));
        assert!(m.member);
        let Certificate::KernelDerivedSeries { terms } = &m.certificate else {
            panic!()
        };
        assert_eq!(
            terms.iter().map(Subgroup::len).collect::<Vec<_>>(),
            vec![6, 3, 1]
        );

        let t = subgroup_generated(&s3, [s3.element_by_name("(1 2)").unwrap()]);
        let m = check("ZERO_STAR_LR", &Homomorphism::inclusion(&s3, &t, "T"));
        assert!(!m.member);
        assert_eq!(
            m.certificate,
            Certificate::Subnormality {
                result: Subnormality::NotSubnormal {
                    overgroup: s3.whole()
                }
            }
        );

        let a3 = normal_subgroups(&s3)
            .into_iter()
            .find(|n| n.len() == 3)
            .unwrap();
        let sign = quotient(&s3, &a3).unwrap().1;
        assert!(check("ZP_ZERO_R(2)", &sign).member);
        assert!(!check("ZP_ZERO_R(3)", &sign).member);

        let c4 = group("cyclic:4");
        let c2_sub = subgroup_generated(&c4, [2]);
        let proj = quotient(&c4, &c2_sub).unwrap().1;
        assert!(!check("SPLIT", &proj).member);
        assert!(check("ZP_ZERO_RR_CLAIMED(2)", &proj).member);

        for name in [
            "ABKER",
            "ABKER_L",
            "ABKER_LR",
            "ZERO_STAR_L",
            "ZERO_STAR_LR",
            "ZERO_AB_LR",
            "RETRACT",
            "SPLIT",
            "SURJ",
            "INJ",
        ] {
            assert!(check(name, &Homomorphism::identity(&s3)).member, "{name}");
        }
    }

    #[test]
    fn abker_l_needs_surjectivity() {
        let c2 = group("cyclic:2");
        let m = check("ABKER_L", &Homomorphism::from_trivial(&c2));
        assert_eq!(m.certificate, Certificate::NotSurjective { missing: 1 });
        assert!(
            check(
                "ABKER_L",
                &Homomorphism::to_trivial(&lookup("A5").unwrap().group)
            )
            .member
        );
        assert!(!check("ABKER_L", &Homomorphism::to_trivial(&s3())).member);
    }

    fn s3() -> GroupRef {
        group("symmetric:3")
    }

    #[test]
    fn split_and_retract_certificates_verify() {
        let budget = Budget::default();
        for e in groups_up_to_order(8, &budget).unwrap() {
            for images in hom_images(&e.group, &e.group, &budget).unwrap() {
                let h = Homomorphism::new(e.group.clone(), e.group.clone(), images).unwrap();
                if let Certificate::Section { images } = check("SPLIT", &h).certificate {
                    assert!(h.target().elements().all(|y| h.apply(images[y]) == y));
                }
                if let Certificate::Retraction { images } = check("RETRACT", &h).certificate {
                    assert!(h.source().elements().all(|x| images[h.apply(x)] == x));
                }
            }
        }
    }

    #[test]
    fn chain_search_examples() {
        let budget = Budget::default();
        let s3 = s3();
        let chain = abelian_step_reachable(&s3.trivial_subgroup(), &s3, &budget).unwrap();
        assert_eq!(
            chain
                .chain()
                .unwrap()
                .iter()
                .map(Subgroup::len)
                .collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
        assert_eq!(
            abelian_step_reachable(&s3.whole(), &s3, &budget).unwrap(),
            ChainSearch::Found(vec![s3.whole()])
        );
        let t = subgroup_generated(&s3, [s3.element_by_name("(1 2)").unwrap()]);
        assert!(abelian_step_reachable(&t, &s3, &budget)
            .unwrap()
            .chain()
            .is_none());

        let c2 = group("cyclic:2");
        let c4 = group("cyclic:4");
        let chain = s_step_reachable(&c4.trivial_subgroup(), &c4, &c2, &budget).unwrap();
        assert_eq!(
            chain
                .chain()
                .unwrap()
                .iter()
                .map(Subgroup::len)
                .collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        let c9 = group("cyclic:9");
        assert!(s_step_reachable(&c9.trivial_subgroup(), &c9, &c2, &budget)
            .unwrap()
            .chain()
            .is_none());
        assert!(s_step_reachable(&c9.whole(), &c9, &c2, &budget)
            .unwrap()
            .chain()
            .is_some());
    }

    #[test]
    fn chains_are_valid_and_least() {
        let budget = Budget::default();
        let s4 = lookup("S4").unwrap().group;
        let chain = abelian_step_reachable(&s4.trivial_subgroup(), &s4, &budget).unwrap();
        let steps = chain.chain().unwrap();
        assert_eq!(
            steps.iter().map(Subgroup::len).collect::<Vec<_>>(),
            vec![1, 2, 4, 12, 24]
        );
        for w in steps.windows(2) {
            assert!(w[0].is_normal_within(&s4, &w[1]));
            assert!(commutator(&s4, &w[1], &w[1]).is_subset_of(&w[0]));
        }
    }

    #[test]
    fn abelian_reachability_from_trivial_is_solubility() {
        let budget = Budget::default();
        for e in groups_up_to_order(24, &budget).unwrap() {
            let found = abelian_step_reachable(&e.group.trivial_subgroup(), &e.group, &budget)
                .unwrap()
                .chain()
                .is_some();
            assert_eq!(found, classify_group(&e.group).soluble, "{}", e.name());
        }
    }

    #[test]
    fn subnormal_class_agrees_with_chain() {
        let budget = Budget::default();
        for e in groups_up_to_order(16, &budget).unwrap() {
            for sub in subgroups(&e.group, &budget).unwrap() {
                let h = Homomorphism::inclusion(&e.group, &sub, "D");
                let m = member(&ClassId::ZeroStarLr, &h, &budget).unwrap();
                assert_eq!(m.member, subnormal_chain(&e.group, &sub).is_subnormal());
            }
        }
    }

    #[test]
    fn soluble_kernel_class_agrees_with_classification() {
        let budget = Budget::default();
        for e in groups_up_to_order(12, &budget).unwrap() {
            for n in normal_subgroups(&e.group) {
                let (_, proj) = quotient(&e.group, &n).unwrap();
                let (kg, _) = e.group.subgroup_as_group(&n, "K");
                assert_eq!(check("ABKER_LR", &proj).member, classify_group(&kg).soluble);
            }
        }
    }
}
