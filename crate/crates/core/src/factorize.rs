//! Canonical decompositions: the perfect-core factorization, the p-core
//! towers, and the Sylow decomposition up to conjugation.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::classes::{member, Certificate, ClassId};
use crate::error::{Error, Result};
use crate::group::series::derived_series_of;
use crate::group::{
    arith, cores, normal_subgroups, quotient, subgroups, sylow, FiniteGroup, GroupRef, Subgroup,
};
use crate::hom::Homomorphism;
use crate::io::HomData;
use crate::lifting::{ConjugationMode, FailingSquare, Lifter, Morphism, MorphismPool, Side};

/// How far a stage label is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelStatus {
    /// Decided by a characterization in [`crate::classes`].
    Certified,
    /// The characterization rejects the stage.
    Rejected,
    /// No decidable characterization; only pool evidence is attached.
    Claimed,
}

/// Pool-relative lifting evidence for a claimed label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolEvidence {
    pub pool: String,
    /// `Left`: the stage must lift on the left of every member; `Right`:
    /// every member must lift on the left of the stage.
    pub side: Side,
    pub members_checked: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_member: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FailingSquare>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageLabel {
    pub label: String,
    pub status: LabelStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<PoolEvidence>,
}

/// A morphism written as a composite of stages.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub input: Homomorphism,
    pub stages: Vec<Homomorphism>,
    pub stage_labels: Vec<StageLabel>,
    /// `kernels[k]` is the kernel of `stages[k]`, in that stage's source.
    pub kernels: Vec<Subgroup>,
}

impl Factorization {
    /// The composite of all stages.
    pub fn recompose(&self) -> Result<Homomorphism> {
        let mut stages = self.stages.iter();
        let first = stages
            .next()
            .ok_or_else(|| Error::Unsupported("empty factorization".into()))?
            .clone();
        stages.try_fold(first, |acc, s| acc.then(s))
    }

    /// Whether the stages compose to the input and each kernel matches.
    pub fn verify(&self) -> bool {
        self.recompose().is_ok_and(|c| c == self.input)
            && self
                .stages
                .iter()
                .zip(&self.kernels)
                .all(|(s, k)| &s.kernel() == k)
    }

    pub fn kernel_orders(&self) -> Vec<usize> {
        self.kernels.iter().map(Subgroup::len).collect()
    }

    pub fn to_data(&self) -> FactorizationData {
        FactorizationData {
            input: (&self.input).into(),
            stages: self.stages.iter().map(HomData::from).collect(),
            stage_labels: self.stage_labels.clone(),
            kernels: self.kernels.clone(),
        }
    }
}

/// Serialized form of a [`Factorization`], stage tables inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationData {
    pub input: HomData,
    pub stages: Vec<HomData>,
    pub stage_labels: Vec<StageLabel>,
    pub kernels: Vec<Subgroup>,
}

fn certified(class: ClassId, h: &Homomorphism, budget: &Budget) -> Result<StageLabel> {
    let m = member(&class, h, budget)?;
    Ok(StageLabel {
        label: class.to_string(),
        status: if m.member {
            LabelStatus::Certified
        } else {
            LabelStatus::Rejected
        },
        certificate: Some(m.certificate),
        evidence: None,
    })
}

/// The map `G/N → H` induced by `h` when `N ≤ ker h`.
fn induced(h: &Homomorphism, proj: &Homomorphism) -> Homomorphism {
    let mut images = vec![0; proj.target().order()];
    for x in h.source().elements() {
        images[proj.apply(x)] = h.apply(x);
    }
    Homomorphism::new(proj.target().clone(), h.target().clone(), images).expect("kernel contains N")
}

/// `G → G/P → H` with `P` the perfect core of `ker h`.
pub fn perfect_core_factorization(h: &Homomorphism, budget: &Budget) -> Result<Factorization> {
    let g = h.source();
    let p = derived_series_of(g, &h.kernel()).pop().expect("nonempty");
    let (_, proj) = quotient(g, &p)?;
    let rest = induced(h, &proj);
    Ok(Factorization {
        input: h.clone(),
        stage_labels: vec![
            certified(ClassId::AbKerL, &proj, budget)?,
            certified(ClassId::AbKerLr, &rest, budget)?,
        ],
        kernels: vec![p, rest.kernel()],
        stages: vec![proj, rest],
    })
}

/// Normal subgroups `N` of `ker h` (normal in the kernel) that are perfect
/// with `ker h / N` soluble. The perfect core is the only one.
pub fn perfect_soluble_splittings(h: &Homomorphism) -> Vec<Subgroup> {
    let g = h.source();
    let (k, incl) = g.subgroup_as_group(&h.kernel(), "K");
    let k_series = crate::group::derived_series(&k);
    normal_subgroups(&k)
        .into_iter()
        .filter(|n| {
            let perfect = derived_series_of(&k, n).len() == 1;
            perfect && k_series.last().is_some_and(|bottom| bottom.is_subset_of(n))
        })
        .map(|n| incl.image_of(&n))
        .collect()
}

/// Runs the pool check for a claimed label.
fn pool_evidence(
    lifter: &Lifter,
    stage: &Homomorphism,
    side: Side,
    pool: &MorphismPool,
) -> Result<PoolEvidence> {
    let mut checked = 0;
    for m in pool.members() {
        checked += 1;
        let verdict = match side {
            Side::Left => match &m.morphism {
                Morphism::Finite(g) => lifter.check_lift(&Morphism::Finite(stage.clone()), g)?,
                Morphism::Presented(_) => return Err(Error::PresentedOnRight),
            },
            Side::Right => lifter.check_lift(&m.morphism, stage)?,
        };
        if !verdict.holds() {
            return Ok(PoolEvidence {
                pool: pool.name().to_string(),
                side,
                members_checked: checked,
                holds: false,
                failing_member: Some(m.label.clone()),
                witness: verdict.witness,
            });
        }
    }
    Ok(PoolEvidence {
        pool: pool.name().to_string(),
        side,
        members_checked: checked,
        holds: true,
        failing_member: None,
        witness: None,
    })
}

fn claimed(label: String, certificate: Option<Certificate>, evidence: PoolEvidence) -> StageLabel {
    StageLabel {
        label,
        status: LabelStatus::Claimed,
        certificate,
        evidence: Some(evidence),
    }
}

/// The members of `pool` lying in the right orthogonal of `C_p → 0`, i.e.
/// whose kernel has no element of order `p`.
pub fn p_torsion_free_members(
    pool: &MorphismPool,
    p: u64,
    budget: &Budget,
) -> Result<MorphismPool> {
    let class = ClassId::ZpZeroR(p);
    let mut keep = Vec::new();
    for m in pool.members() {
        if let Morphism::Finite(h) = &m.morphism {
            if member(&class, h, budget)?.member {
                keep.push(m.clone());
            }
        }
    }
    MorphismPool::new(format!("{} ∩ {class}", pool.name()), keep)
}

/// `G → G/O_{p'}(G) → G/O_{p,p'}(G) → 1`.
///
/// The first stage is certified in `ZP_ZERO_R(p)`. The second is labelled
/// with the claimed double right orthogonal of `C_p → 0`: certified by the
/// claimed criterion and checked on `evidence_pool` (every member that lies
/// in `ZP_ZERO_R(p)` must lift on its left). The last is labelled with the
/// left orthogonal of that class, checked on the same members.
pub fn p_core_tower(
    g: &GroupRef,
    p: u64,
    lifter: &Lifter,
    evidence_pool: &MorphismPool,
) -> Result<Factorization> {
    let budget = lifter.budget().clone();
    let c = cores(g, p)?;
    let stage1 = c.pprime_projection.clone();
    let stage2 = c.p_projection.clone();
    let stage3 = Homomorphism::to_trivial(stage2.target());
    let torsion_free = p_torsion_free_members(evidence_pool, p, &budget)?;
    let rr = member(&ClassId::ZpZeroRrClaimed(p), &stage2, &budget)?;
    let labels = vec![
        certified(ClassId::ZpZeroR(p), &stage1, &budget)?,
        claimed(
            ClassId::ZpZeroRrClaimed(p).to_string(),
            Some(rr.certificate),
            pool_evidence(lifter, &stage2, Side::Right, &torsion_free)?,
        ),
        claimed(
            format!("ZP_ZERO_RL({p})"),
            None,
            pool_evidence(lifter, &stage3, Side::Left, &torsion_free)?,
        ),
    ];
    Ok(Factorization {
        input: Homomorphism::to_trivial(g),
        kernels: vec![stage1.kernel(), stage2.kernel(), stage3.kernel()],
        stages: vec![stage1, stage2, stage3],
        stage_labels: labels,
    })
}

/// Verdict of lifting `1 → P` against `S_p ↪ G` up to conjugation for one
/// p-subgroup `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSubgroupCheck {
    pub subgroup: Subgroup,
    pub lifts_up_to_conjugation: bool,
    /// Direct check: some conjugate of the Sylow subgroup contains `P`.
    pub contained_in_conjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowReport {
    pub p: u64,
    pub sylow: Subgroup,
    /// Distinct conjugates of the Sylow subgroup, sorted.
    pub conjugates: Vec<Subgroup>,
    pub p_subgroups: Vec<PSubgroupCheck>,
    /// p-subgroups not properly contained in another p-subgroup.
    pub maximal_p_subgroups: Vec<Subgroup>,
    pub all_lift: bool,
    pub maximal_all_conjugate: bool,
}

fn conjugate_subgroup(g: &FiniteGroup, s: &Subgroup, x: usize) -> Subgroup {
    let elems: BTreeSet<usize> = s.elements().iter().map(|&y| g.conjugate(x, y)).collect();
    Subgroup::from_elements(g, elems).expect("conjugates of subgroups are subgroups")
}

/// Computes `S_p` and checks, for every p-subgroup `P`, that `1 → P` lifts
/// against `S_p ↪ G` up to conjugation; also checks that the maximal
/// p-subgroups are exactly the conjugates of `S_p`.
pub fn sylow_decomposition(g: &GroupRef, p: u64, lifter: &Lifter) -> Result<SylowReport> {
    let budget = lifter.budget();
    let s = sylow(g, p)?;
    let conjugates: Vec<Subgroup> = g
        .elements()
        .map(|x| conjugate_subgroup(g, &s, x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let s_incl = Homomorphism::inclusion(g, &s, format!("S{p}"));
    let p_subs: Vec<Subgroup> = subgroups(g, budget)?
        .into_iter()
        .filter(|h| arith::is_power_of(h.len() as u64, p))
        .collect();
    let mut checks = Vec::with_capacity(p_subs.len());
    for sub in &p_subs {
        let (pg, _) = g.subgroup_as_group(sub, "P");
        let left = Homomorphism::from_trivial(&pg);
        let verdict = lifter.check_lift_up_to_conj(&left, &s_incl, ConjugationMode::TwistBottom)?;
        checks.push(PSubgroupCheck {
            subgroup: sub.clone(),
            lifts_up_to_conjugation: verdict.holds(),
            contained_in_conjugate: conjugates.iter().any(|c| sub.is_subset_of(c)),
        });
    }
    let maximal: Vec<Subgroup> = p_subs
        .iter()
        .filter(|a| {
            !p_subs
                .iter()
                .any(|b| b.len() > a.len() && a.is_subset_of(b))
        })
        .cloned()
        .collect();
    Ok(SylowReport {
        p,
        all_lift: checks.iter().all(|c| c.lifts_up_to_conjugation),
        maximal_all_conjugate: maximal.iter().all(|m| conjugates.contains(m)),
        sylow: s,
        conjugates,
        p_subgroups: checks,
        maximal_p_subgroups: maximal,
    })
}

/// Whether `n` is the largest normal subgroup of `g` satisfying `kind`:
/// it satisfies it and contains every other normal subgroup that does.
pub fn is_largest_normal(g: &FiniteGroup, n: &Subgroup, kind: impl Fn(&Subgroup) -> bool) -> bool {
    n.is_normal_in(g)
        && kind(n)
        && normal_subgroups(g)
            .iter()
            .filter(|m| kind(m))
            .all(|m| m.is_subset_of(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cp_zero_pool, groups_up_to_order, hom_pool, lookup};

    fn group(name: &str) -> GroupRef {
        lookup(name).unwrap().group
    }

    #[test]
    fn perfect_core_examples() {
        let budget = Budget::default();
        let cases = [
            ("A5xC2", vec![60, 2]),
            ("S4", vec![1, 24]),
            ("A5", vec![60, 1]),
            ("C6", vec![1, 6]),
        ];
        for (name, kernels) in cases {
            let f = perfect_core_factorization(&Homomorphism::to_trivial(&group(name)), &budget)
                .unwrap();
            assert!(f.verify(), "{name}");
            assert_eq!(f.kernel_orders(), kernels, "{name}");
            assert!(
                f.stage_labels
                    .iter()
                    .all(|l| l.status == LabelStatus::Certified),
                "{name}"
            );
        }
    }

    #[test]
    fn perfect_core_is_the_unique_splitting() {
        let budget = Budget::default();
        for e in groups_up_to_order(24, &budget)
            .unwrap()
            .into_iter()
            .chain([lookup("A5").unwrap()])
        {
            let h = Homomorphism::to_trivial(&e.group);
            let f = perfect_core_factorization(&h, &budget).unwrap();
            assert_eq!(
                perfect_soluble_splittings(&h),
                vec![f.kernels[0].clone()],
                "{}",
                e.name()
            );
        }
    }

    fn small_evidence_pool() -> MorphismPool {
        let budget = Budget::default();
        let entries = groups_up_to_order(4, &budget).unwrap();
        let homs = hom_pool(&entries, 4, &budget).unwrap();
        MorphismPool::concat("evidence", &[&homs, &cp_zero_pool(&[2, 3]).unwrap()]).unwrap()
    }

    #[test]
    fn p_core_tower_examples() {
        let lifter = Lifter::new(Budget::default());
        let pool = small_evidence_pool();
        let t = p_core_tower(&group("S3"), 2, &lifter, &pool).unwrap();
        assert!(t.verify());
        assert_eq!(t.kernel_orders(), vec![3, 2, 1]);
        let t = p_core_tower(&group("S4"), 2, &lifter, &pool).unwrap();
        assert!(t.verify());
        assert_eq!(t.kernel_orders(), vec![1, 4, 6]);
        assert_eq!(t.stage_labels[0].status, LabelStatus::Certified);
        assert_eq!(t.stage_labels[1].status, LabelStatus::Claimed);
        let t = p_core_tower(&group("D4"), 2, &lifter, &pool).unwrap();
        assert_eq!(t.kernel_orders(), vec![1, 8, 1]);
    }

    #[test]
    fn sylow_examples() {
        let lifter = Lifter::new(Budget::default());
        let r = sylow_decomposition(&group("S3"), 2, &lifter).unwrap();
        assert_eq!((r.sylow.len(), r.conjugates.len()), (2, 3));
        assert!(r.all_lift && r.maximal_all_conjugate);
        let r = sylow_decomposition(&group("S4"), 2, &lifter).unwrap();
        assert_eq!((r.sylow.len(), r.conjugates.len()), (8, 3));
        assert!(r.all_lift && r.maximal_all_conjugate);
        let r = sylow_decomposition(&group("C5"), 5, &lifter).unwrap();
        assert_eq!(r.conjugates, vec![r.sylow.clone()]);
        assert!(r.sylow.is_whole());
    }

    #[test]
    fn lifting_route_matches_direct_containment() {
        let lifter = Lifter::new(Budget::default());
        for name in ["S3", "D4", "A4", "D6"] {
            let g = group(name);
            for p in arith::prime_divisors(g.order() as u64) {
                let r = sylow_decomposition(&g, p, &lifter).unwrap();
                for c in &r.p_subgroups {
                    assert_eq!(
                        c.lifts_up_to_conjugation, c.contained_in_conjugate,
                        "{name} p={p}"
                    );
                }
            }
        }
    }
}
