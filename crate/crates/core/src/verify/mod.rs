//! Adjudication of the lifting-property claims against finite pools.
//!
//! Each claim is checked in two directions wherever it characterizes an
//! orthogonal class: candidates the characterization accepts must lift
//! against every member of an opposing pool, and candidates it rejects must
//! fail against an explicitly constructed witness. Structural claims are
//! checked instance by instance. The first refutation stops a claim and is
//! recorded with a witness that can be re-checked on its own.

mod claims;
mod harness;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::io::{read_json, write_json, HomData, MorphismData};
use crate::lifting::{FailingSquare, Lifter, LiftingProblem};

pub use harness::{abelian_overgroup, s_overgroup, word_value_span};

/// Static description of a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    /// Short topic tag.
    pub locus: &'static str,
    /// The assertion in symbols.
    pub statement: &'static str,
    pub scope: Scope,
}

/// How a positive verdict should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every instance in range was decided exactly.
    Exact,
    /// Orthogonality was only checked against finite pools.
    PoolRelative,
    /// A list of designated instances was checked.
    Instances,
}

pub const CLAIMS: &[ClaimInfo] = &[
    claim("GAL", "orthogonals", "P^l = P^lrl and P^r = P^rlr; P ⊆ Q implies Q^l ⊆ P^l and Q^r ⊆ P^r", Scope::Exact),
    claim("T22-FG-1", "finite groups", "(AbKer)^lr = {g : ker g soluble}", Scope::PoolRelative),
    claim("T22-FG-2", "finite groups", "(0→*)^lr = {g injective : im g subnormal}", Scope::PoolRelative),
    claim("T22-FG-3", "finite groups", "(0→Ab)^lr = {g injective : im g = H0 ◁ … ◁ Hn = target, abelian steps}", Scope::PoolRelative),
    claim("T22-FG-4", "finite groups", "(0→S)^lr = {g injective : im g = H0 ◁ … ◁ Hn = target, steps embed in S}", Scope::PoolRelative),
    claim("T22-FG-5", "finite groups", "(C_p→0)^r = {g : ker g has no element of order p}", Scope::Exact),
    claim("T22-FG-6", "finite groups", "(C_p→0)^rr = {g surjective : ker g a p-group}", Scope::PoolRelative),
    claim("T22-G-AB", "groups", "(F2→F2/[a,b])^r ∩ {A→0} = {A→0 : A abelian}", Scope::Exact),
    claim("T22-G-COMMREL", "groups", "f: G→G/N lies in (F2→F2/[a,b])^rl iff N is normally generated by the commutators lying in N", Scope::PoolRelative),
    claim("T22-G-NORMSPAN", "groups", "f: G→G/N lies in (F_n→F_n/⟨W⟩)^rl iff N is normally generated by the W-values lying in N", Scope::PoolRelative),
    claim("T22-G-SPLIT", "groups", "(0→*)^r = split epimorphisms", Scope::PoolRelative),
    claim("T22-G-RETRACT", "groups", "(*→0)^l = split monomorphisms", Scope::PoolRelative),
    claim("T22-G-SURJ", "groups", "(0→Z)^r = surjections", Scope::Exact),
    claim("T22-G-INJ", "groups", "(Z→0)^r = injections", Scope::Exact),
    claim("C23-1", "finite groups", "G soluble iff G→0 ∈ (AbKer)^lr iff 1→G ∈ (0→Ab)^lr", Scope::PoolRelative),
    claim("C23-2", "finite groups", "G nilpotent iff the diagonal G→G×G lies in (0→*)^lr", Scope::Exact),
    claim("C23-3", "finite groups", "the largest H ≤ G with diagonal H→G×G in (0→*)^lr is the Fitting subgroup", Scope::Exact),
    claim("C23-4a", "finite groups", "H→0 ∈ (C_p→0)^rr iff H is a p-group", Scope::PoolRelative),
    claim("C23-4b", "finite groups", "1→H ∈ (0→C_p)^lr iff H is a p-group", Scope::PoolRelative),
    claim("C23-VERBAL", "groups", "G→G/V_W(G) factors G through the W-verbal quotient with G/V_W(G)→0 ∈ (F_n→F_n/⟨W⟩)^r", Scope::PoolRelative),
    claim("C24", "finite groups", "every group of odd order is soluble, i.e. in (C2→0)^l and (AbKer)^lr", Scope::Instances),
    claim("C25-PCORE", "finite groups", "G→G/O_p(G)→0 has stages in (C_p→0)^rr and (C_p→0)^rrl", Scope::PoolRelative),
    claim("C25-PPRIME", "finite groups", "G→G/O_p'(G)→0 has stages in (C_p→0)^r and (C_p→0)^rl", Scope::PoolRelative),
    claim("C25-PPPRIME", "finite groups", "G→G/O_p'→G/O_p,p'→0 has stages in (C_p→0)^r, (C_p→0)^rr, (C_p→0)^rl", Scope::PoolRelative),
    claim("S3-SYLOW", "finite groups", "1→P lifts against S_p↪G up to conjugation for every p-subgroup P; maximal p-subgroups are the Sylow conjugates", Scope::Exact),
    claim("FLOCAL", "localization", "A is (C2→0)-local, (1→C2)-local, abelianization-local or (C2↪C4)-local iff the matching direct criterion holds", Scope::Instances),
];

const fn claim(
    id: &'static str,
    locus: &'static str,
    statement: &'static str,
    scope: Scope,
) -> ClaimInfo {
    ClaimInfo {
        id,
        locus,
        statement,
        scope,
    }
}

pub fn claim_info(id: &str) -> Result<&'static ClaimInfo> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Tuning knobs for a single adjudication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest catalog order used to build pools; each claim caps it further.
    pub max_order: usize,
    /// Restrict prime-indexed claims to one prime.
    pub p: Option<u64>,
    /// Restrict `T22-FG-4` to one target group.
    pub s: Option<String>,
}

impl Options {
    pub fn new(max_order: usize) -> Self {
        Options {
            max_order,
            p: None,
            s: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolInfo {
    pub role: String,
    pub name: String,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimParams {
    pub max_order: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<String>,
    pub pools: Vec<PoolInfo>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub candidates: usize,
    pub pairs_checked: usize,
    pub instances_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    ConfirmedOnPool,
    Refuted,
    Skipped { reason: String },
}

/// Evidence attached to a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The claim requires `left ⋌ right`, but the square has no diagonal.
    MissingLift {
        left_label: String,
        left: MorphismData,
        right_label: String,
        right: HomData,
        failing: FailingSquare,
    },
    /// The claim requires `left ⋌ right` to fail, but every square lifts.
    UnexpectedLift {
        left_label: String,
        left: MorphismData,
        right_label: String,
        right: HomData,
    },
    /// A structural instance disagrees with the claim.
    Instance {
        subject: String,
        expected: String,
        found: String,
    },
}

impl Witness {
    /// Re-checks the witness from its serialized data alone. `None` for
    /// structural instances, which carry no lifting problem.
    pub fn reverify(&self, lifter: &Lifter) -> Result<Option<bool>> {
        match self {
            Witness::MissingLift {
                left,
                right,
                failing,
                ..
            } => {
                let problem = LiftingProblem {
                    f: left.to_morphism(lifter.budget())?,
                    g: right.to_hom()?,
                    square: failing.square.clone(),
                };
                Ok(Some(lifter.solve_square(&problem)?.is_empty()))
            }
            Witness::UnexpectedLift { left, right, .. } => {
                let verdict =
                    lifter.check_lift(&left.to_morphism(lifter.budget())?, &right.to_hom()?)?;
                Ok(Some(verdict.holds()))
            }
            Witness::Instance { .. } => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub locus: String,
    pub statement: String,
    pub scope: Scope,
    pub params: ClaimParams,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl ClaimRecord {
    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}

/// Adjudicates one claim with a fresh lifter.
pub fn adjudicate(claim: &str, max_order: usize, budget: &Budget) -> Result<ClaimRecord> {
    adjudicate_with(
        claim,
        &Options::new(max_order),
        &Lifter::new(budget.clone()),
    )
}

/// Adjudicates one claim, reusing the lifter's hom-set cache. Running out
/// of budget yields a `Skipped` record rather than an error.
pub fn adjudicate_with(claim: &str, options: &Options, lifter: &Lifter) -> Result<ClaimRecord> {
    let info = claim_info(claim)?;
    let mut tally = harness::Tally::default();
    let outcome = ensure_within(
        "catalog order",
        options.max_order as u128,
        lifter.budget().max_catalog_order as u128,
    )
    .and_then(|()| claims::run(info.id, &harness::Ctx::new(lifter, options), &mut tally));
    let verdict = match outcome {
        Ok(()) if tally.witness.is_some() => Verdict::Refuted,
        Ok(()) => Verdict::ConfirmedOnPool,
        Err(e @ Error::BudgetExceeded { .. }) => Verdict::Skipped {
            reason: e.to_string(),
        },
        Err(e) => return Err(e),
    };
    let witness = if verdict == Verdict::Refuted {
        tally.witness
    } else {
        None
    };
    Ok(ClaimRecord {
        claim: info.id.to_string(),
        locus: info.locus.to_string(),
        statement: info.statement.to_string(),
        scope: info.scope,
        params: ClaimParams {
            max_order: options.max_order,
            primes: tally.primes,
            targets: tally.targets,
            pools: tally.pools,
        },
        verdict,
        witness,
        stats: tally.stats,
    })
}

/// Every claim in table order, sharing one lifter.
pub fn run_suite(max_order: usize, budget: &Budget) -> Result<Vec<ClaimRecord>> {
    let lifter = Lifter::new(budget.clone());
    let options = Options::new(max_order);
    CLAIMS
        .iter()
        .map(|c| adjudicate_with(c.id, &options, &lifter))
        .collect()
}

pub fn write_report(path: impl AsRef<Path>, records: &[ClaimRecord]) -> Result<()> {
    write_json(path, &records)
}

pub fn read_report(path: impl AsRef<Path>) -> Result<Vec<ClaimRecord>> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::group::normal_subgroups;
    use crate::hom::Word;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn claim_table_is_complete_and_unique() {
        assert_eq!(CLAIMS.len(), 26);
        let ids: std::collections::BTreeSet<_> = CLAIMS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CLAIMS.len());
        assert!(matches!(
            adjudicate("NOPE", 4, &budget()),
            Err(Error::UnknownClaim(_))
        ));
    }

    #[test]
    fn galois_claim_is_confirmed() {
        assert_eq!(
            adjudicate("GAL", 6, &budget()).unwrap().verdict,
            Verdict::ConfirmedOnPool
        );
    }

    #[test]
    fn fg6_is_refuted_by_the_cyclic_instance() {
        let lifter = Lifter::new(budget());
        let options = Options {
            max_order: 8,
            p: Some(2),
            s: None,
        };
        let record = adjudicate_with("T22-FG-6", &options, &lifter).unwrap();
        assert_eq!(record.verdict, Verdict::Refuted);
        let Some(Witness::MissingLift {
            left_label, right, ..
        }) = &record.witness
        else {
            panic!("{record:?}")
        };
        assert_eq!(left_label, "unit:C2");
        assert_eq!((right.source.order, right.target.order), (4, 2));
        assert_eq!(
            record.witness.as_ref().unwrap().reverify(&lifter).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn refutation_witnesses_reverify() {
        let lifter = Lifter::new(budget());
        for record in run_suite(8, &budget()).unwrap() {
            assert!(
                !matches!(record.verdict, Verdict::Skipped { .. }),
                "{}",
                record.claim
            );
            if let Some(w) = &record.witness {
                assert_ne!(
                    w.reverify(&lifter).unwrap(),
                    Some(false),
                    "{}",
                    record.claim
                );
            }
        }
    }

    #[test]
    fn trivial_range_refutes_nothing() {
        for record in run_suite(1, &budget()).unwrap() {
            assert_eq!(record.verdict, Verdict::ConfirmedOnPool, "{}", record.claim);
        }
    }

    #[test]
    fn oversized_range_is_skipped() {
        let record = adjudicate("C24", 100, &budget()).unwrap();
        assert!(matches!(record.verdict, Verdict::Skipped { .. }));
    }

    #[test]
    fn reports_round_trip() {
        let records = vec![
            adjudicate("T22-FG-6", 4, &budget()).unwrap(),
            adjudicate("C24", 9, &budget()).unwrap(),
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        write_report(&path, &records).unwrap();
        assert_eq!(read_report(&path).unwrap(), records);
    }

    #[test]
    fn overgroup_iterations() {
        let a5 = lookup("A5").unwrap().group;
        assert!(abelian_overgroup(&a5, &a5.trivial_subgroup()).is_whole());
        let s3 = lookup("S3").unwrap().group;
        let c2 = lookup("C2").unwrap().group;
        assert_eq!(
            s_overgroup(&s3, &s3.trivial_subgroup(), &c2, &budget())
                .unwrap()
                .len(),
            3
        );
        let d4 = lookup("D4").unwrap().group;
        assert!(s_overgroup(&d4, &d4.trivial_subgroup(), &c2, &budget())
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn commutator_values_span_a3_in_s3() {
        let s3 = lookup("S3").unwrap().group;
        let a3 = normal_subgroups(&s3)
            .into_iter()
            .find(|n| n.len() == 3)
            .unwrap();
        let words = [Word::parse("[a,b]").unwrap()];
        assert_eq!(word_value_span(&s3, &a3, &words, &budget()).unwrap(), a3);
        assert!(
            word_value_span(&s3, &s3.trivial_subgroup(), &words, &budget())
                .unwrap()
                .is_trivial()
        );
    }
}
