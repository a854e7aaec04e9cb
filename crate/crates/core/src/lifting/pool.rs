use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FailingSquare, LiftStatus, Lifter, Morphism};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// A labelled pool member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolMember {
    pub label: String,
    pub morphism: Morphism,
}

/// A finite, named, deduplicated stand-in for a class of morphisms.
#[derive(Clone, Debug)]
pub struct MorphismPool {
    name: String,
    members: Vec<PoolMember>,
}

fn identity_key(m: &Morphism) -> (Vec<u8>, Vec<usize>) {
    match m {
        Morphism::Finite(h) => {
            let mut key = h.source().fingerprint().to_vec();
            key.extend_from_slice(&h.target().fingerprint());
            (key, h.images().to_vec())
        }
        Morphism::Presented(p) => (p.to_string().into_bytes(), Vec::new()),
    }
}

impl MorphismPool {
    /// Builds a pool, keeping the first of any repeated morphisms. Two
    /// concrete morphisms are repeats when their source and target tables
    /// and image vectors agree.
    pub fn new(
        name: impl Into<String>,
        members: impl IntoIterator<Item = PoolMember>,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Parse("pool name must be nonempty".into()));
        }
        let mut seen = HashSet::new();
        let members = members
            .into_iter()
            .filter(|m| seen.insert(identity_key(&m.morphism)))
            .collect();
        Ok(MorphismPool { name, members })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &[PoolMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn concat(name: impl Into<String>, pools: &[&MorphismPool]) -> Result<Self> {
        Self::new(name, pools.iter().flat_map(|p| p.members.iter().cloned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `P^l`: candidates lifting on the left of every pool member.
    Left,
    /// `P^r`: candidates lifting on the right of every pool member.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub candidate: usize,
    pub member: usize,
    pub status: LiftStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FailingSquare>,
}

/// Pool-relative orthogonal with its per-pair evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub pool: String,
    pub candidates: String,
    pub side: Side,
    /// Pairs in (candidate, member) order.
    pub pairs: Vec<PairVerdict>,
    /// Indices of candidates orthogonal to every pool member.
    pub orthogonal: Vec<usize>,
    pub orthogonal_labels: Vec<String>,
}

fn right_map(m: &Morphism) -> Result<&Homomorphism> {
    m.as_finite().ok_or(Error::PresentedOnRight)
}

pub fn pool_orthogonal(
    lifter: &Lifter,
    pool: &MorphismPool,
    side: Side,
    candidates: &MorphismPool,
) -> Result<OrthogonalityReport> {
    let pairs: Vec<(usize, usize)> = (0..candidates.len())
        .flat_map(|c| (0..pool.len()).map(move |m| (c, m)))
        .collect();
    let verdicts: Vec<PairVerdict> = pairs
        .par_iter()
        .map(|&(c, m)| {
            let cand = &candidates.members[c].morphism;
            let member = &pool.members[m].morphism;
            let verdict = match side {
                Side::Left => lifter.check_lift(cand, right_map(member)?)?,
                Side::Right => lifter.check_lift(member, right_map(cand)?)?,
            };
            Ok(PairVerdict {
                candidate: c,
                member: m,
                status: verdict.status,
                witness: verdict.witness,
            })
        })
        .collect::<Result<_>>()?;
    let orthogonal: Vec<usize> = (0..candidates.len())
        .filter(|&c| {
            verdicts
                .iter()
                .filter(|v| v.candidate == c)
                .all(|v| v.status != LiftStatus::Fails)
        })
        .collect();
    let orthogonal_labels = orthogonal
        .iter()
        .map(|&c| candidates.members[c].label.clone())
        .collect();
    Ok(OrthogonalityReport {
        pool: pool.name.clone(),
        candidates: candidates.name.clone(),
        side,
        pairs: verdicts,
        orthogonal,
        orthogonal_labels,
    })
}

/// The full lifting relation on a finite universe of concrete morphisms:
/// `holds[a][b]` iff `a ⋌ b`. Pool-relative orthogonals computed from it
/// satisfy the Galois-connection identities exactly.
#[derive(Clone, Debug)]
pub struct OrthogonalityRelation {
    holds: Vec<Vec<bool>>,
}

impl OrthogonalityRelation {
    pub fn compute(lifter: &Lifter, universe: &[Homomorphism]) -> Result<Self> {
        let n = universe.len();
        let flat: Vec<bool> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (a, b) = (k / n, k % n);
                Ok(lifter
                    .check_lift(&Morphism::Finite(universe[a].clone()), &universe[b])?
                    .holds())
            })
            .collect::<Result<_>>()?;
        Ok(OrthogonalityRelation {
            holds: flat
                .chunks(n.max(1))
                .map(<[bool]>::to_vec)
                .take(n)
                .collect(),
        })
    }

    pub fn from_matrix(holds: Vec<Vec<bool>>) -> Self {
        OrthogonalityRelation { holds }
    }

    pub fn len(&self) -> usize {
        self.holds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.holds.is_empty()
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.holds[a][b]
    }

    /// `P^l` within the universe, as sorted indices.
    pub fn left(&self, p: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| p.iter().all(|&b| self.holds[a][b]))
            .collect()
    }

    /// `P^r` within the universe, as sorted indices.
    pub fn right(&self, p: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| p.iter().all(|&a| self.holds[a][b]))
            .collect()
    }
}
