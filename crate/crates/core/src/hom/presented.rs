use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{evaluate_unchecked, for_each_tuple, Word};
use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Which morphism a presentation `Q = F_n/⟨R⟩` stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentedKind {
    /// The quotient map `F_n → Q`.
    FreeToQuotient,
    /// `1 → Q`.
    TrivialToQuotient,
    /// `Q → 1`.
    QuotientToTrivial,
}

/// A left morphism with a possibly infinite domain, described by a finite
/// presentation. Homomorphisms out of `F_n` are rank-tuples; those out of
/// `Q` are the tuples on which every relator vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PresentedMorphism {
    pub rank: usize,
    pub relators: Vec<Word>,
    pub kind: PresentedKind,
}

impl PresentedMorphism {
    pub fn new(rank: usize, relators: Vec<Word>, kind: PresentedKind) -> Result<Self> {
        if let Some(w) = relators.iter().find(|w| w.rank() > rank) {
            return Err(Error::InvalidWord {
                word: w.to_string(),
                reason: format!("uses more than {rank} generators"),
            });
        }
        if let Some(w) = relators.iter().find(|w| w.is_empty()) {
            return Err(Error::InvalidWord {
                word: w.to_string(),
                reason: "empty relator".into(),
            });
        }
        Ok(PresentedMorphism {
            rank,
            relators,
            kind,
        })
    }

    /// `F_n → F_n/⟨R⟩`.
    pub fn quotient_map(rank: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new(rank, relators, PresentedKind::FreeToQuotient)
    }

    /// `F_2 → ℤ × ℤ`, i.e. `F_2 → F_2/⟨[a,b]⟩`.
    pub fn abelianize_f2() -> Self {
        let rel = Word::commutator(
            &Word::parse("a").expect("letter"),
            &Word::parse("b").expect("letter"),
        );
        Self::quotient_map(2, vec![rel]).expect("valid")
    }

    /// `1 → ℤ`.
    pub fn zero_to_z() -> Self {
        Self::new(1, vec![], PresentedKind::TrivialToQuotient).expect("valid")
    }

    /// `ℤ → 1`.
    pub fn z_to_zero() -> Self {
        Self::new(1, vec![], PresentedKind::QuotientToTrivial).expect("valid")
    }

    /// Parses `Fn/w1,w2,...`, `Fn`, `Z`, and the forms `0->X`, `X->0`
    /// where `X` is one of the former.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("0->") {
            let (rank, relators) = parse_object(rest)?;
            return Self::new(rank, relators, PresentedKind::TrivialToQuotient);
        }
        if let Some(rest) = text.strip_suffix("->0") {
            let (rank, relators) = parse_object(rest)?;
            return Self::new(rank, relators, PresentedKind::QuotientToTrivial);
        }
        let (rank, relators) = parse_object(text)?;
        Self::new(rank, relators, PresentedKind::FreeToQuotient)
    }

    /// Whether every relator vanishes at the tuple.
    pub fn satisfies(&self, g: &FiniteGroup, tuple: &[usize]) -> bool {
        self.relators
            .iter()
            .all(|w| evaluate_unchecked(w, g, tuple) == 0)
    }
}

fn parse_object(text: &str) -> Result<(usize, Vec<Word>)> {
    let bad = || {
        Error::Parse(format!(
            "presented group '{text}': expected Fn, Fn/relators or Z"
        ))
    };
    if text == "Z" {
        return Ok((1, vec![]));
    }
    let rest = text.strip_prefix('F').ok_or_else(bad)?;
    let (rank_text, rels_text) = match rest.split_once('/') {
        Some((r, rels)) => (r, Some(rels)),
        None => (rest, None),
    };
    let rank: usize = rank_text.parse().map_err(|_| bad())?;
    let mut relators = Vec::new();
    if let Some(rels) = rels_text {
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = rels.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'[' | b'(' => depth += 1,
                b']' | b')' => depth -= 1,
                b',' if depth == 0 => {
                    relators.push(Word::parse(&rels[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        relators.push(Word::parse(&rels[start..])?);
    }
    Ok((rank, relators))
}

fn object_label(rank: usize, relators: &[Word]) -> String {
    if relators.is_empty() {
        if rank == 1 {
            "Z".to_string()
        } else {
            format!("F{rank}")
        }
    } else {
        let rels: Vec<String> = relators.iter().map(Word::to_string).collect();
        format!("F{rank}/{}", rels.join(","))
    }
}

impl fmt::Display for PresentedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let object = object_label(self.rank, &self.relators);
        match self.kind {
            PresentedKind::FreeToQuotient => write!(f, "F{}->{object}", self.rank),
            PresentedKind::TrivialToQuotient => write!(f, "0->{object}"),
            PresentedKind::QuotientToTrivial => write!(f, "{object}->0"),
        }
    }
}

/// Homomorphisms out of `F_n` and out of the quotient, into a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHoms {
    /// `|H|^n`: every tuple defines a homomorphism from the free group.
    pub free_tuples: u64,
    /// Tuples on which all relators vanish, in lexicographic order.
    pub satisfying: Vec<Vec<usize>>,
}

pub fn enumerate_presented_homs(
    p: &PresentedMorphism,
    h: &FiniteGroup,
    budget: &Budget,
) -> Result<PresentedHoms> {
    let total = (h.order() as u128).pow(p.rank as u32);
    ensure_within("presented tuples", total, budget.max_tuples as u128)?;
    let mut satisfying = Vec::new();
    for_each_tuple(h.order(), p.rank, |t| {
        if p.satisfies(h, t) {
            satisfying.push(t.to_vec());
        }
    });
    Ok(PresentedHoms {
        free_tuples: total as u64,
        satisfying,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_group;

    #[test]
    fn parse_forms() {
        assert_eq!(
            PresentedMorphism::parse("F2/[a,b]").unwrap(),
            PresentedMorphism::abelianize_f2()
        );
        assert_eq!(
            PresentedMorphism::parse("0->Z").unwrap(),
            PresentedMorphism::zero_to_z()
        );
        assert_eq!(
            PresentedMorphism::parse("Z->0").unwrap(),
            PresentedMorphism::z_to_zero()
        );
        let two = PresentedMorphism::parse("F2/a^2,[a,b]").unwrap();
        assert_eq!(two.relators.len(), 2);
        assert_eq!(two.to_string(), "F2->F2/aa,ABab");
        assert!(PresentedMorphism::parse("F1/ab").is_err());
        assert!(PresentedMorphism::parse("G2").is_err());
    }

    #[test]
    fn presented_counts() {
        let budget = Budget::default();
        let s3 = builtin_group("symmetric:3").unwrap();
        let homs =
            enumerate_presented_homs(&PresentedMorphism::abelianize_f2(), &s3, &budget).unwrap();
        assert_eq!((homs.free_tuples, homs.satisfying.len()), (36, 18));

        let s4 = builtin_group("symmetric:4").unwrap();
        let cube = PresentedMorphism::parse("F1/a^3").unwrap();
        let homs = enumerate_presented_homs(&cube, &s4, &budget).unwrap();
        assert_eq!((homs.free_tuples, homs.satisfying.len()), (24, 9));

        let one = FiniteGroup::trivial();
        let homs =
            enumerate_presented_homs(&PresentedMorphism::abelianize_f2(), &one, &budget).unwrap();
        assert_eq!((homs.free_tuples, homs.satisfying.len()), (1, 1));
    }
}
