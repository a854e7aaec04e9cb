//! JSON file formats and textual references for groups, morphisms and pools.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::catalog::{
    cp_zero_pool, groups_up_to_order, hom_pool, inclusion_pool, normal_closure_pool,
    perfect_to_zero_pool, resolve_group_name, surjection_pool,
};
use crate::error::{Error, Result};
use crate::group::{quotient, subgroup_labels, subgroups, FiniteGroup, GroupRef, Subgroup};
use crate::hom::{Homomorphism, PresentedMorphism};
use crate::lifting::{Morphism, MorphismPool, PoolMember};

/// A group as stored on disk: a Cayley table with the identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_names: Option<Vec<String>>,
}

impl From<&FiniteGroup> for GroupData {
    fn from(g: &FiniteGroup) -> Self {
        GroupData {
            name: g.name().to_string(),
            order: g.order(),
            table: g.table_rows(),
            element_names: g.element_names().map(<[String]>::to_vec),
        }
    }
}

impl GroupData {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        let g = FiniteGroup::from_table(self.name.clone(), self.order, &self.table)?;
        Ok(match &self.element_names {
            Some(names) if names.len() != self.order => {
                return Err(Error::Parse(format!(
                    "group '{}': {} element names for order {}",
                    self.name,
                    names.len(),
                    self.order
                )))
            }
            Some(names) => g.with_element_names(names.clone()),
            None => g,
        })
    }
}

/// A homomorphism with both groups inlined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomData {
    pub source: GroupData,
    pub target: GroupData,
    pub images: Vec<usize>,
}

impl From<&Homomorphism> for HomData {
    fn from(h: &Homomorphism) -> Self {
        HomData {
            source: h.source().as_ref().into(),
            target: h.target().as_ref().into(),
            images: h.images().to_vec(),
        }
    }
}

impl HomData {
    pub fn to_hom(&self) -> Result<Homomorphism> {
        Homomorphism::new(
            Arc::new(self.source.to_group()?),
            Arc::new(self.target.to_group()?),
            self.images.clone(),
        )
    }
}

/// A pool member on disk: a concrete map or a presented-morphism string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismData {
    Finite(HomData),
    Presented {
        text: String,
    },
    /// A textual reference, resolved with [`resolve_morphism`].
    Reference {
        reference: String,
    },
}

impl MorphismData {
    pub fn to_morphism(&self, budget: &Budget) -> Result<Morphism> {
        Ok(match self {
            MorphismData::Finite(h) => Morphism::Finite(h.to_hom()?),
            MorphismData::Presented { text } => {
                Morphism::Presented(PresentedMorphism::parse(text)?)
            }
            MorphismData::Reference { reference } => resolve_morphism(reference, budget)?,
        })
    }
}

impl From<&Morphism> for MorphismData {
    fn from(m: &Morphism) -> Self {
        match m {
            Morphism::Finite(h) => MorphismData::Finite(h.into()),
            Morphism::Presented(p) => MorphismData::Presented {
                text: p.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolMemberData {
    pub label: String,
    pub morphism: MorphismData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolData {
    pub name: String,
    pub members: Vec<PoolMemberData>,
}

impl From<&MorphismPool> for PoolData {
    fn from(pool: &MorphismPool) -> Self {
        let members = pool
            .members()
            .iter()
            .map(|m| PoolMemberData {
                label: m.label.clone(),
                morphism: (&m.morphism).into(),
            })
            .collect();
        PoolData {
            name: pool.name().to_string(),
            members,
        }
    }
}

impl PoolData {
    pub fn to_pool(&self, budget: &Budget) -> Result<MorphismPool> {
        let members = self
            .members
            .iter()
            .map(|m| {
                Ok(PoolMember {
                    label: m.label.clone(),
                    morphism: m.morphism.to_morphism(budget)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MorphismPool::new(self.name.clone(), members)
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Reads and deserializes a JSON file. Syntax errors carry line and column.
pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_error(path, e))
}

/// Writes pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json(value)).map_err(|e| io_error(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

pub fn read_group(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    read_json::<GroupData>(path)?.to_group()
}

pub fn read_hom(path: impl AsRef<Path>) -> Result<Homomorphism> {
    read_json::<HomData>(path)?.to_hom()
}

pub fn read_pool(path: impl AsRef<Path>, budget: &Budget) -> Result<MorphismPool> {
    read_json::<PoolData>(path)?.to_pool(budget)
}

/// A catalog name (`S3`), `builtin:<descriptor>`, or a path to a group file.
pub fn resolve_group(reference: &str) -> Result<GroupRef> {
    if reference.starts_with("builtin:") || !looks_like_path(reference) {
        return resolve_group_name(reference);
    }
    Ok(Arc::new(read_group(reference)?))
}

fn looks_like_path(reference: &str) -> bool {
    reference.ends_with(".json") || reference.contains('/') || Path::new(reference).is_file()
}

/// Looks up a subgroup of `g` by its lattice label (`C2a`, `H6`, ...).
pub fn subgroup_by_label(g: &FiniteGroup, label: &str, budget: &Budget) -> Result<Subgroup> {
    let subs = subgroups(g, budget)?;
    let labels = subgroup_labels(g, &subs);
    labels
        .iter()
        .position(|l| l == label)
        .map(|k| subs[k].clone())
        .ok_or_else(|| {
            Error::Parse(format!(
                "group {} has no subgroup labelled '{label}' (labels: {})",
                g.name(),
                labels.join(", ")
            ))
        })
}

/// Resolves a morphism reference:
///
/// - `incl:<sub>:<group>`: subgroup inclusion, `<sub>` a lattice label;
/// - `quot:<group>:<normal>`: projection onto the quotient;
/// - `diag:<group>`: the diagonal into `G × G`;
/// - `id:<group>`, `zero:<group>` (`G → 1`), `unit:<group>` (`1 → G`);
/// - `presented:<text>`, e.g. `presented:F2/[a,b]` or `presented:Z->0`;
/// - `hom:<path>` or a bare path to a homomorphism file.
pub fn resolve_morphism(reference: &str, budget: &Budget) -> Result<Morphism> {
    let (kind, rest) = reference.split_once(':').unwrap_or(("", reference));
    let finite = |h: Homomorphism| Ok(Morphism::Finite(h));
    match kind {
        "incl" => {
            let (label, group) = rest.split_once(':').ok_or_else(|| {
                Error::Parse(format!("'{reference}': expected incl:<sub>:<group>"))
            })?;
            let g = resolve_group(group)?;
            let sub = subgroup_by_label(&g, label, budget)?;
            finite(Homomorphism::inclusion(&g, &sub, label))
        }
        "quot" => {
            let (group, label) = rest.rsplit_once(':').ok_or_else(|| {
                Error::Parse(format!("'{reference}': expected quot:<group>:<normal>"))
            })?;
            let g = resolve_group(group)?;
            let n = subgroup_by_label(&g, label, budget)?;
            finite(quotient(&g, &n)?.1)
        }
        "diag" => finite(Homomorphism::diagonal(&resolve_group(rest)?, budget)?),
        "id" => finite(Homomorphism::identity(&resolve_group(rest)?)),
        "zero" => finite(Homomorphism::to_trivial(&resolve_group(rest)?)),
        "unit" => finite(Homomorphism::from_trivial(&resolve_group(rest)?)),
        "presented" => Ok(Morphism::Presented(PresentedMorphism::parse(rest)?)),
        "hom" => finite(read_hom(rest)?),
        _ if looks_like_path(reference) => finite(read_hom(reference)?),
        _ => Err(Error::Parse(format!(
            "unrecognized morphism reference '{reference}'"
        ))),
    }
}

/// Resolves a pool reference: `inclusions:<n>`, `surjections:<n>`,
/// `homs:<n>`, `normal-closures:<n>` (catalog groups of order at most `n`),
/// `cp-zero:<p,q,..>`, `perfect-zero`, or a path to a pool file.
pub fn resolve_pool(reference: &str, budget: &Budget) -> Result<MorphismPool> {
    let (kind, rest) = reference.split_once(':').unwrap_or((reference, ""));
    let order = || -> Result<usize> {
        rest.parse()
            .map_err(|_| Error::Parse(format!("'{reference}': expected {kind}:<max order>")))
    };
    let entries = |n: usize| groups_up_to_order(n, budget);
    match kind {
        "inclusions" => order().and_then(|n| inclusion_pool(&entries(n)?, n, budget)),
        "surjections" => order().and_then(|n| surjection_pool(&entries(n)?, n, budget)),
        "homs" => order().and_then(|n| hom_pool(&entries(n)?, n, budget)),
        "normal-closures" => order().and_then(|n| normal_closure_pool(&entries(n)?, n, budget)),
        "cp-zero" => {
            let primes = rest
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("'{reference}': bad prime '{p}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(&p) = primes.iter().find(|&&p| !crate::group::arith::is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
            cp_zero_pool(&primes)
        }
        "perfect-zero" => perfect_to_zero_pool(),
        _ if looks_like_path(reference) => read_pool(reference, budget),
        _ => Err(Error::Parse(format!(
            "unrecognized pool reference '{reference}'"
        ))),
    }
}
