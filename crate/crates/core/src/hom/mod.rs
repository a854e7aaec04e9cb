//! Homomorphisms between finite groups, hom-set enumeration, and finitely
//! presented left morphisms.

mod enumerate;
mod presented;
mod word;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, GroupRef, Subgroup};
use crate::Budget;

pub use enumerate::{
    count_homs, enumerate_homs, hom_images, inner_automorphism_images, inner_automorphisms,
};
pub use presented::{enumerate_presented_homs, PresentedHoms, PresentedKind, PresentedMorphism};
pub(crate) use word::for_each_tuple;
pub use word::{evaluate_word, verbal_subgroup, Word};

/// A map of element indices satisfying `images[a·b] = images[a]·images[b]`.
#[derive(Clone)]
pub struct Homomorphism {
    source: GroupRef,
    target: GroupRef,
    images: Vec<usize>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.source == other.source && self.target == other.target
    }
}

impl Eq for Homomorphism {}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} {:?}",
            self.source.name(),
            self.target.name(),
            self.images
        )
    }
}

impl Homomorphism {
    /// Validates the homomorphism law, reporting the first offending pair.
    pub fn new(source: GroupRef, target: GroupRef, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::ImageLength {
                expected: source.order(),
                found: images.len(),
            });
        }
        if let Some((element, &value)) = images
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= target.order())
        {
            return Err(Error::ImageOutOfRange { element, value });
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    pub(crate) fn from_images_unchecked(
        source: GroupRef,
        target: GroupRef,
        images: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(images.len(), source.order());
        Homomorphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(g: &GroupRef) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            images: g.elements().collect(),
        }
    }

    /// The map sending everything to the identity.
    pub fn trivial(source: &GroupRef, target: &GroupRef) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![0; source.order()],
        }
    }

    /// `G → 1`.
    pub fn to_trivial(g: &GroupRef) -> Self {
        Self::trivial(g, &Arc::new(FiniteGroup::trivial()))
    }

    /// `1 → G`.
    pub fn from_trivial(g: &GroupRef) -> Self {
        Self::trivial(&Arc::new(FiniteGroup::trivial()), g)
    }

    /// The inclusion of a subgroup, realized as a group of its own.
    pub fn inclusion(g: &GroupRef, sub: &Subgroup, name: impl Into<String>) -> Self {
        g.subgroup_as_group(sub, name).1
    }

    /// The diagonal `x ↦ (x, x)` into `G × G`.
    pub fn diagonal(g: &GroupRef, budget: &Budget) -> Result<Self> {
        let product = Arc::new(direct_product(g, g, budget)?);
        let n = g.order();
        let images = g.elements().map(|x| x * n + x).collect();
        Ok(Homomorphism {
            source: g.clone(),
            target: product,
            images,
        })
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `next` (diagrammatic order).
    pub fn then(&self, next: &Homomorphism) -> Result<Self> {
        if *self.target != *next.source {
            return Err(Error::SourceTargetMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                next.source.name(),
                next.target.name()
            )));
        }
        let images = self.images.iter().map(|&x| next.images[x]).collect();
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = self
            .source
            .elements()
            .filter(|&x| self.images[x] == 0)
            .collect();
        Subgroup::from_sorted_unchecked(self.source.order(), elements)
    }

    pub fn image(&self) -> Subgroup {
        let mut elements = self.images.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_unchecked(self.target.order(), elements)
    }

    /// `h(S)` for a subgroup `S` of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = sub.elements().iter().map(|&x| self.images[x]).collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_unchecked(self.target.order(), elements)
    }

    /// `h⁻¹(K)` for a subgroup `K` of the target.
    pub fn preimage(&self, k: &Subgroup) -> Subgroup {
        let elements = self
            .source
            .elements()
            .filter(|&x| k.contains(self.images[x]))
            .collect();
        Subgroup::from_sorted_unchecked(self.source.order(), elements)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut images = vec![0; self.target.order()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Some(Homomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}

/// `f` followed by `g`.
pub fn compose(f: &Homomorphism, g: &Homomorphism) -> Result<Homomorphism> {
    f.then(g)
}
