use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;

/// A subgroup, stored as the strictly sorted list of its element indices.
///
/// Subgroups order canonically by `(size, elements)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
            .then_with(|| self.parent_order.cmp(&other.parent_order))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(parent_order: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self {
            parent_order,
            elements,
        }
    }

    /// Checks that `elements` form a subgroup of `g` (identity, closure,
    /// inverses, Lagrange) and returns it.
    pub fn from_elements(
        g: &FiniteGroup,
        elements: impl IntoIterator<Item = usize>,
    ) -> crate::Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(crate::Error::NotASubgroup(format!(
                "element {bad} out of range"
            )));
        }
        if elements.first() != Some(&0) {
            return Err(crate::Error::NotASubgroup("missing the identity".into()));
        }
        let sub = Self::from_sorted_unchecked(g.order(), elements);
        for &a in sub.elements() {
            if !sub.contains(g.inv(a)) {
                return Err(crate::Error::NotASubgroup(format!(
                    "inverse of {a} missing"
                )));
            }
            for &b in sub.elements() {
                if !sub.contains(g.mul(a, b)) {
                    return Err(crate::Error::NotASubgroup(format!(
                        "product {a}*{b} missing"
                    )));
                }
            }
        }
        if !g.order().is_multiple_of(sub.len()) {
            return Err(crate::Error::NotASubgroup(
                "size does not divide the group order".into(),
            ));
        }
        Ok(sub)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: a subgroup holds at least the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.len() <= other.elements.len()
            && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Membership mask indexed by element of the parent.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent_order];
        for &x in &self.elements {
            mask[x] = true;
        }
        mask
    }

    /// The first `(g, n, g n g⁻¹)` with `g ∈ G`, `n ∈ self` and the conjugate
    /// outside `self`, or `None` when normal in `g`.
    pub fn normality_witness(&self, g: &FiniteGroup) -> Option<(usize, usize, usize)> {
        self.normality_witness_within(g, g.elements())
    }

    pub(crate) fn normality_witness_within(
        &self,
        g: &FiniteGroup,
        conjugators: impl IntoIterator<Item = usize>,
    ) -> Option<(usize, usize, usize)> {
        let mask = self.mask();
        for x in conjugators {
            for &n in &self.elements {
                let c = g.conjugate(x, n);
                if !mask[c] {
                    return Some((x, n, c));
                }
            }
        }
        None
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        self.normality_witness(g).is_none()
    }

    /// Whether `self` is normal in the (larger) subgroup `over`.
    pub fn is_normal_within(&self, g: &FiniteGroup, over: &Subgroup) -> bool {
        self.is_subset_of(over)
            && self
                .normality_witness_within(g, over.elements().iter().copied())
                .is_none()
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// A generating set picked greedily: repeatedly the least element not yet generated.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut closure = Closure::new(g);
        let mut gens = Vec::new();
        for &x in &self.elements {
            if closure.add(x) {
                gens.push(x);
            }
        }
        gens
    }

    /// `⟨self ∪ other⟩`.
    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut closure = Closure::new(g);
        for x in self.generators(g).into_iter().chain(other.generators(g)) {
            closure.add(x);
        }
        closure.finish()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_sorted_unchecked(self.parent_order, elements)
    }
}

/// Incremental subgroup closure (Dimino's algorithm).
///
/// The current element set is always a subgroup; it is kept as a union of
/// right cosets of the previous stage while a new generator is absorbed.
pub(crate) struct Closure<'g> {
    g: &'g FiniteGroup,
    mask: Vec<bool>,
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(g: &'g FiniteGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Self {
            g,
            mask,
            elements: vec![0],
            gens: Vec::new(),
        }
    }

    /// Absorbs `s`; returns whether the subgroup grew.
    pub(crate) fn add(&mut self, s: usize) -> bool {
        if self.mask[s] {
            return false;
        }
        let g = self.g;
        let base: Vec<usize> = self.elements.clone();
        self.gens.push(s);
        let mut reps = vec![0usize];
        let mut idx = 0;
        // Adding the coset H·s first seeds the loop below.
        self.push_coset(&base, s);
        reps.push(s);
        while idx < reps.len() {
            let r = reps[idx];
            idx += 1;
            for gi in 0..self.gens.len() {
                let x = g.mul(r, self.gens[gi]);
                if !self.mask[x] {
                    self.push_coset(&base, x);
                    reps.push(x);
                }
            }
        }
        true
    }

    fn push_coset(&mut self, base: &[usize], x: usize) {
        for &h in base {
            let y = self.g.mul(h, x);
            debug_assert!(!self.mask[y]);
            self.mask[y] = true;
            self.elements.push(y);
        }
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn finish(mut self) -> Subgroup {
        self.elements.sort_unstable();
        Subgroup::from_sorted_unchecked(self.g.order(), self.elements)
    }
}

/// The least subgroup containing `seeds`.
pub fn subgroup_generated(g: &FiniteGroup, seeds: impl IntoIterator<Item = usize>) -> Subgroup {
    let mut closure = Closure::new(g);
    for s in seeds {
        closure.add(s);
        if closure.len() == g.order() {
            break;
        }
    }
    closure.finish()
}

/// The least normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &FiniteGroup, seeds: impl IntoIterator<Item = usize>) -> Subgroup {
    normal_closure_within(g, &g.whole(), seeds)
}

/// The normal closure of `seeds` inside the subgroup `within`: the least
/// subgroup containing every `h s h⁻¹` with `h ∈ within`.
pub fn normal_closure_within(
    g: &FiniteGroup,
    within: &Subgroup,
    seeds: impl IntoIterator<Item = usize>,
) -> Subgroup {
    // Conjugating a generating set suffices.
    let seed_group = subgroup_generated(g, seeds);
    let gens = seed_group.generators(g);
    let mut closure = Closure::new(g);
    'outer: for &h in within.elements() {
        for &s in &gens {
            closure.add(g.conjugate(h, s));
            if closure.len() == within.len() {
                break 'outer;
            }
        }
    }
    closure.finish()
}

/// `[A, B]`, generated by all `a⁻¹ b⁻¹ a b`.
pub fn commutator(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut closure = Closure::new(g);
    for &x in a.elements() {
        for &y in b.elements() {
            let c = g.commutator(x, y);
            if !closure.contains(c) {
                closure.add(c);
            }
        }
    }
    closure.finish()
}
