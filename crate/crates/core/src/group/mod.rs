//! Finite groups given by Cayley tables, and the subgroup machinery built on
//! top of them.
//!
//! Elements are indices `0..n`; index 0 is always the identity. Every
//! set-valued result is returned in a canonical sorted order so that reports
//! built from it are byte-stable.

mod lattice;
pub(crate) mod series;
mod subgroup;
mod sylow;

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

pub use lattice::{conjugacy_classes, normal_subgroups, subgroup_labels, subgroups};
pub use series::{
    classify_group, derived_series, lower_central_series, subnormal_chain, PropertyRecord,
    SubnormalChain, Subnormality,
};
pub use subgroup::{
    commutator, normal_closure, normal_closure_within, subgroup_generated, Subgroup,
};
pub use sylow::{cores, fitting, perfect_core, sylow, Cores};

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// A finite group stored as a validated Cayley table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    element_names: Option<Vec<String>>,
    fingerprint: [u8; 16],
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.fingerprint == other.fingerprint
            && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn table_fingerprint(order: usize, table: &[usize]) -> [u8; 16] {
    let mut hasher = Sha256::new();
    hasher.update((order as u64).to_le_bytes());
    for &entry in table {
        hasher.update((entry as u32).to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&digest[..16]);
    out
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// Checks run in a fixed order (shape, range, identity row/column, Latin
    /// property, associativity) and report the first offending cell.
    pub fn from_table(name: impl Into<String>, order: usize, table: &[Vec<usize>]) -> Result<Self> {
        if order == 0 {
            return Err(Error::TableShape {
                what: "order".into(),
                expected: 1,
                found: 0,
            });
        }
        if table.len() != order {
            return Err(Error::TableShape {
                what: "rows".into(),
                expected: order,
                found: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, cells) in table.iter().enumerate() {
            if cells.len() != order {
                return Err(Error::TableShape {
                    what: format!("row {row}"),
                    expected: order,
                    found: cells.len(),
                });
            }
            for (col, &value) in cells.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
            flat.extend_from_slice(cells);
        }
        Self::from_flat(name, order, flat)
    }

    /// Validates a row-major flat table.
    pub fn from_flat(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::TableShape {
                what: "table".into(),
                expected: order * order,
                found: table.len(),
            });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::EntryOutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos],
                order,
            });
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for b in 0..order {
            if at(0, b) != b {
                return Err(Error::NotIdentityAtZero {
                    row: 0,
                    col: b,
                    value: at(0, b),
                });
            }
        }
        for a in 0..order {
            if at(a, 0) != a {
                return Err(Error::NotIdentityAtZero {
                    row: a,
                    col: 0,
                    value: at(a, 0),
                });
            }
        }
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let v = at(a, b);
                if seen[v] == a {
                    return Err(Error::NotLatinSquare {
                        row: a,
                        col: b,
                        value: v,
                    });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..order {
            for a in 0..order {
                let v = at(a, b);
                if seen[v] == b {
                    return Err(Error::NotLatinSquare {
                        row: a,
                        col: b,
                        value: v,
                    });
                }
                seen[v] = b;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(name, order, table))
    }

    /// Builds a group from a table already known to be valid (products,
    /// quotients, subgroups of valid groups).
    pub(crate) fn from_flat_unchecked(
        name: impl Into<String>,
        order: usize,
        table: Vec<usize>,
    ) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverses[a] = row
                .iter()
                .position(|&v| v == 0)
                .expect("Latin row contains identity");
        }
        let fingerprint = table_fingerprint(order, &table);
        Self {
            name: name.into(),
            order,
            table,
            inverses,
            element_names: None,
            fingerprint,
        }
    }

    /// The group of order one.
    pub fn trivial() -> Self {
        Self::from_flat_unchecked("1", 1, vec![0])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches display names for the elements; ignored unless there is one per element.
    pub fn with_element_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.order {
            self.element_names = Some(names);
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`, the convention used throughout the crate.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Order of every element, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn element_name(&self, a: usize) -> String {
        match &self.element_names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element with the given display name.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.element_names.as_ref()?.iter().position(|n| n == name)
    }

    /// The table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// A content hash of the table; equal tables have equal fingerprints.
    pub fn fingerprint(&self) -> [u8; 16] {
        self.fingerprint
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, vec![0])
    }

    /// The center `Z(G)`.
    pub fn center(&self) -> Subgroup {
        let elements = self
            .elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup::from_sorted_unchecked(self.order, elements)
    }

    /// Realizes a subgroup as a group in its own right, together with the
    /// inclusion. Elements are renumbered in increasing parent order, so the
    /// identity stays at index 0.
    pub fn subgroup_as_group(
        self: &Arc<Self>,
        sub: &Subgroup,
        name: impl Into<String>,
    ) -> (GroupRef, Homomorphism) {
        let elems = sub.elements();
        let n = elems.len();
        let mut local = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in elems {
            for &b in elems {
                table.push(local[self.mul(a, b)]);
            }
        }
        let mut group = FiniteGroup::from_flat_unchecked(name, n, table);
        if let Some(names) = &self.element_names {
            group.element_names = Some(elems.iter().map(|&e| names[e].clone()).collect());
        }
        let group = Arc::new(group);
        let inclusion =
            Homomorphism::from_images_unchecked(group.clone(), self.clone(), elems.to_vec());
        (group, inclusion)
    }
}

/// The direct product `G × H`; the pair `(g, h)` has index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, budget: &Budget) -> Result<FiniteGroup> {
    let n = g.order() * h.order();
    ensure_within(
        "direct product order",
        n as u128,
        budget.max_group_order as u128,
    )?;
    let m = h.order();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / m, a % m);
        for b in 0..n {
            let (b1, b2) = (b / m, b % m);
            table.push(g.mul(a1, b1) * m + h.mul(a2, b2));
        }
    }
    let name = format!("{}x{}", wrap_name(g.name()), wrap_name(h.name()));
    let mut product = FiniteGroup::from_flat_unchecked(name, n, table);
    let names: Vec<String> = (0..n)
        .map(|x| format!("({},{})", g.element_name(x / m), h.element_name(x % m)))
        .collect();
    product.element_names = Some(names);
    Ok(product)
}

fn wrap_name(name: &str) -> String {
    if name.contains('x') || name.contains(':') || name.contains('/') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// The quotient `G/N` together with the projection.
///
/// Cosets are numbered by their least element, so the identity coset is 0
/// and each coset's representative is its minimum.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(GroupRef, Homomorphism)> {
    if let Some((x, y, c)) = n.normality_witness(g) {
        return Err(Error::NotNormal {
            g: x,
            n: y,
            conjugate: c,
        });
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in n.elements() {
            coset_of[g.mul(x, m)] = idx;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)]);
        }
    }
    let name = format!("{}/{}", wrap_name(g.name()), n.len());
    let mut q = FiniteGroup::from_flat_unchecked(name, k, table);
    if g.element_names.is_some() {
        q.element_names = Some(
            reps.iter()
                .map(|&r| format!("{}N", g.element_name(r)))
                .collect(),
        );
    }
    let q = Arc::new(q);
    let projection = Homomorphism::from_images_unchecked(g.clone(), q.clone(), coset_of);
    Ok((q, projection))
}

/// Small number-theory helpers shared by the group modules.
pub mod arith {
    pub fn is_prime(p: u64) -> bool {
        if p < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Distinct prime divisors in increasing order.
    pub fn prime_divisors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// True for `1, p, p², …`.
    pub fn is_power_of(mut n: u64, p: u64) -> bool {
        if n == 0 {
            return false;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// The largest power of `p` dividing `n`.
    pub fn p_part(mut n: u64, p: u64) -> u64 {
        let mut part = 1;
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
        part
    }

    pub fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_group;

    fn s3() -> GroupRef {
        Arc::new(builtin_group("symmetric:3").unwrap())
    }

    #[test]
    fn trivial_and_c2_tables_validate() {
        let t = FiniteGroup::from_table("1", 1, &[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let c2 = FiniteGroup::from_table("C2", 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.inverses(), &[0, 1]);
    }

    #[test]
    fn identity_must_sit_at_zero() {
        let err = FiniteGroup::from_table("bad", 3, &[vec![0, 2, 1], vec![1, 2, 0], vec![2, 0, 1]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotIdentityAtZero {
                row: 0,
                col: 1,
                value: 2
            }
        );
    }

    #[test]
    fn latin_square_violation_is_located() {
        let err = FiniteGroup::from_table("bad", 3, &[vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotLatinSquare {
                row: 1,
                col: 1,
                value: 1
            }
        );
    }

    #[test]
    fn associativity_violation_is_located() {
        // A Latin square with identity 0 that is not a group (order-5 loop).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", 5, &table).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            FiniteGroup::from_table("x", 2, &[vec![0, 1]]),
            Err(Error::TableShape { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table("x", 2, &[vec![0, 1], vec![1, 2]]),
            Err(Error::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 2,
                ..
            })
        ));
    }

    #[test]
    fn klein_four_from_product() {
        let c2 = builtin_group("cyclic:2").unwrap();
        let v4 = direct_product(&c2, &c2, &Budget::default()).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!(v4.elements().all(|x| v4.mul(x, x) == 0));
    }

    #[test]
    fn product_with_trivial_keeps_table() {
        let g = s3();
        let p = direct_product(&g, &FiniteGroup::trivial(), &Budget::default()).unwrap();
        assert_eq!(p.table_rows(), g.table_rows());
    }

    #[test]
    fn s3_squared_is_nonabelian_of_order_36() {
        let g = s3();
        let p = direct_product(&g, &g, &Budget::default()).unwrap();
        assert_eq!(p.order(), 36);
        assert!(!p.is_abelian());
        let budget = Budget {
            max_group_order: 30,
            ..Budget::default()
        };
        assert!(matches!(
            direct_product(&g, &g, &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn quotient_of_s3_by_a3_is_sign() {
        let g = s3();
        let a3 = subgroup_generated(&g, [g.element_by_name("(1 2 3)").unwrap()]);
        let (q, proj) = quotient(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel(), a3);
        for x in g.elements() {
            let odd = g.element_order(x) == 2;
            assert_eq!(proj.apply(x), usize::from(odd));
        }
    }

    #[test]
    fn quotient_by_trivial_is_identity() {
        let g = s3();
        let (q, proj) = quotient(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj.images(), &(0..6).collect::<Vec<_>>()[..]);
        assert_eq!(q.table_rows(), g.table_rows());
    }

    #[test]
    fn quotient_by_non_normal_names_conjugation() {
        let g = s3();
        let t12 = g.element_by_name("(1 2)").unwrap();
        let t13 = g.element_by_name("(1 3)").unwrap();
        let t23 = g.element_by_name("(2 3)").unwrap();
        let h = subgroup_generated(&g, [t12]);
        match quotient(&g, &h) {
            Err(Error::NotNormal { g: x, n, conjugate }) => {
                assert_eq!(n, t12);
                assert_eq!(g.conjugate(x, n), conjugate);
                assert!(!h.contains(conjugate));
            }
            other => panic!("expected NotNormal, got {other:?}"),
        }
        // The textbook instance: (1 3)(1 2)(1 3) = (2 3).
        assert_eq!(g.conjugate(t13, t12), t23);
    }

    #[test]
    fn element_orders_of_c4_and_s3() {
        let c4 = builtin_group("cyclic:4").unwrap();
        assert_eq!(c4.element_orders(), vec![1, 4, 2, 4]);
        let mut orders = s3().element_orders();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn arithmetic_helpers() {
        assert!(arith::is_prime(13) && !arith::is_prime(1) && !arith::is_prime(15));
        assert_eq!(arith::prime_divisors(60), vec![2, 3, 5]);
        assert!(
            arith::is_power_of(1, 3) && arith::is_power_of(27, 3) && !arith::is_power_of(12, 2)
        );
        assert_eq!(arith::p_part(24, 2), 8);
    }
}
