use std::collections::BTreeSet;
use std::sync::Arc;

use super::Homomorphism;
use crate::budget::{ensure_within, Budget};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};

const UNSET: usize = usize::MAX;

/// Extends generator images along the Cayley graph of `⟨gens⟩`, checking
/// every edge `x → x·s`. Returns `None` on the first inconsistency.
fn propagate(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    gen_images: &[usize],
) -> Option<Vec<usize>> {
    let mut img = vec![UNSET; g.order()];
    img[0] = 0;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(gen_images) {
            let y = g.mul(x, s);
            let v = h.mul(img[x], t);
            if img[y] == UNSET {
                img[y] = v;
                queue.push(y);
            } else if img[y] != v {
                return None;
            }
        }
    }
    Some(img)
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    nodes: u64,
    limit: u64,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, level: usize) -> Result<()> {
        if level == self.gens.len() {
            let img = propagate(self.g, self.h, &self.gens, &self.chosen)
                .expect("checked at the last level");
            self.out.push(img);
            return Ok(());
        }
        for idx in 0..self.candidates[level].len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::BudgetExceeded {
                    what: "homomorphism search nodes".into(),
                    required: self.nodes as u128,
                    limit: self.limit as u128,
                });
            }
            self.chosen.push(self.candidates[level][idx]);
            if propagate(self.g, self.h, &self.gens[..=level], &self.chosen).is_some() {
                self.run(level + 1)?;
            }
            self.chosen.pop();
        }
        Ok(())
    }
}

/// Image vectors of all homomorphisms `G → H`, in lexicographic order.
///
/// Backtracks over images of a greedily chosen generating set; an image of
/// a generator must have order dividing the generator's order.
pub fn hom_images(g: &FiniteGroup, h: &FiniteGroup, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    ensure_within(
        "hom source order",
        g.order() as u128,
        budget.max_group_order as u128,
    )?;
    ensure_within(
        "hom target order",
        h.order() as u128,
        budget.max_group_order as u128,
    )?;
    let gens = g.whole().generators(g);
    let h_orders = h.element_orders();
    let candidates = gens
        .iter()
        .map(|&s| {
            let n = g.element_order(s);
            h.elements().filter(|&y| n.is_multiple_of(h_orders[y])).collect()
        })
        .collect();
    let mut search = Search {
        g,
        h,
        gens,
        candidates,
        chosen: Vec::new(),
        nodes: 0,
        limit: budget.max_hom_nodes,
        out: Vec::new(),
    };
    search.run(0)?;
    let mut out = search.out;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn enumerate_homs(g: &GroupRef, h: &GroupRef, budget: &Budget) -> Result<Vec<Homomorphism>> {
    Ok(hom_images(g, h, budget)?
        .into_iter()
        .map(|images| Homomorphism::from_images_unchecked(g.clone(), h.clone(), images))
        .collect())
}

pub fn count_homs(g: &FiniteGroup, h: &FiniteGroup, budget: &Budget) -> Result<usize> {
    Ok(hom_images(g, h, budget)?.len())
}

/// The distinct conjugation maps `x ↦ gxg⁻¹`, as sorted image vectors.
pub fn inner_automorphism_images(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let maps: BTreeSet<Vec<usize>> = g
        .elements()
        .map(|c| g.elements().map(|x| g.conjugate(c, x)).collect())
        .collect();
    maps.into_iter().collect()
}

pub fn inner_automorphisms(g: &GroupRef) -> Vec<Homomorphism> {
    inner_automorphism_images(g)
        .into_iter()
        .map(|images| Homomorphism::from_images_unchecked(Arc::clone(g), Arc::clone(g), images))
        .collect()
}
