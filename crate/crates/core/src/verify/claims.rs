use std::collections::BTreeSet;

use super::harness::{
    abelian_overgroup, catalog_group, cyclic, finite, kernel_to_trivial, perfect_kernel_core, pm,
    s_overgroup, word_value_span, Ctx, Tally,
};
use crate::catalog::{
    cp_zero_pool, hom_pool, inclusion_pool, normal_closure_pool, overgroup_inclusion,
    perfect_to_zero_pool, resolve_group_name, surjection_pool, CatalogEntry,
};
use crate::classes::{member, ClassId};
use crate::error::{Error, Result};
use crate::factorize::{
    is_largest_normal, p_core_tower, sylow_decomposition, LabelStatus, StageLabel,
};
use crate::group::{
    arith, classify_group, commutator, cores, fitting, normal_closure, normal_subgroups, quotient,
    subgroups, subnormal_chain, GroupRef, Subgroup, Subnormality,
};
use crate::hom::{verbal_subgroup, Homomorphism, PresentedMorphism, Word};
use crate::lifting::{Lifter, Morphism, MorphismPool, OrthogonalityRelation, PoolMember, Side};

pub(super) fn run(id: &str, ctx: &Ctx, t: &mut Tally) -> Result<()> {
    match id {
        "GAL" => galois(ctx, t),
        "T22-FG-1" => abker_lr(ctx, t),
        "T22-FG-2" => zero_star_lr(ctx, t),
        "T22-FG-3" => zero_ab_lr(ctx, t),
        "T22-FG-4" => zero_s_lr(ctx, t),
        "T22-FG-5" => zp_zero_r(ctx, t),
        "T22-FG-6" => zp_zero_rr(ctx, t),
        "T22-G-AB" => abelian_targets(ctx, t),
        "T22-G-COMMREL" => word_span(ctx, t, &[&["[a,b]"]]),
        "T22-G-NORMSPAN" => word_span(ctx, t, &[&["a^2"], &["a^3"], &["a^2", "[a,b]"]]),
        "T22-G-SPLIT" => split(ctx, t),
        "T22-G-RETRACT" => retract(ctx, t),
        "T22-G-SURJ" => presented_exact(ctx, t, PresentedMorphism::zero_to_z(), ClassId::Surj),
        "T22-G-INJ" => presented_exact(ctx, t, PresentedMorphism::z_to_zero(), ClassId::Inj),
        "C23-1" => soluble(ctx, t),
        "C23-2" => nilpotent_diagonal(ctx, t),
        "C23-3" => fitting_diagonal(ctx, t),
        "C23-4a" => p_group_rr(ctx, t),
        "C23-4b" => p_group_lr(ctx, t),
        "C23-VERBAL" => verbal(ctx, t),
        "C24" => odd_order(ctx, t),
        "C25-PCORE" => p_core_stages(ctx, t),
        "C25-PPRIME" => pprime_stages(ctx, t),
        "C25-PPPRIME" => tower_stages(ctx, t),
        "S3-SYLOW" => sylow_claim(ctx, t),
        "FLOCAL" => local_objects(ctx, t),
        other => Err(Error::UnknownClaim(other.to_string())),
    }
}

macro_rules! check {
    ($e:expr) => {
        if !$e {
            return Ok(());
        }
    };
}

fn zero_maps(entries: &[CatalogEntry]) -> Vec<PoolMember> {
    entries
        .iter()
        .map(|e| {
            pm(
                format!("zero:{}", e.name()),
                Homomorphism::to_trivial(&e.group),
            )
        })
        .collect()
}

fn unit_map(g: &GroupRef, name: &str) -> PoolMember {
    pm(format!("unit:{name}"), Homomorphism::from_trivial(g))
}

fn unit_maps(entries: &[CatalogEntry]) -> Vec<PoolMember> {
    entries
        .iter()
        .map(|e| unit_map(&e.group, e.name()))
        .collect()
}

fn pool(
    name: impl Into<String>,
    members: impl IntoIterator<Item = PoolMember>,
) -> Result<MorphismPool> {
    MorphismPool::new(name, members)
}

fn concat(name: &str, pools: &[&MorphismPool]) -> Result<MorphismPool> {
    MorphismPool::concat(name, pools)
}

fn keep(
    name: &str,
    source: &MorphismPool,
    mut pred: impl FnMut(&PoolMember) -> Result<bool>,
) -> Result<MorphismPool> {
    let mut kept = Vec::new();
    for m in source.members() {
        if pred(m)? {
            kept.push(m.clone());
        }
    }
    pool(name, kept)
}

/// Members `f` of `source` with `f ⋌ g`, counting the checks.
fn left_of(
    name: &str,
    source: &MorphismPool,
    g: &Homomorphism,
    lifter: &Lifter,
    t: &mut Tally,
) -> Result<MorphismPool> {
    keep(name, source, |f| {
        t.stats.pairs_checked += 1;
        Ok(lifter.check_lift(&f.morphism, g)?.holds())
    })
}

/// Concrete members `g` of `source` with `f ⋌ g`, counting the checks.
fn right_of(
    name: &str,
    source: &MorphismPool,
    f: &Morphism,
    lifter: &Lifter,
    t: &mut Tally,
) -> Result<MorphismPool> {
    keep(name, source, |g| {
        t.stats.pairs_checked += 1;
        Ok(lifter.check_lift(f, finite(g))?.holds())
    })
}

fn in_class(class: &ClassId, m: &PoolMember, budget: &crate::Budget) -> Result<bool> {
    Ok(member(class, finite(m), budget)?.member)
}

fn lift_all_left(
    t: &mut Tally,
    lifter: &Lifter,
    opposing: &MorphismPool,
    right: &PoolMember,
) -> Result<bool> {
    for f in opposing.members() {
        if !t.expect_lift(lifter, f, right)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lift_all_right(
    t: &mut Tally,
    lifter: &Lifter,
    left: &PoolMember,
    opposing: &MorphismPool,
) -> Result<bool> {
    for g in opposing.members() {
        if !t.expect_lift(lifter, left, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The inclusion of the image of `h` into the overgroup `c`, as a witness.
fn overgroup_witness(h: &Homomorphism, c: &Subgroup) -> PoolMember {
    let label = format!("im<{}>", c.len());
    pm(
        format!("ovr:{}:{}", h.image().len(), c.len()),
        overgroup_inclusion(h.target(), &h.image(), c, &label),
    )
}

/// `B = ⟨f(A)^B⟩ · [B, B]`, the left orthogonal of maps `1 → M` with `M` abelian.
fn zero_ab_left(h: &Homomorphism) -> bool {
    let b = h.target();
    let closure = normal_closure(b, h.image().elements().iter().copied());
    closure
        .join(b, &commutator(b, &b.whole(), &b.whole()))
        .is_whole()
}

/// `[G, G] ↪ G` for each entry.
fn derived_inclusions(entries: &[CatalogEntry]) -> Result<MorphismPool> {
    let members = entries.iter().map(|e| {
        let d = commutator(&e.group, &e.group.whole(), &e.group.whole());
        pm(
            format!("der:{}", e.name()),
            Homomorphism::inclusion(&e.group, &d, "[G,G]"),
        )
    });
    pool("derived-inclusions", members)
}

/// Projections out of `A5 × C2`.
fn perfect_quotients() -> Result<MorphismPool> {
    let g = catalog_group("A5xC2");
    let mut members = Vec::new();
    for n in normal_subgroups(&g) {
        let (_, proj) = quotient(&g, &n)?;
        members.push(pm(format!("quot:A5xC2:{}", n.len()), proj));
    }
    pool("A5xC2-quotients", members)
}

fn a5_unit() -> PoolMember {
    unit_map(&catalog_group("A5"), "A5")
}

fn galois(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let entries = ctx.entries(8)?;
    let budget = ctx.budget();
    let mut members = inclusion_pool(&entries, 8, budget)?.members().to_vec();
    members.extend(
        surjection_pool(&entries, 8, budget)?
            .members()
            .iter()
            .cloned(),
    );
    members.extend(zero_maps(&entries));
    members.extend(unit_maps(&entries));
    let universe = pool("galois-universe", members)?;
    t.pool("universe", &universe);
    let maps: Vec<Homomorphism> = universe
        .members()
        .iter()
        .map(|m| finite(m).clone())
        .collect();
    let n = maps.len();
    let rel = OrthogonalityRelation::compute(ctx.lifter, &maps)?;
    t.stats.pairs_checked += n * n;
    t.stats.candidates = n;
    let subsets = galois_subsets(n);
    for (k, p) in subsets.iter().enumerate() {
        let (l, r) = (rel.left(p), rel.right(p));
        check!(t.instance(
            rel.left(&rel.right(&l)) == l,
            format!("subset {k}"),
            "P^l = P^lrl",
            "differs"
        ));
        check!(t.instance(
            rel.right(&rel.left(&r)) == r,
            format!("subset {k}"),
            "P^r = P^rlr",
            "differs"
        ));
        let (rl, lr) = (rel.right(&l), rel.left(&r));
        check!(t.instance(
            is_subset(p, &rl),
            format!("subset {k}"),
            "P ⊆ P^lr",
            "not contained"
        ));
        check!(t.instance(
            is_subset(p, &lr),
            format!("subset {k}"),
            "P ⊆ P^rl",
            "not contained"
        ));
        let next = &subsets[(k + 1) % subsets.len()];
        let union: Vec<usize> = p
            .iter()
            .chain(next)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        check!(t.instance(
            is_subset(&rel.left(&union), &l),
            format!("subset {k}"),
            "(P ∪ Q)^l ⊆ P^l",
            "not contained"
        ));
        check!(t.instance(
            is_subset(&rel.right(&union), &r),
            format!("subset {k}"),
            "(P ∪ Q)^r ⊆ P^r",
            "not contained"
        ));
    }
    Ok(())
}

/// Twenty deterministic index sets over a universe of size `n`.
pub(crate) fn galois_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..20)
        .map(|k| match k {
            0 => Vec::new(),
            1 => (0..n).collect(),
            _ => (0..n)
                .filter(|&i| (i * (k + 3) + k * k) % (k % 5 + 3) == 0)
                .collect(),
        })
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn abker_lr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let candidates = concat(
        "fg1-candidates",
        &[
            &hom_pool(&ctx.entries(8)?, 8, budget)?,
            &surjection_pool(&ctx.entries(24)?, 24, budget)?,
            &perfect_quotients()?,
        ],
    )?;
    let source = concat(
        "perfect-maps",
        &[&perfect_to_zero_pool()?, &perfect_quotients()?],
    )?;
    let opposing = keep("perfect-maps ∩ ABKER_L", &source, |m| {
        in_class(&ClassId::AbKerL, m, budget)
    })?;
    t.pool("candidates", &candidates);
    t.pool("opposing", &opposing);
    for c in candidates.members() {
        t.stats.candidates += 1;
        if in_class(&ClassId::AbKerLr, c, budget)? {
            check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
        } else {
            check!(t.expect_fail(ctx.lifter, &perfect_kernel_core(finite(c)), c)?);
        }
    }
    Ok(())
}

fn zero_star_lr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let candidates = concat(
        "fg2-candidates",
        &[
            &inclusion_pool(&ctx.entries(24)?, 24, budget)?,
            &surjection_pool(&ctx.entries(12)?, 12, budget)?,
        ],
    )?;
    let opposing = normal_closure_pool(&ctx.entries(16)?, 16, budget)?;
    t.pool("candidates", &candidates);
    t.pool("opposing", &opposing);
    for c in candidates.members() {
        t.stats.candidates += 1;
        let g = finite(c);
        if in_class(&ClassId::ZeroStarLr, c, budget)? {
            check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
        } else if !g.is_injective() {
            check!(t.expect_fail(ctx.lifter, &kernel_to_trivial(g), c)?);
        } else if let Subnormality::NotSubnormal { overgroup } =
            subnormal_chain(g.target(), &g.image())
        {
            check!(t.expect_fail(ctx.lifter, &overgroup_witness(g, &overgroup), c)?);
        }
    }
    Ok(())
}

fn zero_ab_lr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let (budget, wide) = (ctx.budget(), ctx.wide());
    let mut candidates = inclusion_pool(&ctx.entries(24)?, 24, budget)?
        .members()
        .to_vec();
    candidates.push(a5_unit());
    let candidates = pool("fg3-candidates", candidates)?;
    let source = concat(
        "inclusions+derived",
        &[
            &inclusion_pool(&ctx.entries(12)?, 12, budget)?,
            &derived_inclusions(&ctx.entries(24)?)?,
            &pool("A5", [a5_unit()])?,
        ],
    )?;
    let opposing = keep("(0→Ab)^l", &source, |m| Ok(zero_ab_left(finite(m))))?;
    t.pool("candidates", &candidates);
    t.pool("opposing", &opposing);
    for c in candidates.members() {
        t.stats.candidates += 1;
        let g = finite(c);
        if in_class(&ClassId::ZeroAbLr, c, &wide)? {
            check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
        } else if !g.is_injective() {
            check!(t.expect_fail(ctx.lifter, &kernel_to_trivial(g), c)?);
        } else {
            let over = abelian_overgroup(g.target(), &g.image());
            check!(t.instance(
                over != g.image(),
                &c.label,
                "iteration stops strictly above the image",
                "stops at the image"
            ));
            check!(t.expect_fail(ctx.lifter, &overgroup_witness(g, &over), c)?);
        }
    }
    Ok(())
}

fn zero_s_lr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let (budget, wide) = (ctx.budget(), ctx.wide());
    let targets = ctx
        .s
        .clone()
        .map_or_else(|| vec!["C2".to_string(), "S3".to_string()], |s| vec![s]);
    let mut candidates = inclusion_pool(&ctx.entries(24)?, 24, budget)?
        .members()
        .to_vec();
    candidates.push(a5_unit());
    let candidates = pool("fg4-candidates", candidates)?;
    let source = concat(
        "inclusions+A5",
        &[
            &inclusion_pool(&ctx.entries(12)?, 12, budget)?,
            &pool("A5", [a5_unit()])?,
        ],
    )?;
    t.pool("candidates", &candidates);
    for name in targets {
        let s = resolve_group_name(&name)?;
        let class = ClassId::ZeroSLr(name.clone());
        t.targets.push(name.clone());
        let opposing = left_of(
            &format!("(0→{name})^l"),
            &source,
            &Homomorphism::from_trivial(&s),
            ctx.lifter,
            t,
        )?;
        t.pool(format!("opposing {name}"), &opposing);
        for c in candidates.members() {
            t.stats.candidates += 1;
            let g = finite(c);
            if in_class(&class, c, &wide)? {
                check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
            } else if !g.is_injective() {
                check!(t.expect_fail(ctx.lifter, &kernel_to_trivial(g), c)?);
            } else {
                let over = s_overgroup(g.target(), &g.image(), &s, &wide)?;
                check!(t.instance(
                    over != g.image(),
                    &c.label,
                    "iteration stops strictly above the image",
                    "stops at the image"
                ));
                check!(t.expect_fail(ctx.lifter, &overgroup_witness(g, &over), c)?);
            }
        }
    }
    Ok(())
}

fn zp_zero_r(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let candidates = hom_pool(&ctx.entries(12)?, 12, budget)?;
    t.pool("candidates", &candidates);
    for p in ctx.primes(&[2, 3, 5]) {
        t.primes.push(p);
        let witness = cp_zero_pool(&[p])?.members()[0].clone();
        for c in candidates.members() {
            t.stats.candidates += 1;
            if in_class(&ClassId::ZpZeroR(p), c, budget)? {
                check!(t.expect_lift(ctx.lifter, &witness, c)?);
            } else {
                check!(t.expect_fail(ctx.lifter, &witness, c)?);
            }
        }
    }
    Ok(())
}

/// `C_{p²} → C_p`, reduction mod p.
fn cyclic_reduction(p: usize) -> Result<Homomorphism> {
    Homomorphism::new(
        cyclic(p * p),
        cyclic(p),
        (0..p * p).map(|k| k % p).collect(),
    )
}

/// `C_p ↪ C_{p²}`.
fn cyclic_inclusion(p: usize) -> Result<Homomorphism> {
    Homomorphism::new(cyclic(p), cyclic(p * p), (0..p).map(|k| k * p).collect())
}

fn zp_zero_rr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let base = hom_pool(&ctx.entries(8)?, 8, budget)?;
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let class = ClassId::ZpZeroR(p);
        let mut opposing = vec![unit_map(&cyclic(p as usize), &format!("C{p}"))];
        opposing.extend(
            keep("r", &base, |m| in_class(&class, m, budget))?
                .members()
                .iter()
                .cloned(),
        );
        let opposing = pool(format!("(C{p}→0)^r"), opposing)?;
        let mut candidates = Vec::new();
        if (p * p) as usize <= ctx.max_order {
            candidates.push(pm(
                format!("C{}->C{p}", p * p),
                cyclic_reduction(p as usize)?,
            ));
        }
        candidates.extend(base.members().iter().cloned());
        let candidates = pool(format!("fg6-candidates p={p}"), candidates)?;
        t.pool(format!("candidates p={p}"), &candidates);
        t.pool(format!("opposing p={p}"), &opposing);
        for c in candidates.members() {
            t.stats.candidates += 1;
            if in_class(&ClassId::ZpZeroRrClaimed(p), c, budget)? {
                check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
            } else {
                let mut failed = false;
                for f in opposing.members() {
                    t.stats.pairs_checked += 1;
                    if !ctx.lifter.check_lift(&f.morphism, finite(c))?.holds() {
                        failed = true;
                        break;
                    }
                }
                check!(t.instance(
                    failed,
                    &c.label,
                    "fails against some member of the opposing pool",
                    "lifts against all"
                ));
            }
        }
    }
    Ok(())
}

fn abelian_targets(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let left = pm("F2->F2/[a,b]", PresentedMorphism::abelianize_f2());
    for c in zero_maps(&ctx.entries(24)?) {
        t.stats.candidates += 1;
        if finite(&c).source().is_abelian() {
            check!(t.expect_lift(ctx.lifter, &left, &c)?);
        } else {
            check!(t.expect_fail(ctx.lifter, &left, &c)?);
        }
    }
    Ok(())
}

fn presented_words(words: &[&str]) -> Result<(Vec<Word>, PresentedMorphism)> {
    let words = words
        .iter()
        .map(|w| Word::parse(w))
        .collect::<Result<Vec<_>>>()?;
    let rank = words.iter().map(Word::rank).max().unwrap_or(1).max(1);
    let pres = PresentedMorphism::quotient_map(rank, words.clone())?;
    Ok((words, pres))
}

/// Concrete maps believed to lie in `P^r` for a presented `P`: small
/// homomorphisms and maps to the trivial group.
fn presented_right_source(ctx: &Ctx) -> Result<MorphismPool> {
    let budget = ctx.budget();
    concat(
        "homs+zero",
        &[
            &hom_pool(&ctx.entries(6)?, 6, budget)?,
            &pool("zero", zero_maps(&ctx.entries(12)?))?,
        ],
    )
}

/// `G/K → G/N` for `K ≤ N`, both normal in `G`.
fn induced_quotient_map(g: &GroupRef, k: &Subgroup, n: &Subgroup) -> Result<Homomorphism> {
    let (gk, to_gk) = quotient(g, k)?;
    let (gn, to_gn) = quotient(g, n)?;
    let mut images = vec![0; gk.order()];
    for x in g.elements() {
        images[to_gk.apply(x)] = to_gn.apply(x);
    }
    Homomorphism::new(gk, gn, images)
}

fn word_span(ctx: &Ctx, t: &mut Tally, word_sets: &[&[&str]]) -> Result<()> {
    let budget = ctx.budget();
    let candidates = surjection_pool(&ctx.entries(24)?, 24, budget)?;
    let source = presented_right_source(ctx)?;
    t.pool("candidates", &candidates);
    for words in word_sets {
        let (words, pres) = presented_words(words)?;
        let left = pm(pres.to_string(), pres.clone());
        let opposing = right_of(
            &format!("({pres})^r"),
            &source,
            &left.morphism,
            ctx.lifter,
            t,
        )?;
        t.pool(format!("opposing {pres}"), &opposing);
        for c in candidates.members() {
            t.stats.candidates += 1;
            let h = finite(c);
            let n = h.kernel();
            let span = word_value_span(h.source(), &n, &words, budget)?;
            if span == n {
                check!(lift_all_right(t, ctx.lifter, c, &opposing)?);
            } else {
                let witness = pm("G/K->G/N", induced_quotient_map(h.source(), &span, &n)?);
                check!(t.expect_lift(ctx.lifter, &left, &witness)?);
                check!(t.expect_fail(ctx.lifter, c, &witness)?);
            }
        }
    }
    Ok(())
}

fn split(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let candidates = hom_pool(&ctx.entries(8)?, 8, budget)?;
    let opposing = pool("0→*", unit_maps(&ctx.entries(4)?))?;
    t.pool("candidates", &candidates);
    t.pool("opposing", &opposing);
    for c in candidates.members() {
        t.stats.candidates += 1;
        if in_class(&ClassId::Split, c, budget)? {
            check!(lift_all_left(t, ctx.lifter, &opposing, c)?);
        } else {
            let target = finite(c).target();
            check!(t.expect_fail(ctx.lifter, &unit_map(target, target.name()), c)?);
        }
    }
    Ok(())
}

fn retract(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let candidates = hom_pool(&ctx.entries(8)?, 8, budget)?;
    let opposing = pool("*→0", zero_maps(&ctx.entries(4)?))?;
    t.pool("candidates", &candidates);
    t.pool("opposing", &opposing);
    for c in candidates.members() {
        t.stats.candidates += 1;
        if in_class(&ClassId::Retract, c, budget)? {
            check!(lift_all_right(t, ctx.lifter, c, &opposing)?);
        } else {
            let source = finite(c).source();
            let witness = pm(
                format!("zero:{}", source.name()),
                Homomorphism::to_trivial(source),
            );
            check!(t.expect_fail(ctx.lifter, c, &witness)?);
        }
    }
    Ok(())
}

fn presented_exact(
    ctx: &Ctx,
    t: &mut Tally,
    left: PresentedMorphism,
    class: ClassId,
) -> Result<()> {
    let budget = ctx.budget();
    let candidates = hom_pool(&ctx.entries(8)?, 8, budget)?;
    t.pool("candidates", &candidates);
    let left = pm(left.to_string(), left);
    for c in candidates.members() {
        t.stats.candidates += 1;
        if in_class(&class, c, budget)? {
            check!(t.expect_lift(ctx.lifter, &left, c)?);
        } else {
            check!(t.expect_fail(ctx.lifter, &left, c)?);
        }
    }
    Ok(())
}

fn with_a5(mut entries: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    entries.extend(crate::catalog::lookup("A5"));
    entries
}

fn soluble(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let (budget, wide) = (ctx.budget(), ctx.wide());
    let perfect = keep("perfect->0 ∩ ABKER_L", &perfect_to_zero_pool()?, |m| {
        in_class(&ClassId::AbKerL, m, budget)
    })?;
    let zab_source = concat(
        "inclusions+A5",
        &[
            &inclusion_pool(&ctx.entries(6)?, 6, budget)?,
            &pool("A5", [a5_unit()])?,
        ],
    )?;
    let zab = keep("(0→Ab)^l", &zab_source, |m| Ok(zero_ab_left(finite(m))))?;
    t.pool("opposing AbKer^l", &perfect);
    t.pool("opposing (0→Ab)^l", &zab);
    for e in with_a5(ctx.entries(24)?) {
        t.stats.candidates += 1;
        let g = &e.group;
        let is_soluble = classify_group(g).soluble;
        let zero = pm(format!("zero:{}", e.name()), Homomorphism::to_trivial(g));
        let unit = unit_map(g, e.name());
        let a = in_class(&ClassId::AbKerLr, &zero, budget)?;
        let b = in_class(&ClassId::ZeroAbLr, &unit, &wide)?;
        check!(t.instance(a == is_soluble, &zero.label, is_soluble, a));
        check!(t.instance(b == is_soluble, &unit.label, is_soluble, b));
        if is_soluble {
            check!(lift_all_left(t, ctx.lifter, &perfect, &zero)?);
            check!(lift_all_left(t, ctx.lifter, &zab, &unit)?);
        } else {
            check!(t.expect_fail(ctx.lifter, &perfect_kernel_core(finite(&zero)), &zero)?);
            let over = abelian_overgroup(g, &g.trivial_subgroup());
            check!(t.expect_fail(ctx.lifter, &overgroup_witness(finite(&unit), &over), &unit)?);
        }
    }
    Ok(())
}

fn nilpotent_diagonal(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let opposing = normal_closure_pool(&ctx.entries(6)?, 6, budget)?;
    t.pool("opposing", &opposing);
    for e in ctx.entries(24)? {
        t.stats.candidates += 1;
        let nilpotent = classify_group(&e.group).nilpotent;
        let diag = pm(
            format!("diag:{}", e.name()),
            Homomorphism::diagonal(&e.group, budget)?,
        );
        let d = finite(&diag);
        let subnormal = in_class(&ClassId::ZeroStarLr, &diag, budget)?;
        check!(t.instance(subnormal == nilpotent, &diag.label, nilpotent, subnormal));
        if e.group.order() > ctx.cap(8) {
            continue;
        }
        if nilpotent {
            check!(lift_all_left(t, ctx.lifter, &opposing, &diag)?);
        } else if let Subnormality::NotSubnormal { overgroup } =
            subnormal_chain(d.target(), &d.image())
        {
            check!(t.expect_fail(ctx.lifter, &overgroup_witness(d, &overgroup), &diag)?);
        }
    }
    Ok(())
}

fn fitting_diagonal(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    for e in ctx.entries(16)? {
        t.stats.candidates += 1;
        let g = &e.group;
        let diag = Homomorphism::diagonal(g, budget)?;
        let subs = subgroups(g, budget)?;
        let good: Vec<&Subgroup> = subs
            .iter()
            .filter(|h| subnormal_chain(diag.target(), &diag.image_of(h)).is_subnormal())
            .collect();
        let maximal: Vec<&Subgroup> = good
            .iter()
            .copied()
            .filter(|a| !good.iter().any(|b| b.len() > a.len() && a.is_subset_of(b)))
            .collect();
        let fit = fitting(g);
        let found: Vec<usize> = maximal.iter().map(|h| h.len()).collect();
        check!(t.instance(
            maximal == [&fit],
            e.name(),
            format!("unique maximal of order {}", fit.len()),
            format!("{found:?}")
        ));
    }
    Ok(())
}

fn least_other_prime(order: u64, p: u64) -> Option<u64> {
    arith::prime_divisors(order).into_iter().find(|&q| q != p)
}

fn p_group_rr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let base = hom_pool(&ctx.entries(8)?, 8, budget)?;
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let mut opposing = Vec::new();
        if (p * p) as usize <= ctx.max_order {
            opposing.push(pm(
                format!("C{p}->C{}", p * p),
                cyclic_inclusion(p as usize)?,
            ));
        }
        opposing.push(unit_map(&cyclic(p as usize), &format!("C{p}")));
        opposing.extend(
            keep("r", &base, |m| in_class(&ClassId::ZpZeroR(p), m, budget))?
                .members()
                .iter()
                .cloned(),
        );
        let opposing = pool(format!("(C{p}→0)^r"), opposing)?;
        t.pool(format!("opposing p={p}"), &opposing);
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let zero = pm(
                format!("zero:{}", e.name()),
                Homomorphism::to_trivial(&e.group),
            );
            let p_group = classify_group(&e.group).is_p_group(p);
            if p_group {
                check!(lift_all_left(t, ctx.lifter, &opposing, &zero)?);
            } else {
                let q = least_other_prime(e.group.order() as u64, p)
                    .expect("non-p-groups have another prime");
                let witness = cp_zero_pool(&[q])?.members()[0].clone();
                check!(t.expect_fail(ctx.lifter, &witness, &zero)?);
            }
        }
    }
    Ok(())
}

fn p_group_lr(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let (budget, wide) = (ctx.budget(), ctx.wide());
    let source = concat(
        "inclusions+A5",
        &[
            &inclusion_pool(&ctx.entries(12)?, 12, budget)?,
            &pool("A5", [a5_unit()])?,
        ],
    )?;
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let name = format!("C{p}");
        let s = resolve_group_name(&name)?;
        let class = ClassId::ZeroSLr(name.clone());
        let opposing = left_of(
            &format!("(0→{name})^l"),
            &source,
            &Homomorphism::from_trivial(&s),
            ctx.lifter,
            t,
        )?;
        t.pool(format!("opposing p={p}"), &opposing);
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let unit = unit_map(&e.group, e.name());
            let p_group = classify_group(&e.group).is_p_group(p);
            let m = in_class(&class, &unit, &wide)?;
            check!(t.instance(m == p_group, &unit.label, p_group, m));
            if p_group {
                check!(lift_all_left(t, ctx.lifter, &opposing, &unit)?);
            } else {
                let over = s_overgroup(&e.group, &e.group.trivial_subgroup(), &s, &wide)?;
                check!(t.instance(
                    !over.is_trivial(),
                    &unit.label,
                    "iteration stops above 1",
                    "stops at 1"
                ));
                check!(t.expect_fail(
                    ctx.lifter,
                    &overgroup_witness(finite(&unit), &over),
                    &unit
                )?);
            }
        }
    }
    Ok(())
}

fn verbal(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let source = presented_right_source(ctx)?;
    let word_sets: [&[&str]; 4] = [&["[a,b]"], &["a^2"], &["a^3"], &["a^2", "[a,b]"]];
    for words in word_sets {
        let (words, pres) = presented_words(words)?;
        let left = pm(pres.to_string(), pres.clone());
        let opposing = right_of(
            &format!("({pres})^r"),
            &source,
            &left.morphism,
            ctx.lifter,
            t,
        )?;
        t.pool(format!("opposing {pres}"), &opposing);
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let g = &e.group;
            let v = verbal_subgroup(g, &words, budget)?;
            check!(t.instance(
                v.is_normal_in(g),
                e.name(),
                "verbal subgroup is normal",
                "not normal"
            ));
            let (q, proj) = quotient(g, &v)?;
            let residual = verbal_subgroup(&q, &words, budget)?;
            check!(t.instance(
                residual.is_trivial(),
                e.name(),
                "words vanish on G/V",
                format!("{} values survive", residual.len())
            ));
            check!(t.expect_lift(
                ctx.lifter,
                &left,
                &pm("G/V->0", Homomorphism::to_trivial(&q))
            )?);
            check!(lift_all_right(
                t,
                ctx.lifter,
                &pm(format!("G->G/V:{}", e.name()), proj),
                &opposing
            )?);
        }
    }
    Ok(())
}

fn odd_order(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    let c2_zero = cp_zero_pool(&[2])?.members()[0].clone();
    for e in ctx
        .entries(24)?
        .into_iter()
        .filter(|e| e.group.order() % 2 == 1)
    {
        t.stats.candidates += 1;
        let zero = pm(
            format!("zero:{}", e.name()),
            Homomorphism::to_trivial(&e.group),
        );
        check!(t.instance(
            classify_group(&e.group).soluble,
            e.name(),
            "soluble",
            "not soluble"
        ));
        check!(t.instance(
            in_class(&ClassId::AbKerLr, &zero, budget)?,
            &zero.label,
            "in ABKER_LR",
            "not in ABKER_LR"
        ));
        check!(t.expect_lift(ctx.lifter, &zero, &c2_zero)?);
    }
    Ok(())
}

/// Small maps and `1 → C_p`, the raw material for the p-local pools.
fn p_local_source(ctx: &Ctx, p: u64) -> Result<MorphismPool> {
    let budget = ctx.budget();
    let unit = pool("unit", [unit_map(&cyclic(p as usize), &format!("C{p}"))])?;
    concat(
        "homs+unit",
        &[&hom_pool(&ctx.entries(6)?, 6, budget)?, &unit],
    )
}

fn p_core_stages(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let source = p_local_source(ctx, p)?;
        let r = keep(&format!("(C{p}→0)^r"), &source, |m| {
            in_class(&ClassId::ZpZeroR(p), m, budget)
        })?;
        let rr = keep(&format!("(C{p}→0)^rr"), &source, |g| {
            for f in r.members() {
                t.stats.pairs_checked += 1;
                if !ctx.lifter.check_lift(&f.morphism, finite(g))?.holds() {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        t.pool(format!("r p={p}"), &r);
        t.pool(format!("rr p={p}"), &rr);
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let g = &e.group;
            let o_p = cores(g, p)?.o_p;
            let largest = is_largest_normal(g, &o_p, |n| arith::is_power_of(n.len() as u64, p));
            check!(t.instance(
                largest,
                e.name(),
                "O_p is the largest normal p-subgroup",
                "not largest"
            ));
            let (q, proj) = quotient(g, &o_p)?;
            let stage1 = pm(format!("{}->G/O_p", e.name()), proj);
            let stage2 = pm(
                format!("G/O_p({})->0", e.name()),
                Homomorphism::to_trivial(&q),
            );
            check!(lift_all_left(t, ctx.lifter, &r, &stage1)?);
            check!(lift_all_right(t, ctx.lifter, &stage2, &rr)?);
        }
    }
    Ok(())
}

fn pprime_stages(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let budget = ctx.budget();
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let source = p_local_source(ctx, p)?;
        let r = keep(&format!("(C{p}→0)^r"), &source, |m| {
            in_class(&ClassId::ZpZeroR(p), m, budget)
        })?;
        t.pool(format!("r p={p}"), &r);
        let cp_zero = cp_zero_pool(&[p])?.members()[0].clone();
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let g = &e.group;
            let c = cores(g, p)?;
            let largest = is_largest_normal(g, &c.o_pprime, |n| !(n.len() as u64).is_multiple_of(p));
            check!(t.instance(
                largest,
                e.name(),
                "O_p' is the largest normal p'-subgroup",
                "not largest"
            ));
            let stage1 = pm(format!("{}->G/O_p'", e.name()), c.pprime_projection.clone());
            let certified = in_class(&ClassId::ZpZeroR(p), &stage1, budget)?;
            check!(t.instance(
                certified,
                &stage1.label,
                format!("in ZP_ZERO_R({p})"),
                "not a member"
            ));
            check!(t.expect_lift(ctx.lifter, &cp_zero, &stage1)?);
            let stage2 = pm(
                format!("G/O_p'({})->0", e.name()),
                Homomorphism::to_trivial(c.pprime_projection.target()),
            );
            check!(lift_all_right(t, ctx.lifter, &stage2, &r)?);
        }
    }
    Ok(())
}

fn tower_stages(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for p in ctx.primes(&[2, 3]) {
        t.primes.push(p);
        let source = p_local_source(ctx, p)?;
        t.pool(format!("evidence p={p}"), &source);
        for e in ctx.entries(24)? {
            t.stats.candidates += 1;
            let g = &e.group;
            let c = cores(g, p)?;
            let q = c.pprime_projection.target();
            check!(t.instance(
                is_largest_normal(g, &c.o_pprime, |n| !(n.len() as u64).is_multiple_of(p))
                    && is_largest_normal(q, &c.o_p_of_quotient, |n| arith::is_power_of(
                        n.len() as u64,
                        p
                    )),
                e.name(),
                "cores are the largest normal subgroups of their kind",
                "not largest"
            ));
            let tower = p_core_tower(g, p, ctx.lifter, &source)?;
            check!(t.instance(
                tower.stage_labels[0].status == LabelStatus::Certified,
                e.name(),
                "first stage certified",
                "rejected"
            ));
            check!(tower_evidence(
                t,
                ctx.lifter,
                &tower.stage_labels[1],
                &tower.stages[1],
                &source
            )?);
            check!(tower_evidence(
                t,
                ctx.lifter,
                &tower.stage_labels[2],
                &tower.stages[2],
                &source
            )?);
        }
    }
    Ok(())
}

/// Turns the pool evidence of a claimed stage label into a tally entry.
fn tower_evidence(
    t: &mut Tally,
    lifter: &Lifter,
    label: &StageLabel,
    stage: &Homomorphism,
    source: &MorphismPool,
) -> Result<bool> {
    let evidence = label
        .evidence
        .as_ref()
        .expect("claimed labels carry evidence");
    t.stats.pairs_checked += evidence.members_checked;
    if evidence.holds {
        return Ok(true);
    }
    let failing = evidence
        .failing_member
        .as_deref()
        .expect("failed evidence names a member");
    let other = source
        .members()
        .iter()
        .find(|m| m.label == failing)
        .ok_or_else(|| Error::Parse(format!("evidence member {failing} not in pool")))?;
    let stage = pm(format!("stage:{}", label.label), stage.clone());
    let (left, right) = match evidence.side {
        Side::Right => (other, &stage),
        Side::Left => (&stage, other),
    };
    t.expect_lift(lifter, left, right)
}

fn sylow_claim(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for e in ctx.entries(24)? {
        let g = &e.group;
        for p in arith::prime_divisors(g.order() as u64) {
            if ctx.p.is_some_and(|q| q != p) {
                continue;
            }
            t.stats.candidates += 1;
            let report = sylow_decomposition(g, p, ctx.lifter)?;
            t.stats.pairs_checked += report.p_subgroups.len();
            let subject = format!("{} p={p}", e.name());
            let expected = arith::p_part(g.order() as u64, p) as usize;
            check!(t.instance(
                report.sylow.len() == expected,
                &subject,
                expected,
                report.sylow.len()
            ));
            check!(t.instance(
                report.all_lift,
                &subject,
                "every 1→P lifts up to conjugation",
                "some 1→P fails"
            ));
            let consistent = report
                .p_subgroups
                .iter()
                .all(|c| c.lifts_up_to_conjugation == c.contained_in_conjugate);
            check!(t.instance(
                consistent,
                &subject,
                "lifting matches containment in a conjugate",
                "mismatch"
            ));
            check!(t.instance(
                report.maximal_all_conjugate,
                &subject,
                "maximal p-subgroups are Sylow conjugates",
                "not all"
            ));
        }
    }
    Ok(())
}

/// Direct criterion for `(C2 ↪ C4)`-locality: every element with square 1
/// has exactly one square root of order dividing 4.
fn c2_c4_local_direct(g: &crate::FiniteGroup) -> bool {
    g.elements().filter(|&y| g.mul(y, y) == 0).all(|y| {
        g.elements()
            .filter(|&x| g.pow(x, 4) == 0 && g.mul(x, x) == y)
            .count()
            == 1
    })
}

fn local_objects(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let c2 = cyclic(2);
    let c4_incl = cyclic_inclusion(2)?;
    let maps: [(Morphism, &str); 4] = [
        (Homomorphism::to_trivial(&c2).into(), "C2->0"),
        (Homomorphism::from_trivial(&c2).into(), "1->C2"),
        (PresentedMorphism::abelianize_f2().into(), "F2->F2/[a,b]"),
        (c4_incl.into(), "C2->C4"),
    ];
    for e in ctx.entries(24)? {
        t.stats.candidates += 1;
        let g = &e.group;
        let odd = g.order() % 2 == 1;
        let direct = [odd, odd, g.is_abelian(), c2_c4_local_direct(g)];
        for ((f, name), expected) in maps.iter().zip(direct) {
            let local = ctx.lifter.is_f_local(f, g)?;
            t.stats.pairs_checked += 1;
            check!(t.instance(
                local == expected,
                format!("{} {name}-local", e.name()),
                expected,
                local
            ));
        }
    }
    Ok(())
}
