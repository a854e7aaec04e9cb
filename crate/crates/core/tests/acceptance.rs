//! The acceptance run: one PASS/FAIL line per criterion, nonzero exit if
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{commutator_span, is_nilpotent, is_soluble, lift_oracle, LiftOracle, Table};
use grouplift::catalog::{
    catalog, groups_up_to_order, hom_pool, inclusion_pool, lookup, normal_closure_pool,
    surjection_pool, CatalogEntry,
};
use grouplift::classes::{abelian_step_reachable, member};
use grouplift::factorize::{is_largest_normal, p_core_tower, sylow_decomposition};
use grouplift::group::arith::{is_power_of, p_part, prime_divisors};
use grouplift::group::{
    classify_group, commutator, cores, fitting, normal_closure_within, subgroups, subnormal_chain,
    Subnormality,
};
use grouplift::hom::{count_homs, enumerate_presented_homs, verbal_subgroup};
use grouplift::io::{HomData, MorphismData};
use grouplift::lifting::{OrthogonalityRelation, PoolMember};
use grouplift::verify::{adjudicate_with, run_suite, Options, Verdict, Witness};
use grouplift::{
    Budget, ClassId, FiniteGroup, GroupRef, Homomorphism, Lifter, Morphism, PresentedMorphism, Word,
};

type Outcome = grouplift::Result<Result<String, String>>;

fn table(g: &FiniteGroup) -> Table {
    Table(g.table_rows())
}

fn entries(n: usize, budget: &Budget) -> Vec<CatalogEntry> {
    groups_up_to_order(n, budget).expect("catalog range within budget")
}

fn wide() -> Budget {
    Budget::default().with_subgroup_order(60)
}

fn fail<T>(message: String) -> Result<T, String> {
    Err(message)
}

fn galois_laws(lifter: &Lifter) -> Outcome {
    let budget = lifter.budget();
    let es = entries(8, budget);
    let mut universe: Vec<PoolMember> = Vec::new();
    universe.extend(inclusion_pool(&es, 8, budget)?.members().iter().cloned());
    universe.extend(surjection_pool(&es, 8, budget)?.members().iter().cloned());
    for e in &es {
        universe.push(PoolMember {
            label: format!("zero:{}", e.name()),
            morphism: Homomorphism::to_trivial(&e.group).into(),
        });
        universe.push(PoolMember {
            label: format!("unit:{}", e.name()),
            morphism: Homomorphism::from_trivial(&e.group).into(),
        });
    }
    let maps: Vec<Homomorphism> = universe
        .iter()
        .map(|m| m.morphism.as_finite().expect("concrete").clone())
        .collect();
    let rel = OrthogonalityRelation::compute(lifter, &maps)?;
    let n = maps.len();
    let by_label = |pred: &dyn Fn(&str) -> bool| -> Vec<usize> {
        (0..n).filter(|&k| pred(&universe[k].label)).collect()
    };
    let stride = |step: usize, offset: usize| -> Vec<usize> { (offset..n).step_by(step).collect() };
    let mut pools: Vec<(String, Vec<usize>)> = vec![
        ("empty".into(), vec![]),
        ("everything".into(), (0..n).collect()),
        (
            "inclusions into S3".into(),
            by_label(&|l| l.starts_with("incl:") && l.ends_with(":S3")),
        ),
        (
            "inclusions into D4".into(),
            by_label(&|l| l.starts_with("incl:") && l.ends_with(":D4")),
        ),
        (
            "quotients of S3".into(),
            by_label(&|l| l.starts_with("quot:S3:")),
        ),
        (
            "quotients of Q8".into(),
            by_label(&|l| l.starts_with("quot:Q8:")),
        ),
        ("zero maps".into(), by_label(&|l| l.starts_with("zero:"))),
        ("unit maps".into(), by_label(&|l| l.starts_with("unit:"))),
        (
            "maps out of C2".into(),
            by_label(&|l| l == "zero:C2" || l == "unit:C2" || l.starts_with("quot:C2:")),
        ),
        (
            "C4 maps".into(),
            by_label(&|l| l.contains(":C4") || l.ends_with("C4")),
        ),
        ("C2->0 alone".into(), by_label(&|l| l == "zero:C2")),
        ("1->S3 alone".into(), by_label(&|l| l == "unit:S3")),
    ];
    for (k, (step, offset)) in [
        (2, 0),
        (3, 1),
        (5, 2),
        (7, 3),
        (11, 4),
        (13, 5),
        (4, 1),
        (6, 5),
    ]
    .into_iter()
    .enumerate()
    {
        pools.push((format!("stride {k}"), stride(step, offset)));
    }
    assert_eq!(pools.len(), 20);
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    for (name, p) in &pools {
        let (l, r) = (rel.left(p), rel.right(p));
        let (rl, lr) = (rel.right(&l), rel.left(&r));
        if !subset(p, &rl) || !subset(p, &lr) {
            return Ok(fail(format!(
                "pool '{name}' is not inside its double orthogonals"
            )));
        }
        if l != rel.left(&rel.right(&l)) || r != rel.right(&rel.left(&r)) {
            return Ok(fail(format!(
                "pool '{name}' breaks triple-orthogonal stability"
            )));
        }
    }
    Ok(Ok(format!("20 pools over a universe of {n} maps")))
}

fn subnormal_lifting(lifter: &Lifter) -> Outcome {
    let budget = lifter.budget();
    let es = entries(16, budget);
    let inclusions = inclusion_pool(&es, 16, budget)?;
    let opposing = normal_closure_pool(&es, 16, budget)?;
    let (mut subnormal, mut other, mut pairs) = (0, 0, 0);
    for e in &es {
        let g = &e.group;
        for d in subgroups(g, budget)? {
            let incl = Homomorphism::inclusion(g, &d, "D");
            match subnormal_chain(g, &d) {
                Subnormality::Subnormal(chain) => {
                    subnormal += 1;
                    if !chain.verify(g) {
                        return Ok(fail(format!("invalid subnormal chain in {}", e.name())));
                    }
                    for m in opposing.members() {
                        pairs += 1;
                        if !lifter.check_lift(&m.morphism, &incl)?.holds() {
                            return Ok(fail(format!(
                                "{} fails against subnormal D<={}",
                                m.label,
                                e.name()
                            )));
                        }
                    }
                }
                Subnormality::NotSubnormal { overgroup } => {
                    other += 1;
                    let (c, c_incl) = g.subgroup_as_group(&overgroup, "C");
                    let d_in_c = c_incl.preimage(&d);
                    if !normal_closure_within(&c, &c.whole(), d_in_c.elements().iter().copied())
                        .is_whole()
                    {
                        return Ok(fail(format!(
                            "overgroup witness in {} is not normally generated by D",
                            e.name()
                        )));
                    }
                    let witness: Morphism = Homomorphism::inclusion(&c, &d_in_c, "D").into();
                    pairs += 1;
                    if lifter.check_lift(&witness, &incl)?.holds() {
                        return Ok(fail(format!(
                            "non-subnormal D<={} lifts against its overgroup witness",
                            e.name()
                        )));
                    }
                }
            }
        }
    }
    Ok(Ok(format!(
        "{} inclusions ({subnormal} subnormal, {other} not), {} opposing maps, {pairs} lifting checks",
        inclusions.len(),
        opposing.len()
    )))
}

fn nilpotent_diagonal(budget: &Budget) -> Outcome {
    let es = entries(24, budget);
    for e in &es {
        let g = &e.group;
        let classical = is_nilpotent(&table(g));
        let diag = Homomorphism::diagonal(g, budget)?;
        let subnormal = subnormal_chain(diag.target(), &diag.image()).is_subnormal();
        if classical != subnormal || classical != classify_group(g).nilpotent {
            return Ok(fail(format!(
                "{}: nilpotent={classical}, diagonal subnormal={subnormal}",
                e.name()
            )));
        }
    }
    Ok(Ok(format!("{} groups", es.len())))
}

fn fitting_diagonal(budget: &Budget) -> Outcome {
    let es = entries(16, budget);
    let mut scanned = 0;
    for e in &es {
        let g = &e.group;
        let diag = Homomorphism::diagonal(g, budget)?;
        let good: Vec<_> = subgroups(g, budget)?
            .into_iter()
            .filter(|h| subnormal_chain(diag.target(), &diag.image_of(h)).is_subnormal())
            .collect();
        scanned += good.len();
        let maximal: Vec<_> = good
            .iter()
            .filter(|h| !good.iter().any(|k| k.len() > h.len() && h.is_subset_of(k)))
            .collect();
        if maximal.len() != 1 || *maximal[0] != fitting(g) {
            return Ok(fail(format!(
                "{}: {} maximal subgroups with subnormal diagonal",
                e.name(),
                maximal.len()
            )));
        }
    }
    Ok(Ok(format!(
        "{} groups, {scanned} subgroups with subnormal diagonal",
        es.len()
    )))
}

fn p_torsion(lifter: &Lifter) -> Outcome {
    let budget = lifter.budget();
    let pool = hom_pool(&entries(12, budget), 12, budget)?;
    let mut checks = 0;
    for p in [2u64, 3, 5] {
        let cp = Arc::new(grouplift::catalog::builtin_group(&format!("cyclic:{p}"))?);
        let left: Morphism = Homomorphism::to_trivial(&cp).into();
        for m in pool.members() {
            let h = m.morphism.as_finite().expect("concrete");
            let t = table(h.source());
            let torsion_free =
                !(1..t.order()).any(|x| h.images()[x] == 0 && t.power_is_identity(x, p as usize));
            let lifts = lifter.check_lift(&left, h)?.holds();
            let class = member(&ClassId::ZpZeroR(p), h, budget)?.member;
            checks += 1;
            if torsion_free != lifts || lifts != class {
                return Ok(fail(format!(
                    "{} at p={p}: torsion-free={torsion_free}, lifts={lifts}",
                    m.label
                )));
            }
        }
    }
    Ok(Ok(format!("{} homs, {checks} checks", pool.len())))
}

fn solubility(budget: &Budget) -> Outcome {
    let wide = wide();
    let a5 = lookup("A5").expect("A5 in manifest").group;
    let mut groups: Vec<GroupRef> = entries(24, budget).into_iter().map(|e| e.group).collect();
    groups.push(a5.clone());
    for g in &groups {
        let classical = is_soluble(&table(g));
        let no_perfect_image = count_homs(&a5, g, &wide)? == 1;
        let chain = abelian_step_reachable(&g.trivial_subgroup(), g, &wide)?
            .chain()
            .is_some();
        if classical != no_perfect_image
            || classical != chain
            || classical != classify_group(g).soluble
        {
            return Ok(fail(format!(
                "{}: soluble={classical}, no A5 image={no_perfect_image}, chain={chain}",
                g.name()
            )));
        }
    }
    Ok(Ok(format!("{} groups", groups.len())))
}

fn odd_order() -> Outcome {
    let odd: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| e.group.order() % 2 == 1)
        .collect();
    for e in &odd {
        if !is_soluble(&table(&e.group)) || !classify_group(&e.group).soluble {
            return Ok(fail(format!(
                "{} has odd order but is not soluble",
                e.name()
            )));
        }
    }
    let orders: Vec<String> = odd.iter().map(|e| e.group.order().to_string()).collect();
    Ok(Ok(format!(
        "{} groups of orders {}",
        odd.len(),
        orders.join(",")
    )))
}

fn sylow_conjugation(lifter: &Lifter) -> Outcome {
    let es = entries(24, lifter.budget());
    let mut cases = 0;
    for e in &es {
        for p in prime_divisors(e.group.order() as u64) {
            cases += 1;
            let report = sylow_decomposition(&e.group, p, lifter)?;
            if report.sylow.len() as u64 != p_part(e.group.order() as u64, p) {
                return Ok(fail(format!(
                    "{} p={p}: Sylow subgroup has order {}",
                    e.name(),
                    report.sylow.len()
                )));
            }
            if !report.all_lift || !report.maximal_all_conjugate {
                return Ok(fail(format!(
                    "{} p={p}: all_lift={}, maximal conjugate={}",
                    e.name(),
                    report.all_lift,
                    report.maximal_all_conjugate
                )));
            }
            if report
                .p_subgroups
                .iter()
                .any(|c| c.lifts_up_to_conjugation != c.contained_in_conjugate)
            {
                return Ok(fail(format!(
                    "{} p={p}: lifting disagrees with direct containment",
                    e.name()
                )));
            }
        }
    }
    Ok(Ok(format!(
        "{} groups, {cases} (group, prime) cases",
        es.len()
    )))
}

fn core_tower(lifter: &Lifter) -> Outcome {
    let budget = lifter.budget();
    let evidence = hom_pool(&entries(4, budget), 4, budget)?;
    let es = entries(24, budget);
    for e in &es {
        let g = &e.group;
        for p in [2u64, 3] {
            let tower = p_core_tower(g, p, lifter, &evidence)?;
            let orders = tower.kernel_orders();
            let ok_kernels =
                !(orders[0] as u64).is_multiple_of(p) && is_power_of(orders[1] as u64, p) && tower.verify();
            let c = cores(g, p)?;
            let q = c.pprime_projection.target();
            let ok_cores = is_largest_normal(g, &c.o_pprime, |n| !(n.len() as u64).is_multiple_of(p))
                && is_largest_normal(g, &c.o_p, |n| is_power_of(n.len() as u64, p))
                && is_largest_normal(q, &c.o_p_of_quotient, |n| is_power_of(n.len() as u64, p));
            if !ok_kernels || !ok_cores {
                return Ok(fail(format!(
                    "{} p={p}: kernel orders {orders:?}, cores maximal={ok_cores}",
                    e.name()
                )));
            }
        }
    }
    Ok(Ok(format!("{} groups at p=2,3", es.len())))
}

fn hom_counts(budget: &Budget) -> Outcome {
    let wide = Budget {
        max_catalog_order: 120,
        ..wide()
    };
    let groups = catalog();
    let f2ab = PresentedMorphism::abelianize_f2();
    for e in &groups {
        let t = table(&e.group);
        for m in 1..=12usize {
            let c = grouplift::catalog::builtin_group(&format!("cyclic:{m}"))?;
            let expected = (0..t.order())
                .filter(|&x| t.power_is_identity(x, m))
                .count();
            let found = count_homs(&c, &e.group, budget)?;
            if expected != found {
                return Ok(fail(format!(
                    "|Hom(C{m},{})| = {found}, expected {expected}",
                    e.name()
                )));
            }
        }
        let commuting = (0..t.order())
            .flat_map(|x| (0..t.order()).map(move |y| (x, y)))
            .filter(|&(x, y)| t.mul(x, y) == t.mul(y, x))
            .count();
        let presented = enumerate_presented_homs(&f2ab, &e.group, &wide)?
            .satisfying
            .len();
        if commuting != presented {
            return Ok(fail(format!(
                "{}: {commuting} commuting pairs, {presented} from the presented path",
                e.name()
            )));
        }
    }
    Ok(Ok(format!("{} groups, m=1..12", groups.len())))
}

fn designated_instance() -> LiftOracle {
    let one = Table(vec![vec![0]]);
    let (c2, c4) = (Table::cyclic(2), Table::cyclic(4));
    lift_oracle(&one, &c2, &[0], &c4, &c2, &[0, 1, 0, 1])
}

/// The oracle on a serialized witness, when its left map is concrete.
fn oracle_on_witness(w: &Witness) -> Option<LiftOracle> {
    let (left, right) = match w {
        Witness::MissingLift { left, right, .. } | Witness::UnexpectedLift { left, right, .. } => {
            (left, right)
        }
        Witness::Instance { .. } => return None,
    };
    let MorphismData::Finite(left) = left else {
        return None;
    };
    let t = |h: &HomData| (Table(h.source.table.clone()), Table(h.target.table.clone()));
    let ((a, b), (x, y)) = (t(left), t(right));
    Some(lift_oracle(&a, &b, &left.images, &x, &y, &right.images))
}

fn adjudication_integrity(lifter: &Lifter) -> Outcome {
    let oracle = designated_instance();
    let mut notes = vec![format!(
        "oracle: {} squares, lift holds={}",
        oracle.squares,
        oracle.holds()
    )];
    let options = Options {
        max_order: 12,
        p: Some(2),
        s: None,
    };
    for claim in ["T22-FG-6", "C23-4a"] {
        let record = adjudicate_with(claim, &options, lifter)?;
        let refuted = record.verdict == Verdict::Refuted;
        if refuted == oracle.holds() {
            return Ok(fail(format!(
                "{claim}: refuted={refuted} but the oracle says lift holds={}",
                oracle.holds()
            )));
        }
        if let Some(w) = &record.witness {
            if let Some(o) = oracle_on_witness(w) {
                let expected_hold = matches!(w, Witness::UnexpectedLift { .. });
                if o.holds() != expected_hold {
                    return Ok(fail(format!(
                        "{claim}: oracle disagrees with the reported witness"
                    )));
                }
            }
        }
        notes.push(format!("{claim} refuted={refuted}"));
    }
    let start = Instant::now();
    let budget = Budget::default();
    let first = serde_json::to_string_pretty(&run_suite(12, &budget)?).expect("records serialize");
    let second = serde_json::to_string_pretty(&run_suite(12, &budget)?).expect("records serialize");
    let elapsed = start.elapsed();
    if first != second {
        return Ok(fail("run_suite(12) differs between two runs".into()));
    }
    if elapsed > Duration::from_secs(600) {
        return Ok(fail(format!("two suite runs took {elapsed:.1?}")));
    }
    notes.push(format!(
        "suite byte-identical ({} bytes, two runs {elapsed:.1?})",
        first.len()
    ));
    Ok(Ok(notes.join("; ")))
}

fn verbal(budget: &Budget) -> Outcome {
    let es = entries(24, budget);
    let words = [Word::parse("[a,b]")?];
    for e in &es {
        let g = &e.group;
        let t = table(g);
        let whole: Vec<usize> = (0..t.order()).collect();
        let expected = commutator_span(&t, &whole, &whole);
        let v = verbal_subgroup(g, &words, budget)?;
        if v.elements() != expected.as_slice() || v != commutator(g, &g.whole(), &g.whole()) {
            return Ok(fail(format!(
                "{}: verbal subgroup of [a,b] has order {}, expected {}",
                e.name(),
                v.len(),
                expected.len()
            )));
        }
    }
    let s4 = lookup("S4").expect("S4 in manifest").group;
    let order12: Vec<_> = subgroups(&s4, budget)?
        .into_iter()
        .filter(|h| h.len() == 12)
        .collect();
    let squares = verbal_subgroup(&s4, &[Word::parse("a^2")?], budget)?;
    if order12.len() != 1 || squares != order12[0] {
        return Ok(fail(format!("verbal(S4, a^2) has order {}", squares.len())));
    }
    Ok(Ok(format!(
        "{} groups; verbal(S4, a^2) is the index-2 subgroup",
        es.len()
    )))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: Box<dyn Fn(&Lifter) -> Outcome>,
}

fn criterion(
    name: &'static str,
    limit_secs: Option<u64>,
    run: impl Fn(&Lifter) -> Outcome + 'static,
) -> Criterion {
    Criterion {
        name,
        limit: limit_secs.map(Duration::from_secs),
        run: Box::new(run),
    }
}

fn main() -> ExitCode {
    let criteria = vec![
        criterion("Galois laws on 20 fixed pools", Some(60), galois_laws),
        criterion(
            "subnormal inclusions vs normally generated inclusions",
            Some(300),
            subnormal_lifting,
        ),
        criterion("nilpotent iff diagonal subnormal", Some(120), |l| {
            nilpotent_diagonal(l.budget())
        }),
        criterion("Fitting subgroup via subnormal diagonals", None, |l| {
            fitting_diagonal(l.budget())
        }),
        criterion(
            "p-torsion-free kernels vs lifting against C_p->0",
            None,
            p_torsion,
        ),
        criterion("solubility: A5 images and abelian chains", None, |l| {
            solubility(l.budget())
        }),
        criterion("odd-order groups are soluble", None, |_| odd_order()),
        criterion("Sylow subgroups up to conjugation", None, sylow_conjugation),
        criterion("p-core tower kernels and maximal cores", None, core_tower),
        criterion("hom counts and commuting pairs", None, |l| {
            hom_counts(l.budget())
        }),
        criterion(
            "adjudication integrity and suite determinism",
            Some(600),
            adjudication_integrity,
        ),
        criterion("verbal subgroups", None, |l| verbal(l.budget())),
    ];
    let lifter = Lifter::new(Budget::default());
    let mut failures = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)(&lifter);
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(Ok(detail)) => match c.limit {
                Some(limit) if elapsed > limit => (false, format!("{detail}; exceeded {limit:?}")),
                _ => (true, detail),
            },
            Ok(Err(reason)) => (false, reason),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} [{:>2}] {} ({elapsed:.2?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            c.name
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
