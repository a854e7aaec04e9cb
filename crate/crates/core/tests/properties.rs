use std::sync::OnceLock;

use grouplift::catalog::{groups_up_to_order, hom_pool, CatalogEntry};
use grouplift::group::{normal_closure, quotient, subgroup_generated};
use grouplift::hom::evaluate_word;
use grouplift::lifting::OrthogonalityRelation;
use grouplift::{Budget, Homomorphism, Lifter, Morphism, MorphismPool, Word};
use proptest::prelude::*;

fn entries() -> &'static [CatalogEntry] {
    static E: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    E.get_or_init(|| groups_up_to_order(24, &Budget::default()).unwrap())
}

fn small_homs() -> &'static MorphismPool {
    static P: OnceLock<MorphismPool> = OnceLock::new();
    P.get_or_init(|| {
        let budget = Budget::default();
        hom_pool(&groups_up_to_order(6, &budget).unwrap(), 6, &budget).unwrap()
    })
}

fn hom(k: usize) -> &'static Homomorphism {
    let pool = small_homs();
    pool.members()[k % pool.len()].morphism.as_finite().unwrap()
}

fn relation() -> &'static (Lifter, OrthogonalityRelation) {
    static R: OnceLock<(Lifter, OrthogonalityRelation)> = OnceLock::new();
    R.get_or_init(|| {
        let lifter = Lifter::new(Budget::default());
        let pool = small_homs();
        let universe: Vec<Homomorphism> = pool
            .members()
            .iter()
            .step_by(7)
            .map(|m| m.morphism.as_finite().unwrap().clone())
            .collect();
        let rel = OrthogonalityRelation::compute(&lifter, &universe).unwrap();
        (lifter, rel)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_contain_their_seeds(g in 0usize..64, seeds in prop::collection::vec(0usize..1000, 0..4)) {
        let e = &entries()[g % entries().len()];
        let grp = &e.group;
        let seeds: Vec<usize> = seeds.iter().map(|s| s % grp.order()).collect();
        let sub = subgroup_generated(grp, seeds.iter().copied());
        let ncl = normal_closure(grp, seeds.iter().copied());
        prop_assert!(seeds.iter().all(|&s| sub.contains(s)));
        prop_assert!(sub.is_subset_of(&ncl));
        prop_assert!(ncl.is_normal_in(grp));
        prop_assert_eq!(grp.order() % sub.len(), 0);
        for &a in sub.elements() {
            for &b in sub.elements() {
                prop_assert!(sub.contains(grp.mul(a, b)));
            }
        }
    }

    #[test]
    fn kernel_and_image_orders_multiply(k in 0usize..100_000) {
        let h = hom(k);
        let kernel = h.kernel();
        prop_assert!(kernel.is_normal_in(h.source()));
        prop_assert_eq!(kernel.len() * h.image().len(), h.source().order());
        let (q, proj) = quotient(h.source(), &kernel).unwrap();
        prop_assert_eq!(q.order(), h.image().len());
        prop_assert_eq!(proj.kernel(), kernel);
    }

    #[test]
    fn composites_are_homomorphisms(a in 0usize..100_000, b in 0usize..100_000) {
        let (f, g) = (hom(a), hom(b));
        if f.target().fingerprint() == g.source().fingerprint() {
            let fg = f.then(g).unwrap();
            for x in fg.source().elements() {
                prop_assert_eq!(fg.apply(x), g.apply(f.apply(x)));
            }
        }
    }

    #[test]
    fn isomorphisms_lift_on_both_sides(a in 0usize..100_000) {
        let lifter = &relation().0;
        let f = hom(a);
        let id_source = Homomorphism::identity(f.source());
        let id_target = Homomorphism::identity(f.target());
        prop_assert!(lifter.check_lift(&Morphism::Finite(f.clone()), &id_target).unwrap().holds());
        prop_assert!(lifter.check_lift(&Morphism::Finite(id_source), f).unwrap().holds());
    }

    #[test]
    fn orthogonals_form_a_galois_connection(mask in any::<u64>(), extra in any::<u64>()) {
        let rel = &relation().1;
        let n = rel.len().min(64);
        let p: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let q: Vec<usize> = (0..n).filter(|&k| (mask | extra) >> k & 1 == 1).collect();
        let l = rel.left(&p);
        prop_assert_eq!(rel.left(&rel.right(&l)), l.clone());
        let r = rel.right(&p);
        prop_assert_eq!(rel.right(&rel.left(&r)), r);
        prop_assert!(rel.left(&q).iter().all(|x| l.contains(x)));
    }

    #[test]
    fn words_round_trip_through_text(letters in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..12)) {
        let w = Word::from_letters(letters).unwrap();
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn commutator_words_evaluate_pointwise(g in 0usize..64, x in 0usize..1000, y in 0usize..1000) {
        let grp = &entries()[g % entries().len()].group;
        let (x, y) = (x % grp.order(), y % grp.order());
        let w = Word::parse("[a,b]").unwrap();
        prop_assert_eq!(evaluate_word(&w, grp, &[x, y]).unwrap(), grp.commutator(x, y));
        let cube = Word::parse("a^3").unwrap();
        prop_assert_eq!(evaluate_word(&cube, grp, &[x]).unwrap(), grp.pow(x, 3));
    }
}
