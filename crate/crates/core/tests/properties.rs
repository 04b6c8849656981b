use std::collections::BTreeSet;

use monogenic_union::element::{Letter, NormalForm, Word};
use monogenic_union::eps::{ArithmeticProgression, EventuallyPeriodicSet};
use monogenic_union::fixtures::{self, Fixture};
use monogenic_union::membership::{
    self, action_profile, check_closure, default_window, image_of_set,
};
use monogenic_union::numsg::{triple_add_element, triple_from_generators};
use monogenic_union::oracle::{self, Rewriter};
use monogenic_union::presentation::{compile, expand, load_table, ActionTable};
use monogenic_union::wordproblem::{multiply, normalize};
use num_bigint::BigUint;
use proptest::prelude::*;

const SCAN: u64 = 400;

fn eps_strategy() -> impl Strategy<Value = EventuallyPeriodicSet> {
    (
        prop::collection::btree_set(1u64..40, 0..5),
        prop::collection::vec((1u64..30, 0u64..8), 0..3),
    )
        .prop_map(|(exceptions, aps)| {
            EventuallyPeriodicSet::new(
                exceptions,
                aps.into_iter()
                    .map(|(s, d)| ArithmeticProgression::new(s, d)),
            )
        })
}

fn members(set: &EventuallyPeriodicSet, bound: u64) -> BTreeSet<u64> {
    (1..=bound).filter(|&n| set.contains(n)).collect()
}

fn fixture_strategy() -> impl Strategy<Value = Fixture> {
    prop::sample::select(fixtures::all())
}

fn letter_of(fx: &Fixture, i: usize) -> Letter {
    Letter(i % fx.letters.len())
}

fn word_strategy(max_runs: usize, max_exp: u64) -> impl Strategy<Value = Vec<(usize, u64)>> {
    prop::collection::vec((0usize..3, 1..=max_exp), 1..=max_runs)
}

fn word_for(fx: &Fixture, runs: &[(usize, u64)]) -> Word {
    let runs: Vec<(Letter, u64)> = runs.iter().map(|&(l, e)| (letter_of(fx, l), e)).collect();
    Word::from_runs(&runs).unwrap()
}

fn big_nf(fx: &Fixture, l: usize, digits: &[u32]) -> NormalForm {
    let e = digits
        .iter()
        .fold(BigUint::from(1u32), |acc, &d| acc * 1000u32 + d);
    NormalForm::new(letter_of(fx, l), e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eps_contains_matches_enumeration(set in eps_strategy()) {
        let listed: BTreeSet<u64> = set.elements_up_to(SCAN).into_iter().collect();
        prop_assert_eq!(listed, members(&set, SCAN));
        prop_assert_eq!(set.min(), members(&set, SCAN).into_iter().next());
    }

    #[test]
    fn eps_union(a in eps_strategy(), b in eps_strategy()) {
        let u = a.union(&b);
        let expected: BTreeSet<u64> = members(&a, SCAN).union(&members(&b, SCAN)).copied().collect();
        prop_assert_eq!(members(&u, SCAN), expected);
        prop_assert!(a.is_subset_of(&u) && b.is_subset_of(&u));
    }

    #[test]
    fn eps_min_difference(a in eps_strategy(), b in eps_strategy()) {
        let brute = (1..=SCAN).find(|&n| a.contains(n) && !b.contains(n));
        prop_assert_eq!(a.min_difference(&b), brute);
        prop_assert_eq!(a.is_subset_of(&b), brute.is_none());
    }

    #[test]
    fn eps_affine_image(set in eps_strategy(), offset in -5i64..20, scale in 0u64..5) {
        let preimage = members(&set, SCAN + 10);
        match set.affine_image(offset, scale) {
            Ok(image) => {
                let expected: BTreeSet<u64> = preimage
                    .iter()
                    .map(|&n| ((n * scale) as i64 + offset) as u64)
                    .filter(|&m| m <= SCAN)
                    .collect();
                prop_assert_eq!(members(&image, SCAN), expected);
            }
            // Only allowed when some element maps below 1.
            Err(_) => prop_assert!(preimage.iter().any(|&n| (n * scale) as i64 + offset < 1)),
        }
    }

    #[test]
    fn eps_restrictions(set in eps_strategy(), modulus in 1u64..7, residue in 0u64..7, lower in 1u64..50, divisor in 1u64..5) {
        let residue = residue % modulus;
        let r = set.restrict_residue(modulus, residue);
        let expected: BTreeSet<u64> = members(&set, SCAN).into_iter().filter(|n| n % modulus == residue).collect();
        prop_assert_eq!(members(&r, SCAN), expected);
        let r = set.at_least(lower);
        let expected: BTreeSet<u64> = members(&set, SCAN).into_iter().filter(|&n| n >= lower).collect();
        prop_assert_eq!(members(&r, SCAN), expected);
        let r = set.restrict_residue(divisor, 0).divide_exact(divisor);
        let expected: BTreeSet<u64> = members(&set, SCAN).into_iter().filter(|n| n % divisor == 0).map(|n| n / divisor).collect();
        prop_assert_eq!(members(&r, SCAN / divisor), expected);
    }

    #[test]
    fn triple_is_additive_closure(gens in prop::collection::btree_set(1u64..30, 1..4)) {
        let t = triple_from_generators(&gens).unwrap();
        let limit = 4 * t.conductor + 60;
        let mut reach = vec![false; limit as usize + 1];
        for n in 1..=limit {
            reach[n as usize] = gens.iter().any(|&g| g == n || (g < n && reach[(n - g) as usize]));
        }
        for n in 1..=limit {
            prop_assert_eq!(t.contains(n), reach[n as usize], "n = {}", n);
        }
        prop_assert_eq!(members(&t.to_eps(), limit), (1..=limit).filter(|&n| reach[n as usize]).collect::<BTreeSet<_>>());
    }

    #[test]
    fn adding_an_element_lowers_the_measure(gens in prop::collection::btree_set(2u64..30, 1..3), extra in 1u64..60) {
        let t = triple_from_generators(&gens).unwrap();
        if t.contains(extra) {
            prop_assert!(triple_add_element(&t, &gens, extra).is_err());
        } else {
            let (after, new_gens) = triple_add_element(&t, &gens, extra).unwrap();
            prop_assert!(after.measure() < t.measure());
            prop_assert_eq!(&after, &triple_from_generators(&new_gens).unwrap());
            prop_assert!(after.contains(extra));
        }
    }

    #[test]
    fn normalize_agrees_with_rewriting(fx in fixture_strategy(), runs in word_strategy(6, 5)) {
        let table = fx.table();
        let raw = fx.raw(200);
        let w = word_for(&fx, &runs);
        let fast = normalize(&table, &w).unwrap();
        let slow = Rewriter::new(&raw).unwrap().normalize(&w).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn normalize_is_a_homomorphism(fx in fixture_strategy(), u in word_strategy(4, 1_000_000_000), v in word_strategy(4, 1_000_000_000)) {
        let table = fx.table();
        let (u, v) = (word_for(&fx, &u), word_for(&fx, &v));
        let uv = normalize(&table, &u.concat(&v)).unwrap();
        let product = multiply(&table, &normalize(&table, &u).unwrap(), &normalize(&table, &v).unwrap()).unwrap();
        prop_assert_eq!(uv, product);
    }

    #[test]
    fn huge_exponents_associate(
        fx in fixture_strategy(),
        x in (0usize..3, prop::collection::vec(0u32..1000, 0..8)),
        y in (0usize..3, prop::collection::vec(0u32..1000, 0..8)),
        z in (0usize..3, prop::collection::vec(0u32..1000, 0..8)),
    ) {
        let table = fx.table();
        let (x, y, z) = (big_nf(&fx, x.0, &x.1), big_nf(&fx, y.0, &y.1), big_nf(&fx, z.0, &z.1));
        let left = multiply(&table, &multiply(&table, &x, &y).unwrap(), &z).unwrap();
        let right = multiply(&table, &x, &multiply(&table, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn profiles_predict_products(fx in fixture_strategy(), a in 0usize..3, x in 0usize..3, e in 1u64..20, ks in prop::collection::vec(1u64..100_000, 20)) {
        let table = fx.table();
        let (a, x) = (letter_of(&fx, a), NormalForm::new(letter_of(&fx, x), e));
        let profile = action_profile(&table, a, &x, default_window(&table)).unwrap();
        for k in ks {
            let expected = multiply(&table, &NormalForm::new(a, k), &x).unwrap();
            prop_assert_eq!(profile.evaluate(k), Some(expected));
        }
    }

    #[test]
    fn set_images_match_pointwise(fx in fixture_strategy(), a in 0usize..3, x in 0usize..3, e in 1u64..6, domain in eps_strategy()) {
        let table = fx.table();
        let (a, x) = (letter_of(&fx, a), NormalForm::new(letter_of(&fx, x), e));
        let profile = action_profile(&table, a, &x, default_window(&table)).unwrap();
        let images = image_of_set(&profile, &domain).unwrap();
        let mut expected: std::collections::BTreeMap<Letter, BTreeSet<u64>> = Default::default();
        for k in members(&domain, SCAN) {
            let p = multiply(&table, &NormalForm::new(a, k), &x).unwrap();
            expected.entry(p.letter).or_default().insert(p.exponent_u64().unwrap());
        }
        // Every product exponent is at least k, so exponents up to SCAN
        // only come from k up to SCAN.
        for (letter, values) in expected {
            let got = images.get(&letter).map(|s| members(s, SCAN)).unwrap_or_default();
            let values: BTreeSet<u64> = values.into_iter().filter(|&v| v <= SCAN).collect();
            prop_assert_eq!(got, values);
        }
    }

    #[test]
    fn saturation_is_closed_and_exact(fx in fixture_strategy(), gens in prop::collection::vec((0usize..3, 1u64..6), 1..4)) {
        let table = fx.table();
        let gens: Vec<NormalForm> = gens.iter().map(|&(l, e)| NormalForm::new(letter_of(&fx, l), e)).collect();
        let state = membership::saturate(&table, &gens).unwrap();
        prop_assert_eq!(check_closure(&state, &table).unwrap(), None);
        // Each product has exponent at least its left factor plus one, so
        // searching products of exponent at most 30 is exhaustive.
        let reached = oracle::brute_closure(&table, &gens, 30, 30).unwrap();
        for l in table.alphabet().letters() {
            for e in 1..=30u64 {
                let x = NormalForm::new(l, e);
                prop_assert_eq!(membership::is_member(&state, &x), reached.contains(&x), "{}", table.alphabet().format_nf(&x));
            }
        }
    }
}

fn agree_up_to(a: &ActionTable, b: &ActionTable, bound: u64) -> bool {
    let alphabet = a.alphabet();
    alphabet.letters().all(|x| {
        alphabet.letters().filter(|&y| y != x).all(|y| {
            (1..=bound).all(|k| {
                let k = BigUint::from(k);
                monogenic_union::wordproblem::absorb(a, x, &k, y).ok()
                    == monogenic_union::wordproblem::absorb(b, x, &k, y).ok()
            })
        })
    })
}

#[test]
fn compile_is_idempotent_in_effect() {
    for fx in fixtures::all() {
        let table = fx.table();
        let d = table.period_lcm();
        let again = compile(&expand(&table, table.max_cutoff() + 3 * d).unwrap()).unwrap();
        assert!(
            agree_up_to(&table, &again, table.max_cutoff() + 6 * d),
            "{}",
            fx.name
        );
        let reparsed = load_table(&table.to_sgp_string()).unwrap();
        assert_eq!(reparsed, table);
    }
}

#[test]
fn compiled_tables_reproduce_their_relations() {
    for fx in fixtures::all() {
        let raw = fx.raw(12);
        let table = compile(&raw).unwrap();
        for r in &raw.relations {
            let got = monogenic_union::wordproblem::absorb(&table, r.a, &BigUint::from(r.k), r.b)
                .unwrap();
            assert_eq!(got, NormalForm::new(r.c, r.m.clone()), "{}", fx.name);
        }
    }
}
