use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permbase::base::{base_probability, reg_l_m, reg_l_m_exhaustive, regular_suborbits};
use permbase::constructions::{build_str, parse, wreath_product, Budgets, ProductActionSpace};
use permbase::distinguishing::{
    bounds_check, count_tm, distinguishing_number, power_set_regular_orbits, profile,
};
use permbase::perm::{enumerate_elements, Permutation, PermutationGroup};
use permbase::product::{
    product_base_pair_test, r_wreath_brute, r_wreath_formula, PairOrbitTable,
};
use permbase::report::AnalysisReport;
use permbase::saxl::{saxl_report, DEFAULT_SWEEP_BUDGET};
use permbase::Error;

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

/// A transitive group of degree `n`: a conjugate of the `n`-cycle plus
/// `extra` random permutations.
fn random_transitive(n: usize, extra: usize, seed: u64) -> PermutationGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let c = Permutation::from_images(cycle).unwrap();
    let mut gens = vec![c.conjugate_by(&random_perm(&mut rng, n))];
    for _ in 0..extra {
        let x = random_perm(&mut rng, n);
        gens.push(x);
    }
    PermutationGroup::new(n, gens).unwrap()
}

/// A possibly intransitive group of degree `n`.
fn random_group(n: usize, gens: usize, seed: u64) -> PermutationGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = (0..gens).map(|_| random_perm(&mut rng, n)).collect();
    PermutationGroup::new(n, gens).unwrap()
}

fn group(spec: &str) -> PermutationGroup {
    build_str(spec, &Budgets::default()).unwrap().fixture.group
}

const SMALL_TRANSITIVE: &[&str] = &[
    "c:5", "d:5", "a:4", "s:4", "a:5", "a:5@6", "psl2:5", "psl2:7", "pgl2:7", "agl:1:7",
    "s:5/cosets:N(C5)", "pgl2:5/pairs", "hol:c8", "d:6",
];

const TOPS: &[&str] = &["s:2", "c:2", "c:3", "s:3"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_times_stabilizer_is_order(n in 2usize..9, gens in 1usize..3, seed: u64, pt in 0u32..8) {
        let g = random_group(n, gens, seed);
        let pt = pt % n as u32;
        let orbit = g.orbit(pt).unwrap();
        let h = g.point_stabilizer(pt).unwrap();
        prop_assert_eq!(BigUint::from(orbit.len()) * h.order(), g.order());
    }

    #[test]
    fn chain_order_matches_enumeration(n in 2usize..8, gens in 1usize..3, seed: u64) {
        let g = random_group(n, gens, seed);
        let elems = enumerate_elements(&g, 100_000).unwrap();
        prop_assert_eq!(BigUint::from(elems.len()), g.order());
        for x in &elems {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn reg_two_counts_regular_suborbits(n in 3usize..9, extra in 0usize..2, seed: u64) {
        let g = random_transitive(n, extra, seed);
        let r = regular_suborbits(&g).unwrap().count as u64;
        prop_assert_eq!(reg_l_m(&g, 2).unwrap(), r);
    }

    #[test]
    fn reg_matches_tuple_enumeration(n in 3usize..7, extra in 0usize..2, seed: u64, m in 1usize..4) {
        let g = random_transitive(n, extra, seed);
        prop_assert_eq!(reg_l_m(&g, m).unwrap(), reg_l_m_exhaustive(&g, m).unwrap());
    }

    #[test]
    fn base_probability_matches_tuple_count(i in 0usize..SMALL_TRANSITIVE.len(), b in 1usize..4) {
        let g = group(SMALL_TRANSITIVE[i]);
        let n = g.degree();
        let est = base_probability(&g, b, 100_000).unwrap();
        let total = n.pow(b as u32);
        let mut bases = 0usize;
        for code in 0..total {
            let mut x = code;
            let pts: Vec<u32> = (0..b).map(|_| { let c = (x % n) as u32; x /= n; c }).collect();
            if g.pointwise_stabilizer(&pts).unwrap().is_trivial() {
                bases += 1;
            }
        }
        prop_assert_eq!(est.p_exact.clone(), BigRational::new(bases.into(), total.into()));
        if let Some(holds) = est.bound_holds() {
            prop_assert!(holds);
        }
    }

    #[test]
    fn tm_positive_exactly_from_d(n in 2usize..8, extra in 0usize..2, seed: u64) {
        let p = random_transitive(n, extra, seed);
        let d = distinguishing_number(&p).unwrap();
        for m in 1..=n {
            let t = count_tm(&p, m).unwrap();
            prop_assert_eq!(t > 0, m >= d, "m = {}, D = {}", m, d);
            prop_assert!(bounds_check(&p.order(), n, m, t));
        }
    }

    #[test]
    fn two_colourable_iff_regular_subset(n in 2usize..10, extra in 0usize..2, seed: u64) {
        let p = random_transitive(n, extra, seed);
        let d = distinguishing_number(&p).unwrap();
        let orbits = power_set_regular_orbits(&p).unwrap();
        prop_assert_eq!(d <= 2, orbits.count > 0);
    }

    #[test]
    fn suborbit_sum_divisible_by_top_group(r in 1u64..12, i in 0usize..6) {
        let tops = ["s:2", "c:3", "s:3", "c:4", "d:4", "a:4"];
        let p = group(tops[i]);
        let k = p.degree();
        let prof = profile(&p, &(1..=k).collect::<Vec<_>>()).unwrap();
        prop_assert!(r_wreath_formula(r, &p.order(), prof.d, k, &prof.t).is_ok());
    }

    #[test]
    fn saxl_conditions_are_nested(i in 0usize..SMALL_TRANSITIVE.len()) {
        let g = group(SMALL_TRANSITIVE[i]);
        match saxl_report(&g, DEFAULT_SWEEP_BUDGET) {
            Err(Error::NoSaxlGraph) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(rep) => {
                prop_assert_eq!(rep.valency, rep.r as u64 * rep.h_order);
                prop_assert_eq!(rep.eulerian, rep.valency % 2 == 0);
                prop_assert_eq!(rep.star_star, rep.star_star_double_coset);
                if rep.star_star == Some(true) {
                    prop_assert_eq!(rep.star, Some(true));
                }
                if rep.star == Some(true) {
                    prop_assert!(rep.diameter.is_some_and(|d| d <= 2));
                }
            }
        }
    }

    #[test]
    fn pair_test_agrees_with_stabilizers(i in 0usize..5, j in 0usize..TOPS.len(), seed: u64) {
        let ls = ["s:3", "c:4", "d:5", "a:4", "c:5"];
        let l = group(ls[i]);
        let p = group(TOPS[j]);
        let (space, g) = wreath_product(&l, &p, 100_000).unwrap();
        let table = PairOrbitTable::new(&l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let a = rand::Rng::gen_range(&mut rng, 0..space.total() as u32);
            let b = rand::Rng::gen_range(&mut rng, 0..space.total() as u32);
            let direct = g.pointwise_stabilizer(&[a, b]).unwrap().is_trivial();
            prop_assert_eq!(product_base_pair_test(&space, &table, &p, a, b).unwrap(), direct);
        }
    }

    #[test]
    fn report_json_round_trips(key in "[a-z]{1,8}", value: i64, method in "[a-z-]{1,12}") {
        let mut r = AnalysisReport::new("s:3");
        r.record(&key, value, &method);
        r.finish();
        let back = AnalysisReport::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wreath_formula_matches_orbit_count(i in 0usize..SMALL_TRANSITIVE.len(), j in 0usize..TOPS.len()) {
        let l = group(SMALL_TRANSITIVE[i]);
        let p = group(TOPS[j]);
        let k = p.degree();
        prop_assume!(l.degree().pow(k as u32) <= 30_000);
        let r_l = regular_suborbits(&l).unwrap().count as u64;
        let prof = profile(&p, &(1..=k).collect::<Vec<_>>()).unwrap();
        let formula = r_wreath_formula(r_l, &p.order(), prof.d, k, &prof.t).unwrap();
        let space = ProductActionSpace::new(l.degree(), k, 100_000).unwrap();
        let brute = r_wreath_brute(&space, &l, &p).unwrap();
        prop_assert_eq!(formula.to_u64().unwrap(), brute);
    }

    #[test]
    fn spec_strings_round_trip(i in 0usize..SMALL_TRANSITIVE.len(), j in 0usize..TOPS.len()) {
        let s = SMALL_TRANSITIVE[i];
        prop_assert_eq!(parse(s).unwrap().to_string(), s);
        let w = format!("wr:{s}|{}", TOPS[j]);
        prop_assert_eq!(parse(&w).unwrap().to_string(), w);
    }
}
