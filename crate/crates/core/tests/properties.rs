mod common;

use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcode::builder::{build_minimal_code, MinimalCodeRecipe};
use skewcode::code::{p_map, v_map, ConvCode};
use skewcode::distance::{self, DEFAULT_NODE_CAP, DEFAULT_STATE_CAP};
use skewcode::field::{Fe, Poly};
use skewcode::parse;
use skewcode::polymat::{permute_scale, strong_equivalence, Equivalence, EquivalenceCaps, PolyMatrix};
use skewcode::ring::RingElem;
use skewcode::skew::{SkewPoly, SkewRing};

fn contexts() -> Vec<SkewRing> {
    vec![
        parse::skew_ring("GF(2)", 7, "x^5").unwrap(),
        parse::skew_ring("GF(4)", 3, "x^2").unwrap(),
        parse::skew_ring("GF(4)", 5, "x^2").unwrap(),
        parse::skew_ring("GF(8)", 7, "perm:(1,2)(3,4,5)(6)(7)").unwrap(),
    ]
}

fn elem(s: &SkewRing, rng: &mut ChaCha8Rng) -> RingElem {
    let els: Vec<Fe> = s.field().elements().collect();
    s.ring().from_coeffs((0..s.ring().n()).map(|_| els[rng.gen_range(0..els.len())]).collect()).unwrap()
}

fn poly(s: &SkewRing, rng: &mut ChaCha8Rng, deg: usize) -> SkewPoly {
    s.from_coeffs((0..=deg).map(|_| elem(s, rng)).collect()).unwrap()
}

fn unit(s: &SkewRing, rng: &mut ChaCha8Rng) -> RingElem {
    loop {
        let a = elem(s, rng);
        if s.ring().is_unit(&a).unwrap() {
            return a;
        }
    }
}

/// A minimal code with random unit scalars on a component that sigma moves.
fn random_code(s: &SkewRing, rng: &mut ChaCha8Rng, d: usize) -> ConvCode {
    let moved: Vec<usize> = (1..=s.ring().r()).filter(|&l| s.sigma().l_order(l).unwrap() > 1).collect();
    let l = moved[rng.gen_range(0..moved.len())];
    let scalars = (0..d).map(|_| unit(s, rng)).collect();
    build_minimal_code(s, &MinimalCodeRecipe::with_scalars(l, scalars)).unwrap()
}

fn message(code: &ConvCode, rng: &mut ChaCha8Rng, deg: usize) -> Vec<Poly> {
    let f = code.generator().field();
    let els: Vec<Fe> = f.elements().collect();
    (0..code.k()).map(|_| Poly::new((0..=deg).map(|_| els[rng.gen_range(0..els.len())]).collect())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_and_v_are_inverse(ctx in 0..4usize, seed in any::<u64>(), deg in 0..5usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = poly(s, &mut rng, deg);
        prop_assert_eq!(p_map(s, &v_map(s, &f)).unwrap(), f);
    }

    #[test]
    fn crt_is_a_ring_isomorphism(ctx in 0..4usize, seed in any::<u64>()) {
        let s = &contexts()[ctx];
        let ring = s.ring();
        let f = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (elem(s, &mut rng), elem(s, &mut rng));
        let (pa, pb) = (ring.crt_forward(&a).unwrap(), ring.crt_forward(&b).unwrap());
        prop_assert_eq!(ring.crt_backward(&pa).unwrap(), a.clone());
        let pab = ring.crt_forward(&ring.mul(&a, &b)).unwrap();
        for k in 0..ring.r() {
            prop_assert_eq!(&pab[k], &pa[k].mul(&pb[k], f).rem(&ring.factors()[k], f).unwrap());
        }
    }

    #[test]
    fn skew_product_matches_definition(ctx in 0..4usize, seed in any::<u64>(), da in 0..4usize, db in 0..4usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (poly(s, &mut rng, da), poly(s, &mut rng, db));
        let image = common::image_of(s.sigma());
        let want = common::skew_mul(s.field(), &image, &common::to_lists(&a), &common::to_lists(&b));
        prop_assert_eq!(s.mul(&a, &b), common::from_lists(s, &want));
    }

    #[test]
    fn codes_are_sigma_cyclic(ctx in 0..4usize, seed in any::<u64>(), d in 1..4usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(s, &mut rng, d);
        let w = code.encode(&message(&code, &mut rng, 2)).unwrap();
        prop_assert!(code.contains(&w).unwrap());
        let shifted = s.mul(&s.constant(s.ring().x_pow(1)), &p_map(s, &w).unwrap());
        prop_assert!(code.contains(&v_map(s, &shifted)).unwrap());
    }

    #[test]
    fn right_inverse_holds(ctx in 0..4usize, seed in any::<u64>(), d in 0..4usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(s, &mut rng, d);
        let g = code.generator();
        let r = g.right_inverse().unwrap();
        prop_assert_eq!(g.mul(&r).unwrap(), PolyMatrix::identity(g.field().clone(), g.rows()));
        let h = g.parity_check().unwrap();
        prop_assert!(g.mul(&h).unwrap().is_zero());
        prop_assert!(g.is_minimal().unwrap());
        prop_assert!(code.forney().iter().all(|&f| f == d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bound_chain(ctx in 0..3usize, seed in any::<u64>(), d in 1..3usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(s, &mut rng, d);
        let (n, k, delta) = code.params();
        let r = distance::free_distance(code.generator(), DEFAULT_STATE_CAP).unwrap();
        let gr = distance::griesmer_bound(n, k, delta, code.memory(), s.field().size()).unwrap();
        let sg = distance::singleton_bound(n, k, delta).unwrap();
        prop_assert!(r.distance <= gr && gr <= sg, "{} {} {}", r.distance, gr, sg);
        prop_assert!(code.contains(&r.witness).unwrap());
        prop_assert_eq!(distance::weight(&r.witness), r.distance);
    }

    #[test]
    fn bruteforce_non_increasing_in_degree(ctx in 1..3usize, seed in any::<u64>(), d in 1..3usize) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(s, &mut rng, d);
        let g = code.generator();
        let mut last = usize::MAX;
        for deg in 0..=code.delta() + 2 {
            let b = distance::free_distance_bruteforce(g, deg, DEFAULT_NODE_CAP).unwrap();
            prop_assert!(b <= last);
            last = b;
        }
        prop_assert_eq!(last, distance::free_distance(g, DEFAULT_STATE_CAP).unwrap().distance);
    }

    #[test]
    fn strong_equivalence_finds_permuted_copy(ctx in 1..3usize, seed in any::<u64>()) {
        let s = &contexts()[ctx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(s, &mut rng, 1);
        let g = code.generator();
        let n = g.cols();
        let mut perm: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let nonzero: Vec<Fe> = g.field().elements().filter(|e| !e.is_zero()).collect();
        let scale = (0..n).map(|_| nonzero[rng.gen_range(0..nonzero.len())]).collect();
        let other = permute_scale(g, &Equivalence { perm, scale });
        let found = strong_equivalence(g, &other, EquivalenceCaps::default()).unwrap();
        let eq = found.expect("a permuted and scaled copy is equivalent");
        let mapped = permute_scale(&other, &eq);
        for row in mapped.entries() {
            prop_assert!(code.contains(row).unwrap());
        }
    }
}

#[test]
fn bruteforce_matches_plain_enumeration() {
    let s = &contexts()[1];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 1..=2 {
        let code = random_code(s, &mut rng, d);
        let g = code.generator();
        let lists: Vec<Vec<Vec<Fe>>> =
            g.entries().iter().map(|r| r.iter().map(|p| p.coeffs().to_vec()).collect()).collect();
        for deg in 0..=3 {
            let want = common::naive_distance(g.field(), &lists, deg);
            assert_eq!(distance::free_distance_bruteforce(g, deg, DEFAULT_NODE_CAP).unwrap(), want, "d={d} deg={deg}");
        }
    }
}
