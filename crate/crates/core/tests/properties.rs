//! Randomized properties over sizes beyond the exhaustive checks.

use arcact::action::{plus, plus_involution, plus_via_matrix};
use arcact::maps::{shift, uncross, unshift};
use arcact::oeis::{parse_bfile, to_bfile};
use arcact::partition::arcs_of;
use arcact::poly::BiPoly;
use arcact::superchar::{superclass_reduce, theta, UnitriMatrix};
use arcact::{Ground, GroupElement, GroupSpec, LabeledSetPartition};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Blocks of `[n]` from a restricted growth string built out of `choices`.
fn blocks_from_choices(n: usize, choices: &[u32]) -> Vec<Vec<i32>> {
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for (x, &choice) in choices.iter().enumerate().take(n) {
        let b = choice as usize % (blocks.len() + 1);
        if b == blocks.len() {
            blocks.push(vec![x as i32 + 1]);
        } else {
            blocks[b].push(x as i32 + 1);
        }
    }
    blocks
}

fn labeled(n: usize, modulus: u32, choices: &[u32], labels: &[u32]) -> LabeledSetPartition {
    let blocks = blocks_from_choices(n, choices);
    let arcs: Vec<(i32, i32, GroupElement)> = arcs_of(&blocks)
        .unwrap()
        .into_iter()
        .zip(labels)
        .map(|((i, j), &l)| (i, j, GroupElement::new(vec![1 + l % (modulus - 1)])))
        .collect();
    LabeledSetPartition::from_arcs(Ground::a(n as u32), GroupSpec::cyclic(modulus), arcs).unwrap()
}

/// A labeled partition of `[n]`, `n ≤ 9`, over `Z/m` with `2 ≤ m ≤ 5`.
fn partition() -> impl Strategy<Value = LabeledSetPartition> {
    (0usize..=9, 2u32..=5, prop::collection::vec(any::<u32>(), 9), prop::collection::vec(any::<u32>(), 9))
        .prop_map(|(n, m, choices, labels)| labeled(n, m, &choices, &labels))
}

/// A linear partition on the same ground and group as `lambda`.
fn linear_like(lambda: &LabeledSetPartition, keep: &[bool], labels: &[u32]) -> LabeledSetPartition {
    let n = lambda.ground().n as i32;
    let m = lambda.group().moduli()[0];
    let arcs: Vec<(i32, i32, GroupElement)> = (1..n)
        .filter(|&i| keep[i as usize % keep.len()])
        .map(|i| (i, i + 1, GroupElement::new(vec![1 + labels[i as usize % labels.len()] % (m - 1)])))
        .collect();
    LabeledSetPartition::from_arcs(lambda.ground(), lambda.group().clone(), arcs).unwrap()
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..6).prop_map(|terms| {
        let mut p = BiPoly::zero();
        for (dx, dy, c) in terms {
            p.add_term(dx, dy, BigInt::from(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn plus_agrees_with_matrix_route(
        lambda in partition(),
        keep in prop::collection::vec(any::<bool>(), 9),
        labels in prop::collection::vec(any::<u32>(), 9),
    ) {
        let alpha = linear_like(&lambda, &keep, &labels);
        prop_assert_eq!(plus(&alpha, &lambda).unwrap(), plus_via_matrix(&alpha, &lambda).unwrap());
    }

    #[test]
    fn plus_by_zero_is_identity(lambda in partition()) {
        let zero = LabeledSetPartition::empty(lambda.ground(), lambda.group().clone());
        prop_assert_eq!(plus(&zero, &lambda).unwrap(), lambda);
    }

    #[test]
    fn text_json_and_rook_round_trip(lambda in partition()) {
        let group = lambda.group().clone();
        prop_assert_eq!(&LabeledSetPartition::parse_text(lambda.ground(), group.clone(), &lambda.to_text()).unwrap(), &lambda);
        let json = serde_json::to_string(&lambda.to_json()).unwrap();
        let doc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&LabeledSetPartition::from_json(&doc, &group).unwrap(), &lambda);
        let rook = lambda.to_rook();
        prop_assert!(rook.is_valid());
        prop_assert_eq!(rook.is_noncrossing(), lambda.classify().noncrossing);
        prop_assert_eq!(LabeledSetPartition::from_rook(lambda.ground(), group, &rook).unwrap(), lambda);
    }

    #[test]
    fn plus_involution_squares_to_identity(choices in prop::collection::vec(any::<u32>(), 9), n in 0usize..=9) {
        let lambda = LabeledSetPartition::unlabeled(Ground::a(n as u32), &blocks_from_choices(n, &choices)).unwrap();
        let once = plus_involution(&lambda).unwrap();
        prop_assert_eq!(plus_involution(&once).unwrap(), lambda.clone());
        if n > 0 && lambda.classify().noncrossing {
            prop_assert_eq!(once.block_count(), n + 1 - lambda.block_count());
        }
        prop_assert_eq!(once.classify().noncrossing, lambda.classify().noncrossing);
    }

    #[test]
    fn uncross_is_noncrossing_and_keeps_arc_count(lambda in partition()) {
        let u = uncross(&lambda);
        prop_assert!(u.classify().noncrossing);
        prop_assert_eq!(u.arc_count(), lambda.arc_count());
        if lambda.classify().noncrossing {
            prop_assert_eq!(u, lambda.forget_labels());
        }
    }

    #[test]
    fn unshift_inverts_shift(lambda in partition()) {
        prop_assert_eq!(unshift(&shift(&lambda).unwrap()).unwrap(), lambda);
    }

    #[test]
    fn reduction_is_two_sided_invariant(seed in any::<u64>(), n in 2usize..=8, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = UnitriMatrix::random(n, p, &mut rng);
        let (u, v) = (UnitriMatrix::random(n, p, &mut rng), UnitriMatrix::random(n, p, &mut rng));
        let gamma = superclass_reduce(&g);
        prop_assert_eq!(superclass_reduce(&g.two_sided(&u, &v).unwrap()), gamma.clone());
        prop_assert_eq!(superclass_reduce(&UnitriMatrix::from_partition(&gamma, p).unwrap()), gamma);
    }

    #[test]
    fn inverse_is_inverse(seed in any::<u64>(), n in 1usize..=7, p in prop::sample::select(vec![2u32, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = UnitriMatrix::random(n, p, &mut rng);
        prop_assert!(g.mul(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn theta_is_a_character(p in prop::sample::select(vec![2u32, 3, 5, 7]), a in 0u32..7, b in 0u32..7) {
        let (a, b) = (a % p, b % p);
        let product = &theta(p, a).unwrap() * &theta(p, b).unwrap();
        prop_assert_eq!(product, theta(p, (a + b) % p).unwrap());
        prop_assert_eq!(theta(p, a).unwrap().conj(), theta(p, (p - a) % p).unwrap());
    }

    #[test]
    fn polynomial_ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(p.eval_int(2, 3) * q.eval_int(2, 3), (&p * &q).eval_int(2, 3));
    }

    #[test]
    fn bfile_round_trip(values in prop::collection::vec(any::<i64>(), 0..30), offset in -3i64..3) {
        let terms: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let parsed = parse_bfile(&to_bfile("A000000", &terms, offset)).unwrap();
        prop_assert_eq!(parsed.len(), terms.len());
        for (i, t) in terms.iter().enumerate() {
            prop_assert_eq!(&parsed[&(i as i64 + offset)], t);
        }
    }
}
