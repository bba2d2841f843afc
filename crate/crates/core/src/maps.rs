//! Structural maps between partition families: the shift maps and their right
//! inverse, the uncrossing maps, `halve`, and the Dyck path bijections.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::enumerate::{DyckPath, Step};
use crate::error::{arg, Error, Result};
use crate::group::GroupElement;
use crate::partition::{arcs_cross, Ground, GroundKind, LabeledSetPartition};

/// Moves every arc to new matrix positions; `place` receives 0-based
/// positions in the source ground and returns positions in `target`, or
/// `None` to drop the arc.
fn reposition<F>(lambda: &LabeledSetPartition, target: Ground, place: F) -> Result<LabeledSetPartition>
where
    F: Fn(usize, usize) -> Option<(usize, usize)>,
{
    let source = lambda.ground();
    let mut arcs = Vec::with_capacity(lambda.arc_count());
    for a in lambda.arcs() {
        let r = source.position(a.i).expect("arc in ground");
        let c = source.position(a.j).expect("arc in ground");
        if let Some((r2, c2)) = place(r, c) {
            arcs.push((target.value(r2), target.value(c2), a.label.clone()));
        }
    }
    LabeledSetPartition::from_arcs(target, lambda.group().clone(), arcs)
}

/// The ground one column wider: `A(n) → A(n+1)`, `D(n) → B(n)`, `B(n) → D(n+1)`.
pub fn shifted_ground(ground: Ground) -> Ground {
    match ground.kind {
        GroundKind::A => Ground::a(ground.n + 1),
        GroundKind::D => Ground::b(ground.n),
        GroundKind::B => Ground::d(ground.n + 1),
    }
}

/// The inverse of [`shifted_ground`], if it exists.
pub fn unshifted_ground(ground: Ground) -> Option<Ground> {
    match ground.kind {
        GroundKind::A => ground.n.checked_sub(1).map(Ground::a),
        GroundKind::B => Some(Ground::d(ground.n)),
        GroundKind::D => ground.n.checked_sub(1).map(Ground::b),
    }
}

/// Moves the matrix of `lambda` one column to the right. On `A(n)` this is
/// `(i,j) ↦ (i,j+1)`; it also realizes the maps `P^D(n) → P^B(n)` and
/// `P^B(n) → P^D(n+1)`.
pub fn shift(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    reposition(lambda, shifted_ground(lambda.ground()), |r, c| Some((r, c + 1)))
}

fn expect_kind(lambda: &LabeledSetPartition, kind: GroundKind) -> Result<()> {
    if lambda.ground().kind != kind {
        return Err(Error::UnsupportedGround(format!("expected a type {kind:?} ground, got {}", lambda.ground())));
    }
    Ok(())
}

/// `Π(n, 𝔸) → Π(n+1, 𝔸)`.
pub fn shift_a(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    expect_kind(lambda, GroundKind::A)?;
    shift(lambda)
}

/// `P^D(n, 𝔸) → P^B(n, 𝔸)`.
pub fn shift_d_to_b(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    expect_kind(lambda, GroundKind::D)?;
    shift(lambda)
}

/// `P^B(n, 𝔸) → P^D(n+1, 𝔸)`.
pub fn shift_b_to_d(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    expect_kind(lambda, GroundKind::B)?;
    shift(lambda)
}

/// Right inverse of [`shift`] on 2-regular partitions: delete the first
/// column and last row of the matrix, then clear the diagonal.
pub fn unshift(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    if !lambda.classify().two_regular {
        return arg(format!("{} is not 2-regular", lambda.to_text()));
    }
    let target = unshifted_ground(lambda.ground())
        .ok_or_else(|| Error::Argument(format!("{} has no smaller ground", lambda.ground())))?;
    reposition(lambda, target, |r, c| (c - 1 > r).then_some((r, c - 1)))
}

fn least_crossing(arcs: &[(i32, i32)]) -> Option<(usize, usize)> {
    for a in 0..arcs.len() {
        for b in a + 1..arcs.len() {
            if arcs_cross(arcs[a], arcs[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Replaces the crossing arcs `(i,k),(j,l)` with `i<j<k<l` by `(i,l),(j,k)`.
fn resolve(arcs: &mut [(i32, i32)], a: usize, b: usize) {
    let (p, q) = (arcs[a], arcs[b]);
    let (outer, inner) = if p.0 < q.0 { ((p.0, q.1), (q.0, p.1)) } else { ((q.0, p.1), (p.0, q.1)) };
    arcs[a] = outer;
    arcs[b] = inner;
    arcs.sort_unstable();
}

/// Repeatedly turns the lexicographically least crossing into a nesting until
/// the partition is noncrossing. Labels are ignored.
pub fn uncross(lambda: &LabeledSetPartition) -> LabeledSetPartition {
    let mut arcs = lambda.arc_pairs();
    while let Some((a, b)) = least_crossing(&arcs) {
        resolve(&mut arcs, a, b);
    }
    LabeledSetPartition::unlabeled_from_arcs(lambda.ground(), &arcs).expect("uncrossing keeps a valid arc set")
}

/// [`uncross`] with each crossing pair chosen uniformly at random.
pub fn uncross_random<R: Rng + ?Sized>(lambda: &LabeledSetPartition, rng: &mut R) -> LabeledSetPartition {
    let mut arcs = lambda.arc_pairs();
    loop {
        let mut crossings = Vec::new();
        for a in 0..arcs.len() {
            for b in a + 1..arcs.len() {
                if arcs_cross(arcs[a], arcs[b]) {
                    crossings.push((a, b));
                }
            }
        }
        match crossings.choose(rng) {
            Some(&(a, b)) => resolve(&mut arcs, a, b),
            None => break,
        }
    }
    LabeledSetPartition::unlabeled_from_arcs(lambda.ground(), &arcs).expect("uncrossing keeps a valid arc set")
}

/// Uncrosses a partition of `{0} ∪ [±n]` and removes zero from its block,
/// giving a partition of `[±n]`.
pub fn uncross_b(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    expect_kind(lambda, GroundKind::B)?;
    let blocks: Vec<Vec<i32>> = uncross(lambda)
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().filter(|&x| x != 0).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    LabeledSetPartition::unlabeled(Ground::d(lambda.ground().n), &blocks)
}

type ArcPair = (i32, i32);

/// The arcs `(-i,i)` of a partition of `[±n]`, by increasing `i`, and the
/// remaining arcs.
fn split_self_mirror(lambda: &LabeledSetPartition) -> Result<(Vec<i32>, Vec<ArcPair>)> {
    expect_kind(lambda, GroundKind::D)?;
    let plain = lambda.forget_labels();
    if plain.negate()? != plain || !plain.classify().noncrossing {
        return arg(format!("{} is not a noncrossing partition equal to its negative", plain.to_text()));
    }
    let (mirror, rest): (Vec<ArcPair>, Vec<ArcPair>) = plain.arc_pairs().into_iter().partition(|&(i, j)| i == -j);
    let mut tops: Vec<i32> = mirror.into_iter().map(|(_, j)| j).collect();
    tops.sort_unstable();
    Ok((tops, rest))
}

/// Replaces the arcs `(-i_1,i_1),…,(-i_ℓ,i_ℓ)` by crossing pairs
/// `(-i_{2k},i_{2k-1}),(-i_{2k-1},i_{2k})`, starting from `i_2` and routing
/// `i_1` through zero when `ℓ` is odd.
fn cross_pairs(tops: &[i32], with_zero: bool) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    let rest = if with_zero {
        out.push((-tops[0], 0));
        out.push((0, tops[0]));
        &tops[1..]
    } else {
        tops
    };
    for pair in rest.chunks(2) {
        out.push((-pair[1], pair[0]));
        out.push((-pair[0], pair[1]));
    }
    out
}

/// Inverse of [`uncross_b`] on `NC~^B(n)`.
pub fn uncross_b_inverse(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    let (tops, mut arcs) = split_self_mirror(lambda)?;
    arcs.extend(cross_pairs(&tops, tops.len() % 2 == 1));
    LabeledSetPartition::unlabeled_from_arcs(Ground::b(lambda.ground().n), &arcs)
}

/// Inverse of [`uncross`] on `NC~^D(n)`; the input needs an even number of
/// arcs `(-i,i)`.
pub fn uncross_d_inverse(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    let (tops, mut arcs) = split_self_mirror(lambda)?;
    if tops.len() % 2 == 1 {
        return arg("an odd number of blocks equal to their negative");
    }
    arcs.extend(cross_pairs(&tops, false));
    LabeledSetPartition::unlabeled_from_arcs(lambda.ground(), &arcs)
}

/// Keeps the arcs `(i,j)` with `i + j ≤ 0` and reads `{0} ∪ [±n]` or `[±n]`
/// as `[2n+1]` or `[2n]` in order.
pub fn halve(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    let ground = lambda.ground();
    if !ground.is_signed() {
        return Err(Error::UnsupportedGround(format!("halve needs a signed ground, got {ground}")));
    }
    if !lambda.is_type_symmetric() {
        return arg(format!("{} is not type-symmetric", lambda.to_text()));
    }
    let target = Ground::a(ground.len() as u32);
    let arcs: Vec<(i32, i32, GroupElement)> = lambda
        .arcs()
        .iter()
        .filter(|a| a.i + a.j <= 0)
        .map(|a| {
            let r = ground.position(a.i).expect("arc in ground") as i32 + 1;
            let c = ground.position(a.j).expect("arc in ground") as i32 + 1;
            (r, c, a.label.clone())
        })
        .collect();
    LabeledSetPartition::from_arcs(target, lambda.group().clone(), arcs)
}

/// Builds the Dyck path of semilength `m` whose valleys are exactly `valleys`.
fn path_through_valleys(m: usize, valleys: &[(i64, i64)]) -> Result<DyckPath> {
    if m == 0 {
        return DyckPath::new(Vec::new());
    }
    let mut points = vec![(0i64, 0i64)];
    points.extend_from_slice(valleys);
    points.push((2 * m as i64, 0));
    let mut steps = Vec::with_capacity(2 * m);
    for w in points.windows(2) {
        let (dx, dh) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if (dx + dh) % 2 != 0 || dx + dh < 2 || dx - dh < 2 {
            return arg(format!("valleys {valleys:?} do not come from a Dyck path"));
        }
        steps.extend(std::iter::repeat_n(Step::U, ((dx + dh) / 2) as usize));
        steps.extend(std::iter::repeat_n(Step::D, ((dx - dh) / 2) as usize));
    }
    DyckPath::new(steps)
}

/// The Dyck path with a valley at `(j+i-1, j-i-1)` for each arc `(i,j)`,
/// reading the ground as `[m]` in order. Nonnesting partitions of `[m]` map
/// bijectively onto Dyck paths of semilength `m`.
pub fn dyck_from_nonnesting(lambda: &LabeledSetPartition) -> Result<DyckPath> {
    if !lambda.classify().nonnesting {
        return arg(format!("{} has nesting arcs", lambda.to_text()));
    }
    let ground = lambda.ground();
    let valleys: Vec<(i64, i64)> = lambda
        .arcs()
        .iter()
        .map(|a| {
            let i = ground.position(a.i).expect("arc in ground") as i64 + 1;
            let j = ground.position(a.j).expect("arc in ground") as i64 + 1;
            (j + i - 1, j - i - 1)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    path_through_valleys(ground.len(), &valleys)
}

fn arcs_from_valleys(path: &DyckPath) -> Vec<(i32, i32)> {
    path.valleys().into_iter().map(|(x, h)| (((x - h) / 2) as i32, ((x + h) / 2 + 1) as i32)).collect()
}

/// Inverse of [`dyck_from_nonnesting`] onto `NN(m)`.
pub fn nonnesting_from_dyck(path: &DyckPath) -> Result<LabeledSetPartition> {
    LabeledSetPartition::unlabeled_from_arcs(Ground::a(path.semilength() as u32), &arcs_from_valleys(path))
}

/// Inverse of [`dyck_from_nonnesting`] onto `NN^B(n)`, for symmetric paths of
/// semilength `2n`.
pub fn nonnesting_b_from_dyck(path: &DyckPath) -> Result<LabeledSetPartition> {
    if !path.is_symmetric() || path.semilength() % 2 == 1 {
        return arg(format!("{path} is not a symmetric path with 4n steps"));
    }
    let ground = Ground::d((path.semilength() / 2) as u32);
    let arcs: Vec<(i32, i32)> = arcs_from_valleys(path)
        .into_iter()
        .map(|(i, j)| (ground.value(i as usize - 1), ground.value(j as usize - 1)))
        .collect();
    LabeledSetPartition::unlabeled_from_arcs(ground, &arcs)
}

/// Step `k` goes up when `k` is the smaller element of its pair.
pub fn matching_to_dyck(lambda: &LabeledSetPartition) -> Result<DyckPath> {
    let blocks = lambda.blocks();
    if blocks.iter().any(|b| b.len() != 2) {
        return arg(format!("{} is not a perfect matching", lambda.to_text()));
    }
    if !lambda.classify().noncrossing {
        return arg(format!("{} is crossing", lambda.to_text()));
    }
    let openers: BTreeSet<i32> = blocks.iter().map(|b| b[0]).collect();
    let steps =
        lambda.ground().elements().into_iter().map(|x| if openers.contains(&x) { Step::U } else { Step::D }).collect();
    DyckPath::new(steps)
}

/// Inverse of [`matching_to_dyck`]: each down step closes the most recent
/// open up step.
pub fn dyck_to_matching(path: &DyckPath) -> LabeledSetPartition {
    let mut open = Vec::new();
    let mut arcs = Vec::new();
    for (k, s) in path.steps().iter().enumerate() {
        let pos = k as i32 + 1;
        match s {
            Step::U => open.push(pos),
            Step::D => arcs.push((open.pop().expect("Dyck path"), pos)),
        }
    }
    LabeledSetPartition::unlabeled_from_arcs(Ground::a(path.steps().len() as u32), &arcs)
        .expect("a Dyck path gives a matching")
}

/// Whether some block starts right after another block ends.
pub fn has_abutting_blocks(lambda: &LabeledSetPartition) -> bool {
    let blocks = lambda.blocks();
    let ends: BTreeSet<i32> = blocks.iter().map(|b| b[b.len() - 1] + 1).collect();
    blocks.iter().any(|b| ends.contains(&b[0]))
}

/// Block sizes of a partition in increasing order, used to compare types.
pub fn block_type(lambda: &LabeledSetPartition) -> Vec<usize> {
    let mut sizes: Vec<usize> = lambda.blocks().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

/// How many times each image occurs, used to check that a map is injective.
pub fn fibre_sizes<I>(images: I) -> HashMap<LabeledSetPartition, usize>
where
    I: IntoIterator<Item = LabeledSetPartition>,
{
    let mut out = HashMap::new();
    for p in images {
        *out.entry(p).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{count, enumerate, enumerate_dyck, Family, FamilySpec};
    use crate::group::GroupSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn z(m: u32) -> GroupSpec {
        GroupSpec::cyclic(m)
    }

    fn labeled(ground: Ground, g: &GroupSpec, arcs: &[(i32, i32, i64)]) -> LabeledSetPartition {
        LabeledSetPartition::from_arcs(
            ground,
            g.clone(),
            arcs.iter().map(|&(i, j, v)| (i, j, g.element(&[v]).unwrap())),
        )
        .unwrap()
    }

    fn blocks(ground: Ground, blocks: &[&[i32]]) -> LabeledSetPartition {
        let b: Vec<Vec<i32>> = blocks.iter().map(|x| x.to_vec()).collect();
        LabeledSetPartition::unlabeled(ground, &b).unwrap()
    }

    #[test]
    fn shift_display() {
        let g = z(5);
        let lambda = labeled(Ground::a(5), &g, &[(1, 2, 1), (2, 4, 2), (3, 5, 3)]);
        let image = labeled(Ground::a(6), &g, &[(1, 3, 1), (2, 5, 2), (3, 6, 3)]);
        assert_eq!(shift_a(&lambda).unwrap(), image);
        assert_eq!(unshift(&image).unwrap(), lambda);
        assert_eq!(
            shift_a(&LabeledSetPartition::empty(Ground::a(2), g.clone())).unwrap(),
            LabeledSetPartition::empty(Ground::a(3), g.clone())
        );
        assert_eq!(
            unshift(&LabeledSetPartition::empty(Ground::a(1), g.clone())).unwrap(),
            LabeledSetPartition::empty(Ground::a(0), g)
        );
    }

    #[test]
    fn unshift_rejects_cover_arcs() {
        let p = blocks(Ground::a(3), &[&[1, 2], &[3]]);
        assert!(matches!(unshift(&p), Err(Error::Argument(_))));
    }

    #[test]
    fn shift_round_trip_and_image() {
        let spec = FamilySpec::single(Family::Pi, 4, z(3)).unwrap();
        let mut images = HashSet::new();
        for lambda in enumerate(&spec) {
            let image = shift_a(&lambda).unwrap();
            assert!(image.classify().two_regular);
            assert_eq!(image.block_count(), lambda.block_count() + 1);
            assert_eq!(unshift(&image).unwrap(), lambda);
            images.insert(image);
        }
        let regular =
            enumerate(&FamilySpec::single(Family::Pi, 5, z(3)).unwrap()).filter(|p| p.classify().two_regular).count();
        assert_eq!(images.len(), regular);
    }

    #[test]
    fn type_b_and_d_shift_displays() {
        let g = z(7);
        let (a, b) = (1, 2);
        let d3 = labeled(Ground::d(3), &g, &[(-3, -2, a), (-2, 1, b), (-1, 2, 7 - b), (2, 3, 7 - a)]);
        let b3 = labeled(Ground::b(3), &g, &[(-3, -1, a), (-2, 1, b), (-1, 2, 7 - b), (1, 3, 7 - a)]);
        let d4 = labeled(Ground::d(4), &g, &[(-4, -1, a), (-3, 2, b), (-2, 3, 7 - b), (1, 4, 7 - a)]);
        assert_eq!(shift_d_to_b(&d3).unwrap(), b3);
        assert_eq!(shift_b_to_d(&b3).unwrap(), d4);
        assert_eq!(unshift(&d4).unwrap(), b3);
        assert_eq!(unshift(&b3).unwrap(), d3);
        assert!(matches!(shift_d_to_b(&b3), Err(Error::UnsupportedGround(_))));
    }

    #[test]
    fn signed_shifts_land_in_two_regular_members() {
        for (source, target) in [(Family::PD, Family::PB), (Family::PB, Family::PD)] {
            for n in 1..=3u32 {
                let spec = FamilySpec::single(source, n, z(3)).unwrap();
                let images: HashSet<_> = enumerate(&spec)
                    .map(|p| {
                        let image = shift(&p).unwrap();
                        assert!(image.classify().two_regular && image.is_type_symmetric());
                        image
                    })
                    .collect();
                let m = if source == Family::PB { n + 1 } else { n };
                let regular = enumerate(&FamilySpec::single(target, m, z(3)).unwrap())
                    .filter(|p| p.classify().two_regular)
                    .count();
                assert_eq!(images.len(), regular);
            }
        }
    }

    fn check_restriction<F, G>(source: FamilySpec, keep: F, target: FamilySpec, image_set: G)
    where
        F: Fn(&LabeledSetPartition) -> bool,
        G: Fn(&LabeledSetPartition) -> bool,
    {
        let images = fibre_sizes(enumerate(&source).filter(|p| keep(p)).map(|p| shift(&p).unwrap()));
        assert!(images.values().all(|&k| k == 1), "{source} is not injective");
        assert!(images.keys().all(&image_set), "{source} leaves the image set");
        let expected = enumerate(&target).filter(|p| image_set(p)).count();
        assert_eq!(images.len(), expected, "{source}");
    }

    #[test]
    fn shift_restrictions_type_a() {
        for n in 0..=5u32 {
            for g in [GroupSpec::unlabeled(), z(3)] {
                if n == 5 && g.order() > 2 {
                    continue;
                }
                let pi = |m| FamilySpec::single(Family::Pi, m, g.clone()).unwrap();
                check_restriction(
                    pi(n),
                    |p| p.classify().feasible,
                    pi(n + 1),
                    |p| p.classify().two_regular && !has_abutting_blocks(p),
                );
                let nc = |m| FamilySpec::single(Family::Nc, m, g.clone()).unwrap();
                check_restriction(nc(n), |p| p.classify().poor, nc(n + 1), |p| p.classify().two_regular);
            }
        }
    }

    #[test]
    fn shift_restrictions_types_b_and_d() {
        for n in 0..=3u32 {
            for g in [GroupSpec::unlabeled(), z(3)] {
                let f = |family, m| FamilySpec::single(family, m, g.clone()).unwrap();
                let regular_apart = |p: &LabeledSetPartition| p.classify().two_regular && !has_abutting_blocks(p);
                check_restriction(f(Family::PD, n), |p| p.classify().feasible, f(Family::PB, n), regular_apart);
                check_restriction(f(Family::PB, n), |p| p.classify().b_feasible, f(Family::PD, n + 1), regular_apart);
                check_restriction(
                    f(Family::NcTildeD, n),
                    |p| p.classify().poor,
                    f(Family::NcTildeB, n),
                    |p| p.classify().two_regular,
                );
                check_restriction(
                    f(Family::NcTildeB, n),
                    |p| p.classify().b_poor,
                    f(Family::NcTildeD, n + 1),
                    |p| p.classify().two_regular,
                );
            }
        }
    }

    #[test]
    fn uncross_examples() {
        let lambda = blocks(Ground::a(6), &[&[1, 4], &[2, 5], &[3, 6]]);
        assert_eq!(uncross(&lambda), blocks(Ground::a(6), &[&[1, 6], &[2, 5], &[3, 4]]));
        let lambda = blocks(Ground::a(7), &[&[1, 3, 4, 7], &[2, 6], &[5]]);
        let gamma = blocks(Ground::a(7), &[&[1, 7], &[2, 3, 4, 6], &[5]]);
        assert_eq!(uncross(&lambda), gamma);
        assert_eq!(uncross(&gamma), gamma);
    }

    #[test]
    fn uncross_is_confluent_and_odd() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lambda in enumerate(&FamilySpec::single(Family::Pi, 6, GroupSpec::unlabeled()).unwrap()) {
            let image = uncross(&lambda);
            assert!(image.classify().noncrossing);
            assert_eq!(image.block_count(), lambda.block_count());
            assert_eq!(uncross_random(&lambda, &mut rng), image);
        }
        for lambda in enumerate(&FamilySpec::single(Family::PB, 3, GroupSpec::unlabeled()).unwrap()) {
            assert_eq!(uncross(&lambda.negate().unwrap()), uncross(&lambda).negate().unwrap());
        }
    }

    #[test]
    fn uncross_restricts_to_bijection_on_nonnesting() {
        for n in 0..=7 {
            let images: HashSet<_> =
                enumerate(&FamilySpec::unlabeled(Family::Nn, n).unwrap()).map(|p| uncross(&p)).collect();
            assert_eq!(images.len() as u64, count(&FamilySpec::single(Family::Nc, n, GroupSpec::unlabeled()).unwrap()));
        }
    }

    #[test]
    fn uncross_b_display() {
        let lambda = blocks(Ground::b(3), &[&[-3, 1], &[-2, 0, 2], &[-1, 3]]);
        let image = blocks(Ground::d(3), &[&[-3, 3], &[-2, 2], &[-1, 1]]);
        assert_eq!(uncross_b(&lambda).unwrap(), image);
        let preimage = blocks(Ground::b(3), &[&[-3, 2], &[-2, 3], &[-1, 0, 1]]);
        assert_eq!(uncross_b_inverse(&image).unwrap(), preimage);
        assert_eq!(uncross_b(&preimage).unwrap(), image);
        let singletons = LabeledSetPartition::empty(Ground::b(2), GroupSpec::unlabeled());
        assert_eq!(uncross_b(&singletons).unwrap(), LabeledSetPartition::empty(Ground::d(2), GroupSpec::unlabeled()));
    }

    #[test]
    fn uncross_b_and_d_are_bijections() {
        for n in 0..=4 {
            let b = FamilySpec::single(Family::NcTildeB, n, GroupSpec::unlabeled()).unwrap();
            let mut seen = HashSet::new();
            for lambda in enumerate(&b) {
                let image = uncross_b(&lambda).unwrap();
                assert!(image.classify().noncrossing);
                assert_eq!(image.negate().unwrap(), image);
                let k = lambda.block_count();
                assert!(image.block_count() == k || image.block_count() + 1 == k);
                assert_eq!(uncross_b_inverse(&image).unwrap(), lambda);
                seen.insert(image);
            }
            assert_eq!(seen.len() as u64, count(&b));
            let d = FamilySpec::single(Family::NcTildeD, n, GroupSpec::unlabeled()).unwrap();
            for lambda in enumerate(&d) {
                let image = uncross(&lambda);
                let self_neg = image.blocks().iter().filter(|blk| blk.contains(&-blk[0])).count();
                assert_eq!(self_neg % 2, 0);
                assert_eq!(uncross_d_inverse(&image).unwrap(), lambda);
            }
        }
    }

    #[test]
    fn halve_display() {
        let g = z(5);
        let (a, b) = (1, 2);
        let d3 = labeled(Ground::d(3), &g, &[(-3, -2, a), (-2, 1, b), (-1, 2, 5 - b), (2, 3, 5 - a)]);
        assert_eq!(halve(&d3).unwrap(), labeled(Ground::a(6), &g, &[(1, 2, a), (2, 4, b)]));
        let empty = LabeledSetPartition::empty(Ground::b(2), g.clone());
        assert_eq!(halve(&empty).unwrap(), LabeledSetPartition::empty(Ground::a(5), g));
    }

    #[test]
    fn halve_keeps_half_the_arcs() {
        for lambda in enumerate(&FamilySpec::single(Family::PB, 2, z(3)).unwrap()) {
            let kept = halve(&lambda).unwrap().arc_count();
            assert_eq!(2 * kept, lambda.arc_count());
            assert_eq!(lambda.negate().unwrap().negate_labels(), lambda);
        }
    }

    #[test]
    fn nonnesting_dyck_bijection() {
        let p = blocks(Ground::a(3), &[&[1, 2], &[3]]);
        let path = dyck_from_nonnesting(&p).unwrap();
        assert_eq!(path.valleys(), vec![(2, 0)]);
        assert_eq!(nonnesting_from_dyck(&path).unwrap(), p);
        let singletons = LabeledSetPartition::empty(Ground::a(3), GroupSpec::unlabeled());
        assert_eq!(dyck_from_nonnesting(&singletons).unwrap().to_string(), "UUUDDD");
        for n in 0..=6u32 {
            let images: HashSet<_> = enumerate(&FamilySpec::unlabeled(Family::Nn, n).unwrap())
                .map(|p| {
                    let path = dyck_from_nonnesting(&p).unwrap();
                    assert_eq!(nonnesting_from_dyck(&path).unwrap(), p);
                    path
                })
                .collect();
            assert_eq!(images.len(), enumerate_dyck(n as usize).len());
        }
        let nesting = blocks(Ground::a(4), &[&[1, 4], &[2, 3]]);
        assert!(matches!(dyck_from_nonnesting(&nesting), Err(Error::Argument(_))));
    }

    #[test]
    fn nonnesting_b_maps_to_symmetric_paths() {
        for n in 0..=4u32 {
            let mut seen = HashSet::new();
            for p in enumerate(&FamilySpec::unlabeled(Family::NnB, n).unwrap()) {
                let path = dyck_from_nonnesting(&p).unwrap();
                assert!(path.is_symmetric());
                assert_eq!(nonnesting_b_from_dyck(&path).unwrap(), p);
                seen.insert(path);
            }
            let symmetric = enumerate_dyck(2 * n as usize).into_iter().filter(|d| d.is_symmetric()).count();
            assert_eq!(seen.len(), symmetric);
        }
    }

    #[test]
    fn matching_examples() {
        let m = |b: &[&[i32]]| blocks(Ground::a(b.len() as u32 * 2), b);
        assert_eq!(matching_to_dyck(&m(&[&[1, 2]])).unwrap().to_string(), "UD");
        assert_eq!(matching_to_dyck(&m(&[&[1, 4], &[2, 3]])).unwrap().to_string(), "UUDD");
        assert_eq!(matching_to_dyck(&m(&[&[1, 2], &[3, 4]])).unwrap().to_string(), "UDUD");
        for path in enumerate_dyck(4) {
            assert_eq!(matching_to_dyck(&dyck_to_matching(&path)).unwrap(), path);
        }
        let triple = blocks(Ground::a(3), &[&[1, 2, 3]]);
        assert!(matches!(matching_to_dyck(&triple), Err(Error::Argument(_))));
    }
}
