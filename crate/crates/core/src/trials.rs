//! Property checks that back up the identity suite: exhaustive where cheap,
//! seeded random trials where not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{plus, plus_via_matrix};
use crate::enumerate::{enumerate, Family, FamilySpec};
use crate::error::Result;
use crate::group::GroupSpec;
use crate::maps::{uncross, uncross_random};
use crate::partition::{Ground, LabeledSetPartition};
use crate::superchar::{superclass_reduce, UnitriMatrix};

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub name: String,
    /// Number of cases examined before stopping.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `(family, n, linear family)` triples checked by [`plus_matches_matrix`].
fn plus_cases(n_max_a: u32, n_max_signed: u32) -> Vec<(Family, u32, Family)> {
    let mut cases: Vec<(Family, u32, Family)> = (0..=n_max_a).map(|n| (Family::Pi, n, Family::L)).collect();
    for n in 0..=n_max_signed {
        cases.push((Family::PB, n, Family::LB));
        cases.push((Family::PD, n, Family::LD));
    }
    cases
}

/// `α + Λ` computed on arcs and on rook matrices agree for every linear `α`
/// and every `Λ`, over `Z/2` and `Z/3`.
pub fn plus_matches_matrix(n_max_a: u32, n_max_signed: u32) -> Result<TrialReport> {
    let mut cases = 0;
    for (family, n, linear) in plus_cases(n_max_a, n_max_signed) {
        for group in [GroupSpec::cyclic(2), GroupSpec::cyclic(3)] {
            let alphas: Vec<LabeledSetPartition> = enumerate(&FamilySpec::single(linear, n, group.clone())?).collect();
            for lambda in enumerate(&FamilySpec::single(family, n, group.clone())?) {
                for alpha in &alphas {
                    cases += 1;
                    let (by_arcs, by_matrix) = (plus(alpha, &lambda)?, plus_via_matrix(alpha, &lambda)?);
                    if by_arcs != by_matrix {
                        return Ok(failed(
                            "plus-matrix",
                            cases,
                            format!(
                                "{} + {} over {group}: arcs give {}, matrices give {}",
                                alpha.to_text(),
                                lambda.to_text(),
                                by_arcs.to_text(),
                                by_matrix.to_text()
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(passed("plus-matrix", cases))
}

/// A random set partition of `[n]` from a random restricted growth string.
pub fn random_partition<R: Rng + ?Sized>(n: u32, rng: &mut R) -> LabeledSetPartition {
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for x in 1..=n as i32 {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![x]);
        } else {
            blocks[b].push(x);
        }
    }
    LabeledSetPartition::unlabeled(Ground::a(n), &blocks).expect("blocks partition the ground")
}

/// Resolving crossings in a random order reaches the same noncrossing partition.
pub fn uncross_confluence(trials: usize, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 1..=trials {
        let n = rng.gen_range(1..=9);
        let lambda = random_partition(n, &mut rng);
        let (canonical, random) = (uncross(&lambda), uncross_random(&lambda, &mut rng));
        if canonical != random {
            return failed(
                "uncross-confluence",
                case,
                format!(
                    "{}: least-first gives {}, random order gives {}",
                    lambda.to_text(),
                    canonical.to_text(),
                    random.to_text()
                ),
            );
        }
    }
    passed("uncross-confluence", trials)
}

/// The superclass representative of `g` is unchanged by `g ↦ 1 + u(g-1)v`.
pub fn reduction_invariance(trials: usize, seed: u64) -> Result<TrialReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 1..=trials {
        let n = rng.gen_range(2..=7);
        let p = [2, 3, 5][rng.gen_range(0..3)];
        let g = UnitriMatrix::random(n, p, &mut rng);
        let (u, v) = (UnitriMatrix::random(n, p, &mut rng), UnitriMatrix::random(n, p, &mut rng));
        let moved = g.two_sided(&u, &v)?;
        let (before, after) = (superclass_reduce(&g), superclass_reduce(&moved));
        if before != after {
            return Ok(failed(
                "reduction-invariance",
                case,
                format!("over F_{p}: g reduces to {}, 1 + u(g-1)v reduces to {}", before.to_text(), after.to_text()),
            ));
        }
    }
    Ok(passed("reduction-invariance", trials))
}

/// Rook matrix and back is the identity on `Π(n)` and on `P^B(n)`, `P^D(n)`.
pub fn rook_roundtrip(n_max_a: u32, n_max_signed: u32) -> Result<TrialReport> {
    let mut families: Vec<(Family, u32)> = (0..=n_max_a).map(|n| (Family::Pi, n)).collect();
    for n in 0..=n_max_signed {
        families.extend([(Family::PB, n), (Family::PD, n)]);
    }
    let mut cases = 0;
    for (family, n) in families {
        for group in [GroupSpec::cyclic(2), GroupSpec::cyclic(3)] {
            for lambda in enumerate(&FamilySpec::single(family, n, group.clone())?) {
                cases += 1;
                let rook = lambda.to_rook();
                let back = LabeledSetPartition::from_rook(lambda.ground(), group.clone(), &rook)?;
                if !rook.is_valid() || back != lambda {
                    return Ok(failed("rook-roundtrip", cases, format!("{} does not survive", lambda.to_text())));
                }
            }
        }
    }
    Ok(passed("rook-roundtrip", cases))
}

/// Every property check at the given sizes.
pub fn run_all(trials: usize, seed: u64) -> Result<Vec<TrialReport>> {
    Ok(vec![
        plus_matches_matrix(4, 2)?,
        uncross_confluence(trials, seed),
        reduction_invariance(trials, seed)?,
        rook_roundtrip(5, 3)?,
    ])
}

fn passed(name: &str, cases: usize) -> TrialReport {
    TrialReport { name: name.into(), cases, failure: None }
}

fn failed(name: &str, cases: usize, failure: String) -> TrialReport {
    TrialReport { name: name.into(), cases, failure: Some(failure) }
}
