//! The `+` action of linear partitions on labeled partitions, orbits under it,
//! and the involution `Λ ↦ Λ⁺`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::enumerate::{enumerate, Family, FamilySpec};
use crate::error::{arg, Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::partition::{Ground, GroundKind, LabeledArc, LabeledSetPartition};

fn check_operands(alpha: &LabeledSetPartition, lambda: &LabeledSetPartition) -> Result<()> {
    if alpha.ground() != lambda.ground() {
        return arg(format!("ground mismatch: {} acting on {}", alpha.ground(), lambda.ground()));
    }
    if alpha.group() != lambda.group() {
        return arg(format!("group mismatch: {} acting on {}", alpha.group(), lambda.group()));
    }
    if !alpha.arcs().iter().all(LabeledArc::is_cover) {
        return arg("the acting partition must have only cover arcs");
    }
    if alpha.ground().is_signed() && !alpha.is_type_symmetric() {
        return arg("the acting partition must be mirror symmetric on a signed ground");
    }
    Ok(())
}

/// `α + Λ`: cover arcs of `α` are added to `Λ`, coinciding labels are summed
/// and cancelling pairs removed; an arc `(j, j+1)` of `α` is inserted only
/// when `j` starts no arc of `Λ` and `j+1` ends none.
pub fn plus(alpha: &LabeledSetPartition, lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    check_operands(alpha, lambda)?;
    Ok(plus_unchecked(alpha, lambda))
}

pub(crate) fn plus_unchecked(alpha: &LabeledSetPartition, lambda: &LabeledSetPartition) -> LabeledSetPartition {
    let group = lambda.group();
    let lefts: HashSet<i32> = lambda.arcs().iter().map(|a| a.i).collect();
    let rights: HashSet<i32> = lambda.arcs().iter().map(|a| a.j).collect();
    let mut arcs: BTreeMap<(i32, i32), GroupElement> =
        lambda.arcs().iter().map(|a| ((a.i, a.j), a.label.clone())).collect();
    for a in alpha.arcs() {
        match arcs.get(&(a.i, a.j)) {
            Some(existing) => {
                let sum = group.add_unchecked(existing, &a.label);
                if sum.is_zero() {
                    arcs.remove(&(a.i, a.j));
                } else {
                    arcs.insert((a.i, a.j), sum);
                }
            }
            None => {
                if !lefts.contains(&a.i) && !rights.contains(&a.j) {
                    arcs.insert((a.i, a.j), a.label.clone());
                }
            }
        }
    }
    LabeledSetPartition::from_sorted_arcs_unchecked(
        lambda.ground(),
        group.clone(),
        arcs.into_iter().map(|((i, j), label)| LabeledArc { i, j, label }).collect(),
    )
}

/// `α + Λ` through matrices: add the rook matrices, then clear superdiagonal
/// entries lying strictly below a nonzero entry of their column or strictly
/// left of a nonzero entry of their row.
pub fn plus_via_matrix(alpha: &LabeledSetPartition, lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    check_operands(alpha, lambda)?;
    let group = lambda.group();
    let mut sum: BTreeMap<(usize, usize), GroupElement> = lambda.to_rook().entries;
    for (pos, v) in alpha.to_rook().entries {
        let total = match sum.get(&pos) {
            Some(w) => group.add_unchecked(w, &v),
            None => v,
        };
        if total.is_zero() {
            sum.remove(&pos);
        } else {
            sum.insert(pos, total);
        }
    }
    let cleared: Vec<(usize, usize)> = sum
        .keys()
        .filter(|&&(r, c)| c == r + 1)
        .filter(|&&(r, c)| sum.keys().any(|&(r2, c2)| (c2 == c && r2 < r) || (r2 == r && c2 > c)))
        .copied()
        .collect();
    for pos in cleared {
        sum.remove(&pos);
    }
    let mut rook = lambda.to_rook();
    rook.entries = sum;
    LabeledSetPartition::from_rook(lambda.ground(), group.clone(), &rook)
}

/// Relabels `alpha` into `target` by placing its labels in the trailing
/// coordinates, which is how `B` sits inside `A ⊕ B`.
fn embed_labels(alpha: &LabeledSetPartition, target: &GroupSpec) -> Result<LabeledSetPartition> {
    if alpha.group() == target {
        return Ok(alpha.clone());
    }
    let src = alpha.group().moduli();
    let dst = target.moduli();
    if !dst.ends_with(src) {
        return arg(format!("{} does not embed in {target}", alpha.group()));
    }
    let pad = dst.len() - src.len();
    let arcs = alpha.arcs().iter().map(|a| {
        let mut residues = vec![0u32; pad];
        residues.extend_from_slice(a.label.residues());
        (a.i, a.j, GroupElement::new(residues))
    });
    LabeledSetPartition::from_arcs(alpha.ground(), target.clone(), arcs)
}

/// One orbit of the linear group acting by `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// The 2-regular member when it is unique, else the first member found.
    pub representative: LabeledSetPartition,
    pub size: usize,
    /// Number of 2-regular members; the orbit theorems say this is always 1.
    pub two_regular_count: usize,
    pub members: Option<Vec<LabeledSetPartition>>,
}

/// Every element of the acting linear family, relabeled into `target`.
pub fn acting_elements(acting: &FamilySpec, target: &GroupSpec) -> Result<Vec<LabeledSetPartition>> {
    if !acting.family().is_linear() {
        return arg(format!("{} is not a linear family", acting.family()));
    }
    enumerate(acting).map(|a| embed_labels(&a, target)).collect()
}

fn orbit_of(lambda: &LabeledSetPartition, acting: &[LabeledSetPartition], keep_members: bool) -> OrbitReport {
    let mut seen: Vec<LabeledSetPartition> = Vec::new();
    let mut set = HashSet::new();
    for alpha in acting {
        let image = plus_unchecked(alpha, lambda);
        if set.insert(image.clone()) {
            seen.push(image);
        }
    }
    let regular: Vec<&LabeledSetPartition> = seen.iter().filter(|p| p.classify().two_regular).collect();
    let representative = if regular.len() == 1 { regular[0].clone() } else { seen[0].clone() };
    OrbitReport {
        representative,
        size: seen.len(),
        two_regular_count: regular.len(),
        members: keep_members.then_some(seen),
    }
}

/// The orbit of `lambda` under the linear family `acting`, computed by
/// applying every acting element.
pub fn orbit(lambda: &LabeledSetPartition, acting: &FamilySpec) -> Result<OrbitReport> {
    if acting.ground() != lambda.ground() {
        return arg(format!("{acting} acts on {}, not on {}", acting.ground(), lambda.ground()));
    }
    let elements = acting_elements(acting, lambda.group())?;
    Ok(orbit_of(lambda, &elements, true))
}

/// The acting family for a two-group family: `L`, `L^B` or `L^D` labeled by `B`.
pub fn acting_spec(spec: &FamilySpec) -> Result<FamilySpec> {
    if !spec.family().is_ab() {
        return arg(format!("{} is not a two-group family", spec.family()));
    }
    FamilySpec::single(spec.family().acting_family(), spec.n(), spec.groups()[1].clone())
}

/// Splits a two-group family into orbits, in order of first appearance.
pub fn orbit_decomposition(spec: &FamilySpec, keep_members: bool) -> Result<Vec<OrbitReport>> {
    let acting = acting_elements(&acting_spec(spec)?, &spec.label_group())?;
    let mut done: HashSet<LabeledSetPartition> = HashSet::new();
    let mut reports = Vec::new();
    for lambda in enumerate(spec) {
        if done.contains(&lambda) {
            continue;
        }
        let report = orbit_of(&lambda, &acting, true);
        if let Some(members) = &report.members {
            done.extend(members.iter().cloned());
        }
        reports.push(OrbitReport { members: if keep_members { report.members } else { None }, ..report });
    }
    Ok(reports)
}

/// Orbit sizes and how often each occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub orbits: usize,
    pub members: usize,
    pub size_histogram: BTreeMap<usize, usize>,
}

pub fn summarize(reports: &[OrbitReport]) -> OrbitSummary {
    let mut size_histogram = BTreeMap::new();
    for r in reports {
        *size_histogram.entry(r.size).or_insert(0) += 1;
    }
    OrbitSummary { orbits: reports.len(), members: reports.iter().map(|r| r.size).sum(), size_histogram }
}

/// The linear partition whose blocks are maximal runs of the ground:
/// `{{1..n}}`, `{{-n..n}}` or `{{-n..-1},{1..n}}`.
pub fn full_linear(ground: Ground) -> LabeledSetPartition {
    let values = ground.elements();
    let arcs: Vec<(i32, i32)> = values.windows(2).filter(|w| w[1] == w[0] + 1).map(|w| (w[0], w[1])).collect();
    LabeledSetPartition::unlabeled_from_arcs(ground, &arcs).expect("runs form a valid arc set")
}

/// `Λ⁺`: drop every cover arc, then join `i` to `i+1` whenever `i` ends its
/// block and `i+1` starts its block.
pub fn plus_involution(lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
    if !lambda.group().is_unlabeled() {
        return Err(Error::Unsupported(format!(
            "the involution is defined for unlabeled partitions, not over {}",
            lambda.group()
        )));
    }
    let ground = lambda.ground();
    debug_assert!(matches!(ground.kind, GroundKind::A | GroundKind::B | GroundKind::D));
    let lefts: HashSet<i32> = lambda.arcs().iter().map(|a| a.i).collect();
    let rights: HashSet<i32> = lambda.arcs().iter().map(|a| a.j).collect();
    let mut arcs: Vec<(i32, i32)> = lambda.arcs().iter().filter(|a| !a.is_cover()).map(|a| (a.i, a.j)).collect();
    let values = ground.elements();
    for w in values.windows(2) {
        let (i, j) = (w[0], w[1]);
        if j == i + 1 && !lefts.contains(&i) && !rights.contains(&j) {
            arcs.push((i, j));
        }
    }
    LabeledSetPartition::unlabeled_from_arcs(ground, &arcs)
}

/// Families the decomposition accepts.
pub fn two_group_families() -> [Family; 6] {
    [Family::PiAb, Family::NcAb, Family::PBAb, Family::PDAb, Family::NcTildeBAb, Family::NcTildeDAb]
}

/// Counts members of `spec` keyed by orbit size, used by identity checks.
pub fn orbit_size_counts(spec: &FamilySpec) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for r in orbit_decomposition(spec, false)? {
        *out.entry(r.size).or_insert(0) += r.size as u64;
    }
    Ok(out)
}

/// Orbits keyed by their representative, for lookups in tests.
pub fn orbits_by_representative(reports: &[OrbitReport]) -> HashMap<LabeledSetPartition, &OrbitReport> {
    reports.iter().map(|r| (r.representative.clone(), r)).collect()
}
