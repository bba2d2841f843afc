//! Exhaustive generators for every partition family, plus Dyck paths.
//!
//! All families are produced by one depth-first search over rook placements.
//! Rows of the rook matrix are decided in order; each row either stays empty
//! or receives one entry `(column, label)`, tried in the order "empty" first,
//! then by column, then by label index. That order is what "lexicographic
//! rook-matrix order" means throughout the crate.
//!
//! Type B and D families only choose arcs `(i, j)` with `i + j <= 0`; the mirror
//! arc `(-j, -i)` with the negated label is placed at the same time, so the
//! symmetry condition holds by construction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::group::{direct_sum, GroupElement, GroupSpec};
use crate::partition::{Ground, LabeledArc, LabeledSetPartition};

/// The partition families that can be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Pi,
    Nc,
    L,
    PiAb,
    NcAb,
    PB,
    PD,
    NcTildeB,
    NcTildeD,
    LB,
    LD,
    PBAb,
    PDAb,
    NcTildeBAb,
    NcTildeDAb,
    Nn,
    NnB,
}

const FAMILY_NAMES: [(Family, &str); 17] = [
    (Family::Pi, "PI"),
    (Family::Nc, "NC"),
    (Family::L, "L"),
    (Family::PiAb, "PI_AB"),
    (Family::NcAb, "NC_AB"),
    (Family::PB, "P_B"),
    (Family::PD, "P_D"),
    (Family::NcTildeB, "NC_TILDE_B"),
    (Family::NcTildeD, "NC_TILDE_D"),
    (Family::LB, "L_B"),
    (Family::LD, "L_D"),
    (Family::PBAb, "P_B_AB"),
    (Family::PDAb, "P_D_AB"),
    (Family::NcTildeBAb, "NC_TILDE_B_AB"),
    (Family::NcTildeDAb, "NC_TILDE_D_AB"),
    (Family::Nn, "NN"),
    (Family::NnB, "NN_B"),
];

/// Pairwise condition imposed on arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ArcRule {
    Free,
    Noncrossing,
    /// Crossings allowed only between an arc and its mirror.
    NcTilde,
    Nonnesting,
}

/// How many label groups a family needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    Unlabeled,
    Single,
    Pair,
}

impl Family {
    pub fn all() -> impl Iterator<Item = Family> {
        FAMILY_NAMES.iter().map(|(f, _)| *f)
    }

    pub fn name(self) -> &'static str {
        FAMILY_NAMES.iter().find(|(f, _)| *f == self).map(|(_, s)| *s).expect("every family is named")
    }

    pub fn ground(self, n: u32) -> Ground {
        use Family::*;
        match self {
            Pi | Nc | L | PiAb | NcAb | Nn => Ground::a(n),
            PB | NcTildeB | LB | PBAb | NcTildeBAb => Ground::b(n),
            PD | NcTildeD | LD | PDAb | NcTildeDAb | NnB => Ground::d(n),
        }
    }

    pub fn labeling(self) -> Labeling {
        use Family::*;
        match self {
            Nn | NnB => Labeling::Unlabeled,
            PiAb | NcAb | PBAb | PDAb | NcTildeBAb | NcTildeDAb => Labeling::Pair,
            _ => Labeling::Single,
        }
    }

    pub fn is_ab(self) -> bool {
        self.labeling() == Labeling::Pair
    }

    /// Families whose blocks are runs of consecutive integers.
    pub fn is_linear(self) -> bool {
        matches!(self, Family::L | Family::LB | Family::LD)
    }

    pub fn is_symmetric(self) -> bool {
        self.ground(1).is_signed()
    }

    pub(crate) fn rule(self) -> ArcRule {
        use Family::*;
        match self {
            Nc | NcAb => ArcRule::Noncrossing,
            NcTildeB | NcTildeD | NcTildeBAb | NcTildeDAb => ArcRule::NcTilde,
            Nn | NnB => ArcRule::Nonnesting,
            _ => ArcRule::Free,
        }
    }

    /// The linear family acting on this one by `+`.
    pub fn acting_family(self) -> Family {
        match self.ground(1).kind {
            crate::partition::GroundKind::A => Family::L,
            crate::partition::GroundKind::B => Family::LB,
            crate::partition::GroundKind::D => Family::LD,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        FAMILY_NAMES
            .iter()
            .find(|(_, name)| *name == key)
            .map(|(f, _)| *f)
            .ok_or_else(|| Error::Argument(format!("unknown family '{s}'")))
    }
}

/// A family together with its size parameter and label groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    family: Family,
    n: u32,
    groups: Vec<GroupSpec>,
}

impl FamilySpec {
    /// `groups` must hold none, one or two groups as the family requires.
    pub fn new(family: Family, n: i64, groups: Vec<GroupSpec>) -> Result<Self> {
        if n < 0 {
            return arg(format!("n must be nonnegative, got {n}"));
        }
        let n = u32::try_from(n).map_err(|_| Error::Argument(format!("n = {n} is too large")))?;
        let needed = match family.labeling() {
            Labeling::Unlabeled => 0,
            Labeling::Single => 1,
            Labeling::Pair => 2,
        };
        if groups.len() != needed {
            return arg(format!("{family} takes {needed} label group(s), got {}", groups.len()));
        }
        Ok(FamilySpec { family, n, groups })
    }

    /// Shorthand for single-group families.
    pub fn single(family: Family, n: u32, group: GroupSpec) -> Result<Self> {
        Self::new(family, n.into(), vec![group])
    }

    /// Shorthand for two-group families.
    pub fn pair(family: Family, n: u32, a: GroupSpec, b: GroupSpec) -> Result<Self> {
        Self::new(family, n.into(), vec![a, b])
    }

    /// Shorthand for the unlabeled families.
    pub fn unlabeled(family: Family, n: u32) -> Result<Self> {
        Self::new(family, n.into(), vec![])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn groups(&self) -> &[GroupSpec] {
        &self.groups
    }

    pub fn ground(&self) -> Ground {
        self.family.ground(self.n)
    }

    /// The group the labels of members live in.
    pub fn label_group(&self) -> GroupSpec {
        match self.family.labeling() {
            Labeling::Unlabeled => GroupSpec::unlabeled(),
            Labeling::Single => self.groups[0].clone(),
            Labeling::Pair => direct_sum(&self.groups[0], &self.groups[1]).sum,
        }
    }

    /// Product of the orders of all groups involved, used by scale guards.
    pub fn group_order(&self) -> u128 {
        self.groups.iter().map(|g| u128::from(g.order())).product()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.family, self.n)?;
        for g in &self.groups {
            write!(f, ", {g}")?;
        }
        f.write_str(")")
    }
}

/// Per-member statistics accepted by [`count_by`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Blocks,
    Arcs,
    CovArcs,
    NoncovArcs,
    Singletons,
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "blocks" => Statistic::Blocks,
            "arcs" => Statistic::Arcs,
            "cov_arcs" | "cov" => Statistic::CovArcs,
            "noncov_arcs" | "noncov" => Statistic::NoncovArcs,
            "singletons" => Statistic::Singletons,
            _ => return arg(format!("unknown statistic '{s}'")),
        })
    }
}

/// Depth-first search state shared by the iterator and the counting walks.
pub(crate) struct Engine {
    ground: Ground,
    group: GroupSpec,
    size: usize,
    rule: ArcRule,
    symmetric: bool,
    allow_self_mirror: bool,
    linear_only: bool,
    cover_labels: Vec<GroupElement>,
    other_labels: Vec<GroupElement>,
    cover_neg: Vec<usize>,
    other_neg: Vec<usize>,
    is_cover: Vec<Vec<bool>>,
    /// `(column, label index)` for every row holding an entry.
    row_entry: Vec<Option<(usize, usize)>>,
    col_used: Vec<bool>,
    forced: Vec<bool>,
    placed: Vec<(usize, usize)>,
    arc_count: usize,
    cover_count: usize,
    stack: Vec<Frame>,
    started: bool,
}

#[derive(Clone, Copy)]
struct Frame {
    row: usize,
    forced: bool,
    /// Next candidate to try: `None` means the empty row has been tried and
    /// no entry has been tried yet.
    cursor: Option<(usize, usize)>,
}

fn negation_table(group: &GroupSpec, labels: &[GroupElement]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| {
            let neg = group.neg_unchecked(l);
            labels.iter().position(|m| *m == neg).expect("label sets are closed under negation")
        })
        .collect()
}

impl Engine {
    pub(crate) fn new(spec: &FamilySpec) -> Self {
        let family = spec.family();
        let ground = spec.ground();
        let group = spec.label_group();
        let (cover_labels, other_labels) = if family.is_ab() {
            let ds = direct_sum(&spec.groups[0], &spec.groups[1]);
            (ds.b_labels(), ds.a_labels())
        } else {
            let all = group.nonzero_elements();
            (all.clone(), all)
        };
        let size = ground.len();
        let values = ground.elements();
        let is_cover = (0..size).map(|r| (0..size).map(|c| values[c] == values[r] + 1).collect()).collect();
        Engine {
            ground,
            size,
            rule: family.rule(),
            symmetric: family.is_symmetric(),
            allow_self_mirror: family == Family::NnB,
            linear_only: family.is_linear(),
            cover_neg: negation_table(&group, &cover_labels),
            other_neg: negation_table(&group, &other_labels),
            cover_labels,
            other_labels,
            group,
            is_cover,
            row_entry: vec![None; size],
            col_used: vec![false; size],
            forced: vec![false; size],
            placed: Vec::with_capacity(size),
            arc_count: 0,
            cover_count: 0,
            stack: Vec::with_capacity(size),
            started: false,
        }
    }

    fn mirror(&self, r: usize, c: usize) -> (usize, usize) {
        (self.size - 1 - c, self.size - 1 - r)
    }

    fn compatible(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match self.rule {
            ArcRule::Free => true,
            ArcRule::Noncrossing => !(lo.0 < hi.0 && hi.0 < lo.1 && lo.1 < hi.1),
            ArcRule::NcTilde => !(lo.0 < hi.0 && hi.0 < lo.1 && lo.1 < hi.1) || self.mirror(hi.0, hi.1) == lo,
            ArcRule::Nonnesting => !(lo.0 < hi.0 && hi.1 < lo.1),
        }
    }

    fn fits(&self, arc: (usize, usize)) -> bool {
        self.rule == ArcRule::Free || self.placed.iter().all(|&p| self.compatible(p, arc))
    }

    fn labels_for(&self, r: usize, c: usize) -> (&[GroupElement], &[usize]) {
        if self.is_cover[r][c] {
            (&self.cover_labels, &self.cover_neg)
        } else {
            (&self.other_labels, &self.other_neg)
        }
    }

    /// First admissible entry for row `r` at or after `(col, label)`.
    fn find(&self, r: usize, from: (usize, usize)) -> Option<(usize, usize)> {
        let (mut label_start, start_col) = (from.1, from.0);
        for c in start_col..self.size {
            let first = std::mem::replace(&mut label_start, 0);
            if self.col_used[c] || (self.linear_only && !self.is_cover[r][c]) {
                continue;
            }
            let (labels, neg) = self.labels_for(r, c);
            if first >= labels.len() {
                continue;
            }
            if self.symmetric {
                let (mr, mc) = self.mirror(r, c);
                if mr < r {
                    continue;
                }
                if mr == r {
                    if !self.allow_self_mirror || !self.fits((r, c)) {
                        continue;
                    }
                    if let Some(l) = (first..labels.len()).find(|&l| neg[l] == l) {
                        return Some((c, l));
                    }
                    continue;
                }
                if self.forced[mr] || self.col_used[mc] || mc == c {
                    continue;
                }
                if !self.fits((r, c)) || !self.fits((mr, mc)) || !self.compatible((r, c), (mr, mc)) {
                    continue;
                }
            } else if !self.fits((r, c)) {
                continue;
            }
            return Some((c, first));
        }
        None
    }

    fn commit(&mut self, r: usize, c: usize, label: usize) {
        let cover = self.is_cover[r][c];
        self.row_entry[r] = Some((c, label));
        self.col_used[c] = true;
        self.placed.push((r, c));
        self.arc_count += 1;
        self.cover_count += usize::from(cover);
        if self.symmetric {
            let (mr, mc) = self.mirror(r, c);
            if mr != r {
                let neg = if cover { self.cover_neg[label] } else { self.other_neg[label] };
                self.row_entry[mr] = Some((mc, neg));
                self.col_used[mc] = true;
                self.forced[mr] = true;
                self.placed.push((mr, mc));
                self.arc_count += 1;
                self.cover_count += usize::from(cover);
            }
        }
    }

    fn undo(&mut self, r: usize) {
        let Some((c, _)) = self.row_entry[r].take() else {
            return;
        };
        let cover = self.is_cover[r][c];
        self.col_used[c] = false;
        self.placed.pop();
        self.arc_count -= 1;
        self.cover_count -= usize::from(cover);
        if self.symmetric {
            let (mr, mc) = self.mirror(r, c);
            if mr != r {
                self.row_entry[mr] = None;
                self.col_used[mc] = false;
                self.forced[mr] = false;
                self.placed.pop();
                self.arc_count -= 1;
                self.cover_count -= usize::from(cover);
            }
        }
    }

    /// Pushes frames from `row` to the end, taking the empty choice for every
    /// free row. The empty row is always admissible, so this reaches a leaf.
    fn descend(&mut self, row: usize) {
        for r in row..self.size {
            self.stack.push(Frame { row: r, forced: self.forced[r], cursor: None });
        }
    }

    /// Moves to the next member. Returns `false` once the family is exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.descend(0);
            return true;
        }
        while let Some(frame) = self.stack.pop() {
            if frame.forced {
                continue;
            }
            let r = frame.row;
            let from = match (frame.cursor, self.row_entry[r]) {
                (None, _) => (r + 1, 0),
                (Some(_), Some((c, l))) => (c, l + 1),
                (Some(_), None) => unreachable!("a tried entry is still placed"),
            };
            self.undo(r);
            if let Some((c, l)) = self.find(r, from) {
                self.commit(r, c, l);
                self.stack.push(Frame { row: r, forced: false, cursor: Some((c, l)) });
                self.descend(r + 1);
                return true;
            }
        }
        false
    }

    /// Recursive walk used for counting; faster than [`Engine::advance`].
    pub(crate) fn walk<F: FnMut(&Engine)>(&mut self, row: usize, visit: &mut F) {
        if row == self.size {
            visit(self);
            return;
        }
        if self.forced[row] {
            self.walk(row + 1, visit);
            return;
        }
        self.walk(row + 1, visit);
        let mut from = (row + 1, 0);
        while let Some((c, l)) = self.find(row, from) {
            self.commit(row, c, l);
            self.walk(row + 1, visit);
            self.undo(row);
            from = (c, l + 1);
        }
    }

    pub(crate) fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub(crate) fn cover_count(&self) -> usize {
        self.cover_count
    }

    pub(crate) fn singleton_count(&self) -> usize {
        (0..self.size).filter(|&p| self.row_entry[p].is_none() && !self.col_used[p]).count()
    }

    pub(crate) fn current(&self) -> LabeledSetPartition {
        let arcs = (0..self.size)
            .filter_map(|r| {
                self.row_entry[r].map(|(c, l)| {
                    let (labels, _) = self.labels_for(r, c);
                    LabeledArc { i: self.ground.value(r), j: self.ground.value(c), label: labels[l].clone() }
                })
            })
            .collect();
        LabeledSetPartition::from_sorted_arcs_unchecked(self.ground, self.group.clone(), arcs)
    }
}

/// Lazy stream over the members of a family.
pub struct Members {
    engine: Engine,
}

impl Iterator for Members {
    type Item = LabeledSetPartition;
    fn next(&mut self) -> Option<Self::Item> {
        self.engine.advance().then(|| self.engine.current())
    }
}

/// Every member of the family exactly once, in lexicographic rook-matrix order.
pub fn enumerate(spec: &FamilySpec) -> Members {
    Members { engine: Engine::new(spec) }
}

/// Exact histogram of a statistic over the family, without materializing it.
pub fn count_by(spec: &FamilySpec, statistic: Statistic) -> BTreeMap<usize, u64> {
    let mut engine = Engine::new(spec);
    let size = engine.size;
    let mut hist = BTreeMap::new();
    engine.walk(0, &mut |e: &Engine| {
        let value = match statistic {
            Statistic::Blocks => size - e.arc_count(),
            Statistic::Arcs => e.arc_count(),
            Statistic::CovArcs => e.cover_count(),
            Statistic::NoncovArcs => e.arc_count() - e.cover_count(),
            Statistic::Singletons => e.singleton_count(),
        };
        *hist.entry(value).or_insert(0u64) += 1;
    });
    hist
}

/// Number of members of the family.
pub fn count(spec: &FamilySpec) -> u64 {
    let mut engine = Engine::new(spec);
    let mut total = 0u64;
    engine.walk(0, &mut |_| total += 1);
    total
}

/// Per-member statistics gathered by [`count_profiles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub arcs: usize,
    pub covers: usize,
    /// Singleton blocks `{i}` with `i != 0`.
    pub singletons: usize,
    /// Elements `i != 0` that both start and end an arc.
    pub middles: usize,
    pub zero_singleton: bool,
    pub zero_middle: bool,
}

impl Profile {
    const EMPTY: Profile =
        Profile { arcs: 0, covers: 0, singletons: 0, middles: 0, zero_singleton: false, zero_middle: false };

    /// Every block has at least two elements.
    pub fn feasible(&self) -> bool {
        self.singletons == 0 && !self.zero_singleton
    }

    /// Every block has at most two elements.
    pub fn poor(&self) -> bool {
        self.middles == 0 && !self.zero_middle
    }

    /// No block contains exactly one nonzero element.
    pub fn b_feasible(&self) -> bool {
        self.singletons == 0
    }

    /// No block of a type-symmetric partition contains more than two nonzero
    /// elements.
    pub fn b_poor(&self) -> bool {
        self.middles == 0
    }

    fn pack(&self) -> u64 {
        ((self.arcs as u64) << 40)
            | ((self.covers as u64) << 32)
            | ((self.singletons as u64) << 24)
            | ((self.middles as u64) << 16)
            | ((self.zero_singleton as u64) << 8)
            | self.zero_middle as u64
    }

    fn unpack(key: u64) -> Self {
        Profile {
            arcs: (key >> 40) as usize & 0xff,
            covers: (key >> 32) as usize & 0xff,
            singletons: (key >> 24) as usize & 0xff,
            middles: (key >> 16) as usize & 0xff,
            zero_singleton: (key >> 8) & 0xff != 0,
            zero_middle: key & 0xff != 0,
        }
    }
}

/// Joint histogram of member profiles.
///
/// Families without a pairwise arc condition are counted by a memoized walk:
/// below a given row, the remaining choices depend only on which columns from
/// that row on are taken and which later rows are forced. Other families are
/// walked member by member.
pub fn count_profiles(spec: &FamilySpec) -> BTreeMap<Profile, u128> {
    let mut engine = Engine::new(spec);
    let mut hist = BTreeMap::new();
    if engine.rule == ArcRule::Free && engine.size <= 32 {
        let mut cache = HashMap::new();
        for &(key, count) in engine.memo_walk(0, &mut cache).iter() {
            hist.insert(Profile::unpack(key), count);
        }
    } else {
        engine.walk(0, &mut |e: &Engine| {
            *hist.entry(e.profile()).or_insert(0u128) += 1;
        });
    }
    hist
}

/// Joint histogram of `(arcs, cover arcs)`.
pub fn count_arcs_and_covers(spec: &FamilySpec) -> BTreeMap<(usize, usize), u128> {
    let mut hist = BTreeMap::new();
    for (p, count) in count_profiles(spec) {
        *hist.entry((p.arcs, p.covers)).or_insert(0) += count;
    }
    hist
}

/// Histogram keyed by packed [`Profile`]s.
type PackedHistogram = Rc<[(u64, u128)]>;

impl Engine {
    fn mask(flags: &[bool], from: usize) -> u32 {
        flags.iter().enumerate().skip(from).fold(0, |m, (k, &f)| if f { m | (1 << k) } else { m })
    }

    fn zero_position(&self) -> Option<usize> {
        self.ground.position(0)
    }

    fn profile(&self) -> Profile {
        let zero = self.zero_position();
        let mut p = Profile {
            arcs: self.arc_count,
            covers: self.cover_count,
            singletons: 0,
            middles: 0,
            zero_singleton: false,
            zero_middle: false,
        };
        for pos in 0..self.size {
            let (out, inn) = (self.row_entry[pos].is_some(), self.col_used[pos]);
            let is_zero = Some(pos) == zero;
            match (out, inn, is_zero) {
                (false, false, true) => p.zero_singleton = true,
                (false, false, false) => p.singletons += 1,
                (true, true, true) => p.zero_middle = true,
                (true, true, false) => p.middles += 1,
                _ => {}
            }
        }
        p
    }

    /// Profile contribution of deciding `row`, whose incoming arc (if any)
    /// is already known.
    fn row_profile(&self, row: usize, has_out: bool) -> u64 {
        let is_zero = Some(row) == self.zero_position();
        let delta = match (has_out, self.col_used[row], is_zero) {
            (false, false, true) => Profile { zero_singleton: true, ..Profile::EMPTY },
            (false, false, false) => Profile { singletons: 1, ..Profile::EMPTY },
            (true, true, true) => Profile { zero_middle: true, ..Profile::EMPTY },
            (true, true, false) => Profile { middles: 1, ..Profile::EMPTY },
            _ => Profile::EMPTY,
        };
        delta.pack()
    }

    fn memo_walk(&mut self, row: usize, cache: &mut HashMap<(usize, u32, u32), PackedHistogram>) -> PackedHistogram {
        if row == self.size {
            return Rc::from(vec![(0u64, 1u128)]);
        }
        let key = (row, Self::mask(&self.col_used, row), Self::mask(&self.forced, row));
        if let Some(hit) = cache.get(&key) {
            return hit.clone();
        }
        let mut acc: HashMap<u64, u128> = HashMap::new();
        if self.forced[row] {
            let own = self.row_profile(row, true);
            for &(k, v) in self.memo_walk(row + 1, cache).iter() {
                *acc.entry(k + own).or_default() += v;
            }
        } else {
            let own = self.row_profile(row, false);
            for &(k, v) in self.memo_walk(row + 1, cache).iter() {
                *acc.entry(k + own).or_default() += v;
            }
            let own = self.row_profile(row, true);
            let mut from = (row + 1, 0);
            while let Some((c, l)) = self.find(row, from) {
                let (labels, neg) = self.labels_for(row, c);
                let self_mirror = self.symmetric && self.mirror(row, c).0 == row;
                let weight =
                    if self_mirror { (0..labels.len()).filter(|&x| neg[x] == x).count() } else { labels.len() } as u128;
                let (arcs_before, covers_before) = (self.arc_count, self.cover_count);
                self.commit(row, c, l);
                let shift = Profile {
                    arcs: self.arc_count - arcs_before,
                    covers: self.cover_count - covers_before,
                    ..Profile::EMPTY
                }
                .pack()
                    + own;
                for &(k, v) in self.memo_walk(row + 1, cache).iter() {
                    *acc.entry(k + shift).or_default() += v * weight;
                }
                self.undo(row);
                from = (c + 1, 0);
            }
        }
        let mut packed: Vec<(u64, u128)> = acc.into_iter().collect();
        packed.sort_unstable();
        let packed: PackedHistogram = Rc::from(packed);
        cache.insert(key, packed.clone());
        packed
    }
}

/// A step of a lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    U,
    D,
}

/// A sequence of up and down steps that never dips below its start and ends
/// at height zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for s in &steps {
            height += if *s == Step::U { 1 } else { -1 };
            if height < 0 {
                return arg("path dips below zero");
            }
        }
        if height != 0 {
            return arg("path does not return to zero");
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Half the number of steps.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Points `(x, y)` that end a down step and begin an up step.
    pub fn valleys(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut height = 0usize;
        for (x, w) in self.steps.windows(2).enumerate() {
            height = if w[0] == Step::U { height + 1 } else { height - 1 };
            if w == [Step::D, Step::U] {
                out.push((x + 1, height));
            }
        }
        out
    }

    /// Symmetric about the vertical line through the midpoint.
    pub fn is_symmetric(&self) -> bool {
        let n = self.steps.len();
        (0..n).all(|k| self.steps[k] != self.steps[n - 1 - k])
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .enumerate()
            .map(|(k, ch)| match ch {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                _ => Err(Error::Parse { position: k, message: format!("unexpected '{ch}'") }),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// All Dyck paths of semilength `m`, lexicographic with `U < D`.
pub fn enumerate_dyck(m: usize) -> Vec<DyckPath> {
    fn go(m: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if downs == m {
            out.push(DyckPath { steps: cur.clone() });
            return;
        }
        if ups < m {
            cur.push(Step::U);
            go(m, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            go(m, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, 0, &mut Vec::with_capacity(2 * m), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn z(m: u32) -> GroupSpec {
        GroupSpec::cyclic(m)
    }

    fn members(spec: &FamilySpec) -> Vec<LabeledSetPartition> {
        enumerate(spec).collect()
    }

    /// Brute force: every labeled arc set over the ground, filtered by the
    /// literal definitions.
    fn brute_force(spec: &FamilySpec) -> HashSet<LabeledSetPartition> {
        let ground = spec.ground();
        let group = spec.label_group();
        let values = ground.elements();
        let pairs: Vec<(i32, i32)> =
            values.iter().flat_map(|&i| values.iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect();
        let labels = group.nonzero_elements();
        let family = spec.family();
        let ds = family.is_ab().then(|| direct_sum(&spec.groups()[0], &spec.groups()[1]));
        let mut out = HashSet::new();
        #[allow(clippy::type_complexity)]
        let mut stack: Vec<(usize, Vec<(i32, i32, GroupElement)>)> = vec![(0, vec![])];
        while let Some((k, chosen)) = stack.pop() {
            if k == pairs.len() {
                let Ok(p) = LabeledSetPartition::from_arcs(ground, group.clone(), chosen) else {
                    continue;
                };
                let c = p.classify();
                let ok_rule = match family.rule() {
                    ArcRule::Free => true,
                    ArcRule::Noncrossing => c.noncrossing,
                    ArcRule::NcTilde => c.nc_tilde,
                    ArcRule::Nonnesting => c.nonnesting,
                };
                let ok_sym = match family {
                    Family::NnB => p.negate().unwrap().forget_labels() == p,
                    _ if family.is_symmetric() => c.type_symmetric,
                    _ => true,
                };
                let ok_linear = !family.is_linear() || p.arcs().iter().all(|a| a.is_cover());
                let ok_ab = ds.as_ref().is_none_or(|ds| {
                    p.arcs().iter().all(|a| {
                        if a.is_cover() {
                            ds.in_b_nonzero(&a.label)
                        } else {
                            ds.in_a_nonzero(&a.label)
                        }
                    })
                });
                if ok_rule && ok_sym && ok_linear && ok_ab {
                    out.insert(p);
                }
                continue;
            }
            stack.push((k + 1, chosen.clone()));
            let (i, j) = pairs[k];
            if chosen.iter().any(|a| a.0 == i || a.1 == j) {
                continue;
            }
            for l in &labels {
                let mut next = chosen.clone();
                next.push((pairs[k].0, pairs[k].1, l.clone()));
                stack.push((k + 1, next));
            }
        }
        out
    }

    #[test]
    fn spec_examples() {
        assert_eq!(members(&FamilySpec::single(Family::Pi, 3, z(2)).unwrap()).len(), 5);
        assert_eq!(members(&FamilySpec::single(Family::PB, 2, z(3)).unwrap()).len(), 13);
        assert_eq!(members(&FamilySpec::unlabeled(Family::Nn, 4).unwrap()).len(), 14);
    }

    #[test]
    fn negative_n_is_an_argument_error() {
        assert!(matches!(FamilySpec::new(Family::Pi, -1, vec![z(2)]), Err(Error::Argument(_))));
        assert!(matches!(FamilySpec::new(Family::PiAb, 2, vec![z(2)]), Err(Error::Argument(_))));
    }

    #[test]
    fn matches_brute_force() {
        let cases = [
            FamilySpec::single(Family::Pi, 4, z(3)).unwrap(),
            FamilySpec::single(Family::Nc, 4, z(3)).unwrap(),
            FamilySpec::single(Family::L, 4, z(3)).unwrap(),
            FamilySpec::pair(Family::PiAb, 4, z(2), z(3)).unwrap(),
            FamilySpec::pair(Family::NcAb, 4, z(3), z(2)).unwrap(),
            FamilySpec::single(Family::PB, 2, z(3)).unwrap(),
            FamilySpec::single(Family::PD, 2, z(3)).unwrap(),
            FamilySpec::single(Family::NcTildeB, 2, z(3)).unwrap(),
            FamilySpec::single(Family::NcTildeD, 3, z(2)).unwrap(),
            FamilySpec::single(Family::LB, 2, z(3)).unwrap(),
            FamilySpec::single(Family::LD, 3, z(3)).unwrap(),
            FamilySpec::pair(Family::PBAb, 2, z(2), z(3)).unwrap(),
            FamilySpec::pair(Family::PDAb, 2, z(3), z(2)).unwrap(),
            FamilySpec::pair(Family::NcTildeBAb, 2, z(2), z(3)).unwrap(),
            FamilySpec::pair(Family::NcTildeDAb, 3, z(2), z(2)).unwrap(),
            FamilySpec::unlabeled(Family::Nn, 5).unwrap(),
            FamilySpec::unlabeled(Family::NnB, 3).unwrap(),
        ];
        for spec in cases {
            let got = members(&spec);
            let set: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "{spec} has duplicates");
            assert_eq!(set, brute_force(&spec), "{spec}");
            assert_eq!(count(&spec), got.len() as u64, "{spec}");
        }
    }

    #[test]
    fn stream_is_in_rook_order() {
        let spec = FamilySpec::single(Family::PB, 3, z(3)).unwrap();
        let group = spec.label_group();
        #[allow(clippy::type_complexity)]
        let keys: Vec<Vec<(usize, Option<(usize, usize)>)>> = enumerate(&spec)
            .map(|p| {
                let rook = p.to_rook();
                (1..=rook.size)
                    .map(|r| {
                        let entry = rook
                            .entries
                            .iter()
                            .find(|((row, _), _)| *row == r)
                            .map(|(&(_, c), v)| (c, group.nonzero_index(v).unwrap()));
                        (r, entry)
                    })
                    .collect()
            })
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn linear_family_sizes() {
        for m in [2u32, 3] {
            for n in 1..=4u32 {
                let size = |f| count(&FamilySpec::single(f, n, z(m)).unwrap());
                assert_eq!(size(Family::L), u64::from(m).pow(n - 1));
                assert_eq!(size(Family::LB), u64::from(m).pow(n));
                assert_eq!(size(Family::LD), u64::from(m).pow(n - 1));
            }
        }
    }

    #[test]
    fn nonnesting_counts() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 0..=8u32 {
            assert_eq!(count(&FamilySpec::unlabeled(Family::Nn, n).unwrap()), catalan[n as usize]);
        }
        let central = [1u64, 2, 6, 20, 70, 252];
        for n in 0..=5u32 {
            assert_eq!(count(&FamilySpec::unlabeled(Family::NnB, n).unwrap()), central[n as usize]);
        }
    }

    #[test]
    fn histograms() {
        let nc = count_by(&FamilySpec::single(Family::Nc, 4, z(2)).unwrap(), Statistic::Blocks);
        assert_eq!(nc, BTreeMap::from([(1, 1), (2, 6), (3, 6), (4, 1)]));
        let l = count_by(&FamilySpec::single(Family::L, 3, z(2)).unwrap(), Statistic::Arcs);
        assert_eq!(l, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        let nnb = count_by(&FamilySpec::unlabeled(Family::NnB, 2).unwrap(), Statistic::Blocks);
        // Blocks 2k and 2k+1 together carry binom(2,k)^2 members.
        for k in 0..=2usize {
            let got = nnb.get(&(2 * k)).unwrap_or(&0) + nnb.get(&(2 * k + 1)).unwrap_or(&0);
            assert_eq!(got, [1, 4, 1][k]);
        }
    }

    #[test]
    fn memoized_counts_agree_with_walking() {
        let cases = [
            FamilySpec::single(Family::Pi, 6, z(3)).unwrap(),
            FamilySpec::single(Family::PB, 4, z(3)).unwrap(),
            FamilySpec::single(Family::PD, 4, z(2)).unwrap(),
            FamilySpec::pair(Family::PBAb, 3, z(2), z(3)).unwrap(),
            FamilySpec::pair(Family::PDAb, 3, z(3), z(2)).unwrap(),
            FamilySpec::single(Family::LB, 4, z(3)).unwrap(),
        ];
        for spec in cases {
            let mut walked = BTreeMap::new();
            for p in enumerate(&spec) {
                let lefts: Vec<i32> = p.arcs().iter().map(|a| a.i).collect();
                let rights: Vec<i32> = p.arcs().iter().map(|a| a.j).collect();
                let blocks = p.blocks();
                let profile = Profile {
                    arcs: p.arc_count(),
                    covers: p.cover_count(),
                    singletons: blocks.iter().filter(|b| b.len() == 1 && b[0] != 0).count(),
                    middles: lefts.iter().filter(|&&x| x != 0 && rights.contains(&x)).count(),
                    zero_singleton: blocks.contains(&vec![0]),
                    zero_middle: lefts.contains(&0) && rights.contains(&0),
                };
                let flags = p.classify();
                assert_eq!(profile.feasible(), flags.feasible);
                assert_eq!(profile.poor(), flags.poor);
                assert_eq!(profile.b_feasible(), flags.b_feasible);
                assert_eq!(profile.b_poor(), flags.b_poor);
                *walked.entry(profile).or_insert(0u128) += 1;
            }
            assert_eq!(count_profiles(&spec), walked, "{spec}");
        }
    }

    #[test]
    fn n_zero_is_one_empty_partition() {
        for f in [Family::Pi, Family::PB, Family::PD, Family::Nc] {
            let all = members(&FamilySpec::single(f, 0, z(2)).unwrap());
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].arc_count(), 0);
        }
    }

    #[test]
    fn dyck_paths() {
        assert_eq!(enumerate_dyck(0).len(), 1);
        let two: Vec<String> = enumerate_dyck(2).iter().map(|p| p.to_string()).collect();
        assert_eq!(two, vec!["UUDD", "UDUD"]);
        assert_eq!(enumerate_dyck(3).len(), 5);
        assert!("UDDU".parse::<DyckPath>().is_err());
        assert_eq!("UDUD".parse::<DyckPath>().unwrap().valleys(), vec![(2, 0)]);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::all() {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("P_X".parse::<Family>().is_err());
    }
}
