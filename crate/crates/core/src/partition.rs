//! Labeled set partitions over the three integer grounds, their arcs, the
//! classification predicates, and the rook-matrix encoding.
//!
//! A partition is stored by its arcs: `(i, j)` is an arc when `i` and `j` lie in
//! the same block and `j` is the next element of that block after `i`. Blocks
//! are recovered by chaining arcs. Arcs are kept sorted by left endpoint, which
//! makes derived equality and hashing canonical.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Which of the three interval shapes a ground set has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroundKind {
    /// `1..=n`
    A,
    /// `-n..=n`, zero included
    B,
    /// `-n..=-1` and `1..=n`
    D,
}

/// A ground set `A(n)`, `B(n)` or `D(n)`.
///
/// Positions are the 0-based ranks of elements in increasing order. Every
/// re-indexing between grounds and matrix coordinates goes through
/// [`Ground::position`] and [`Ground::value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ground {
    pub kind: GroundKind,
    pub n: u32,
}

impl Ground {
    pub fn a(n: u32) -> Self {
        Ground { kind: GroundKind::A, n }
    }
    pub fn b(n: u32) -> Self {
        Ground { kind: GroundKind::B, n }
    }
    pub fn d(n: u32) -> Self {
        Ground { kind: GroundKind::D, n }
    }

    pub fn len(&self) -> usize {
        let n = self.n as usize;
        match self.kind {
            GroundKind::A => n,
            GroundKind::B => 2 * n + 1,
            GroundKind::D => 2 * n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The element at 0-based position `pos`.
    pub fn value(&self, pos: usize) -> i32 {
        let n = self.n as i32;
        let p = pos as i32;
        match self.kind {
            GroundKind::A => p + 1,
            GroundKind::B => p - n,
            GroundKind::D => {
                if p < n {
                    p - n
                } else {
                    p - n + 1
                }
            }
        }
    }

    /// The 0-based position of `x`, if `x` belongs to the ground.
    pub fn position(&self, x: i32) -> Option<usize> {
        let n = self.n as i32;
        let pos = match self.kind {
            GroundKind::A => x - 1,
            GroundKind::B => x + n,
            GroundKind::D => {
                if x < 0 {
                    x + n
                } else if x > 0 {
                    x + n - 1
                } else {
                    return None;
                }
            }
        };
        (pos >= 0 && (pos as usize) < self.len() && self.value(pos as usize) == x).then_some(pos as usize)
    }

    pub fn contains(&self, x: i32) -> bool {
        self.position(x).is_some()
    }

    pub fn elements(&self) -> Vec<i32> {
        (0..self.len()).map(|p| self.value(p)).collect()
    }

    pub fn is_signed(&self) -> bool {
        self.kind != GroundKind::A
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.n)
    }
}

/// An arc `(i, j)` with its label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledArc {
    pub i: i32,
    pub j: i32,
    pub label: GroupElement,
}

impl LabeledArc {
    pub fn is_cover(&self) -> bool {
        self.j == self.i + 1
    }
}

/// A set partition of a ground set with a nonzero group label on every arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledSetPartition {
    ground: Ground,
    group: GroupSpec,
    arcs: Vec<LabeledArc>,
}

/// The arcs of a block list: consecutive elements of each sorted block.
pub fn arcs_of(blocks: &[Vec<i32>]) -> Result<Vec<(i32, i32)>> {
    let mut seen = HashSet::new();
    let mut arcs = Vec::new();
    for block in blocks {
        if block.is_empty() {
            return Err(Error::Structural("empty block".into()));
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        for &x in &sorted {
            if !seen.insert(x) {
                return Err(Error::Structural(format!("element {x} lies in two blocks")));
            }
        }
        arcs.extend(sorted.windows(2).map(|w| (w[0], w[1])));
    }
    arcs.sort_unstable();
    Ok(arcs)
}

/// Chains an arc set into blocks; blocks come out sorted and ordered by minimum.
pub fn blocks_from_arcs(ground: Ground, arcs: &[(i32, i32)]) -> Result<Vec<Vec<i32>>> {
    let mut next: HashMap<i32, i32> = HashMap::new();
    let mut has_prev: HashSet<i32> = HashSet::new();
    for &(i, j) in arcs {
        if !ground.contains(i) || !ground.contains(j) {
            return Err(Error::InvalidArcSet(format!("arc ({i},{j}) leaves {ground}")));
        }
        if i >= j {
            return Err(Error::InvalidArcSet(format!("arc ({i},{j}) is not increasing")));
        }
        if next.insert(i, j).is_some() {
            return Err(Error::InvalidArcSet(format!("two arcs leave {i}")));
        }
        if !has_prev.insert(j) {
            return Err(Error::InvalidArcSet(format!("two arcs enter {j}")));
        }
    }
    let mut blocks = Vec::new();
    for x in ground.elements() {
        if has_prev.contains(&x) {
            continue;
        }
        let mut block = vec![x];
        let mut cur = x;
        while let Some(&y) = next.get(&cur) {
            block.push(y);
            cur = y;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// `i < j < k < l` for arcs `(i,k)` and `(j,l)`, in either order.
pub(crate) fn arcs_cross(a: (i32, i32), b: (i32, i32)) -> bool {
    let ((i, k), (j, l)) = if a <= b { (a, b) } else { (b, a) };
    i < j && j < k && k < l
}

/// `i < j < k < l` for arcs `(i,l)` and `(j,k)`, in either order.
pub(crate) fn arcs_nest(a: (i32, i32), b: (i32, i32)) -> bool {
    let ((i, l), (j, k)) = if a <= b { (a, b) } else { (b, a) };
    i < j && j < k && k < l
}

/// Flags computed literally from their definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Classification {
    pub noncrossing: bool,
    pub nonnesting: bool,
    pub two_regular: bool,
    pub feasible: bool,
    pub poor: bool,
    pub b_feasible: bool,
    pub b_poor: bool,
    pub nc_tilde: bool,
    pub type_symmetric: bool,
}

impl LabeledSetPartition {
    /// Validates endpoints, uniqueness of left and right endpoints, and labels.
    pub fn from_arcs<I>(ground: Ground, group: GroupSpec, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, i32, GroupElement)>,
    {
        let mut list: Vec<LabeledArc> = arcs.into_iter().map(|(i, j, label)| LabeledArc { i, j, label }).collect();
        list.sort();
        let pairs: Vec<(i32, i32)> = list.iter().map(|a| (a.i, a.j)).collect();
        blocks_from_arcs(ground, &pairs)?;
        for a in &list {
            if !group.contains(&a.label) {
                return Err(Error::Structural(format!(
                    "label {} on ({},{}) is not an element of {group}",
                    a.label, a.i, a.j
                )));
            }
            if a.label.is_zero() {
                return Err(Error::Structural(format!("arc ({},{}) has label zero", a.i, a.j)));
            }
        }
        Ok(LabeledSetPartition { ground, group, arcs: list })
    }

    /// Blocks plus one label per arc.
    pub fn from_blocks(
        ground: Ground,
        group: GroupSpec,
        blocks: &[Vec<i32>],
        labels: &BTreeMap<(i32, i32), GroupElement>,
    ) -> Result<Self> {
        let arcs = arcs_of(blocks)?;
        let covered: usize = blocks.iter().map(Vec::len).sum();
        if covered != ground.len() {
            return Err(Error::Structural(format!(
                "blocks cover {covered} elements but {ground} has {}",
                ground.len()
            )));
        }
        if labels.len() != arcs.len() {
            return Err(Error::Structural(format!("{} labels given for {} arcs", labels.len(), arcs.len())));
        }
        let mut out = Vec::with_capacity(arcs.len());
        for (i, j) in arcs {
            let label = labels.get(&(i, j)).ok_or_else(|| Error::Structural(format!("arc ({i},{j}) has no label")))?;
            out.push((i, j, label.clone()));
        }
        Self::from_arcs(ground, group, out)
    }

    /// An unlabeled partition (labels in `Z/2`) from its blocks.
    pub fn unlabeled(ground: Ground, blocks: &[Vec<i32>]) -> Result<Self> {
        let group = GroupSpec::unlabeled();
        let one = GroupElement::new(vec![1]);
        let labels = arcs_of(blocks)?.into_iter().map(|a| (a, one.clone())).collect();
        Self::from_blocks(ground, group, blocks, &labels)
    }

    /// An unlabeled partition from its arcs.
    pub fn unlabeled_from_arcs(ground: Ground, arcs: &[(i32, i32)]) -> Result<Self> {
        let one = GroupElement::new(vec![1]);
        Self::from_arcs(ground, GroupSpec::unlabeled(), arcs.iter().map(|&(i, j)| (i, j, one.clone())))
    }

    /// The partition into singletons.
    pub fn empty(ground: Ground, group: GroupSpec) -> Self {
        LabeledSetPartition { ground, group, arcs: Vec::new() }
    }

    /// Trusted constructor for internal generators whose output is valid by construction.
    pub(crate) fn from_sorted_arcs_unchecked(ground: Ground, group: GroupSpec, arcs: Vec<LabeledArc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        LabeledSetPartition { ground, group, arcs }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn arcs(&self) -> &[LabeledArc] {
        &self.arcs
    }

    pub fn arc_pairs(&self) -> Vec<(i32, i32)> {
        self.arcs.iter().map(|a| (a.i, a.j)).collect()
    }

    pub fn label(&self, i: i32, j: i32) -> Option<&GroupElement> {
        self.arcs.binary_search_by(|a| (a.i, a.j).cmp(&(i, j))).ok().map(|k| &self.arcs[k].label)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn cover_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_cover()).count()
    }

    pub fn blocks(&self) -> Vec<Vec<i32>> {
        blocks_from_arcs(self.ground, &self.arc_pairs()).expect("stored arcs are valid")
    }

    pub fn block_count(&self) -> usize {
        self.ground.len() - self.arcs.len()
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks().iter().filter(|b| b.len() == 1).count()
    }

    /// The same blocks with every label replaced by `1 ∈ Z/2`.
    pub fn forget_labels(&self) -> Self {
        let one = GroupElement::new(vec![1]);
        LabeledSetPartition {
            ground: self.ground,
            group: GroupSpec::unlabeled(),
            arcs: self.arcs.iter().map(|a| LabeledArc { i: a.i, j: a.j, label: one.clone() }).collect(),
        }
    }

    pub fn classify(&self) -> Classification {
        let pairs = self.arc_pairs();
        let blocks = self.blocks();
        let mut noncrossing = true;
        let mut nonnesting = true;
        let mut nc_tilde = true;
        for (x, &a) in pairs.iter().enumerate() {
            for &b in &pairs[x + 1..] {
                if arcs_cross(a, b) {
                    noncrossing = false;
                    let ((i, k), (j, l)) = if a < b { (a, b) } else { (b, a) };
                    if (i, k) != (-l, -j) {
                        nc_tilde = false;
                    }
                }
                if arcs_nest(a, b) {
                    nonnesting = false;
                }
            }
        }
        let feasible = blocks.iter().all(|b| b.len() >= 2);
        let poor = blocks.iter().all(|b| b.len() <= 2);
        let (b_feasible, b_poor) = if self.ground.kind == GroundKind::B {
            let nonzero = |b: &Vec<i32>| b.iter().filter(|&&x| x != 0).count();
            (blocks.iter().all(|b| nonzero(b) != 1), blocks.iter().all(|b| nonzero(b) <= 2))
        } else {
            (feasible, poor)
        };
        Classification {
            noncrossing,
            nonnesting,
            two_regular: pairs.iter().all(|&(i, j)| j != i + 1),
            feasible,
            poor,
            b_feasible,
            b_poor,
            nc_tilde,
            type_symmetric: self.is_type_symmetric(),
        }
    }

    /// Mirror condition: `(i,j)` is an arc iff `(-j,-i)` is, with opposite
    /// labels, and no arc joins `-i` to `i`.
    pub fn is_type_symmetric(&self) -> bool {
        if !self.ground.is_signed() {
            return false;
        }
        self.arcs.iter().all(|a| {
            a.i != -a.j && self.label(-a.j, -a.i).is_some_and(|m| self.group.add_unchecked(&a.label, m).is_zero())
        })
    }

    /// Blocks `B ↦ -B`, with each arc carrying its label to the reversed arc.
    pub fn negate(&self) -> Result<Self> {
        if !self.ground.is_signed() {
            return Err(Error::UnsupportedGround(format!("negation needs a signed ground, got {}", self.ground)));
        }
        let mut arcs: Vec<LabeledArc> =
            self.arcs.iter().map(|a| LabeledArc { i: -a.j, j: -a.i, label: a.label.clone() }).collect();
        arcs.sort();
        Ok(LabeledSetPartition { ground: self.ground, group: self.group.clone(), arcs })
    }

    /// Replaces every label by its negative.
    pub fn negate_labels(&self) -> Self {
        LabeledSetPartition {
            ground: self.ground,
            group: self.group.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| LabeledArc { i: a.i, j: a.j, label: self.group.neg_unchecked(&a.label) })
                .collect(),
        }
    }

    pub fn to_rook(&self) -> RookMatrix {
        let mut entries = BTreeMap::new();
        for a in &self.arcs {
            let r = self.ground.position(a.i).expect("arc in ground") + 1;
            let c = self.ground.position(a.j).expect("arc in ground") + 1;
            entries.insert((r, c), a.label.clone());
        }
        RookMatrix { size: self.ground.len(), entries }
    }

    pub fn from_rook(ground: Ground, group: GroupSpec, rook: &RookMatrix) -> Result<Self> {
        if rook.size != ground.len() {
            return Err(Error::Structural(format!("matrix of size {} does not fit {ground}", rook.size)));
        }
        let mut arcs = Vec::with_capacity(rook.entries.len());
        for (&(r, c), label) in &rook.entries {
            if r == 0 || c == 0 || r > rook.size || c > rook.size {
                return Err(Error::Structural(format!("entry ({r},{c}) out of range")));
            }
            arcs.push((ground.value(r - 1), ground.value(c - 1), label.clone()));
        }
        Self::from_arcs(ground, group, arcs)
    }

    /// Canonical text: blocks such as `{-2,1}{-1,2}`, then `(i,j)=g` labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for block in self.blocks() {
            let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            out.push('{');
            out.push_str(&items.join(","));
            out.push('}');
        }
        for a in &self.arcs {
            out.push_str(&format!(" ({},{})={}", a.i, a.j, a.label));
        }
        out
    }

    /// Inverse of [`LabeledSetPartition::to_text`]. Arcs without a listed label
    /// get label `1` when the group is `Z/2`.
    pub fn parse_text(ground: Ground, group: GroupSpec, text: &str) -> Result<Self> {
        let mut p = TextParser { text, pos: 0 };
        let mut blocks = Vec::new();
        p.skip_ws();
        while p.peek() == Some('{') {
            p.pos += 1;
            let mut block = Vec::new();
            p.skip_ws();
            if p.peek() != Some('}') {
                loop {
                    block.push(p.integer()?);
                    p.skip_ws();
                    match p.peek() {
                        Some(',') => p.pos += 1,
                        Some('}') => break,
                        _ => return p.fail("expected ',' or '}'"),
                    }
                }
            }
            p.pos += 1;
            blocks.push(block);
            p.skip_ws();
        }
        let mut labels = BTreeMap::new();
        while p.peek() == Some('(') {
            p.pos += 1;
            let i = p.integer()?;
            p.expect(',')?;
            let j = p.integer()?;
            p.expect(')')?;
            p.expect('=')?;
            p.skip_ws();
            let residues: Vec<i64> = if p.peek() == Some('(') {
                p.pos += 1;
                let mut v = vec![p.integer()? as i64];
                while p.peek() == Some(',') {
                    p.pos += 1;
                    v.push(p.integer()? as i64);
                }
                p.expect(')')?;
                v
            } else {
                vec![p.integer()? as i64]
            };
            let label =
                group.element(&residues).map_err(|e| Error::Parse { position: p.pos, message: e.to_string() })?;
            labels.insert((i, j), label);
            p.skip_ws();
        }
        if p.pos != text.len() {
            return p.fail("unexpected trailing text");
        }
        if labels.is_empty() && group.is_unlabeled() {
            for arc in arcs_of(&blocks)? {
                labels.insert(arc, GroupElement::new(vec![1]));
            }
        }
        Self::from_blocks(ground, group, &blocks, &labels)
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            ground: GroundJson { kind: self.ground.kind, n: self.ground.n },
            group: Some(self.group.moduli().to_vec()),
            blocks: self.blocks(),
            labels: self
                .arcs
                .iter()
                .map(|a| LabelJson { i: a.i, j: a.j, value: a.label.residues().to_vec() })
                .collect(),
        }
    }

    /// Reads the JSON form. `default_group` applies when the document has no
    /// `group` field.
    pub fn from_json(doc: &PartitionJson, default_group: &GroupSpec) -> Result<Self> {
        let ground = Ground { kind: doc.ground.kind, n: doc.ground.n };
        let group = match &doc.group {
            Some(m) => GroupSpec::new(m.clone())?,
            None => default_group.clone(),
        };
        let labels = doc.labels.iter().map(|l| ((l.i, l.j), GroupElement::new(l.value.clone()))).collect();
        Self::from_blocks(ground, group, &doc.blocks, &labels)
    }

    /// Overhead-arc diagram. Labels are printed at each apex unless the group
    /// is `Z/2`, where every label is `1`.
    pub fn render_ascii(&self) -> String {
        render(self)
    }
}

impl fmt::Display for LabeledSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct TextParser<'a> {
    text: &'a str,
    pos: usize,
}

impl TextParser<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }
    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }
    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("expected '{c}'"))
        }
    }
    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { position: start, message: "expected an integer".into() })
    }
}

/// JSON form of a ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundJson {
    pub kind: GroundKind,
    pub n: u32,
}

/// One labeled arc in the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub i: i32,
    pub j: i32,
    pub value: Vec<u32>,
}

/// `{ground:{kind,n}, group?, blocks:[[...]], labels:[{i,j,value}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub ground: GroundJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u32>>,
    pub blocks: Vec<Vec<i32>>,
    #[serde(default)]
    pub labels: Vec<LabelJson>,
}

/// Strictly upper-triangular matrix with at most one nonzero per row and
/// column. Rows and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookMatrix {
    pub size: usize,
    pub entries: BTreeMap<(usize, usize), GroupElement>,
}

impl RookMatrix {
    /// Checks the rook and triangularity conditions.
    pub fn is_valid(&self) -> bool {
        let mut rows = HashSet::new();
        let mut cols = HashSet::new();
        self.entries
            .iter()
            .all(|(&(r, c), v)| r < c && c <= self.size && !v.is_zero() && rows.insert(r) && cols.insert(c))
    }

    /// No position above the diagonal lies strictly south of a nonzero entry
    /// in its column and strictly west of a nonzero entry in its row.
    pub fn is_noncrossing(&self) -> bool {
        let row_entry: HashMap<usize, usize> = self.entries.keys().map(|&(r, c)| (r, c)).collect();
        let col_entry: HashMap<usize, usize> = self.entries.keys().map(|&(r, c)| (c, r)).collect();
        for r in 1..=self.size {
            for c in r + 1..=self.size {
                let south = col_entry.get(&c).is_some_and(|&top| top < r);
                let west = row_entry.get(&r).is_some_and(|&right| right > c);
                if south && west {
                    return false;
                }
            }
        }
        true
    }
}

fn render(p: &LabeledSetPartition) -> String {
    let ground = p.ground();
    let show_labels = !p.group().is_unlabeled();
    let elems: Vec<String> = ground.elements().iter().map(|x| x.to_string()).collect();
    let label_width =
        if show_labels { p.arcs().iter().map(|a| a.label.to_string().len()).max().unwrap_or(0) } else { 0 };
    let width = elems.iter().map(String::len).max().unwrap_or(1).max(label_width) + 1;
    let anchor = |x: i32| ground.position(x).expect("in ground") * width + width - 1;
    let bottom: String = elems.iter().map(|e| format!("{e:>width$}")).collect();

    let mut order: Vec<&LabeledArc> = p.arcs().iter().collect();
    order.sort_by_key(|a| (a.j - a.i, a.i));
    let mut placed: Vec<(usize, usize, usize, &LabeledArc)> = Vec::new();
    for a in order {
        let (lo, hi) = (anchor(a.i), anchor(a.j));
        let mut level =
            placed.iter().filter(|(l, h, _, _)| lo <= *l && *h <= hi).map(|(_, _, lv, _)| lv + 1).max().unwrap_or(1);
        while placed.iter().any(|(l, h, lv, _)| *lv == level && lo.max(*l) < hi.min(*h)) {
            level += 1;
        }
        placed.push((lo, hi, level, a));
    }
    let height = placed.iter().map(|t| t.2).max().unwrap_or(0);
    let mut grid = vec![vec![b' '; bottom.len()]; height];
    for &(lo, hi, level, a) in &placed {
        let row = height - level;
        grid[row][lo] = b'+';
        grid[row][hi] = b'+';
        for cell in &mut grid[row][lo + 1..hi] {
            if *cell == b' ' {
                *cell = b'-';
            }
        }
        if show_labels {
            let text = a.label.to_string();
            let mid = (lo + hi) / 2;
            let start = (mid + 1).saturating_sub(text.len().div_ceil(2)).max(lo + 1);
            for (k, ch) in text.bytes().enumerate() {
                if start + k < hi {
                    grid[row][start + k] = ch;
                }
            }
        }
        for below in grid.iter_mut().skip(row + 1) {
            for col in [lo, hi] {
                if below[col] == b' ' || below[col] == b'-' {
                    below[col] = b'|';
                }
            }
        }
    }
    let mut lines: Vec<String> =
        grid.into_iter().map(|r| String::from_utf8(r).expect("ascii").trim_end().to_string()).collect();
    lines.push(bottom.trim_end().to_string());
    lines.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(v: &[&[i32]]) -> Vec<Vec<i32>> {
        v.iter().map(|b| b.to_vec()).collect()
    }

    #[test]
    fn arcs_of_standard_examples() {
        assert_eq!(arcs_of(&blocks(&[&[1, 3, 4, 7], &[2, 6], &[5]])).unwrap(), vec![(1, 3), (2, 6), (3, 4), (4, 7)]);
        assert!(arcs_of(&blocks(&[&[1], &[2], &[3]])).unwrap().is_empty());
        assert_eq!(arcs_of(&blocks(&[&[1, 7], &[2, 3, 4, 6], &[5]])).unwrap(), vec![(1, 7), (2, 3), (3, 4), (4, 6)]);
        assert!(matches!(arcs_of(&blocks(&[&[1, 2], &[2, 3]])), Err(Error::Structural(_))));
    }

    #[test]
    fn blocks_from_arcs_examples() {
        assert_eq!(blocks_from_arcs(Ground::a(3), &[(1, 3)]).unwrap(), blocks(&[&[1, 3], &[2]]));
        assert_eq!(
            blocks_from_arcs(Ground::a(7), &[(1, 3), (2, 6), (3, 4), (4, 7)]).unwrap(),
            blocks(&[&[1, 3, 4, 7], &[2, 6], &[5]])
        );
        assert_eq!(blocks_from_arcs(Ground::a(2), &[]).unwrap(), blocks(&[&[1], &[2]]));
        assert!(matches!(blocks_from_arcs(Ground::a(4), &[(1, 3), (1, 4)]), Err(Error::InvalidArcSet(_))));
        assert!(matches!(blocks_from_arcs(Ground::a(4), &[(1, 4), (2, 4)]), Err(Error::InvalidArcSet(_))));
    }

    #[test]
    fn ground_positions_round_trip() {
        for g in [Ground::a(4), Ground::b(3), Ground::d(3), Ground::b(0), Ground::d(0)] {
            let els = g.elements();
            assert_eq!(els.len(), g.len());
            assert!(els.windows(2).all(|w| w[0] < w[1]));
            for (p, &x) in els.iter().enumerate() {
                assert_eq!(g.position(x), Some(p));
            }
        }
        assert_eq!(Ground::d(2).elements(), vec![-2, -1, 1, 2]);
        assert_eq!(Ground::d(2).position(0), None);
        assert_eq!(Ground::b(1).elements(), vec![-1, 0, 1]);
    }

    #[test]
    fn classify_examples() {
        let c = LabeledSetPartition::unlabeled(Ground::a(4), &blocks(&[&[1, 3], &[2, 4]])).unwrap().classify();
        assert!(!c.noncrossing && c.nonnesting);

        let z3 = GroupSpec::cyclic(3);
        let a = z3.element(&[1]).unwrap();
        let p = LabeledSetPartition::from_arcs(
            Ground::b(2),
            z3.clone(),
            [(-2, 1, a.clone()), (-1, 2, z3.neg(&a).unwrap())],
        )
        .unwrap();
        let c = p.classify();
        assert!(!c.noncrossing && c.nc_tilde && c.type_symmetric);

        let c = LabeledSetPartition::unlabeled(Ground::a(3), &blocks(&[&[1, 2], &[3]])).unwrap().classify();
        assert!(!c.two_regular && c.poor && !c.feasible);
    }

    #[test]
    fn type_symmetric_rejects_self_mirror_arcs() {
        let p = LabeledSetPartition::unlabeled(Ground::d(1), &blocks(&[&[-1, 1]])).unwrap();
        assert!(!p.is_type_symmetric());
        let q = LabeledSetPartition::unlabeled(Ground::b(1), &blocks(&[&[-1, 0, 1]])).unwrap();
        assert!(q.is_type_symmetric());
    }

    #[test]
    fn rook_encoding() {
        let z2 = GroupSpec::cyclic(2);
        let one = z2.element(&[1]).unwrap();
        let p = LabeledSetPartition::from_arcs(Ground::a(3), z2.clone(), [(1, 3, one.clone())]).unwrap();
        let r = p.to_rook();
        assert_eq!(r.entries.keys().copied().collect::<Vec<_>>(), vec![(1, 3)]);

        let z3 = GroupSpec::cyclic(3);
        let a = z3.element(&[1]).unwrap();
        let na = z3.neg(&a).unwrap();
        let q =
            LabeledSetPartition::from_arcs(Ground::b(1), z3.clone(), [(-1, 0, a.clone()), (0, 1, na.clone())]).unwrap();
        let r = q.to_rook();
        assert_eq!(r.size, 3);
        assert_eq!(r.entries.get(&(1, 2)), Some(&a));
        assert_eq!(r.entries.get(&(2, 3)), Some(&na));
        assert_eq!(LabeledSetPartition::from_rook(Ground::b(1), z3.clone(), &r).unwrap(), q);

        let e = LabeledSetPartition::empty(Ground::a(4), z2);
        assert!(e.to_rook().entries.is_empty());
    }

    #[test]
    fn negate_examples() {
        let p = LabeledSetPartition::unlabeled(Ground::d(2), &blocks(&[&[-2, 1], &[-1, 2]])).unwrap();
        assert_eq!(p.negate().unwrap(), p);
        let q = LabeledSetPartition::unlabeled(Ground::d(2), &blocks(&[&[-1], &[1, 2], &[-2]])).unwrap();
        let expect = LabeledSetPartition::unlabeled(Ground::d(2), &blocks(&[&[1], &[-1, -2], &[2]])).unwrap();
        assert_eq!(q.negate().unwrap(), expect);
        assert!(matches!(
            LabeledSetPartition::empty(Ground::a(2), GroupSpec::unlabeled()).negate(),
            Err(Error::UnsupportedGround(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let z3 = GroupSpec::cyclic(3);
        let p = LabeledSetPartition::from_arcs(
            Ground::b(2),
            z3.clone(),
            [(-2, 1, z3.element(&[1]).unwrap()), (-1, 2, z3.element(&[2]).unwrap())],
        )
        .unwrap();
        let text = p.to_text();
        assert_eq!(text, "{-2,1}{-1,2}{0} (-2,1)=1 (-1,2)=2");
        assert_eq!(LabeledSetPartition::parse_text(Ground::b(2), z3, &text).unwrap(), p);
        let u = LabeledSetPartition::parse_text(Ground::a(3), GroupSpec::unlabeled(), "{1,3}{2}").unwrap();
        assert_eq!(u.arc_pairs(), vec![(1, 3)]);
        assert!(matches!(
            LabeledSetPartition::parse_text(Ground::a(3), GroupSpec::unlabeled(), "{1,x}"),
            Err(Error::Parse { position: 3, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let v4 = GroupSpec::parse("Z2xZ2").unwrap();
        let p = LabeledSetPartition::from_arcs(
            Ground::a(4),
            v4.clone(),
            [(1, 3, v4.element(&[1, 0]).unwrap()), (2, 4, v4.element(&[1, 1]).unwrap())],
        )
        .unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PartitionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LabeledSetPartition::from_json(&back, &GroupSpec::unlabeled()).unwrap(), p);
    }

    #[test]
    fn render_single_arc() {
        let z5 = GroupSpec::cyclic(5);
        let p = LabeledSetPartition::from_arcs(Ground::a(3), z5.clone(), [(1, 3, z5.element(&[4]).unwrap())]).unwrap();
        assert_eq!(p.render_ascii(), " +-4-+\n 1 2 3\n");
        let s = LabeledSetPartition::empty(Ground::a(3), z5);
        assert_eq!(s.render_ascii(), " 1 2 3\n");
    }

    #[test]
    fn render_display_partition() {
        let p = LabeledSetPartition::unlabeled(Ground::a(7), &blocks(&[&[1, 3, 4, 7], &[2, 6], &[5]])).unwrap();
        let text = p.render_ascii();
        assert_eq!(text, "   +-------+\n +-|-+-+---|-+\n 1 2 3 4 5 6 7\n");
    }
}
