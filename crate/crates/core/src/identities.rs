//! Registry of enumerative identities and structural statements, each checked
//! exactly as a polynomial identity, against exhaustive counts, or by
//! exhaustive structural comparison.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{orbit_decomposition, plus_involution};
use crate::enumerate::{count, count_by, enumerate, enumerate_dyck, Family, FamilySpec, Statistic};
use crate::error::{arg, Error, Result};
use crate::group::{direct_sum, GroupSpec};
use crate::maps::{has_abutting_blocks, nonnesting_b_from_dyck, shift, uncross, uncross_b, unshift};
use crate::partition::{Classification, Ground, LabeledSetPartition};
use crate::poly::{binom, catalan, family as poly, stirling2_row, whitney2_b_row, BiPoly, PolyFamily};

/// How a registry entry is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Both sides expanded as polynomials in formal `x`, `y`.
    Symbolic,
    /// Both sides instantiated with finite groups and compared with exhaustive counts.
    Enumerative,
    /// Bijections, orbit sizes and block counts checked member by member.
    Structural,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Enumerative => "enumerative",
            Mode::Structural => "structural",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "symbolic" => Ok(Mode::Symbolic),
            "enumerative" => Ok(Mode::Enumerative),
            "structural" => Ok(Mode::Structural),
            _ => arg(format!("unknown mode {s:?}")),
        }
    }
}

/// Parameter scale for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Small ranges for smoke tests.
    Quick,
    /// The full verification ranges.
    Desk,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Profile::Quick),
            "desk" => Ok(Profile::Desk),
            _ => arg(format!("unknown profile {s:?}")),
        }
    }
}

/// The smallest failing instance and the two values that differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Parameters such as `n=3` or `m=2,n=1`.
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<String>,
    /// What was compared.
    pub quantity: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Two sides of the last instance checked, reported for point evaluations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub params: String,
    pub sides: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub mode: Mode,
    pub range: String,
    pub status: Status,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<Sample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub profile: Profile,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Overrides for a single [`run`].
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    /// Evaluate symbolic identities at `(x, y)` instead of comparing polynomials.
    pub point: Option<(i64, i64)>,
    /// `(A, B)` pairs for enumerative and orbit checks.
    pub pairs: Option<Vec<(GroupSpec, GroupSpec)>>,
    /// Label groups for structural checks over one group.
    pub groups: Option<Vec<GroupSpec>>,
}

/// The `(A, B)` pairs used by default.
pub fn default_pairs() -> Vec<(GroupSpec, GroupSpec)> {
    let z = GroupSpec::cyclic;
    let klein = GroupSpec::new(vec![2, 2]).expect("Z2xZ2 is valid");
    vec![(z(2), z(2)), (z(2), z(3)), (z(3), z(2)), (klein, z(2))]
}

fn default_groups() -> Vec<GroupSpec> {
    vec![GroupSpec::unlabeled(), GroupSpec::cyclic(3)]
}

// ---------------------------------------------------------------------------
// Registry

type Mismatch = (String, String, String);
type Outcome = Result<Option<Mismatch>>;

/// Ranges for enumerative checks depend on the partition type involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    A,
    SignedBD,
}

#[derive(Clone, Copy)]
enum Symbolic {
    /// Sides for one `n`; all must agree.
    N { min: u32, max: u32, sides: fn(u32) -> Vec<BiPoly> },
    /// Sides for one `(m, n)` with both in `0..=max`.
    MN { max: u32, sides: fn(u32, u32) -> Vec<BiPoly> },
}

#[derive(Clone, Copy)]
struct Enumerative {
    kind: Kind,
    min: u32,
    check: fn(u32, &GroupSpec, &GroupSpec) -> Outcome,
}

#[derive(Clone, Copy)]
enum Structural {
    Plain { min: u32, max: u32, check: fn(u32) -> Outcome },
    Single { min: u32, max: u32, check: fn(u32, &GroupSpec) -> Outcome },
    Pair { min: u32, max: u32, check: fn(u32, &GroupSpec, &GroupSpec) -> Outcome },
}

/// One registry entry.
#[derive(Clone, Copy)]
pub struct Identity {
    pub id: &'static str,
    pub statement: &'static str,
    symbolic: Option<Symbolic>,
    enumerative: Option<Enumerative>,
    structural: Option<Structural>,
}

impl Identity {
    pub fn modes(&self) -> Vec<Mode> {
        let mut out = Vec::new();
        if self.symbolic.is_some() {
            out.push(Mode::Symbolic);
        }
        if self.enumerative.is_some() {
            out.push(Mode::Enumerative);
        }
        if self.structural.is_some() {
            out.push(Mode::Structural);
        }
        out
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity").field("id", &self.id).field("modes", &self.modes()).finish()
    }
}

const fn sym(sides: fn(u32) -> Vec<BiPoly>) -> Option<Symbolic> {
    Some(Symbolic::N { min: 0, max: 10, sides })
}

const fn en(kind: Kind, check: fn(u32, &GroupSpec, &GroupSpec) -> Outcome) -> Option<Enumerative> {
    Some(Enumerative { kind, min: 0, check })
}

const fn entry(
    id: &'static str,
    statement: &'static str,
    symbolic: Option<Symbolic>,
    enumerative: Option<Enumerative>,
    structural: Option<Structural>,
) -> Identity {
    Identity { id, statement, symbolic, enumerative, structural }
}

/// Every registered identity, sorted by id.
pub fn registry() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        use Kind::*;
        let mut v = vec![
            entry(
                "coker",
                "sum_k 1/(n+1) C(n+1,k) C(n+1,k+1) x^k = sum_k Cat_k C(n,2k) x^k (1+x)^(n-2k)",
                sym(coker),
                None,
                None,
            ),
            entry(
                "riordan",
                "sum_k C(n,k)^2 x^k = sum_k C(2k,k) C(n,2k) x^k (x+1)^(n-2k)",
                sym(riordan),
                None,
                None,
            ),
            entry(
                "A-identities-1",
                "Bell_{n+1}(x,y) = sum_k C(n,k) Bell_k(x) y^(n-k) = sum_k C(n,k) F_k(x) (y+1)^(n-k)",
                sym(a_identities_1),
                en(A, a_identities_1_counts),
                None,
            ),
            entry(
                "A-identities-2",
                "Cat_{n+1}(x,y) = sum_k C(n,k) M_k(x) y^(n-k) = sum_k Cat_k C(n,2k) x^k (y+1)^(n-2k)",
                sym(a_identities_2),
                en(A, a_identities_2_counts),
                None,
            ),
            entry(
                "A-incl-excl-1",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Bell_{k+1}(x,y) = F_n(x)",
                sym(a_incl_excl_1),
                en(A, a_incl_excl_1_counts),
                None,
            ),
            entry(
                "A-incl-excl-2",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Cat_{k+1}(x,y) = x^(n/2) Cat_{n/2} for even n, else 0",
                sym(a_incl_excl_2),
                en(A, a_incl_excl_2_counts),
                None,
            ),
            entry("motzkin-closed", "M_n(x) = sum_k Cat_k C(n,2k) x^k", sym(motzkin_closed), None, None),
            entry(
                "bell-binom-transform",
                "Bell_n(x) = sum_k C(n,k) F_k(x)",
                sym(bell_binom_transform),
                None,
                None,
            ),
            entry(
                "touchard",
                "Cat_{n+1} = sum_k Cat_k C(n,2k) 2^(n-2k)",
                sym(touchard),
                None,
                None,
            ),
            entry(
                "NNB-counts",
                "NN_B(n) has C(n,k)^2 members with 2k or 2k+1 blocks and C(2n,n) in total",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 5, check: nnb_counts }),
            ),
            entry(
                "sym-dyck",
                "there are C(2n,n) symmetric Dyck paths with 4n steps, in bijection with NN_B(n)",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 5, check: symmetric_dyck }),
            ),
            entry("bellD-eq", "Bell_D_n(x) = Bell_n(2x)", sym(bell_d_eq), None, None),
            entry(
                "spivey-1",
                "Bell_{m+n}(x) = sum_{j,k} x^(m+n-j-k) j^(n-k) C(n,k) S(m,j) Bell_k(x)",
                Some(Symbolic::MN { max: 4, sides: spivey_1 }),
                None,
                None,
            ),
            entry(
                "spivey-2",
                "Bell_B_{m+n}(x) = sum_{j,k} x^(m+n-j-k) (2j+1)^(n-k) C(n,k) W(m,j) Bell_k(2x)",
                Some(Symbolic::MN { max: 4, sides: spivey_2 }),
                None,
                None,
            ),
            entry("catB-closed", "Cat_B_n(x) = sum_k C(n,k)^2 x^k", sym(cat_b_closed), None, None),
            entry(
                "catD-closed",
                "Cat_D_{n+1}(x) = sum_k C(n,k) C(n+1,k) x^k",
                sym(cat_d_closed),
                None,
                None,
            ),
            entry(
                "uncrossB-props",
                "uncross_B: NC~B(n) -> symmetric noncrossing partitions of [+-n] and uncross: NC~D(n) -> those with an even number of self-negated blocks are bijections; 2k+1 blocks map to 2k or 2k+1",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 4, check: uncross_b_props }),
            ),
            entry(
                "uncross-bij",
                "uncross restricts to a block-preserving bijection NN(n) -> NC(n)",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 7, check: uncross_bijection }),
            ),
            entry(
                "motzkinB-closed",
                "M_B_n(x) = M_D_n(x) = sum_k C(2k,k) C(n,2k) x^k",
                sym(motzkin_b_closed),
                None,
                None,
            ),
            entry(
                "mob-rec",
                "M_B_{n+2}(x) = M_B_{n+1}(x) + 2(n+1) x M_n(x)",
                sym(mob_rec),
                None,
                None,
            ),
            entry(
                "tilde-1",
                "F~B_n(x) = F_B_n(x) + F_n(2x) = sum_k C(n,k) F_k(2x) x^(n-k)",
                sym(tilde_1),
                None,
                None,
            ),
            entry(
                "tilde-2",
                "M~B_n(x) = M_B_n(x) + n x M_{n-1}(x) = sum_k C(n,k) C(n+1-k,k) x^k",
                sym(tilde_2),
                None,
                None,
            ),
            entry(
                "2blocks-1",
                "NC~D(2n) has C(2n,n) members whose blocks all have size two",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 3, check: two_blocks_1 }),
            ),
            entry(
                "2blocks-2",
                "NC~D(2n+1) has no members whose blocks all have size two",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 2, check: two_blocks_2 }),
            ),
            entry(
                "2blocks-3",
                "NC~B(n) has C(n, floor(n/2)) B-poor members with no nonzero singleton blocks",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 6, check: two_blocks_3 }),
            ),
            entry(
                "orbit-main",
                "L(n,B)-orbits in PI(n,A,B) and NC(n,A,B) correspond to PI(n-1,A) and poor NC(n-1,A) via shift; orbit sizes |B|^s",
                None,
                None,
                Some(Structural::Pair { min: 1, max: 5, check: orbit_main }),
            ),
            entry(
                "orbit-B",
                "L_B(n,B)-orbits in P_B(n,A,B) and NC~B(n,A,B) correspond to P_D(n,A) and poor NC~D(n,A); orbit sizes |B|^(s/2)",
                None,
                None,
                Some(Structural::Pair { min: 1, max: 5, check: orbit_b }),
            ),
            entry(
                "orbit-D",
                "L_D(n,B)-orbits in P_D(n,A,B) and NC~D(n,A,B) correspond to P_B(n-1,A) and B-poor NC~B(n-1,A); orbit sizes |B|^floor(s/2)",
                None,
                None,
                Some(Structural::Pair { min: 1, max: 5, check: orbit_d }),
            ),
            entry(
                "B-identities-1",
                "Bell_B_n(x,y) = sum_k C(n,k) Bell_k(2x) y^(n-k) = sum_k C(n,k) F_k(2x) (y+1)^(n-k)",
                sym(b_identities_1),
                en(SignedBD, b_identities_1_counts),
                None,
            ),
            entry(
                "B-identities-2",
                "Bell_D_{n+1}(x,y) = sum_k C(n,k) Bell_B_k(x) y^(n-k) = sum_k C(n,k) F~B_k(x) (y+1)^(n-k)",
                sym(b_identities_2),
                en(SignedBD, b_identities_2_counts),
                None,
            ),
            entry(
                "B-identities-3",
                "Cat_B_n(x,y) = sum_k C(n,k) M_B_k(x) y^(n-k) = sum_k C(2k,k) C(n,2k) x^k (y+1)^(n-2k)",
                sym(b_identities_3),
                en(SignedBD, b_identities_3_counts),
                None,
            ),
            entry(
                "B-identities-4",
                "Cat_D_{n+1}(x,y) = sum_k C(n,k) M~B_k(x) y^(n-k) = sum_k C(n,k) C(k,floor(k/2)) x^ceil(k/2) (y+1)^(n-k)",
                sym(b_identities_4),
                en(SignedBD, b_identities_4_counts),
                None,
            ),
            entry(
                "hanging-1",
                "Cat_B_{n+1}(x,y) = (y+1) Cat_B_n(x,y) + 2n x Cat_n(x,y)",
                sym(hanging_1),
                en(SignedBD, hanging_1_counts),
                None,
            ),
            entry(
                "hanging-2",
                "Cat_D_{n+1}(x,y) = Cat_B_n(x,y) + n x Cat_n(x,y)",
                sym(hanging_2),
                en(SignedBD, hanging_2_counts),
                None,
            ),
            entry(
                "B-incl-excl-1",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Bell_B_k(x,y) = F_n(2x)",
                sym(b_incl_excl_1),
                en(SignedBD, b_incl_excl_1_counts),
                None,
            ),
            entry(
                "B-incl-excl-2",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Bell_D_{k+1}(x,y) = F~B_n(x)",
                sym(b_incl_excl_2),
                en(SignedBD, b_incl_excl_2_counts),
                None,
            ),
            entry(
                "B-incl-excl-3",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Cat_B_k(x,y) = C(n,n/2) x^(n/2) for even n, else 0",
                sym(b_incl_excl_3),
                en(SignedBD, b_incl_excl_3_counts),
                None,
            ),
            entry(
                "B-incl-excl-4",
                "sum_k (-1)^(n-k) C(n,k) (y+1)^(n-k) Cat_D_{k+1}(x,y) = C(n,floor(n/2)) x^ceil(n/2)",
                sym(b_incl_excl_4),
                en(SignedBD, b_incl_excl_4_counts),
                None,
            ),
            entry(
                "three-term-1",
                "(n+1) Cat_n(x,y) = (y+1)(2n-1) Cat_{n-1}(x,y) + (4x-(y+1)^2)(n-2) Cat_{n-2}(x,y), n >= 2",
                Some(Symbolic::N { min: 2, max: 10, sides: three_term_1 }),
                Some(Enumerative { kind: A, min: 2, check: three_term_1_counts }),
                None,
            ),
            entry(
                "three-term-2",
                "n Cat_B_n(x,y) = (y+1)(2n-1) Cat_B_{n-1}(x,y) + (4x-(y+1)^2)(n-1) Cat_B_{n-2}(x,y), n >= 2",
                Some(Symbolic::N { min: 2, max: 10, sides: three_term_2 }),
                Some(Enumerative { kind: SignedBD, min: 2, check: three_term_2_counts }),
                None,
            ),
            entry(
                "rank-invert-A",
                "the involution L -> L+ of PI(n) maps NC(n) to itself and sends k blocks to n+1-k",
                None,
                None,
                Some(Structural::Plain { min: 1, max: 8, check: rank_invert_a }),
            ),
            entry(
                "rank-invert-B",
                "the involution L -> L+ of P_B(n) maps NC~B(n) to itself and sends 2k+1 blocks to 2(n-k)+1",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 5, check: rank_invert_b }),
            ),
            entry(
                "rank-invert-D",
                "the involution L -> L+ of P_D(n) maps NC~D(n) to itself; |L+| = 2n+2-|L| when -1 ends its block, else 2n-|L|",
                None,
                None,
                Some(Structural::Plain { min: 0, max: 5, check: rank_invert_d }),
            ),
            entry(
                "shift-bij-A",
                "shift restricts to bijections from feasible PI(n,A) onto 2-regular PI(n+1,A) without abutting blocks, and from poor NC(n,A) onto 2-regular NC(n+1,A)",
                None,
                None,
                Some(Structural::Single { min: 0, max: 5, check: shift_bijections_a }),
            ),
            entry(
                "shift-bij-BD",
                "shift restricts to bijections from feasible P_D(n,A), B-feasible P_B(n,A), poor NC~D(n,A) and B-poor NC~B(n,A) onto the matching 2-regular members",
                None,
                None,
                Some(Structural::Single { min: 0, max: 3, check: shift_bijections_bd }),
            ),
        ];
        v.sort_by_key(|e| e.id);
        v
    })
}

pub fn lookup(id: &str) -> Result<&'static Identity> {
    registry().iter().find(|e| e.id == id).ok_or_else(|| Error::Argument(format!("unknown identity {id:?}")))
}

// ---------------------------------------------------------------------------
// Symbolic sides

fn c(v: impl Into<BigInt>) -> BiPoly {
    BiPoly::constant(v)
}

fn b(n: u32, k: u32) -> BigInt {
    binom(n as i64, k as i64)
}

fn xk(coeff: BigInt, k: u32) -> BiPoly {
    BiPoly::monomial(coeff, k, 0)
}

fn y1() -> BiPoly {
    BiPoly::y() + BiPoly::one()
}

fn uni(f: PolyFamily, n: u32) -> BiPoly {
    poly(f, n).diagonal()
}

fn sign(e: u32) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn coker(n: u32) -> Vec<BiPoly> {
    let left = (0..=n).map(|k| xk(b(n + 1, k) * b(n + 1, k + 1) / (n + 1), k)).sum();
    let one_x = BiPoly::one() + BiPoly::x();
    let right = (0..=n / 2).map(|k| xk(catalan(k) * b(n, 2 * k), k) * one_x.pow(n - 2 * k)).sum();
    vec![left, right]
}

fn riordan(n: u32) -> Vec<BiPoly> {
    let left = (0..=n).map(|k| xk(b(n, k).pow(2), k)).sum();
    let one_x = BiPoly::one() + BiPoly::x();
    let right = (0..=n / 2).map(|k| xk(b(2 * k, k) * b(n, 2 * k), k) * one_x.pow(n - 2 * k)).sum();
    vec![left, right]
}

/// `Σ_k C(n,k) p_k q^(n-k)`.
fn binomial_sum(n: u32, p: impl Fn(u32) -> BiPoly, q: &BiPoly) -> BiPoly {
    (0..=n).map(|k| (p(k) * q.pow(n - k)).scale(&b(n, k))).sum()
}

/// `Σ_k (-1)^(n-k) C(n,k) (y+1)^(n-k) p_k`.
fn inclusion_exclusion(n: u32, p: impl Fn(u32) -> BiPoly) -> BiPoly {
    (0..=n).map(|k| (p(k) * y1().pow(n - k)).scale(&(b(n, k) * sign(n - k)))).sum()
}

fn a_identities_1(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::Bell, n + 1),
        binomial_sum(n, |k| uni(PolyFamily::Bell, k), &BiPoly::y()),
        binomial_sum(n, |k| uni(PolyFamily::F, k), &y1()),
    ]
}

fn a_identities_2(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::Cat, n + 1),
        binomial_sum(n, |k| uni(PolyFamily::M, k), &BiPoly::y()),
        (0..=n / 2).map(|k| xk(catalan(k) * b(n, 2 * k), k) * y1().pow(n - 2 * k)).sum(),
    ]
}

fn a_incl_excl_1(n: u32) -> Vec<BiPoly> {
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::Bell, k + 1)), uni(PolyFamily::F, n)]
}

fn a_incl_excl_2(n: u32) -> Vec<BiPoly> {
    let right = if n.is_multiple_of(2) { xk(catalan(n / 2), n / 2) } else { BiPoly::zero() };
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::Cat, k + 1)), right]
}

fn motzkin_closed(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::M, n), (0..=n / 2).map(|k| xk(catalan(k) * b(n, 2 * k), k)).sum()]
}

fn bell_binom_transform(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::Bell, n), (0..=n).map(|k| uni(PolyFamily::F, k).scale(&b(n, k))).sum()]
}

fn touchard(n: u32) -> Vec<BiPoly> {
    let right: BigInt = (0..=n / 2).map(|k| catalan(k) * b(n, 2 * k) * BigInt::from(2).pow(n - 2 * k)).sum();
    vec![c(catalan(n + 1)), c(poly(PolyFamily::Cat, n + 1).eval_int(1, 1)), c(right)]
}

fn bell_d_eq(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::BellD, n), uni(PolyFamily::Bell, n).scale_x(2)]
}

fn spivey_1(m: u32, n: u32) -> Vec<BiPoly> {
    let s = stirling2_row(m);
    let mut right = BiPoly::zero();
    for j in 0..=m {
        for k in 0..=n {
            let coeff = BigInt::from(j).pow(n - k) * b(n, k) * &s[j as usize];
            right = right + xk(coeff, m + n - j - k) * uni(PolyFamily::Bell, k);
        }
    }
    vec![uni(PolyFamily::Bell, m + n), right]
}

fn spivey_2(m: u32, n: u32) -> Vec<BiPoly> {
    let w = whitney2_b_row(m);
    let mut right = BiPoly::zero();
    for j in 0..=m {
        for k in 0..=n {
            let coeff = BigInt::from(2 * j + 1).pow(n - k) * b(n, k) * &w[j as usize];
            right = right + xk(coeff, m + n - j - k) * uni(PolyFamily::Bell, k).scale_x(2);
        }
    }
    vec![uni(PolyFamily::BellB, m + n), right]
}

fn cat_b_closed(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::CatB, n), (0..=n).map(|k| xk(b(n, k).pow(2), k)).sum()]
}

fn cat_d_closed(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::CatD, n + 1), (0..=n).map(|k| xk(b(n, k) * b(n + 1, k), k)).sum()]
}

fn motzkin_b_closed(n: u32) -> Vec<BiPoly> {
    vec![uni(PolyFamily::MB, n), uni(PolyFamily::MD, n), (0..=n / 2).map(|k| xk(b(2 * k, k) * b(n, 2 * k), k)).sum()]
}

fn mob_rec(n: u32) -> Vec<BiPoly> {
    vec![
        uni(PolyFamily::MB, n + 2),
        uni(PolyFamily::MB, n + 1) + xk(BigInt::from(2 * (n + 1)), 1) * uni(PolyFamily::M, n),
    ]
}

fn tilde_1(n: u32) -> Vec<BiPoly> {
    vec![
        uni(PolyFamily::FBTilde, n),
        uni(PolyFamily::FB, n) + uni(PolyFamily::F, n).scale_x(2),
        (0..=n).map(|k| (uni(PolyFamily::F, k).scale_x(2) * BiPoly::x().pow(n - k)).scale(&b(n, k))).sum(),
    ]
}

fn tilde_2(n: u32) -> Vec<BiPoly> {
    let hanging = if n == 0 { BiPoly::zero() } else { xk(BigInt::from(n), 1) * uni(PolyFamily::M, n - 1) };
    vec![
        uni(PolyFamily::MBTilde, n),
        uni(PolyFamily::MB, n) + hanging,
        (0..=n.div_ceil(2)).map(|k| xk(b(n, k) * binom(n as i64 + 1 - k as i64, k as i64), k)).sum(),
    ]
}

fn b_identities_1(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::BellB, n),
        binomial_sum(n, |k| uni(PolyFamily::Bell, k).scale_x(2), &BiPoly::y()),
        binomial_sum(n, |k| uni(PolyFamily::F, k).scale_x(2), &y1()),
    ]
}

fn b_identities_2(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::BellD, n + 1),
        binomial_sum(n, |k| uni(PolyFamily::BellB, k), &BiPoly::y()),
        binomial_sum(n, |k| uni(PolyFamily::FBTilde, k), &y1()),
    ]
}

fn b_identities_3(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::CatB, n),
        binomial_sum(n, |k| uni(PolyFamily::MB, k), &BiPoly::y()),
        (0..=n / 2).map(|k| xk(b(2 * k, k) * b(n, 2 * k), k) * y1().pow(n - 2 * k)).sum(),
    ]
}

fn b_identities_4(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::CatD, n + 1),
        binomial_sum(n, |k| uni(PolyFamily::MBTilde, k), &BiPoly::y()),
        (0..=n).map(|k| (xk(b(k, k / 2), k.div_ceil(2)) * y1().pow(n - k)).scale(&b(n, k))).sum(),
    ]
}

fn hanging_1(n: u32) -> Vec<BiPoly> {
    vec![
        poly(PolyFamily::CatB, n + 1),
        y1() * poly(PolyFamily::CatB, n) + xk(BigInt::from(2 * n), 1) * poly(PolyFamily::Cat, n),
    ]
}

fn hanging_2(n: u32) -> Vec<BiPoly> {
    vec![poly(PolyFamily::CatD, n + 1), poly(PolyFamily::CatB, n) + xk(BigInt::from(n), 1) * poly(PolyFamily::Cat, n)]
}

fn b_incl_excl_1(n: u32) -> Vec<BiPoly> {
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::BellB, k)), uni(PolyFamily::F, n).scale_x(2)]
}

fn b_incl_excl_2(n: u32) -> Vec<BiPoly> {
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::BellD, k + 1)), uni(PolyFamily::FBTilde, n)]
}

fn b_incl_excl_3(n: u32) -> Vec<BiPoly> {
    let right = if n.is_multiple_of(2) { xk(b(n, n / 2), n / 2) } else { BiPoly::zero() };
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::CatB, k)), right]
}

fn b_incl_excl_4(n: u32) -> Vec<BiPoly> {
    vec![inclusion_exclusion(n, |k| poly(PolyFamily::CatD, k + 1)), xk(b(n, n / 2), n.div_ceil(2))]
}

/// `4x - (y+1)^2`.
fn discriminant() -> BiPoly {
    xk(BigInt::from(4), 1) - y1().pow(2)
}

fn three_term_1(n: u32) -> Vec<BiPoly> {
    let ni = n as i64;
    vec![
        poly(PolyFamily::Cat, n).scale(&BigInt::from(ni + 1)),
        (y1() * poly(PolyFamily::Cat, n - 1)).scale(&BigInt::from(2 * ni - 1))
            + (discriminant() * poly(PolyFamily::Cat, n - 2)).scale(&BigInt::from(ni - 2)),
    ]
}

fn three_term_2(n: u32) -> Vec<BiPoly> {
    let ni = n as i64;
    vec![
        poly(PolyFamily::CatB, n).scale(&BigInt::from(ni)),
        (y1() * poly(PolyFamily::CatB, n - 1)).scale(&BigInt::from(2 * ni - 1))
            + (discriminant() * poly(PolyFamily::CatB, n - 2)).scale(&BigInt::from(ni - 1)),
    ]
}

// ---------------------------------------------------------------------------
// Enumerative instantiation

fn spec1(family: Family, n: u32, group: &GroupSpec) -> FamilySpec {
    FamilySpec::single(family, n, group.clone()).expect("single-group family")
}

/// Members of a one-group family satisfying `keep`, counted exhaustively.
fn tally(
    family: Family,
    n: u32,
    group: &GroupSpec,
    keep: impl Fn(&LabeledSetPartition, &Classification) -> bool,
) -> BigInt {
    BigInt::from(enumerate(&spec1(family, n, group)).filter(|p| keep(p, &p.classify())).count())
}

fn all(_: &LabeledSetPartition, _: &Classification) -> bool {
    true
}

fn nonzero_singletons(p: &LabeledSetPartition) -> usize {
    p.blocks().iter().filter(|blk| blk.len() == 1 && blk[0] != 0).count()
}

/// Exhaustive statistics of a two-group family.
#[derive(Debug, Clone)]
struct AbData {
    total: BigInt,
    /// Members by number of superdiagonal entries (mirror pairs counted once).
    by_superdiagonal: BTreeMap<u32, BigInt>,
    /// Members by `e` where the member's orbit has `|B|^e` elements.
    by_orbit_exponent: BTreeMap<u32, BigInt>,
}

type AbKey = (Family, u32, GroupSpec, GroupSpec);

fn ab_cache() -> &'static Mutex<HashMap<AbKey, AbData>> {
    static CACHE: OnceLock<Mutex<HashMap<AbKey, AbData>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn exact_log(size: usize, base: u64) -> Option<u32> {
    let mut e = 0;
    let mut acc = 1u64;
    while acc < size as u64 {
        acc *= base;
        e += 1;
    }
    (acc == size as u64).then_some(e)
}

fn ab_data(family: Family, n: u32, a: &GroupSpec, bg: &GroupSpec) -> Result<AbData> {
    let key = (family, n, a.clone(), bg.clone());
    if let Some(d) = ab_cache().lock().expect("ab cache").get(&key) {
        return Ok(d.clone());
    }
    let spec = FamilySpec::pair(family, n, a.clone(), bg.clone())?;
    let halve = if family.ground(n).is_signed() { 2 } else { 1 };
    let mut by_superdiagonal = BTreeMap::new();
    let mut total = BigInt::zero();
    for p in enumerate(&spec) {
        total += 1;
        *by_superdiagonal.entry((p.cover_count() / halve) as u32).or_insert_with(BigInt::zero) += 1;
    }
    let mut by_orbit_exponent = BTreeMap::new();
    for report in orbit_decomposition(&spec, false)? {
        let e = exact_log(report.size, bg.order()).ok_or_else(|| {
            Error::Structural(format!("orbit of size {} in {spec} is not a power of |B|", report.size))
        })?;
        *by_orbit_exponent.entry(e).or_insert_with(BigInt::zero) += report.size;
    }
    let data = AbData { total, by_superdiagonal, by_orbit_exponent };
    ab_cache().lock().expect("ab cache").insert(key, data.clone());
    Ok(data)
}

fn ab_count(family: Family, n: u32, a: &GroupSpec, bg: &GroupSpec) -> Result<BigInt> {
    Ok(ab_data(family, n, a, bg)?.total)
}

fn xy(a: &GroupSpec, bg: &GroupSpec) -> (BigInt, BigInt) {
    (BigInt::from(a.order() - 1), BigInt::from(bg.order() - 1))
}

fn compare_values(quantity: &str, left: &BigInt, right: &BigInt) -> Option<Mismatch> {
    (left != right).then(|| (quantity.to_string(), left.to_string(), right.to_string()))
}

fn histogram_text(h: &BTreeMap<u32, BigInt>) -> String {
    let parts: Vec<String> = h.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn compare_histograms(quantity: &str, left: &BTreeMap<u32, BigInt>, right: &BTreeMap<u32, BigInt>) -> Option<Mismatch> {
    let clean = |h: &BTreeMap<u32, BigInt>| -> BTreeMap<u32, BigInt> {
        h.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect()
    };
    let (l, r) = (clean(left), clean(right));
    (l != r).then(|| (quantity.to_string(), histogram_text(&l), histogram_text(&r)))
}

/// A double equality whose left side is a two-group family: the middle sum
/// is keyed by superdiagonal entries and the right sum by orbit size.
struct Decomposition {
    family: Family,
    size: u32,
    middle: BTreeMap<u32, BigInt>,
    right: BTreeMap<u32, BigInt>,
}

fn check_decomposition(d: Decomposition, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let data = ab_data(d.family, d.size, a, bg)?;
    let middle_total: BigInt = d.middle.values().sum();
    let right_total: BigInt = d.right.values().sum();
    Ok(compare_values("family size vs middle sum", &data.total, &middle_total)
        .or_else(|| compare_values("family size vs right sum", &data.total, &right_total))
        .or_else(|| compare_histograms("superdiagonal histogram vs middle terms", &data.by_superdiagonal, &d.middle))
        .or_else(|| compare_histograms("orbit-size histogram vs right terms", &data.by_orbit_exponent, &d.right)))
}

fn terms(n: u32, term: impl Fn(u32) -> (u32, BigInt)) -> BTreeMap<u32, BigInt> {
    let mut out = BTreeMap::new();
    for k in 0..=n {
        let (key, v) = term(k);
        *out.entry(key).or_insert_with(BigInt::zero) += v;
    }
    out
}

fn a_identities_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (_, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::PiAb,
            size: n + 1,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::Pi, k, a, all) * y.pow(n - k))),
            right: terms(n, |k| (n - k, b(n, k) * tally(Family::Pi, k, a, |_, c| c.feasible) * y1.pow(n - k))),
        },
        a,
        bg,
    )
}

fn a_identities_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::NcAb,
            size: n + 1,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::Nc, k, a, |_, c| c.poor) * y.pow(n - k))),
            right: terms(n / 2, |k| (n - 2 * k, catalan(k) * b(n, 2 * k) * x.pow(k) * y1.pow(n - 2 * k))),
        },
        a,
        bg,
    )
}

fn b_identities_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (_, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::PBAb,
            size: n,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::PD, k, a, all) * y.pow(n - k))),
            right: terms(n, |k| (n - k, b(n, k) * tally(Family::PD, k, a, |_, c| c.feasible) * y1.pow(n - k))),
        },
        a,
        bg,
    )
}

fn b_identities_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (_, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::PDAb,
            size: n + 1,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::PB, k, a, all) * y.pow(n - k))),
            right: terms(n, |k| (n - k, b(n, k) * tally(Family::PB, k, a, |_, c| c.b_feasible) * y1.pow(n - k))),
        },
        a,
        bg,
    )
}

fn b_identities_3_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::NcTildeBAb,
            size: n,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::NcTildeB, k, a, |_, c| c.poor) * y.pow(n - k))),
            right: terms(n / 2, |k| (n - 2 * k, b(2 * k, k) * b(n, 2 * k) * x.pow(k) * y1.pow(n - 2 * k))),
        },
        a,
        bg,
    )
}

fn b_identities_4_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    check_decomposition(
        Decomposition {
            family: Family::NcTildeDAb,
            size: n + 1,
            middle: terms(n, |k| (n - k, b(n, k) * tally(Family::NcTildeB, k, a, |_, c| c.b_poor) * y.pow(n - k))),
            right: terms(n, |k| (n - k, b(n, k) * b(k, k / 2) * x.pow(k.div_ceil(2)) * y1.pow(n - k))),
        },
        a,
        bg,
    )
}

/// The alternating sum, the closed or filtered count on the right, and the
/// number of invariant members, which the sum counts.
fn check_inclusion_exclusion(
    n: u32,
    a: &GroupSpec,
    bg: &GroupSpec,
    family: Family,
    offset: u32,
    right: BigInt,
) -> Outcome {
    let (_, y) = xy(a, bg);
    let y1: BigInt = &y + 1;
    let mut left = BigInt::zero();
    for k in 0..=n {
        left += sign(n - k) * b(n, k) * y1.pow(n - k) * ab_count(family, k + offset, a, bg)?;
    }
    let invariant = ab_data(family, n + offset, a, bg)?.by_orbit_exponent.get(&0).cloned().unwrap_or_default();
    Ok(compare_values("alternating sum vs right side", &left, &right)
        .or_else(|| compare_values("invariant members vs right side", &invariant, &right)))
}

fn a_incl_excl_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let right = tally(Family::Pi, n, a, |_, c| c.feasible);
    check_inclusion_exclusion(n, a, bg, Family::PiAb, 1, right)
}

fn a_incl_excl_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, _) = xy(a, bg);
    let closed = if n.is_multiple_of(2) { x.pow(n / 2) * catalan(n / 2) } else { BigInt::zero() };
    let matchings = tally(Family::Nc, n, a, |p, c| c.poor && p.singleton_count() == 0);
    if let Some(m) = compare_values("closed form vs noncrossing perfect matchings", &closed, &matchings) {
        return Ok(Some(m));
    }
    check_inclusion_exclusion(n, a, bg, Family::NcAb, 1, closed)
}

fn b_incl_excl_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let right = tally(Family::PD, n, a, |_, c| c.feasible);
    check_inclusion_exclusion(n, a, bg, Family::PBAb, 0, right)
}

fn b_incl_excl_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let right = tally(Family::PB, n, a, |_, c| c.b_feasible);
    check_inclusion_exclusion(n, a, bg, Family::PDAb, 1, right)
}

fn b_incl_excl_3_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, _) = xy(a, bg);
    let closed = if n.is_multiple_of(2) { b(n, n / 2) * x.pow(n / 2) } else { BigInt::zero() };
    let pairs = tally(Family::NcTildeD, n, a, |p, c| c.poor && p.singleton_count() == 0);
    if let Some(m) = compare_values("closed form vs poor members without singletons", &closed, &pairs) {
        return Ok(Some(m));
    }
    check_inclusion_exclusion(n, a, bg, Family::NcTildeBAb, 0, closed)
}

fn b_incl_excl_4_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, _) = xy(a, bg);
    let closed = b(n, n / 2) * x.pow(n.div_ceil(2));
    let counted = tally(Family::NcTildeB, n, a, |p, c| c.b_poor && nonzero_singletons(p) == 0);
    if let Some(m) = compare_values("closed form vs B-poor members without nonzero singletons", &closed, &counted) {
        return Ok(Some(m));
    }
    check_inclusion_exclusion(n, a, bg, Family::NcTildeDAb, 1, closed)
}

fn hanging_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, y) = xy(a, bg);
    let left = ab_count(Family::NcTildeBAb, n + 1, a, bg)?;
    let right = (&y + 1) * ab_count(Family::NcTildeBAb, n, a, bg)?
        + BigInt::from(2 * n) * x * ab_count(Family::NcAb, n, a, bg)?;
    Ok(compare_values("both sides", &left, &right))
}

fn hanging_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let (x, _) = xy(a, bg);
    let left = ab_count(Family::NcTildeDAb, n + 1, a, bg)?;
    let right = ab_count(Family::NcTildeBAb, n, a, bg)? + BigInt::from(n) * x * ab_count(Family::NcAb, n, a, bg)?;
    Ok(compare_values("both sides", &left, &right))
}

fn three_term_counts(n: u32, a: &GroupSpec, bg: &GroupSpec, family: Family, shift_by: i64) -> Outcome {
    let (x, y) = xy(a, bg);
    let ni = n as i64;
    let y1: BigInt = &y + 1;
    let disc = BigInt::from(4) * &x - &y1 * &y1;
    let left = BigInt::from(ni + shift_by) * ab_count(family, n, a, bg)?;
    let right = &y1 * BigInt::from(2 * ni - 1) * ab_count(family, n - 1, a, bg)?
        + disc * BigInt::from(ni - 1 - shift_by) * ab_count(family, n - 2, a, bg)?;
    Ok(compare_values("both sides", &left, &right))
}

fn three_term_1_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    three_term_counts(n, a, bg, Family::NcAb, 1)
}

fn three_term_2_counts(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    three_term_counts(n, a, bg, Family::NcTildeBAb, 0)
}

// ---------------------------------------------------------------------------
// Structural checks

fn unlabeled(family: Family, n: u32) -> FamilySpec {
    match family {
        Family::Nn | Family::NnB => FamilySpec::unlabeled(family, n).expect("unlabeled family"),
        _ => spec1(family, n, &GroupSpec::unlabeled()),
    }
}

fn mismatch(quantity: impl Into<String>, left: impl ToString, right: impl ToString) -> Option<Mismatch> {
    Some((quantity.into(), left.to_string(), right.to_string()))
}

fn nnb_counts(n: u32) -> Outcome {
    let hist = count_by(&unlabeled(Family::NnB, n), Statistic::Blocks);
    for k in 0..=n {
        let with_k =
            hist.get(&(2 * k as usize)).copied().unwrap_or(0) + hist.get(&(2 * k as usize + 1)).copied().unwrap_or(0);
        if BigInt::from(with_k) != b(n, k).pow(2) {
            return Ok(mismatch(format!("members with {} or {} blocks", 2 * k, 2 * k + 1), with_k, b(n, k).pow(2)));
        }
    }
    let total: u64 = hist.values().sum();
    Ok(compare_values("total", &BigInt::from(total), &b(2 * n, n)))
}

fn symmetric_dyck(n: u32) -> Outcome {
    let symmetric: Vec<_> = enumerate_dyck(2 * n as usize).into_iter().filter(|p| p.is_symmetric()).collect();
    if BigInt::from(symmetric.len()) != b(2 * n, n) {
        return Ok(mismatch("symmetric paths", symmetric.len(), b(2 * n, n)));
    }
    let nnb: HashSet<LabeledSetPartition> = enumerate(&unlabeled(Family::NnB, n)).collect();
    let mut images = HashSet::new();
    for path in &symmetric {
        let p = nonnesting_b_from_dyck(path)?;
        if !nnb.contains(&p) {
            return Ok(mismatch(format!("image of {path}"), p.to_text(), "a member of NN_B"));
        }
        images.insert(p);
    }
    Ok(compare_values("distinct images vs |NN_B|", &BigInt::from(images.len()), &BigInt::from(nnb.len())))
}

fn uncross_bijection(n: u32) -> Outcome {
    let nc: HashSet<LabeledSetPartition> = enumerate(&unlabeled(Family::Nc, n)).collect();
    let mut images = HashSet::new();
    for p in enumerate(&unlabeled(Family::Nn, n)) {
        let q = uncross(&p);
        if q.block_count() != p.block_count() {
            return Ok(mismatch(format!("blocks of uncross({})", p.to_text()), q.block_count(), p.block_count()));
        }
        if !images.insert(q) {
            return Ok(mismatch(format!("uncross is not injective at {}", p.to_text()), "repeat", "distinct"));
        }
    }
    Ok((images != nc).then(|| ("image set vs NC(n)".into(), images.len().to_string(), nc.len().to_string())))
}

/// Symmetric noncrossing partitions of `[±n]`, read off `NC(2n)` by the
/// order-preserving relabeling.
fn symmetric_noncrossing(n: u32) -> Result<Vec<LabeledSetPartition>> {
    let ni = n as i32;
    let relabel = |v: i32| if v <= ni { v - ni - 1 } else { v - ni };
    let mut out = Vec::new();
    for p in enumerate(&unlabeled(Family::Nc, 2 * n)) {
        let blocks: Vec<Vec<i32>> = p.blocks().iter().map(|blk| blk.iter().map(|&v| relabel(v)).collect()).collect();
        let q = LabeledSetPartition::unlabeled(Ground::d(n), &blocks)?;
        let mut negated: Vec<Vec<i32>> = blocks
            .iter()
            .map(|blk| {
                let mut nb: Vec<i32> = blk.iter().map(|v| -v).collect();
                nb.sort();
                nb
            })
            .collect();
        let mut sorted = blocks.clone();
        sorted.sort();
        negated.sort();
        if sorted == negated {
            out.push(q);
        }
    }
    Ok(out)
}

fn uncross_b_props(n: u32) -> Outcome {
    let targets = symmetric_noncrossing(n)?;
    let all_targets: HashSet<_> = targets.iter().cloned().collect();
    let mut images = HashSet::new();
    for p in enumerate(&unlabeled(Family::NcTildeB, n)) {
        let q = uncross_b(&p)?;
        let (k, m) = (p.block_count(), q.block_count());
        if m != k && m + 1 != k {
            return Ok(mismatch(format!("blocks of uncross_B({})", p.to_text()), m, format!("{} or {}", k - 1, k)));
        }
        if !images.insert(q) {
            return Ok(mismatch("uncross_B is not injective", p.to_text(), "distinct images"));
        }
    }
    if images != all_targets {
        return Ok(mismatch("uncross_B image vs symmetric noncrossing partitions", images.len(), all_targets.len()));
    }
    let even: HashSet<_> = targets
        .into_iter()
        .filter(|q| q.blocks().iter().filter(|blk| blk.contains(&-blk[0])).count() % 2 == 0)
        .collect();
    let mut images = HashSet::new();
    for p in enumerate(&unlabeled(Family::NcTildeD, n)) {
        if !images.insert(uncross(&p)) {
            return Ok(mismatch("uncross on NC~D is not injective", p.to_text(), "distinct images"));
        }
    }
    Ok((images != even).then(|| {
        ("uncross image of NC~D vs even self-negated targets".into(), images.len().to_string(), even.len().to_string())
    }))
}

fn size_two_blocks(p: &LabeledSetPartition) -> bool {
    p.blocks().iter().all(|blk| blk.len() == 2)
}

fn two_blocks_1(n: u32) -> Outcome {
    let found = tally(Family::NcTildeD, 2 * n, &GroupSpec::unlabeled(), |p, _| size_two_blocks(p));
    Ok(compare_values("members with all blocks of size two", &found, &b(2 * n, n)))
}

fn two_blocks_2(n: u32) -> Outcome {
    let found = tally(Family::NcTildeD, 2 * n + 1, &GroupSpec::unlabeled(), |p, _| size_two_blocks(p));
    Ok(compare_values("members with all blocks of size two", &found, &BigInt::zero()))
}

fn two_blocks_3(n: u32) -> Outcome {
    let found = tally(Family::NcTildeB, n, &GroupSpec::unlabeled(), |p, c| c.b_poor && nonzero_singletons(p) == 0);
    Ok(compare_values("B-poor members without nonzero singletons", &found, &b(n, n / 2)))
}

/// Membership in the unlabeled-shape family, judged from the classification.
fn in_family(family: Family, c: &Classification) -> bool {
    match family {
        Family::Pi => true,
        Family::Nc => c.noncrossing,
        Family::PB | Family::PD => c.type_symmetric,
        Family::NcTildeB | Family::NcTildeD => c.type_symmetric && c.nc_tilde,
        _ => false,
    }
}

/// Orbit theorem for one two-group family: one 2-regular member per orbit,
/// unshifted representatives biject onto `source`, orbit sizes `|B|^e`.
fn check_orbits(
    ab: Family,
    n: u32,
    a: &GroupSpec,
    bg: &GroupSpec,
    source: (Family, u32),
    keep: fn(&Classification) -> bool,
    exponent: fn(&LabeledSetPartition) -> u32,
) -> Outcome {
    let spec = FamilySpec::pair(ab, n, a.clone(), bg.clone())?;
    let ds = direct_sum(a, bg);
    let mut sources = HashSet::new();
    let reports = orbit_decomposition(&spec, false)?;
    for r in &reports {
        let rep = &r.representative;
        if r.two_regular_count != 1 {
            return Ok(mismatch(
                format!("2-regular members in the orbit of {}", rep.to_text()),
                r.two_regular_count,
                1,
            ));
        }
        let gamma = unshift(rep)?;
        let c = gamma.classify();
        if !gamma.arcs().iter().all(|arc| ds.in_a_nonzero(&arc.label)) || !in_family(source.0, &c) || !keep(&c) {
            return Ok(mismatch(
                format!("unshift of {}", rep.to_text()),
                gamma.to_text(),
                format!("a member of {}", source.0),
            ));
        }
        let expected = (bg.order() as usize).pow(exponent(&gamma));
        if r.size != expected {
            return Ok(mismatch(format!("size of the orbit of {}", rep.to_text()), r.size, expected));
        }
        sources.insert(gamma);
    }
    if sources.len() != reports.len() {
        return Ok(mismatch("distinct unshifted representatives vs orbits", sources.len(), reports.len()));
    }
    let expected = tally(source.0, source.1, a, |_, c| keep(c));
    Ok(compare_values(&format!("orbits in {spec} vs source members"), &BigInt::from(reports.len()), &expected))
}

fn orbit_main(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let s = |g: &LabeledSetPartition| g.singleton_count() as u32;
    Ok(check_orbits(Family::PiAb, n, a, bg, (Family::Pi, n - 1), |_| true, s)?.or(check_orbits(
        Family::NcAb,
        n,
        a,
        bg,
        (Family::Nc, n - 1),
        |c| c.poor,
        s,
    )?))
}

fn orbit_b(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let half = |g: &LabeledSetPartition| g.singleton_count() as u32 / 2;
    Ok(check_orbits(Family::PBAb, n, a, bg, (Family::PD, n), |_| true, half)?.or(check_orbits(
        Family::NcTildeBAb,
        n,
        a,
        bg,
        (Family::NcTildeD, n),
        |c| c.poor,
        half,
    )?))
}

fn orbit_d(n: u32, a: &GroupSpec, bg: &GroupSpec) -> Outcome {
    let half = |g: &LabeledSetPartition| g.singleton_count() as u32 / 2;
    Ok(check_orbits(Family::PDAb, n, a, bg, (Family::PB, n - 1), |_| true, half)?.or(check_orbits(
        Family::NcTildeDAb,
        n,
        a,
        bg,
        (Family::NcTildeB, n - 1),
        |c| c.b_poor,
        half,
    )?))
}

/// `Λ⁺⁺ = Λ` on `whole`, `Λ⁺` stays in `part`, and block counts follow `blocks`.
fn check_involution(whole: Family, part: Family, n: u32, blocks: impl Fn(&LabeledSetPartition) -> usize) -> Outcome {
    for p in enumerate(&unlabeled(whole, n)) {
        let plus = plus_involution(&p)?;
        if plus_involution(&plus)? != p {
            return Ok(mismatch(format!("({})++", p.to_text()), plus_involution(&plus)?.to_text(), p.to_text()));
        }
        let c = p.classify();
        if in_family(part, &c) {
            if !in_family(part, &plus.classify()) {
                return Ok(mismatch(format!("({})+", p.to_text()), plus.to_text(), format!("a member of {part}")));
            }
            if plus.block_count() != blocks(&p) {
                return Ok(mismatch(format!("blocks of ({})+", p.to_text()), plus.block_count(), blocks(&p)));
            }
        }
    }
    Ok(None)
}

fn rank_invert_a(n: u32) -> Outcome {
    check_involution(Family::Pi, Family::Nc, n, |p| n as usize + 1 - p.block_count())
}

fn rank_invert_b(n: u32) -> Outcome {
    check_involution(Family::PB, Family::NcTildeB, n, |p| {
        let k = (p.block_count() - 1) / 2;
        2 * (n as usize - k) + 1
    })
}

fn rank_invert_d(n: u32) -> Outcome {
    check_involution(Family::PD, Family::NcTildeD, n, |p| {
        let ends_block = p.blocks().iter().any(|blk| blk.last() == Some(&-1));
        if ends_block {
            2 * n as usize + 2 - p.block_count()
        } else {
            2 * n as usize - p.block_count()
        }
    })
}

/// `shift` is injective on the kept members of `source` and its image is
/// exactly the members of `target` satisfying `image`.
fn check_restriction(
    source: &FamilySpec,
    keep: impl Fn(&LabeledSetPartition) -> bool,
    target: &FamilySpec,
    image: impl Fn(&LabeledSetPartition) -> bool,
) -> Outcome {
    let mut images = HashSet::new();
    for p in enumerate(source).filter(|p| keep(p)) {
        let q = shift(&p)?;
        if !images.insert(q) {
            return Ok(mismatch(format!("shift on {source} is not injective"), p.to_text(), "distinct images"));
        }
    }
    let expected: HashSet<_> = enumerate(target).filter(|p| image(p)).collect();
    Ok((images != expected).then(|| {
        (
            format!("shift image of {source} vs target set in {target}"),
            images.len().to_string(),
            expected.len().to_string(),
        )
    }))
}

fn regular_apart(p: &LabeledSetPartition) -> bool {
    p.classify().two_regular && !has_abutting_blocks(p)
}

fn regular(p: &LabeledSetPartition) -> bool {
    p.classify().two_regular
}

fn shift_bijections_a(n: u32, g: &GroupSpec) -> Outcome {
    let pi = |m| spec1(Family::Pi, m, g);
    let nc = |m| spec1(Family::Nc, m, g);
    Ok(check_restriction(&pi(n), |p| p.classify().feasible, &pi(n + 1), regular_apart)?.or(check_restriction(
        &nc(n),
        |p| p.classify().poor,
        &nc(n + 1),
        regular,
    )?))
}

fn shift_bijections_bd(n: u32, g: &GroupSpec) -> Outcome {
    let f = |family, m| spec1(family, m, g);
    let checks = [
        check_restriction(&f(Family::PD, n), |p| p.classify().feasible, &f(Family::PB, n), regular_apart)?,
        check_restriction(&f(Family::PB, n), |p| p.classify().b_feasible, &f(Family::PD, n + 1), regular_apart)?,
        check_restriction(&f(Family::NcTildeD, n), |p| p.classify().poor, &f(Family::NcTildeB, n), regular)?,
        check_restriction(&f(Family::NcTildeB, n), |p| p.classify().b_poor, &f(Family::NcTildeD, n + 1), regular)?,
    ];
    Ok(checks.into_iter().flatten().next())
}

// ---------------------------------------------------------------------------
// Running

fn quick(max: u32, min: u32) -> u32 {
    (max / 2).max(min)
}

fn range_of(min: u32, max: u32, profile: Profile, params: &Params) -> (u32, u32) {
    let max = match profile {
        Profile::Desk => max,
        Profile::Quick => quick(max, min),
    };
    (params.n_min.unwrap_or(min).max(min), params.n_max.unwrap_or(max))
}

fn enumerative_max(kind: Kind) -> u32 {
    match kind {
        Kind::A => 6,
        Kind::SignedBD => 4,
    }
}

fn eval_sides(sides: &[BiPoly], point: Option<(i64, i64)>) -> Vec<String> {
    sides
        .iter()
        .map(|p| match point {
            Some((x, y)) => p.eval_int(x, y).to_string(),
            None => p.to_text(),
        })
        .collect()
}

fn compare_sides(sides: &[BiPoly], point: Option<(i64, i64)>) -> Option<(String, String, String)> {
    let shown = eval_sides(sides, point);
    let unequal = match point {
        Some(_) => shown.iter().skip(1).position(|s| *s != shown[0]),
        None => sides.iter().skip(1).position(|p| *p != sides[0]),
    }?;
    Some((format!("side 1 vs side {}", unequal + 2), shown[0].clone(), shown[unequal + 1].clone()))
}

fn witness(params: String, groups: Option<String>, m: Mismatch) -> Witness {
    Witness { params, groups, quantity: m.0, left: m.1, right: m.2 }
}

struct Run {
    range: String,
    witness: Option<Witness>,
    sample: Option<Sample>,
}

fn run_symbolic(s: Symbolic, profile: Profile, params: &Params) -> Run {
    let point = params.point;
    match s {
        Symbolic::N { min, max, sides } => {
            let (lo, hi) = range_of(min, max, profile, params);
            let mut sample = None;
            for n in lo..=hi {
                let values = sides(n);
                if let Some(m) = compare_sides(&values, point) {
                    return Run {
                        range: format!("n={lo}..={hi}"),
                        witness: Some(witness(format!("n={n}"), None, m)),
                        sample: None,
                    };
                }
                if point.is_some() {
                    sample = Some(Sample { params: format!("n={n}"), sides: eval_sides(&values, point) });
                }
            }
            Run { range: format!("n={lo}..={hi}"), witness: None, sample }
        }
        Symbolic::MN { max, sides } => {
            let (_, hi) = range_of(0, max, profile, params);
            for total in 0..=2 * hi {
                for m in total.saturating_sub(hi)..=total.min(hi) {
                    let n = total - m;
                    if let Some(mm) = compare_sides(&sides(m, n), point) {
                        return Run {
                            range: format!("m,n=0..={hi}"),
                            witness: Some(witness(format!("m={m},n={n}"), None, mm)),
                            sample: None,
                        };
                    }
                }
            }
            Run { range: format!("m,n=0..={hi}"), witness: None, sample: None }
        }
    }
}

fn pair_text(a: &GroupSpec, bg: &GroupSpec) -> String {
    format!("A={a},B={bg}")
}

fn run_enumerative(e: Enumerative, profile: Profile, params: &Params) -> Result<Run> {
    let (lo, hi) = range_of(e.min, enumerative_max(e.kind), profile, params);
    let pairs = params.pairs.clone().unwrap_or_else(default_pairs);
    let range = format!("n={lo}..={hi} over {} group pairs", pairs.len());
    for n in lo..=hi {
        for (a, bg) in &pairs {
            if let Some(m) = (e.check)(n, a, bg)? {
                let w = witness(format!("n={n}"), Some(pair_text(a, bg)), m);
                return Ok(Run { range, witness: Some(w), sample: None });
            }
        }
    }
    Ok(Run { range, witness: None, sample: None })
}

fn run_structural(s: Structural, profile: Profile, params: &Params) -> Result<Run> {
    let found = |range: String, w: Option<Witness>| Ok(Run { range, witness: w, sample: None });
    match s {
        Structural::Plain { min, max, check } => {
            let (lo, hi) = range_of(min, max, profile, params);
            let range = format!("n={lo}..={hi}");
            for n in lo..=hi {
                if let Some(m) = check(n)? {
                    return found(range, Some(witness(format!("n={n}"), None, m)));
                }
            }
            found(range, None)
        }
        Structural::Single { min, max, check } => {
            let (lo, hi) = range_of(min, max, profile, params);
            let groups = params.groups.clone().unwrap_or_else(default_groups);
            let range = format!("n={lo}..={hi} over {} groups", groups.len());
            for n in lo..=hi {
                for g in &groups {
                    if let Some(m) = check(n, g)? {
                        return found(range, Some(witness(format!("n={n}"), Some(format!("A={g}")), m)));
                    }
                }
            }
            found(range, None)
        }
        Structural::Pair { min, max, check } => {
            let (lo, hi) = range_of(min, max, profile, params);
            let pairs = params.pairs.clone().unwrap_or_else(default_pairs);
            let range = format!("n={lo}..={hi} over {} group pairs", pairs.len());
            for n in lo..=hi {
                for (a, bg) in &pairs {
                    if let Some(m) = check(n, a, bg)? {
                        return found(range, Some(witness(format!("n={n}"), Some(pair_text(a, bg)), m)));
                    }
                }
            }
            found(range, None)
        }
    }
}

fn run_mode(entry: &Identity, mode: Mode, profile: Profile, params: &Params) -> Result<CheckResult> {
    let start = Instant::now();
    let outcome = match mode {
        Mode::Symbolic => entry.symbolic.map(|s| Ok(run_symbolic(s, profile, params))),
        Mode::Enumerative => entry.enumerative.map(|e| run_enumerative(e, profile, params)),
        Mode::Structural => entry.structural.map(|s| run_structural(s, profile, params)),
    };
    let outcome = match outcome {
        Some(r) => r?,
        None => return arg(format!("{} has no {mode} check", entry.id)),
    };
    Ok(CheckResult {
        id: entry.id.to_string(),
        mode,
        range: outcome.range,
        status: if outcome.witness.is_none() { Status::Pass } else { Status::Fail },
        millis: start.elapsed().as_millis() as u64,
        witness: outcome.witness,
        sample: outcome.sample,
    })
}

/// Runs one identity in `mode`, or in every mode it supports.
pub fn run(id: &str, mode: Option<Mode>, profile: Profile, params: &Params) -> Result<Vec<CheckResult>> {
    let entry = lookup(id)?;
    let modes = match mode {
        Some(m) => vec![m],
        None => entry.modes(),
    };
    modes.into_iter().map(|m| run_mode(entry, m, profile, params)).collect()
}

/// Runs every check whose mode is in `modes` (all modes when empty), in
/// parallel, and reports them sorted by id then mode.
pub fn run_all(profile: Profile, modes: &[Mode], jobs: Option<usize>) -> Result<Report> {
    let tasks: Vec<(&Identity, Mode)> = registry()
        .iter()
        .flat_map(|e| e.modes().into_iter().map(move |m| (e, m)))
        .filter(|(_, m)| modes.is_empty() || modes.contains(m))
        .collect();
    let params = Params::default();
    let work =
        || -> Result<Vec<CheckResult>> { tasks.par_iter().map(|(e, m)| run_mode(e, *m, profile, &params)).collect() };
    let mut results = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Argument(format!("cannot start {j} workers: {e}")))?
            .install(work)?,
        None => work()?,
    };
    results.sort_by(|a, b| (a.id.as_str(), a.mode).cmp(&(b.id.as_str(), b.mode)));
    let failed = results.iter().filter(|r| !r.passed()).count();
    Ok(Report { profile, passed: results.len() - failed, failed, results })
}

/// The total number of members of a family over `A ⊕ B` in a two-group family.
pub fn two_group_count(family: Family, n: u32, a: &GroupSpec, bg: &GroupSpec) -> Result<u64> {
    Ok(count(&FamilySpec::pair(family, n, a.clone(), bg.clone())?))
}
