//! Unitriangular groups over prime fields, their superclasses, and exact
//! evaluation of the supercharacters indexed by labeled partitions of types
//! A, B and D.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action::plus;
use crate::enumerate::{count, enumerate, Family, FamilySpec};
use crate::error::{arg, Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::maps::halve;
use crate::partition::{Ground, LabeledSetPartition, PartitionJson};
use crate::poly::{family as poly_family, PolyFamily};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn require_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{p} is not prime; only prime fields are supported")))
    }
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u32
}

// ---------------------------------------------------------------------------
// Cyclotomic integers

/// An element of `Z[ζ_p]` in the basis `1, ζ, …, ζ^(p-2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycValue {
    p: u32,
    coeffs: Vec<i128>,
}

impl CycValue {
    pub fn zero(p: u32) -> Self {
        CycValue { p, coeffs: vec![0; p as usize - 1] }
    }

    pub fn integer(p: u32, v: i128) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = v;
        out
    }

    pub fn one(p: u32) -> Self {
        Self::integer(p, 1)
    }

    /// `ζ^k`.
    pub fn zeta_power(p: u32, k: u32) -> Self {
        let mut full = vec![0i128; p as usize];
        full[(k % p) as usize] = 1;
        Self::from_full(p, full)
    }

    /// Reduces coefficients of `1, ζ, …, ζ^(p-1)` using `ζ^(p-1) = -(1 + … + ζ^(p-2))`.
    fn from_full(p: u32, mut full: Vec<i128>) -> Self {
        let top = full.pop().expect("p >= 2");
        CycValue { p, coeffs: full.into_iter().map(|c| c - top).collect() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an integer, when it lies in `Z`.
    pub fn as_integer(&self) -> Option<i128> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Complex conjugation, `ζ ↦ ζ^(p-1)`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![0i128; p];
        for (k, &c) in self.coeffs.iter().enumerate() {
            full[(p - k) % p] += c;
        }
        Self::from_full(self.p, full)
    }

    pub fn scale(&self, k: i128) -> Self {
        CycValue { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let body = match (c.abs(), k) {
                (a, 0) => a.to_string(),
                (1, _) => power,
                (a, _) => format!("{a}{power}"),
            };
            let sign = if c < 0 { "-" } else { "+" };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (sign, body)) in parts.iter().enumerate() {
            match (idx, *sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => out.push_str(&format!(" {s} ")),
            }
            out.push_str(body);
        }
        out
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &CycValue {
    type Output = CycValue;
    fn add(self, rhs: &CycValue) -> CycValue {
        assert_eq!(self.p, rhs.p, "cyclotomic values over different primes");
        CycValue { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &CycValue {
    type Output = CycValue;
    fn mul(self, rhs: &CycValue) -> CycValue {
        assert_eq!(self.p, rhs.p, "cyclotomic values over different primes");
        let p = self.p as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CycValue::from_full(self.p, full)
    }
}

impl Neg for &CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        self.scale(-1)
    }
}

/// `θ(t) = ζ_p^t`, the fixed nontrivial additive character of `F_p`.
pub fn theta(p: u32, t: u32) -> Result<CycValue> {
    require_prime(p)?;
    if t >= p {
        return arg(format!("{t} is not a residue modulo {p}"));
    }
    Ok(CycValue::zeta_power(p, t))
}

/// An exact rational in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        let g = num.gcd(&den).max(1) * den.signum();
        Rational { num: num / g, den: den / g }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `Σ w_k a_k conj(b_k) / Σ w_k`, required to be rational.
fn weighted_inner(a: &[CycValue], b: &[CycValue], weights: &[u64]) -> Result<Rational> {
    let p = a.first().map_or(2, |v| v.p);
    let mut sum = CycValue::zero(p);
    for ((x, y), &w) in a.iter().zip(b).zip(weights) {
        sum = &sum + &(x * &y.conj()).scale(w as i128);
    }
    let total: u64 = weights.iter().sum();
    match sum.as_integer() {
        Some(v) => Ok(Rational::new(v, total as i128)),
        None => Err(Error::Structural(format!("inner product {sum} / {total} is not rational"))),
    }
}

/// `⟨χ, ψ⟩ = (1/|G|) Σ_g χ(g) conj(ψ(g))` over value lists indexed by the
/// elements of a group.
pub fn inner_product(chi: &[CycValue], psi: &[CycValue]) -> Result<Rational> {
    if chi.len() != psi.len() || chi.is_empty() {
        return arg(format!("value lists of lengths {} and {} do not describe one group", chi.len(), psi.len()));
    }
    weighted_inner(chi, psi, &vec![1; chi.len()])
}

// ---------------------------------------------------------------------------
// Matrices

/// An `n × n` upper unitriangular matrix over `F_p`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitriMatrix {
    p: u32,
    n: usize,
    entries: Vec<u32>,
}

impl UnitriMatrix {
    pub fn identity(n: usize, p: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        UnitriMatrix { p, n, entries }
    }

    /// Builds a matrix from its rows, checking unitriangularity.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        require_prime(p)?;
        let n = rows.len();
        let mut m = Self::identity(n, p);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return arg(format!("row {} has {} entries, expected {n}", i + 1, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                let v = v % p;
                let expected = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Some(1),
                    std::cmp::Ordering::Greater => Some(0),
                    std::cmp::Ordering::Less => None,
                };
                if expected.is_some_and(|e| e != v) {
                    return arg(format!("entry ({},{}) = {v} breaks unitriangularity", i + 1, j + 1));
                }
                m.entries[i * n + j] = v;
            }
        }
        Ok(m)
    }

    /// `x_Γ = 1 + Σ Γ_ij e_ij` for `Γ` on `[n]` labeled in `Z/p`.
    pub fn from_partition(gamma: &LabeledSetPartition, p: u32) -> Result<Self> {
        let n = gamma.ground().len();
        if gamma.ground() != Ground::a(n as u32) || *gamma.group() != GroupSpec::cyclic(p) {
            return arg(format!("{} is not an F_{p}-labeled partition of [{n}]", gamma.to_text()));
        }
        let mut m = Self::identity(n, p);
        for a in gamma.arcs() {
            m.set(a.i as usize, a.j as usize, a.label.residues()[0]);
        }
        Ok(m)
    }

    /// A uniformly random element of `U_n(F_p)`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: u32, rng: &mut R) -> Self {
        let mut m = Self::identity(n, p);
        for i in 0..n {
            for j in i + 1..n {
                m.entries[i * n + j] = rng.gen_range(0..p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[(i - 1) * self.n + (j - 1)] = v % self.p;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.p)
    }

    pub fn mul(&self, rhs: &UnitriMatrix) -> Result<UnitriMatrix> {
        if self.n != rhs.n || self.p != rhs.p {
            return arg("matrices of different sizes or fields");
        }
        let (n, p) = (self.n, self.p as u64);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: u64 = (i..=j).map(|k| self.entries[i * n + k] as u64 * rhs.entries[k * n + j] as u64).sum();
                entries[i * n + j] = (s % p) as u32;
            }
        }
        Ok(UnitriMatrix { p: self.p, n, entries })
    }

    /// The backwards transpose, `(g†)_ij = g_(n+1-j, n+1-i)`.
    pub fn dagger(&self) -> UnitriMatrix {
        let n = self.n;
        let mut out = Self::identity(n, self.p);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entries[(n - 1 - j) * n + (n - 1 - i)];
            }
        }
        out
    }

    pub fn inverse(&self) -> UnitriMatrix {
        // Back substitution on g·h = 1, column by column.
        let (n, p) = (self.n, self.p as i64);
        let mut h = Self::identity(n, self.p);
        for j in 0..n {
            for i in (0..j).rev() {
                let s: i64 = (i + 1..=j).map(|k| self.entries[i * n + k] as i64 * h.entries[k * n + j] as i64).sum();
                h.entries[i * n + j] = (-s).rem_euclid(p) as u32;
            }
        }
        h
    }

    /// `1 + left·(self - 1)·right`, the two-sided action whose orbits are superclasses.
    pub fn two_sided(&self, left: &UnitriMatrix, right: &UnitriMatrix) -> Result<UnitriMatrix> {
        if self.n != left.n || self.n != right.n || self.p != left.p || self.p != right.p {
            return arg("matrices of different sizes or fields");
        }
        let (n, p) = (self.n, self.p as u64);
        let strict = |i: usize, j: usize| if i < j { self.entries[i * n + j] as u64 } else { 0 };
        let mut middle = vec![0u64; n * n];
        for i in 0..n {
            for j in i + 1..n {
                middle[i * n + j] = (i..j).map(|k| left.entries[i * n + k] as u64 * strict(k, j)).sum::<u64>() % p;
            }
        }
        let mut out = Self::identity(n, self.p);
        for i in 0..n {
            for j in i + 1..n {
                let s: u64 = (i + 1..=j).map(|k| middle[i * n + k] * right.entries[k * n + j] as u64).sum();
                out.entries[i * n + j] = (s % p) as u32;
            }
        }
        Ok(out)
    }

    /// Rows as plain vectors, for display and serialization.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }
}

impl fmt::Display for UnitriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The rook-placement representative of the two-sided orbit of `g - 1`,
/// read as a partition of `[n]` labeled in `F_p`.
///
/// Columns are scanned left to right. In each, the lowest nonzero entry in a
/// row without a pivot becomes the pivot; row operations clear the column
/// above it and column operations clear the row to its right.
pub fn superclass_reduce(g: &UnitriMatrix) -> LabeledSetPartition {
    let (n, p) = (g.n, g.p as u64);
    let mut m: Vec<u64> = g.entries.iter().map(|&v| v as u64).collect();
    for i in 0..n {
        m[i * n + i] = 0;
    }
    let mut pivot_rows = vec![false; n];
    let mut arcs = Vec::new();
    for c in 0..n {
        let Some(r) = (0..c).rev().find(|&r| !pivot_rows[r] && m[r * n + c] != 0) else {
            continue;
        };
        pivot_rows[r] = true;
        let v = m[r * n + c];
        let v_inv = inverse_mod(v as u32, p as u32) as u64;
        for above in 0..r {
            let f = m[above * n + c] * v_inv % p;
            if f != 0 {
                for k in c..n {
                    m[above * n + k] = (m[above * n + k] + (p - f) * m[r * n + k]) % p;
                }
            }
        }
        for right in c + 1..n {
            let f = m[r * n + right] * v_inv % p;
            if f != 0 {
                for k in 0..=r {
                    m[k * n + right] = (m[k * n + right] + (p - f) * m[k * n + c]) % p;
                }
            }
        }
        arcs.push(((r + 1) as i32, (c + 1) as i32, GroupElement::new(vec![v as u32])));
    }
    LabeledSetPartition::from_arcs(Ground::a(n as u32), GroupSpec::cyclic(g.p), arcs)
        .expect("pivots form a rook placement")
}

// ---------------------------------------------------------------------------
// Supercharacters

fn check_field_partition(lambda: &LabeledSetPartition, n: usize, p: u32) -> Result<()> {
    if lambda.ground() != Ground::a(n as u32) {
        return arg(format!("{} is not a partition of [{n}]", lambda.to_text()));
    }
    if *lambda.group() != GroupSpec::cyclic(p) {
        return arg(format!("{} is not labeled in F_{p}", lambda.to_text()));
    }
    Ok(())
}

/// `χ_Λ(x_Γ)` for `Λ, Γ` partitions of the same `[n]` labeled in `F_p`.
///
/// Zero when `Γ` has an arc `(i,j)` or `(j,k)` strictly inside an arc `(i,k)`
/// of `Λ`; otherwise the product over arcs `(i,l)` of `Λ` of
/// `p^(l-i-1-#{arcs of Γ strictly inside (i,l)}) θ(Λ_il Γ_il)`.
pub fn chi_at(lambda: &LabeledSetPartition, gamma: &LabeledSetPartition) -> CycValue {
    let p = lambda.group().moduli()[0];
    let gamma_label: HashMap<(i32, i32), u32> =
        gamma.arcs().iter().map(|a| ((a.i, a.j), a.label.residues()[0])).collect();
    let starts: HashMap<i32, i32> = gamma.arcs().iter().map(|a| (a.i, a.j)).collect();
    let ends: HashMap<i32, i32> = gamma.arcs().iter().map(|a| (a.j, a.i)).collect();
    let mut exponent = 0u32;
    let mut phase = 0u64;
    for a in lambda.arcs() {
        let (i, l) = (a.i, a.j);
        if starts.get(&i).is_some_and(|&j| j < l) || ends.get(&l).is_some_and(|&j| j > i) {
            return CycValue::zero(p);
        }
        let inside = gamma.arcs().iter().filter(|b| i < b.i && b.j < l).count() as u32;
        exponent += (l - i - 1) as u32 - inside;
        if let Some(&t) = gamma_label.get(&(i, l)) {
            phase += a.label.residues()[0] as u64 * t as u64;
        }
    }
    CycValue::zeta_power(p, (phase % p as u64) as u32).scale((p as i128).pow(exponent))
}

/// `χ_Λ(g)` on `U_n(F_p)`.
pub fn chi_eval(lambda: &LabeledSetPartition, g: &UnitriMatrix) -> Result<CycValue> {
    check_field_partition(lambda, g.n, g.p)?;
    Ok(chi_at(lambda, &superclass_reduce(g)))
}

/// `χ^B_Λ(g) = χ_halve(Λ)(g)` for `Λ ∈ P^B(n, F_p)` and `g ∈ UT^B_n(F_p)`.
pub fn chi_b_eval(lambda: &LabeledSetPartition, g: &UnitriMatrix) -> Result<CycValue> {
    restricted_eval(SubgroupKind::B, lambda, g)
}

/// `χ^D_Λ(g) = χ_halve(Λ)(g)` for `Λ ∈ P^D(n, F_p)` and `g ∈ UT^D_n(F_p)`.
pub fn chi_d_eval(lambda: &LabeledSetPartition, g: &UnitriMatrix) -> Result<CycValue> {
    restricted_eval(SubgroupKind::D, lambda, g)
}

fn restricted_eval(kind: SubgroupKind, lambda: &LabeledSetPartition, g: &UnitriMatrix) -> Result<CycValue> {
    let ground = lambda.ground();
    let n = ground.n;
    let spec = SubgroupSpec::new(kind, n, g.p)?;
    if spec.ground() != ground {
        return arg(format!("{} is not indexed by {}", lambda.to_text(), spec.ground()));
    }
    if !spec.contains(g) {
        return arg(format!("the matrix is not in {spec}"));
    }
    let half = halve(lambda)?;
    chi_eval(&half, g)
}

// ---------------------------------------------------------------------------
// Groups

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubgroupKind {
    A,
    B,
    D,
}

impl FromStr for SubgroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(SubgroupKind::A),
            "B" => Ok(SubgroupKind::B),
            "D" => Ok(SubgroupKind::D),
            _ => arg(format!("unknown group kind {s:?}; expected A, B or D")),
        }
    }
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `U_n(F_p)`, `UT^B_n(F_p) ⊂ U_(2n+1)(F_p)` or `UT^D_n(F_p) ⊂ U_(2n)(F_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SubgroupSpec {
    pub kind: SubgroupKind,
    pub n: u32,
    pub p: u32,
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SubgroupKind::A => write!(f, "U_{}(F_{})", self.n, self.p),
            k => write!(f, "UT^{k}_{}(F_{})", self.n, self.p),
        }
    }
}

impl SubgroupSpec {
    pub fn new(kind: SubgroupKind, n: u32, p: u32) -> Result<Self> {
        require_prime(p)?;
        if kind != SubgroupKind::A && p == 2 {
            return Err(Error::Unsupported(format!("type {kind} needs an odd prime")));
        }
        if n == 0 {
            return arg("the rank must be positive");
        }
        Ok(SubgroupSpec { kind, n, p })
    }

    pub fn a(n: u32, p: u32) -> Result<Self> {
        Self::new(SubgroupKind::A, n, p)
    }

    pub fn b(n: u32, p: u32) -> Result<Self> {
        Self::new(SubgroupKind::B, n, p)
    }

    pub fn d(n: u32, p: u32) -> Result<Self> {
        Self::new(SubgroupKind::D, n, p)
    }

    /// Size of the ambient unitriangular matrices.
    pub fn ambient_size(&self) -> usize {
        let n = self.n as usize;
        match self.kind {
            SubgroupKind::A => n,
            SubgroupKind::B => 2 * n + 1,
            SubgroupKind::D => 2 * n,
        }
    }

    /// `log_p |G|`.
    pub fn order_exponent(&self) -> u32 {
        let n = self.n;
        match self.kind {
            SubgroupKind::A => n * (n - 1) / 2,
            SubgroupKind::B => n * n,
            SubgroupKind::D => n * (n - 1),
        }
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).saturating_pow(self.order_exponent())
    }

    /// The ground set indexing supercharacters.
    pub fn ground(&self) -> Ground {
        self.index_family().ground(self.n)
    }

    pub fn field(&self) -> GroupSpec {
        GroupSpec::cyclic(self.p)
    }

    pub fn index_family(&self) -> Family {
        match self.kind {
            SubgroupKind::A => Family::Pi,
            SubgroupKind::B => Family::PB,
            SubgroupKind::D => Family::PD,
        }
    }

    pub fn linear_family(&self) -> Family {
        match self.kind {
            SubgroupKind::A => Family::L,
            SubgroupKind::B => Family::LB,
            SubgroupKind::D => Family::LD,
        }
    }

    /// Membership: unitriangular of the ambient size, and for B/D fixed by
    /// `g ↦ (g^-1)†`.
    pub fn contains(&self, g: &UnitriMatrix) -> bool {
        if g.n != self.ambient_size() || g.p != self.p {
            return false;
        }
        match self.kind {
            SubgroupKind::A => true,
            _ => g.mul(&g.dagger()).is_ok_and(|h| h.is_identity()),
        }
    }

    /// The index partition of the ambient supercharacter restricting to `χ_Λ`.
    pub fn ambient_index(&self, lambda: &LabeledSetPartition) -> Result<LabeledSetPartition> {
        match self.kind {
            SubgroupKind::A => Ok(lambda.clone()),
            _ => halve(lambda),
        }
    }

    fn guard(&self, limit: u128) -> Result<()> {
        let estimate = self.order();
        if estimate > limit {
            return Err(Error::ScaleGuard { estimate, limit });
        }
        Ok(())
    }

    /// Every group element, refusing groups larger than `limit`.
    pub fn elements(&self, limit: u128) -> Result<Vec<UnitriMatrix>> {
        self.guard(limit)?;
        Ok(match self.kind {
            SubgroupKind::A => unitriangular_all(self.n as usize, self.p),
            SubgroupKind::B => self.signed_elements(true),
            SubgroupKind::D => self.signed_elements(false),
        })
    }

    /// Builds `[[x, xu, xz], [0, 1, -u†], [0, 0, (x^-1)†]]` (type B) or
    /// `[[x, xz], [0, (x^-1)†]]` (type D) with `z† + z + uu† = 0`
    /// (type D: `u = 0` and no middle row).
    fn signed_elements(&self, with_middle: bool) -> Vec<UnitriMatrix> {
        let (n, p) = (self.n as usize, self.p);
        let pp = p as i64;
        let half = inverse_mod(2, p) as i64;
        let free_z: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i + j + 1 < n).collect();
        let u_choices = if with_middle { p.pow(n as u32) } else { 1 };
        let mut out = Vec::new();
        for x in unitriangular_all(n, p) {
            let x_inv_dag = x.inverse().dagger();
            for u_code in 0..u_choices {
                let u: Vec<i64> = digits(u_code as u64, p, if with_middle { n } else { 0 })
                    .into_iter()
                    .chain(std::iter::repeat(0))
                    .take(n)
                    .collect();
                for z_code in 0..(p as u64).pow(free_z.len() as u32) {
                    let mut z = vec![0i64; n * n];
                    for (&(i, j), v) in free_z.iter().zip(digits(z_code, p, free_z.len())) {
                        z[i * n + j] = v;
                    }
                    for i in 0..n {
                        for j in 0..n {
                            let uu = u[i] * u[n - 1 - j];
                            if i + j + 1 == n {
                                z[i * n + j] = (-uu * half).rem_euclid(pp);
                            } else if i + j + 1 > n {
                                let mirror = z[(n - 1 - j) * n + (n - 1 - i)];
                                z[i * n + j] = (-uu - mirror).rem_euclid(pp);
                            }
                        }
                    }
                    out.push(assemble(&x, &u, &z, &x_inv_dag, with_middle));
                }
            }
        }
        out
    }
}

fn digits(mut code: u64, base: u32, len: usize) -> Vec<i64> {
    (0..len)
        .map(|_| {
            let d = code % base as u64;
            code /= base as u64;
            d as i64
        })
        .collect()
}

fn unitriangular_all(n: usize, p: u32) -> Vec<UnitriMatrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..(p as u64).pow(slots.len() as u32))
        .map(|code| {
            let mut m = UnitriMatrix::identity(n, p);
            for (&(i, j), v) in slots.iter().zip(digits(code, p, slots.len())) {
                m.entries[i * n + j] = v as u32;
            }
            m
        })
        .collect()
}

fn assemble(x: &UnitriMatrix, u: &[i64], z: &[i64], x_inv_dag: &UnitriMatrix, with_middle: bool) -> UnitriMatrix {
    let n = x.n;
    let p = x.p as i64;
    let mid = usize::from(with_middle);
    let size = 2 * n + mid;
    let mut g = UnitriMatrix::identity(size, x.p);
    let xe = |i: usize, k: usize| x.entries[i * n + k] as i64;
    for i in 0..n {
        for j in 0..n {
            g.entries[i * size + j] = x.entries[i * n + j];
            let xz: i64 = (0..n).map(|k| xe(i, k) * z[k * n + j]).sum();
            g.entries[i * size + n + mid + j] = xz.rem_euclid(p) as u32;
            g.entries[(n + mid + i) * size + n + mid + j] = x_inv_dag.entries[i * n + j];
        }
        if with_middle {
            let xu: i64 = (0..n).map(|k| xe(i, k) * u[k]).sum();
            g.entries[i * size + n] = xu.rem_euclid(p) as u32;
            g.entries[n * size + n + 1 + i] = (-u[n - 1 - i]).rem_euclid(p) as u32;
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Tables

/// A set of subgroup elements sharing the ambient superclass `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientClass {
    pub representative: LabeledSetPartition,
    pub size: u64,
}

/// Supercharacter values on every ambient superclass meeting the group.
#[derive(Debug, Clone)]
pub struct SupercharacterTable {
    pub spec: SubgroupSpec,
    pub group_order: u64,
    pub classes: Vec<AmbientClass>,
    pub indices: Vec<LabeledSetPartition>,
    /// `values[r][c]` is the value of `χ_indices[r]` on `classes[c]`.
    pub values: Vec<Vec<CycValue>>,
}

fn arc_key(p: &LabeledSetPartition) -> Vec<crate::partition::LabeledArc> {
    p.arcs().to_vec()
}

/// Reduces every element of the group and evaluates every supercharacter.
pub fn supercharacter_table(spec: SubgroupSpec, max_group_order: u128) -> Result<SupercharacterTable> {
    let elements = spec.elements(max_group_order)?;
    let reduced: Vec<LabeledSetPartition> = elements.par_iter().map(superclass_reduce).collect();
    let mut sizes: HashMap<LabeledSetPartition, u64> = HashMap::new();
    for gamma in reduced {
        *sizes.entry(gamma).or_insert(0) += 1;
    }
    let mut classes: Vec<AmbientClass> =
        sizes.into_iter().map(|(representative, size)| AmbientClass { representative, size }).collect();
    classes.sort_by_key(|c| (c.representative.arc_count(), arc_key(&c.representative)));
    let index_spec = FamilySpec::single(spec.index_family(), spec.n, spec.field())?;
    let indices: Vec<LabeledSetPartition> = enumerate(&index_spec).collect();
    let values = indices
        .par_iter()
        .map(|lambda| {
            let ambient = spec.ambient_index(lambda)?;
            Ok(classes.iter().map(|c| chi_at(&ambient, &c.representative)).collect())
        })
        .collect::<Result<Vec<Vec<CycValue>>>>()?;
    Ok(SupercharacterTable { spec, group_order: elements.len() as u64, classes, indices, values })
}

impl SupercharacterTable {
    fn weights(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn row_of(&self, lambda: &LabeledSetPartition) -> Option<usize> {
        self.indices.iter().position(|x| x == lambda)
    }

    pub fn inner(&self, r: usize, s: usize) -> Result<Rational> {
        weighted_inner(&self.values[r], &self.values[s], &self.weights())
    }

    pub fn norm(&self, r: usize) -> Result<Rational> {
        self.inner(r, r)
    }

    /// Value at the identity, whose superclass is the empty partition.
    pub fn degree(&self, r: usize) -> CycValue {
        let id = self.classes.iter().position(|c| c.representative.arc_count() == 0).expect("identity class");
        self.values[r][id].clone()
    }

    pub fn distinct_characters(&self) -> usize {
        self.values.iter().collect::<HashSet<_>>().len()
    }

    /// The coarsest partition of the group on which every supercharacter is
    /// constant: ambient classes with identical value columns are merged.
    pub fn superclasses(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut position: HashMap<Vec<&CycValue>, usize> = HashMap::new();
        for c in 0..self.classes.len() {
            let column: Vec<&CycValue> = self.values.iter().map(|row| &row[c]).collect();
            let k = *position.entry(column).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(c);
        }
        out
    }

    pub fn to_json(&self) -> Result<TableJson> {
        let superclasses = self.superclasses();
        let rows = (0..self.indices.len())
            .map(|r| {
                Ok(RowJson {
                    index: self.indices[r].to_json(),
                    index_text: self.indices[r].to_text(),
                    degree: self.degree(r).to_text(),
                    norm: self.norm(r)?.to_string(),
                    values: superclasses.iter().map(|cols| self.values[r][cols[0]].to_text()).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableJson {
            group: self.spec.to_string(),
            kind: self.spec.kind,
            n: self.spec.n,
            p: self.spec.p,
            order: self.group_order,
            superclasses: superclasses
                .iter()
                .map(|cols| SuperclassJson {
                    representatives: cols.iter().map(|&c| self.classes[c].representative.to_text()).collect(),
                    size: cols.iter().map(|&c| self.classes[c].size).sum(),
                })
                .collect(),
            rows,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuperclassJson {
    /// Ambient superclass representatives whose elements form this superclass.
    pub representatives: Vec<String>,
    pub size: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowJson {
    pub index: PartitionJson,
    pub index_text: String,
    pub degree: String,
    pub norm: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableJson {
    pub group: String,
    pub kind: SubgroupKind,
    pub n: u32,
    pub p: u32,
    pub order: u64,
    pub superclasses: Vec<SuperclassJson>,
    pub rows: Vec<RowJson>,
}

// ---------------------------------------------------------------------------
// Verification

/// Counts read off a table next to the values the theory predicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub group: String,
    pub order: u64,
    pub num_supercharacters: usize,
    pub num_distinct: usize,
    pub num_superclasses: usize,
    pub num_irreducible: usize,
    pub num_linear: usize,
    /// Supercharacters fixed by multiplication with every linear one, from values.
    pub num_invariant_by_values: usize,
    /// Indices fixed by the additive action of the linear family.
    pub num_invariant_by_action: usize,
    /// Norm one exactly on noncrossing indices.
    pub irreducible_iff_noncrossing: bool,
    /// Distinct supercharacters are orthogonal.
    pub orthogonal: bool,
    pub expected_distinct: u64,
    pub expected_irreducible: u64,
    pub expected_linear: u64,
    pub expected_invariant: u64,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        let d = self.expected_distinct as usize;
        self.num_supercharacters == d
            && self.num_distinct == d
            && self.num_superclasses == d
            && self.num_irreducible == self.expected_irreducible as usize
            && self.num_linear == self.expected_linear as usize
            && self.num_invariant_by_values == self.expected_invariant as usize
            && self.num_invariant_by_action == self.expected_invariant as usize
            && self.irreducible_iff_noncrossing
            && self.orthogonal
    }
}

fn eval_at(f: PolyFamily, n: u32, x: u32) -> u64 {
    let v = poly_family(f, n).diagonal().eval(&BigInt::from(x), &BigInt::from(x));
    u64::try_from(v).expect("count fits in u64")
}

fn linear_members(table: &SupercharacterTable) -> Result<Vec<LabeledSetPartition>> {
    let spec = FamilySpec::single(table.spec.linear_family(), table.spec.n, table.spec.field())?;
    Ok(enumerate(&spec).collect())
}

pub fn verify_counts(spec: SubgroupSpec, max_group_order: u128) -> Result<CountReport> {
    let table = supercharacter_table(spec, max_group_order)?;
    count_report(&table)
}

pub fn count_report(table: &SupercharacterTable) -> Result<CountReport> {
    let spec = table.spec;
    let (n, q1) = (spec.n, spec.p - 1);
    let rows = table.indices.len();
    let norms: Vec<Rational> = (0..rows).map(|r| table.norm(r)).collect::<Result<_>>()?;
    let one = Rational::new(1, 1);
    let irreducible: Vec<bool> = norms.iter().map(|r| *r == one).collect();
    let irreducible_iff_noncrossing =
        table.indices.iter().zip(&irreducible).all(|(lambda, &irr)| lambda.classify().noncrossing == irr);
    let mut orthogonal = norms.iter().all(|r| r.is_integer() && r.num >= 1);
    for r in 0..rows {
        for s in r + 1..rows {
            if !orthogonal {
                break;
            }
            orthogonal = table.inner(r, s)? == Rational::new(0, 1);
        }
    }
    let linear = linear_members(table)?;
    let linear_rows: Vec<usize> = linear.iter().map(|a| table.row_of(a).expect("linear indices are indices")).collect();
    let num_invariant_by_values = (0..rows)
        .filter(|&r| {
            linear_rows.iter().all(|&a| table.values[a].iter().zip(&table.values[r]).all(|(x, y)| &(x * y) == y))
        })
        .count();
    let mut num_invariant_by_action = 0;
    for lambda in &table.indices {
        let mut fixed = true;
        for a in &linear {
            if plus(a, lambda)? != *lambda {
                fixed = false;
                break;
            }
        }
        num_invariant_by_action += usize::from(fixed);
    }
    let linear_spec = FamilySpec::single(spec.linear_family(), n, spec.field())?;
    let (expected_distinct, expected_irreducible, expected_invariant) = match spec.kind {
        SubgroupKind::A => {
            (eval_at(PolyFamily::Bell, n, q1), eval_at(PolyFamily::Cat, n, q1), eval_at(PolyFamily::F, n - 1, q1))
        }
        SubgroupKind::B => {
            (eval_at(PolyFamily::BellB, n, q1), eval_at(PolyFamily::Cat, n + 1, q1), eval_at(PolyFamily::F, n, 2 * q1))
        }
        SubgroupKind::D => (
            eval_at(PolyFamily::Bell, n, 2 * q1),
            eval_at(PolyFamily::Cat, n, q1),
            eval_at(PolyFamily::FBTilde, n - 1, q1),
        ),
    };
    Ok(CountReport {
        group: spec.to_string(),
        order: table.group_order,
        num_supercharacters: rows,
        num_distinct: table.distinct_characters(),
        num_superclasses: table.superclasses().len(),
        num_irreducible: irreducible.iter().filter(|&&b| b).count(),
        num_linear: (0..rows).filter(|&r| table.degree(r) == CycValue::one(spec.p)).count(),
        num_invariant_by_values,
        num_invariant_by_action,
        irreducible_iff_noncrossing,
        orthogonal,
        expected_distinct,
        expected_irreducible,
        expected_linear: count(&linear_spec),
        expected_invariant,
    })
}

/// Outcome of checking `χ_α χ_Λ = χ_(α+Λ)` over all linear `α` and all `Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductRuleReport {
    pub group: String,
    pub pairs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl ProductRuleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn verify_product_rule(spec: SubgroupSpec, max_group_order: u128) -> Result<ProductRuleReport> {
    let table = supercharacter_table(spec, max_group_order)?;
    product_rule_report(&table)
}

pub fn product_rule_report(table: &SupercharacterTable) -> Result<ProductRuleReport> {
    let mut pairs_checked = 0;
    for alpha in linear_members(table)? {
        let a = table.row_of(&alpha).expect("linear indices are indices");
        for (r, lambda) in table.indices.iter().enumerate() {
            let sum = plus(&alpha, lambda)?;
            let s = table.row_of(&sum).ok_or_else(|| {
                Error::Structural(format!("{} + {} left the index set", alpha.to_text(), lambda.to_text()))
            })?;
            pairs_checked += 1;
            let product: Vec<CycValue> = table.values[a].iter().zip(&table.values[r]).map(|(x, y)| x * y).collect();
            if product != table.values[s] {
                return Ok(ProductRuleReport {
                    group: table.spec.to_string(),
                    pairs_checked,
                    failure: Some(format!(
                        "chi[{}] * chi[{}] != chi[{}]",
                        alpha.to_text(),
                        lambda.to_text(),
                        sum.to_text()
                    )),
                });
            }
        }
    }
    Ok(ProductRuleReport { group: table.spec.to_string(), pairs_checked, failure: None })
}

// ---------------------------------------------------------------------------
// Restriction equivalence

/// Partitions of `[N]` reachable from `lambda` by repeatedly replacing an arc
/// `(i,j)` labeled `t` with `(N+1-j, N+1-i)` labeled `-t`, allowed when the
/// new arc is not already present. Replacements that do not yield a set
/// partition are skipped.
pub fn restriction_class(lambda: &LabeledSetPartition) -> Result<Vec<LabeledSetPartition>> {
    let ground = lambda.ground();
    if ground.is_signed() {
        return arg("restriction classes live on [N]");
    }
    let size = ground.len() as i32;
    let group = lambda.group().clone();
    let mut seen: HashSet<LabeledSetPartition> = HashSet::from([lambda.clone()]);
    let mut out = vec![lambda.clone()];
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(current) = queue.pop_front() {
        let present: HashSet<(i32, i32)> = current.arc_pairs().into_iter().collect();
        for arc in current.arcs() {
            let mirrored = (size + 1 - arc.j, size + 1 - arc.i);
            if present.contains(&mirrored) {
                continue;
            }
            let arcs = current.arcs().iter().map(|b| {
                if b == arc {
                    (mirrored.0, mirrored.1, group.neg_unchecked(&b.label))
                } else {
                    (b.i, b.j, b.label.clone())
                }
            });
            let Ok(next) = LabeledSetPartition::from_arcs(ground, group.clone(), arcs.collect::<Vec<_>>()) else {
                continue;
            };
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

pub fn restriction_equivalent(a: &LabeledSetPartition, b: &LabeledSetPartition) -> Result<bool> {
    Ok(a.ground() == b.ground() && restriction_class(a)?.contains(b))
}

/// Restriction data for type B or D, over every `Γ` indexing a supercharacter:
/// the restriction class of `halve(Γ)` consists of ambient indices restricting
/// to `χ^X_Γ`; a class containing only noncrossing partitions marks exactly
/// the members of `NC~^X`; both counts equal `Cat^X_n(p-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub group: String,
    /// Every class member restricts to `χ^X_Γ`.
    pub classes_restrict: bool,
    /// Every ambient index restricting to `χ^X_Γ` lies in the class.
    pub classes_exhaust: bool,
    /// `Γ` whose restriction class is entirely noncrossing.
    pub num_noncrossing_classes: usize,
    /// `Γ` with `χ^X_Γ` not the restriction of any `χ_Λ` with `Λ` crossing.
    pub num_not_restricted_from_reducible: usize,
    pub num_nc_tilde: usize,
    pub expected: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl RestrictionReport {
    /// The claims the checks support: classes restrict correctly and both
    /// counts agree with `NC~^X` and `Cat^X_n(p-1)`.
    pub fn passed(&self) -> bool {
        let e = self.expected as usize;
        self.classes_restrict
            && self.failure.is_none()
            && self.num_noncrossing_classes == e
            && self.num_not_restricted_from_reducible == e
            && self.num_nc_tilde == e
    }
}

pub fn verify_restrictions(spec: SubgroupSpec, max_group_order: u128) -> Result<RestrictionReport> {
    if spec.kind == SubgroupKind::A {
        return arg("restriction classes concern types B and D");
    }
    let table = supercharacter_table(spec, max_group_order)?;
    let ambient_size = spec.ambient_size() as u32;
    let ambient_spec = FamilySpec::single(Family::Pi, ambient_size, spec.field())?;
    let mut by_restriction: HashMap<Vec<CycValue>, HashSet<LabeledSetPartition>> = HashMap::new();
    for lambda in enumerate(&ambient_spec) {
        let row: Vec<CycValue> = table.classes.iter().map(|c| chi_at(&lambda, &c.representative)).collect();
        by_restriction.entry(row).or_default().insert(lambda);
    }
    let mut failure = None;
    let (mut classes_restrict, mut classes_exhaust) = (true, true);
    let (mut noncrossing_classes, mut clean, mut nc_tilde) = (0, 0, 0);
    for (r, gamma) in table.indices.iter().enumerate() {
        let class: HashSet<LabeledSetPartition> = restriction_class(&halve(gamma)?)?.into_iter().collect();
        let restricting = by_restriction.get(&table.values[r]).cloned().unwrap_or_default();
        if !class.is_subset(&restricting) {
            classes_restrict = false;
            failure.get_or_insert_with(|| format!("a class member of halve({}) restricts elsewhere", gamma.to_text()));
        }
        classes_exhaust &= restricting.is_subset(&class);
        let class_noncrossing = class.iter().all(|l| l.classify().noncrossing);
        let c = gamma.classify();
        let in_tilde = c.nc_tilde && c.type_symmetric;
        noncrossing_classes += usize::from(class_noncrossing);
        clean += usize::from(restricting.iter().all(|l| l.classify().noncrossing));
        nc_tilde += usize::from(in_tilde);
        if class_noncrossing != in_tilde {
            failure.get_or_insert_with(|| {
                format!("{}: class noncrossing {class_noncrossing}, in NC~ {in_tilde}", gamma.to_text())
            });
        }
    }
    let expected = match spec.kind {
        SubgroupKind::B => eval_at(PolyFamily::CatB, spec.n, spec.p - 1),
        _ => eval_at(PolyFamily::CatD, spec.n, spec.p - 1),
    };
    Ok(RestrictionReport {
        group: spec.to_string(),
        classes_restrict,
        classes_exhaust,
        num_noncrossing_classes: noncrossing_classes,
        num_not_restricted_from_reducible: clean,
        num_nc_tilde: nc_tilde,
        expected,
        failure,
    })
}

/// The `(kind, n, p)` cases of the supercharacter acceptance checks.
/// `UT^B_3(F_3)` joins only when `include_large` is set.
pub fn acceptance_cases(include_large: bool) -> Vec<SubgroupSpec> {
    let mut out: Vec<SubgroupSpec> =
        [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4)].iter().map(|&(p, n)| SubgroupSpec::a(n, p).expect("valid")).collect();
    out.extend([1, 2].iter().map(|&n| SubgroupSpec::b(n, 3).expect("valid")));
    out.extend([2, 3].iter().map(|&n| SubgroupSpec::d(n, 3).expect("valid")));
    if include_large {
        out.push(SubgroupSpec::b(3, 3).expect("valid"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const LIMIT: u128 = 1_000_000;

    fn field_partition(n: u32, p: u32, arcs: &[(i32, i32, u32)]) -> LabeledSetPartition {
        LabeledSetPartition::from_arcs(
            Ground::a(n),
            GroupSpec::cyclic(p),
            arcs.iter().map(|&(i, j, t)| (i, j, GroupElement::new(vec![t]))).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(2, 1).unwrap(), CycValue::integer(2, -1));
        assert_eq!(&theta(3, 1).unwrap() * &theta(3, 2).unwrap(), CycValue::one(3));
        assert_eq!(&theta(3, 1).unwrap() + &theta(3, 2).unwrap(), CycValue::integer(3, -1));
        assert_eq!(theta(5, 0).unwrap(), CycValue::one(5));
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(&theta(5, a).unwrap() * &theta(5, b).unwrap(), theta(5, (a + b) % 5).unwrap());
            }
            assert_eq!(theta(5, a).unwrap().conj(), theta(5, (5 - a) % 5).unwrap());
        }
        assert!(matches!(theta(4, 1), Err(Error::Unsupported(_))));
        assert_eq!(theta(3, 2).unwrap().to_text(), "-1 - z");
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(superclass_reduce(&UnitriMatrix::identity(4, 2)).arc_count(), 0);
        let gamma = field_partition(4, 2, &[(1, 3, 1), (2, 4, 1)]);
        let x = UnitriMatrix::from_partition(&gamma, 2).unwrap();
        assert_eq!(superclass_reduce(&x), gamma);
        let classes: HashSet<_> = unitriangular_all(3, 2).iter().map(superclass_reduce).collect();
        assert_eq!(classes.len(), 5);
    }

    #[test]
    fn reduction_is_two_sided_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, p) in [(4, 2), (5, 3), (6, 5)] {
            for _ in 0..200 {
                let g = UnitriMatrix::random(n, p, &mut rng);
                let gamma = superclass_reduce(&g);
                assert_eq!(superclass_reduce(&UnitriMatrix::from_partition(&gamma, p).unwrap()), gamma);
                let (u, v) = (UnitriMatrix::random(n, p, &mut rng), UnitriMatrix::random(n, p, &mut rng));
                let prod = g.two_sided(&u, &v).unwrap();
                assert_eq!(superclass_reduce(&prod), gamma);
            }
        }
    }

    #[test]
    fn chi_examples() {
        let lambda = field_partition(3, 2, &[(1, 3, 1)]);
        assert_eq!(chi_eval(&lambda, &UnitriMatrix::identity(3, 2)).unwrap(), CycValue::integer(2, 2));
        let gamma = field_partition(3, 2, &[(1, 2, 1)]);
        let x = UnitriMatrix::from_partition(&gamma, 2).unwrap();
        assert!(chi_eval(&lambda, &x).unwrap().is_zero());
        let lambda = field_partition(2, 3, &[(1, 2, 1)]);
        let x = UnitriMatrix::from_partition(&field_partition(2, 3, &[(1, 2, 1)]), 3).unwrap();
        assert_eq!(chi_eval(&lambda, &x).unwrap(), CycValue::zeta_power(3, 1));
        assert!(matches!(chi_eval(&lambda, &UnitriMatrix::identity(3, 3)), Err(Error::Argument(_))));
    }

    #[test]
    fn degree_formula() {
        let spec = SubgroupSpec::a(4, 3).unwrap();
        let table = supercharacter_table(spec, LIMIT).unwrap();
        for (r, lambda) in table.indices.iter().enumerate() {
            let e: i32 = lambda.arcs().iter().map(|a| a.j - a.i - 1).sum();
            assert_eq!(table.degree(r), CycValue::integer(3, 3i128.pow(e as u32)));
        }
    }

    #[test]
    fn signed_groups_have_the_right_elements() {
        for spec in [
            SubgroupSpec::b(1, 3).unwrap(),
            SubgroupSpec::b(2, 3).unwrap(),
            SubgroupSpec::b(2, 5).unwrap(),
            SubgroupSpec::d(2, 3).unwrap(),
            SubgroupSpec::d(3, 3).unwrap(),
        ] {
            let elements = spec.elements(LIMIT).unwrap();
            assert_eq!(elements.len() as u128, spec.order(), "{spec}");
            assert!(elements.iter().all(|g| spec.contains(g)), "{spec}");
            assert_eq!(elements.iter().collect::<HashSet<_>>().len(), elements.len(), "{spec}");
        }
        // Membership by filtering the ambient group agrees with the construction.
        let spec = SubgroupSpec::b(2, 3).unwrap();
        let filtered = unitriangular_all(5, 3).into_iter().filter(|g| spec.contains(g)).count();
        assert_eq!(filtered as u128, spec.order());
        assert!(matches!(SubgroupSpec::b(2, 2), Err(Error::Unsupported(_))));
        assert!(matches!(
            SubgroupSpec::a(6, 3).unwrap().elements(1000),
            Err(Error::ScaleGuard { estimate: 14348907, limit: 1000 })
        ));
    }

    #[test]
    fn inner_product_examples() {
        let elements = unitriangular_all(3, 2);
        let trivial = LabeledSetPartition::empty(Ground::a(3), GroupSpec::cyclic(2));
        let values: Vec<CycValue> = elements.iter().map(|g| chi_eval(&trivial, g).unwrap()).collect();
        assert_eq!(inner_product(&values, &values).unwrap(), Rational::new(1, 1));
        let lambda = field_partition(3, 2, &[(1, 3, 1)]);
        let values: Vec<CycValue> = elements.iter().map(|g| chi_eval(&lambda, g).unwrap()).collect();
        assert_eq!(inner_product(&values, &values).unwrap(), Rational::new(1, 1));
        let crossing = field_partition(4, 2, &[(1, 3, 1), (2, 4, 1)]);
        let elements = unitriangular_all(4, 2);
        let values: Vec<CycValue> = elements.iter().map(|g| chi_eval(&crossing, g).unwrap()).collect();
        assert!(inner_product(&values, &values).unwrap().num > 1);
    }

    #[test]
    fn counts_type_a() {
        let r = verify_counts(SubgroupSpec::a(3, 2).unwrap(), LIMIT).unwrap();
        assert_eq!((r.num_distinct, r.num_irreducible), (5, 5));
        assert!(r.passed(), "{r:?}");
        let r = verify_counts(SubgroupSpec::a(4, 2).unwrap(), LIMIT).unwrap();
        assert_eq!((r.num_distinct, r.num_irreducible), (15, 14));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn type_b_small() {
        let r = verify_counts(SubgroupSpec::b(1, 3).unwrap(), LIMIT).unwrap();
        assert_eq!(r.num_distinct, 3);
        assert!(r.passed(), "{r:?}");
        let r = verify_counts(SubgroupSpec::b(2, 3).unwrap(), LIMIT).unwrap();
        assert_eq!((r.num_supercharacters, r.num_irreducible), (13, 11));
        assert!(r.passed(), "{r:?}");
        let g = UnitriMatrix::identity(3, 3);
        let lambda = LabeledSetPartition::empty(Ground::b(1), GroupSpec::cyclic(3));
        assert_eq!(chi_b_eval(&lambda, &g).unwrap(), CycValue::one(3));
        let not_member = UnitriMatrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(chi_b_eval(&lambda, &not_member), Err(Error::Argument(_))));
    }

    #[test]
    fn product_rule_small() {
        let r = verify_product_rule(SubgroupSpec::a(3, 2).unwrap(), LIMIT).unwrap();
        assert_eq!(r.pairs_checked, 4 * 5);
        assert!(r.passed());
        let r = verify_product_rule(SubgroupSpec::b(2, 3).unwrap(), LIMIT).unwrap();
        assert_eq!(r.pairs_checked, 9 * 13);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn restriction_classes() {
        for spec in [
            SubgroupSpec::b(1, 3).unwrap(),
            SubgroupSpec::b(2, 3).unwrap(),
            SubgroupSpec::b(2, 5).unwrap(),
            SubgroupSpec::d(2, 3).unwrap(),
            SubgroupSpec::d(2, 5).unwrap(),
        ] {
            let r = verify_restrictions(spec, LIMIT).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        // Restriction sets can be larger than classes: on UT^B_1(F_3) the
        // one-block partition of [3] labeled (1,1) also restricts to the
        // trivial character.
        let spec = SubgroupSpec::b(1, 3).unwrap();
        let table = supercharacter_table(spec, LIMIT).unwrap();
        let one_block = field_partition(3, 3, &[(1, 2, 1), (2, 3, 1)]);
        let row: Vec<CycValue> = table.classes.iter().map(|c| chi_at(&one_block, &c.representative)).collect();
        assert!(row.iter().all(|v| *v == CycValue::one(3)));
        assert_eq!(
            restriction_class(&LabeledSetPartition::empty(Ground::a(3), GroupSpec::cyclic(3))).unwrap().len(),
            1
        );
        assert!(!verify_restrictions(spec, LIMIT).unwrap().classes_exhaust);
        let a = field_partition(3, 3, &[(1, 2, 1)]);
        let b = field_partition(3, 3, &[(2, 3, 2)]);
        assert!(restriction_equivalent(&a, &b).unwrap());
    }
}
