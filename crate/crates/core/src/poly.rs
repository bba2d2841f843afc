//! Exact bivariate integer polynomials, the classical number triangles, and
//! the named generating functions, each available from a closed formula and
//! from enumeration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::enumerate::{count_profiles, Family, FamilySpec, Profile};
use crate::error::{arg, Error, Result};
use crate::group::GroupSpec;

/// Sparse polynomial in `x` and `y` with arbitrary-precision coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · x^dx · y^dy`.
    pub fn monomial(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dy, c.into());
        p
    }

    /// `Σ c_k x^k` from coefficients in increasing degree.
    pub fn from_x_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as u32, 0, c.into());
        }
        p
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((dx, dy)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.coeffs.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    /// Nonzero terms `((deg_x, deg_y), coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(dx, dy), c)| c * num_traits::pow(x.clone(), dx as usize) * num_traits::pow(y.clone(), dy as usize))
            .sum()
    }

    pub fn eval_int(&self, x: i64, y: i64) -> BigInt {
        self.eval(&BigInt::from(x), &BigInt::from(y))
    }

    /// Substitutes `y := x`.
    pub fn diagonal(&self) -> Self {
        let mut out = Self::zero();
        for (&(dx, dy), c) in &self.coeffs {
            out.add_term(dx + dy, 0, c.clone());
        }
        out
    }

    /// Substitutes `x := k·x`.
    pub fn scale_x(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(dx, dy), c)| ((dx, dy), c * num_traits::pow(k.clone(), dx as usize)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Moves every `x` into `y`: substitutes `x := y`.
    pub fn x_to_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(dx, dy), c) in &self.coeffs {
            out.add_term(0, dx + dy, c.clone());
        }
        out
    }

    /// Canonical display order: by total degree, then `x` before `y`.
    fn display_order(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut terms: Vec<_> = self.coeffs.iter().map(|(k, v)| (*k, v)).collect();
        terms.sort_by_key(|&((dx, dy), _)| (dx + dy, std::cmp::Reverse(dx)));
        terms
    }

    fn render(&self, power: fn(&str, u32) -> String, times: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, ((dx, dy), c)) in self.display_order().into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = c.abs();
            let mut vars = Vec::new();
            if dx > 0 {
                vars.push(power("x", dx));
            }
            if dy > 0 {
                vars.push(power("y", dy));
            }
            if vars.is_empty() || !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                if !vars.is_empty() {
                    out.push_str(times);
                }
            }
            out.push_str(&vars.join(times));
        }
        out
    }

    /// Plain text such as `1 + x + 2y + y^2`.
    pub fn to_text(&self) -> String {
        self.render(|v, e| if e == 1 { v.to_string() } else { format!("{v}^{e}") }, "")
    }

    pub fn to_latex(&self) -> String {
        self.render(|v, e| if e == 1 { v.to_string() } else { format!("{v}^{{{e}}}") }, "")
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            text: self.to_text(),
            terms: self
                .display_order()
                .into_iter()
                .map(|((dx, dy), c)| TermJson { x: dx, y: dy, coeff: c.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub x: u32,
    pub y: u32,
    /// Decimal string, since coefficients are unbounded.
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.coeffs {
            out.add_term(dx, dy, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.coeffs {
            out.add_term(dx, dy, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.coeffs {
            for (&(d, e), f) in &rhs.coeffs {
                out.add_term(a + d, b + e, c * f);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |acc, p| acc + p)
    }
}

// ---------------------------------------------------------------------------
// Number tables

/// Integer sequences and triangles used by the closed formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberTable {
    Stirling2,
    AssocStirling2,
    Narayana,
    Whitney2B,
    Catalan,
    Binomial,
    CentralBinomial,
}

const TABLE_NAMES: [(NumberTable, &str); 7] = [
    (NumberTable::Stirling2, "stirling2"),
    (NumberTable::AssocStirling2, "assoc_stirling2"),
    (NumberTable::Narayana, "narayana"),
    (NumberTable::Whitney2B, "whitney2_B"),
    (NumberTable::Catalan, "catalan"),
    (NumberTable::Binomial, "binomial"),
    (NumberTable::CentralBinomial, "central_binomial"),
];

impl NumberTable {
    pub fn name(self) -> &'static str {
        TABLE_NAMES.iter().find(|(t, _)| *t == self).map(|(_, n)| *n).unwrap_or("?")
    }

    /// Whether the table takes a second index `0 ≤ k ≤ n`.
    pub fn is_triangle(self) -> bool {
        !matches!(self, NumberTable::Catalan | NumberTable::CentralBinomial)
    }
}

impl FromStr for NumberTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TABLE_NAMES
            .iter()
            .find(|(_, n)| n.eq_ignore_ascii_case(s))
            .map(|(t, _)| *t)
            .ok_or_else(|| Error::Argument(format!("unknown number table {s:?}")))
    }
}

/// `binom(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

pub fn catalan(n: u32) -> BigInt {
    binom(2 * n as i64, n as i64) / (n as i64 + 1)
}

/// Row `n` of a triangle given by `T(n,k) = a(n,k)·T(n-1,k) + b(n,k)·T(n-1,k-1) + c(n,k)·T(n-2,k-1)`.
fn triangle_row(n: u32, step: impl Fn(&[Vec<BigInt>], usize, usize) -> BigInt) -> Vec<BigInt> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n as usize {
        let row = (0..=m).map(|k| step(&rows, m, k)).collect();
        rows.push(row);
    }
    rows.pop().expect("row 0 exists")
}

fn at(rows: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
    rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
}

/// `S(n, k)` for `k = 0..=n`: partitions of `[n]` into `k` blocks.
pub fn stirling2_row(n: u32) -> Vec<BigInt> {
    triangle_row(n, |rows, m, k| {
        let keep = if k == 0 { BigInt::zero() } else { at(rows, m - 1, k) * k };
        let new = if k == 0 { BigInt::zero() } else { at(rows, m - 1, k - 1) };
        keep + new
    })
}

/// Associated Stirling numbers: partitions of `[n]` into `k` blocks of size at least two.
pub fn assoc_stirling2_row(n: u32) -> Vec<BigInt> {
    triangle_row(n, |rows, m, k| {
        if k == 0 {
            return BigInt::zero();
        }
        let grow = at(rows, m - 1, k) * k;
        let pair = if m >= 2 { at(rows, m - 2, k - 1) * (m - 1) } else { BigInt::zero() };
        grow + pair
    })
}

/// `N(n, k) = binom(n,k) binom(n,k-1) / n`, with `N(0, k) = δ_k`.
pub fn narayana(n: u32, k: u32) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let (n, k) = (n as i64, k as i64);
    binom(n, k) * binom(n, k - 1) / n
}

/// `W_2(n, k)`: members of `P^B(n)` with `2k+1` blocks.
pub fn whitney2_b_row(n: u32) -> Vec<BigInt> {
    triangle_row(n, |rows, m, k| {
        let keep = at(rows, m - 1, k) * (2 * k + 1);
        let new = if k == 0 { BigInt::zero() } else { at(rows, m - 1, k - 1) };
        keep + new
    })
}

/// One entry of a number table.
pub fn number_table(kind: NumberTable, n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || (kind.is_triangle() && (k < 0 || k > n)) {
        return arg(format!("{}({n},{k}) is out of range", kind.name()));
    }
    let (nu, ku) = (n as u32, k as usize);
    Ok(match kind {
        NumberTable::Stirling2 => stirling2_row(nu)[ku].clone(),
        NumberTable::AssocStirling2 => assoc_stirling2_row(nu)[ku].clone(),
        NumberTable::Narayana => narayana(nu, ku as u32),
        NumberTable::Whitney2B => whitney2_b_row(nu)[ku].clone(),
        NumberTable::Catalan => catalan(nu),
        NumberTable::Binomial => binom(n, k),
        NumberTable::CentralBinomial => binom(2 * n, n),
    })
}

// ---------------------------------------------------------------------------
// Named generating functions

/// The generating functions of the partition families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyFamily {
    Bell,
    Cat,
    F,
    M,
    BellB,
    BellD,
    CatB,
    CatD,
    FB,
    FD,
    MB,
    MD,
    FBTilde,
    MBTilde,
}

const POLY_NAMES: [(PolyFamily, &str); 14] = [
    (PolyFamily::Bell, "Bell"),
    (PolyFamily::Cat, "Cat"),
    (PolyFamily::F, "F"),
    (PolyFamily::M, "M"),
    (PolyFamily::BellB, "Bell_B"),
    (PolyFamily::BellD, "Bell_D"),
    (PolyFamily::CatB, "Cat_B"),
    (PolyFamily::CatD, "Cat_D"),
    (PolyFamily::FB, "F_B"),
    (PolyFamily::FD, "F_D"),
    (PolyFamily::MB, "M_B"),
    (PolyFamily::MD, "M_D"),
    (PolyFamily::FBTilde, "F_B_tilde"),
    (PolyFamily::MBTilde, "M_B_tilde"),
];

/// Which members of the underlying family are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Filter {
    All,
    Feasible,
    Poor,
    BFeasible,
    BPoor,
}

impl PolyFamily {
    pub fn all() -> impl Iterator<Item = PolyFamily> {
        POLY_NAMES.iter().map(|(f, _)| *f)
    }

    pub fn name(self) -> &'static str {
        POLY_NAMES.iter().find(|(f, _)| *f == self).map(|(_, n)| *n).unwrap_or("?")
    }

    /// Bell and Catalan families carry `y` for cover arcs; the others are in `x` only.
    pub fn is_bivariate(self) -> bool {
        use PolyFamily::*;
        matches!(self, Bell | Cat | BellB | BellD | CatB | CatD)
    }

    /// Signed families weight a member by half its arcs.
    pub fn is_signed(self) -> bool {
        !matches!(self, PolyFamily::Bell | PolyFamily::Cat | PolyFamily::F | PolyFamily::M)
    }

    fn source(self) -> (Family, Filter) {
        use PolyFamily::*;
        match self {
            Bell => (Family::Pi, Filter::All),
            Cat => (Family::Nc, Filter::All),
            F => (Family::Pi, Filter::Feasible),
            M => (Family::Nc, Filter::Poor),
            BellB => (Family::PB, Filter::All),
            BellD => (Family::PD, Filter::All),
            CatB => (Family::NcTildeB, Filter::All),
            CatD => (Family::NcTildeD, Filter::All),
            FB => (Family::PB, Filter::Feasible),
            FD => (Family::PD, Filter::Feasible),
            MB => (Family::NcTildeB, Filter::Poor),
            MD => (Family::NcTildeD, Filter::Poor),
            FBTilde => (Family::PB, Filter::BFeasible),
            MBTilde => (Family::NcTildeB, Filter::BPoor),
        }
    }

    /// The unlabeled partition family summed over.
    pub fn partition_family(self) -> Family {
        self.source().0
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolyFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        POLY_NAMES
            .iter()
            .find(|(_, n)| n.eq_ignore_ascii_case(s))
            .map(|(f, _)| *f)
            .ok_or_else(|| Error::Argument(format!("unknown polynomial family {s:?}")))
    }
}

/// How a family polynomial is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Summing the defining statistic over the enumerated family.
    Enumerated,
    /// Closed formulas in terms of number tables and smaller families.
    Closed,
}

/// Largest `n` the default route enumerates; beyond it the closed route is used.
pub fn enumeration_limit(family: PolyFamily) -> u32 {
    match family.partition_family() {
        Family::Pi | Family::Nc => 11,
        Family::PB | Family::NcTildeB => 10,
        _ => 11,
    }
}

type Cache = RwLock<HashMap<(PolyFamily, u32, Route), BiPoly>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(family: PolyFamily, n: u32, route: Route, build: impl FnOnce() -> BiPoly) -> BiPoly {
    let key = (family, n, route);
    if let Some(p) = cache().read().expect("poly cache").get(&key) {
        return p.clone();
    }
    let p = build();
    cache().write().expect("poly cache").insert(key, p.clone());
    p
}

fn keep(filter: Filter, p: &Profile) -> bool {
    match filter {
        Filter::All => true,
        Filter::Feasible => p.feasible(),
        Filter::Poor => p.poor(),
        Filter::BFeasible => p.b_feasible(),
        Filter::BPoor => p.b_poor(),
    }
}

fn enumerate_family(family: PolyFamily, n: u32) -> BiPoly {
    let (source, filter) = family.source();
    let spec = FamilySpec::single(source, n, GroupSpec::unlabeled()).expect("unlabeled family");
    let halve = if family.is_signed() { 2 } else { 1 };
    let mut out = BiPoly::zero();
    for (profile, count) in count_profiles(&spec) {
        if !keep(filter, &profile) {
            continue;
        }
        let (arcs, covers) = ((profile.arcs / halve) as u32, (profile.covers / halve) as u32);
        let term = if family.is_bivariate() { (arcs - covers, covers) } else { (arcs, 0) };
        out.add_term(term.0, term.1, BigInt::from(count));
    }
    out
}

/// `Σ binom(n,k)·p_k·q^(n-k)` for `k = 0..=n`.
fn binomial_convolution(n: u32, p: impl Fn(u32) -> BiPoly, q: &BiPoly) -> BiPoly {
    (0..=n).map(|k| (&p(k) * &q.pow(n - k)).scale(&binom(n as i64, k as i64))).sum()
}

fn x_poly_from_row(row: &[BigInt], n: u32) -> BiPoly {
    // Σ_k row[k] x^(n-k)
    let mut out = BiPoly::zero();
    for (k, c) in row.iter().enumerate() {
        out.add_term(n - k as u32, 0, c.clone());
    }
    out
}

/// The univariate specialization `y := x` from number tables alone.
pub fn closed_univariate(family: PolyFamily, n: u32) -> BiPoly {
    use PolyFamily::*;
    let ni = n as i64;
    match family {
        Bell => x_poly_from_row(&stirling2_row(n), n),
        Cat => (0..=n).map(|k| BiPoly::monomial(narayana(n, k), n - k, 0)).sum(),
        BellB => x_poly_from_row(&whitney2_b_row(n), n),
        BellD => closed_univariate(Bell, n).scale_x(2),
        CatB => (0..=n).map(|k| BiPoly::monomial(binom(ni, k as i64).pow(2), k, 0)).sum(),
        CatD => {
            if n == 0 {
                return BiPoly::one();
            }
            let m = ni - 1;
            (0..n).map(|k| BiPoly::monomial(binom(m, k as i64) * binom(m + 1, k as i64), k, 0)).sum()
        }
        _ => closed(family, n),
    }
}

/// The closed route. Bivariate families use the binomial expansions in `y`;
/// univariate ones use number tables.
pub fn closed(family: PolyFamily, n: u32) -> BiPoly {
    cached(family, n, Route::Closed, || closed_uncached(family, n))
}

fn closed_uncached(family: PolyFamily, n: u32) -> BiPoly {
    use PolyFamily::*;
    let ni = n as i64;
    let y = BiPoly::y();
    let y1 = &y + &BiPoly::one();
    match family {
        Bell => {
            if n == 0 {
                return BiPoly::one();
            }
            binomial_convolution(n - 1, |k| closed_univariate(Bell, k), &y)
        }
        Cat => {
            if n == 0 {
                return BiPoly::one();
            }
            let m = ni - 1;
            let mut out = BiPoly::zero();
            for i in 0..=m / 2 {
                for j in 0..=m - 2 * i {
                    let numer = binom(m + 1, i + 1) * binom(m - i, j) * binom(m - i - j, i);
                    let (q, r) = numer.div_rem(&BigInt::from(m + 1));
                    debug_assert!(r.is_zero());
                    out.add_term(i as u32, j as u32, q);
                }
            }
            out
        }
        F => x_poly_from_row(&assoc_stirling2_row(n), n),
        M => (0..=n / 2).map(|k| BiPoly::monomial(catalan(k) * binom(ni, 2 * k as i64), k, 0)).sum(),
        BellB => binomial_convolution(n, |k| closed_univariate(Bell, k).scale_x(2), &y),
        BellD => {
            if n == 0 {
                return BiPoly::one();
            }
            binomial_convolution(n - 1, |k| closed_univariate(BellB, k), &y)
        }
        CatB => (0..=n / 2)
            .map(|k| {
                let c = binom(2 * k as i64, k as i64) * binom(ni, 2 * k as i64);
                &BiPoly::monomial(c, k, 0) * &y1.pow(n - 2 * k)
            })
            .sum(),
        CatD => {
            if n == 0 {
                return BiPoly::one();
            }
            let m = n - 1;
            (0..=m)
                .map(|k| {
                    let c = binom(m as i64, k as i64) * binom(k as i64, (k / 2) as i64);
                    &BiPoly::monomial(c, k.div_ceil(2), 0) * &y1.pow(m - k)
                })
                .sum()
        }
        FD => closed(F, n).scale_x(2),
        FBTilde => binomial_convolution(n, |k| closed(F, k).scale_x(2), &BiPoly::x()),
        FB => &closed(FBTilde, n) - &closed(F, n).scale_x(2),
        MB | MD => {
            (0..=n / 2).map(|k| BiPoly::monomial(binom(2 * k as i64, k as i64) * binom(ni, 2 * k as i64), k, 0)).sum()
        }
        MBTilde => (0..=n.div_ceil(2))
            .map(|k| BiPoly::monomial(binom(ni, k as i64) * binom(ni + 1 - k as i64, k as i64), k, 0))
            .sum(),
    }
}

/// The enumeration route: the defining sum over the unlabeled family.
pub fn enumerated(family: PolyFamily, n: u32) -> BiPoly {
    cached(family, n, Route::Enumerated, || enumerate_family(family, n))
}

pub fn by_route(family: PolyFamily, n: u32, route: Route) -> BiPoly {
    match route {
        Route::Enumerated => enumerated(family, n),
        Route::Closed => closed(family, n),
    }
}

/// The family polynomial, enumerated up to [`enumeration_limit`] and from
/// closed formulas beyond.
pub fn family(family: PolyFamily, n: u32) -> BiPoly {
    if n <= enumeration_limit(family) {
        enumerated(family, n)
    } else {
        closed(family, n)
    }
}

/// Looks a family up by name, e.g. `"Cat_B"`.
pub fn family_by_name(name: &str, n: i64) -> Result<BiPoly> {
    let f: PolyFamily = name.parse()?;
    if n < 0 {
        return arg(format!("n must be nonnegative, got {n}"));
    }
    Ok(family(f, n as u32))
}

/// Value at `x = y = 1`: the number of unlabeled members.
pub fn sequence(family_: PolyFamily, n: u32) -> BigInt {
    family(family_, n).eval_int(1, 1)
}

/// `sequence` for `n = 0..len`.
pub fn sequence_prefix(family_: PolyFamily, len: u32) -> Vec<BigInt> {
    (0..len).map(|n| sequence(family_, n)).collect()
}

/// Converts a small value to `u64` for comparisons in tests and reports.
pub fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|b| b.to_i64().unwrap()).collect()
    }

    #[test]
    fn arithmetic() {
        let one_x = &BiPoly::one() + &BiPoly::x();
        assert_eq!((&one_x * &one_x).to_text(), "1 + 2x + x^2");
        let p = BiPoly::one() + BiPoly::y().scale(&2.into()) + BiPoly::x() + BiPoly::y().pow(2);
        assert_eq!(p.eval_int(1, 1), BigInt::from(5));
        assert!((&p * &BiPoly::zero()).is_zero());
        assert!((&p - &p).is_zero());
        assert_eq!((-&BiPoly::x()).to_text(), "-x");
        assert_eq!(BiPoly::monomial(-3, 2, 1).to_latex(), "-3x^{2}y");
    }

    #[test]
    fn number_tables() {
        assert_eq!(number_table(NumberTable::Narayana, 4, 2).unwrap(), 6.into());
        assert_eq!(number_table(NumberTable::Catalan, 3, 0).unwrap(), 5.into());
        assert_eq!(ints(&stirling2_row(4))[1..], [1, 7, 6, 1]);
        assert_eq!(ints(&stirling2_row(0)), [1]);
        assert_eq!(narayana(0, 0), 1.into());
        assert_eq!(narayana(0, 1), 0.into());
        assert_eq!(ints(&assoc_stirling2_row(6)), [0, 1, 25, 15, 0, 0, 0]);
        assert_eq!(ints(&whitney2_b_row(2)), [1, 4, 1]);
        assert_eq!(number_table(NumberTable::CentralBinomial, 5, 0).unwrap(), 252.into());
        assert!(matches!(number_table(NumberTable::Binomial, 3, 4), Err(Error::Argument(_))));
        assert!(matches!(number_table(NumberTable::Stirling2, -1, 0), Err(Error::Argument(_))));
        assert_eq!("whitney2_B".parse::<NumberTable>().unwrap(), NumberTable::Whitney2B);
    }

    #[test]
    fn triangle_recurrences() {
        for n in 1..=9u32 {
            let s = stirling2_row(n);
            let prev = stirling2_row(n - 1);
            for k in 1..=n as usize {
                let expect = BigInt::from(k) * prev.get(k).cloned().unwrap_or_default() + prev[k - 1].clone();
                assert_eq!(s[k], expect);
            }
            // Narayana rows sum to Catalan numbers.
            let total: BigInt = (0..=n).map(|k| narayana(n, k)).sum();
            assert_eq!(total, catalan(n));
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(enumerated(PolyFamily::Bell, 3).to_text(), "1 + x + 2y + y^2");
        assert_eq!(enumerated(PolyFamily::CatB, 2).diagonal().to_text(), "1 + 4x + x^2");
        assert_eq!(enumerated(PolyFamily::M, 4).to_text(), "1 + 6x + 2x^2");
        assert_eq!(enumerated(PolyFamily::F, 4).to_text(), "3x^2 + x^3");
        assert!(matches!(family_by_name("Nope", 3), Err(Error::Argument(_))));
        assert_eq!("m_b_tilde".parse::<PolyFamily>().unwrap(), PolyFamily::MBTilde);
    }

    #[test]
    fn routes_agree() {
        for f in PolyFamily::all() {
            let limit = if f.is_signed() { 5 } else { 7 };
            for n in 0..=limit {
                let e = enumerated(f, n);
                assert_eq!(e, closed(f, n), "{f}({n})");
                assert_eq!(e.diagonal(), closed_univariate(f, n), "{f}({n}) at y = x");
            }
        }
    }

    #[test]
    fn labeled_counts_are_evaluations() {
        for m in [2u32, 3] {
            let g = GroupSpec::cyclic(m);
            let x = m as i64 - 1;
            for n in 0..=4u32 {
                for (pf, fam) in [
                    (PolyFamily::Bell, Family::Pi),
                    (PolyFamily::Cat, Family::Nc),
                    (PolyFamily::BellB, Family::PB),
                    (PolyFamily::BellD, Family::PD),
                    (PolyFamily::CatB, Family::NcTildeB),
                    (PolyFamily::CatD, Family::NcTildeD),
                ] {
                    if pf.is_signed() && n > 3 {
                        continue;
                    }
                    let spec = FamilySpec::single(fam, n, g.clone()).unwrap();
                    assert_eq!(family(pf, n).eval_int(x, x), BigInt::from(count(&spec)), "{spec}");
                }
            }
        }
    }

    #[test]
    fn golden_sequences() {
        let seq = |f| ints(&sequence_prefix(f, 7));
        assert_eq!(seq(PolyFamily::BellB), [1, 2, 6, 24, 116, 648, 4088]);
        assert_eq!(seq(PolyFamily::BellD), [1, 1, 3, 11, 49, 257, 1539]);
        assert_eq!(seq(PolyFamily::MB), [1, 1, 3, 7, 19, 51, 141]);
        assert_eq!(seq(PolyFamily::MBTilde), [1, 2, 5, 13, 35, 96, 267]);
        assert_eq!(seq(PolyFamily::Bell), [1, 1, 2, 5, 15, 52, 203]);
        for n in 0..=10u32 {
            assert_eq!(sequence(PolyFamily::CatB, n), binom(2 * n as i64, n as i64));
            assert_eq!(sequence(PolyFamily::CatD, n + 1), binom(2 * n as i64 + 1, n as i64));
            assert_eq!(family(PolyFamily::MB, n), family(PolyFamily::MD, n));
        }
    }

    #[test]
    fn closed_route_beyond_enumeration() {
        let n = 14;
        assert_eq!(family(PolyFamily::CatB, n).eval_int(1, 1), binom(28, 14));
        assert_eq!(family(PolyFamily::Bell, n).eval_int(1, 1), BigInt::from(190_899_322u64));
    }
}
