//! OEIS b-file parsing and cross-checks of computed sequences.
//!
//! b-files are looked up in `ARCACT_OEIS_DIR`, then in the vendored
//! `data/oeis` directory of this crate, then in the on-disk cache
//! (`$XDG_CACHE_HOME/arcact/oeis` or `~/.cache/arcact/oeis`). With the `net`
//! feature, missing files are fetched from `ARCACT_OEIS_URL`
//! (default `https://oeis.org`) and written to the cache.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::poly::{self, PolyFamily};

pub const DIR_ENV: &str = "ARCACT_OEIS_DIR";
pub const URL_ENV: &str = "ARCACT_OEIS_URL";
pub const DEFAULT_URL: &str = "https://oeis.org";

/// A parsed b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisRef {
    pub id: String,
    /// Local path or URL the values came from.
    pub source: String,
    pub values: BTreeMap<i64, BigInt>,
}

/// Parses the `index value` lines of a b-file. Errors carry 1-based line numbers.
pub fn parse_bfile(text: &str) -> Result<BTreeMap<i64, BigInt>> {
    let mut values = BTreeMap::new();
    for (line_index, raw) in text.lines().enumerate() {
        let line_number = line_index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_error = |message: String| Error::Parse { position: line_number, message };
        let mut tokens = line.split_whitespace();
        let (Some(index_token), Some(value_token), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_error(format!("expected \"index value\", got {line:?}")));
        };
        let index: i64 =
            index_token.parse().map_err(|_| parse_error(format!("index {index_token:?} is not an integer")))?;
        let value: BigInt =
            value_token.parse().map_err(|_| parse_error(format!("value {value_token:?} is not an integer")))?;
        if values.insert(index, value).is_some() {
            return Err(parse_error(format!("duplicate index {index}")));
        }
    }
    Ok(values)
}

/// Checks the `A` followed by six digits shape and returns the digits.
pub fn validate_id(id: &str) -> Result<&str> {
    match id.strip_prefix('A') {
        Some(digits) if digits.len() == 6 && digits.bytes().all(|b| b.is_ascii_digit()) => Ok(digits),
        _ => arg(format!("{id:?} is not an OEIS id of the form A######")),
    }
}

fn bfile_name(id: &str) -> Result<String> {
    Ok(format!("b{}.txt", validate_id(id)?))
}

/// Reads and parses a b-file at an explicit path.
pub fn load_bfile_path(id: &str, path: &Path) -> Result<OeisRef> {
    validate_id(id)?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(OeisRef { id: id.to_string(), source: path.display().to_string(), values: parse_bfile(&text)? })
}

/// The directory vendored b-files are shipped in.
pub fn vendored_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("oeis")
}

/// The on-disk cache for fetched b-files.
pub fn cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|home| PathBuf::from(home).join(".cache")))?;
    Some(base.join("arcact").join("oeis"))
}

/// Local directories searched for b-files, in order.
pub fn search_dirs() -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(dir) = std::env::var_os(DIR_ENV) {
        dirs.push(PathBuf::from(dir));
    }
    dirs.push(vendored_dir());
    dirs.extend(cache_dir());
    dirs
}

/// Finds a b-file locally without touching the network.
pub fn find_local(id: &str) -> Result<Option<PathBuf>> {
    let name = bfile_name(id)?;
    Ok(search_dirs().into_iter().map(|dir| dir.join(&name)).find(|path| path.is_file()))
}

/// Whether every id has a local b-file.
pub fn all_local(ids: &[&str]) -> bool {
    ids.iter().all(|id| matches!(find_local(id), Ok(Some(_))))
}

/// Loads a b-file from the local search path, fetching it if the `net` feature is on.
pub fn load_bfile(id: &str) -> Result<OeisRef> {
    if let Some(path) = find_local(id)? {
        return load_bfile_path(id, &path);
    }
    fetch(id)
}

#[cfg(feature = "net")]
fn fetch(id: &str) -> Result<OeisRef> {
    let name = bfile_name(id)?;
    let base = std::env::var(URL_ENV).unwrap_or_else(|_| DEFAULT_URL.to_string());
    let url = format!("{}/{id}/{name}", base.trim_end_matches('/'));
    let text = ureq::get(&url)
        .timeout(std::time::Duration::from_secs(30))
        .call()
        .map_err(|e| Error::Network(format!("{url}: {e}")))?
        .into_string()
        .map_err(|e| Error::Network(format!("{url}: {e}")))?;
    let values = parse_bfile(&text)?;
    if let Some(dir) = cache_dir() {
        // A failed cache write only costs a refetch next time.
        if std::fs::create_dir_all(&dir).is_ok() {
            let _ = std::fs::write(dir.join(&name), &text);
        }
    }
    Ok(OeisRef { id: id.to_string(), source: url, values })
}

#[cfg(not(feature = "net"))]
fn fetch(id: &str) -> Result<OeisRef> {
    let searched: Vec<String> = search_dirs().iter().map(|d| d.display().to_string()).collect();
    Err(Error::Io(format!(
        "no b-file for {id} in [{}]; set {DIR_ENV} or build with --features net",
        searched.join(", ")
    )))
}

// ---------------------------------------------------------------------------
// Computed sequences

/// A sequence that can be compared against the OEIS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckedSequence {
    /// A family polynomial at `x = y = 1`, indexed by `n`.
    Family(PolyFamily),
    /// Associated Stirling numbers read by rows `n ≥ 2`, `1 ≤ k ≤ n/2`.
    AssocStirling2,
    /// Coefficients of `M_n(x)` read by rows, `0 ≤ k ≤ n/2`.
    MotzkinTriangle,
    /// `W_2(n, k)` read by rows, `0 ≤ k ≤ n`.
    Whitney2B,
}

impl CheckedSequence {
    pub fn name(self) -> String {
        match self {
            CheckedSequence::Family(f) => f.name().to_string(),
            CheckedSequence::AssocStirling2 => "assoc_stirling2".into(),
            CheckedSequence::MotzkinTriangle => "motzkin_triangle".into(),
            CheckedSequence::Whitney2B => "whitney2_B".into(),
        }
    }

    /// Terms for rows `0..=n_max`, flattened row by row for triangles.
    pub fn terms(self, n_max: u32) -> Vec<BigInt> {
        match self {
            CheckedSequence::Family(f) => poly::sequence_prefix(f, n_max + 1),
            CheckedSequence::AssocStirling2 => (2..=n_max)
                .flat_map(|n| poly::assoc_stirling2_row(n).into_iter().skip(1).take(n as usize / 2))
                .collect(),
            CheckedSequence::MotzkinTriangle => (0..=n_max)
                .flat_map(|n| {
                    let m = poly::family(PolyFamily::M, n);
                    (0..=n / 2).map(move |k| m.coeff(k, 0))
                })
                .collect(),
            CheckedSequence::Whitney2B => (0..=n_max).flat_map(poly::whitney2_b_row).collect(),
        }
    }
}

impl fmt::Display for CheckedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CheckedSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "assoc_stirling2" => Ok(CheckedSequence::AssocStirling2),
            "motzkin_triangle" => Ok(CheckedSequence::MotzkinTriangle),
            "whitney2_b" => Ok(CheckedSequence::Whitney2B),
            _ => s.parse().map(CheckedSequence::Family).map_err(|_| {
                Error::Argument(format!(
                    "unknown sequence {s:?}; expected a polynomial family name, assoc_stirling2, motzkin_triangle or whitney2_B"
                ))
            }),
        }
    }
}

/// A computed sequence together with the OEIS entry it should match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownReference {
    pub sequence: CheckedSequence,
    pub oeis_id: &'static str,
    /// OEIS index of the first computed term.
    pub offset: i64,
}

/// The cross-checks run by `oeis-check --all`.
pub fn known_references() -> Vec<KnownReference> {
    use CheckedSequence::*;
    let entry = |sequence, oeis_id, offset| KnownReference { sequence, oeis_id, offset };
    vec![
        entry(Family(PolyFamily::Bell), "A000110", 0),
        entry(Family(PolyFamily::Cat), "A000108", 0),
        entry(Family(PolyFamily::F), "A000296", 0),
        entry(Family(PolyFamily::M), "A001006", 0),
        entry(Family(PolyFamily::CatB), "A000984", 0),
        entry(Family(PolyFamily::BellB), "A007405", 0),
        entry(Family(PolyFamily::BellD), "A004211", 0),
        entry(Family(PolyFamily::MB), "A002426", 0),
        entry(Family(PolyFamily::MBTilde), "A005773", 1),
        entry(AssocStirling2, "A008299", 1),
        entry(MotzkinTriangle, "A055151", 0),
        entry(Whitney2B, "A039755", 0),
    ]
}

/// The first disagreement between computed and OEIS terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Position in the computed sequence.
    pub index: usize,
    pub oeis_index: i64,
    pub computed: String,
    /// `None` when the b-file has no term at `oeis_index`.
    pub expected: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OeisReport {
    pub sequence: String,
    pub oeis_id: String,
    pub offset: i64,
    pub n_max: u32,
    pub source: String,
    pub compared: usize,
    pub matched: bool,
    pub mismatch: Option<Mismatch>,
}

/// Compares computed terms with b-file values: term `i` against OEIS index `i + offset`.
///
/// Terms past the end of the b-file count as mismatches, so a short file fails
/// rather than passing vacuously.
pub fn compare(sequence: CheckedSequence, reference: &OeisRef, offset: i64, n_max: u32) -> OeisReport {
    let terms = sequence.terms(n_max);
    let mut mismatch = None;
    let mut compared = 0;
    for (index, computed) in terms.iter().enumerate() {
        let oeis_index = index as i64 + offset;
        let expected = reference.values.get(&oeis_index);
        if expected != Some(computed) {
            mismatch = Some(Mismatch {
                index,
                oeis_index,
                computed: computed.to_string(),
                expected: expected.map(|v| v.to_string()),
            });
            break;
        }
        compared += 1;
    }
    OeisReport {
        sequence: sequence.name(),
        oeis_id: reference.id.clone(),
        offset,
        n_max,
        source: reference.source.clone(),
        compared,
        matched: mismatch.is_none(),
        mismatch,
    }
}

/// Loads the b-file for `oeis_id` and compares it with `sequence_name` over rows `n ≤ n_max`.
pub fn oeis_check(sequence_name: &str, oeis_id: &str, offset: i64, n_max: u32) -> Result<OeisReport> {
    let sequence: CheckedSequence = sequence_name.parse()?;
    let reference = load_bfile(oeis_id)?;
    Ok(compare(sequence, &reference, offset, n_max))
}

/// Renders terms as b-file text starting at `offset`; used to build fixtures.
pub fn to_bfile(id: &str, terms: &[BigInt], offset: i64) -> String {
    let mut out = format!("# {id}\n");
    for (i, v) in terms.iter().enumerate() {
        out.push_str(&format!("{} {v}\n", i as i64 + offset));
    }
    out
}
