//! The `arcact` command line: argument parsing, dispatch and output formats.
//!
//! Every command produces JSON records first; CSV, table and LaTeX output are
//! rendered from the same records, so all formats carry the same data.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{full_linear, orbit_decomposition, plus, plus_involution, summarize};
use crate::enumerate::{count, count_by, enumerate, Family, FamilySpec, Labeling, Statistic};
use crate::error::{arg, Error, Result};
use crate::group::GroupSpec;
use crate::identities::{self, CheckResult, Mode, Params, Profile};
use crate::maps;
use crate::oeis::{self, CheckedSequence, OeisReport};
use crate::partition::{Ground, GroundKind, LabeledSetPartition, PartitionJson};
use crate::poly::{self, PolyFamily, Route};
use crate::superchar::{
    self, acceptance_cases, count_report, product_rule_report, supercharacter_table, SubgroupKind, SubgroupSpec,
    SupercharacterTable,
};
use crate::trials;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Jsonl,
    Csv,
    Table,
    Latex,
}

#[derive(Debug, Parser)]
#[command(
    name = "arcact",
    version,
    about = "Labeled set partitions of types A, B and D and the identities they satisfy"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for randomized property trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refuse to enumerate groups larger than this.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_group_order: u128,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the members of a partition family.
    Enum(EnumArgs),
    /// Split a two-group family into orbits of the linear group.
    Orbits(OrbitArgs),
    /// Print family polynomials.
    Poly(PolyArgs),
    /// Apply a map to one partition.
    Map(MapArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
    /// Supercharacter table of U_n, UT^B_n or UT^D_n over F_p.
    Chartable(ChartArgs),
    /// Compare a computed sequence with an OEIS b-file.
    OeisCheck(OeisArgs),
    /// Draw a partition as an arc diagram.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    /// Family name such as PI, NC, P_B or NC_TILDE_D_AB.
    #[arg(long)]
    pub family: String,
    /// Size of the ground set.
    #[arg(long)]
    pub n: i64,
    /// Label group such as Z2 or Z2xZ3; repeat for two-group families.
    #[arg(long)]
    pub group: Vec<String>,
    /// Print the number of members instead of the members.
    #[arg(long)]
    pub count: bool,
    /// Print a histogram of blocks, arcs, cov_arcs, noncov_arcs or singletons.
    #[arg(long)]
    pub stat: Option<String>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// A two-group family: PI_AB, NC_AB, P_B_AB, P_D_AB, NC_TILDE_B_AB or NC_TILDE_D_AB.
    #[arg(long)]
    pub family: String,
    /// Size of the ground set.
    #[arg(long)]
    pub n: i64,
    /// The groups A and B, in that order.
    #[arg(long, num_args = 1)]
    pub group: Vec<String>,
    /// List every orbit member.
    #[arg(long)]
    pub members: bool,
    /// Print only orbit counts and the size histogram.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Family such as Bell, Cat_B, M_B_tilde.
    #[arg(long)]
    pub family: String,
    /// A single size.
    #[arg(long, conflicts_with = "upto")]
    pub n: Option<u32>,
    /// Print every n from 0 up to this value.
    #[arg(long)]
    pub upto: Option<u32>,
    /// closed, enumerated or auto.
    #[arg(long, default_value = "auto")]
    pub route: String,
    /// Also evaluate at a point, written x,y.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Shift,
    Unshift,
    Uncross,
    UncrossRandom,
    UncrossB,
    UncrossBInverse,
    UncrossDInverse,
    Halve,
    Negate,
    NegateLabels,
    ForgetLabels,
    Plus,
    PlusInvolution,
    Dyck,
    Rook,
    Classify,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// The map to apply.
    #[arg(long, value_enum)]
    pub map: MapKind,
    /// Partition text such as "{1,3}{2}" or its JSON form.
    pub partition: String,
    /// Ground such as A4, B2 or D3; inferred from the blocks when omitted.
    #[arg(long)]
    pub ground: Option<String>,
    /// Label group for the blocks.
    #[arg(long, default_value = "Z2")]
    pub group: String,
    /// The linear partition added by `--map plus`.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every registry entry, the supercharacter checks and the property trials.
    #[arg(long, conflicts_with_all = ["id", "list"])]
    pub all: bool,
    /// Registry id; repeatable.
    #[arg(long)]
    pub id: Vec<String>,
    /// symbolic, enumerative or structural.
    #[arg(long)]
    pub mode: Option<String>,
    /// quick or desk.
    #[arg(long, default_value = "desk")]
    pub profile: String,
    /// Add UT^B_3(F_3) to the supercharacter checks.
    #[arg(long)]
    pub include_large: bool,
    /// Random trials per randomized property.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Smallest size checked; overrides the profile.
    #[arg(long)]
    pub n_min: Option<u32>,
    /// Largest size checked; overrides the profile.
    #[arg(long)]
    pub n_max: Option<u32>,
    /// List registry entries instead of running them.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    /// A, B or D.
    #[arg(long, default_value = "A")]
    pub kind: String,
    /// Matrix rank.
    #[arg(long)]
    pub n: u32,
    /// Prime field size.
    #[arg(long)]
    pub p: u32,
    /// Check counts, the product rule and restrictions instead of printing the table.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// Computed sequence: a family name, assoc_stirling2, motzkin_triangle or whitney2_B.
    #[arg(long, required_unless_present_any = ["all", "list"])]
    pub sequence: Option<String>,
    /// OEIS id; defaults to the known match for the sequence.
    #[arg(long)]
    pub id: Option<String>,
    /// OEIS index of the first computed term.
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<i64>,
    /// Largest n compared.
    #[arg(long, default_value_t = 12)]
    pub n_max: u32,
    /// Read this b-file instead of searching for one.
    #[arg(long)]
    pub bfile: Option<PathBuf>,
    /// Check every known match.
    #[arg(long, conflicts_with_all = ["sequence", "list"])]
    pub all: bool,
    /// List the known matches.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Partition text such as "{1,3,4,7}{2,6}{5}" or its JSON form.
    pub partition: String,
    /// Ground such as A7; inferred from the blocks when omitted.
    #[arg(long)]
    pub ground: Option<String>,
    /// Label group for the blocks.
    #[arg(long, default_value = "Z2")]
    pub group: String,
}

/// What a command produced, before formatting.
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<Value>,
    /// Print `records[0]` alone rather than as an array in JSON.
    pub single: bool,
    pub columns: Vec<String>,
    /// Cells for CSV, table and LaTeX; derived from `columns` when absent.
    pub rows: Option<Vec<Vec<String>>>,
    /// Replaces the generic table.
    pub text: Option<String>,
    /// Replaces the generic LaTeX tabular.
    pub latex: Option<String>,
    pub exit: i32,
}

impl Output {
    fn new(records: Vec<Value>, columns: &[&str]) -> Self {
        Output { records, columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    fn single(record: Value, columns: &[&str]) -> Self {
        Output { single: true, ..Self::new(vec![record], columns) }
    }

    fn cells(&self) -> Vec<Vec<String>> {
        if let Some(rows) = &self.rows {
            return rows.clone();
        }
        self.records
            .iter()
            .map(|r| self.columns.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
            .collect()
    }

    /// Writes the output in `format`.
    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let doc = if self.single && self.records.len() == 1 {
                    self.records[0].clone()
                } else {
                    Value::Array(self.records.clone())
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
            }
            Format::Jsonl => {
                for r in &self.records {
                    writeln!(out, "{}", serde_json::to_string(r)?)?;
                }
                Ok(())
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","))?;
                for row in self.cells() {
                    writeln!(out, "{}", row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","))?;
                }
                Ok(())
            }
            Format::Table => match &self.text {
                Some(text) => write!(out, "{text}"),
                None => write!(out, "{}", aligned(&self.columns, &self.cells())),
            },
            Format::Latex => match &self.latex {
                Some(latex) => write!(out, "{latex}"),
                None => write!(out, "{}", tabular(&self.columns, &self.cells())),
            },
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn aligned(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Escapes LaTeX special characters in plain text.
pub fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '&' | '%' | '$' | '#' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(c),
        }
    }
    out
}

fn tabular(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut out = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(columns.len().max(1)));
    let line = |cells: &[String]| cells.iter().map(|c| latex_escape(c)).collect::<Vec<_>>().join(" & ");
    out.push_str(&format!("{} \\\\\n\\hline\n", line(columns)));
    for row in rows {
        out.push_str(&format!("{} \\\\\n", line(row)));
    }
    out.push_str("\\end{tabular}\n");
    out
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Network(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    let result = match cli.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Argument(format!("cannot start {jobs} workers: {e}")))
            .and_then(|pool| pool.install(|| execute(&cli))),
        None => execute(&cli),
    };
    match result {
        Ok(output) => match output.write(cli.format, out) {
            Ok(()) => output.exit,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => output.exit,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_IO
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Enum(a) => cmd_enum(a),
        Command::Orbits(a) => cmd_orbits(a, cli.max_group_order),
        Command::Poly(a) => cmd_poly(a),
        Command::Map(a) => cmd_map(a, cli.seed),
        Command::Verify(a) => cmd_verify(a, cli),
        Command::Chartable(a) => cmd_chartable(a, cli.max_group_order),
        Command::OeisCheck(a) => cmd_oeis(a),
        Command::Render(a) => cmd_render(a),
    }
}

// ---------------------------------------------------------------------------
// Argument helpers

/// Parses `A7`, `B3`, `D2`, also written `A(7)` or `A:7`.
pub fn parse_ground(text: &str) -> Result<Ground> {
    let t = text.trim();
    let mut chars = t.chars();
    let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => GroundKind::A,
        Some('B') => GroundKind::B,
        Some('D') => GroundKind::D,
        _ => return arg(format!("ground {text:?} must start with A, B or D")),
    };
    let digits: String = chars.as_str().chars().filter(|c| !matches!(c, '(' | ')' | ':' | ' ')).collect();
    let n: u32 = digits.parse().map_err(|_| Error::Argument(format!("ground {text:?} needs a size, as in A7")))?;
    Ok(Ground { kind, n })
}

/// The ground a block list covers: `B(n)` when it holds zero, `D(n)` when
/// it holds negatives only, else `A(n)`.
fn infer_ground(text: &str) -> Result<Ground> {
    let block_part = text.split('(').next().unwrap_or("");
    let elements: Vec<i32> = block_part
        .split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter(|s| !s.is_empty())
        .map(|s| s.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Argument(format!("cannot read the blocks of {text:?}; pass --ground")))?;
    let n = elements.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let kind = if elements.contains(&0) {
        GroundKind::B
    } else if elements.iter().any(|&x| x < 0) {
        GroundKind::D
    } else {
        GroundKind::A
    };
    Ok(Ground { kind, n })
}

/// Reads a partition given as text or as its JSON form.
pub fn parse_partition(text: &str, ground: Option<&str>, group: &GroupSpec) -> Result<LabeledSetPartition> {
    let trimmed = text.trim();
    if trimmed.starts_with("{\"") {
        let doc: PartitionJson =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse { position: e.column(), message: e.to_string() })?;
        return LabeledSetPartition::from_json(&doc, group);
    }
    let ground = match ground {
        Some(g) => parse_ground(g)?,
        None => infer_ground(trimmed)?,
    };
    LabeledSetPartition::parse_text(ground, group.clone(), trimmed)
}

fn parse_groups(texts: &[String]) -> Result<Vec<GroupSpec>> {
    texts.iter().map(|t| GroupSpec::parse(t)).collect()
}

fn family_spec(family: &str, n: i64, groups: &[String]) -> Result<FamilySpec> {
    let family: Family = family.parse()?;
    let groups = parse_groups(groups)?;
    FamilySpec::new(family, n, groups)
}

fn group_names(spec: &FamilySpec) -> Vec<String> {
    spec.groups().iter().map(|g| g.to_string()).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

// ---------------------------------------------------------------------------
// enum

fn cmd_enum(a: &EnumArgs) -> Result<Output> {
    let spec = family_spec(&a.family, a.n, &a.group)?;
    let head = json!({"family": spec.family().name(), "n": spec.n(), "groups": group_names(&spec)});
    if let Some(stat) = &a.stat {
        let statistic: Statistic = stat.parse()?;
        let records = count_by(&spec, statistic)
            .into_iter()
            .map(|(value, members)| json!({"statistic": stat, "value": value, "count": members}))
            .collect();
        return Ok(Output::new(records, &["value", "count"]));
    }
    if a.count {
        let mut record = head;
        record["count"] = json!(count(&spec));
        return Ok(Output::single(record, &["family", "n", "groups", "count"]));
    }
    let members: Vec<LabeledSetPartition> = enumerate(&spec).collect();
    let mut output = Output::new(members.iter().map(|m| to_value(&m.to_json())).collect(), &["text"]);
    output.rows = Some(members.iter().map(|m| vec![m.to_text()]).collect());
    output.text = Some(members.iter().map(|m| format!("{}\n", m.to_text())).collect());
    Ok(output)
}

// ---------------------------------------------------------------------------
// orbits

fn cmd_orbits(a: &OrbitArgs, max_group_order: u128) -> Result<Output> {
    let spec = family_spec(&a.family, a.n, &a.group)?;
    if spec.family().labeling() != Labeling::Pair {
        return arg(format!("{} is not a two-group family", spec.family()));
    }
    let covers = full_linear(spec.ground()).arc_count() as u32;
    let acting_order = u128::from(spec.groups()[1].order()).checked_pow(covers).unwrap_or(u128::MAX);
    if acting_order > max_group_order {
        return Err(Error::ScaleGuard { estimate: acting_order, limit: max_group_order });
    }
    let reports = orbit_decomposition(&spec, a.members)?;
    if a.summary {
        let s = summarize(&reports);
        let record = json!({
            "family": spec.family().name(),
            "n": spec.n(),
            "groups": group_names(&spec),
            "orbits": s.orbits,
            "members": s.members,
            "size_histogram": s.size_histogram,
        });
        return Ok(Output::single(record, &["family", "n", "orbits", "members", "size_histogram"]));
    }
    let records = reports
        .iter()
        .map(|r| {
            let mut record = json!({
                "representative": r.representative.to_json(),
                "representative_text": r.representative.to_text(),
                "size": r.size,
                "two_regular_count": r.two_regular_count,
            });
            if let Some(members) = &r.members {
                record["members"] = json!(members.iter().map(|m| m.to_text()).collect::<Vec<_>>());
            }
            record
        })
        .collect();
    let columns: &[&str] = if a.members {
        &["representative_text", "size", "two_regular_count", "members"]
    } else {
        &["representative_text", "size", "two_regular_count"]
    };
    Ok(Output::new(records, columns))
}

// ---------------------------------------------------------------------------
// poly

fn parse_point(text: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| s.parse::<i64>().map_err(|_| Error::Argument(format!("{s:?} is not an integer")));
    match parts.as_slice() {
        [x] => Ok((parse(x)?, parse(x)?)),
        [x, y] => Ok((parse(x)?, parse(y)?)),
        _ => arg(format!("point {text:?} should be written x,y")),
    }
}

fn cmd_poly(a: &PolyArgs) -> Result<Output> {
    let family: PolyFamily = a.family.parse()?;
    let route = match a.route.to_ascii_lowercase().as_str() {
        "auto" => None,
        "closed" => Some(Route::Closed),
        "enumerated" => Some(Route::Enumerated),
        other => return arg(format!("unknown route {other:?}; expected auto, closed or enumerated")),
    };
    let point = a.at.as_deref().map(parse_point).transpose()?;
    let ns: Vec<u32> = match (a.n, a.upto) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => return arg("pass --n or --upto"),
    };
    let mut records = Vec::new();
    let mut latex = String::from("\\begin{align*}\n");
    for &n in &ns {
        let p = match route {
            Some(r) => poly::by_route(family, n, r),
            None => poly::family(family, n),
        };
        let route_name = match route {
            Some(Route::Closed) => "closed",
            Some(Route::Enumerated) => "enumerated",
            None if n <= poly::enumeration_limit(family) => "enumerated",
            None => "closed",
        };
        let mut record = json!({
            "family": family.name(),
            "n": n,
            "route": route_name,
            "polynomial": p.to_text(),
            "terms": p.to_json().terms,
        });
        if let Some((x, y)) = point {
            record["value"] = json!(p.eval_int(x, y).to_string());
        }
        latex.push_str(&format!("\\mathrm{{{}}}_{{{n}}} &= {} \\\\\n", latex_escape(family.name()), p.to_latex()));
        records.push(record);
    }
    latex.push_str("\\end{align*}\n");
    let columns: &[&str] =
        if point.is_some() { &["family", "n", "polynomial", "value"] } else { &["family", "n", "polynomial"] };
    let mut output = Output::new(records, columns);
    output.single = ns.len() == 1;
    output.latex = Some(latex);
    Ok(output)
}

// ---------------------------------------------------------------------------
// map

fn rook_grid(lambda: &LabeledSetPartition) -> String {
    let rook = lambda.to_rook();
    let mut out = String::new();
    for r in 1..=rook.size {
        let cells: Vec<String> = (1..=rook.size)
            .map(|c| rook.entries.get(&(r, c)).map_or_else(|| "0".to_string(), |v| v.to_string()))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn cmd_map(a: &MapArgs, seed: u64) -> Result<Output> {
    use rand::SeedableRng;
    let group = GroupSpec::parse(&a.group)?;
    let lambda = parse_partition(&a.partition, a.ground.as_deref(), &group)?;
    let partition_result = |p: LabeledSetPartition| (to_value(&p.to_json()), p.to_text());
    let (output, output_text) = match a.map {
        MapKind::Shift => partition_result(maps::shift(&lambda)?),
        MapKind::Unshift => partition_result(maps::unshift(&lambda)?),
        MapKind::Uncross => partition_result(maps::uncross(&lambda)),
        MapKind::UncrossRandom => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            partition_result(maps::uncross_random(&lambda, &mut rng))
        }
        MapKind::UncrossB => partition_result(maps::uncross_b(&lambda)?),
        MapKind::UncrossBInverse => partition_result(maps::uncross_b_inverse(&lambda)?),
        MapKind::UncrossDInverse => partition_result(maps::uncross_d_inverse(&lambda)?),
        MapKind::Halve => partition_result(maps::halve(&lambda)?),
        MapKind::Negate => partition_result(lambda.negate()?),
        MapKind::NegateLabels => partition_result(lambda.negate_labels()),
        MapKind::ForgetLabels => partition_result(lambda.forget_labels()),
        MapKind::Plus => {
            let alpha_text = a.alpha.as_deref().ok_or_else(|| Error::Argument("--map plus needs --alpha".into()))?;
            let alpha = parse_partition(alpha_text, Some(&lambda.ground().to_string()), &group)?;
            partition_result(plus(&alpha, &lambda)?)
        }
        MapKind::PlusInvolution => partition_result(plus_involution(&lambda)?),
        MapKind::Dyck => {
            let path = maps::dyck_from_nonnesting(&lambda)?.to_string();
            (json!(path), path)
        }
        MapKind::Rook => {
            let rook = lambda.to_rook();
            let entries: Vec<Value> =
                rook.entries.iter().map(|(&(r, c), v)| json!({"row": r, "col": c, "value": v})).collect();
            (json!({"size": rook.size, "entries": entries}), rook_grid(&lambda).trim_end().to_string())
        }
        MapKind::Classify => {
            let c = lambda.classify();
            let value = to_value(&c);
            let flags: Vec<String> = value
                .as_object()
                .map(|o| o.iter().filter(|(_, v)| v.as_bool() == Some(true)).map(|(k, _)| k.clone()).collect())
                .unwrap_or_default();
            (value, flags.join(","))
        }
    };
    let map_name = a.map.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let record = json!({
        "map": map_name,
        "input": lambda.to_text(),
        "output": output,
        "output_text": output_text,
    });
    let mut out = Output::single(record, &["map", "input", "output_text"]);
    out.text = Some(format!("{output_text}\n"));
    Ok(out)
}

// ---------------------------------------------------------------------------
// verify

fn check_record(r: &CheckResult) -> Value {
    to_value(r)
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn superchar_records(include_large: bool, max_group_order: u128) -> Result<Vec<Value>> {
    let mut records = Vec::new();
    for spec in acceptance_cases(include_large) {
        let start = Instant::now();
        let table = supercharacter_table(spec, max_group_order)?;
        let counts = count_report(&table)?;
        let product = product_rule_report(&table)?;
        let restriction = match spec.kind {
            SubgroupKind::A => None,
            _ => Some(superchar::verify_restrictions(spec, max_group_order)?),
        };
        let pass = counts.passed() && product.passed() && restriction.as_ref().is_none_or(|r| r.passed());
        let mut record = json!({
            "id": "supercharacters",
            "mode": "structural",
            "range": spec.to_string(),
            "status": status(pass),
            "millis": start.elapsed().as_millis() as u64,
            "counts": counts,
            "product_rule": product,
        });
        if let Some(r) = restriction {
            record["restrictions"] = to_value(&r);
        }
        records.push(record);
    }
    Ok(records)
}

fn trial_records(trials: usize, seed: u64) -> Result<Vec<Value>> {
    let start = Instant::now();
    let reports = trials::run_all(trials, seed)?;
    let millis = start.elapsed().as_millis() as u64 / reports.len().max(1) as u64;
    Ok(reports
        .iter()
        .map(|r| {
            let mut record = json!({
                "id": r.name,
                "mode": "property",
                "range": format!("cases={} seed={seed}", r.cases),
                "status": status(r.passed()),
                "millis": millis,
            });
            if let Some(f) = &r.failure {
                record["witness"] = json!({"detail": f});
            }
            record
        })
        .collect())
}

fn verify_text(records: &[Value]) -> String {
    let mut out = String::new();
    let (mut passed, mut failed) = (0, 0);
    for r in records {
        let pass = r["status"] == "pass";
        if pass {
            passed += 1;
        } else {
            failed += 1;
        }
        out.push_str(&format!(
            "{} {} [{}] {} ({} ms)\n",
            if pass { "PASS" } else { "FAIL" },
            cell(&r["id"]),
            cell(&r["mode"]),
            cell(&r["range"]),
            cell(&r["millis"])
        ));
        if let Some(w) = r.get("witness").filter(|w| !w.is_null()) {
            out.push_str(&format!("    witness: {w}\n"));
        }
    }
    out.push_str(&format!("{passed} passed, {failed} failed\n"));
    out
}

fn cmd_verify(a: &VerifyArgs, cli: &Cli) -> Result<Output> {
    if a.list {
        let records = identities::registry()
            .iter()
            .map(|e| {
                json!({
                    "id": e.id,
                    "modes": e.modes().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                    "statement": e.statement,
                })
            })
            .collect();
        return Ok(Output::new(records, &["id", "modes", "statement"]));
    }
    let profile: Profile = a.profile.parse()?;
    let mode: Option<Mode> = a.mode.as_deref().map(str::parse).transpose()?;
    let mut records: Vec<Value> = Vec::new();
    if a.all {
        let modes: Vec<Mode> = mode.into_iter().collect();
        let report = identities::run_all(profile, &modes, cli.jobs)?;
        records.extend(report.results.iter().map(check_record));
        if mode.is_none() || mode == Some(Mode::Structural) {
            records.extend(superchar_records(a.include_large, cli.max_group_order)?);
        }
        if mode.is_none() {
            records.extend(trial_records(a.trials, cli.seed)?);
        }
    } else if !a.id.is_empty() {
        let params = Params { n_min: a.n_min, n_max: a.n_max, ..Default::default() };
        for id in &a.id {
            for r in identities::run(id, mode, profile, &params)? {
                records.push(check_record(&r));
            }
        }
    } else {
        return arg("pass --all, --id ID or --list");
    }
    let all_pass = records.iter().all(|r| r["status"] == "pass");
    let mut output = Output::new(records, &["id", "mode", "range", "status", "millis"]);
    output.text = Some(verify_text(&output.records));
    output.exit = if all_pass { EXIT_PASS } else { EXIT_FAIL };
    Ok(output)
}

// ---------------------------------------------------------------------------
// chartable

fn table_text(table: &SupercharacterTable) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let doc = table.to_json()?;
    let mut columns = vec!["index".to_string(), "degree".into(), "norm".into()];
    columns.extend(doc.superclasses.iter().map(|s| s.representatives[0].clone()));
    let rows = doc
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.index_text.clone(), r.degree.clone(), r.norm.clone()];
            row.extend(r.values.iter().cloned());
            row
        })
        .collect();
    Ok((columns, rows))
}

fn cmd_chartable(a: &ChartArgs, max_group_order: u128) -> Result<Output> {
    let kind: SubgroupKind = a.kind.parse()?;
    let spec = SubgroupSpec::new(kind, a.n, a.p)?;
    let table = supercharacter_table(spec, max_group_order)?;
    if a.check {
        let counts = count_report(&table)?;
        let product = product_rule_report(&table)?;
        let mut checks = vec![
            json!({"check": "counts", "status": status(counts.passed()), "report": counts}),
            json!({"check": "product_rule", "status": status(product.passed()), "report": product}),
        ];
        if kind != SubgroupKind::A {
            let r = superchar::verify_restrictions(spec, max_group_order)?;
            checks.push(json!({"check": "restrictions", "status": status(r.passed()), "report": r}));
        }
        let all_pass = checks.iter().all(|c| c["status"] == "pass");
        let mut output = Output::new(checks, &["check", "status", "report"]);
        output.exit = if all_pass { EXIT_PASS } else { EXIT_FAIL };
        return Ok(output);
    }
    let doc = table.to_json()?;
    let (columns, rows) = table_text(&table)?;
    let mut output = Output::single(to_value(&doc), &[]);
    output.columns = columns.clone();
    output.rows = Some(rows.clone());
    output.text = Some(format!(
        "{} of order {}, {} supercharacters on {} superclasses\n{}",
        doc.group,
        doc.order,
        doc.rows.len(),
        doc.superclasses.len(),
        aligned(&columns, &rows)
    ));
    Ok(output)
}

// ---------------------------------------------------------------------------
// oeis-check

fn oeis_record(r: &OeisReport) -> Value {
    let mut v = to_value(r);
    v["status"] = json!(if r.matched { "match" } else { "mismatch" });
    v
}

fn cmd_oeis(a: &OeisArgs) -> Result<Output> {
    let columns = ["sequence", "oeis_id", "offset", "status", "compared", "source"];
    if a.list {
        let records = oeis::known_references()
            .iter()
            .map(|k| json!({"sequence": k.sequence.name(), "oeis_id": k.oeis_id, "offset": k.offset}))
            .collect();
        return Ok(Output::new(records, &["sequence", "oeis_id", "offset"]));
    }
    if a.all {
        let mut records = Vec::new();
        let (mut mismatch, mut unavailable) = (false, false);
        for k in oeis::known_references() {
            match oeis::load_bfile(k.oeis_id) {
                Ok(reference) => {
                    let report = oeis::compare(k.sequence, &reference, k.offset, a.n_max);
                    mismatch |= !report.matched;
                    records.push(oeis_record(&report));
                }
                Err(e @ (Error::Io(_) | Error::Network(_))) => {
                    unavailable = true;
                    records.push(json!({
                        "sequence": k.sequence.name(),
                        "oeis_id": k.oeis_id,
                        "offset": k.offset,
                        "status": "unavailable",
                        "error": e.to_string(),
                    }));
                }
                Err(e) => return Err(e),
            }
        }
        let mut output = Output::new(records, &columns);
        output.exit = if mismatch {
            EXIT_FAIL
        } else if unavailable {
            EXIT_IO
        } else {
            EXIT_PASS
        };
        return Ok(output);
    }
    let name = a.sequence.as_deref().ok_or_else(|| Error::Argument("pass --sequence".into()))?;
    let sequence: CheckedSequence = name.parse()?;
    let known = oeis::known_references().into_iter().find(|k| k.sequence == sequence);
    let id = match (&a.id, known) {
        (Some(id), _) => id.clone(),
        (None, Some(k)) => k.oeis_id.to_string(),
        (None, None) => return arg(format!("no known OEIS match for {name}; pass --id")),
    };
    let offset = a.offset.or_else(|| known.filter(|k| k.oeis_id == id).map(|k| k.offset)).unwrap_or(0);
    let reference = match &a.bfile {
        Some(path) => oeis::load_bfile_path(&id, path)?,
        None => oeis::load_bfile(&id)?,
    };
    let report = oeis::compare(sequence, &reference, offset, a.n_max);
    let exit = if report.matched { EXIT_PASS } else { EXIT_FAIL };
    let mut output = Output::single(oeis_record(&report), &columns);
    output.exit = exit;
    Ok(output)
}

// ---------------------------------------------------------------------------
// render

fn cmd_render(a: &RenderArgs) -> Result<Output> {
    let group = GroupSpec::parse(&a.group)?;
    let lambda = parse_partition(&a.partition, a.ground.as_deref(), &group)?;
    let ascii = lambda.render_ascii();
    let record = json!({"text": lambda.to_text(), "partition": lambda.to_json(), "ascii": ascii});
    let mut output = Output::single(record, &["text", "ascii"]);
    output.text = Some(ascii.clone());
    output.latex = Some(format!("\\begin{{verbatim}}\n{ascii}\\end{{verbatim}}\n"));
    Ok(output)
}
