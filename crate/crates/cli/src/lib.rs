//! Command-line front end. `run` parses arguments, writes to the given
//! streams and returns the process exit code: 0 clean, 1 violations,
//! 2 usage, I/O, parse or construction errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use adgroup::chartab::{character_table_capped, CharacterTable, DEFAULT_TABLE_CAP};
use adgroup::corpus::{
    build_entries, bundled_catalog, parse_catalog, scan, write_csv, CatalogEntry, ScanOptions,
    TheoremSummary,
};
use adgroup::error::Error;
use adgroup::families::{make_family_capped, FamilyKind, FamilySpec};
use adgroup::group::{Group, DEFAULT_ORDER_CAP};
use adgroup::invariants::{invariant_report, InvariantReport};
use adgroup::rational::{format_dec, format_frac, Q};
use clap::{Args, Parser, Subcommand};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "adgroup", version, about = "Anti-diagonal constant and character-degree data for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of one group.
    Compute(GroupArgs),
    /// Character table of one group.
    Table(TableArgs),
    /// Evaluate every check over a catalog and report per group.
    Scan(CatalogArgs),
    /// Evaluate every check over a catalog and print a per-check summary.
    Verify(CatalogArgs),
    /// List the group families.
    Families,
    /// Write invariant reports for a catalog without running checks.
    Export(CatalogArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["family", "entry"])))]
pub struct GroupArgs {
    /// Catalog entry name.
    pub entry: Option<String>,
    #[arg(long, value_name = "KIND")]
    pub family: Option<FamilyKind>,
    #[arg(long = "param", value_name = "N", requires = "family")]
    pub params: Vec<u64>,
    /// Catalog to look the entry up in, a path or "bundled".
    #[arg(long, value_name = "PATH", default_value = "bundled", conflicts_with = "family")]
    pub catalog: String,
    #[arg(long)]
    pub json: bool,
    /// Largest group order to construct.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Also print decimal approximations of the values.
    #[arg(long)]
    pub approx: bool,
    /// Largest order for which a table is computed.
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: usize,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Catalog path, or "bundled".
    pub catalog: String,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Write the verification summary to a file as well.
    #[arg(long, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: usize,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A failure that ends the command with an exit code.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_ERROR, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_ERROR, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_CLEAN };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Scan(a) => cmd_scan(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Families => cmd_families(out),
        Command::Export(a) => cmd_export(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn load_catalog(source: &str) -> Result<Vec<CatalogEntry>, Error> {
    if source == "bundled" {
        return Ok(bundled_catalog());
    }
    let text = fs::read_to_string(Path::new(source)).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    parse_catalog(&text)
}

fn resolve_group(a: &GroupArgs) -> Result<Group, Failure> {
    if let Some(kind) = a.family {
        let spec = FamilySpec::new(kind, &a.params);
        return Ok(make_family_capped(&spec, a.cap)?);
    }
    let name = a.entry.as_deref().expect("clap enforces a target");
    let entries = load_catalog(&a.catalog)?;
    let idx = entries
        .iter()
        .position(|e| e.name == name)
        .ok_or_else(|| Failure::from(Error::UnknownEntry(name.to_string())))?;
    let mut built = build_entries(&entries[..=idx], a.cap);
    Ok(built.pop().expect("nonempty")?.group)
}

fn with_dec(v: &Q) -> String {
    format!("{} ({})", format_frac(v), format_dec(v, 6))
}

fn braces(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn render_report(r: &InvariantReport) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
    let counts: Vec<String> = r.irr_counts.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    let rows: Vec<(&str, String)> = vec![
        ("name", r.name.clone()),
        ("order", r.order.to_string()),
        ("ad", with_dec(&r.ad)),
        ("cp", with_dec(&r.cp)),
        ("f", with_dec(&r.f)),
        ("classes", r.k.to_string()),
        ("cd_set", braces(&r.cd_set)),
        ("irr_counts", format!("{{{}}}", counts.join(", "))),
        ("mindeg", opt(r.mindeg)),
        ("maxdeg", r.maxdeg.to_string()),
        ("derived_order", r.derived_order.to_string()),
        ("center_index", r.center_index.to_string()),
        ("abelian", r.is_abelian.to_string()),
        ("solvable", r.is_solvable.to_string()),
        ("perfect", r.is_perfect.to_string()),
        ("gap_n", opt(r.gap_n)),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        s.push_str(&format!("{k:<14} {v}\n"));
    }
    s
}

fn cmd_compute(a: &GroupArgs, out: &mut dyn Write) -> CmdResult {
    let g = resolve_group(a)?;
    let r = invariant_report(&g)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("report serializes"))?;
    } else {
        out.write_all(render_report(&r).as_bytes())?;
    }
    Ok(EXIT_CLEAN)
}

pub fn render_table(name: &str, t: &CharacterTable, approx: bool) -> String {
    let ring = t.ring();
    let part = t.classes();
    let cell = |row: usize, c: usize| {
        let v = t.value(row, c);
        let exact = ring.format(v, "z");
        if approx && v.as_integer().is_none() {
            let (re, im) = ring.to_complex(v);
            let im = if im.abs() < 5e-7 { 0.0 } else { im };
            let re = if re.abs() < 5e-7 { 0.0 } else { re };
            if im == 0.0 {
                format!("{exact} ~ {re:.6}")
            } else {
                format!("{exact} ~ {re:.6}{im:+.6}i")
            }
        } else {
            exact
        }
    };
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["".to_string(), "deg".to_string()];
    header.extend((0..part.k()).map(|c| format!("c{c}")));
    grid.push(header);
    let mut sizes = vec!["size".to_string(), "".to_string()];
    sizes.extend(part.sizes().iter().map(usize::to_string));
    grid.push(sizes);
    for row in 0..t.k() {
        let mut line = vec![format!("X.{}", row + 1), t.degrees()[row].to_string()];
        line.extend((0..part.k()).map(|c| cell(row, c)));
        grid.push(line);
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = format!(
        "{name}: order {}, {} classes, z = exp(2 pi i/{})\n",
        t.group_order(),
        t.k(),
        ring.order()
    );
    for line in &grid {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (v, w))| if i == 0 { format!("{v:<w$}") } else { format!("{v:>w$}") })
            .collect();
        s.push_str(cells.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    let g = resolve_group(&a.group)?;
    let t = character_table_capped(&g, a.table_cap)?;
    out.write_all(render_table(g.name(), &t, a.approx).as_bytes())?;
    Ok(EXIT_CLEAN)
}

fn scan_options(a: &CatalogArgs) -> ScanOptions {
    ScanOptions {
        cap: a.cap,
        seed: a.seed,
        ..ScanOptions::default()
    }
}

fn write_csv_file(path: &Path, reports: Vec<&InvariantReport>) -> Result<(), Failure> {
    let file = fs::File::create(path).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?;
    write_csv(std::io::BufWriter::new(file), reports)?;
    Ok(())
}

fn cmd_scan(a: &CatalogArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let entries = load_catalog(&a.catalog)?;
    let report = scan(&entries, &scan_options(a));
    if let Some(path) = &a.csv {
        write_csv_file(path, report.reports().collect())?;
    }
    if a.json {
        let rows: Vec<&InvariantReport> = report.reports().collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("reports serialize"))?;
    } else {
        writeln!(out, "{:<14} {:>6}  {:<24} {:<10} {:>6} {:>6}", "name", "order", "ad", "cp", "checks", "fail")?;
        for row in &report.rows {
            match (&row.report, &row.error) {
                (Some(r), _) => {
                    let applicable = row.checks.iter().filter(|c| c.applicable).count();
                    let failed = row.checks.iter().filter(|c| c.is_violation()).count();
                    writeln!(
                        out,
                        "{:<14} {:>6}  {:<24} {:<10} {:>6} {:>6}",
                        r.name,
                        r.order,
                        with_dec(&r.ad),
                        format_frac(&r.cp),
                        applicable,
                        failed
                    )?;
                }
                (None, e) => writeln!(out, "{:<14} error: {}", row.name, e.as_deref().unwrap_or(""))?,
            }
        }
        for v in &report.violations {
            writeln!(
                out,
                "VIOLATION: {} {}: lhs {} rhs {}",
                v.group,
                v.bound,
                format_frac(&v.lhs),
                format_frac(&v.rhs)
            )?;
        }
    }
    writeln!(
        err,
        "scanned {} entries ({} applicable checks, {} violations) in {:.2?}",
        report.summary.entries, report.summary.checks_applicable, report.summary.violations, report.summary.elapsed
    )?;
    Ok(if report.is_clean() { EXIT_CLEAN } else { EXIT_VIOLATION })
}

fn cmd_verify(a: &CatalogArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let entries = load_catalog(&a.catalog)?;
    let report = scan(&entries, &scan_options(a));
    let summary = TheoremSummary::from_report(&report);
    if let Some(path) = &a.csv {
        write_csv_file(path, report.reports().collect())?;
    }
    let text = summary.render();
    if let Some(path) = &a.summary {
        fs::write(path, &text).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?;
    }
    out.write_all(text.as_bytes())?;
    writeln!(err, "verified {} entries in {:.2?}", report.summary.entries, report.summary.elapsed)?;
    Ok(if summary.passed() { EXIT_CLEAN } else { EXIT_VIOLATION })
}

fn cmd_families(out: &mut dyn Write) -> CmdResult {
    writeln!(out, "{:<14} {:<22} order", "kind", "params")?;
    for kind in FamilyKind::ALL {
        let (params, order) = kind.describe();
        writeln!(out, "{:<14} {:<22} {}", kind.as_str(), params, order)?;
    }
    Ok(EXIT_CLEAN)
}

fn cmd_export(a: &CatalogArgs, out: &mut dyn Write) -> CmdResult {
    let entries = load_catalog(&a.catalog)?;
    let mut reports = Vec::with_capacity(entries.len());
    for (entry, built) in entries.iter().zip(build_entries(&entries, a.cap)) {
        let g = built.map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", entry.name)))?.group;
        reports.push(invariant_report(&g)?);
    }
    if let Some(path) = &a.csv {
        write_csv_file(path, reports.iter().collect())?;
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports serialize"))?;
    } else if a.csv.is_none() {
        write_csv(&mut *out, &reports)?;
    }
    Ok(EXIT_CLEAN)
}
