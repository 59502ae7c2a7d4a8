//! Command-line front end. [`run`] does the work so tests can drive it in-process.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage, 3 cap exceeded,
//! 4 input outside a map's domain.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, Family};
use crate::classes::{self, PartitionSource};
use crate::enumeration::{self, EnumConfig, EnumError};
use crate::formulas;
use crate::maps::{self, MapError};
use crate::verify::{self, Status, VerificationReport, Verifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

/// Succession-avoiding linear arrangements: count, list, map, partition, verify.
#[derive(Debug, Parser)]
#[command(name = "succ-lab", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the members of a family.
    Count {
        #[arg(short = 'n')]
        n: usize,
        /// all | d | D | dn1 | der | fixed=K (also small-d, big-d)
        #[arg(long)]
        family: Family,
        /// Separator inserted every three digits.
        #[arg(long)]
        group_sep: Option<String>,
    },
    /// List the members of a family in lexicographic order.
    List {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        family: Family,
    },
    /// Table of Der_n, D_n, d_n and Der_n - D_n for n = 0..=N.
    Table {
        #[arg(short = 'N')]
        n_max: u64,
        #[arg(long)]
        group_sep: Option<String>,
    },
    /// Apply phi, its inverse, or permutation inversion to a word.
    Map {
        kind: MapKind,
        word: String,
    },
    /// Leading-digit class sizes and the equidistribution verdict.
    Partition {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        family: Family,
        /// Partition the inverses of the family's members instead.
        #[arg(long)]
        inverse_image: bool,
    },
    /// Run identity checks.
    Verify {
        /// Check ids, e.g. lemma-2.1 prop-5.3.
        ids: Vec<String>,
        /// Run every registered check.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = verify::DEFAULT_FORMULA_MAX)]
        formula_max: usize,
        #[arg(long, default_value_t = verify::DEFAULT_ORACLE_MAX)]
        oracle_max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Phi,
    PhiInv,
    Inverse,
}

/// Inserts `sep` every three digits from the right.
pub fn group_digits(digits: &str, sep: Option<&str>) -> String {
    let Some(sep) = sep.filter(|s| !s.is_empty()) else {
        return digits.to_string();
    };
    let (sign, body) = match digits.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", digits),
    };
    let mut out = String::from(sign);
    for (i, c) in body.chars().enumerate() {
        if i > 0 && (body.len() - i) % 3 == 0 {
            out.push_str(sep);
        }
        out.push(c);
    }
    out
}

fn signed(v: &BigInt) -> String {
    if v.sign() == num_bigint::Sign::Minus {
        v.to_string()
    } else {
        format!("+{v}")
    }
}

/// One row of the Der/D/d table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub der: BigUint,
    pub d_big: BigUint,
    /// Blank at `n = 0`.
    pub d_small: Option<BigUint>,
    pub diff: BigInt,
}

pub fn table_rows(n_max: u64) -> Vec<TableRow> {
    (0..=n_max)
        .map(|n| TableRow {
            n,
            der: formulas::derangement(n),
            d_big: formulas::d_big(n),
            d_small: formulas::d_small(n).ok(),
            diff: formulas::der_minus_d_big(n),
        })
        .collect()
}

pub fn render_table(rows: &[TableRow], format: OutputFormat, sep: Option<&str>) -> String {
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                group_digits(&r.der.to_string(), sep),
                group_digits(&r.d_big.to_string(), sep),
                r.d_small.as_ref().map(|d| group_digits(&d.to_string(), sep)).unwrap_or_default(),
                signed(&r.diff),
            ]
        })
        .collect();
    match format {
        OutputFormat::Csv => {
            let mut s = String::from("n,Der_n,D_n,d_n,Der_n-D_n\n");
            for c in &cells {
                s.push_str(&csv_line(c));
            }
            s
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = cells
                .iter()
                .map(|c| {
                    json!({
                        "n": c[0].parse::<u64>().unwrap_or_default(),
                        "Der_n": c[1],
                        "D_n": c[2],
                        "d_n": if c[3].is_empty() { Value::Null } else { json!(c[3]) },
                        "Der_n-D_n": c[4],
                    })
                })
                .collect();
            canonical(&json!({ "rows": rows }))
        }
        OutputFormat::Plain => {
            let header = ["n", "Der_n", "D_n", "d_n", "Der_n - D_n"].map(String::from);
            let mut widths = header.clone().map(|h| h.len());
            for c in &cells {
                for (w, cell) in widths.iter_mut().zip(c) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |c: &[String; 5]| {
                let body: Vec<String> =
                    c.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
                format!("| {} |\n", body.join(" | "))
            };
            let rule = format!(
                "|{}|\n",
                widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|")
            );
            let mut s = line(&header);
            s.push_str(&rule);
            for c in &cells {
                s.push_str(&line(c));
            }
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let v: Vec<String> = fields.iter().map(|f| csv_field(f.as_ref())).collect();
    format!("{}\n", v.join(","))
}

/// Pretty JSON with sorted keys and a trailing newline.
fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

enum Failure {
    Usage(String),
    Cap(String),
    Domain(String),
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<MapError> for Failure {
    fn from(e: MapError) -> Self {
        match e {
            MapError::Enum(e) => e.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match EnumConfig::from_env() {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, &cfg, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Cap(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_CAP
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DOMAIN
        }
    }
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    out.write_all(s.as_bytes()).map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn execute(cli: &Cli, cfg: &EnumConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Count { n, family, group_sep } => {
            let c = enumeration::count(*n, *family, cfg)?;
            let text = group_digits(&c.to_string(), group_sep.as_deref());
            let s = match format {
                OutputFormat::Plain => format!("{text}\n"),
                OutputFormat::Csv => {
                    format!("n,family,count\n{}", csv_line(&[n.to_string(), family.to_string(), text]))
                }
                OutputFormat::Json => canonical(&json!({ "n": n, "family": family, "count": text })),
            };
            write_out(out, &s)?;
        }
        Command::List { n, family } => {
            let words = enumeration::enumerate(*n, *family, cfg)?;
            let s = match format {
                OutputFormat::Plain => words.iter().map(|w| format!("{w}\n")).collect(),
                OutputFormat::Csv => {
                    let mut s = String::from("arrangement\n");
                    for w in &words {
                        s.push_str(&csv_line(&[w.to_string()]));
                    }
                    s
                }
                OutputFormat::Json => {
                    canonical(&json!({ "n": n, "family": family, "arrangements": words }))
                }
            };
            write_out(out, &s)?;
        }
        Command::Table { n_max, group_sep } => {
            write_out(out, &render_table(&table_rows(*n_max), format, group_sep.as_deref()))?;
        }
        Command::Map { kind, word } => {
            let w: Arrangement = word
                .parse()
                .map_err(|e| Failure::Domain(format!("{word:?} is not an arrangement: {e}")))?;
            let image = match kind {
                MapKind::Phi => maps::phi(&w)?,
                MapKind::PhiInv => maps::phi_inverse(&w)?,
                MapKind::Inverse => {
                    if w.is_empty() {
                        return Err(Failure::Domain("inverse needs n >= 1".into()));
                    }
                    w.inverse()
                }
            };
            let kind_name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let s = match format {
                OutputFormat::Plain => format!("{image}\n"),
                OutputFormat::Csv => {
                    format!("map,input,output\n{}", csv_line(&[kind_name, w.to_string(), image.to_string()]))
                }
                OutputFormat::Json => {
                    canonical(&json!({ "map": kind_name, "input": w, "output": image }))
                }
            };
            write_out(out, &s)?;
        }
        Command::Partition { n, family, inverse_image } => {
            let source = if *inverse_image {
                PartitionSource::InverseImage(*family)
            } else {
                PartitionSource::Family(*family)
            };
            let p = classes::partition(*n, source, cfg)?;
            let verdict = p.is_equidistributed();
            let s = match format {
                OutputFormat::Plain => {
                    let mut s: String = p
                        .class_sizes
                        .iter()
                        .enumerate()
                        .map(|(i, size)| format!("class {}: {size}\n", i + 1))
                        .collect();
                    s.push_str(if verdict { "equidistributed\n" } else { "not equidistributed\n" });
                    s
                }
                OutputFormat::Csv => {
                    let mut s = String::from("digit,size,equidistributed\n");
                    for (i, size) in p.class_sizes.iter().enumerate() {
                        s.push_str(&csv_line(&[(i + 1).to_string(), size.to_string(), verdict.to_string()]));
                    }
                    s
                }
                OutputFormat::Json => {
                    let mut v = serde_json::to_value(&p).expect("partition serializes");
                    v["set"] = json!(source.to_string());
                    v["equidistributed"] = json!(verdict);
                    canonical(&v)
                }
            };
            write_out(out, &s)?;
        }
        Command::Verify { ids, all, formula_max, oracle_max } => {
            let verifier = Verifier::new(Default::default(), *cfg);
            let report = if *all || ids.is_empty() {
                verifier.run_all(*formula_max, *oracle_max)
            } else {
                let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
                verifier
                    .run_ids(&ids, *formula_max, *oracle_max)
                    .map_err(|e| Failure::Usage(e.to_string()))?
            };
            write_out(out, &render_report(&report, format))?;
            return Ok(if report.has_failures() { EXIT_VERIFY_FAILED } else { EXIT_OK });
        }
    }
    Ok(EXIT_OK)
}

pub fn render_report(report: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = report.to_canonical_json();
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("id,status,lo,hi,n_tested\n");
            for c in &report.checks {
                s.push_str(&csv_line(&[
                    c.id.clone(),
                    c.status.to_string(),
                    c.range[0].to_string(),
                    c.range[1].to_string(),
                    c.n_tested.to_string(),
                ]));
            }
            s
        }
        OutputFormat::Plain => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "{:<8} {:<10} n={}..={} ({} ms)  {}\n",
                    c.status.to_string(),
                    c.id,
                    c.range[0],
                    c.range[1],
                    c.elapsed.as_millis(),
                    c.paper_ref,
                ));
                if let Some(w) = &c.witness {
                    s.push_str(&format!("         witness: {w}\n"));
                }
                if let Some(r) = &c.reason {
                    s.push_str(&format!("         reason: {r}\n"));
                }
                if c.status == Status::Reported {
                    for d in &c.data {
                        s.push_str(&format!("         {d}\n"));
                    }
                }
            }
            let m = &report.summary;
            s.push_str(&format!(
                "summary: {} pass, {} fail, {} reported, {} skipped\n",
                m.pass, m.fail, m.reported, m.skipped
            ));
            s
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
