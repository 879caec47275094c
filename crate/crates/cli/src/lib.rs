//! Command-line front end. [`run`] takes the argument vector and output
//! streams and returns the process exit code:
//! `0` success, `1` violations or oracle mismatches, `2` usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use invarr::arrangement::distance_enumerator;
use invarr::oracle::{run_oracle_checks, OracleCheck};
use invarr::orders::{
    bruhat_interval, bruhat_interval_elements, product_q_formula, weak_interval, weak_interval_elements,
    IntervalSummary,
};
use invarr::verify::{csv_row, emit_report, stat_record, sweep, Depth, ReportFormat, StatRecord, SweepConfig, SweepReport, CSV_HEADER};
use invarr::{Permutation, QPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "invarr", version, about = "Inversion arrangements, weak and Bruhat intervals, and exhaustive checks over S_n")]
struct Cli {
    /// Output format; json and csv are stable, text is for humans.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for sweeps (defaults to the number of cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    parallelism: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every statistic of one permutation.
    Stats {
        permutation: String,
        #[arg(long, default_value = "with-region-oracle")]
        depth: Depth,
    },
    /// Size and Poincaré polynomial of [id, w].
    Interval {
        #[arg(long, value_enum)]
        order: Order,
        permutation: String,
        /// Also list the interval's elements.
        #[arg(long)]
        list: bool,
    },
    /// One polynomial attached to w.
    Poincare {
        #[arg(long, value_enum)]
        which: Which,
        permutation: String,
    },
    /// Check every relation over all of S_n and emit the report.
    Sweep {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value = "counts")]
        depth: Depth,
        /// Allow n = 8 (takes minutes).
        #[arg(long)]
        long_running: bool,
    },
    /// Compare every fast routine with its reference implementation on S_n.
    OracleCheck {
        #[arg(long = "n")]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Order {
    Weak,
    Bruhat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Which {
    Weak,
    Bruhat,
    Product,
    Distance,
}

/// An error that maps to exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((bytes, code)) => match write_output(&cli, &bytes, stdout) {
            Ok(()) => code,
            Err(Failure(msg)) => {
                let _ = writeln!(stderr, "error: {msg}");
                EXIT_USAGE
            }
        },
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn write_output(cli: &Cli, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Failure(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    Ok(text.parse::<Permutation>()?)
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

fn dispatch(cli: &Cli) -> Result<(Vec<u8>, i32), Failure> {
    match &cli.command {
        Command::Stats { permutation, depth } => {
            let w = parse_perm(permutation)?;
            let record = stat_record(&w, *depth)?;
            let out = match cli.format {
                Format::Json => json(&record),
                Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&record)).into_bytes(),
                Format::Text => stats_text(&record).into_bytes(),
            };
            Ok((out, EXIT_OK))
        }
        Command::Interval { order, permutation, list } => {
            let w = parse_perm(permutation)?;
            let (summary, elements) = match order {
                Order::Weak => (weak_interval(&w)?, list.then(|| weak_interval_elements(&w)).transpose()?),
                Order::Bruhat => (bruhat_interval(&w)?, list.then(|| bruhat_interval_elements(&w)).transpose()?),
            };
            Ok((interval_output(cli.format, *order, &w, &summary, elements.as_deref()), EXIT_OK))
        }
        Command::Poincare { which, permutation } => {
            let w = parse_perm(permutation)?;
            let poly = match which {
                Which::Weak => weak_interval(&w)?.poincare,
                Which::Bruhat => bruhat_interval(&w)?.poincare,
                Which::Product => product_q_formula(&w)?,
                Which::Distance => distance_enumerator(&w)?,
            };
            Ok((poincare_output(cli.format, *which, &w, &poly), EXIT_OK))
        }
        Command::Sweep { n, depth, long_running } => {
            let parallelism = cli
                .parallelism
                .map(usize::from)
                .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1));
            let config = SweepConfig { n: *n, depth: *depth, long_running: *long_running, parallelism };
            let report = sweep(&config)?;
            let code = if report.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            let out = match cli.format {
                Format::Json => emit_report(&report, ReportFormat::Json),
                Format::Csv => emit_report(&report, ReportFormat::Csv),
                Format::Text => sweep_text(&report).into_bytes(),
            };
            Ok((out, code))
        }
        Command::OracleCheck { n } => {
            let checks = run_oracle_checks(*n)?;
            let code = if checks.iter().all(OracleCheck::passed) { EXIT_OK } else { EXIT_VIOLATION };
            Ok((oracle_output(cli.format, *n, &checks), code))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn stats_text(r: &StatRecord) -> String {
    let code: Vec<String> = r.code.entries().iter().map(u8::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "w={} n={} inv={} code=({})", r.w, r.w.len(), r.inv, code.join(","));
    let _ = writeln!(s, "wk={} prod={} rk={} ao={} br={} re={}", r.wk, r.prod, r.rk, r.ao, r.br, opt(&r.re));
    let _ = writeln!(
        s,
        "avoids 231,312: {}; avoids 4231,35142,42513,351624: {}; avoids 3412,4231: {}",
        yes_no(r.avoids_231_312),
        yes_no(r.avoids_four),
        yes_no(r.avoids_3412_4231)
    );
    for (name, poly) in [
        ("weak", &r.weak_poly),
        ("bruhat", &r.bruhat_poly),
        ("product", &r.product_poly),
        ("distance", &r.distance_poly),
    ] {
        if let Some(p) = poly {
            let _ = writeln!(s, "{name}_poly: {p}");
        }
    }
    s
}

#[derive(Serialize)]
struct IntervalJson<'a> {
    order: Order,
    w: &'a Permutation,
    size: u64,
    max_length: usize,
    poincare: &'a QPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<&'a [Permutation]>,
}

fn interval_output(
    format: Format,
    order: Order,
    w: &Permutation,
    summary: &IntervalSummary,
    elements: Option<&[Permutation]>,
) -> Vec<u8> {
    let order_name = match order {
        Order::Weak => "weak",
        Order::Bruhat => "bruhat",
    };
    match format {
        Format::Json => json(&IntervalJson {
            order,
            w,
            size: summary.size,
            max_length: summary.max_length,
            poincare: &summary.poincare,
            elements,
        }),
        Format::Csv => {
            let elems = elements
                .map(|e| format!("\"{}\"", e.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" ")))
                .unwrap_or_default();
            format!(
                "order,w,size,max_length,poincare,elements\n{order_name},\"{}\",{},{},\"{}\",{elems}\n",
                w.word().iter().map(u8::to_string).collect::<Vec<_>>().join(" "),
                summary.size,
                summary.max_length,
                summary.poincare.to_spaced()
            )
            .into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "order={order_name} w={w} size={} max_length={}", summary.size, summary.max_length);
            let _ = writeln!(s, "poincare: {}", summary.poincare);
            let _ = writeln!(s, "coefficients: {}", summary.poincare.to_spaced());
            if let Some(elements) = elements {
                let _ = writeln!(s, "elements:");
                for u in elements {
                    let _ = writeln!(s, "  {u}");
                }
            }
            s.into_bytes()
        }
    }
}

fn poincare_output(format: Format, which: Which, w: &Permutation, poly: &QPolynomial) -> Vec<u8> {
    #[derive(Serialize)]
    struct PolyJson<'a> {
        which: Which,
        w: &'a Permutation,
        coeffs: &'a QPolynomial,
    }
    let name = match which {
        Which::Weak => "weak",
        Which::Bruhat => "bruhat",
        Which::Product => "product",
        Which::Distance => "distance",
    };
    match format {
        Format::Json => json(&PolyJson { which, w, coeffs: poly }),
        Format::Csv => format!(
            "which,w,coeffs\n{name},\"{}\",\"{}\"\n",
            w.word().iter().map(u8::to_string).collect::<Vec<_>>().join(" "),
            poly.to_spaced()
        )
        .into_bytes(),
        Format::Text => format!("{poly}\n").into_bytes(),
    }
}

fn sweep_text(report: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n={} depth={} records={} violations={}",
        report.n,
        report.depth,
        report.records.len(),
        report.violations.len()
    );
    let _ = writeln!(s, "class counts:");
    for (class, count) in &report.class_counts {
        let _ = writeln!(s, "  {class} = {count}");
    }
    for v in &report.violations {
        let _ = writeln!(s, "VIOLATION {} {}: {}", v.w, v.check, v.details);
    }
    s
}

fn oracle_output(format: Format, n: usize, checks: &[OracleCheck]) -> Vec<u8> {
    let status = |c: &OracleCheck| {
        if c.skipped() {
            "skip"
        } else if c.passed() {
            "pass"
        } else {
            "fail"
        }
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct OracleJson<'a> {
                n: usize,
                passed: bool,
                checks: &'a [OracleCheck],
            }
            json(&OracleJson { n, passed: checks.iter().all(OracleCheck::passed), checks })
        }
        Format::Csv => {
            let mut s = String::from("check,status,cases,mismatches\n");
            for c in checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    c.name,
                    status(c),
                    c.cases.map(|k| k.to_string()).unwrap_or_default(),
                    c.mismatches.len()
                );
            }
            s.into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let cases = c.cases.map(|k| format!("{k} cases")).unwrap_or_else(|| format!("reference too slow at n={n}"));
                let _ = writeln!(s, "[{}] {} ({cases})", status(c).to_uppercase(), c.name);
                for m in &c.mismatches {
                    let _ = writeln!(s, "    {m}");
                }
            }
            s.into_bytes()
        }
    }
}
