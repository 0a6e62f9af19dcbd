use std::io::{self, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use lambertq_core::catalog::{self, Check, IdentityEntry};
use lambertq_core::lambert::{self, Params};
use lambertq_core::partitions::PartitionStat;
use lambertq_core::series::format_coeff;
use lambertq_core::{Error, ScanReport, Status, VerificationReport};
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

/// Largest `--n` accepted by partition-stats; kappa-sum enumerates partitions.
const MAX_STAT_N: u64 = 5000;
const MAX_KAPPA_N: u64 = 60;

#[derive(Parser)]
#[command(name = "lambertq", version, about = "Exact q-series engine and identity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one catalog entry or all of them.
    #[command(group(ArgGroup::new("target").required(true).args(["id", "all"])))]
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Truncation order; defaults to each entry's own default.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Scan a conjecture for counterexamples.
    Scan {
        #[arg(long)]
        id: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
        /// Comma-separated integer parameters, e.g. a=2 or m=10,n=10.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the coefficients of a named series.
    Expand {
        #[arg(long)]
        series: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print partition statistics for 1..=n.
    PartitionStats {
        /// One of p, a, b, c, d, kappa-sum; all of them when omitted.
        #[arg(long)]
        stat: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List catalog entries, or registry series with --series.
    List {
        #[arg(long)]
        series: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<u8, Error> {
    match command {
        Command::Verify { id, all, order, format } => {
            if all {
                verify_all(order, format, out)
            } else {
                let id = id.expect("clap enforces --id or --all");
                let entry = catalog::entry(&id)?;
                let report = catalog::verify(&id, order.unwrap_or(entry.default_order))?;
                emit_header(format, out);
                emit_report(&report, entry, format, out);
                Ok(if report.passed() { 0 } else { EXIT_FAIL })
            }
        }
        Command::Scan { id, order, params, format } => {
            let params = parse_params(&params)?;
            let entry = catalog::entry(&id)?;
            let order = order.unwrap_or(entry.default_order);
            eprintln!("scanning {id} up to q^{order}");
            let report = catalog::scan(&id, order, &params)?;
            emit_scan(&report, format, out);
            Ok(if report.counterexample.is_some() { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Command::Expand { series, order, params, format } => {
            let params = parse_params(&params)?;
            let s = lambert::build_series(&series, &params, order)?;
            match format {
                Format::Text => w(out, format_args!("{s}\n")),
                Format::Json => w(out, format_args!("{}\n", serde_json::to_string(&s).expect("series serializes"))),
                Format::Csv => {
                    w(out, format_args!("exponent,coefficient\n"));
                    for (e, c) in s.terms() {
                        w(out, format_args!("{e},{}\n", format_coeff(c)));
                    }
                }
            }
            Ok(0)
        }
        Command::PartitionStats { stat, n, format } => {
            let stats = match stat {
                Some(name) => vec![PartitionStat::parse(&name).ok_or_else(|| {
                    Error::MalformedParams(format!(
                        "unknown statistic '{name}' (valid: {})",
                        PartitionStat::ALL.map(PartitionStat::name).join(", ")
                    ))
                })?],
                None => PartitionStat::ALL.to_vec(),
            };
            for s in &stats {
                let limit = if *s == PartitionStat::KappaSum { MAX_KAPPA_N } else { MAX_STAT_N };
                if n > limit {
                    return Err(Error::InvalidParameter {
                        name: "n".into(),
                        value: n as i64,
                        reason: format!("statistic '{}' is limited to n <= {limit}", s.name()),
                    });
                }
            }
            if format == Format::Csv {
                w(out, format_args!("n,stat,value\n"));
            }
            for k in 1..=n {
                for s in &stats {
                    let value = s.evaluate(k);
                    match format {
                        Format::Json => w(out, format_args!("{}\n", json!({"n": k, "stat": s.name(), "value": value}))),
                        Format::Csv => w(out, format_args!("{k},{},{value}\n", s.name())),
                        Format::Text => w(out, format_args!("{k:>5}  {:<10} {value}\n", s.name())),
                    }
                }
            }
            Ok(0)
        }
        Command::List { series, format } => {
            if series {
                for spec in lambert::REGISTRY {
                    let params: Vec<String> =
                        spec.params.iter().map(|p| format!("{}={} [{}..{}]", p.name, p.default, p.min, p.max)).collect();
                    match format {
                        Format::Json => w(out, format_args!("{}\n", json!({"name": spec.name, "params": params, "about": spec.about}))),
                        Format::Csv => w(out, format_args!("{},\"{}\",\"{}\"\n", spec.name, params.join(" "), spec.about)),
                        Format::Text => w(out, format_args!("{:<22} {:<24} {}\n", spec.name, params.join(" "), spec.about)),
                    }
                }
            } else {
                for e in catalog::list_catalog() {
                    match format {
                        Format::Json => w(
                            out,
                            format_args!(
                                "{}\n",
                                json!({
                                    "id": e.id,
                                    "kind": e.kind.name(),
                                    "default_order": e.default_order,
                                    "max_order": e.max_order,
                                    "summary": e.summary,
                                    "anchor": {"location": e.anchor.location, "quote": e.anchor.quote},
                                })
                            ),
                        ),
                        Format::Csv => w(out, format_args!("{},{},{},\"{}\"\n", e.id, e.kind.name(), e.default_order, e.summary)),
                        Format::Text => w(out, format_args!("{:<22} {:<18} {:>5}  {}\n", e.id, e.kind.name(), e.default_order, e.summary)),
                    }
                }
            }
            Ok(0)
        }
    }
}

fn verify_all(order: Option<i64>, format: Format, out: &mut dyn Write) -> Result<u8, Error> {
    let entries: Vec<&IdentityEntry> =
        catalog::list_catalog().iter().filter(|e| matches!(e.check, Check::Cases(_))).collect();
    eprintln!("verifying {} entries", entries.len());
    // one scoped thread per entry; results come back in catalog order
    let reports: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| scope.spawn(move || catalog::verify(e.id, order.map_or(e.default_order, |n| n.min(e.max_order)))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    emit_header(format, out);
    let mut failed = 0;
    let mut exploratory = Vec::new();
    for (e, r) in entries.iter().zip(reports) {
        let r = r?;
        if e.kind == catalog::Kind::Exploratory {
            exploratory.push((*e, r));
            continue;
        }
        if !r.passed() {
            failed += 1;
        }
        emit_report(&r, e, format, out);
    }
    if format == Format::Text {
        w(out, format_args!("-- exploratory (not counted) --\n"));
    }
    for (e, r) in &exploratory {
        emit_report(r, e, format, out);
    }
    eprintln!("{} checked, {failed} failed, {} exploratory", entries.len() - exploratory.len(), exploratory.len());
    Ok(if failed == 0 { 0 } else { EXIT_FAIL })
}

fn w(out: &mut dyn Write, args: std::fmt::Arguments<'_>) {
    // a closed pipe is not an error worth a distinct exit code
    let _ = out.write_fmt(args);
}

fn emit_header(format: Format, out: &mut dyn Write) {
    if format == Format::Csv {
        w(out, format_args!("id,order,status,first_mismatch,lhs,rhs,elapsed_ms\n"));
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn emit_report(r: &VerificationReport, entry: &IdentityEntry, format: Format, out: &mut dyn Write) {
    match format {
        Format::Json => w(out, format_args!("{}\n", serde_json::to_string(r).expect("report serializes"))),
        Format::Csv => w(
            out,
            format_args!(
                "{},{},{},{},{},{},{}\n",
                r.id,
                r.order,
                status_name(r.status),
                r.first_mismatch.map(|e| e.to_string()).unwrap_or_default(),
                r.lhs.as_deref().unwrap_or(""),
                r.rhs.as_deref().unwrap_or(""),
                r.elapsed_ms
            ),
        ),
        Format::Text => match r.first_mismatch {
            None => w(
                out,
                format_args!("PASS {:<22} order {:<4} {:>3} case(s) {:>6} ms\n", r.id, r.order, r.cases_checked, r.elapsed_ms),
            ),
            Some(e) => w(
                out,
                format_args!(
                    "FAIL {:<22} order {:<4} first mismatch at q^{e}: lhs {} rhs {} [{}] ({})\n",
                    r.id,
                    r.order,
                    r.lhs.as_deref().unwrap_or("?"),
                    r.rhs.as_deref().unwrap_or("?"),
                    r.case.as_deref().unwrap_or(""),
                    entry.kind.name()
                ),
            ),
        },
    }
}

fn emit_scan(r: &ScanReport, format: Format, out: &mut dyn Write) {
    match format {
        Format::Json => w(out, format_args!("{}\n", serde_json::to_string(r).expect("report serializes"))),
        Format::Csv => {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w(out, format_args!("id,order,status,exponent,expected,actual,params,checked_range\n"));
            let (e, exp, act) = match &r.counterexample {
                Some(c) => (c.exponent.to_string(), c.expected.clone(), c.actual.clone()),
                None => Default::default(),
            };
            w(
                out,
                format_args!(
                    "{},{},{},{e},\"{exp}\",{act},{},\"{}\"\n",
                    r.id,
                    r.order,
                    status_name(r.status),
                    params.join(" "),
                    r.checked_range
                ),
            );
        }
        Format::Text => match &r.counterexample {
            None => w(out, format_args!("no counterexample for {} ({}), {} ms\n", r.id, r.checked_range, r.elapsed_ms)),
            Some(c) => w(
                out,
                format_args!(
                    "COUNTEREXAMPLE {} at q^{}: expected {}, found {} ({})\n",
                    r.id, c.exponent, c.expected, c.actual, r.checked_range
                ),
            ),
        },
    }
}

/// Parses `k=v[,k=v...]` with integer values.
fn parse_params(raw: &str) -> Result<Params, Error> {
    let mut params = Params::new();
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::MalformedParams(format!("expected key=value, got '{item}'")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::MalformedParams(format!("value of '{}' is not an integer: '{v}'", k.trim())))?;
        if params.insert(k.trim().to_string(), v).is_some() {
            return Err(Error::MalformedParams(format!("parameter '{}' given twice", k.trim())));
        }
    }
    Ok(params)
}
