use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use twobridge::acceptance;
use twobridge::oracles::{lens_torsion_magnitude, torus_f, torus_p1_squared, LensSpace};
use twobridge::pipeline::{compare_knots, compute_invariants, run_catalog, Cache, ComparisonVerdict, Config, KnotReport, Precision};
use twobridge::presentation::TwoBridgeKnot;

const EXIT_RECORD_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 1;

#[derive(Parser)]
#[command(name = "twobridge", version, about = "Torsion invariants of double branched covers of two-bridge knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant records tau_k = |P_k(1)^2 F| of b(p, q).
    Invariants {
        /// Knot as p/q.
        knot: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "double")]
        precision: Precision,
        /// Initial continuation offset from s = -1.
        #[arg(long)]
        h0: Option<f64>,
        /// Newton step tolerance along the Riley curve.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare two knots by their tau multisets.
    Compare {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form reference tables.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Process a CSV of `p,q[,label]` rows.
    Catalog {
        file: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cache directory (default: $TORSION_CACHE_DIR, else a temp directory).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Torsion magnitudes of the lens space L(p, q).
    Lens {
        p: i64,
        q: i64,
        #[arg(long)]
        json: bool,
    },
    /// Closed forms for the (2, q) torus knot.
    Torus {
        q: i64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Records,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<twobridge::Error> for Failure {
    fn from(e: twobridge::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn parse_knot(s: &str) -> Result<TwoBridgeKnot> {
    s.parse::<TwoBridgeKnot>().with_context(|| format!("invalid knot {s:?}"))
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn invariants(knot: &str, json: bool, precision: Precision, h0: Option<f64>, tol: Option<f64>) -> Result<(), Failure> {
    let k = parse_knot(knot)?;
    let mut cfg = Config { precision, ..Config::default() };
    if let Some(h) = h0 {
        if !(h > 0.0 && h < 1.0) {
            return Err(Failure::Usage(anyhow::anyhow!("--h0 must lie in (0, 1), got {h}")));
        }
        cfg.limit.h0 = h;
        cfg.limit.min_h0 = cfg.limit.min_h0.min(h / 4.0);
    }
    if let Some(t) = tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::Usage(anyhow::anyhow!("--tol must be positive, got {t}")));
        }
        cfg.limit.newton_tol = t;
    }
    let inv = compute_invariants(&k, &cfg).context("computing invariants")?;
    let report = KnotReport::from_invariants(&inv, None, vec![], false);
    if json {
        print_json(&report)?;
    } else {
        if k.mirrored() {
            println!("(input {knot} is the mirror image of b({}, {}))", k.p(), k.q());
        }
        print!("{}", report.render_table());
    }
    if report.has_errors() {
        Err(Failure::Records)
    } else {
        Ok(())
    }
}

fn render_verdict(v: &ComparisonVerdict) -> String {
    let dev = v.max_multiset_deviation.map(|d| format!("{d:.3e}")).unwrap_or_else(|| "n/a (sizes differ)".into());
    format!(
        "b({}) vs b({}): {}\n  max multiset deviation: {dev}\n  determinants match: {}\n  q' = ±q^±1 (mod p): {}",
        v.knots.0,
        v.knots.1,
        serde_json::to_value(v.verdict).ok().and_then(|s| s.as_str().map(str::to_string)).unwrap_or_default(),
        v.determinants_match,
        v.congruence_equivalent
    )
}

fn compare(a: &str, b: &str, json: bool) -> Result<(), Failure> {
    let (ka, kb) = (parse_knot(a)?, parse_knot(b)?);
    let v = match compare_knots(&ka, &kb, &Config::default()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(Failure::Records);
        }
    };
    if json {
        print_json(&v)?;
    } else {
        println!("{}", render_verdict(&v));
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct LensRow {
    k: i64,
    magnitude: f64,
}

#[derive(serde::Serialize)]
struct TorusRow {
    j: i64,
    component: i64,
    p1_squared: f64,
    #[serde(rename = "F")]
    f: f64,
    product: f64,
    lens: f64,
}

fn oracle(which: OracleCmd) -> Result<(), Failure> {
    match which {
        OracleCmd::Lens { p, q, json } => {
            let l = LensSpace::new(p, q)?;
            let rows: Vec<LensRow> = (1..=(p - 1) / 2)
                .map(|k| Ok(LensRow { k, magnitude: lens_torsion_magnitude(&l, k)? }))
                .collect::<Result<_>>()?;
            if json {
                print_json(&rows)?;
            } else {
                println!("L({p}, {q}), q^-1 = {} (mod {p})", l.r);
                println!("{:>3} {:>20}", "k", "|torsion|");
                for r in rows {
                    println!("{:>3} {:>20.14}", r.k, r.magnitude);
                }
            }
        }
        OracleCmd::Torus { q, json } => {
            if q < 3 || q % 2 == 0 {
                return Err(Failure::Usage(anyhow::anyhow!("q must be odd and at least 3, got {q}")));
            }
            let l = LensSpace::new(q, 1)?;
            let rows: Vec<TorusRow> = (1..=(q - 1) / 2)
                .map(|j| {
                    let p1 = torus_p1_squared(q, j)?;
                    Ok(TorusRow {
                        j,
                        component: q - 2 * j,
                        p1_squared: p1,
                        f: torus_f(q),
                        product: p1 * torus_f(q),
                        lens: lens_torsion_magnitude(&l, j)?,
                    })
                })
                .collect::<Result<_>>()?;
            if json {
                print_json(&rows)?;
            } else {
                println!("(2, {q}) torus knot, F = 1/{}", q * q);
                println!("{:>3} {:>5} {:>20} {:>20} {:>20}", "j", "b", "P(1)^2", "P(1)^2 F", "lens");
                for r in rows {
                    println!("{:>3} {:>5} {:>20.12} {:>20.14} {:>20.14}", r.j, r.component, r.p1_squared, r.product, r.lens);
                }
            }
        }
    }
    Ok(())
}

fn catalog(file: PathBuf, out: Option<PathBuf>, cache_dir: Option<PathBuf>) -> Result<(), Failure> {
    let cache = Cache::new(Cache::resolve(cache_dir.as_deref())).context("opening cache")?;
    let report = run_catalog(&file, &Config::default(), Some(&cache)).with_context(|| format!("reading {}", file.display()))?;
    match out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
            std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            for e in &report.entries {
                print!("{}", e.render_table());
                println!();
            }
            for (a, b) in &report.equivalent_pairs {
                println!("equivalent up to mirror: b({a}) ~ b({b})");
            }
        }
        None => print_json(&report)?,
    }
    for e in &report.row_errors {
        eprintln!("row {}: {} ({})", e.row, e.error, e.input);
    }
    if report.has_errors() {
        Err(Failure::Records)
    } else {
        Ok(())
    }
}

fn selftest() -> Result<(), Failure> {
    let mut ok = true;
    for id in 1..=acceptance::CRITERIA.len() {
        let o = acceptance::run_criterion(id);
        println!("{o}");
        ok &= o.passed;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Records)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let res = match cli.command {
        Command::Invariants { knot, json, precision, h0, tol } => invariants(&knot, json, precision, h0, tol),
        Command::Compare { a, b, json } => compare(&a, &b, json),
        Command::Oracle { which } => oracle(which),
        Command::Catalog { file, out, cache } => catalog(file, out, cache),
        Command::Selftest => selftest(),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Records) => ExitCode::from(EXIT_RECORD_ERROR),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
