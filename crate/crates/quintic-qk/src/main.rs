//! Command-line front end.
//!
//! Subcommands: `gw` (GW/GV table), `jk` (reconstructed J-function and
//! unknowns), `coeffs` (principal-part extraction at one degree and root
//! order), `verify` (the full check suite; exit 0 iff every check passes),
//! and `cache {write,read,info}`.
//!
//! All numeric output is exact (rational strings); JSON field order is
//! fixed, so identical configurations produce byte-identical output.
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 internal assertion failure.

use clap::{Parser, Subcommand, ValueEnum};
use quintic_qk::cache::{CacheError, CacheFile, RatFnJson};
use quintic_qk::gw::{gw_table, GwTable};
use quintic_qk::number::rat_to_string;
use quintic_qk::qk::ReconState;
use quintic_qk::qrat::KQRat;
use quintic_qk::verify::{extract_coefficients, run_verification, VerifyOptions, VerifyReport};
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "quintic-qk",
    version,
    about = "Exact quantum K-theory and Gromov-Witten computations for the quintic threefold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache file path (falls back to the QUINTIC_QK_CACHE environment
    /// variable). Commands read it as a seed when present; only
    /// `cache write` creates or updates it.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckGroup {
    Identity,
    Coeffs,
    Structure,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the exact Gromov-Witten / Gopakumar-Vafa table
    Gw {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit the reconstructed small J-function and reconstruction unknowns
    Jk {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extract the principal-part coefficients at one degree and root order
    Coeffs {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        root_order: u64,
    },
    /// Run the verification suite; exit 0 iff every check passes
    Verify {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Comma-separated subset of identity,coeffs,structure
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<CheckGroup>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Compute through the given degree and write the cache file
    Write {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Validate and summarize an existing cache file
    Read,
    /// Print cache metadata
    Info,
}

fn main() {
    // die quietly on a closed pipe instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(code) => std::process::exit(code),
        Err(_) => {
            eprintln!("internal assertion failure; see the panic diagnostic above");
            std::process::exit(3);
        }
    }
}

fn cache_path(cli: &Option<PathBuf>) -> Option<PathBuf> {
    cli.clone()
        .or_else(|| std::env::var_os("QUINTIC_QK_CACHE").map(PathBuf::from))
}

fn load_cache(path: &Option<PathBuf>) -> Result<Option<CacheFile>, CacheError> {
    match path {
        Some(p) if p.exists() => Ok(Some(CacheFile::read(p)?)),
        _ => Ok(None),
    }
}

/// J-function coefficients through max_degree, straight from the cache when
/// it covers the request, otherwise by (possibly seeded) reconstruction.
fn obtain_jk(
    max_degree: usize,
    cache: &Option<CacheFile>,
) -> Result<(Vec<KQRat>, GwTable), CacheError> {
    if let Some(c) = cache {
        if c.payload.max_degree >= max_degree {
            let jk = c.jk_coefficients()?;
            let table = c.table()?;
            return Ok((jk[..=max_degree].to_vec(), table));
        }
    }
    let state = obtain_state(max_degree, cache)?;
    Ok((state.jk().to_vec(), gw_table(max_degree)))
}

fn obtain_state(max_degree: usize, cache: &Option<CacheFile>) -> Result<ReconState, CacheError> {
    let seed = match cache {
        Some(c) => Some(c.solved_levels()?),
        None => None,
    };
    Ok(ReconState::reconstruct_seeded(max_degree, seed.as_ref()))
}

#[derive(Serialize)]
struct GwRow {
    degree: usize,
    gw: String,
    gv: String,
}

#[derive(Serialize)]
struct GwOutput {
    max_degree: usize,
    table: Vec<GwRow>,
}

#[derive(Serialize)]
struct JkDegree {
    degree: usize,
    components: Vec<RatFnJson>,
}

#[derive(Serialize)]
struct JkOutput {
    max_degree: usize,
    levels_solved: usize,
    epsilon: Vec<Vec<String>>,
    rpoly: Vec<Vec<Vec<String>>>,
    jk: Vec<JkDegree>,
}

#[derive(Serialize)]
struct CoeffOutput {
    degree: usize,
    root_order: u64,
    a: String,
    b: String,
    c: String,
    d: String,
    e: String,
    f: String,
}

fn run(cli: Cli) -> i32 {
    let cache_file = cache_path(&cli.cache);
    match cli.command {
        Command::Gw { max_degree, format } => {
            if max_degree < 1 {
                eprintln!("--max-degree must be at least 1");
                return 2;
            }
            let table = gw_table(max_degree);
            emit_gw(&table, format);
            0
        }
        Command::Jk { max_degree, format } => {
            if max_degree < 1 {
                eprintln!("--max-degree must be at least 1");
                return 2;
            }
            if format == Format::Csv {
                eprintln!("csv is only available for the flat gw table");
                return 2;
            }
            let cache = match load_cache(&cache_file) {
                Ok(c) => c,
                Err(e) => return cache_failure(e),
            };
            let state = match obtain_state(max_degree, &cache) {
                Ok(s) => s,
                Err(e) => return cache_failure(e),
            };
            emit_jk(&state, format);
            0
        }
        Command::Coeffs { degree, root_order } => {
            if degree < 1 || root_order < 1 || root_order > degree as u64 {
                eprintln!("need 1 <= root order <= degree");
                return 2;
            }
            let cache = match load_cache(&cache_file) {
                Ok(c) => c,
                Err(e) => return cache_failure(e),
            };
            let (jk, _) = match obtain_jk(degree, &cache) {
                Ok(v) => v,
                Err(e) => return cache_failure(e),
            };
            let rec = extract_coefficients(&jk[degree], degree, root_order);
            let out = CoeffOutput {
                degree,
                root_order,
                a: rat_to_string(&rec.a),
                b: rat_to_string(&rec.b),
                c: rat_to_string(&rec.c),
                d: rat_to_string(&rec.d),
                e: rat_to_string(&rec.e),
                f: rat_to_string(&rec.f),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            0
        }
        Command::Verify {
            max_degree,
            checks,
            format,
        } => {
            if max_degree < 1 {
                eprintln!("--max-degree must be at least 1");
                return 2;
            }
            if format == Format::Csv {
                eprintln!("csv is only available for the flat gw table");
                return 2;
            }
            let options = if checks.is_empty() {
                VerifyOptions::default()
            } else {
                VerifyOptions {
                    identity: checks.contains(&CheckGroup::Identity),
                    coefficients: checks.contains(&CheckGroup::Coeffs),
                    structure: checks.contains(&CheckGroup::Structure),
                }
            };
            let cache = match load_cache(&cache_file) {
                Ok(c) => c,
                Err(e) => return cache_failure(e),
            };
            let (jk, table) = match obtain_jk(max_degree, &cache) {
                Ok(v) => v,
                Err(e) => return cache_failure(e),
            };
            let report = run_verification(&jk, &table, options);
            emit_report(&report, format);
            if report.all_passed {
                0
            } else {
                1
            }
        }
        Command::Cache { action } => {
            let Some(path) = cache_file else {
                eprintln!("no cache path: pass --cache or set QUINTIC_QK_CACHE");
                return 2;
            };
            match action {
                CacheAction::Write { max_degree } => {
                    if max_degree < 1 {
                        eprintln!("--max-degree must be at least 1");
                        return 2;
                    }
                    // extend an existing cache instead of recomputing it
                    let seed = match load_cache(&Some(path.clone())) {
                        Ok(c) => c,
                        Err(e) => return cache_failure(e),
                    };
                    let state = match obtain_state(max_degree, &seed) {
                        Ok(s) => s,
                        Err(e) => return cache_failure(e),
                    };
                    let table = gw_table(max_degree);
                    let file = CacheFile::build(&state, &table);
                    if let Err(e) = file.write(&path) {
                        return cache_failure(e);
                    }
                    eprintln!(
                        "cache written: degree {}, {} level(s) solved this run",
                        max_degree,
                        state.levels_solved()
                    );
                    0
                }
                CacheAction::Read | CacheAction::Info => match CacheFile::read(&path) {
                    Ok(c) => {
                        #[derive(Serialize)]
                        struct Info {
                            path: String,
                            format_version: u32,
                            max_degree: usize,
                            checksum: String,
                        }
                        let info = Info {
                            path: path.display().to_string(),
                            format_version: c.payload.format_version,
                            max_degree: c.payload.max_degree,
                            checksum: c.checksum.clone(),
                        };
                        println!("{}", serde_json::to_string_pretty(&info).unwrap());
                        0
                    }
                    Err(e) => cache_failure(e),
                },
            }
        }
    }
}

fn cache_failure(e: CacheError) -> i32 {
    eprintln!("{e}");
    3
}

fn emit_gw(table: &GwTable, format: Format) {
    let rows: Vec<GwRow> = (1..=table.max_degree())
        .map(|d| GwRow {
            degree: d,
            gw: rat_to_string(table.gw(d)),
            gv: rat_to_string(table.gv(d)),
        })
        .collect();
    match format {
        Format::Json => {
            let out = GwOutput {
                max_degree: table.max_degree(),
                table: rows,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("degree,gw,gv");
            for r in rows {
                println!("{},{},{}", r.degree, r.gw, r.gv);
            }
        }
        Format::Pretty => {
            let w = rows.iter().map(|r| r.gw.len()).max().unwrap_or(2).max(2);
            println!("{:>3}  {:>w$}  GV", "d", "GW");
            for r in rows {
                println!("{:>3}  {:>w$}  {}", r.degree, r.gw, r.gv);
            }
        }
    }
}

fn emit_jk(state: &ReconState, format: Format) {
    let d = state.max_degree();
    match format {
        Format::Json | Format::Csv => {
            let out = JkOutput {
                max_degree: d,
                levels_solved: state.levels_solved(),
                epsilon: (0..4)
                    .map(|i| {
                        state
                            .epsilon(i)
                            .coeffs()
                            .iter()
                            .map(rat_to_string)
                            .collect()
                    })
                    .collect(),
                rpoly: (0..4)
                    .map(|i| {
                        (0..=d)
                            .map(|j| {
                                state
                                    .rpoly(i, j)
                                    .coeffs()
                                    .iter()
                                    .map(rat_to_string)
                                    .collect()
                            })
                            .collect()
                    })
                    .collect(),
                jk: (0..=d)
                    .map(|m| JkDegree {
                        degree: m,
                        components: (0..4)
                            .map(|i| RatFnJson::encode(state.jk_coefficient(m).comp(i)))
                            .collect(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Pretty => {
            for m in 0..=d {
                println!("Q^{m}:");
                for i in 0..4 {
                    let c = state.jk_coefficient(m).comp(i);
                    if !c.is_zero() {
                        println!("  x^{i}: {c}");
                    }
                }
            }
        }
    }
}

fn emit_report(report: &VerifyReport, format: Format) {
    match format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(report).unwrap());
        }
        Format::Pretty => {
            println!(
                "verification through degree {} ({} ms): {}",
                report.max_degree,
                report.elapsed_ms,
                if report.all_passed {
                    "ALL PASS"
                } else {
                    "FAILED"
                }
            );
            for v in &report.identity {
                println!(
                    "  identity   Q^{}: {}",
                    v.degree,
                    if v.passed { "ok" } else { "MISMATCH" }
                );
                if let Some(m) = &v.mismatch {
                    println!("             {m}");
                }
            }
            for v in &report.coefficients {
                println!(
                    "  coeffs     (M={}, r={}): {}",
                    v.degree,
                    v.root_order,
                    if v.passed { "ok" } else { "MISMATCH" }
                );
                if let Some(m) = &v.mismatch {
                    println!("             {m}");
                }
            }
            for v in &report.structure {
                println!(
                    "  structure  Q^{}: {}",
                    v.degree,
                    if v.passed { "ok" } else { "VIOLATION" }
                );
                if let Some(m) = &v.detail {
                    println!("             {m}");
                }
            }
        }
    }
}
