//! Command-line front end.

mod parse;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use parse::{parse_ideal_file, parse_polynomial, IdealFile};

use crate::error::{Error, Result};
use crate::frobscan::{gauge_bound_report, GaugeBoundReport};
use crate::groebner::{bracket_power, colon, set_degree_cap_override, Ideal};
use crate::hypersurface::determinantal::{verify_determinantal_identities, Determinantal};
use crate::hypersurface::resolve_over_hypersurface;
use crate::resolution::{regularity, resolve_quotient};
use crate::ring::{Polynomial, Ring};

pub const GUARD_ENV: &str = "CHARPREG_DEGREE_GUARD";

#[derive(Parser, Debug)]
#[command(name = "charpreg", version, about = "Gröbner bases, resolutions and regularity over prime fields")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Source {
    /// Ideal file.
    #[arg(short = 'f', long = "file")]
    pub file: PathBuf,
    /// Name of the ideal in the file.
    #[arg(short = 'i', long = "ideal", default_value = "I")]
    pub ideal: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(Source),
    /// Ideal membership of a polynomial.
    Member {
        #[command(flatten)]
        src: Source,
        /// The polynomial to test.
        #[arg(short = 'p', long = "poly")]
        poly: String,
    },
    /// Colon ideal (I : J).
    Colon {
        #[command(flatten)]
        src: Source,
        /// Name of the second ideal.
        #[arg(short = 'j', long = "by")]
        by: String,
    },
    /// Frobenius bracket power I^[p^e].
    Frobpow {
        #[command(flatten)]
        src: Source,
        #[arg(short = 'e', long = "e")]
        e: u32,
    },
    /// Minimal free resolution of R/I.
    Res(Source),
    /// Castelnuovo-Mumford regularity of R/I.
    Reg(Source),
    /// Regularity and colon-degree scan over Frobenius powers.
    Scan {
        #[command(flatten)]
        src: Source,
        /// Largest exponent e to scan (default 2 for p = 2, otherwise 1).
        #[arg(long = "e-max")]
        e_max: Option<u32>,
        /// Emit CSV rows.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Resolution of S/(g2^q, g3^q) over S = R/(yu - xv).
    DemoDeterminantal {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Number of maps to compute.
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Checks the polynomial identities behind the determinantal computation.
    VerifyIdentities {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Member { .. } => "member",
            Command::Colon { .. } => "colon",
            Command::Frobpow { .. } => "frobpow",
            Command::Res(_) => "res",
            Command::Reg(_) => "reg",
            Command::Scan { .. } => "scan",
            Command::DemoDeterminantal { .. } => "demo-determinantal",
            Command::VerifyIdentities { .. } => "verify-identities",
        }
    }
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::RingMismatch(_) => 1,
        Error::Parse { .. } => 2,
        Error::DegreeGuard { .. } => 3,
        Error::Invariant(_) => 4,
    }
}

/// What a command produced: a ring description, plain text and a JSON result.
pub struct Outcome {
    ring: Value,
    text: String,
    result: Value,
}

fn ring_json(ring: &Ring) -> Value {
    json!({ "p": ring.characteristic(), "vars": ring.vars(), "order": ring.order().name() })
}

fn load(src: &Source) -> Result<IdealFile> {
    let text = std::fs::read_to_string(&src.file)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", src.file.display())))?;
    parse_ideal_file(&text)
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn list_text(header: &str, ps: &[Polynomial]) -> String {
    let mut s = format!("{header}\n");
    for p in ps {
        s.push_str(&format!("  {p}\n"));
    }
    s
}

/// Reads the degree guard override from the environment.
pub fn apply_guard_env() -> Result<()> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => {
            let cap: i64 = v
                .trim()
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| Error::Usage(format!("{GUARD_ENV} must be a positive integer, got '{v}'")))?;
            set_degree_cap_override(Some(cap));
        }
        Err(_) => set_degree_cap_override(None),
    }
    Ok(())
}

/// Runs one command, returning its output without printing.
pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Gb(src) => {
            let f = load(src)?;
            let gb = f.ideal(&src.ideal)?.groebner_basis()?.to_vec();
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: list_text(&format!("Gröbner basis of {} ({} elements):", src.ideal, gb.len()), &gb),
                result: json!({ "ideal": src.ideal, "groebner_basis": strings(&gb) }),
            })
        }
        Command::Member { src, poly } => {
            let f = load(src)?;
            let g = parse_polynomial(&f.ring, poly)?;
            let member = f.ideal(&src.ideal)?.contains(&g)?;
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: format!("{g} {} {}\n", if member { "is in" } else { "is not in" }, src.ideal),
                result: json!({ "ideal": src.ideal, "polynomial": g.to_string(), "member": member }),
            })
        }
        Command::Colon { src, by } => {
            let f = load(src)?;
            let c = colon(f.ideal(&src.ideal)?, f.ideal(by)?)?;
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: list_text(&format!("({} : {}) is generated by:", src.ideal, by), c.generators()),
                result: json!({ "ideal": src.ideal, "by": by, "generators": strings(c.generators()) }),
            })
        }
        Command::Frobpow { src, e } => {
            let f = load(src)?;
            let b = bracket_power(f.ideal(&src.ideal)?, *e)?;
            let q = (f.ring.characteristic() as u64).pow(*e);
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: list_text(&format!("{}^[{q}] is generated by:", src.ideal), b.generators()),
                result: json!({ "ideal": src.ideal, "e": e, "q": q, "generators": strings(b.generators()) }),
            })
        }
        Command::Res(src) => {
            let f = load(src)?;
            let res = resolve_quotient(f.ideal(&src.ideal)?)?;
            res.check_complex()?;
            let betti = res.betti();
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: format!("R/{}: {}\n{betti}", src.ideal, betti.compact()),
                result: json!({ "ideal": src.ideal, "betti": betti.columns() }),
            })
        }
        Command::Reg(src) => {
            let f = load(src)?;
            let reg = regularity(&resolve_quotient(f.ideal(&src.ideal)?)?.betti())?;
            Ok(Outcome {
                ring: ring_json(&f.ring),
                text: format!("reg(R/{}) = {reg}\n", src.ideal),
                result: json!({ "ideal": src.ideal, "regularity": reg }),
            })
        }
        Command::Scan { src, e_max, csv } => {
            let f = load(src)?;
            let ideal: &Ideal = f.ideal(&src.ideal)?;
            let e_max = e_max.unwrap_or(if f.ring.characteristic() == 2 { 2 } else { 1 });
            let report = gauge_bound_report(ideal, e_max)?;
            let ring = crate::frobscan::scan_ring(ideal)?;
            Ok(Outcome {
                ring: ring_json(&ring),
                text: if *csv { scan_csv(&report) } else { scan_text(&report) },
                result: serde_json::to_value(&report).expect("serializable"),
            })
        }
        Command::DemoDeterminantal { p, e, steps } => {
            let d = Determinantal::new(*p, *e)?;
            let s = d.hypersurface();
            let res = resolve_over_hypersurface(&s, &d.presentation(), *steps)?;
            res.check_complex(&s)?;
            let betti = res.betti();
            let mut text = format!(
                "S = R/(yu - xv), q = {}: minimal resolution of S/(g2^q, g3^q)\n{}\n",
                d.q(),
                betti.compact()
            );
            match (res.period_start(), res.period_shift()) {
                (Some(start), Some(shift)) => {
                    text.push_str(&format!("period=2 from F_{start}, F_(i+2) = F_i(-{shift})\n"))
                }
                _ => text.push_str("period=none detected within the computed head\n"),
            }
            Ok(Outcome {
                ring: ring_json(d.ring()),
                text,
                result: json!({
                    "q": d.q(),
                    "betti": betti.columns(),
                    "period": res.period_start().map(|_| 2),
                    "period_start": res.period_start(),
                    "period_shift": res.period_shift(),
                }),
            })
        }
        Command::VerifyIdentities { p, e } => {
            let report = verify_determinantal_identities(*p, *e)?;
            let mut text = String::new();
            for fam in &report.families {
                text.push_str(&format!(
                    "{:<4} {} ({} checks)\n",
                    if fam.passed() { "ok" } else { "FAIL" },
                    fam.name,
                    fam.checked
                ));
                for msg in fam.failures.iter().take(5) {
                    text.push_str(&format!("     {msg}\n"));
                }
            }
            text.push_str(&report.summary());
            text.push('\n');
            if !report.all_pass() {
                return Err(Error::Invariant(text));
            }
            let d = Determinantal::new(*p, *e)?;
            Ok(Outcome {
                ring: ring_json(d.ring()),
                text,
                result: serde_json::to_value(&report).expect("serializable"),
            })
        }
    }
}

fn scan_csv(report: &GaugeBoundReport) -> String {
    let mut s = String::from("e,q,i,reg_i,colon_max_deg,reg_ratio,deg_ratio\n");
    for row in &report.scan.rows {
        let colon = report.scan.colon_row(row.e).expect("colon row for every e");
        s.push_str(&format!(
            "{},{},{},{},{},{:.6},{:.6}\n",
            row.e, row.q, row.i, row.reg, colon.max_degree, row.ratio, colon.ratio
        ));
    }
    s
}

fn scan_text(report: &GaugeBoundReport) -> String {
    let mut s = String::new();
    if let Some(h) = &report.scan.homogenized_with {
        s.push_str(&format!("(homogenized with extra variable {h})\n"));
    }
    s.push_str(&format!("{:>3} {:>6} {:>3} {:>6} {:>8}\n", "e", "q", "i", "reg_i", "reg/q"));
    for r in &report.scan.rows {
        s.push_str(&format!("{:>3} {:>6} {:>3} {:>6} {:>8.3}\n", r.e, r.q, r.i, r.reg, r.ratio));
    }
    s.push_str(&format!(
        "\n{:>3} {:>6} {:>10} {:>10} {:>8}  degrees\n",
        "e", "q", "colon_max", "colon_reg", "deg/q"
    ));
    for r in &report.scan.colon {
        s.push_str(&format!(
            "{:>3} {:>6} {:>10} {:>10} {:>8.3}  {:?}\n",
            r.e, r.q, r.max_degree, r.colon_reg, r.ratio, r.generator_degrees
        ));
    }
    s.push_str(&format!("\nverdict: {}\n", report.verdict));
    for n in &report.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Parses arguments, runs the command and prints. Returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = apply_guard_env() {
        eprintln!("error: {e}");
        return exit_code(&e);
    }
    let start = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let doc = json!({
                    "command": cli.command.name(),
                    "ring": out.ring,
                    "result": out.result,
                    "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")));
            } else {
                emit(&out.text);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
