//! Command-line front end: congruence sweeps, single computations and the
//! certificate checks. `run` is the whole program minus process exit, so the
//! tests can drive it in-process.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use binomcong::quadform::{represent, QuadForm};
use binomcong::sequences::{
    bernoulli_numbers, euler_numbers, euler_poly, harmonic, harmonic_exact, padic_gamma, u_numbers, TableValues,
};
use binomcong::suite::{run_range, select_checks, CheckResult, CheckSpec, Report, RunOptions, Sampling};
use binomcong::sums::{c_p, f_p, g_p, q_p, s_p};
use binomcong::symbolic::{certificate, certificates, Certificate, Verdict};
use binomcong::{a_prime, binom_rational, canonical_residue, fermat_quotient, PrimeContext, RationalArg};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "binomcong", version, about = "Exact p-adic checks of binomial supercongruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run registered congruence checks over a prime range.
    Verify(VerifyArgs),
    /// Print a single quantity.
    Compute(ComputeArgs),
    /// Check the telescoping certificates.
    Wz(WzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Check ids, id prefixes (THM42 selects THM42-1..7) or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub check: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pub pmin: u64,
    #[arg(long, default_value_t = 199)]
    pub pmax: u64,
    /// Working precision e (digits of p carried per value).
    #[arg(long, default_value_t = 8)]
    pub precision: u32,
    /// Sampled parameters per (check, p).
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 12)]
    pub den_max: u64,
    #[arg(long, default_value_t = 24)]
    pub num_max: i64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write 0 in the timing field, making reruns byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Do not rerun undecided checks at higher precision.
    #[arg(long)]
    pub no_retry: bool,
}

impl VerifyArgs {
    pub fn validate(&self) -> Result<(), String> {
        if self.pmin > self.pmax {
            return Err(format!("--pmin {} exceeds --pmax {}", self.pmin, self.pmax));
        }
        if self.precision < 4 {
            return Err(format!("--precision must be at least 4, got {}", self.precision));
        }
        if self.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        if self.den_max == 0 || self.num_max < 0 {
            return Err("--den-max must be positive and --num-max non-negative".into());
        }
        Ok(())
    }

    pub fn sampling(&self) -> Sampling {
        Sampling { count: self.count, den_max: self.den_max, num_max: self.num_max, seed: self.seed }
    }

    pub fn options(&self) -> RunOptions {
        let jobs = self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        RunOptions { precision: self.precision, retry: !self.no_retry, jobs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Binom,
    Fp,
    Gp,
    #[value(name = "Cp", alias = "cp")]
    Cp,
    #[value(name = "Qp")]
    Qp,
    #[value(name = "Sp", alias = "sp")]
    Sp,
    Euler,
    Eulerpoly,
    Bernoulli,
    Useq,
    Harmonic,
    Gamma,
    #[value(name = "qp")]
    Fermat,
    Jacobi,
    Qf,
    Residue,
    Aprime,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    pub what: Quantity,
    #[arg(long)]
    pub p: Option<u64>,
    /// Rational parameter, e.g. -1/4.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Rational argument of a polynomial or of Gamma.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Base of the Fermat quotient.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Harmonic order (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// F1 (x²+y²), F2 (x²+2y²), F3 (4p = x²+27y²), F4 (x²+3y²).
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub precision: u32,
}

#[derive(Debug, Clone, Args)]
pub struct WzArgs {
    /// Certificate id or "all".
    #[arg(long, default_value = "all")]
    pub cert: String,
}

/// One report row; the field set and order are the output schema.
#[derive(Debug, Serialize)]
pub struct Record<'a> {
    pub check_id: &'a str,
    pub kind: &'static str,
    pub p: u64,
    pub a: Option<String>,
    pub t: u32,
    pub lhs: &'a str,
    pub rhs: &'a str,
    pub pass: bool,
    pub status: &'static str,
    pub micros: u64,
}

impl<'a> Record<'a> {
    pub fn new(r: &'a CheckResult, timing: bool) -> Self {
        Record {
            check_id: &r.id,
            kind: r.kind.as_str(),
            p: r.p,
            a: r.a.as_ref().map(|a| a.to_string()),
            t: r.t,
            lhs: &r.lhs,
            rhs: &r.rhs,
            pass: r.pass,
            status: r.status.as_str(),
            micros: if timing { r.micros } else { 0 },
        }
    }
}

#[derive(Debug, Serialize)]
struct SummaryRecord {
    total: usize,
    pass: usize,
    fail: usize,
    error: usize,
    consistent: usize,
    refuted: usize,
    exit_code: i32,
}

impl SummaryRecord {
    fn new(report: &Report) -> Self {
        let s = &report.summary;
        SummaryRecord {
            total: s.total,
            pass: s.pass,
            fail: s.fail,
            error: s.error,
            consistent: s.consistent,
            refuted: s.refuted,
            exit_code: report.exit_code(),
        }
    }

    fn line(&self) -> String {
        format!(
            "total {}: pass {}, fail {}, error {}, consistent {}, refuted {}",
            self.total, self.pass, self.fail, self.error, self.consistent, self.refuted
        )
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

/// Writes the report. JSON is one object per line, with the summary as a
/// final `{"summary": ...}` line; CSV carries only the rows, and its summary
/// goes to `diag`.
pub fn write_report(report: &Report, format: Format, timing: bool, out: &mut dyn Write, diag: &mut dyn Write) -> io::Result<()> {
    let summary = SummaryRecord::new(report);
    match format {
        Format::Json => {
            for r in &report.results {
                json_line(out, &Record::new(r, timing))?;
            }
            json_line(out, &serde_json::json!({ "summary": summary }))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &report.results {
                w.serialize(Record::new(r, timing))?;
            }
            if report.results.is_empty() {
                w.write_record(["check_id", "kind", "p", "a", "t", "lhs", "rhs", "pass", "status", "micros"])?;
            }
            w.flush()?;
            writeln!(diag, "{}", summary.line())?;
        }
        Format::Text => {
            for r in &report.results {
                let a = r.a.as_ref().map_or("-".to_string(), |a| a.to_string());
                write!(
                    out,
                    "{:<10} {:<13} p={:<4} a={:<7} t={} lhs={} rhs={}",
                    r.status.as_str(),
                    r.id,
                    r.p,
                    a,
                    r.t,
                    r.lhs,
                    r.rhs
                )?;
                if timing {
                    write!(out, " ({} us)", r.micros)?;
                }
                if let Some(e) = &r.error {
                    write!(out, " error: {e}")?;
                }
                writeln!(out)?;
            }
            writeln!(out, "{}", summary.line())?;
        }
    }
    out.flush()
}

/// Runs `specs` under `args` and writes the report. Returns the exit code.
pub fn verify_specs(specs: &[CheckSpec], args: &VerifyArgs, out: &mut dyn Write, diag: &mut dyn Write) -> io::Result<i32> {
    let report = match run_range(specs, args.pmin, args.pmax, &args.sampling(), &args.options()) {
        Ok(r) => r,
        Err(e) => {
            writeln!(diag, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match &args.output {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_report(&report, args.format, !args.no_timing, &mut f, diag)?;
        }
        None => write_report(&report, args.format, !args.no_timing, out, diag)?,
    }
    Ok(report.exit_code())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, diag: &mut dyn Write) -> io::Result<i32> {
    if let Err(msg) = args.validate() {
        writeln!(diag, "error: {msg}")?;
        return Ok(EXIT_USAGE);
    }
    let specs = match select_checks(&args.check) {
        Ok(s) => s,
        Err(e) => {
            writeln!(diag, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    verify_specs(&specs, args, out, diag)
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, String> {
    v.clone().ok_or_else(|| format!("missing --{flag}"))
}

fn rational(v: &Option<String>, flag: &str) -> Result<RationalArg, String> {
    need(v, flag)?.parse().map_err(|e: binomcong::Error| e.to_string())
}

fn context(args: &ComputeArgs) -> Result<Arc<PrimeContext>, String> {
    PrimeContext::new(need(&args.p, "p")?, args.precision).map_err(|e| e.to_string())
}

fn index(args: &ComputeArgs) -> Result<usize, String> {
    let n = need(&args.n, "n")?;
    usize::try_from(n).ok().filter(|&n| n <= 5000).ok_or_else(|| format!("--n {n} is out of range"))
}

/// The text printed by `compute`.
pub fn compute(args: &ComputeArgs) -> Result<String, String> {
    let err = |e: binomcong::Error| e.to_string();
    let s = match args.what {
        Quantity::Binom => {
            let c = context(args)?;
            binom_rational(&rational(&args.a, "a")?, need(&args.k, "k")?, &c).to_string()
        }
        Quantity::Fp | Quantity::Gp | Quantity::Cp | Quantity::Qp | Quantity::Sp => {
            let c = context(args)?;
            let a = rational(&args.a, "a")?;
            let f = match args.what {
                Quantity::Fp => f_p,
                Quantity::Gp => g_p,
                Quantity::Cp => c_p,
                Quantity::Qp => q_p,
                _ => s_p,
            };
            f(&a, &c).map_err(err)?.to_string()
        }
        Quantity::Euler | Quantity::Useq => {
            let n = index(args)?;
            let name = if args.what == Quantity::Euler { "E" } else { "U" };
            let table = |c: Option<&Arc<PrimeContext>>| {
                if args.what == Quantity::Euler {
                    euler_numbers(n, c)
                } else {
                    u_numbers(n, c)
                }
            };
            match args.p {
                None => format!("{name}_{n} = {}", table(None).integers().expect("exact table")[n]),
                Some(_) => {
                    let c = context(args)?;
                    table(Some(&c)).padic(n, &c).map_err(err)?.to_string()
                }
            }
        }
        Quantity::Bernoulli => {
            let n = index(args)?;
            let t = bernoulli_numbers(n);
            match args.p {
                None => match &t.values {
                    TableValues::Rationals(v) => format!("B_{n} = {}", v[n]),
                    TableValues::Integers { .. } => unreachable!("Bernoulli numbers are rational"),
                },
                Some(_) => {
                    let c = context(args)?;
                    t.padic(n, &c).map_err(err)?.to_string()
                }
            }
        }
        Quantity::Eulerpoly => {
            let c = context(args)?;
            euler_poly(index(args)?, &rational(&args.x, "x")?, &c).map_err(err)?.to_string()
        }
        Quantity::Harmonic => {
            if !(1..=2).contains(&args.order) {
                return Err("--order must be 1 or 2".into());
            }
            let n = need(&args.n, "n")?;
            match args.p {
                None => format!("H_{n}^({}) = {}", args.order, harmonic_exact(n, args.order)),
                Some(_) => harmonic(n, args.order, &context(args)?).to_string(),
            }
        }
        Quantity::Gamma => {
            let c = context(args)?;
            padic_gamma(&rational(&args.x, "x")?, &c).map_err(err)?.to_string()
        }
        Quantity::Fermat => {
            let c = context(args)?;
            let b: BigInt = need(&args.b, "b")?.parse().map_err(|_| "malformed --b".to_string())?;
            fermat_quotient(&b, &c).map_err(err)?.to_string()
        }
        Quantity::Jacobi => {
            let a: BigInt = need(&args.a, "a")?.parse().map_err(|_| "malformed --a".to_string())?;
            let n = BigInt::from(need(&args.n, "n")?);
            if n.bit(0) {
                binomcong::arith::jacobi(&a, &n).to_string()
            } else {
                return Err("--n must be odd and positive".into());
            }
        }
        Quantity::Qf => {
            let p = need(&args.p, "p")?;
            let name = need(&args.form, "form")?;
            let form = QuadForm::parse(&name).ok_or_else(|| format!("unknown form {name}"))?;
            if !binomcong::arith::is_prime_u64(p) || p < 3 {
                return Err(format!("{p} is not an odd prime"));
            }
            let r = represent(p, form).map_err(err)?;
            format!("x={} y={}", r.x, r.y)
        }
        Quantity::Residue => {
            let p = need(&args.p, "p")?;
            if !binomcong::arith::is_prime_u64(p) {
                return Err(format!("{p} is not a prime"));
            }
            canonical_residue(&rational(&args.a, "a")?, &BigInt::from(p)).map_err(err)?.to_string()
        }
        Quantity::Aprime => {
            let c = context(args)?;
            a_prime(&rational(&args.a, "a")?, &c).map_err(err)?.to_string()
        }
    };
    Ok(s)
}

/// Verdict line for one certificate, and whether it and all of its
/// mutations behaved.
pub fn certificate_line(cert: &Certificate) -> binomcong::Result<(String, bool)> {
    let report = cert.report()?;
    let mutations = cert.mutation_outcomes()?;
    let rejected = mutations.iter().filter(|ok| !**ok).count();
    let verdict = if report.verified { "verified" } else { "FAILED" };
    let mut line = format!("{}: {verdict} ({rejected} of {} mutations rejected)", cert.id, mutations.len());
    if report.readings.len() > 1 {
        let parts: Vec<String> = report.readings.iter().map(|(n, v)| format!("{n} {}", v.as_str())).collect();
        line.push_str(&format!("; readings: {}", parts.join(", ")));
        if report.verified && report.readings.iter().any(|(_, v)| *v != Verdict::Verified) {
            line.push_str("\nnotice: only some readings of this certificate hold; it passes on the verified one");
        }
    }
    Ok((line, report.verified && rejected == mutations.len()))
}

pub fn cmd_wz(args: &WzArgs, out: &mut dyn Write, diag: &mut dyn Write) -> io::Result<i32> {
    let certs = if args.cert == "all" {
        certificates()
    } else {
        match certificate(&args.cert) {
            Ok(c) => vec![c],
            Err(e) => {
                writeln!(diag, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        }
    };
    let mut all_ok = true;
    for cert in &certs {
        match certificate_line(cert) {
            Ok((line, ok)) => {
                writeln!(out, "{line}")?;
                all_ok &= ok;
            }
            Err(e) => {
                writeln!(out, "{}: error: {e}", cert.id)?;
                all_ok = false;
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_FAIL })
}

/// Parses `argv` and runs the command. Never exits the process.
pub fn run<I, T>(argv: I, out: &mut dyn Write, diag: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(diag, "{text}");
            return EXIT_USAGE;
        }
    };
    let result = match &cli.command {
        Command::Verify(v) => cmd_verify(v, out, diag),
        Command::Wz(w) => cmd_wz(w, out, diag),
        Command::Compute(c) => match compute(c) {
            Ok(s) => writeln!(out, "{s}").map(|_| EXIT_OK),
            Err(msg) => writeln!(diag, "error: {msg}").map(|_| EXIT_USAGE),
        },
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(diag, "error: {e}");
        EXIT_FAIL
    })
}
