//! The `rkhsent` command line.
//!
//! Exit codes: 0 success, 1 malformed flags, 2 requested bound invalid for
//! the inputs, 3 a ledger entry failed, 4 an empirical dominance check failed.

mod format;
mod ledger;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    best_bound, general_bound, kuehn_bound_at, thm1_bound, thm2_bound_eps0, thm3_bound, anisotropic_bound,
    Bandwidth, BestOptions, BoundError, BoundInputs, BoundResult, IsoMethod, KernelSpec, Method, Thm2Params,
    DEFAULT_P,
};
use crate::empirical::{choose_trunc_order, tail_bound, verify_bound, PackingParams, VerifyReport, MAX_DIM};

pub use format::{bound_json, real};
pub use ledger::{ledger, LedgerEntry, ToleranceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LEDGER: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "rkhsent", version, about = "Covering-number bounds for Gaussian RKHS embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one bound and print it as JSON.
    Bound(BoundArgs),
    /// Recompute the constants ledger.
    Constants(ConstantsArgs),
    /// Check bounds against the empirical packing oracle.
    Verify(VerifyArgs),
    /// Evaluate bounds over a grid of inputs.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, conflicts_with = "sigma_vec")]
    sigma: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    sigma_vec: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value = "best")]
    method: String,
    /// Truncation order for `kuehn`; by default the best order is searched.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long)]
    filter: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    /// Defaults to 2048 for d = 1 and 4096 otherwise.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// `a..b`, a comma list, or a single dimension.
    #[arg(long)]
    d: Option<String>,
    #[arg(long, value_delimiter = ',', conflicts_with = "sigma_vec")]
    sigma: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    sigma_vec: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    radius: Vec<f64>,
    /// `lo..hi:n`, `n` log-spaced values from `lo` to `hi`.
    #[arg(long, conflicts_with = "eps")]
    eps_log: Option<String>,
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    eps0: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(a, out),
        Command::Constants(a) => cmd_constants(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn build_spec(a: &SpecArgs) -> Result<KernelSpec, Usage> {
    let spec = match (&a.sigma, &a.sigma_vec) {
        (Some(s), None) => {
            let d = a.d.ok_or_else(|| Usage("--d is required with --sigma".into()))?;
            KernelSpec::new(d, Bandwidth::Isotropic(*s), a.radius)
        }
        (None, Some(v)) => {
            if let Some(d) = a.d {
                if d != v.len() {
                    return Err(Usage(format!("--d {d} does not match {} bandwidths in --sigma-vec", v.len())));
                }
            }
            KernelSpec::anisotropic(v.clone(), a.radius)
        }
        _ => return Err(Usage("exactly one of --sigma or --sigma-vec is required".into())),
    };
    Ok(spec?)
}

fn parse_method(s: &str) -> Result<Method, Usage> {
    Ok(s.parse::<Method>()?)
}

fn parse_methods(list: &Option<Vec<String>>) -> Result<Vec<Method>, Usage> {
    match list {
        None => Ok(Method::ALL.to_vec()),
        Some(v) => v.iter().map(|s| parse_method(s.trim())).collect(),
    }
}

/// Any error becomes an invalid result carrying the message.
fn as_result(method: Method, inputs: BoundInputs, r: Result<BoundResult, BoundError>) -> BoundResult {
    r.unwrap_or_else(|e| BoundResult::invalid(method, inputs, f64::INFINITY, e.to_string()))
}

/// Kühn's bound at radius `eps`, minimized over the truncation order unless
/// one is given.
fn kuehn_best(spec: &KernelSpec, eps: f64, n: Option<u64>) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("kuehn")?;
    if let Some(n) = n {
        return kuehn_bound_at(spec, eps, n).map(|k| k.result);
    }
    if !(eps > 0.0) {
        return kuehn_bound_at(spec, eps, 1).map(|k| k.result);
    }
    let hi = choose_trunc_order(sigma, eps * 1e-3).max(1);
    let mut best: Option<(u64, BoundResult)> = None;
    for n in 1..=hi {
        if tail_bound(sigma, n) >= eps {
            continue;
        }
        let r = kuehn_bound_at(spec, eps, n)?.result;
        if r.valid && best.as_ref().map_or(true, |(_, b)| r.log_of_bound < b.log_of_bound) {
            best = Some((n, r));
        }
    }
    match best {
        Some((n, mut r)) => {
            r.validity_reason = format!("ok; N={n}");
            Ok(r)
        }
        None => kuehn_bound_at(spec, eps, hi).map(|k| k.result),
    }
}

fn evaluate(spec: &KernelSpec, method: Method, eps: f64, p: Option<f64>, eps0: Option<f64>, n: Option<u64>) -> BoundResult {
    let mut inputs = BoundInputs::new(spec, eps);
    inputs.p = p;
    inputs.eps0 = eps0;
    let r = match method {
        Method::Kuehn => kuehn_best(spec, eps, n),
        Method::General => general_bound(spec, eps),
        Method::Thm1 => thm1_bound(spec, eps),
        Method::Thm2 => spec.require_unit_ball("thm2").and_then(|sigma| {
            thm2_bound_eps0(spec, eps0.unwrap_or_else(|| Thm2Params::eps0_max(sigma)), eps)
        }),
        Method::Thm3 => thm3_bound(spec, p.unwrap_or(DEFAULT_P), eps),
        Method::Anisotropic => {
            let iso = match (eps0, p) {
                (Some(e0), _) => IsoMethod::Thm2 { eps0: e0 },
                (None, Some(p)) => IsoMethod::Thm3 { p },
                (None, None) => IsoMethod::General,
            };
            anisotropic_bound(spec, eps, iso)
        }
        Method::Best => best_bound(spec, eps, BestOptions { eps0, p }).map(|b| b.result),
    };
    as_result(method, inputs, r)
}

fn cmd_bound(a: BoundArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let spec = build_spec(&a.spec)?;
    let method = parse_method(&a.method)?;
    let r = evaluate(&spec, method, a.eps, a.p, a.eps0, a.n);
    writeln!(out, "{}", bound_json(&r))?;
    Ok(if r.valid { EXIT_OK } else { EXIT_INVALID })
}

fn ledger_json(e: &LedgerEntry) -> String {
    format::JsonObject::new()
        .str("name", &e.name)
        .real("target", e.target)
        .real("computed", e.computed)
        .real("tolerance", e.tolerance)
        .str("tolerance_kind", e.tolerance_kind.name())
        .str("source", &e.source)
        .bool("pass", e.pass)
        .render()
}

fn cmd_constants(a: ConstantsArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let mut entries = ledger();
    if let Some(f) = &a.filter {
        entries.retain(|e| &e.name == f);
        if entries.is_empty() {
            return Err(Usage(format!("no ledger entry named '{f}'")));
        }
    }
    if a.json {
        let items: Vec<String> = entries.iter().map(ledger_json).collect();
        writeln!(out, "{}", format::json_array(&items))?;
    } else {
        writeln!(out, "{:<24} {:>24} {:>24} {:>10} {:<18} {:<4}  source", "name", "computed", "target", "tol", "kind", "pass")?;
        for e in &entries {
            writeln!(
                out,
                "{:<24} {:>24} {:>24} {:>10.1e} {:<18} {:<4}  {}",
                e.name,
                real(e.computed),
                real(e.target),
                e.tolerance,
                e.tolerance_kind.name(),
                if e.pass { "ok" } else { "FAIL" },
                e.source
            )?;
        }
    }
    Ok(if entries.iter().all(|e| e.pass) { EXIT_OK } else { EXIT_LEDGER })
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Usage> {
    let spec = build_spec(&a.spec)?;
    if spec.d() > MAX_DIM {
        return Err(Usage(format!("verify supports d ≤ {MAX_DIM}, got d = {}", spec.d())));
    }
    if a.format == Format::Csv {
        return Err(Usage("verify supports --format text or json".into()));
    }
    let methods = parse_methods(&a.methods)?;
    let grid = a.grid.unwrap_or(if spec.d() == 1 { 2048 } else { 4096 });
    let report = verify_bound(
        &spec,
        a.eps,
        &methods,
        PackingParams::new(a.samples, grid, a.seed),
        BestOptions { eps0: a.eps0, p: a.p },
    )?;
    for w in &report.warnings {
        writeln!(err, "warning: {w}")?;
    }
    match a.format {
        Format::Json => writeln!(out, "{}", verify_json(&report))?,
        _ => write!(out, "{}", verify_text(&report))?,
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATION })
}

fn verify_text(r: &VerifyReport) -> String {
    let e = &r.estimate;
    let mut s = String::new();
    s.push_str(&format!(
        "spec: d={} sigma={} r={} eps={}\n",
        r.spec.d(),
        format::text_bandwidth(r.spec.bandwidth()),
        real(r.spec.radius()),
        real(r.eps)
    ));
    s.push_str(&format!(
        "oracle: samples={} grid={} seed={} N={} packing={} log_lower_bound={}\n",
        e.samples,
        e.grid_size,
        e.seed,
        e.trunc_order,
        e.count,
        real(e.log_lower_bound)
    ));
    s.push_str(&format!(
        "caveat: samples are truncated at order N; tail sqrt((2σ²)^N/N!) = {} with σ = r·max σ_i. The packing certificate holds regardless, since every sample lies in the unit ball and grid distances never exceed sup distances.\n",
        real(e.tail_bound)
    ));
    for c in &r.checks {
        let upper = c.bound.as_ref().map(|b| real(b.log_covering_bound)).unwrap_or_else(|| "-".into());
        let status = if !c.applicable {
            "skip"
        } else if c.pass {
            "pass"
        } else {
            "FAIL"
        };
        s.push_str(&format!("{:<12} {:<5} upper={:<24} {}\n", c.method.name(), status, upper, c.note));
    }
    s.push_str(&format!("result: {}\n", if r.pass { "pass" } else { "FAIL" }));
    s
}

fn verify_json(r: &VerifyReport) -> String {
    let e = &r.estimate;
    let checks: Vec<String> = r
        .checks
        .iter()
        .map(|c| {
            format::JsonObject::new()
                .str("method", c.method.name())
                .bool("applicable", c.applicable)
                .bool("pass", c.pass)
                .raw("bound", c.bound.as_ref().map(bound_json).unwrap_or_else(|| "null".into()))
                .str("note", &c.note)
                .render()
        })
        .collect();
    format::JsonObject::new()
        .int("d", r.spec.d() as u64)
        .raw("sigma", format::json_bandwidth(r.spec.bandwidth()))
        .real("r", r.spec.radius())
        .real("eps", r.eps)
        .int("samples", e.samples as u64)
        .int("grid", e.grid_size as u64)
        .int("seed", e.seed)
        .int("trunc_order", e.trunc_order as u64)
        .int("count", e.count as u64)
        .real("log_lower_bound", e.log_lower_bound)
        .real("tail_bound", e.tail_bound)
        .raw("checks", format!("[{}]", checks.join(",")))
        .bool("pass", r.pass)
        .render()
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Usage> {
    let bad = || Usage(format!("cannot parse dimensions '{s}'"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a == 0 || b < a {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect()
    }
}

fn parse_eps_log(s: &str) -> Result<Vec<f64>, Usage> {
    let bad = || Usage(format!("cannot parse --eps-log '{s}', expected lo..hi:n"));
    let (range, n) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

struct SweepRow {
    result: BoundResult,
}

const SWEEP_HEADER: [&str; 11] = [
    "d", "sigma", "r", "eps", "p", "eps0", "method", "log_covering_bound", "log_of_bound", "valid", "reason",
];

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let eps_list = match (&a.eps_log, &a.eps) {
        (Some(s), None) => parse_eps_log(s)?,
        (None, Some(v)) => v.clone(),
        _ => return Err(Usage("one of --eps-log or --eps is required".into())),
    };
    let methods = parse_methods(&a.methods)?;
    let bandwidths: Vec<(usize, Bandwidth)> = match (&a.sigma, &a.sigma_vec) {
        (Some(sigmas), None) => {
            let dims = parse_dims(a.d.as_deref().ok_or_else(|| Usage("--d is required with --sigma".into()))?)?;
            dims.iter()
                .flat_map(|&d| sigmas.iter().map(move |&s| (d, Bandwidth::Isotropic(s))))
                .collect()
        }
        (None, Some(v)) => vec![(v.len(), Bandwidth::Anisotropic(v.clone()))],
        _ => return Err(Usage("exactly one of --sigma or --sigma-vec is required".into())),
    };
    let ps: Vec<Option<f64>> = a.p.clone().map(|v| v.into_iter().map(Some).collect()).unwrap_or(vec![None]);
    let eps0s: Vec<Option<f64>> = a.eps0.clone().map(|v| v.into_iter().map(Some).collect()).unwrap_or(vec![None]);

    let mut rows = Vec::new();
    for (d, bw) in &bandwidths {
        for &r in &a.radius {
            let spec = KernelSpec::new(*d, bw.clone(), r)?;
            for &eps in &eps_list {
                for &p in &ps {
                    for &eps0 in &eps0s {
                        for &m in &methods {
                            rows.push(SweepRow {
                                result: evaluate(&spec, m, eps, p, eps0, None),
                            });
                        }
                    }
                }
            }
        }
    }
    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SWEEP_HEADER)?;
            for row in &rows {
                w.write_record(csv_fields(&row.result))?;
            }
            let bytes = w.into_inner().map_err(|e| Usage(e.to_string()))?;
            out.write_all(&bytes)?;
        }
        Format::Json => {
            let items: Vec<String> = rows.iter().map(|r| sweep_json(&r.result)).collect();
            writeln!(out, "{}", format::json_array(&items))?;
        }
        Format::Text => {
            writeln!(out, "{}", SWEEP_HEADER.join("\t"))?;
            for row in &rows {
                writeln!(out, "{}", csv_fields(&row.result).join("\t"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn opt_text(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn csv_fields(r: &BoundResult) -> Vec<String> {
    vec![
        r.inputs.d.to_string(),
        format::text_bandwidth(&r.inputs.bandwidth),
        real(r.inputs.radius),
        real(r.inputs.eps),
        opt_text(r.inputs.p),
        opt_text(r.inputs.eps0),
        r.method.name().to_string(),
        real(r.log_covering_bound),
        real(r.log_of_bound),
        r.valid.to_string(),
        r.validity_reason.clone(),
    ]
}

fn sweep_json(r: &BoundResult) -> String {
    format::JsonObject::new()
        .int("d", r.inputs.d as u64)
        .raw("sigma", format::json_bandwidth(&r.inputs.bandwidth))
        .real("r", r.inputs.radius)
        .real("eps", r.inputs.eps)
        .raw("p", format::json_opt(r.inputs.p))
        .raw("eps0", format::json_opt(r.inputs.eps0))
        .str("method", r.method.name())
        .real("log_covering_bound", r.log_covering_bound)
        .real("log_of_bound", r.log_of_bound)
        .bool("valid", r.valid)
        .str("reason", &r.validity_reason)
        .render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_log_grid() {
        let g = parse_eps_log("1e-3..1:7").unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1.0);
        assert!((g[3] - (1e-3f64).sqrt()).abs() < 1e-15);
        assert!(parse_eps_log("1..1e-3:3").is_err());
        assert!(parse_eps_log("1e-3..1").is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(parse_dims("1..3").ok().unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_dims("2,5").ok().unwrap(), vec![2, 5]);
        assert!(parse_dims("0..2").is_err());
    }

    #[test]
    fn kuehn_search() {
        let spec = KernelSpec::isotropic(1, 1.0).unwrap();
        let r = kuehn_best(&spec, 0.1, None).unwrap();
        assert!(r.valid);
        for n in 1..40 {
            let k = kuehn_bound_at(&spec, 0.1, n).unwrap().result;
            if k.valid {
                assert!(r.log_of_bound <= k.log_of_bound);
            }
        }
    }
}
