//! Command-line front end for the `hkpot` binary.
//!
//! Exit codes: 0 when every check passes, 1 on any violation, 2 on usage
//! errors. `--expect-fail` swaps the meaning of 0 and 1 for `verify`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{checks, AlgebraSpec, Family, LieAlgebra};
use crate::error::{Error, Result};
use crate::geometry::models::{g2_pde_residuals, sl2_metric_discrepancy, so4_cross_block, Sl2Model};
use crate::geometry::suite::{run_grid, GeometryReport, GridSpec, SuiteConfig};
use crate::orbits::{cohomogeneity, jordan_type, Orbit, OrbitId, Shape};
use crate::potentials::{sl2_jet1, theorem_potential, PotentialSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "hkpot", version, about = "Nilpotent orbits and hyperKähler potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the geometry suite over an (s, t) grid.
    Verify(VerifyArgs),
    /// Measure k^2 for each classical family.
    K2(K2Args),
    /// Exact algebra invariants and the sl(2) / so(4) model checks.
    Selftest(SelftestArgs),
    /// Invariants, Jordan type and cohomogeneity of a representative.
    OrbitInfo(OrbitInfoArgs),
}

#[derive(Args, Debug, Default)]
struct VerifyArgs {
    /// Orbit, e.g. A:5:2,2,1, D:8:2,2,2,2:+ or G2.
    #[arg(long, conflicts_with = "orbit_pos")]
    orbit: Option<String>,
    /// theorem, g2, sl2:c=<c> or family:c=<c>.
    #[arg(long, conflicts_with = "potential_pos")]
    potential: Option<String>,
    #[arg(value_name = "ORBIT")]
    orbit_pos: Option<String>,
    #[arg(value_name = "POTENTIAL")]
    potential_pos: Option<String>,
    /// Family parameter when the potential string leaves it open.
    #[arg(long)]
    c: Option<f64>,
    /// smin:smax:steps, or smin:smax:steps x tmin:tmax:steps.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    tol_id: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random (A, B) samples per point for the finite-difference checks.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Exit 0 iff some check fails.
    #[arg(long)]
    expect_fail: bool,
    #[arg(long)]
    no_timestamp: bool,
    /// Plain key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct K2Args {
    #[arg(long, default_value_t = 8)]
    max_a: usize,
    #[arg(long, default_value_t = 10)]
    max_bd: usize,
    #[arg(long, default_value_t = 4)]
    max_c: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Corrupts one structure constant before checking.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct OrbitInfoArgs {
    #[arg(long)]
    orbit: String,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long, default_value_t = 0.6)]
    t: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::K2(a) => cmd_k2(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
        Command::OrbitInfo(a) => cmd_orbit_info(a, out),
    };
    match result {
        Ok(code) => code,
        // the reader went away; nothing left to report to
        Err(Error::Output(m)) if m == "broken pipe" => EXIT_FAIL,
        Err(e @ Error::Output(_)) => {
            let _ = writeln!(err, "hkpot: {e}");
            EXIT_FAIL
        }
        Err(e) => {
            let _ = writeln!(err, "hkpot: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(args, &mut out, &mut err)
}

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Error::Output("broken pipe".into())
    } else {
        Error::Output(e.to_string())
    }
}

/// Reads a `key=value` file; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
        let key = k.trim().replace('-', "_");
        const KNOWN: [&str; 11] = [
            "orbit",
            "potential",
            "c",
            "grid",
            "tol_id",
            "tol_fd",
            "seed",
            "samples",
            "format",
            "expect_fail",
            "no_timestamp",
        ];
        if !KNOWN.contains(&key.as_str()) {
            return Err(Error::Parse(format!("config line {}: unknown key '{key}'", n + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

/// Fully resolved settings of a `verify` run.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub orbit: String,
    pub potential: String,
    pub c: Option<f64>,
    pub grid: String,
    pub tol_id: f64,
    pub tol_fd: f64,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
    pub expect_fail: bool,
    pub no_timestamp: bool,
}

fn resolve(a: VerifyArgs) -> Result<RunConfig> {
    let file = match &a.config {
        Some(p) => parse_config(
            &std::fs::read_to_string(p)
                .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", p.display())))?,
        )?,
        None => BTreeMap::new(),
    };
    fn from_file<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
        file.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::Parse(format!("config value for {key}: '{v}'")))
            })
            .transpose()
    }
    let flag_bool = |flag: bool, key: &str| -> Result<bool> {
        Ok(flag || from_file::<bool>(&file, key)?.unwrap_or(false))
    };
    let defaults = SuiteConfig::default();
    let format = match a.format {
        Some(f) => f,
        None => match file.get("format") {
            Some(v) => Format::from_str(v, true).map_err(|e| Error::Parse(e.to_string()))?,
            None => Format::Text,
        },
    };
    Ok(RunConfig {
        orbit: a
            .orbit
            .or(a.orbit_pos)
            .or_else(|| file.get("orbit").cloned())
            .ok_or_else(|| Error::Parameter("--orbit is required".into()))?,
        potential: a
            .potential
            .or(a.potential_pos)
            .or_else(|| file.get("potential").cloned())
            .ok_or_else(|| Error::Parameter("--potential is required".into()))?,
        c: a.c.or(from_file(&file, "c")?),
        grid: a
            .grid
            .or_else(|| file.get("grid").cloned())
            .unwrap_or_else(|| GridSpec::default().to_string()),
        tol_id: a.tol_id.or(from_file(&file, "tol_id")?).unwrap_or(defaults.tol_id),
        tol_fd: a.tol_fd.or(from_file(&file, "tol_fd")?).unwrap_or(defaults.tol_fd),
        seed: a.seed.or(from_file(&file, "seed")?).unwrap_or(defaults.seed),
        samples: a.samples.or(from_file(&file, "samples")?).unwrap_or(defaults.fd_samples),
        format,
        expect_fail: flag_bool(a.expect_fail, "expect_fail")?,
        no_timestamp: flag_bool(a.no_timestamp, "no_timestamp")?,
    })
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = resolve(a)?;
    let id: OrbitId = cfg.orbit.parse()?;
    let spec: PotentialSpec = cfg.potential.parse()?;
    let grid: GridSpec = cfg.grid.parse()?;
    for tol in [cfg.tol_id, cfg.tol_fd] {
        if !(tol > 0.0) {
            return Err(Error::Parameter(format!("tolerances must be positive, got {tol}")));
        }
    }
    let orbit = Orbit::new(id)?;
    let k = match orbit.shape() {
        Shape::G2 => None,
        _ => Some(orbit.measure_k2()?.sqrt()),
    };
    if k.is_none() && spec == PotentialSpec::Theorem {
        return Err(Error::Unsupported(
            "the theorem potential has no k on the G2 orbit; use --potential g2".into(),
        ));
    }
    let pot = spec.instantiate(k, cfg.c)?;
    let suite = SuiteConfig {
        tol_id: cfg.tol_id,
        tol_fd: cfg.tol_fd,
        tol_closed: 10.0 * cfg.tol_fd,
        seed: cfg.seed,
        fd_samples: cfg.samples,
        ..SuiteConfig::default()
    };
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::Parameter("grid has no admissible points".into()));
    }

    let header = json!({
        "command": "verify",
        "orbit": orbit.id().to_string(),
        "potential": pot.to_string(),
        "config": cfg,
        "k2": k.map(|k| k * k),
    });
    match cfg.format {
        Format::Text => {
            writeln!(out, "verify {} with {} on {} points", orbit.id(), pot, points.len()).map_err(io)?
        }
        Format::Json => {
            let mut head = header.as_object().cloned().unwrap_or_default();
            if !cfg.no_timestamp {
                head.insert("timestamp".into(), json!(timestamp()));
            }
            let text = serde_json::to_string(&head).map_err(|e| Error::Parameter(e.to_string()))?;
            // open the object, leave room for the streamed points
            write!(out, "{},\"points\":[", &text[..text.len() - 1]).map_err(io)?;
        }
        Format::Csv => writeln!(out, "s,t,eta1,eta2,residual_name,value").map_err(io)?,
    }

    let mut all_pass = true;
    let mut first = true;
    let mut write_err = None;
    run_grid(&orbit, &pot, &points, &suite, |r: GeometryReport| {
        all_pass &= r.passed;
        let res = emit_point(out, cfg.format, &r, first);
        first = false;
        if let Err(e) = res {
            write_err.get_or_insert(e);
        }
    });
    if let Some(e) = write_err {
        return Err(io(e));
    }
    let code = match (all_pass, cfg.expect_fail) {
        (true, false) | (false, true) => EXIT_OK,
        _ => EXIT_FAIL,
    };
    match cfg.format {
        Format::Text => writeln!(
            out,
            "{}{}",
            if all_pass { "all checks passed" } else { "some checks failed" },
            if cfg.expect_fail { " (failure expected)" } else { "" }
        )
        .map_err(io)?,
        Format::Json => writeln!(out, "],\"passed\":{all_pass},\"exit_code\":{code}}}").map_err(io)?,
        Format::Csv => {}
    }
    Ok(code)
}

fn emit_point(out: &mut dyn Write, format: Format, r: &GeometryReport, first: bool) -> std::io::Result<()> {
    match format {
        Format::Text => {
            if let Some(e) = &r.error {
                return writeln!(out, "s={:.4} t={:.4} ERROR {e}", r.s, r.t);
            }
            let failed: Vec<&str> = r
                .verdicts
                .iter()
                .filter(|(_, v)| !v.pass)
                .map(|(k, _)| k.as_str())
                .collect();
            writeln!(
                out,
                "s={:.4} t={:.4} {} J2={:.2e} mineig={:.3e} triple={:.2e} dIdrho={:.2e} closed={:.2e}{}",
                r.s,
                r.t,
                if r.passed { "PASS" } else { "FAIL" },
                r.j_squared_residual,
                r.min_metric_eigenvalue,
                r.omega_j_vs_re_omega_c.max(r.omega_k_vs_im_omega_c),
                r.didrho_agreement,
                r.closedness_residual,
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" failed: {}", failed.join(","))
                }
            )
        }
        Format::Json => {
            let text = serde_json::to_string(r).map_err(std::io::Error::other)?;
            write!(out, "{}\n{text}", if first { "" } else { "," })?;
            out.flush()
        }
        Format::Csv => {
            for (name, value) in r.residuals() {
                writeln!(out, "{},{},{},{},{name},{value:e}", r.s, r.t, r.eta1, r.eta2)?;
            }
            if let Some(e) = &r.error {
                writeln!(out, "{},{},{},{},error,\"{}\"", r.s, r.t, r.eta1, r.eta2, e.replace('"', "'"))?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct K2Row {
    pub family: String,
    pub m: usize,
    pub orbit: String,
    pub measured: f64,
    pub expected: f64,
    pub matches: bool,
}

/// `k^2` from the embedding of `so(4)`, beside its closed form:
/// `m/2` for `sl(m)`, `(m-2)/2` for `so(m)`, `(n+1)/2` for `sp(2n)`.
pub fn k2_table(max_a: usize, max_bd: usize, max_c: usize) -> Result<Vec<K2Row>> {
    let mut specs = Vec::new();
    specs.extend((4..=max_a).map(|m| (Family::A, m)));
    specs.extend((7..=max_bd).map(|m| (if m % 2 == 1 { Family::B } else { Family::D }, m)));
    specs.extend((2..=max_c).map(|n| (Family::C, n)));
    let mut rows = Vec::new();
    for (family, m) in specs {
        let spec = AlgebraSpec::new(family, m)?;
        let alg = Arc::new(LieAlgebra::build(spec)?);
        let expected = match family {
            Family::A => m as f64 / 2.0,
            Family::B | Family::D => (m as f64 - 2.0) / 2.0,
            _ => (m as f64 + 1.0) / 2.0,
        };
        for id in OrbitId::all_for(spec) {
            let orbit = Orbit::with_algebra(id.clone(), alg.clone())?;
            let measured = orbit.measure_k2()?;
            rows.push(K2Row {
                family: format!("{family:?}"),
                m,
                orbit: id.to_string(),
                measured,
                expected,
                matches: (measured - expected).abs() <= 1e-10 * expected,
            });
        }
    }
    Ok(rows)
}

fn cmd_k2(a: K2Args, out: &mut dyn Write) -> Result<i32> {
    let rows = k2_table(a.max_a, a.max_bd, a.max_c)?;
    let ok = rows.iter().all(|r| r.matches);
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"command": "k2", "rows": rows, "passed": ok})
        )
        .map_err(io)?,
        Format::Csv => {
            writeln!(out, "family,m,orbit,measured,expected,matches").map_err(io)?;
            for r in &rows {
                writeln!(out, "{},{},{},{},{},{}", r.family, r.m, r.orbit, r.measured, r.expected, r.matches)
                    .map_err(io)?;
            }
        }
        Format::Text => {
            writeln!(out, "{:<18} {:>10} {:>10}", "orbit", "measured", "closed").map_err(io)?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<18} {:>10.6} {:>10.6}{}",
                    r.orbit,
                    r.measured,
                    r.expected,
                    if r.matches { "" } else { "  MISMATCH" }
                )
                .map_err(io)?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn line(name: &str, pass: bool, detail: String) -> SelftestLine {
    SelftestLine {
        name: name.into(),
        pass,
        detail,
    }
}

/// The self-test: exact algebra invariants, orbit identities, and the
/// `sl(2)` / `so(4)` models. `inject_fault` corrupts one structure constant
/// of `sl(3)` first (negative control).
pub fn selftest(seed: u64, inject_fault: bool) -> Result<Vec<SelftestLine>> {
    let mut lines = Vec::new();
    let specs = ["A:2", "A:3", "A:4", "B:5", "C:2", "C:3", "D:6", "D:8", "G2"];
    for s in specs {
        let mut alg = LieAlgebra::build(s.parse()?)?;
        if inject_fault && s == "A:3" {
            alg.inject_fault();
        }
        let r = checks::verify(&alg);
        lines.push(line(
            &format!("algebra {s}"),
            r.passed(),
            format!(
                "jacobi={} invariance={} trace={} sigma={}/{} min_herm={:.3e}",
                r.jacobi_violations,
                r.killing_invariance_violations,
                r.killing_trace_violations,
                r.sigma_involution_violations,
                r.sigma_automorphism_violations,
                r.hermitian_min_eigenvalue
            ),
        ));
    }

    for id in ["A:5:2,2,1", "B:7:3", "C:3:2,2", "D:8:2,2,2,2:-", "G2"] {
        let orbit = Orbit::new(id.parse()?)?;
        let (s, t) = (1.0, 0.6);
        let p = orbit.representative(s, t)?;
        let (e1, e2) = match orbit.shape() {
            Shape::G2 => (
                8.0 * (s * s + 3.0 * t * t),
                16.0 * (s.powi(4) + 6.0 * s * s * t * t + 3.0 * t.powi(4)),
            ),
            _ => {
                let k2 = orbit.measure_k2()?;
                (4.0 * k2 * (s * s + t * t), 8.0 * k2 * (s.powi(4) + t.powi(4)))
            }
        };
        let err = ((p.eta1 - e1) / e1).abs().max(((p.eta2 - e2) / e2).abs());
        let q = orbit.random_orbit_point(&p, seed)?;
        let drift = ((q.eta1 - p.eta1) / p.eta1).abs().max(((q.eta2 - p.eta2) / p.eta2).abs());
        let coh = cohomogeneity(orbit.algebra(), &p.x)?;
        let coh0 = cohomogeneity(orbit.algebra(), &orbit.representative(1.0, 0.0)?.x)?;
        lines.push(line(
            &format!("orbit {id}"),
            err <= 1e-10 && drift <= 1e-9 && coh == 2 && coh0 == 1,
            format!("eta_err={err:.2e} flow_drift={drift:.2e} cohomogeneity={coh}/{coh0}"),
        ));
    }

    let mut ode = 0.0_f64;
    for k in [0.5, 1.0, 2.0] {
        for c in [0.0, 0.3, 1.0] {
            for i in 0..=20 {
                let eta = 0.1 * 1000f64.powf(i as f64 / 20.0);
                let (_, d1, d2) = sl2_jet1(k, c, eta)?;
                ode = ode.max((2.0 * eta * d1 * (d1 + eta * d2) - k * k).abs() / (k * k));
            }
        }
    }
    lines.push(line("sl2 ode", ode <= 1e-12, format!("max residual {ode:.2e}")));

    let mut metric = 0.0_f64;
    let mut moment = 0.0_f64;
    for (k, c) in [(1.0, 0.0), (1.3, 0.7)] {
        let model = Sl2Model::new(k, c)?;
        for t in [0.4, 1.0, 2.5] {
            metric = metric.max(sl2_metric_discrepancy(&model, t)?);
            let m = model.moment_vector_check(t)?;
            moment = moment.max((m.lambda - m.expected).abs()).max(m.residual);
        }
    }
    lines.push(line("sl2 metric", metric <= 1e-10, format!("max discrepancy {metric:.2e}")));
    lines.push(line("sl2 moment", moment <= 1e-10, format!("max deviation {moment:.2e}")));

    let orbit = Orbit::new("D:8:2,2,2,2:+".parse()?)?;
    let pot = theorem_potential(orbit.measure_k2()?.sqrt())?;
    let p = orbit.representative(1.0, 0.6)?;
    let cross = so4_cross_block(orbit.algebra(), &p, &pot)?;
    lines.push(line("so4 blocks", cross <= 1e-9, format!("cross-block norm {cross:.2e}")));

    let g = g2_pde_residuals(1.0, 1.0)?;
    lines.push(line(
        "g2 equations",
        g.max_residual() <= 1e-10 && g.branch_i_witness >= 1.0,
        format!("max residual {:.2e}", g.max_residual()),
    ));

    let jt = jordan_type(orbit.algebra(), &p.x)?;
    lines.push(line("jordan type", jt == orbit.id().partition, format!("{jt:?}")));
    Ok(lines)
}

fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let lines = selftest(a.seed, a.inject_fault)?;
    let ok = lines.iter().all(|l| l.pass);
    match a.format {
        Format::Json => writeln!(out, "{}", json!({"command": "selftest", "checks": lines, "passed": ok}))
            .map_err(io)?,
        Format::Csv => {
            writeln!(out, "name,pass,detail").map_err(io)?;
            for l in &lines {
                writeln!(out, "{},{},\"{}\"", l.name, l.pass, l.detail).map_err(io)?;
            }
        }
        Format::Text => {
            for l in &lines {
                writeln!(out, "{} {:<16} {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail)
                    .map_err(io)?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_orbit_info(a: OrbitInfoArgs, out: &mut dyn Write) -> Result<i32> {
    let orbit = Orbit::new(a.orbit.parse()?)?;
    let p = orbit.representative(a.s, a.t)?;
    let alg = orbit.algebra();
    let jt = if alg.spec().is_classical() {
        Some(jordan_type(alg, &p.x)?)
    } else {
        None
    };
    let coh = cohomogeneity(alg, &p.x)?;
    let k2 = orbit.measure_k2().ok();
    let info = json!({
        "command": "orbit-info",
        "orbit": orbit.id().to_string(),
        "algebra_dim": alg.dim(),
        "s": a.s,
        "t": a.t,
        "eta1": p.eta1,
        "eta2": p.eta2,
        "jordan_type": jt,
        "orbit_dim": p.tangent.len(),
        "cohomogeneity": coh,
        "k2": k2,
    });
    match a.format {
        Format::Json => writeln!(out, "{info}").map_err(io)?,
        Format::Csv => {
            writeln!(out, "key,value").map_err(io)?;
            for (k, v) in info.as_object().unwrap() {
                writeln!(out, "{k},\"{}\"", v.to_string().replace('"', "'")).map_err(io)?;
            }
        }
        Format::Text => {
            writeln!(out, "orbit          {}", orbit.id()).map_err(io)?;
            writeln!(out, "algebra dim    {}", alg.dim()).map_err(io)?;
            writeln!(out, "(s, t)         ({}, {})", a.s, a.t).map_err(io)?;
            writeln!(out, "eta1, eta2     {:.12}, {:.12}", p.eta1, p.eta2).map_err(io)?;
            if let Some(jt) = jt {
                writeln!(out, "jordan type    {jt:?}").map_err(io)?;
            }
            writeln!(out, "orbit dim (C)  {}", p.tangent.len()).map_err(io)?;
            writeln!(out, "cohomogeneity  {coh}").map_err(io)?;
            if let Some(k2) = k2 {
                writeln!(out, "k^2            {k2}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let m = parse_config("orbit = A:4:2,2\n# note\npotential=theorem # inline\ntol-id=1e-8\n").unwrap();
        assert_eq!(m["orbit"], "A:4:2,2");
        assert_eq!(m["potential"], "theorem");
        assert_eq!(m["tol_id"], "1e-8");
        assert!(parse_config("nonsense").is_err());
        assert!(parse_config("colour=red").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["hkpot", "verify", "--orbit", "Q:1", "--potential", "theorem"], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
        let code = run(["hkpot", "frobnicate"], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn k2_rows_match() {
        let rows = k2_table(5, 8, 2).unwrap();
        assert!(rows.iter().all(|r| r.matches), "{rows:?}");
    }
}
