//! The per-point verification suite and grid scans.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::models::{g2_pde_residuals, G2Pde};
use super::{
    closedness_residual, fd_didrho, j_squared_residual, metric_positivity, random_element,
    real_tangent_basis, seeded_rng, triple_check, FdSettings, PointGeometry,
};
use crate::error::{Error, Result};
use crate::orbits::{Orbit, Shape};
use crate::potentials::Potential;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Tolerance for algebraic identities (`J^2`, triple identities).
    pub tol_id: f64,
    /// Tolerance for the finite-difference `d I d rho` comparison.
    pub tol_fd: f64,
    /// Tolerance for closedness; defaults to `10 * tol_fd`.
    pub tol_closed: f64,
    /// Tolerance for Gram-matrix asymmetry.
    pub tol_sym: f64,
    /// Step of the central differences.
    pub fd_step: f64,
    /// Random `(A, B)` pairs and `(A, B, C)` triples per point.
    pub fd_samples: usize,
    pub seed: u64,
    /// Move each representative by a random compact-group element first.
    pub generic: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tol_id: 1e-9,
            tol_fd: 1e-6,
            tol_closed: 1e-5,
            tol_sym: 1e-10,
            fd_step: 1e-4,
            fd_samples: 6,
            seed: 0,
            generic: true,
        }
    }
}

/// Rectangular `(s, t)` grid, row-major in `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s: (f64, f64, usize),
    pub t: (f64, f64, usize),
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            s: (0.3, 2.0, 5),
            t: (0.3, 2.0, 5),
        }
    }
}

/// Points closer than this to `s = t` are skipped.
pub const DIAGONAL_EXCLUSION: f64 = 1e-3;

fn axis(r: (f64, f64, usize)) -> Vec<f64> {
    let (lo, hi, n) = r;
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl GridSpec {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let ts = axis(self.t);
        axis(self.s)
            .into_iter()
            .flat_map(|s| ts.iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| (s - t).abs() >= DIAGONAL_EXCLUSION && s * t > 0.0)
            .collect()
    }
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Parse(format!("grid axis '{s}' is not min:max:steps"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && n >= 1 && hi.is_finite()) {
        return Err(Error::Parameter(format!(
            "grid axis '{s}' needs 0 < min <= max and at least one step"
        )));
    }
    Ok((lo, hi, n))
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `smin:smax:steps` (both axes) or `smin:smax:steps x tmin:tmax:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(['x', 'X', '×']) {
            Some((a, b)) => Ok(Self {
                s: parse_axis(a)?,
                t: parse_axis(b)?,
            }),
            None => {
                let a = parse_axis(s)?;
                Ok(Self { s: a, t: a })
            }
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, n) = self.s;
        let (c, d, m) = self.t;
        write!(f, "{a}:{b}:{n}x{c}:{d}:{m}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: f64,
    pub tolerance: f64,
    /// `"<="` (value at most the tolerance) or `">"`.
    pub rule: String,
    pub pass: bool,
}

impl Verdict {
    fn at_most(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            rule: "<=".into(),
            pass: value <= tolerance,
        }
    }

    fn above(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            rule: ">".into(),
            pass: value > tolerance,
        }
    }
}

/// Residuals at one point. Residuals are relative (see each check), and a
/// verdict is recorded for every check that ran.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub orbit: String,
    pub potential: String,
    pub index: usize,
    pub s: f64,
    pub t: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub tangent_dim: usize,
    pub j_squared_residual: f64,
    pub min_metric_eigenvalue: f64,
    pub metric_asymmetry: f64,
    pub anticommutator_residual: f64,
    #[serde(rename = "omegaJ_vs_ReOmega_c")]
    pub omega_j_vs_re_omega_c: f64,
    #[serde(rename = "omegaK_vs_ImOmega_c")]
    pub omega_k_vs_im_omega_c: f64,
    #[serde(rename = "omegaJ_signed")]
    pub omega_j_signed: f64,
    #[serde(rename = "omegaK_signed")]
    pub omega_k_signed: f64,
    #[serde(rename = "metric_I_invariance")]
    pub metric_i_invariance: f64,
    #[serde(rename = "metric_J_invariance")]
    pub metric_j_invariance: f64,
    #[serde(rename = "dIdrho_agreement")]
    pub didrho_agreement: f64,
    #[serde(rename = "dIdrho_error_estimate")]
    pub didrho_error_estimate: f64,
    pub closedness_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g2_pde: Option<G2Pde>,
    pub verdicts: BTreeMap<String, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub passed: bool,
}

impl GeometryReport {
    /// `(name, value)` for every residual, in a fixed order.
    pub fn residuals(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("j_squared_residual", self.j_squared_residual),
            ("min_metric_eigenvalue", self.min_metric_eigenvalue),
            ("metric_asymmetry", self.metric_asymmetry),
            ("anticommutator_residual", self.anticommutator_residual),
            ("omegaJ_vs_ReOmega_c", self.omega_j_vs_re_omega_c),
            ("omegaK_vs_ImOmega_c", self.omega_k_vs_im_omega_c),
            ("metric_I_invariance", self.metric_i_invariance),
            ("metric_J_invariance", self.metric_j_invariance),
            ("dIdrho_agreement", self.didrho_agreement),
            ("closedness_residual", self.closedness_residual),
        ];
        if let Some(p) = &self.g2_pde {
            v.push(("g2_pde_max", p.max_residual()));
        }
        v
    }
}

fn point_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs every check at the representative `(s, t)` of `orbit`.
pub fn run_point(
    orbit: &Orbit,
    pot: &Potential,
    s: f64,
    t: f64,
    cfg: &SuiteConfig,
    index: usize,
) -> GeometryReport {
    let mut report = GeometryReport {
        orbit: orbit.id().to_string(),
        potential: pot.to_string(),
        index,
        s,
        t,
        ..Default::default()
    };
    if let Err(e) = fill_point(orbit, pot, s, t, cfg, index, &mut report) {
        report.error = Some(e.to_string());
        report.passed = false;
    }
    report
}

fn fill_point(
    orbit: &Orbit,
    pot: &Potential,
    s: f64,
    t: f64,
    cfg: &SuiteConfig,
    index: usize,
    r: &mut GeometryReport,
) -> Result<()> {
    let alg = orbit.algebra();
    let seed = point_seed(cfg.seed, index);
    let mut point = orbit.representative(s, t)?;
    if cfg.generic {
        point = orbit.random_orbit_point(&point, seed)?;
    }
    r.eta1 = point.eta1;
    r.eta2 = point.eta2;
    r.tangent_dim = point.tangent.len();
    let geom = PointGeometry::new(alg, &point.x, pot)?;
    let basis = real_tangent_basis(&point.tangent);

    r.j_squared_residual = j_squared_residual(&geom, &basis);
    let pos = metric_positivity(&geom, &basis);
    r.min_metric_eigenvalue = pos.min_eigenvalue;
    r.metric_asymmetry = pos.asymmetry;
    let tri = triple_check(&geom, &basis)?;
    r.anticommutator_residual = tri.anticommutator;
    r.omega_j_vs_re_omega_c = tri.omega_j;
    r.omega_k_vs_im_omega_c = tri.omega_k;
    r.omega_j_signed = tri.omega_j_signed;
    r.omega_k_signed = tri.omega_k_signed;
    r.metric_i_invariance = tri.metric_i;
    r.metric_j_invariance = tri.metric_j;

    let fd = FdSettings { step: cfg.fd_step };
    let mut rng = seeded_rng(seed);
    let dim = alg.dim();
    let mut worst_fd = 0.0_f64;
    let mut worst_est = 0.0_f64;
    let mut worst_closed = 0.0_f64;
    for _ in 0..cfg.fd_samples {
        let a = random_element(&mut rng, dim);
        let b = random_element(&mut rng, dim);
        let c = random_element(&mut rng, dim);
        let d = fd_didrho(alg, &point.x, pot, 1.0, &a, &b, fd)?;
        worst_fd = worst_fd.max(d.relative);
        worst_est = worst_est.max(d.error_estimate);
        worst_closed = worst_closed.max(closedness_residual(alg, &point.x, pot, 1.0, [&a, &b, &c], fd)?);
    }
    r.didrho_agreement = worst_fd;
    r.didrho_error_estimate = worst_est;
    r.closedness_residual = worst_closed;

    let v = &mut r.verdicts;
    v.insert("j_squared".into(), Verdict::at_most(r.j_squared_residual, cfg.tol_id));
    v.insert("metric_positive".into(), Verdict::above(r.min_metric_eigenvalue, 0.0));
    v.insert("metric_symmetric".into(), Verdict::at_most(r.metric_asymmetry, cfg.tol_sym));
    v.insert("anticommutator".into(), Verdict::at_most(r.anticommutator_residual, cfg.tol_id));
    v.insert("omegaJ_vs_ReOmega_c".into(), Verdict::at_most(r.omega_j_vs_re_omega_c, cfg.tol_id));
    v.insert("omegaK_vs_ImOmega_c".into(), Verdict::at_most(r.omega_k_vs_im_omega_c, cfg.tol_id));
    v.insert("metric_I_invariance".into(), Verdict::at_most(r.metric_i_invariance, cfg.tol_id));
    v.insert("metric_J_invariance".into(), Verdict::at_most(r.metric_j_invariance, cfg.tol_id));
    v.insert("dIdrho_agreement".into(), Verdict::at_most(r.didrho_agreement, cfg.tol_fd));
    v.insert("closedness".into(), Verdict::at_most(r.closedness_residual, cfg.tol_closed));
    if orbit.shape() == Shape::G2 && matches!(pot.kind, crate::potentials::PotentialKind::G2) {
        let p = g2_pde_residuals(s, t)?;
        v.insert("g2_pde".into(), Verdict::at_most(p.max_residual(), 1e-10));
        v.insert("g2_branch_i_rejected".into(), Verdict::above(p.branch_i_witness, 1.0 - 1e-12));
        r.g2_pde = Some(p);
    }
    r.passed = r.verdicts.values().all(|v| v.pass);
    Ok(())
}

/// Runs the suite on every grid point in parallel and hands the reports to
/// `emit` in grid order as soon as each prefix is complete.
pub fn run_grid<F>(orbit: &Orbit, pot: &Potential, points: &[(f64, f64)], cfg: &SuiteConfig, mut emit: F)
where
    F: FnMut(GeometryReport),
{
    let (tx, rx) = mpsc::channel::<GeometryReport>();
    std::thread::scope(|scope| {
        scope.spawn(move || {
            points
                .par_iter()
                .enumerate()
                .for_each_with(tx, |tx, (i, &(s, t))| {
                    let _ = tx.send(run_point(orbit, pot, s, t, cfg, i));
                });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for report in rx {
            pending.insert(report.index, report);
            while let Some(r) = pending.remove(&next) {
                emit(r);
                next += 1;
            }
        }
    });
}

/// Collects [`run_grid`] into a vector.
pub fn run_grid_collect(
    orbit: &Orbit,
    pot: &Potential,
    points: &[(f64, f64)],
    cfg: &SuiteConfig,
) -> Vec<GeometryReport> {
    let mut out = Vec::with_capacity(points.len());
    run_grid(orbit, pot, points, cfg, |r| out.push(r));
    out
}
