//! Potentials as 2-jets in the invariants `(eta1, eta2)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Value and partial derivatives of `rho` with respect to `eta1`, `eta2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PotentialJet {
    pub rho: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho11: f64,
    pub rho12: f64,
    pub rho22: f64,
}

impl PotentialJet {
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            rho: c * self.rho,
            rho1: c * self.rho1,
            rho2: c * self.rho2,
            rho11: c * self.rho11,
            rho12: c * self.rho12,
            rho22: c * self.rho22,
        }
    }

    fn components(&self) -> [f64; 6] {
        [self.rho, self.rho1, self.rho2, self.rho11, self.rho12, self.rho22]
    }

    /// Largest componentwise difference.
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// `2k sqrt(eta1 + 2 sqrt(eta1^2 / 2 - k^2 eta2))`.
    Theorem { k: f64 },
    /// `sqrt(8) sqrt(eta1 + sqrt(6) sqrt(eta1^2 - 4 eta2))`.
    G2,
    /// One invariant: `rho' = sqrt(k^2 eta + c) / eta` with `eta = eta1`.
    Sl2Family { k: f64, c: f64 },
    /// `rho = F(s) + F(t)` with `F'(s) = sqrt(16 k^4 + c / s^2)`.
    ProductFamily { k: f64, c: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub kind: PotentialKind,
    /// `+1` or `-1`; multiplies the whole jet.
    pub sign: f64,
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("k must be positive, got {k}")))
    }
}

fn check_c(c: f64) -> Result<()> {
    if c >= 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("c must be non-negative, got {c}")))
    }
}

pub fn theorem_potential(k: f64) -> Result<Potential> {
    check_k(k)?;
    Ok(Potential::new(PotentialKind::Theorem { k }))
}

pub fn g2_potential() -> Potential {
    Potential::new(PotentialKind::G2)
}

pub fn sl2_family_potential(k: f64, c: f64) -> Result<Potential> {
    check_k(k)?;
    check_c(c)?;
    Ok(Potential::new(PotentialKind::Sl2Family { k, c }))
}

pub fn product_family_potential(k: f64, c: f64) -> Result<Potential> {
    check_k(k)?;
    check_c(c)?;
    Ok(Potential::new(PotentialKind::ProductFamily { k, c }))
}

/// `p sqrt(eta1 + a sqrt(b eta1^2 - c eta2))`.
struct NestedRoot {
    p: f64,
    a: f64,
    b: f64,
    c: f64,
}

impl NestedRoot {
    fn inner(&self, eta1: f64, eta2: f64) -> Result<f64> {
        let u = self.b * eta1 * eta1 - self.c * eta2;
        let slack = 1e-14 * self.b * eta1 * eta1;
        if u < -slack || !(eta1 > 0.0) {
            return Err(Error::Domain(format!(
                "b eta1^2 - c eta2 = {u:e} < 0 at ({eta1}, {eta2})"
            )));
        }
        Ok(u.max(0.0))
    }

    fn value(&self, eta1: f64, eta2: f64) -> Result<f64> {
        let u = self.inner(eta1, eta2)?;
        Ok(self.p * (eta1 + self.a * u.sqrt()).sqrt())
    }

    fn jet(&self, eta1: f64, eta2: f64) -> Result<PotentialJet> {
        let u = self.inner(eta1, eta2)?;
        if u == 0.0 {
            return Err(Error::Domain(format!(
                "derivatives blow up on the minimal-orbit boundary ({eta1}, {eta2})"
            )));
        }
        let r = u.sqrt();
        let du = [2.0 * self.b * eta1, -self.c];
        let ddu = [[2.0 * self.b, 0.0], [0.0, 0.0]];
        let dr = [du[0] / (2.0 * r), du[1] / (2.0 * r)];
        let ddr = |i: usize, j: usize| ddu[i][j] / (2.0 * r) - du[i] * du[j] / (4.0 * r * r * r);
        let w = eta1 + self.a * r;
        let dw = [1.0 + self.a * dr[0], self.a * dr[1]];
        let ddw = |i: usize, j: usize| self.a * ddr(i, j);
        let sw = w.sqrt();
        let d = |i: usize| self.p * dw[i] / (2.0 * sw);
        let dd = |i: usize, j: usize| {
            self.p * (ddw(i, j) / (2.0 * sw) - dw[i] * dw[j] / (4.0 * w * sw))
        };
        Ok(PotentialJet {
            rho: self.p * sw,
            rho1: d(0),
            rho2: d(1),
            rho11: dd(0, 0),
            rho12: dd(0, 1),
            rho22: dd(1, 1),
        })
    }
}

/// `(F, F', F'')` for `F(s) = Q + sqrt(c) ln(s / (sqrt(c) + Q))`,
/// `Q = sqrt(16 k^4 s^2 + c)`.
fn product_factor(k: f64, c: f64, s: f64) -> (f64, f64, f64) {
    let k4 = k.powi(4);
    let q = (16.0 * k4 * s * s + c).sqrt();
    let f = if c == 0.0 {
        q
    } else {
        q + c.sqrt() * (s / (c.sqrt() + q)).ln()
    };
    (f, q / s, -c / (q * s * s))
}

/// Potential of the `sl(2)` family as a function of one invariant:
/// `(rho, rho', rho'')`.
pub fn sl2_jet1(k: f64, c: f64, eta: f64) -> Result<(f64, f64, f64)> {
    if !(eta > 0.0) {
        return Err(Error::Domain(format!("eta must be positive, got {eta}")));
    }
    let r = (k * k * eta + c).sqrt();
    let rho = if c == 0.0 {
        2.0 * r
    } else {
        let sc = c.sqrt();
        2.0 * r + sc * ((r - sc) / (r + sc)).ln()
    };
    let d1 = r / eta;
    let d2 = -(k * k * eta + 2.0 * c) / (2.0 * r * eta * eta);
    Ok((rho, d1, d2))
}

/// `(s, t)` with `s >= t` from `eta1 = 4k^2 (s^2 + t^2)` and
/// `eta2 = 8k^2 (s^4 + t^4)`.
pub fn recover_st(k: f64, eta1: f64, eta2: f64) -> Result<(f64, f64)> {
    let k2 = k * k;
    let p = eta1 / (4.0 * k2);
    let q = eta2 / (8.0 * k2);
    let disc = 2.0 * q - p * p;
    if !(p > 0.0) || disc < -1e-12 * p * p || p * p < q * (1.0 - 1e-12) {
        return Err(Error::Domain(format!(
            "({eta1}, {eta2}) is not of the form (4k^2(s^2+t^2), 8k^2(s^4+t^4))"
        )));
    }
    let d = disc.max(0.0).sqrt();
    let s = ((p + d) / 2.0).sqrt();
    let t = ((p - d) / 2.0).max(0.0).sqrt();
    Ok((s, t))
}

/// Converts an `(s, t)` jet to an `(eta1, eta2)` jet by the chain rule.
/// `st` holds `(rho, rho_s, rho_t, rho_ss, rho_st, rho_tt)`.
pub fn st_jet_to_eta(k: f64, s: f64, t: f64, st: [f64; 6]) -> Result<PotentialJet> {
    if (s - t).abs() < 1e-3 || s.min(t) < 1e-3 {
        return Err(Error::NearSingular { s, t });
    }
    let k2 = k * k;
    let a = |x: f64| 8.0 * k2 * x;
    let b = |x: f64| 32.0 * k2 * x.powi(3);
    let a2 = 8.0 * k2;
    let b2 = |x: f64| 96.0 * k2 * x * x;
    let [rho, rs, rt, rss, rst, rtt] = st;
    let jac = DMatrix::from_row_slice(2, 2, &[a(s), b(s), a(t), b(t)]);
    let first = linalg::solve(jac, DVector::from_column_slice(&[rs, rt]))
        .ok_or(Error::NearSingular { s, t })?;
    let (r1, r2) = (first[0], first[1]);
    let hess = DMatrix::from_row_slice(
        3,
        3,
        &[
            a(s) * a(s),
            2.0 * a(s) * b(s),
            b(s) * b(s),
            a(s) * a(t),
            a(s) * b(t) + a(t) * b(s),
            b(s) * b(t),
            a(t) * a(t),
            2.0 * a(t) * b(t),
            b(t) * b(t),
        ],
    );
    let rhs = DVector::from_column_slice(&[
        rss - r1 * a2 - r2 * b2(s),
        rst,
        rtt - r1 * a2 - r2 * b2(t),
    ]);
    let second = linalg::solve(hess, rhs).ok_or(Error::NearSingular { s, t })?;
    Ok(PotentialJet {
        rho,
        rho1: r1,
        rho2: r2,
        rho11: second[0],
        rho12: second[1],
        rho22: second[2],
    })
}

impl Potential {
    pub fn new(kind: PotentialKind) -> Self {
        Self { kind, sign: 1.0 }
    }

    /// The same potential with the opposite sign.
    pub fn negated(&self) -> Self {
        Self {
            kind: self.kind,
            sign: -self.sign,
        }
    }

    fn nested(&self) -> Option<NestedRoot> {
        match self.kind {
            PotentialKind::Theorem { k } => Some(NestedRoot {
                p: 2.0 * k,
                a: 2.0,
                b: 0.5,
                c: k * k,
            }),
            PotentialKind::G2 => Some(NestedRoot {
                p: 8f64.sqrt(),
                a: 6f64.sqrt(),
                b: 1.0,
                c: 4.0,
            }),
            _ => None,
        }
    }

    /// Whether the potential depends on `eta1` only.
    pub fn is_single_invariant(&self) -> bool {
        matches!(self.kind, PotentialKind::Sl2Family { .. })
    }

    pub fn value(&self, eta1: f64, eta2: f64) -> Result<f64> {
        let v = match self.kind {
            PotentialKind::Theorem { .. } | PotentialKind::G2 => {
                self.nested().unwrap().value(eta1, eta2)?
            }
            PotentialKind::Sl2Family { k, c } => sl2_jet1(k, c, eta1)?.0,
            PotentialKind::ProductFamily { k, c } => {
                let (s, t) = recover_st(k, eta1, eta2)?;
                if t == 0.0 && c > 0.0 {
                    return Err(Error::Domain("family potential diverges at t = 0".into()));
                }
                product_factor(k, c, s).0 + if t > 0.0 { product_factor(k, c, t).0 } else { 0.0 }
            }
        };
        Ok(self.sign * v)
    }

    pub fn jet(&self, eta1: f64, eta2: f64) -> Result<PotentialJet> {
        let jet = match self.kind {
            PotentialKind::Theorem { .. } | PotentialKind::G2 => {
                self.nested().unwrap().jet(eta1, eta2)?
            }
            PotentialKind::Sl2Family { k, c } => {
                let (rho, d1, d2) = sl2_jet1(k, c, eta1)?;
                PotentialJet {
                    rho,
                    rho1: d1,
                    rho11: d2,
                    ..Default::default()
                }
            }
            PotentialKind::ProductFamily { k, c } => {
                let (s, t) = recover_st(k, eta1, eta2)?;
                self.product_jet_at(k, c, s, t)?
            }
        };
        Ok(jet.scaled(self.sign))
    }

    fn product_jet_at(&self, k: f64, c: f64, s: f64, t: f64) -> Result<PotentialJet> {
        let (fs, dfs, ddfs) = product_factor(k, c, s);
        let (ft, dft, ddft) = product_factor(k, c, t);
        st_jet_to_eta(k, s, t, [fs + ft, dfs, dft, ddfs, 0.0, ddft])
    }

    /// Product-family jet computed with the roles of `s` and `t` swapped.
    pub fn product_jet_swapped(&self, eta1: f64, eta2: f64) -> Result<PotentialJet> {
        match self.kind {
            PotentialKind::ProductFamily { k, c } => {
                let (s, t) = recover_st(k, eta1, eta2)?;
                Ok(self.product_jet_at(k, c, t, s)?.scaled(self.sign))
            }
            _ => Err(Error::Unsupported("only the product family uses (s, t)".into())),
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0.0 {
            write!(f, "-")?;
        }
        match self.kind {
            PotentialKind::Theorem { k } => write!(f, "theorem(k^2={})", k * k),
            PotentialKind::G2 => write!(f, "g2"),
            PotentialKind::Sl2Family { k, c } => write!(f, "sl2(k^2={}, c={c})", k * k),
            PotentialKind::ProductFamily { k, c } => write!(f, "family(k^2={}, c={c})", k * k),
        }
    }
}

/// A potential named on the command line, before `k` is known.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PotentialSpec {
    Theorem,
    G2,
    Sl2 { c: Option<f64> },
    Family { c: Option<f64> },
}

impl PotentialSpec {
    /// Fixes `k` (and `c` when the string left it open).
    pub fn instantiate(&self, k: Option<f64>, default_c: Option<f64>) -> Result<Potential> {
        let need_k = || k.ok_or_else(|| Error::Unsupported("this potential needs k^2".into()));
        let need_c = |c: Option<f64>| {
            c.or(default_c)
                .ok_or_else(|| Error::Parameter("family potentials need c".into()))
        };
        match *self {
            PotentialSpec::Theorem => theorem_potential(need_k()?),
            PotentialSpec::G2 => Ok(g2_potential()),
            PotentialSpec::Sl2 { c } => sl2_family_potential(need_k()?, need_c(c)?),
            PotentialSpec::Family { c } => product_family_potential(need_k()?, need_c(c)?),
        }
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let c = rest
            .map(|r| {
                let v = r
                    .trim()
                    .strip_prefix("c=")
                    .ok_or_else(|| Error::Parse(format!("expected c=<value> in '{s}'")))?;
                v.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad c in '{s}': {e}")))
            })
            .transpose()?;
        match (name.to_ascii_lowercase().as_str(), c) {
            ("theorem", None) => Ok(Self::Theorem),
            ("g2", None) => Ok(Self::G2),
            ("sl2", c) => Ok(Self::Sl2 { c }),
            ("family", c) => Ok(Self::Family { c }),
            _ => Err(Error::Parse(format!("unknown potential '{s}'"))),
        }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Theorem => write!(f, "theorem"),
            Self::G2 => write!(f, "g2"),
            Self::Sl2 { c: Some(c) } => write!(f, "sl2:c={c}"),
            Self::Sl2 { c: None } => write!(f, "sl2"),
            Self::Family { c: Some(c) } => write!(f, "family:c={c}"),
            Self::Family { c: None } => write!(f, "family"),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct JetFdReport {
    pub max_first_error: f64,
    pub max_second_error: f64,
}

impl JetFdReport {
    pub fn max_error(&self) -> f64 {
        self.max_first_error.max(self.max_second_error)
    }
}

/// Compares the analytic partials with central differences (one Richardson
/// step). Errors are measured in logarithmic coordinates relative to `rho`:
/// `|d_i rho - fd| eta_i / |rho|` and `|d_ij rho - fd| eta_i eta_j / |rho|`.
pub fn jet_fd_validate(p: &Potential, eta1: f64, eta2: f64) -> Result<JetFdReport> {
    let jet = p.jet(eta1, eta2)?;
    let eta = [eta1, eta2];
    let scale = jet.rho.abs().max(1e-300);
    let shift = |i: usize, h: f64| {
        let mut e = eta;
        e[i] += h;
        e
    };
    let richardson = |f: &dyn Fn(f64) -> Result<f64>, h: f64| -> Result<f64> {
        let d = |h: f64| -> Result<f64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
        Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
    };
    let first = [jet.rho1, jet.rho2];
    let second = [[jet.rho11, jet.rho12], [jet.rho12, jet.rho22]];
    let mut e1 = 0.0_f64;
    let mut e2 = 0.0_f64;
    for i in 0..2 {
        let h = 1e-4 * eta[i];
        let fd = richardson(
            &|h| {
                let e = shift(i, h);
                p.value(e[0], e[1])
            },
            h,
        )?;
        e1 = e1.max((fd - first[i]).abs() * eta[i] / scale);
        for j in 0..2 {
            let fd = richardson(
                &|h| {
                    let e = shift(j, h);
                    let jt = p.jet(e[0], e[1])?;
                    Ok([jt.rho1, jt.rho2][i])
                },
                h_for(eta[j]),
            )?;
            e2 = e2.max((fd - second[i][j]).abs() * eta[i] * eta[j] / scale);
        }
    }
    Ok(JetFdReport {
        max_first_error: e1,
        max_second_error: e2,
    })
}

fn h_for(eta: f64) -> f64 {
    1e-4 * eta
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn theorem_values() {
        let k = 2.5f64.sqrt();
        let p = theorem_potential(k).unwrap();
        assert_relative_eq!(p.value(20.0, 40.0).unwrap(), 20.0, max_relative = 1e-14);
        // boundary of the minimal orbit
        let eta1 = 7.0;
        assert_relative_eq!(
            p.value(eta1, eta1 * eta1 / (2.0 * k * k)).unwrap(),
            2.0 * k * eta1.sqrt(),
            max_relative = 1e-14
        );
        let l: f64 = 1.7;
        assert_relative_eq!(
            p.value(l * l * 20.0, l.powi(4) * 40.0).unwrap(),
            l * 20.0,
            max_relative = 1e-13
        );
        assert!(matches!(p.value(1.0, 100.0), Err(Error::Domain(_))));
    }

    #[test]
    fn g2_values() {
        let p = g2_potential();
        assert_relative_eq!(p.value(24.0, 48.0).unwrap(), 24.0, max_relative = 1e-14);
        assert_relative_eq!(
            p.value(32.0, 160.0).unwrap(),
            8.0 * 10f64.sqrt(),
            max_relative = 1e-14
        );
        assert!(p.value(80.0, 1024.0).is_ok());
        assert!(matches!(p.value(10.0, 100.0), Err(Error::Domain(_))));
    }

    #[test]
    fn sl2_family_ode_and_t_derivative() {
        for k in [0.5, 1.0, 2.0] {
            for c in [0.0, 0.3, 1.0] {
                for i in 0..=30 {
                    let eta = 0.1 * 1000f64.powf(i as f64 / 30.0);
                    let (_, d1, d2) = sl2_jet1(k, c, eta).unwrap();
                    let res = 2.0 * eta * d1 * (d1 + eta * d2) - k * k;
                    assert!(res.abs() <= 1e-12 * k * k.max(1.0), "{k} {c} {eta} {res}");
                }
            }
        }
        let (_, d1, _) = sl2_jet1(1.0, 0.0, 4.0).unwrap();
        assert_eq!(d1, 0.5);
        // d rho / dt at X = t e, with eta = 4 k^2 t^2
        let (k, c, t) = (1.3, 0.7, 0.9);
        let (_, d1, _) = sl2_jet1(k, c, 4.0 * k * k * t * t).unwrap();
        let drdt = d1 * 8.0 * k * k * t;
        assert_relative_eq!(
            drdt,
            (16.0 * k.powi(4) + 4.0 * c / (t * t)).sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn family_at_zero_is_theorem() {
        let k = 1.5f64.sqrt();
        let fam = product_family_potential(k, 0.0).unwrap();
        let thm = theorem_potential(k).unwrap();
        let (s, t) = (1.3, 0.4);
        let e1 = 4.0 * k * k * (s * s + t * t);
        let e2 = 8.0 * k * k * (s.powi(4) + t.powi(4));
        let a = fam.jet(e1, e2).unwrap();
        let b = thm.jet(e1, e2).unwrap();
        assert!(a.max_difference(&b) < 1e-10, "{a:?} {b:?}");
        let swapped = fam.product_jet_swapped(e1, e2).unwrap();
        assert!(swapped.max_difference(&a) < 1e-12);
    }

    #[test]
    fn family_near_diagonal_is_rejected() {
        let p = product_family_potential(1.0, 1.0).unwrap();
        let e1 = 4.0 * 2.0;
        let e2 = 8.0 * 2.0;
        assert!(matches!(p.jet(e1, e2), Err(Error::NearSingular { .. })));
    }

    #[test]
    fn fd_validation() {
        let r = jet_fd_validate(&theorem_potential(1.0).unwrap(), 10.0, 40.0).unwrap();
        assert!(r.max_error() <= 1e-6, "{r:?}");
        let r = jet_fd_validate(&g2_potential(), 24.0, 48.0).unwrap();
        assert!(r.max_error() <= 1e-6, "{r:?}");
        let k = 1.2;
        let (s, t) = (1.1, 0.5);
        let e1 = 4.0 * k * k * (s * s + t * t);
        let e2 = 8.0 * k * k * (s * s * s * s + t * t * t * t);
        for c in [0.3, 1.0] {
            let r = jet_fd_validate(&product_family_potential(k, c).unwrap(), e1, e2).unwrap();
            assert!(r.max_error() <= 1e-6, "{r:?}");
            let r = jet_fd_validate(&sl2_family_potential(k, c).unwrap(), e1, e2).unwrap();
            assert!(r.max_error() <= 1e-6, "{r:?}");
        }
    }

    #[test]
    fn negation_flips_everything() {
        let p = g2_potential();
        let a = p.jet(30.0, 100.0).unwrap();
        let b = p.negated().jet(30.0, 100.0).unwrap();
        assert_eq!(a.scaled(-1.0), b);
    }

    #[test]
    fn spec_strings() {
        assert_eq!("theorem".parse::<PotentialSpec>().unwrap(), PotentialSpec::Theorem);
        assert_eq!(
            "family:c=0.5".parse::<PotentialSpec>().unwrap(),
            PotentialSpec::Family { c: Some(0.5) }
        );
        assert_eq!(
            "sl2:c=1".parse::<PotentialSpec>().unwrap(),
            PotentialSpec::Sl2 { c: Some(1.0) }
        );
        for bad in ["thm", "family:k=1", "g2:c=1", "sl2:c=x"] {
            assert!(bad.parse::<PotentialSpec>().is_err(), "{bad}");
        }
        assert!(PotentialSpec::Family { c: Some(-1.0) }
            .instantiate(Some(1.0), None)
            .is_err());
    }
}
