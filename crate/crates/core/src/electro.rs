//! Semi-classical data of the varying weight `W_n`, the second-kind function,
//! the electrostatic partner `S_n`, the Van Vleck polynomial, equilibrium
//! residuals of the zeros of `phi_n`, and the inversion `z -> 1/conj(z)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opa::OpaSolution;
use crate::poly::{Complex, LaurentWindow, Poly, ONE, ZERO};
use crate::roots::{find_all, CLUSTER_TOL};
use crate::weight::WeightSpec;

/// Distance below which a zero is said to sit on a singular point of the field.
pub const COLLISION_TOL: f64 = 1e-10;

/// Relative size below which top coefficients of the raw partner are dropped.
const PARTNER_TRIM: f64 = 1e-9;

/// `W_n'/W_n = B_n/A` with `A = z prod (z - a_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalData {
    pub a: Poly,
    pub bn: Poly,
    pub sigma: usize,
    pub n: usize,
    pub points: Vec<(Complex, f64)>,
}

impl SemiclassicalData {
    pub fn new(spec: &WeightSpec, n: usize) -> Result<Self> {
        spec.validate()?;
        SemiclassicalData::from_points(&spec.points(), n)
    }

    /// Build from singular points `a_j` with exponents `alpha_j`.
    pub fn from_points(points: &[(Complex, f64)], n: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput(
                "semi-classical data needs at least one singular point".into(),
            ));
        }
        let alpha: f64 = points.iter().map(|p| p.1).sum();
        let linear = |a: Complex| Poly::new(vec![-a, ONE]);
        let prod_except = |skip: Option<usize>| {
            points
                .iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != skip)
                .fold(Poly::one(), |acc, (_, &(a, _))| &acc * &linear(a))
        };
        let full = prod_except(None);
        let a = full.shift(1);
        let mut bn = full.scale(Complex::new(-(n as f64 + alpha), 0.0));
        for (j, &(_, exp)) in points.iter().enumerate() {
            bn = &bn + &prod_except(Some(j)).shift(1).scale(Complex::new(2.0 * exp, 0.0));
        }
        Ok(SemiclassicalData {
            a,
            bn,
            sigma: points.len() - 1,
            n,
            points: points.to_vec(),
        })
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn total_exponent(&self) -> f64 {
        self.points.iter().map(|p| p.1).sum()
    }

    /// `-(n + alpha)/z + sum 2 alpha_j/(z - a_j)`, the partial-fraction form of `B_n/A`.
    pub fn log_derivative(&self, z: Complex) -> Complex {
        let mut s = -(self.n as f64 + self.total_exponent()) / z;
        for &(a, exp) in &self.points {
            s += 2.0 * exp / (z - a);
        }
        s
    }
}

/// `phi_hat_n(z) = -2πi sum_{j=1..d} conj(u_{n+d+j}) z^{-n-j}` for `|z| > 1`.
pub fn second_kind(sol: &OpaSolution) -> Result<LaurentWindow> {
    if sol.is_degenerate() {
        return Err(Error::Degenerate { n: sol.n });
    }
    let d = sol.u_high.len();
    let factor = Complex::new(0.0, -2.0 * std::f64::consts::PI);
    let coeffs = (0..d).map(|i| factor * sol.u_high[d - 1 - i].conj()).collect();
    Ok(LaurentWindow::new(-((sol.n + d) as i64), coeffs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerResult {
    pub sn: Poly,
    pub roots: Vec<Complex>,
    pub cn: Poly,
    pub division_residual: f64,
    /// Largest coefficient of the raw combination outside exponents
    /// `0..m`, relative to the largest kept coefficient.
    pub truncation_residual: f64,
    /// Coefficient used to make `S_n` monic, before normalization.
    pub raw_leading: Complex,
}

/// `S_n = c (A phi phi_hat' - A phi' phi_hat - B_n phi phi_hat)`, made monic;
/// the Van Vleck polynomial is computed alongside.
pub fn partner(phi: &Poly, phihat: &LaurentWindow, sc: &SemiclassicalData) -> Result<PartnerResult> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = sc.m() as i64;
    let dphi = phi.derivative();
    let t1 = phihat.derivative().mul_poly(&(&sc.a * phi));
    let t2 = phihat.mul_poly(&(&sc.a * &dphi));
    let t3 = phihat.mul_poly(&(&sc.bn * phi));
    let raw = t1.sub(&t2).sub(&t3);

    let kept: Vec<Complex> = (0..m).map(|e| raw.coeff(e)).collect();
    let kept_max = kept.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if !(kept_max > 0.0) {
        return Err(Error::PartnerVanishes);
    }
    let discarded = raw
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let e = raw.lo() + *k as i64;
            e < 0 || e >= m
        })
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max);
    let trimmed = Poly::new(kept).trim_relative(PARTNER_TRIM);
    let raw_leading = trimmed.leading();
    let sn = trimmed.monic()?;
    let roots = match sn.degree() {
        Some(d) if d >= 1 => find_all(&sn, 1e-12)?.zeros,
        _ => Vec::new(),
    };
    let (cn, division_residual) = van_vleck(phi, &sn, sc)?;
    Ok(PartnerResult {
        sn,
        roots,
        cn,
        division_residual,
        truncation_residual: discarded / kept_max,
        raw_leading,
    })
}

/// `C = -(A S phi'' + ((A' + B_n) S - A S') phi') / phi`, with the remainder
/// norm relative to the numerator.
pub fn van_vleck(phi: &Poly, sn: &Poly, sc: &SemiclassicalData) -> Result<(Poly, f64)> {
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let ap = sc.a.derivative();
    let first = &(&sc.a * sn) * &d2;
    let coef = &(&(&ap + &sc.bn) * sn) - &(&sc.a * &sn.derivative());
    let num = &first + &(&coef * &d1);
    let (q, r) = num.divrem(phi)?;
    let scale = num.max_abs().max(f64::MIN_POSITIVE);
    Ok((-&q, r.max_abs() / scale))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub per_zero_residual: Vec<Complex>,
    /// Largest single term at each zero.
    pub scale: Vec<f64>,
    pub normalized: Vec<f64>,
}

impl EquilibriumReport {
    pub fn max_normalized(&self) -> f64 {
        self.normalized.iter().copied().fold(0.0, f64::max)
    }
}

fn check_simple(zeros: &[Complex]) -> Result<()> {
    for i in 0..zeros.len() {
        for j in i + 1..zeros.len() {
            let gap = (zeros[i] - zeros[j]).norm();
            if gap < CLUSTER_TOL * zeros[i].norm().max(zeros[j].norm()).max(1.0) {
                return Err(Error::NotSimple { gap });
            }
        }
    }
    Ok(())
}

fn check_collisions(zeros: &[Complex], sc: &SemiclassicalData, s_roots: &[Complex]) -> Result<()> {
    for (index, &z) in zeros.iter().enumerate() {
        let hit = |what: &'static str| Error::Collision {
            index,
            point: format!("{z}"),
            what,
        };
        if z.norm() < COLLISION_TOL {
            return Err(hit("origin"));
        }
        if sc.points.iter().any(|&(a, _)| (z - a).norm() < COLLISION_TOL) {
            return Err(hit("singular point of the weight"));
        }
        if s_roots.iter().any(|&s| (z - s).norm() < COLLISION_TOL) {
            return Err(hit("zero of the partner"));
        }
    }
    Ok(())
}

fn report(rows: Vec<(Complex, f64)>) -> EquilibriumReport {
    let (per_zero_residual, scale): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let normalized = per_zero_residual
        .iter()
        .zip(&scale)
        .map(|(r, s)| r.norm() / s)
        .collect();
    EquilibriumReport {
        per_zero_residual,
        scale,
        normalized,
    }
}

/// Residual of the equilibrium identity at every zero:
/// `sum_{j!=k} 1/(z_k - z_j) + (1 - n - alpha)/(2 z_k) + sum (alpha_j + 1/2)/(z_k - a_j) - S'/(2S)`.
pub fn equilibrium_residual(zeros: &[Complex], sc: &SemiclassicalData, sn: &Poly) -> Result<EquilibriumReport> {
    check_simple(zeros)?;
    let s_roots = match sn.degree() {
        Some(d) if d >= 1 => find_all(sn, 1e-12)?.zeros,
        Some(_) => Vec::new(),
        None => return Err(Error::ZeroPolynomial),
    };
    check_collisions(zeros, sc, &s_roots)?;
    let dsn = sn.derivative();
    let origin = (1.0 - sc.n as f64 - sc.total_exponent()) / 2.0;
    let rows = zeros
        .iter()
        .enumerate()
        .map(|(k, &z)| {
            let mut terms: Vec<Complex> = zeros
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, &w)| (z - w).inv())
                .collect();
            terms.push(origin / z);
            for &(a, exp) in &sc.points {
                terms.push((exp + 0.5) / (z - a));
            }
            terms.push(-0.5 * dsn.eval(z) / sn.eval(z));
            let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            (terms.iter().sum(), scale.max(f64::MIN_POSITIVE))
        })
        .collect();
    Ok(report(rows))
}

/// The same identity in differential form, `y''/(2y') + (A' + B_n)/(2A) - S'/(2S)`,
/// normalized by the scale vector of `reference`.
pub fn smodel_residual(
    phi: &Poly,
    zeros: &[Complex],
    sc: &SemiclassicalData,
    sn: &Poly,
    reference: &EquilibriumReport,
) -> EquilibriumReport {
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let ap = sc.a.derivative();
    let dsn = sn.derivative();
    let rows = zeros
        .iter()
        .zip(&reference.scale)
        .map(|(&z, &s)| {
            let v = d2.eval(z) / (2.0 * d1.eval(z))
                + (ap.eval(z) + sc.bn.eval(z)) / (2.0 * sc.a.eval(z))
                - dsn.eval(z) / (2.0 * sn.eval(z));
            (v, s)
        })
        .collect();
    report(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedCharge {
    pub position: Complex,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ChargeSystem {
    pub fixed: Vec<FixedCharge>,
    pub free: Vec<Complex>,
}

impl ChargeSystem {
    /// Charges acting on the zeros of `phi_n`: `-(n + alpha - 1)/2` at the
    /// origin, `alpha_j + 1/2` at each `a_j`, and `-1/2` at each partner root.
    pub fn opuc_model(sc: &SemiclassicalData, partner_roots: &[Complex], zeros: &[Complex]) -> Self {
        let mut fixed = vec![FixedCharge {
            position: ZERO,
            magnitude: -(sc.n as f64 + sc.total_exponent() - 1.0) / 2.0,
        }];
        fixed.extend(sc.points.iter().map(|&(a, exp)| FixedCharge {
            position: a,
            magnitude: exp + 0.5,
        }));
        fixed.extend(partner_roots.iter().map(|&s| FixedCharge {
            position: s,
            magnitude: -0.5,
        }));
        ChargeSystem {
            fixed,
            free: zeros.to_vec(),
        }
    }
}

/// `sum_{j!=k} 1/(z_k - z_j) + sum lambda/(z_k - a)` for every free charge.
pub fn gradient_energy(cs: &ChargeSystem) -> Result<Vec<Complex>> {
    let mut out = Vec::with_capacity(cs.free.len());
    for (k, &z) in cs.free.iter().enumerate() {
        let mut s = ZERO;
        for (j, &w) in cs.free.iter().enumerate() {
            if j != k {
                if z == w {
                    return Err(Error::Collision {
                        index: k,
                        point: format!("{z}"),
                        what: "another free charge",
                    });
                }
                s += (z - w).inv();
            }
        }
        for q in &cs.fixed {
            if z == q.position {
                return Err(Error::Collision {
                    index: k,
                    point: format!("{z}"),
                    what: "a fixed charge",
                });
            }
            s += q.magnitude / (z - q.position);
        }
        out.push(s);
    }
    Ok(out)
}

/// Image of a configuration of `n` free charges under `z -> 1/conj(z)`: fixed
/// charges move to `1/conj(a)` with unchanged magnitude, and the origin carries
/// `-n + 1 - sum lambda` (replacing any charge that was there).
pub fn invert_config(cs: &ChargeSystem, n: usize) -> Result<ChargeSystem> {
    if n != cs.free.len() {
        return Err(Error::InvalidInput(format!(
            "inversion of {} free charges requested with n = {n}",
            cs.free.len()
        )));
    }
    if let Some(index) = cs.free.iter().position(|z| *z == ZERO) {
        return Err(Error::Collision {
            index,
            point: "0".into(),
            what: "origin (cannot be inverted)",
        });
    }
    let total: f64 = cs.fixed.iter().map(|q| q.magnitude).sum();
    let star = |z: Complex| z.conj().inv();
    let mut fixed: Vec<FixedCharge> = cs
        .fixed
        .iter()
        .filter(|q| q.position != ZERO)
        .map(|q| FixedCharge {
            position: star(q.position),
            magnitude: q.magnitude,
        })
        .collect();
    fixed.push(FixedCharge {
        position: ZERO,
        magnitude: -(n as f64) + 1.0 - total,
    });
    Ok(ChargeSystem {
        fixed,
        free: cs.free.iter().map(|&z| star(z)).collect(),
    })
}
