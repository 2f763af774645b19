//! Worked scenarios: one zero on the circle (Jacobi), two opposite zeros,
//! two conjugate zeros at a rational angle, and spurious-zero tracking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::dense_hermitian_solve;
use crate::poly::{Complex, Poly, ONE, ZERO};
use crate::weight::RationalAngle;
use nalgebra::DMatrix;

/// Default modulus band for spurious zeros: `|z| <= 1 - delta`.
pub const SPURIOUS_DELTA: f64 = 0.1;

/// Largest distance at which a spurious zero is paired with a partner root.
pub const PAIRING_CAP: f64 = 0.1;

/// Residual of
/// `phi'' + ((1 - n - a)/z + (2a + 1)/(z - 1)) phi' + n(a + 1)/(z(1 - z)) phi`
/// at 20 points of `|z| = 1/2`, each normalized by its largest term.
pub fn jacobi_ode_residual(phi: &Poly, a: f64) -> f64 {
    let n = phi.degree().unwrap_or(0) as f64;
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    (0..20)
        .map(|k| {
            let z = Complex::from_polar(0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 20.0);
            let terms = [
                d2.eval(z),
                ((1.0 - n - a) / z + (2.0 * a + 1.0) / (z - 1.0)) * d1.eval(z),
                n * (a + 1.0) / (z * (1.0 - z)) * phi.eval(z),
            ];
            let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                0.0
            } else {
                terms.iter().sum::<Complex>().norm() / scale
            }
        })
        .fold(0.0, f64::max)
}

/// Zeros with `|Im z| <= tol`, with their real parts in ascending order.
pub fn real_zero_count(zeros: &[Complex], tol: f64) -> (usize, Vec<f64>) {
    let mut reals: Vec<f64> = zeros.iter().filter(|z| z.im.abs() <= tol).map(|z| z.re).collect();
    reals.sort_by(f64::total_cmp);
    (reals.len(), reals)
}

/// Kolmogorov–Smirnov distance between the arguments of `zeros` (mapped to
/// `[0, 1)`) and the uniform distribution.
pub fn argument_discrepancy(zeros: &[Complex]) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut x: Vec<f64> = zeros.iter().map(|z| z.arg().rem_euclid(tau) / tau).collect();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| (v - i as f64 / n).abs().max(((i + 1) as f64 / n - v).abs()))
        .fold(0.0, f64::max)
}

/// Two conjugate zeros `e^{±iθ}` with `θ = kπ/l`, `f = z^2 - 2cos θ z + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugateCase {
    pub theta: RationalAngle,
    pub n: usize,
    /// `t_0..t_3` from the complex double-zero system.
    pub t: [Complex; 4],
    /// The same from the equivalent real system, when `sin((n+2)θ) != 0`.
    pub t_real: Option<[f64; 4]>,
    pub big_t: Complex,
    /// Root of the monic linear partner; `None` when it lies at infinity.
    pub sn: Option<Complex>,
    pub n_mod_l: usize,
    /// `n mod 2l`
    pub n_prime: usize,
}

impl ConjugateCase {
    pub fn f(&self) -> Poly {
        let c = self.theta.unit().re;
        Poly::from_real(&[1.0, -2.0 * c, 1.0])
    }

    /// The numerator `t_0 + t_1 z + z^{n+2} + t_2 z^{n+3} + t_3 z^{n+4}`.
    pub fn numerator(&self) -> Poly {
        let n = self.n;
        let mut v = vec![ZERO; n + 5];
        v[0] = self.t[0];
        v[1] = self.t[1];
        v[n + 2] = ONE;
        v[n + 3] = self.t[2];
        v[n + 4] = self.t[3];
        Poly::new(v)
    }

    /// Monic `phi_n` as numerator over `f^2`, with the relative division remainder.
    pub fn phi_monic(&self) -> Result<(Poly, f64)> {
        let f = self.f();
        let num = self.numerator();
        let (q, r) = num.divrem(&(&f * &f))?;
        Ok((q.monic()?, r.max_abs() / num.max_abs()))
    }
}

/// `e^{i j θ}` through the exact rational angle, so congruent degrees see identical numbers.
fn unit_multiple(theta: RationalAngle, j: i64) -> Complex {
    RationalAngle {
        num: theta.num * j,
        den: theta.den,
    }
    .unit()
}

fn sin_vanishes(theta: RationalAngle, j: i64) -> bool {
    (theta.num * j).rem_euclid(theta.den) == 0
}

/// Solve for `t_0..t_3` by forcing double zeros of the numerator at `e^{±iθ}`,
/// and again through the real reformulation of the same system.
pub fn conjugate_t_solve(theta: RationalAngle, n: usize) -> Result<ConjugateCase> {
    let theta = RationalAngle::new(theta.num, theta.den)?;
    if sin_vanishes(theta, 1) {
        return Err(Error::InvalidInput(format!(
            "angle {}π/{} has sin θ = 0",
            theta.num, theta.den
        )));
    }
    let ni = n as i64;
    let e = |j: i64| unit_multiple(theta, j);
    let nf = n as f64;
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            ONE, e(1), e(ni + 3), e(ni + 4),
            ONE, e(-1), e(-ni - 3), e(-ni - 4),
            ZERO, ONE, e(ni + 2) * (nf + 3.0), e(ni + 3) * (nf + 4.0),
            ZERO, ONE, e(-ni - 2) * (nf + 3.0), e(-ni - 3) * (nf + 4.0),
        ],
    );
    let b = [
        -e(ni + 2),
        -e(-ni - 2),
        -e(ni + 1) * (nf + 2.0),
        -e(-ni - 1) * (nf + 2.0),
    ];
    let singular = |what: &str| Error::Singular {
        context: format!("{what}, θ = {}π/{}, n = {n}", theta.num, theta.den),
    };
    let t = dense_hermitian_solve(&m, &b).map_err(|_| singular("double-zero system"))?;
    let t = [t[0], t[1], t[2], t[3]];

    let t_real = if sin_vanishes(theta, ni + 2) {
        None
    } else {
        let cos = |j: i64| e(j).re;
        let sin = |j: i64| e(j).im;
        let s = |k: i64, l: i64| sin(k) / sin(l);
        let m2 = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, cos(1), cos(ni + 3), cos(ni + 4),
                0.0, 1.0, s(ni + 3, 1), s(ni + 4, 1),
                0.0, 1.0, (nf + 3.0) * cos(ni + 2), (nf + 4.0) * cos(ni + 3),
                0.0, 0.0, 1.0, (nf + 4.0) / (nf + 3.0) * s(ni + 3, ni + 2),
            ],
        );
        let b2 = nalgebra::DVector::from_column_slice(&[
            -cos(ni + 2),
            -s(ni + 2, 1),
            -(nf + 2.0) * cos(ni + 1),
            -(nf + 2.0) / (nf + 3.0) * s(ni + 1, ni + 2),
        ]);
        let x = m2.lu().solve(&b2).ok_or_else(|| singular("real system"))?;
        Some([x[0], x[1], x[2], x[3]])
    };

    let big_t = (ONE - e(2 * (ni + 3))) / (ONE - e(2));
    let l = theta.den as usize;
    let mut case = ConjugateCase {
        theta,
        n,
        t,
        t_real,
        big_t,
        sn: None,
        n_mod_l: n % l,
        n_prime: n % (2 * l),
    };
    case.sn = conjugate_partner_root(&case);
    Ok(case)
}

/// `s_n = -[(n+4) t_0 / ((n+3) t_1) + (n+2) t_2 / ((n+3) t_3) + 2cos θ]`;
/// `None` when `t_1` vanishes and the root escapes to infinity.
pub fn conjugate_partner_root(case: &ConjugateCase) -> Option<Complex> {
    let [t0, t1, t2, t3] = case.t;
    let scale = case.t.iter().map(|t| t.norm()).fold(0.0, f64::max);
    if t1.norm() <= 1e-14 * scale {
        return None;
    }
    let n = case.n as f64;
    let c = case.theta.unit().re;
    Some(-((n + 4.0) * t0 / ((n + 3.0) * t1) + (n + 2.0) * t2 / ((n + 3.0) * t3) + 2.0 * c))
}

/// Limit of the partner root along the class of `n mod 2l`:
/// `cos((n'+2)θ)/cos((n'+3)θ)`, or `None` when the denominator vanishes.
pub fn conjugate_partner_limit(theta: RationalAngle, n: usize) -> Option<f64> {
    let np = (n % (2 * theta.den as usize)) as i64;
    let num = unit_multiple(theta, np + 2).re;
    let den = unit_multiple(theta, np + 3).re;
    (den.abs() > 1e-14).then(|| num / den)
}

/// Coefficients `d_{0..n+2}` of `1 - p_n f` for the conjugate pair at `θ`.
pub fn acse_coeffs(theta: RationalAngle, n: usize) -> Result<Vec<f64>> {
    let theta = RationalAngle::new(theta.num, theta.den)?;
    if sin_vanishes(theta, 1) {
        return Err(Error::InvalidInput("e^{2iθ} = 1".into()));
    }
    let ni = n as i64;
    let big_t = (ONE - unit_multiple(theta, 2 * (ni + 3))) / (ONE - unit_multiple(theta, 2));
    let np3 = Complex::new(n as f64 + 3.0, 0.0);
    let den = (n as f64 + 3.0).powi(2) - big_t.norm_sqr();
    Ok((0..=ni + 2)
        .map(|j| {
            let v = (np3 - big_t) * unit_multiple(theta, -j) + (np3 - big_t.conj()) * unit_multiple(theta, j);
            v.re / den
        })
        .collect())
}

/// Predicted partner root for `f = (1 - z)^a (1 + z)^b`: `(b+a)/(b-a)` for even
/// `n`, `(b-a)/(b+a)` for odd `n`; `None` when the denominator vanishes.
pub fn opposite_partner_values(a: f64, b: f64, n: usize) -> Option<f64> {
    let (num, den) = if n % 2 == 0 { (b + a, b - a) } else { (b - a, b + a) };
    (den != 0.0).then(|| num / den)
}

/// Zeros with `|z| <= 1 - delta`.
pub fn spurious_detect(zeros: &[Complex], delta: f64) -> Vec<Complex> {
    zeros.iter().copied().filter(|z| z.norm() <= 1.0 - delta).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpuriousRecord {
    pub n: usize,
    pub spurious: Vec<Complex>,
    pub partner_roots_inside: Vec<Complex>,
    /// `(spurious index, partner index)` for accepted pairs.
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<Complex>,
    /// `n (xi + xi/n - s)` per pair.
    pub pair_metric: Vec<Complex>,
    /// `n (xi - xi/n - s)` per pair.
    pub alt_metric: Vec<Complex>,
}

impl SpuriousRecord {
    /// Partner roots strictly inside the unit disk are the candidates.
    pub fn new(n: usize, spurious: Vec<Complex>, partner_roots: &[Complex]) -> Self {
        SpuriousRecord {
            n,
            spurious,
            partner_roots_inside: partner_roots.iter().copied().filter(|s| s.norm() < 1.0).collect(),
            pairs: Vec::new(),
            unpaired: Vec::new(),
            pair_metric: Vec::new(),
            alt_metric: Vec::new(),
        }
    }
}

/// Nearest-neighbour pairing of spurious zeros with partner roots: the
/// closest remaining pair is matched first (ties to the lower indices), and
/// pairs at distance `PAIRING_CAP` or more are rejected. Fills both metrics.
pub fn conjecture_metric(rec: &SpuriousRecord) -> SpuriousRecord {
    let mut out = rec.clone();
    out.pairs.clear();
    out.unpaired.clear();
    out.pair_metric.clear();
    out.alt_metric.clear();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (i, xi) in rec.spurious.iter().enumerate() {
        for (j, s) in rec.partner_roots_inside.iter().enumerate() {
            let dist = (xi - s).norm();
            if dist < PAIRING_CAP {
                cand.push((dist, i, j));
            }
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_zero = vec![false; rec.spurious.len()];
    let mut used_root = vec![false; rec.partner_roots_inside.len()];
    for (_, i, j) in cand {
        if !used_zero[i] && !used_root[j] {
            used_zero[i] = true;
            used_root[j] = true;
            out.pairs.push((i, j));
        }
    }
    out.pairs.sort_unstable();
    let n = rec.n as f64;
    for &(i, j) in &out.pairs {
        let (xi, s) = (rec.spurious[i], rec.partner_roots_inside[j]);
        out.pair_metric.push(n * (xi + xi / n - s));
        out.alt_metric.push(n * (xi - xi / n - s));
    }
    out.unpaired = (0..rec.spurious.len())
        .filter(|&i| !used_zero[i])
        .map(|i| rec.spurious[i])
        .collect();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricKind {
    Pair,
    Alt,
}

/// Whichever metric shrinks more along a sweep (comparing the mean modulus
/// over the last and first third of the records).
pub fn primary_metric(records: &[SpuriousRecord]) -> MetricKind {
    let trend = |pick: fn(&SpuriousRecord) -> &Vec<Complex>| {
        let vals: Vec<f64> = records
            .iter()
            .filter(|r| !pick(r).is_empty())
            .map(|r| pick(r).iter().map(|c| c.norm()).sum::<f64>() / pick(r).len() as f64)
            .collect();
        if vals.len() < 2 {
            return 0.0;
        }
        let k = vals.len().div_ceil(3);
        let head: f64 = vals[..k].iter().sum::<f64>() / k as f64;
        let tail: f64 = vals[vals.len() - k..].iter().sum::<f64>() / k as f64;
        tail / head.max(f64::MIN_POSITIVE)
    };
    if trend(|r| &r.pair_metric) <= trend(|r| &r.alt_metric) {
        MetricKind::Pair
    } else {
        MetricKind::Alt
    }
}
