//! Trigonometric moments of a weight on the unit circle, the Szegő recursion
//! for its monic orthogonal polynomials, and dense Hermitian solves.
//!
//! Moments use the normalized inner product `<p, q> = (1/2π) ∫ p conj(q) w dθ`,
//! so `mu[k] = (1/2π) ∫ e^{-ikθ} w(e^{iθ}) dθ` and `mu[-k] = conj(mu[k])`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Complex, Poly, ONE, ZERO};
use crate::precise;
use crate::weight::WeightSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    mu: Vec<Complex>,
}

impl MomentSequence {
    pub fn new(mu: Vec<Complex>) -> Result<Self> {
        match mu.first() {
            Some(m0) if m0.re > 0.0 => Ok(MomentSequence { mu }),
            _ => Err(Error::InvalidInput("mu[0] must be positive".into())),
        }
    }

    /// Highest stored order `N`.
    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.mu
    }

    /// `mu[k]` for `|k| <= N`, using the Hermitian extension for negative `k`.
    pub fn at(&self, k: isize) -> Complex {
        if k >= 0 {
            self.mu[k as usize]
        } else {
            self.mu[(-k) as usize].conj()
        }
    }

    /// `<p, q>_mu` evaluated by convolution against the moments.
    pub fn inner(&self, p: &Poly, q: &Poly) -> Complex {
        let mut s = ZERO;
        for (j, &a) in p.coeffs().iter().enumerate() {
            for (k, &b) in q.coeffs().iter().enumerate() {
                // <z^j, z^k> = mu[k - j]
                s += a * b.conj() * self.at(k as isize - j as isize);
            }
        }
        s
    }

    /// Toeplitz Gram matrix `M[j][k] = <z^k, z^j> = mu[j - k]` of order `n + 1`.
    pub fn toeplitz(&self, n: usize) -> DMatrix<Complex> {
        DMatrix::from_fn(n + 1, n + 1, |j, k| self.at(j as isize - k as isize))
    }
}

/// Moments of `|f|^2` from the convolution `f f*`: `mu[k]` is the coefficient
/// of order `d + k` of `f f*` (the coefficient of order `d - k` is its conjugate).
/// Returns orders `0..=max(n_max, d)`, all beyond `d` being zero.
pub fn toeplitz_moments_poly(f: &Poly, n_max: usize) -> Result<MomentSequence> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let g = f * &f.reverse(d)?;
    let mu = (0..=n_max.max(d)).map(|k| g.coeff(d + k)).collect();
    MomentSequence::new(mu)
}

/// Gauss–Legendre order per panel.
const PANEL_ORDER: usize = 24;

/// Composite rule on `[a, b]`, geometrically graded toward both endpoints
/// with `levels` dyadic panels on each side and `uniform` equal panels in the
/// middle. Nodes are stored as `(base, offset, weight)` with `base` the nearer
/// endpoint, so distances to a singular endpoint keep full relative accuracy.
fn graded_rule(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    levels: usize,
    uniform: usize,
    out: &mut Vec<(f64, f64, f64)>,
) {
    let mut push = |base: f64, lo: f64, hi: f64| {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for &(x, w) in rule.as_node_weight_pairs() {
            out.push((base, mid + half * x, half * w));
        }
    };
    let edge = (b - a) / 4.0;
    let mut hi = edge;
    for _ in 0..levels {
        push(a, hi / 2.0, hi);
        push(b, -hi, -hi / 2.0);
        hi /= 2.0;
    }
    push(a, 0.0, hi);
    push(b, -hi, 0.0);
    for i in 0..uniform {
        let lo = edge + 2.0 * edge * i as f64 / uniform as f64;
        let up = edge + 2.0 * edge * (i + 1) as f64 / uniform as f64;
        push(a, lo, up);
    }
}

/// `w` at `base + offset`, each factor written as `|2 sin(Δ/2)|^(2 alpha)`.
fn weight_at(points: &[(f64, f64)], base: f64, offset: f64) -> f64 {
    points
        .iter()
        .map(|&(theta, exp)| {
            let mut d0 = base - theta;
            d0 -= (d0 / (2.0 * PI)).round() * 2.0 * PI;
            if d0.abs() < 1e-12 {
                d0 = 0.0;
            }
            (2.0 * (0.5 * (d0 + offset)).sin()).abs().powf(2.0 * exp)
        })
        .product()
}

fn quadrature_moments(spec: &WeightSpec, n_max: usize, levels: usize, uniform: usize) -> Vec<Complex> {
    let rule = GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).expect("nonzero order"));
    let points: Vec<(f64, f64)> = spec
        .zeros
        .iter()
        .map(|z| (z.angle().radians().rem_euclid(2.0 * PI), z.exp))
        .collect();
    // break points: singular angles in [0, 2π), plus 0 and 2π
    let mut cuts: Vec<f64> = points.iter().map(|p| p.0).collect();
    cuts.push(0.0);
    cuts.push(2.0 * PI);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let mut nodes = Vec::new();
    for w in cuts.windows(2) {
        if w[1] - w[0] > 1e-15 {
            graded_rule(&rule, w[0], w[1], levels, uniform, &mut nodes);
        }
    }
    let weighted: Vec<(f64, f64)> = nodes
        .iter()
        .map(|&(base, off, wt)| (base + off, wt * weight_at(&points, base, off)))
        .collect();
    (0..=n_max)
        .into_par_iter()
        .map(|k| {
            let mut s = ZERO;
            for &(t, wt) in &weighted {
                s += Complex::from_polar(wt, -(k as f64) * t);
            }
            s / (2.0 * PI)
        })
        .collect()
}

/// Moments of a generalized Jacobi weight by composite Gauss–Legendre
/// quadrature, split at every singular angle and refined until two
/// successive refinements agree to `tol`.
pub fn toeplitz_moments_weight(spec: &WeightSpec, n_max: usize, tol: f64) -> Result<MomentSequence> {
    spec.validate()?;
    if spec.zeros.is_empty() {
        let mut mu = vec![ZERO; n_max + 1];
        mu[0] = ONE;
        return MomentSequence::new(mu);
    }
    // enough uniform panels to resolve e^{-ikθ} on each arc
    let mut uniform = 2 + n_max / 8;
    let mut levels = 8;
    let mut prev = quadrature_moments(spec, n_max, levels, uniform);
    let mut change = f64::INFINITY;
    for _ in 0..12 {
        levels *= 2;
        uniform *= 2;
        let next = quadrature_moments(spec, n_max, levels, uniform);
        change = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prev = next;
        if change < tol {
            // conjugate-closed specs have real moments
            if spec.is_conjugate_closed() {
                prev.iter_mut().for_each(|c| c.im = 0.0);
            }
            return MomentSequence::new(prev);
        }
    }
    Err(Error::Quadrature { tol, change })
}

/// Monic Szegő polynomials `Phi_0..Phi_n` with Verblunsky coefficients and
/// squared norms.
#[derive(Debug, Clone)]
pub struct OpucFamily {
    pub monic: Vec<Poly>,
    pub verblunsky: Vec<Complex>,
    pub norms: Vec<f64>,
}

impl OpucFamily {
    /// Orthonormal `phi_n = Phi_n / ||Phi_n||`.
    pub fn orthonormal(&self, n: usize) -> Poly {
        self.monic[n].scale(Complex::new(self.norms[n].sqrt().recip(), 0.0))
    }
}

/// Szegő recursion `Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k*`, with
/// `conj(alpha_k) = <z Phi_k, 1> / ||Phi_k||^2`.
pub fn levinson(mu: &MomentSequence, n: usize) -> Result<OpucFamily> {
    if n >= mu.mu.len() {
        return Err(Error::InvalidInput(format!(
            "degree {n} needs moments up to order {n}, have {}",
            mu.order()
        )));
    }
    let mut phi = vec![ONE];
    let mut norm = mu.mu[0].re;
    let mut family = OpucFamily {
        monic: vec![Poly::one()],
        verblunsky: Vec::with_capacity(n),
        norms: vec![norm],
    };
    for k in 0..n {
        // <z Phi_k, 1> = sum_j phi_j <z^(j+1), 1> = sum_j phi_j conj(mu[j+1])
        let r: Complex = phi
            .iter()
            .enumerate()
            .map(|(j, &c)| c * mu.mu[j + 1].conj())
            .sum();
        let alpha = (r / norm).conj();
        let modulus = alpha.norm();
        if !(modulus < 1.0) || !(norm > 0.0) {
            return Err(Error::PivotBreakdown { order: k, modulus });
        }
        let mut next = vec![ZERO; k + 2];
        next[1..].copy_from_slice(&phi);
        for (j, slot) in next.iter_mut().enumerate().take(k + 1) {
            // Phi_k*[j] = conj(phi[k - j])
            *slot -= alpha.conj() * phi[k - j].conj();
        }
        norm *= 1.0 - modulus * modulus;
        phi = next;
        family.monic.push(Poly::new(phi.clone()));
        family.verblunsky.push(alpha);
        family.norms.push(norm);
    }
    Ok(family)
}

/// Solve `M x = b` by LU with partial pivoting plus iterative refinement,
/// the residual `b - M x` being accumulated in double-double arithmetic.
pub fn dense_hermitian_solve(m: &DMatrix<Complex>, b: &[Complex]) -> Result<Vec<Complex>> {
    let n = b.len();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "matrix is {}x{}, right-hand side has length {n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let singular = || Error::Singular {
        context: format!("dense solve of order {n}"),
    };
    let lu = m.clone().lu();
    let rhs = nalgebra::DVector::from_column_slice(b);
    let mut x = lu.solve(&rhs).ok_or_else(singular)?;
    if !x.iter().all(|c| c.is_finite()) {
        return Err(singular());
    }
    let mm: Vec<precise::Dd> = m.iter().map(|&c| precise::lift(c)).collect();
    let bb: Vec<precise::Dd> = b.iter().map(|&c| precise::lift(c)).collect();
    let mut last = f64::INFINITY;
    for _ in 0..6 {
        let xx: Vec<precise::Dd> = x.iter().map(|&c| precise::lift(c)).collect();
        let r: Vec<Complex> = (0..n)
            .map(|i| {
                let mut s = bb[i];
                for (j, xj) in xx.iter().enumerate() {
                    // column-major storage
                    s = s - mm[i + j * n] * *xj;
                }
                precise::lower(s)
            })
            .collect();
        let dx = lu
            .solve(&nalgebra::DVector::from_column_slice(&r))
            .ok_or_else(singular)?;
        let step = dx.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let size = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        x += &dx;
        if step <= f64::EPSILON * size || step >= last {
            break;
        }
        last = step;
    }
    Ok(x.iter().copied().collect())
}
