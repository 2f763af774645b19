//! Optimal polynomial approximants `p_n` to `1/f` in the Hardy space, by the
//! Toeplitz Gram system and by the closed numerator formula
//! `p_n f f* = z^d + sum_{i<d} u_i z^i + sum_{j=n+d+1}^{n+2d} u_j z^j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{dense_hermitian_solve, toeplitz_moments_poly, MomentSequence};
use crate::poly::{Complex, Poly, ONE, ZERO};
use crate::precise::{self, Dd};

/// Relative size below which the top OPA coefficient counts as zero, i.e.
/// the Szegő polynomial vanishes at the origin.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpaSolution {
    pub n: usize,
    /// Coefficients of `p_n`, length `n + 1`.
    pub c: Vec<Complex>,
    /// `u_0 .. u_{d-1}`
    pub u_low: Vec<Complex>,
    /// `u_{n+d+1} .. u_{n+2d}`
    pub u_high: Vec<Complex>,
    /// `||1 - p_n f||`
    pub residual_norm: f64,
    /// Remainder of the numerator divided by `f f*`, relative to the numerator.
    pub division_residual: f64,
    /// Infinity-norm condition number of the `2d x 2d` remainder system.
    pub condition: f64,
    /// Monic `Phi_n = p_n* / conj(p_n(0))`; `None` when `p_n` has degree below `n`.
    pub opuc_monic: Option<Poly>,
}

impl OpaSolution {
    pub fn p(&self) -> Poly {
        Poly::new(self.c.clone())
    }

    pub fn is_degenerate(&self) -> bool {
        self.opuc_monic.is_none()
    }

    /// `u_k` for `k` in either index block.
    pub fn u(&self, k: usize) -> Option<Complex> {
        let d = self.u_low.len();
        if k < d {
            Some(self.u_low[k])
        } else if k > self.n + d && k <= self.n + 2 * d {
            Some(self.u_high[k - self.n - d - 1])
        } else {
            None
        }
    }
}

/// Rescale `f` so that `f(0) = 1`, returning the normalized polynomial and the
/// original `f(0)`. The OPA of the original `f` is the normalized one divided by `f(0)`.
pub fn normalize(f: &Poly) -> Result<(Poly, Complex)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f0 = f.coeff(0);
    if f0 == ZERO {
        return Err(Error::ZeroAtOrigin);
    }
    Ok((f.scale(f0.inv()), f0))
}

/// Solve `M c = (conj f(0), 0, ..., 0)` with `M[j][k] = mu[j - k]`.
pub fn opa_gram(mu: &MomentSequence, f0: Complex, n: usize) -> Result<Vec<Complex>> {
    if f0 == ZERO {
        return Err(Error::ZeroAtOrigin);
    }
    if n > mu.order() {
        return Err(Error::InvalidInput(format!(
            "degree {n} needs moments up to order {n}, have {}",
            mu.order()
        )));
    }
    let mut b = vec![ZERO; n + 1];
    b[0] = f0.conj();
    dense_hermitian_solve(&mu.toeplitz(n), &b)
}

/// Gram-route OPA of a polynomial `f` (any `f(0) != 0`, any degree).
pub fn opa_gram_poly(f: &Poly, n: usize) -> Result<Poly> {
    let mu = toeplitz_moments_poly(f, n)?;
    Ok(Poly::new(opa_gram(&mu, f.coeff(0), n)?))
}

pub fn residual_poly(f: &Poly, p: &Poly) -> (Poly, f64) {
    let r = &Poly::one() - &(p * f);
    let norm = r.norm();
    (r, norm)
}

fn lift_all(p: &Poly) -> Vec<Dd> {
    p.coeffs().iter().map(|&c| precise::lift(c)).collect()
}

fn dd_max(v: &[Dd]) -> f64 {
    v.iter().map(precise::abs_approx).fold(0.0, f64::max)
}

/// Closed-formula OPA for `f` with `f(0) = 1` and degree `d >= 1`. The
/// remainder system and the exact division are carried in double-double.
pub fn opa_closed(f: &Poly, n: usize) -> Result<OpaSolution> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let f0 = f.coeff(0);
    if f0 == ZERO {
        return Err(Error::ZeroAtOrigin);
    }
    if (f0 - ONE).norm() > 1e-12 {
        return Err(Error::NotNormalized(format!("{f0}")));
    }
    if d < 1 {
        return Err(Error::DegreeTooLow { degree: d, min: 1 });
    }
    let big = 2 * d;
    let fd = lift_all(f);
    let fstar: Vec<Dd> = fd.iter().rev().map(|c| c.conj()).collect();
    let g = precise::mul_polys(&fd, &fstar);
    let lead = g[big];

    // remainders z^k mod g for k = 0 ..= n + 2d
    let top = n + big;
    let mut rems: Vec<Vec<Dd>> = Vec::with_capacity(top + 1);
    let mut r = vec![precise::zero(); big];
    r[0] = precise::one();
    for _ in 0..=top {
        rems.push(r.clone());
        let t = precise::div(r[big - 1], lead);
        let mut next = vec![precise::zero(); big];
        next[1..].copy_from_slice(&r[..big - 1]);
        for (slot, gi) in next.iter_mut().zip(&g) {
            *slot = *slot - t * *gi;
        }
        r = next;
    }

    let cols: Vec<usize> = (0..d).chain(n + d + 1..=n + big).collect();
    let matrix: Vec<Vec<Dd>> = (0..big)
        .map(|i| cols.iter().map(|&k| rems[k][i]).collect())
        .collect();
    let rhs: Vec<Dd> = rems[d].iter().map(|&c| -c).collect();
    let context = format!("closed OPA system, d = {d}, n = {n}");
    let u = precise::solve(matrix.clone(), rhs, &context)?;
    let condition = condition_inf(&matrix, &context)?;

    // numerator and its exact division by f f*
    let mut num = vec![precise::zero(); top + 1];
    num[d] = precise::one();
    for (&k, &uk) in cols.iter().zip(&u) {
        num[k] = uk;
    }
    let (quot, rem) = precise::divrem(&num, &g);
    let division_residual = dd_max(&rem) / dd_max(&num);

    let mut c: Vec<Complex> = quot.iter().map(|&q| precise::lower(q)).collect();
    c.resize(n + 1, ZERO);
    let cmax = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let opuc_monic = if c[n].norm() > DEGENERATE_TOL * cmax {
        // Phi_n = conj-reversed p_n over conj(p_n(0)), in double-double
        let c0 = quot[0].conj();
        let phi: Vec<Complex> = (0..=n)
            .map(|k| precise::lower(precise::div(quot.get(n - k).map_or(precise::zero(), |q| q.conj()), c0)))
            .collect();
        Some(Poly::new(phi))
    } else {
        None
    };
    let p = Poly::new(c.clone());
    let (_, residual_norm) = residual_poly(f, &p);
    let u: Vec<Complex> = u.iter().map(|&x| precise::lower(x)).collect();
    Ok(OpaSolution {
        n,
        c,
        u_low: u[..d].to_vec(),
        u_high: u[d..].to_vec(),
        residual_norm,
        division_residual,
        condition,
        opuc_monic,
    })
}

/// `||M||_inf ||M^{-1}||_inf` by explicit inversion (the system is tiny).
fn condition_inf(m: &[Vec<Dd>], context: &str) -> Result<f64> {
    let k = m.len();
    let row_sum = |row: &[Dd]| row.iter().map(precise::abs_approx).sum::<f64>();
    let norm = m.iter().map(|r| row_sum(r)).fold(0.0, f64::max);
    let mut inv_rows = vec![vec![precise::zero(); k]; k];
    for j in 0..k {
        let mut e = vec![precise::zero(); k];
        e[j] = precise::one();
        let col = precise::solve(m.to_vec(), e, context)?;
        for (i, v) in col.into_iter().enumerate() {
            inv_rows[i][j] = v;
        }
    }
    let inv = inv_rows.iter().map(|r| row_sum(r)).fold(0.0, f64::max);
    Ok(norm * inv)
}

/// Monic `Phi_n` from an OPA solution, or the degeneracy signal when
/// `deg p_n < n` (then `p_n = p_{n-1}`).
pub fn opuc_from_opa(sol: &OpaSolution) -> Result<Poly> {
    sol.opuc_monic.clone().ok_or(Error::Degenerate { n: sol.n })
}

/// Monic reversal of a Gram-route coefficient vector, with the same
/// degeneracy rule as the closed route.
pub fn opuc_from_coeffs(c: &[Complex]) -> Result<Poly> {
    let n = c.len().saturating_sub(1);
    let cmax = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if c.is_empty() || !(c[n].norm() > DEGENERATE_TOL * cmax) {
        return Err(Error::Degenerate { n });
    }
    Poly::new(c.to_vec()).reverse(n)?.monic()
}
