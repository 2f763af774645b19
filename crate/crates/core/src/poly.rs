//! Dense complex polynomials and finite Laurent windows.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `z^k`.
//! Trailing zeros are trimmed exactly (threshold 0); numerical trimming is
//! always an explicit call with a caller-chosen tolerance.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Complex>,
}

fn trim_exact(v: &mut Vec<Complex>) {
    while v.last().is_some_and(|c| *c == ZERO) {
        v.pop();
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        trim_exact(&mut coeffs);
        Poly { coeffs }
    }

    /// Validating constructor for untrusted input.
    pub fn try_new(coeffs: Vec<Complex>) -> Result<Self> {
        if let Some(k) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidInput(format!("coefficient {k} is not finite")));
        }
        Ok(Poly::new(coeffs))
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(ONE)
    }

    /// `c z^k`
    pub fn monomial(k: usize, c: Complex) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `leading * prod (z - r)`
    pub fn from_roots(roots: &[Complex], leading: Complex) -> Self {
        let mut v = vec![leading];
        for &r in roots {
            v.push(ZERO);
            for k in (1..v.len()).rev() {
                v[k] = v[k - 1] - r * v[k];
            }
            v[0] *= -r;
        }
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// `z^d conj(p(1/conj z))`: coefficient `k` of the result is `conj(p[d-k])`.
    pub fn reverse(&self, d: usize) -> Result<Poly> {
        match self.degree() {
            Some(deg) if deg > d => Err(Error::ReverseDegree { d, degree: deg }),
            _ => Ok(Poly::new(
                (0..=d).map(|k| self.coeff(d - k).conj()).collect(),
            )),
        }
    }

    pub fn scale(&self, c: Complex) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(v)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(Complex, Complex) -> Complex) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| op(self.coeff(k), other.coeff(k))).collect())
    }

    /// Long division: `self = quot * q + rem`, `deg rem < deg q`.
    pub fn divrem(&self, q: &Poly) -> Result<(Poly, Poly)> {
        let dq = q.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lead = q.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![ZERO; rem.len() - dq];
        for k in (dq..rem.len()).rev() {
            let c = rem[k] / lead;
            quot[k - dq] = c;
            rem[k] = ZERO;
            for (i, &qi) in q.coeffs.iter().enumerate().take(dq) {
                rem[k - dq + i] -= c * qi;
            }
        }
        rem.truncate(dq);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Drop trailing coefficients with `|c| <= rel_tol * max|c|`.
    pub fn trim_relative(&self, rel_tol: f64) -> Poly {
        let scale = self.max_abs();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.norm() <= rel_tol * scale) {
            v.pop();
        }
        Poly::new(v)
    }

    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = self.scale(self.leading().inv()).coeffs;
        if let Some(last) = v.last_mut() {
            *last = ONE;
        }
        Ok(Poly::new(v))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// ℓ² norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

/// Finite Laurent series `sum_k coeffs[k] z^(lo + k)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct LaurentWindow {
    lo: i64,
    coeffs: Vec<Complex>,
}

impl LaurentWindow {
    pub fn new(lo: i64, mut coeffs: Vec<Complex>) -> Self {
        trim_exact(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| **c == ZERO).count();
        if lead == coeffs.len() {
            return LaurentWindow::default();
        }
        coeffs.drain(..lead);
        LaurentWindow {
            lo: lo + lead as i64,
            coeffs,
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentWindow::new(0, p.coeffs().to_vec())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent present, `None` for the zero element.
    pub fn hi(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> Complex {
        let k = exponent - self.lo;
        if k < 0 {
            return ZERO;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        let body = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        body * z.powi(self.lo as i32)
    }

    pub fn derivative(&self) -> LaurentWindow {
        LaurentWindow::new(
            self.lo - 1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c * (self.lo + k as i64) as f64)
                .collect(),
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> LaurentWindow {
        if self.is_empty() || p.is_zero() {
            return LaurentWindow::default();
        }
        let mut v = vec![ZERO; self.coeffs.len() + p.coeffs().len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in p.coeffs().iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        LaurentWindow::new(self.lo, v)
    }

    fn zip_with(&self, other: &LaurentWindow, op: impl Fn(Complex, Complex) -> Complex) -> Self {
        let (Some(h1), Some(h2)) = (self.hi(), other.hi()) else {
            return if self.is_empty() {
                other.map(|c| op(ZERO, c))
            } else {
                self.map(|c| op(c, ZERO))
            };
        };
        let lo = self.lo.min(other.lo);
        let hi = h1.max(h2);
        LaurentWindow::new(
            lo,
            (lo..=hi)
                .map(|e| op(self.coeff(e), other.coeff(e)))
                .collect(),
        )
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        LaurentWindow::new(self.lo, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn add(&self, other: &LaurentWindow) -> LaurentWindow {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LaurentWindow) -> LaurentWindow {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex) -> LaurentWindow {
        self.map(|a| a * c)
    }

    /// Non-negative exponents as a polynomial.
    pub fn polynomial_part(&self) -> Poly {
        match self.hi() {
            Some(hi) if hi >= 0 => Poly::new((0..=hi).map(|e| self.coeff(e)).collect()),
            _ => Poly::zero(),
        }
    }

    /// Largest modulus among the negative-exponent coefficients.
    pub fn principal_max(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| self.lo + (*k as i64) < 0)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn assert_poly_eq(p: &Poly, expected: &[f64], tol: f64) {
        assert_eq!(p.coeffs().len(), expected.len(), "{p:?}");
        for (a, &b) in p.coeffs().iter().zip(expected) {
            assert_abs_diff_eq!(a.re, b, epsilon = tol);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = tol);
        }
    }

    #[test]
    fn mul_examples() {
        let a = Poly::from_real(&[1.0, 1.0]);
        let b = Poly::from_real(&[1.0, -1.0]);
        assert_poly_eq(&(&a * &b), &[1.0, 0.0, -1.0], 0.0);
        assert!((&a * &Poly::zero()).is_zero());
        let c1 = Poly::from_real(&[1.0, -1.0]);
        let c2 = Poly::from_real(&[-1.0, 1.0]);
        assert_poly_eq(&(&c1 * &c2), &[-1.0, 2.0, -1.0], 0.0);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::from_real(&[1.0, -1.0]).eval(ONE), ZERO);
        assert_eq!(Poly::monomial(2, ONE).eval(Complex::i()), c(-1.0, 0.0));
        assert_eq!(Poly::zero().eval(c(3.0, 4.0)), ZERO);
    }

    #[test]
    fn derivative_examples() {
        assert_poly_eq(&Poly::from_real(&[1.0, -2.0, 1.0]).derivative(), &[-2.0, 2.0], 0.0);
        assert!(Poly::from_real(&[7.0]).derivative().is_zero());
        assert_poly_eq(&Poly::monomial(3, ONE).derivative(), &[0.0, 0.0, 3.0], 0.0);
    }

    #[test]
    fn reverse_examples() {
        assert_poly_eq(&Poly::from_real(&[1.0, -1.0]).reverse(1).unwrap(), &[-1.0, 1.0], 0.0);
        let t = 0.7_f64;
        let pal = Poly::from_real(&[1.0, -2.0 * t.cos(), 1.0]);
        assert_eq!(pal.reverse(2).unwrap(), pal);
        let k = Poly::constant(c(2.0, 3.0));
        assert_eq!(k.reverse(0).unwrap(), Poly::constant(c(2.0, -3.0)));
        assert!(matches!(
            Poly::from_real(&[1.0, 1.0, 1.0]).reverse(1),
            Err(Error::ReverseDegree { d: 1, degree: 2 })
        ));
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = Poly::from_real(&[1.0, 0.0, -1.0])
            .divrem(&Poly::from_real(&[1.0, -1.0]))
            .unwrap();
        assert_poly_eq(&q, &[1.0, 1.0], 1e-15);
        assert!(r.is_zero());

        let (q, r) = Poly::monomial(1, ONE).divrem(&Poly::monomial(2, ONE)).unwrap();
        assert!(q.is_zero());
        assert_poly_eq(&r, &[0.0, 1.0], 0.0);

        // p_1 f f* for f = 1 - z, divided by f f* = -(1-z)^2
        let num = Poly::from_real(&[-2.0 / 3.0, 1.0, 0.0, -1.0 / 3.0]);
        let (q, r) = num.divrem(&Poly::from_real(&[-1.0, 2.0, -1.0])).unwrap();
        assert_poly_eq(&q, &[2.0 / 3.0, 1.0 / 3.0], 1e-15);
        assert!(r.max_abs() < 1e-15);

        assert!(matches!(
            Poly::one().divrem(&Poly::zero()),
            Err(Error::DivisionByZeroPoly)
        ));
    }

    #[test]
    fn from_roots_examples() {
        assert_poly_eq(&Poly::from_roots(&[ONE, -ONE], ONE), &[-1.0, 0.0, 1.0], 0.0);
        assert_eq!(Poly::from_roots(&[], c(5.0, 0.0)), Poly::constant(c(5.0, 0.0)));
        let w = Complex::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        assert_poly_eq(&Poly::from_roots(&[w, w.conj()], ONE), &[1.0, -1.0, 1.0], 1e-15);
    }

    #[test]
    fn laurent_window_arithmetic() {
        // (2πi/3) z^-2 has derivative -(4πi/3) z^-3
        let w = LaurentWindow::new(-2, vec![c(0.0, 1.0)]);
        let dw = w.derivative();
        assert_eq!(dw.lo(), -3);
        assert_eq!(dw.coeffs(), &[c(0.0, -2.0)]);
        let prod = w.mul_poly(&Poly::from_real(&[1.0, 0.0, 0.0, 2.0]));
        assert_eq!(prod.coeff(-2), c(0.0, 1.0));
        assert_eq!(prod.coeff(1), c(0.0, 2.0));
        assert_eq!(prod.polynomial_part(), Poly::new(vec![ZERO, c(0.0, 2.0)]));
        assert_eq!(prod.principal_max(), 1.0);
        let cancelled = prod.sub(&prod);
        assert!(cancelled.is_empty());
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 0..max_len)
            .prop_map(|v| Poly::new(v.into_iter().map(|(a, b)| c(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(p in arb_poly(12), extra in 0usize..4) {
            let d = p.degree().unwrap_or(0) + extra;
            let back = p.reverse(d).unwrap().reverse(d).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn divrem_reconstructs(p in arb_poly(16), q in arb_poly(6)) {
            prop_assume!(!q.is_zero() && q.leading().norm() > 0.1);
            let (quot, rem) = p.divrem(&q).unwrap();
            prop_assert!(rem.degree().map_or(true, |r| r < q.degree().unwrap()));
            let back = &(&quot * &q) + &rem;
            let scale = p.max_abs().max(1.0) * (1.0 + quot.max_abs() * q.max_abs());
            for k in 0..p.coeffs().len().max(back.coeffs().len()) {
                prop_assert!((back.coeff(k) - p.coeff(k)).norm() <= 1e-13 * scale);
            }
        }

        #[test]
        fn eval_is_multiplicative(p in arb_poly(10), q in arb_poly(10),
                                  r in 0.0..2.0f64, t in 0.0..6.3f64) {
            let z = Complex::from_polar(r, t);
            let lhs = (&p * &q).eval(z);
            let rhs = p.eval(z) * q.eval(z);
            let abs_eval = |a: &Poly| a.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
            let scale = abs_eval(&p) * abs_eval(&q);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }
    }
}
