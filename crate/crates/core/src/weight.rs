//! Generalized Jacobi weights `w(z) = prod |z - a_j|^(2 alpha_j)` with the
//! singular points `a_j` on the unit circle at rational multiples of π.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Complex, Poly, ONE};

/// The angle `num·π/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    pub num: i64,
    pub den: i64,
}

impl RationalAngle {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::InvalidInput(format!(
                "angle denominator must be positive, got {den}"
            )));
        }
        Ok(RationalAngle { num, den })
    }

    /// Representative with numerator in `(-den, den]`, so the angle lies in `(-π, π]`.
    pub fn reduced(&self) -> RationalAngle {
        let two = 2 * self.den;
        let mut num = self.num.rem_euclid(two);
        if num > self.den {
            num -= two;
        }
        RationalAngle { num, den: self.den }
    }

    pub fn radians(&self) -> f64 {
        let r = self.reduced();
        r.num as f64 * PI / r.den as f64
    }

    pub fn negate(&self) -> RationalAngle {
        RationalAngle {
            num: -self.num,
            den: self.den,
        }
        .reduced()
    }

    /// `e^{i angle}`, exact at multiples of π/2 and conjugate-symmetric under
    /// negation of the angle.
    pub fn unit(&self) -> Complex {
        let r = self.reduced();
        let (num, den) = (r.num.abs(), r.den);
        let (re, im) = if num == 0 {
            (1.0, 0.0)
        } else if num == den {
            (-1.0, 0.0)
        } else if 2 * num == den {
            (0.0, 1.0)
        } else {
            let t = num as f64 * PI / den as f64;
            (t.cos(), t.sin())
        };
        Complex::new(re, if r.num < 0 { -im } else { im })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleZero {
    pub num: i64,
    pub den: i64,
    /// Half the power of `|z - a|` in the weight.
    pub exp: f64,
}

impl CircleZero {
    pub fn angle(&self) -> RationalAngle {
        RationalAngle {
            num: self.num,
            den: self.den,
        }
    }

    pub fn point(&self) -> Complex {
        self.angle().unit()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WeightSpec {
    pub zeros: Vec<CircleZero>,
}

impl WeightSpec {
    pub fn new(zeros: Vec<CircleZero>) -> Result<Self> {
        let spec = WeightSpec { zeros };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, z) in self.zeros.iter().enumerate() {
            if z.den <= 0 {
                return Err(Error::InvalidInput(format!(
                    "zero {i}: denominator must be positive"
                )));
            }
            if !(z.exp.is_finite() && z.exp > -0.5) {
                return Err(Error::InvalidInput(format!(
                    "zero {i}: exponent must exceed -1/2, got {}",
                    z.exp
                )));
            }
            for (j, w) in self.zeros.iter().enumerate().take(i) {
                let (r1, r2) = (z.angle().reduced(), w.angle().reduced());
                if r1.num * r2.den == r2.num * r1.den {
                    return Err(Error::InvalidInput(format!(
                        "zeros {j} and {i} coincide"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Shorthand for integer-exponent weights `prod |z - e^{iπ num/den}|^(2 exp)`.
    pub fn from_triples(items: &[(i64, i64, f64)]) -> Result<Self> {
        WeightSpec::new(
            items
                .iter()
                .map(|&(num, den, exp)| CircleZero { num, den, exp })
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.zeros.len()
    }

    /// Total exponent `sum alpha_j`.
    pub fn total_exponent(&self) -> f64 {
        self.zeros.iter().map(|z| z.exp).sum()
    }

    pub fn points(&self) -> Vec<(Complex, f64)> {
        self.zeros.iter().map(|z| (z.point(), z.exp)).collect()
    }

    /// True iff the multiset of (angle, exponent) is invariant under angle negation.
    pub fn is_conjugate_closed(&self) -> bool {
        self.zeros.iter().all(|z| {
            let neg = z.angle().negate();
            self.zeros
                .iter()
                .any(|w| w.angle().reduced() == neg && w.exp == z.exp)
        })
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.zeros
            .iter()
            .all(|z| z.exp >= 0.0 && z.exp.fract() == 0.0)
    }

    /// `f(z) = prod (1 - conj(a_j) z)^alpha_j`, normalized so `f(0) = 1`, with
    /// `|f|^2 = w` on the circle. Only defined for non-negative integer exponents.
    pub fn polynomial(&self) -> Option<Poly> {
        if !self.has_integer_exponents() {
            return None;
        }
        let mut f = Poly::one();
        for z in &self.zeros {
            let factor = Poly::new(vec![ONE, -z.point().conj()]);
            for _ in 0..z.exp as usize {
                f = &f * &factor;
            }
        }
        Some(f)
    }

    /// `w(e^{iθ})`
    pub fn eval_on_circle(&self, theta: f64) -> f64 {
        let z = Complex::from_polar(1.0, theta);
        self.zeros
            .iter()
            .map(|a| (z - a.point()).norm().powf(2.0 * a.exp))
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_are_exact_on_quadrants() {
        assert_eq!(RationalAngle::new(0, 1).unwrap().unit(), ONE);
        assert_eq!(RationalAngle::new(1, 1).unwrap().unit(), -ONE);
        assert_eq!(RationalAngle::new(3, 1).unwrap().unit(), -ONE);
        assert_eq!(RationalAngle::new(1, 2).unwrap().unit(), Complex::i());
        assert_eq!(RationalAngle::new(-1, 2).unwrap().unit(), -Complex::i());
        let a = RationalAngle::new(1, 3).unwrap().unit();
        let b = RationalAngle::new(-1, 3).unwrap().unit();
        assert_eq!(a, b.conj());
        assert_eq!(RationalAngle::new(7, 3).unwrap().reduced().num, 1);
    }

    #[test]
    fn polynomial_of_opposite_zeros_is_exact() {
        let spec = WeightSpec::from_triples(&[(0, 1, 1.0), (1, 1, 3.0)]).unwrap();
        let f = spec.polynomial().unwrap();
        // (1 - z)(1 + z)^3 = 1 + 2z - 2z^3 - z^4
        assert_eq!(f, Poly::from_real(&[1.0, 2.0, 0.0, -2.0, -1.0]));
        assert!(spec.is_conjugate_closed());
    }

    #[test]
    fn conjugate_closure() {
        let pair = WeightSpec::from_triples(&[(1, 3, 1.0), (-1, 3, 1.0)]).unwrap();
        assert!(pair.is_conjugate_closed());
        let f = pair.polynomial().unwrap();
        assert!(f.coeffs().iter().all(|c| c.im == 0.0));
        let three = WeightSpec::from_triples(&[(1, 3, 1.0), (2, 3, 1.0), (-1, 3, 1.0)]).unwrap();
        assert!(!three.is_conjugate_closed());
        let unequal = WeightSpec::from_triples(&[(1, 3, 1.0), (-1, 3, 2.0)]).unwrap();
        assert!(!unequal.is_conjugate_closed());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(WeightSpec::from_triples(&[(0, 1, -0.5)]).is_err());
        assert!(WeightSpec::from_triples(&[(0, 0, 1.0)]).is_err());
        assert!(WeightSpec::from_triples(&[(1, 3, 1.0), (2, 6, 1.0)]).is_err());
        assert!(WeightSpec::from_triples(&[(0, 1, 0.5)]).unwrap().polynomial().is_none());
    }

    #[test]
    fn weight_matches_polynomial_modulus() {
        let spec = WeightSpec::from_triples(&[(1, 3, 1.0), (2, 3, 2.0), (-1, 3, 1.0)]).unwrap();
        let f = spec.polynomial().unwrap();
        for k in 0..17 {
            let t = 0.37 * k as f64;
            let z = Complex::from_polar(1.0, t);
            let lhs = f.eval(z).norm_sqr();
            assert!((lhs - spec.eval_on_circle(t)).abs() < 1e-12 * lhs.max(1.0));
        }
    }
}
