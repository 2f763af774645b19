//! Double-double complex arithmetic for the ill-conditioned steps: the
//! remainder system of the closed formula, the exact division by `f f*`, and
//! residuals for iterative refinement of Gram solves.

use num_complex::Complex;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::poly::Complex as C64;

pub(crate) type Dd = Complex<TwoFloat>;

pub(crate) fn lift(c: C64) -> Dd {
    Complex::new(TwoFloat::from(c.re), TwoFloat::from(c.im))
}

pub(crate) fn lower(c: Dd) -> C64 {
    C64::new(f64::from(c.re), f64::from(c.im))
}

pub(crate) fn zero() -> Dd {
    Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0))
}

pub(crate) fn one() -> Dd {
    Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0))
}

/// Quotient accurate to double-double precision. `TwoFloat`'s own division
/// only returns a double-precision quotient, so one correction step is applied.
pub(crate) fn div_real(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = TwoFloat::from(a.hi() / b.hi());
    let r = a - q1 * b;
    let q2 = TwoFloat::from(r.hi() / b.hi());
    let r2 = r - q2 * b;
    q1 + q2 + TwoFloat::from(r2.hi() / b.hi())
}

pub(crate) fn div(a: Dd, b: Dd) -> Dd {
    let den = b.re * b.re + b.im * b.im;
    let num = a * b.conj();
    Complex::new(div_real(num.re, den), div_real(num.im, den))
}

pub(crate) fn abs_approx(c: &Dd) -> f64 {
    f64::from(c.re).hypot(f64::from(c.im))
}

pub(crate) fn mul_polys(a: &[Dd], b: &[Dd]) -> Vec<Dd> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = v[i + j] + *x * *y;
        }
    }
    v
}

/// Long division of `num` by `den` (ascending coefficients, nonzero leading
/// coefficient of `den`). Returns quotient and remainder.
pub(crate) fn divrem(num: &[Dd], den: &[Dd]) -> (Vec<Dd>, Vec<Dd>) {
    let dq = den.len() - 1;
    let lead = den[dq];
    let mut rem = num.to_vec();
    if rem.len() <= dq {
        return (Vec::new(), rem);
    }
    let mut quot = vec![zero(); rem.len() - dq];
    for k in (dq..rem.len()).rev() {
        let c = div(rem[k], lead);
        quot[k - dq] = c;
        rem[k] = zero();
        for i in 0..dq {
            rem[k - dq + i] = rem[k - dq + i] - c * den[i];
        }
    }
    rem.truncate(dq);
    (quot, rem)
}

/// Gaussian elimination with partial pivoting; `a` is row-major `n x n`.
pub(crate) fn solve(mut a: Vec<Vec<Dd>>, mut b: Vec<Dd>, context: &str) -> Result<Vec<Dd>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(abs_approx))
        .fold(0.0, f64::max);
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|r| (r, abs_approx(&a[r][col])))
            .fold((col, -1.0), |best, x| if x.1 > best.1 { x } else { best });
        if !(mag > 1e-28 * scale) {
            return Err(Error::Singular {
                context: context.to_string(),
            });
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        for r in col + 1..n {
            let factor = div(a[r][col], p);
            if factor == zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c];
                a[r][c] = a[r][c] - factor * v;
            }
            let v = b[col];
            b[r] = b[r] - factor * v;
        }
    }
    let mut x = vec![zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s = s - a[r][c] * x[c];
        }
        x[r] = div(s, a[r][r]);
    }
    Ok(x)
}
