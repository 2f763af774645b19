//! All zeros of a complex polynomial by Aberth–Ehrlich simultaneous iteration,
//! followed by Newton polishing and a simplicity diagnostic.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Complex, Poly, ZERO};
use crate::MAX_DEGREE;

/// Relative separation below which two zeros are reported as one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub zeros: Vec<Complex>,
    /// `|p(z_k)| / (sum |a_i| max(1, |z_k|)^deg)`
    pub residuals: Vec<f64>,
    pub min_gap: f64,
    /// `true` where a zero sits within `CLUSTER_TOL·max(1,|z|)` of another.
    pub clustered: Vec<bool>,
}

impl ZeroSet {
    pub fn is_simple(&self) -> bool {
        !self.clustered.iter().any(|&c| c)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-12,
            max_sweeps: 200,
        }
    }
}

pub fn find_all(p: &Poly, tol: f64) -> Result<ZeroSet> {
    find_all_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

/// Evaluation helpers on monic-normalized coefficients, switching to the
/// reversed polynomial outside the unit disk so large degrees never overflow.
struct Evaluator<'a> {
    a: &'a [Complex],
    abs: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    fn new(a: &'a [Complex]) -> Self {
        Evaluator {
            a,
            abs: a.iter().map(|c| c.norm()).collect(),
        }
    }

    fn deg(&self) -> usize {
        self.a.len() - 1
    }

    /// Newton correction `p(z)/p'(z)` together with the backward-error ratio
    /// `|p(z)| / sum |a_i||z|^i`.
    fn newton(&self, z: Complex) -> (Complex, f64) {
        let n = self.deg();
        if z.norm() <= 1.0 {
            let (mut p, mut dp) = (ZERO, ZERO);
            let r = z.norm();
            let mut s = 0.0;
            for (c, m) in self.a.iter().zip(&self.abs).rev() {
                dp = dp * z + p;
                p = p * z + c;
                s = s * r + m;
            }
            (p / dp, p.norm() / s)
        } else {
            // q(w) = sum a_k w^(n-k), w = 1/z: p(z) = z^n q(w)
            let w = z.inv();
            let r = w.norm();
            let (mut q, mut dq) = (ZERO, ZERO);
            let mut s = 0.0;
            for (c, m) in self.a.iter().zip(&self.abs) {
                dq = dq * w + q;
                q = q * w + c;
                s = s * r + m;
            }
            // p'(z) = z^(n-1) (n q(w) - w q'(w))
            let denom = q * n as f64 - w * dq;
            (z * q / denom, q.norm() / s)
        }
    }

    /// Residual in the reporting metric `|p(z)| / (sum|a| max(1,|z|)^n)`.
    fn residual(&self, z: Complex) -> f64 {
        let total: f64 = self.abs.iter().sum();
        if z.norm() <= 1.0 {
            self.a.iter().rev().fold(ZERO, |acc, &c| acc * z + c).norm() / total
        } else {
            let w = z.inv();
            self.a.iter().fold(ZERO, |acc, &c| acc * w + c).norm() / total
        }
    }
}

pub fn find_all_with(p: &Poly, opts: RootOptions) -> Result<ZeroSet> {
    let degree = p.degree().unwrap_or(0);
    if degree < 1 {
        return Err(Error::DegreeTooLow { degree, min: 1 });
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree,
            cap: MAX_DEGREE,
        });
    }
    let lead = p.leading();
    let monic: Vec<Complex> = p.coeffs().iter().map(|&c| c / lead).collect();

    // exact zeros at the origin are split off before iterating
    let origin = monic.iter().take_while(|c| **c == ZERO).count();
    let core = &monic[origin..];
    let mut zeros = vec![ZERO; origin];
    let mut sweeps = 0;

    if core.len() > 1 {
        let eval = Evaluator::new(core);
        let n = eval.deg();
        let radius = (core[0].norm() / core[n].norm()).powf(1.0 / n as f64);
        let mut z: Vec<Complex> = (0..n)
            .map(|k| {
                let jitter = 1e-4 * ((k as f64 * 0.618_033_988_75).fract() - 0.5);
                let angle = 2.0 * PI * k as f64 / n as f64 + 0.4 / n as f64;
                Complex::from_polar(radius * (1.0 + jitter), angle + jitter)
            })
            .collect();
        let mut done = vec![false; n];
        let bound = 4.0 * n as f64 * f64::EPSILON;

        while sweeps < opts.max_sweeps && done.iter().any(|d| !d) {
            sweeps += 1;
            for k in 0..n {
                if done[k] {
                    continue;
                }
                let (ratio, bwd) = eval.newton(z[k]);
                if bwd <= bound || !ratio.is_finite() {
                    done[k] = true;
                    continue;
                }
                let repulsion: Complex = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[k] -= step;
                }
                if step.norm() <= f64::EPSILON * z[k].norm() {
                    done[k] = true;
                }
            }
        }

        // Newton polish, keeping a step only when the residual drops
        for zk in z.iter_mut() {
            for _ in 0..2 {
                let (ratio, _) = eval.newton(*zk);
                let cand = *zk - ratio;
                if cand.is_finite() && eval.residual(cand) < eval.residual(*zk) {
                    *zk = cand;
                } else {
                    break;
                }
            }
        }
        zeros.extend(z);
    }

    let eval = Evaluator::new(&monic);
    sort_zeros(&mut zeros);
    let residuals: Vec<f64> = zeros.iter().map(|&z| eval.residual(z)).collect();
    let clustered = cluster_flags(&zeros);
    let min_gap = if zeros.len() >= 2 {
        min_pairwise_gap(&zeros)?
    } else {
        f64::INFINITY
    };
    let set = ZeroSet {
        zeros,
        residuals,
        min_gap,
        clustered,
    };
    let worst = set.residuals.iter().copied().fold(0.0, f64::max);
    // stalled sweeps are accepted when the polished residuals pass
    if worst > opts.tol {
        return Err(Error::NoConvergence {
            sweeps,
            worst,
            best: Box::new(set),
        });
    }
    Ok(set)
}

/// Deterministic order: by argument in `(-π, π]`, then by modulus.
pub fn sort_zeros(zs: &mut [Complex]) {
    zs.sort_by(|a, b| {
        a.arg()
            .total_cmp(&b.arg())
            .then(a.norm().total_cmp(&b.norm()))
    });
}

pub fn min_pairwise_gap(zs: &[Complex]) -> Result<f64> {
    if zs.len() < 2 {
        return Err(Error::TooFewPoints(zs.len()));
    }
    let mut gap = f64::INFINITY;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            gap = gap.min((zs[i] - zs[j]).norm());
        }
    }
    Ok(gap)
}

fn cluster_flags(zs: &[Complex]) -> Vec<bool> {
    let mut flags = vec![false; zs.len()];
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let scale = zs[i].norm().max(zs[j].norm()).max(1.0);
            if (zs[i] - zs[j]).norm() < CLUSTER_TOL * scale {
                flags[i] = true;
                flags[j] = true;
            }
        }
    }
    flags
}
