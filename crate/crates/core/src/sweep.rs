//! Per-degree analysis pipeline and parallel degree sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cases::{conjecture_metric, spurious_detect, SpuriousRecord, SPURIOUS_DELTA};
use crate::electro::{equilibrium_residual, partner, second_kind, smodel_residual, PartnerResult, SemiclassicalData};
use crate::error::{Error, Result};
use crate::moments::{levinson, toeplitz_moments_poly, toeplitz_moments_weight, MomentSequence};
use crate::opa::{normalize, opa_closed, opa_gram, OpaSolution};
use crate::poly::{Complex, Poly, ONE};
use crate::roots::find_all;
use crate::weight::WeightSpec;
use crate::MAX_DEGREE;

/// Tolerance for moments from quadrature (non-integer exponents).
pub const QUADRATURE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Weight(WeightSpec),
    /// Arbitrary `f` with `f(0) != 0`.
    Poly(Poly),
}

impl Source {
    pub fn spec(&self) -> Option<&WeightSpec> {
        match self {
            Source::Weight(w) => Some(w),
            Source::Poly(_) => None,
        }
    }

    /// `f` normalized to `f(0) = 1`, and the original `f(0)`, when `f` is a polynomial.
    pub fn normalized_poly(&self) -> Result<Option<(Poly, Complex)>> {
        match self {
            Source::Weight(w) => Ok(w.polynomial().map(|f| (f, ONE))),
            Source::Poly(f) => normalize(f).map(Some),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub delta: f64,
    pub root_tol: f64,
    /// Compute the partner and the equilibrium residuals (integer-exponent weights).
    pub electro: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            delta: SPURIOUS_DELTA,
            root_tol: 1e-12,
            electro: true,
        }
    }
}

/// Everything computed at one degree.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub n: usize,
    pub solution: Option<OpaSolution>,
    /// `p_n` for the caller's `f` (not the normalized one).
    pub p: Poly,
    pub phi: Poly,
    pub degenerate: bool,
    pub residual_norm: f64,
    pub phi_zeros: Vec<Complex>,
    pub opa_zeros: Vec<Complex>,
    pub partner: Option<PartnerResult>,
    pub equilibrium: Option<f64>,
    pub smodel_gap: Option<f64>,
    pub spurious: SpuriousRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub degenerate: bool,
    pub residual_norm: f64,
    pub phi_zeros: Vec<Complex>,
    pub opa_zeros: Vec<Complex>,
    pub partner_roots: Vec<Complex>,
    /// Coefficient removed when making the partner monic (sign log).
    pub partner_raw_leading: Option<Complex>,
    pub spurious: Vec<Complex>,
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<Complex>,
    pub pair_metric: Vec<Complex>,
    pub alt_metric: Vec<Complex>,
    pub max_equilibrium_residual: Option<f64>,
}

impl From<&Analysis> for SweepRecord {
    fn from(a: &Analysis) -> Self {
        SweepRecord {
            n: a.n,
            degenerate: a.degenerate,
            residual_norm: a.residual_norm,
            phi_zeros: a.phi_zeros.clone(),
            opa_zeros: a.opa_zeros.clone(),
            partner_roots: a.partner.as_ref().map(|p| p.roots.clone()).unwrap_or_default(),
            partner_raw_leading: a.partner.as_ref().map(|p| p.raw_leading),
            spurious: a.spurious.spurious.clone(),
            pairs: a.spurious.pairs.clone(),
            unpaired: a.spurious.unpaired.clone(),
            pair_metric: a.spurious.pair_metric.clone(),
            alt_metric: a.spurious.alt_metric.clone(),
            max_equilibrium_residual: a.equilibrium,
        }
    }
}

/// Moments are shared across a sweep; only built when needed.
struct Prepared {
    source: Source,
    f: Option<(Poly, Complex)>,
    mu: Option<MomentSequence>,
}

impl Prepared {
    fn new(source: &Source, n_max: usize) -> Result<Self> {
        if n_max > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree: n_max,
                cap: MAX_DEGREE,
            });
        }
        let f = source.normalized_poly()?;
        let mu = match (&f, source.spec()) {
            (None, Some(w)) => Some(toeplitz_moments_weight(w, n_max, QUADRATURE_TOL)?),
            _ => None,
        };
        Ok(Prepared {
            source: source.clone(),
            f,
            mu,
        })
    }

    fn analyze(&self, n: usize, opts: &SweepOptions) -> Result<Analysis> {
        let (solution, p, phi, degenerate, residual_norm) = match (&self.f, &self.mu) {
            (Some((f, f0)), _) if f.degree().unwrap_or(0) >= 1 => {
                let sol = opa_closed(f, n)?;
                let p = sol.p().scale(f0.inv());
                let phi = match &sol.opuc_monic {
                    Some(phi) => phi.clone(),
                    // Phi_n(0) = 0: take it from the Szegő recursion instead
                    None => levinson(&toeplitz_moments_poly(f, n)?, n)?.monic[n].clone(),
                };
                let degenerate = sol.is_degenerate();
                let norm = sol.residual_norm;
                (Some(sol), p, phi, degenerate, norm)
            }
            (Some((_, f0)), _) => {
                // constant f: p = 1/f, Phi_n = z^n
                (None, Poly::constant(f0.inv()), Poly::monomial(n, ONE), n > 0, 0.0)
            }
            (None, Some(mu)) => {
                let c = opa_gram(mu, ONE, n)?;
                let phi = levinson(mu, n)?.monic[n].clone();
                let norm = (1.0 - c[0].re).max(0.0).sqrt();
                let degenerate = n > 0 && c[n].norm() <= crate::opa::DEGENERATE_TOL * c.iter().map(|x| x.norm()).fold(0.0, f64::max);
                (None, Poly::new(c), phi, degenerate, norm)
            }
            (None, None) => unreachable!("weights without a polynomial always carry moments"),
        };

        let phi_zeros = if n >= 1 { find_all(&phi, opts.root_tol)?.zeros } else { Vec::new() };
        let opa_zeros = if p.degree().unwrap_or(0) >= 1 { find_all(&p, opts.root_tol)?.zeros } else { Vec::new() };

        let mut part = None;
        let mut equilibrium = None;
        let mut smodel_gap = None;
        if let (Some(spec), Some(sol), false, true) = (self.source.spec(), &solution, degenerate, opts.electro) {
            if n >= 1 && spec.m() >= 1 {
                let sc = SemiclassicalData::new(spec, n)?;
                let pr = partner(&phi, &second_kind(sol)?, &sc)?;
                let rep = equilibrium_residual(&phi_zeros, &sc, &pr.sn)?;
                let alt = smodel_residual(&phi, &phi_zeros, &sc, &pr.sn, &rep);
                let gap = rep
                    .per_zero_residual
                    .iter()
                    .zip(&alt.per_zero_residual)
                    .zip(&rep.scale)
                    .map(|((a, b), s)| (a - b).norm() / s)
                    .fold(0.0, f64::max);
                equilibrium = Some(rep.max_normalized());
                smodel_gap = Some(gap);
                part = Some(pr);
            }
        }

        let roots = part.as_ref().map(|p| p.roots.as_slice()).unwrap_or(&[]);
        let spurious = conjecture_metric(&SpuriousRecord::new(n, spurious_detect(&phi_zeros, opts.delta), roots));
        Ok(Analysis {
            n,
            solution,
            p,
            phi,
            degenerate,
            residual_norm,
            phi_zeros,
            opa_zeros,
            partner: part,
            equilibrium,
            smodel_gap,
            spurious,
        })
    }
}

pub fn analyze(source: &Source, n: usize, opts: &SweepOptions) -> Result<Analysis> {
    Prepared::new(source, n)?.analyze(n, opts)
}

/// Analyses for every degree in `ns`, computed in parallel and returned in input order.
pub fn analyze_many(source: &Source, ns: &[usize], opts: &SweepOptions) -> Result<Vec<Analysis>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let prep = Prepared::new(source, n_max)?;
    ns.par_iter().map(|&n| prep.analyze(n, opts)).collect()
}

pub fn run_sweep(source: &Source, ns: &[usize], opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    Ok(analyze_many(source, ns, opts)?.iter().map(SweepRecord::from).collect())
}

/// `from, from + step, ...` up to and including `to`.
pub fn degree_range(from: usize, to: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || from > to {
        return Err(Error::InvalidInput(format!("empty degree range {from}..={to} step {step}")));
    }
    if to > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: to,
            cap: MAX_DEGREE,
        });
    }
    Ok((from..=to).step_by(step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_zero() -> Source {
        Source::Weight(WeightSpec::from_triples(&[(1, 3, 1.0), (2, 3, 1.0), (-1, 3, 1.0)]).unwrap())
    }

    #[test]
    fn sweep_is_ordered_and_matches_single_runs() {
        let opts = SweepOptions::default();
        let ns = degree_range(20, 30, 5).unwrap();
        assert_eq!(ns, vec![20, 25, 30]);
        let recs = run_sweep(&three_zero(), &ns, &opts).unwrap();
        for (r, &n) in recs.iter().zip(&ns) {
            assert_eq!(r.n, n);
            let single = SweepRecord::from(&analyze(&three_zero(), n, &opts).unwrap());
            assert_eq!(*r, single);
            assert_eq!(r.phi_zeros.len(), n);
            assert_eq!(r.partner_roots.len(), 2);
            assert!(r.max_equilibrium_residual.unwrap() < 1e-6);
        }
    }

    #[test]
    fn degenerate_degree_still_has_szego_zeros() {
        let src = Source::Weight(WeightSpec::from_triples(&[(1, 2, 1.0), (-1, 2, 1.0)]).unwrap());
        let a = analyze(&src, 7, &SweepOptions::default()).unwrap();
        assert!(a.degenerate);
        assert!(a.partner.is_none());
        assert_eq!(a.phi_zeros.len(), 7);
        assert!(a.phi_zeros.iter().any(|z| z.norm() < 1e-8));
        assert_eq!(a.opa_zeros.len(), 6);
    }

    #[test]
    fn inline_polynomial_is_rescaled() {
        let f = Poly::from_real(&[2.0, -2.0]);
        let a = analyze(&Source::Poly(f.clone()), 5, &SweepOptions::default()).unwrap();
        let b = analyze(&Source::Poly(Poly::from_real(&[1.0, -1.0])), 5, &SweepOptions::default()).unwrap();
        for k in 0..=5 {
            assert!((a.p.coeff(k) * 2.0 - b.p.coeff(k)).norm() < 1e-14);
        }
        assert!((a.residual_norm - b.residual_norm).abs() < 1e-14);
        assert!(a.partner.is_none());
    }

    #[test]
    fn fractional_exponent_uses_quadrature_moments() {
        let src = Source::Weight(WeightSpec::from_triples(&[(0, 1, 0.5)]).unwrap());
        let a = analyze(&src, 8, &SweepOptions::default()).unwrap();
        assert_eq!(a.phi_zeros.len(), 8);
        assert!(a.phi_zeros.iter().all(|z| z.norm() < 1.0));
        assert!(a.opa_zeros.iter().all(|z| z.norm() > 1.0));
        assert!(a.residual_norm > 0.0 && a.residual_norm < 1.0);
    }

    #[test]
    fn cap_and_empty_ranges_are_rejected() {
        assert!(matches!(degree_range(1, MAX_DEGREE + 1, 1), Err(Error::DegreeCap { .. })));
        assert!(degree_range(5, 4, 1).is_err());
        assert!(degree_range(1, 4, 0).is_err());
    }
}
