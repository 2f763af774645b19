use proptest::prelude::*;

use opalab::cases::{conjecture_metric, conjugate_partner_limit, conjugate_t_solve, SpuriousRecord, PAIRING_CAP};
use opalab::electro::{gradient_energy, invert_config, ChargeSystem, FixedCharge};
use opalab::moments::{levinson, toeplitz_moments_poly};
use opalab::opa::{opa_closed, opa_gram_poly, residual_poly};
use opalab::output::{csv_string, Kind};
use opalab::sweep::{analyze, Source, SweepOptions, SweepRecord};
use opalab::weight::{CircleZero, RationalAngle, WeightSpec};
use opalab::{Complex, Poly};

fn complex() -> impl Strategy<Value = Complex> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex::new(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(complex(), 1..=max_deg + 1).prop_filter_map("nonzero", |v| Poly::try_new(v).ok())
}

/// Up to three distinct singular points with exponents 1 or 2.
fn weight() -> impl Strategy<Value = WeightSpec> {
    prop::collection::btree_set(-5i64..6, 1..=3).prop_flat_map(|nums| {
        let nums: Vec<i64> = nums.into_iter().collect();
        let len = nums.len();
        prop::collection::vec(1u32..=2, len).prop_map(move |exps| {
            WeightSpec::new(
                nums.iter()
                    .zip(&exps)
                    .map(|(&num, &e)| CircleZero { num, den: 6, exp: e as f64 })
                    .collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divrem_reconstructs(a in poly(12), b in poly(5)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert!(r.degree().unwrap_or(0) < b.degree().unwrap_or(0).max(1));
        let back = &(&q * &b) + &r;
        let scale = a.max_abs().max(q.max_abs() * b.max_abs());
        for k in 0..=a.degree().unwrap() {
            prop_assert!((back.coeff(k) - a.coeff(k)).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn reversal_is_an_involution(p in poly(10), extra in 0usize..3) {
        let d = p.degree().unwrap() + extra;
        prop_assert_eq!(p.reverse(d).unwrap().reverse(d).unwrap(), p);
    }

    #[test]
    fn verblunsky_inside_disk_and_paths_agree(w in weight(), n in 1usize..40) {
        let f = w.polynomial().unwrap();
        let fam = levinson(&toeplitz_moments_poly(&f, n).unwrap(), n).unwrap();
        prop_assert!(fam.verblunsky.iter().all(|a| a.norm() < 1.0));
        prop_assert!(fam.norms.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12)));
        let closed = opa_closed(&f, n).unwrap();
        let gram = opa_gram_poly(&f, n).unwrap();
        for k in 0..=n {
            prop_assert!((closed.c[k] - gram.coeff(k)).norm() <= 1e-8 * closed.p().max_abs());
        }
        let (_, r) = residual_poly(&f, &closed.p());
        prop_assert!((r - closed.residual_norm).abs() <= 1e-12);
        prop_assert!(r < 1.0);
    }

    #[test]
    fn zeros_straddle_the_circle(w in weight(), n in 2usize..60) {
        let a = analyze(&Source::Weight(w), n, &SweepOptions { electro: false, ..SweepOptions::default() }).unwrap();
        prop_assert!(a.phi_zeros.iter().all(|z| z.norm() < 1.0 + 1e-10));
        prop_assert!(a.opa_zeros.iter().all(|z| z.norm() > 1.0 - 1e-10));
    }

    #[test]
    fn equilibrium_holds_for_random_weights(w in weight(), n in 20usize..60) {
        let a = analyze(&Source::Weight(w.clone()), n, &SweepOptions::default()).unwrap();
        if !a.degenerate {
            prop_assert!(a.equilibrium.unwrap() <= 1e-6);
            prop_assert!(a.smodel_gap.unwrap() <= 1e-9);
            let pr = a.partner.unwrap();
            prop_assert!(pr.sn.degree().unwrap() < w.m());
            prop_assert!(pr.truncation_residual <= 1e-8);
        }
    }

    #[test]
    fn inversion_identity(
        free in prop::collection::vec((0.2..3.0f64, -3.1..3.1f64), 1..15),
        fixed in prop::collection::vec((0.3..2.5f64, -3.1..3.1f64, -3.0..3.0f64), 1..5),
    ) {
        let cs = ChargeSystem {
            fixed: fixed.iter().map(|&(r, t, q)| FixedCharge { position: Complex::from_polar(r, t), magnitude: q }).collect(),
            free: free.iter().map(|&(r, t)| Complex::from_polar(r, t)).collect(),
        };
        let n = cs.free.len();
        let g = gradient_energy(&cs);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let inv = invert_config(&cs, n).unwrap();
        let gi = gradient_energy(&inv).unwrap();
        for k in 0..n {
            let zs = inv.free[k];
            let want = -g[k].conj() / (zs * zs);
            let scale = 1.0 + want.norm() + gi[k].norm();
            prop_assert!((gi[k] - want).norm() <= 1e-9 * scale * (1.0 + 1.0 / zs.norm()).powi(2));
        }
        let back = invert_config(&inv, n).unwrap();
        for (a, b) in back.free.iter().zip(&cs.free) {
            prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }

    #[test]
    fn pairs_respect_the_cap(
        sp in prop::collection::vec(complex(), 0..6),
        roots in prop::collection::vec(complex(), 0..6),
        n in 10usize..200,
    ) {
        let rec = conjecture_metric(&SpuriousRecord::new(n, sp.clone(), &roots));
        prop_assert_eq!(rec.pairs.len() + rec.unpaired.len(), sp.len());
        prop_assert_eq!(rec.pair_metric.len(), rec.pairs.len());
        for &(i, j) in &rec.pairs {
            prop_assert!((rec.spurious[i] - rec.partner_roots_inside[j]).norm() < PAIRING_CAP);
        }
        prop_assert!(rec.partner_roots_inside.iter().all(|s| s.norm() < 1.0));
    }

    #[test]
    fn csv_row_count_and_json_round_trip(w in weight(), n in 1usize..20) {
        let rec = SweepRecord::from(&analyze(&Source::Weight(w), n, &SweepOptions::default()).unwrap());
        let csv = csv_string(std::slice::from_ref(&rec), &Kind::ALL);
        let rows = rec.phi_zeros.len() + rec.opa_zeros.len() + rec.partner_roots.len() + rec.spurious.len();
        prop_assert_eq!(csv.lines().count(), rows + 1);
        let json = serde_json::to_string(&rec).unwrap();
        let back: SweepRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rec);
    }

    #[test]
    fn conjugate_case_invariants(k in 1i64..6, l in 2i64..7, n in 5usize..120) {
        prop_assume!(k % l != 0);
        let theta = RationalAngle::new(k, l).unwrap();
        let case = conjugate_t_solve(theta, n).unwrap();
        // T lies on the circle through 0, 1 and 1 + e^{2iθ}
        let q = theta.unit() * theta.unit();
        let centre = (Complex::new(1.0, 0.0) - q).inv();
        prop_assert!(((case.big_t - centre).norm() - centre.norm()).abs() <= 1e-9 * centre.norm().max(1.0));
        if let Some(tr) = case.t_real {
            for i in 0..4 {
                prop_assert!((case.t[i] - Complex::new(tr[i], 0.0)).norm() <= 1e-10 * (1.0 + tr[i].abs()));
            }
        }
        prop_assert!(case.t.iter().all(|t| t.im.abs() <= 1e-10 * (1.0 + t.re.abs())));
        prop_assert_eq!(case.n_prime, n % (2 * l as usize));
    }
}

/// Along each class of `n mod l`, the partner root settles down, except in
/// classes with `cos((n'+3)θ) = 0`, where it escapes to infinity.
#[test]
fn partner_roots_converge_along_congruence_classes() {
    for (k, l) in [(1i64, 3i64), (1, 4), (2, 5)] {
        let theta = RationalAngle::new(k, l).unwrap();
        let lu = l as usize;
        for r in 0..lu {
            let s = |n: usize| conjugate_t_solve(theta, n).unwrap().sn;
            if conjugate_partner_limit(theta, r).is_none() {
                let (a, b) = (s(60 + r).unwrap(), s(240 + r).unwrap());
                assert!(b.norm() > 2.0 * a.norm(), "θ={k}π/{l}, class {r}: {a} -> {b}");
                continue;
            }
            let early = (s(60 + r), s(60 + r + lu));
            let late = (s(240 + r), s(240 + r + lu));
            if let ((Some(a), Some(b)), (Some(c), Some(d))) = (early, late) {
                let (e, f) = ((a - b).norm(), (c - d).norm());
                assert!(f <= e * 0.5 + 1e-12, "θ={k}π/{l}, class {r}: {e} -> {f}");
            }
        }
    }
}
