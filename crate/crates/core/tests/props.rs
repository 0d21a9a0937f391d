//! Property tests: classical Gamma-function identities on random complex
//! arguments, and structural invariants of the representation algebra on
//! randomly generated factor lists.

mod support;

use std::f64::consts::PI;

use gamma_moments::analysis::{params, spectrum};
use gamma_moments::catalog;
use gamma_moments::specfun::{gamma, ln_gamma_real, log_gamma};
use gamma_moments::{Complex64, GammaFactor, GammaTypeRep};
use proptest::prelude::*;

fn factor_strategy() -> impl Strategy<Value = GammaFactor> {
    (prop_oneof![0.25f64..3.0, -3.0f64..-0.25], -2.0f64..3.0)
        .prop_map(|(a, b)| GammaFactor { a, b })
}

fn rep_strategy() -> impl Strategy<Value = GammaTypeRep> {
    (
        -3.0f64..3.0,
        -2.0f64..2.0,
        prop::collection::vec(factor_strategy(), 0..3),
        prop::collection::vec(factor_strategy(), 0..3),
    )
        .prop_map(|(log_c, d, num, den)| {
            GammaTypeRep::new(log_c, 1, d, num, den).expect("generated reps are valid")
        })
}

proptest! {
    #[test]
    fn log_gamma_satisfies_the_recurrence(re in 0.1f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        let scale = 1.0 + lhs.norm();
        prop_assert!(
            (lhs - rhs).norm() <= 1e-12 * scale,
            "z = {z}: {lhs} vs {rhs}"
        );
    }

    #[test]
    fn reflection_formula_holds(re in 0.05f64..0.95, im in -12.0f64..12.0) {
        let z = Complex64::new(re, im);
        let lhs = gamma(z) * gamma(Complex64::new(1.0 - re, -im));
        let rhs = Complex64::new(PI, 0.0) / (z * PI).sin();
        prop_assert!(
            (lhs - rhs).norm() <= 1e-11 * rhs.norm(),
            "z = {z}: {lhs} vs {rhs}"
        );
    }

    #[test]
    fn multiplication_formula_holds(
        re in 0.1f64..4.0,
        im in -5.0f64..5.0,
        m in prop::sample::select(vec![2u32, 3, 5]),
    ) {
        let z = Complex64::new(re, im);
        let mf = f64::from(m);
        let lhs = gamma(z * mf);
        let mut rhs = Complex64::new((2.0 * PI).powf((1.0 - mf) / 2.0), 0.0)
            * ((z * mf - 0.5) * mf.ln()).exp();
        for k in 0..m {
            rhs *= gamma(z + f64::from(k) / mf);
        }
        prop_assert!(
            (lhs - rhs).norm() <= 1e-11 * lhs.norm(),
            "m = {m}, z = {z}: {lhs} vs {rhs}"
        );
    }

    #[test]
    fn real_log_gamma_matches_asymptotic_oracle(x in 30.0f64..300.0) {
        let want = support::ln_gamma_oracle(x);
        prop_assert!((ln_gamma_real(x) - want).abs() <= 1e-13 * want.abs());
    }

    #[test]
    fn rep_json_round_trip_is_exact(rep in rep_strategy()) {
        let json = rep.to_json();
        let back = GammaTypeRep::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
    }

    #[test]
    fn power_commutes_with_argument_scaling(
        idx in 0usize..26,
        alpha in prop_oneof![0.2f64..2.0, -2.0f64..-0.2],
        sigma in -1.0f64..1.5,
        t in 0.5f64..8.0,
    ) {
        // F.power(alpha) is the law of X^alpha: its transform at s is F(alpha s)
        let entry = &catalog::default_entries()[idx];
        let powered = entry.rep.power(alpha).unwrap();
        let s = Complex64::new(sigma, t);
        let direct = entry.rep.evaluate(s * alpha).unwrap();
        let scaled = powered.evaluate(s).unwrap();
        prop_assert!(
            (direct - scaled).norm() <= 1e-11 * (1.0 + direct.norm()),
            "{} alpha = {alpha} s = {s}: {direct} vs {scaled}",
            entry.name
        );
    }

    #[test]
    fn gamma_invariants_balance(rep in rep_strategy()) {
        // (gamma + gamma')/2 counts only the positive-slope factors
        let p = params(&rep);
        let slope: f64 = rep.num.iter().filter(|f| f.a > 0.0).map(|f| f.a).sum::<f64>()
            - rep.den.iter().filter(|f| f.a > 0.0).map(|f| f.a).sum::<f64>();
        prop_assert!(
            ((p.gamma + p.gamma_prime) / 2.0 - slope).abs() <= 1e-12 * (1.0 + slope.abs())
        );
    }

    #[test]
    fn strip_interior_is_pole_free(rep in rep_strategy()) {
        let p = params(&rep);
        let lo = p.rho_minus.max(-40.0);
        let hi = p.rho_plus.min(40.0);
        prop_assume!(hi - lo > 1e-6);
        let margin = 1e-6 * (1.0 + lo.abs().max(hi.abs()));
        for e in spectrum(&rep, lo + margin, hi - margin) {
            prop_assert!(
                e.order < 0,
                "pole of order {} at {} inside ({lo}, {hi})",
                e.order,
                e.location
            );
        }
    }

    #[test]
    fn equivalence_is_reflexive(rep in rep_strategy()) {
        for probe in [-0.7, -0.3, 0.3, 0.7] {
            prop_assume!(!rep.factor_singular_near(probe));
        }
        let w = rep.equivalent(&rep).unwrap().expect("a rep matches itself");
        prop_assert!((w.c - 1.0).abs() <= 1e-9);
        prop_assert!((w.d - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn zero_gamma_entries_have_nonpositive_delta() {
    // bounded moment functions on vertical lines force delta <= 0
    for e in catalog::default_entries() {
        let p = params(&e.rep);
        if p.gamma.abs() <= 1e-12 {
            assert!(p.delta <= 1e-12, "{}: gamma = 0 but delta = {}", e.name, p.delta);
        }
    }
}
