mod support;

use gamma_moments::analysis::{
    imag_axis_asymptotic, laurent, nu, params, pole_density, real_axis_asymptotic, rho_bounds,
    safe_abscissa, sine_margin, spectrum, strip_asymptotic,
};
use gamma_moments::{catalog, Complex64, GammaFactor, GammaTypeRep};
use support::assert_rel;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn rep(num: &[(f64, f64)], den: &[(f64, f64)]) -> GammaTypeRep {
    GammaTypeRep::new(
        0.0,
        1,
        0.0,
        num.iter().map(|&(a, b)| GammaFactor::new(a, b)).collect(),
        den.iter().map(|&(a, b)| GammaFactor::new(a, b)).collect(),
    )
    .unwrap()
}

#[test]
fn spectrum_merges_repeated_poles_and_cancels_pairs() {
    // Gamma(s+1)^2 / Gamma(s+2): order 2 at -1, then 2 - 1 = 1 deeper down.
    let r = rep(&[(1.0, 1.0), (1.0, 1.0)], &[(1.0, 2.0)]);
    let sp = spectrum(&r, -3.5, 0.0);
    let got: Vec<(f64, i32)> = sp.iter().map(|e| (e.location, e.order)).collect();
    assert_eq!(got, vec![(-3.0, 1), (-2.0, 1), (-1.0, 2)]);

    // Identical factor lists cancel to an empty spectrum.
    let trivial = rep(&[(1.0, 1.0)], &[(1.0, 1.0)]);
    assert!(spectrum(&trivial, -50.0, 50.0).is_empty());

    // Gamma(s+2) / Gamma(s+1) = s + 1: a single net zero at -1.
    let linear = rep(&[(1.0, 2.0)], &[(1.0, 1.0)]);
    let sp = spectrum(&linear, -10.0, 0.0);
    assert_eq!(sp.len(), 1);
    assert_eq!((sp[0].location, sp[0].order), (-1.0, -1));
}

#[test]
fn nu_and_pole_density_agree_with_spectrum() {
    let r = rep(&[(1.0, 1.0), (1.0, 1.0)], &[(1.0, 2.0)]);
    assert_eq!(nu(&r, -1.0), 2);
    assert_eq!(nu(&r, -2.0), 1);
    assert_eq!(nu(&r, 0.25), 0);
    assert_eq!(pole_density(&r, -3.5), 4);
    let linear = rep(&[(1.0, 2.0)], &[(1.0, 1.0)]);
    assert_eq!(pole_density(&linear, -5.0), -1, "zeros subtract");

    // Slope -1 factors put poles on the positive side. This rep reduces to
    // (1 - s)^(-2): everything past s = 1 cancels against the denominator.
    let right = catalog::make("gamma_n_mgf:2").unwrap().rep;
    assert_eq!(pole_density(&right, 3.5), 2);
    assert_eq!(nu(&right, 1.0), 2);
    assert_eq!(pole_density(&right, -3.5), 0);
}

#[test]
fn rho_bounds_handles_finite_and_infinite_sides() {
    // The -2/3 numerator pole cancels against a denominator zero, so the
    // strip reaches down to the Gamma(s+1) pole at -1.
    let area = catalog::make("brownian_sup_area").unwrap().rep;
    let strip = rho_bounds(&area);
    assert_rel(strip.lo, -1.0, 1e-12, "area rho-");
    assert!(strip.hi.is_infinite() && strip.hi > 0.0, "area rho+ infinite");

    let stable = catalog::make("stable:0.7").unwrap().rep;
    let strip = rho_bounds(&stable);
    assert!(strip.lo.is_infinite() && strip.lo < 0.0, "stable rho- infinite");
    assert_rel(strip.hi, 0.7, 1e-12, "stable rho+");
}

#[test]
fn laurent_residues_of_simple_poles() {
    // Gamma(s): residue at -n is (-1)^n / n!.
    let g = rep(&[(1.0, 0.0)], &[]);
    for n in 0..4u32 {
        let l = laurent(&g, -(n as f64), 4).unwrap();
        assert_eq!(l.coefficients.len(), 1);
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let want = if n % 2 == 0 { 1.0 } else { -1.0 } / fact.max(1.0);
        assert_rel(l.coefficients[0], want, 1e-12, "Gamma residue");
    }
    // Regular points and zeros produce an empty singular part.
    assert!(laurent(&g, 0.5, 3).unwrap().coefficients.is_empty());
}

#[test]
fn laurent_higher_order_poles_via_contour() {
    // Gamma(s)^2 = 1/s^2 - 2 EulerGamma / s + O(1).
    let g2 = rep(&[(1.0, 0.0), (1.0, 0.0)], &[]);
    let l = laurent(&g2, 0.0, 2).unwrap();
    assert_eq!(l.coefficients.len(), 2);
    assert_rel(l.coefficients[1], 1.0, 1e-10, "order-2 coefficient");
    assert_rel(l.coefficients[0], -2.0 * EULER_GAMMA, 1e-10, "order-1 coefficient");

    // (1 - s)^(-3): exact singular part is -(s - 1)^(-3).
    let m3 = catalog::make("gamma_n_mgf:3").unwrap().rep;
    let l = laurent(&m3, 1.0, 3).unwrap();
    assert_eq!(l.coefficients.len(), 3);
    assert!(l.coefficients[0].abs() < 1e-9, "no first-order part");
    assert!(l.coefficients[1].abs() < 1e-9, "no second-order part");
    assert_rel(l.coefficients[2], -1.0, 1e-10, "third-order coefficient");
}

#[test]
fn params_match_hand_computation() {
    let mut r = rep(&[(2.0, 3.0)], &[(0.5, 0.25)]);
    r.log_c = 0.3;
    r.d = -0.7;
    let p = params(&r);
    assert_rel(p.gamma, 1.5, 1e-14, "gamma");
    assert_rel(p.gamma_prime, 1.5, 1e-14, "gamma'");
    assert_rel(p.delta, 2.75, 1e-14, "delta");
    assert_rel(p.kappa, 2.5 * std::f64::consts::LN_2 - 0.7, 1e-14, "kappa");
    assert_rel(p.c1, 0.3f64.exp() * 2.0f64.powf(2.25), 1e-13, "C1");
}

#[test]
fn vertical_line_asymptotics_track_the_function() {
    let area = catalog::make("brownian_sup_area").unwrap().rep;
    let ratio_at = |t: f64| {
        area.evaluate(Complex64::new(0.0, t)).unwrap().norm() / imag_axis_asymptotic(&area, t)
    };
    let r60 = ratio_at(60.0);
    let r120 = ratio_at(120.0);
    assert!((r60 - 1.0).abs() < 0.02, "imaginary axis ratio at t=60: {r60}");
    assert!((r120 - 1.0).abs() < (r60 - 1.0).abs(), "error must shrink with t");

    let sigma = 0.8;
    let rs = area.evaluate(Complex64::new(sigma, 120.0)).unwrap().norm()
        / strip_asymptotic(&area, sigma, 120.0);
    assert!((rs - 1.0).abs() < 0.02, "strip ratio at sigma=0.8: {rs}");
}

#[test]
fn real_axis_asymptotic_sharp_on_the_pole_free_side() {
    let area = catalog::make("brownian_sup_area").unwrap().rep;
    let ratio_at =
        |s: f64| area.evaluate_real(s).unwrap() / real_axis_asymptotic(&area, s);
    let r30 = ratio_at(30.0);
    let r60 = ratio_at(60.0);
    assert!((r30 - 1.0).abs() < 0.02, "real axis ratio at s=30: {r30}");
    assert!((r60 - 1.0).abs() < (r30 - 1.0).abs(), "error must shrink with s");
}

#[test]
fn safe_abscissa_improves_the_sine_margin() {
    // Factor arguments hit the integer lattice at every integer s here,
    // even though most of those points cancel to regular values.
    let r = catalog::make("gamma_n_mgf:2").unwrap().rep;
    let s = safe_abscissa(&r, 3.0);
    assert!((s - 3.0).abs() <= 0.5);
    assert!(sine_margin(&r, s) >= sine_margin(&r, 3.0));
    assert!(sine_margin(&r, s) > 0.5, "margin at the chosen point");
    assert_eq!(r.net_order_at(s), 0);
    assert!(r.evaluate_real(s).is_ok());
}
