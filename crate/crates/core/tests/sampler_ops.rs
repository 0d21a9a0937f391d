//! Monte-Carlo checks: every stochastic model in the catalog against its
//! predicted moment function, plus the reporting and reproducibility
//! machinery itself.

mod support;

use gamma_moments::catalog::{self, lvz_transform};
use gamma_moments::sampler::{
    ks_statistic, sample_brownian_sup_area, sample_brownian_sup_area_scaled, sample_many,
    sample_mittag_leffler, sample_rep, sample_stable, sample_urn, verify_density,
    verify_double_laplace, verify_moments, RngStream,
};
use gamma_moments::specfun::gamma_real;
use gamma_moments::Error;
use rand::Rng;
use statrs::function::erf::erfc;

/// Mean and standard error of `f` over `n` fresh draws.
fn monte_carlo<R: Rng + ?Sized>(n: usize, rng: &mut R, mut f: impl FnMut(&mut R) -> f64) -> (f64, f64) {
    let (mut sum, mut sumsq) = (0.0, 0.0);
    for _ in 0..n {
        let v = f(rng);
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / n as f64;
    let var = (sumsq - sum * sum / n as f64) / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

fn assert_within_se(mean: f64, want: f64, se: f64, what: &str) {
    assert!(
        (mean - want).abs() <= 4.0 * se,
        "{what}: {mean} vs {want}, se {se}"
    );
}

#[test]
fn stable_sampler_matches_inverse_moment() {
    // E S^(-1) = Gamma(1 + 1/alpha) follows from the moment formula at s = -1.
    let alpha = 0.7;
    let mut rng = RngStream::new(7, 0).rng();
    let (mean, se) = monte_carlo(100_000, &mut rng, |r| {
        sample_stable(alpha, r).unwrap().recip()
    });
    assert_within_se(mean, gamma_real(1.0 + 1.0 / alpha), se, "E 1/S");
}

#[test]
fn stable_half_sampler_matches_closed_cdf() {
    let e = catalog::make_stable(0.5).unwrap();
    let mut xs = sample_many(&e, 100_000, 0, 11).unwrap();
    let ks = ks_statistic(&mut xs, |x| erfc(1.0 / (2.0 * x.sqrt())));
    assert!(ks < 0.01, "KS = {ks}");
}

#[test]
fn brownian_area_mean_within_tolerance() {
    let e = catalog::make_brownian_sup_area().unwrap();
    let report = verify_moments(&e, &[1.0], 20_000, 4096, 42).unwrap();
    let stat = &report.stats[0];
    assert!(
        stat.pass,
        "E A: {} vs {}, se {}, bias {}",
        stat.empirical, stat.predicted, stat.se, stat.bias
    );
    assert!((stat.predicted - support::frozen::AREA_MEAN).abs() < 1e-12);
    assert!(stat.bias > 0.0, "path discretization must be budgeted");
}

#[test]
fn hashing_chain_mean_within_tolerance() {
    let e = catalog::make_hashing_m().unwrap();
    let report = verify_moments(&e, &[1.0], 20_000, 4096, 42).unwrap();
    let stat = &report.stats[0];
    assert!(
        stat.pass,
        "E M: {} vs {}, se {}, bias {}",
        stat.empirical, stat.predicted, stat.se, stat.bias
    );
    assert!((stat.predicted - support::frozen::HASHING_MEAN).abs() < 1e-12);
}

#[test]
fn urn_chains_match_their_limit_laws() {
    let tri = catalog::make_urn_triangular(2.0, 1.0, 1.0, 1.0, 1.0).unwrap();
    let r = verify_moments(&tri, &[1.0, 2.0], 2_000, 20_000, 5).unwrap();
    for s in &r.stats {
        assert!(s.pass, "{}: {} vs {} se {}", s.label, s.empirical, s.predicted, s.se);
    }
    assert!((r.stats[0].predicted - 1.1283791670955126).abs() < 1e-10);
    assert!((r.stats[1].predicted - 2.0).abs() < 1e-10);

    let polya = catalog::make_urn_diagonal_polya(1.0, 1.0, 1.0).unwrap();
    let r = verify_moments(&polya, &[1.0], 4_000, 10_000, 5).unwrap();
    assert!(r.pass, "polya: {:?}", r.stats[0]);
    assert!((r.stats[0].predicted - 0.5).abs() < 1e-12);

    // The diagonal (a != d) chain converges to its limit only at a slow
    // power of n, so it is checked in two sharp pieces instead: the chain
    // against the exact finite-n law, and the limit law (a pure Gamma
    // product) against the moment formula.
    let diag = catalog::make_urn_diagonal(2.0, 1.0, 1.0, 1.0).unwrap();
    let n = 2_000usize;
    let exact = {
        let (a, d, b0, w0) = (2.0f64, 1.0, 1.0, 1.0);
        let mut prob = vec![0.0f64; n + 1];
        prob[0] = 1.0;
        for i in 0..n {
            let mut next = vec![0.0f64; n + 1];
            for (j, &p) in prob.iter().enumerate().take(i + 1) {
                if p == 0.0 {
                    continue;
                }
                let white = w0 + j as f64 * d;
                let black = b0 + (i - j) as f64 * a;
                let pw = white / (white + black);
                next[j + 1] += p * pw;
                next[j] += p * (1.0 - pw);
            }
            prob = next;
        }
        prob.iter()
            .enumerate()
            .map(|(j, &p)| p * (w0 + j as f64 * d))
            .sum::<f64>()
    };
    let mut rng = RngStream::new(6, 0).rng();
    let (mean, se) = monte_carlo(4_000, &mut rng, |r| {
        sample_urn(2.0, 0.0, 0.0, 1.0, 1.0, 1.0, n, r).unwrap().1
    });
    assert_within_se(mean, exact, se, "diagonal chain vs exact finite-n law");

    let mut rng = RngStream::new(8, 0).rng();
    let (mean, se) = monte_carlo(20_000, &mut rng, |r| {
        sample_rep(&diag.rep, r).unwrap().powf(0.25)
    });
    let want = diag.rep.evaluate_real(0.25).unwrap();
    assert_within_se(mean, want, se, "diagonal limit law vs moment formula");
}

#[test]
fn secant_law_sampler_matches_moments() {
    // The exponentiated hyperbolic-secant entry has E X^s = 1/cos(s).
    let e = catalog::make_levy_area_mgf().unwrap();
    let r = verify_moments(&e, &[0.5, 1.0], 50_000, 0, 13).unwrap();
    assert!((r.stats[0].predicted - 1.0 / 0.5f64.cos()).abs() < 1e-12);
    assert!((r.stats[1].predicted - 1.0 / 1.0f64.cos()).abs() < 1e-12);
    for s in &r.stats {
        assert!(s.pass, "{}: {} vs {} se {}", s.label, s.empirical, s.predicted, s.se);
    }
}

#[test]
fn fractional_relaxation_sampler_matches_moments() {
    // Both moments sit strictly inside the (-1/2, 1/2) strip; anything at or
    // past the edge has infinite variance and cannot be scored this way.
    let e = catalog::make_pillai_ml(0.5).unwrap();
    let r = verify_moments(&e, &[0.125, -0.125], 50_000, 0, 21).unwrap();
    for s in &r.stats {
        assert!(s.pass, "{}: {} vs {} se {}", s.label, s.empirical, s.predicted, s.se);
    }
}

#[test]
fn survival_transform_sampler_matches_rep_algebra() {
    // V = (T/Z)^(1/alpha) with T ~ Exp(1): check E V^s against the
    // transformed rep at two in-strip exponents. Z is Mittag-Leffler(1/2)
    // and alpha = 1/2, so V = (T/Z)^2 and the strip is (-1/2, 1/2).
    let ml = catalog::make_mittag_leffler(0.5).unwrap();
    let rep = lvz_transform(&ml.rep, 0.5).unwrap();
    let mut rng = RngStream::new(40, 0).rng();
    for s in [0.125f64, -0.125] {
        let want = rep.evaluate_real(s).unwrap();
        let (mean, se) = monte_carlo(50_000, &mut rng, |r| {
            let t: f64 = r.sample(rand_distr::Exp1);
            let z = sample_mittag_leffler(0.5, r).unwrap();
            (t / z).powi(2).powf(s)
        });
        assert_within_se(mean, want, se, &format!("E V^{s}"));
    }
}

#[test]
fn gamma_product_recognizer_accepts_and_refuses() {
    // chi-squared is a scaled Gamma variable, a recognizable pure product
    let chi2 = catalog::make_chi2(3.0).unwrap();
    let mut rng = RngStream::new(15, 0).rng();
    let (mean, se) = monte_carlo(50_000, &mut rng, |r| sample_rep(&chi2.rep, r).unwrap());
    assert_within_se(mean, 3.0, se, "chi-squared mean");

    // negative powers are still products: Frechet(2) is an inverse square
    // root of a unit exponential, with E X^(1/2) = Gamma(3/4)
    let frechet = catalog::make_frechet(2.0).unwrap();
    let (mean, se) = monte_carlo(50_000, &mut rng, |r| {
        sample_rep(&frechet.rep, r).unwrap().sqrt()
    });
    assert_within_se(mean, gamma_real(0.75), se, "frechet root moment");

    // denominator factors have no finite product form
    for rep in [
        catalog::make_brownian_sup_area().unwrap().rep,
        catalog::make_uniform().unwrap().rep,
    ] {
        assert!(matches!(
            sample_rep(&rep, &mut rng),
            Err(Error::UnsupportedRegime(_))
        ));
    }
}

#[test]
fn sampling_is_deterministic_and_chunk_stable() {
    let e = catalog::make_mittag_leffler(0.4).unwrap();
    let a = sample_many(&e, 10_000, 0, 99).unwrap();
    let b = sample_many(&e, 10_000, 0, 99).unwrap();
    assert_eq!(a, b);
    // the first chunk does not depend on how many samples follow it
    let prefix = sample_many(&e, 100, 0, 99).unwrap();
    assert_eq!(&a[..100], &prefix[..]);

    let r = verify_moments(&e, &[1.0], 10_000, 0, 99).unwrap();
    let want = 1.0 / gamma_real(1.4);
    assert!(r.pass, "E M: {} vs {want}", r.stats[0].empirical);
    assert_eq!(r.samples, 10_000);
    assert_eq!(r.seed, 99);
    assert!(r.max_abs_z.is_finite() && r.max_abs_z <= 4.0);
}

#[test]
fn double_laplace_identity_holds_and_degenerates() {
    // E exp(-lambda A^2) computed two ways: directly, and through the
    // one-dimensional integral produced by conditioning on the hitting level.
    let a1 = 8f64.sqrt() / 3.0;
    let r = verify_double_laplace(a1, &[1.0]).unwrap();
    let s = &r.stats[0];
    let rel = (s.empirical - s.predicted).abs() / s.predicted.abs();
    assert!(rel < 1e-6, "sides {} vs {} rel {rel}", s.empirical, s.predicted);
    assert!((s.empirical - 0.69698102039152).abs() < 1e-8, "lhs {}", s.empirical);

    let r = verify_double_laplace(1.0, &[2.0]).unwrap();
    let s = &r.stats[0];
    assert!((s.empirical - 0.41737618808859).abs() < 1e-8, "lhs {}", s.empirical);

    // for large lambda both sides collapse to 1/lambda
    let r = verify_double_laplace(1.0, &[1e3]).unwrap();
    let s = &r.stats[0];
    assert!((s.empirical * 1e3 - 1.0).abs() < 5e-4);
    assert!((s.predicted * 1e3 - 1.0).abs() < 5e-4);
}

#[test]
fn brownian_path_scaling_is_exact() {
    // doubling the horizon scales the supremum by sqrt(T) and the area by
    // T^(3/2); on a shared path the relation is exact in floating point
    let mut r1 = RngStream::new(3, 1).rng();
    let mut r2 = RngStream::new(3, 1).rng();
    let a1 = sample_brownian_sup_area(512, &mut r1).unwrap();
    let at = sample_brownian_sup_area_scaled(4.0, 512, &mut r2).unwrap();
    assert_eq!(at, 4.0 * 2.0 * a1);
}

#[test]
fn density_histogram_check_is_calibrated() {
    let e = catalog::make_gamma(2.0).unwrap();
    let r = verify_density(&e, 40_000, 0, 17, (0.2, 5.0)).unwrap();
    assert!(r.pass, "max |z| = {}", r.max_abs_z);
    let bins = r.stats.len();
    assert!((5..=200).contains(&bins), "bin count {bins}");
    assert!(r.stats.iter().all(|s| s.se > 0.0));
}

#[test]
fn sampler_argument_validation() {
    let mut rng = RngStream::new(1, 0).rng();
    assert!(sample_stable(1.5, &mut rng).is_err());
    assert!(sample_stable(0.0, &mut rng).is_err());
    assert!(sample_urn(2.0, 0.0, -1.0, 1.0, 1.0, 1.0, 10, &mut rng).is_err());
    assert!(sample_urn(2.0, 0.0, 1.0, 1.0, 0.0, 0.0, 10, &mut rng).is_err());
    assert!(sample_brownian_sup_area(0, &mut rng).is_err());

    let e = catalog::make_gamma(2.0).unwrap();
    assert!(verify_moments(&e, &[1.0], 1, 0, 3).is_err());
    assert!(verify_density(&e, 1_000, 0, 3, (2.0, 1.0)).is_err());
    assert!(verify_density(&e, 1_000, 0, 3, (-1.0, 1.0)).is_err());
}
