#![allow(dead_code)]
//! Shared oracles and reference values for the integration tests.
//!
//! The log-gamma oracle here deliberately avoids the Lanczos kernel the
//! library uses: it shifts the argument up by the recurrence and applies the
//! Stirling series with explicit Bernoulli coefficients, so agreement between
//! the two is evidence, not a tautology. The hypergeometric oracle sums the
//! series in exact big-rational arithmetic and rounds once at the end.

use gamma_moments::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// B_{2k} / (2k (2k - 1)) for k = 1..8: the Stirling series coefficients.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// ln Gamma(x) for x > 0 via upward recurrence into x >= 32 plus the
/// Stirling series. Good to about 1e-14 relative.
pub fn ln_gamma_oracle(mut x: f64) -> f64 {
    assert!(x > 0.0, "oracle domain is x > 0");
    let mut shift = 0.0;
    while x < 32.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    let mut p = inv;
    for c in STIRLING {
        tail += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + tail + shift
}

/// Complex counterpart of [`ln_gamma_oracle`], restricted to Re z > 0 where
/// the shifted principal logarithms compose without a branch correction.
pub fn ln_gamma_oracle_complex(mut z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "oracle domain is Re z > 0");
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 32.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        tail += c * p;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + tail + shift
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Partial sum of pFq(upper; lower; z) with rational parameters, computed in
/// exact arithmetic and converted to f64 once at the end. The caller picks a
/// term count deep enough for the remainder to be negligible.
pub fn hyp_exact(upper: &[(i64, i64)], lower: &[(i64, i64)], z: (i64, i64), terms: usize) -> f64 {
    let zr = rat(z.0, z.1);
    let mut term = rat(1, 1);
    let mut sum = rat(1, 1);
    for n in 0..terms {
        let nr = rat(n as i64, 1);
        let mut r = zr.clone() / rat(n as i64 + 1, 1);
        for &(p, q) in upper {
            r *= rat(p, q) + nr.clone();
        }
        for &(p, q) in lower {
            r /= rat(p, q) + nr.clone();
        }
        term *= r;
        if term.is_zero() {
            break;
        }
        sum += term.clone();
    }
    sum.to_f64().expect("rational fits in f64")
}

pub fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let rel = (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
    assert!(
        rel <= tol,
        "{what}: got {actual:.17e}, want {expected:.17e} (rel err {rel:.3e} > {tol:.1e})"
    );
}

pub fn assert_abs(actual: f64, expected: f64, tol: f64, what: &str) {
    let err = (actual - expected).abs();
    assert!(
        err <= tol,
        "{what}: got {actual:.17e}, want {expected:.17e} (abs err {err:.3e} > {tol:.1e})"
    );
}

/// Reference values frozen from 40-digit arithmetic (independent software).
pub mod frozen {
    /// Density of the averaged supremum of a standard Brownian motion on
    /// [0, 1], f(x), at x = 0.25, 0.5, 0.8, 1.0, 1.5, 3.0.
    pub const AREA_DENSITY: [(f64, f64); 6] = [
        (0.25, 1.125_291_855_469_026_1),
        (0.5, 1.010_002_097_153_533_1),
        (0.8, 0.644_069_745_502_083_8),
        (1.0, 0.401_689_772_870_161_72),
        (1.5, 0.069_987_966_361_571_615),
        (3.0, 3.514_163_206_312_169e-6),
    ];

    /// Mean of the same law: 3 sqrt(pi / 8).
    pub const AREA_MEAN: f64 = 0.531_923_040_535_243_57;

    /// Value of its density at 0+, sqrt(2/pi).
    pub const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

    /// Density of the bucket-maximum limit law at x = 0.2, 1, 3, 10.
    pub const HASHING_DENSITY: [(f64, f64); 4] = [
        (0.2, 0.332_876_638_285_399_35),
        (1.0, 0.390_550_803_158_293_88),
        (3.0, 0.094_704_874_570_529_054),
        (10.0, 0.004_544_955_241_775_314),
    ];

    /// Mean of that limit law: 2 Gamma(1/3) / 3^(2/3).
    pub const HASHING_MEAN: f64 = 2.575_798_633_708_138_2;

    /// log Gamma(1 + i).
    pub const LOG_GAMMA_1_PLUS_I: (f64, f64) =
        (-0.650_923_199_301_856_34, -0.301_640_320_467_533_2);

    /// log Gamma(0.3 + 2.7i).
    pub const LOG_GAMMA_03_27: (f64, f64) =
        (-3.519_878_385_242_761_3, -0.324_307_209_106_458_8);

    /// 2F2(4/3, 1; 7/6, 1/2; 1/10).
    pub const HYP_2F2_TENTH: f64 = 1.245_693_654_379_057_1;

    /// U(-1/6; 2/3; 3/2), below the asymptotic crossover.
    pub const KUMMER_U_LOW: f64 = 1.085_893_735_125_785_7;

    /// U(-1/6; 2/3; 25), on the asymptotic branch.
    pub const KUMMER_U_HIGH: f64 = 1.711_840_776_447_810_9;
}
