//! Named distributions with moments of Gamma type.
//!
//! Each entry couples a representation with the independently known
//! parameter values (gamma, gamma', delta, kappa, C1, strip ends) for that
//! distribution, a closed-form density where one exists, and a tag telling
//! the sampler how to draw from the underlying stochastic model. The
//! expected parameters are written out from the published closed forms, so
//! they double as regression targets for the analysis code.

use crate::analysis::InvariantParams;
use crate::error::{Error, Result};
use crate::rep::{GammaFactor, GammaTypeRep};
use crate::specfun::{gamma_real, hyp_series, kummer_u, ln_gamma_real, reciprocal_gamma};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// How the sampler should draw from this entry's distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SamplerKind {
    /// The rep is a finite product of powers of Gamma variables; the
    /// recognizer in the sampler module reconstructs the product.
    GammaProduct,
    Beta { alpha: f64, beta: f64 },
    Pareto { alpha: f64 },
    /// Positive stable via the exponential/uniform integral representation.
    Stable { alpha: f64 },
    MittagLeffler { alpha: f64 },
    Pillai { alpha: f64 },
    /// Discretized Brownian motion, running maximum, area of the max path.
    BrownianSupArea,
    /// Weibull(3/2) draw divided by a Brownian-area draw to the 2/3.
    HashingM,
    /// exp(A) where A has the hyperbolic-secant density 1/(2 cosh(pi a/2)).
    ExpSech,
    /// Product of n independent reciprocal uniforms.
    ReciprocalUniformProduct { n: u32 },
    /// Urn chain with replacement matrix ((a,0),(c,d)), balanced a = c+d.
    UrnTriangular { a: f64, c: f64, d: f64, b0: f64, w0: f64 },
    /// Urn chain with diagonal replacement matrix ((a,0),(0,d)).
    UrnDiagonal { a: f64, d: f64, b0: f64, w0: f64 },
    /// Coin flip between the constant 1 and a uniform draw.
    PointUniformMixture,
    /// Exp(1) draw divided by an independent uniform draw.
    ExpOverUniform,
}

/// Closed-form density attached to an entry, evaluated through specfun.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum OracleForm {
    GammaDensity { alpha: f64 },
    Exponential { mu: f64 },
    BetaDensity { alpha: f64, beta: f64 },
    WeibullDensity { alpha: f64 },
    ParetoDensity { alpha: f64 },
    ShiftedParetoDensity { alpha: f64 },
    /// sum_(n>=1) (-1)^(n+1) Gamma(n a + 1) sin(pi n a) / (pi n!) x^(-n a - 1)
    StableSeries { alpha: f64 },
    /// sum_(m>=0) (-1)^m Gamma(m a + a) sin(pi a (m+1)) / (pi m!) x^m
    MittagLefflerSeries { alpha: f64 },
    /// Density of e^A with A hyperbolic-secant: 1 / (2 x cosh(pi ln x / 2)).
    ExpSechDensity,
    /// 2^(7/6)/Gamma(2/3) e^(-3x^2/2) U(-1/6; 2/3; 3x^2/2).
    BrownianAreaKummer,
    /// sqrt(2/pi) x^(1/2) 2F2(4/3,1; 7/6,1/2; x^3/6)
    ///   - (5/8) x^2 1F1(11/6; 5/3; x^3/6).
    /// Alternating-sum cancellation limits f64 accuracy to roughly x <= 3;
    /// beyond that use Mellin inversion instead.
    HashingHyp,
    /// Gamma((b0+w0)/a)/Gamma(w0/d) sum (-1)^n/n! d^(-n-w0/d)
    ///   / Gamma(b0/a - dn/a) x^(n + w0/d - 1).
    UrnTriangularSeries { a: f64, d: f64, b0: f64, w0: f64 },
    /// (1 - (1+x) e^(-x)) / x^2.
    ExpOverUniformDensity,
}

/// A catalog distribution: representation plus reference data.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub rep: GammaTypeRep,
    /// Parameter values as independently published for this distribution.
    pub expected: InvariantParams,
    /// Human-readable moment formula.
    pub source: String,
    pub oracle: Option<OracleForm>,
    pub sampler: Option<SamplerKind>,
}

const MAX_ORACLE_TERMS: usize = 500;

impl OracleForm {
    /// Evaluate the closed form at x > 0 (0 outside the support).
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("oracle density requires x > 0, got {x}")));
        }
        match *self {
            OracleForm::GammaDensity { alpha } => {
                Ok(((alpha - 1.0) * x.ln() - x - ln_gamma_real(alpha)).exp())
            }
            OracleForm::Exponential { mu } => Ok((-x / mu).exp() / mu),
            OracleForm::BetaDensity { alpha, beta } => {
                if x >= 1.0 {
                    return Ok(0.0);
                }
                let log_norm = ln_gamma_real(alpha + beta) - ln_gamma_real(alpha) - ln_gamma_real(beta);
                Ok((log_norm + (alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln()).exp())
            }
            OracleForm::WeibullDensity { alpha } => {
                Ok(alpha * x.powf(alpha - 1.0) * (-x.powf(alpha)).exp())
            }
            OracleForm::ParetoDensity { alpha } => {
                if x <= 1.0 {
                    Ok(0.0)
                } else {
                    Ok(alpha * x.powf(-alpha - 1.0))
                }
            }
            OracleForm::ShiftedParetoDensity { alpha } => Ok(alpha * (1.0 + x).powf(-alpha - 1.0)),
            OracleForm::StableSeries { alpha } => stable_density_series(alpha, x),
            OracleForm::MittagLefflerSeries { alpha } => ml_density_series(alpha, x),
            OracleForm::ExpSechDensity => Ok(1.0 / (2.0 * x * (0.5 * PI * x.ln()).cosh())),
            OracleForm::BrownianAreaKummer => {
                let z = 1.5 * x * x;
                let u = kummer_u(-1.0 / 6.0, 2.0 / 3.0, z)?;
                Ok(2f64.powf(7.0 / 6.0) / gamma_real(2.0 / 3.0) * (-z).exp() * u)
            }
            OracleForm::HashingHyp => {
                let z = x * x * x / 6.0;
                let first = hyp_series(&[4.0 / 3.0, 1.0], &[7.0 / 6.0, 0.5], z, MAX_ORACLE_TERMS)?;
                let second = hyp_series(&[11.0 / 6.0], &[5.0 / 3.0], z, MAX_ORACLE_TERMS)?;
                Ok((2.0 / PI).sqrt() * x.sqrt() * first.value - 0.625 * x * x * second.value)
            }
            OracleForm::UrnTriangularSeries { a, d, b0, w0 } => urn_density_series(a, d, b0, w0, x),
            OracleForm::ExpOverUniformDensity => {
                if x < 1e-3 {
                    // Series around 0 avoids the 0/0 cancellation.
                    let mut sum = 0.0;
                    let mut num = 1.0; // (-x)^n / n!
                    for n in 0..12 {
                        sum += num / (n + 2) as f64;
                        num *= -x / (n + 1) as f64;
                    }
                    Ok(sum)
                } else {
                    Ok((1.0 - (1.0 + x) * (-x).exp()) / (x * x))
                }
            }
        }
    }
}

fn stable_density_series(alpha: f64, x: f64) -> Result<f64> {
    let log_x = x.ln();
    let mut sum = 0.0f64;
    let mut small = 0u32;
    for n in 1..=MAX_ORACLE_TERMS {
        let nf = n as f64;
        let log_mag = ln_gamma_real(nf * alpha + 1.0) - ln_gamma_real(nf + 1.0)
            + (-nf * alpha - 1.0) * log_x;
        let osc = (PI * nf * alpha).sin() / PI;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * osc * log_mag.exp();
        sum += term;
        if term.abs() <= 1e-16 * (1.0 + sum.abs()) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::SeriesDidNotConverge {
        terms: MAX_ORACLE_TERMS,
        last_term: sum,
    })
}

fn ml_density_series(alpha: f64, x: f64) -> Result<f64> {
    let mut sum = 0.0f64;
    let mut small = 0u32;
    let mut log_pow = 0.0f64; // ln x^m - ln m!
    for m in 0..MAX_ORACLE_TERMS {
        let mf = m as f64;
        let log_mag = ln_gamma_real(mf * alpha + alpha) + log_pow;
        let osc = (PI * alpha * (mf + 1.0)).sin() / PI;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * osc * log_mag.exp();
        sum += term;
        if term.abs() <= 1e-16 * (1.0 + sum.abs()) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        log_pow += x.ln() - (mf + 1.0).ln();
    }
    Err(Error::SeriesDidNotConverge {
        terms: MAX_ORACLE_TERMS,
        last_term: sum,
    })
}

fn urn_density_series(a: f64, d: f64, b0: f64, w0: f64, x: f64) -> Result<f64> {
    let prefactor = (ln_gamma_real((b0 + w0) / a) - ln_gamma_real(w0 / d)).exp();
    let log_x = x.ln();
    let log_d = d.ln();
    let mut sum = 0.0f64;
    let mut small = 0u32;
    let mut log_fact = 0.0f64;
    for n in 0..MAX_ORACLE_TERMS {
        let nf = n as f64;
        let rg = reciprocal_gamma(Complex64::new(b0 / a - d * nf / a, 0.0)).re;
        let log_mag = (-nf - w0 / d) * log_d + (nf + w0 / d - 1.0) * log_x - log_fact;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * rg * log_mag.exp();
        sum += term;
        if term.abs() <= 1e-16 * (1.0 + sum.abs()) {
            small += 1;
            if small >= 2 {
                return Ok(prefactor * sum);
            }
        } else {
            small = 0;
        }
        log_fact += (nf + 1.0).ln();
    }
    Err(Error::SeriesDidNotConverge {
        terms: MAX_ORACLE_TERMS,
        last_term: sum,
    })
}

/// Closed-form density of the entry's variable at x, when one is attached.
pub fn oracle_density(entry: &CatalogEntry, x: f64) -> Option<Result<f64>> {
    entry.oracle.as_ref().map(|o| o.eval(x))
}

fn factor(a: f64, b: f64) -> GammaFactor {
    GammaFactor::new(a, b)
}

fn expect(
    gamma: f64,
    gamma_prime: f64,
    delta: f64,
    kappa: f64,
    c1: f64,
    rho_minus: f64,
    rho_plus: f64,
) -> InvariantParams {
    InvariantParams {
        gamma,
        gamma_prime,
        delta,
        kappa,
        c1,
        rho_minus,
        rho_plus,
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what.into()))
    }
}

/// E X^s = Gamma(s + alpha) / Gamma(alpha); density x^(alpha-1) e^(-x) / Gamma(alpha).
pub fn make_gamma(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "gamma requires alpha > 0")?;
    let rep = GammaTypeRep::new(
        -ln_gamma_real(alpha),
        1,
        0.0,
        vec![factor(1.0, alpha)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("gamma({alpha})"),
        rep,
        expected: expect(
            1.0,
            1.0,
            alpha - 0.5,
            0.0,
            (2.0 * PI).sqrt() / gamma_real(alpha),
            -alpha,
            f64::INFINITY,
        ),
        source: "E X^s = Gamma(s+alpha)/Gamma(alpha)".into(),
        oracle: Some(OracleForm::GammaDensity { alpha }),
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = Gamma(s + 1) mu^s; mean-mu exponential.
pub fn make_exponential(mu: f64) -> Result<CatalogEntry> {
    require(mu > 0.0, "exponential requires mu > 0")?;
    let rep = GammaTypeRep::new(0.0, 1, mu.ln(), vec![factor(1.0, 1.0)], vec![])?;
    Ok(CatalogEntry {
        name: format!("exponential({mu})"),
        rep,
        expected: expect(1.0, 1.0, 0.5, mu.ln(), (2.0 * PI).sqrt(), -1.0, f64::INFINITY),
        source: "E X^s = Gamma(s+1) mu^s".into(),
        oracle: Some(OracleForm::Exponential { mu }),
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = 1/(s+1) = Gamma(s+1)/Gamma(s+2); uniform on (0,1).
pub fn make_uniform() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(0.0, 1, 0.0, vec![factor(1.0, 1.0)], vec![factor(1.0, 2.0)])?;
    Ok(CatalogEntry {
        name: "uniform".into(),
        rep,
        expected: expect(0.0, 0.0, -1.0, 0.0, 1.0, -1.0, f64::INFINITY),
        source: "E X^s = Gamma(s+1)/Gamma(s+2) = 1/(s+1)".into(),
        oracle: Some(OracleForm::BetaDensity { alpha: 1.0, beta: 1.0 }),
        sampler: Some(SamplerKind::Beta { alpha: 1.0, beta: 1.0 }),
    })
}

/// E X^s = Gamma(alpha+beta) Gamma(s+alpha) / (Gamma(alpha) Gamma(s+alpha+beta)).
pub fn make_beta(alpha: f64, beta: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0 && beta > 0.0, "beta requires alpha, beta > 0")?;
    let rep = GammaTypeRep::new(
        ln_gamma_real(alpha + beta) - ln_gamma_real(alpha),
        1,
        0.0,
        vec![factor(1.0, alpha)],
        vec![factor(1.0, alpha + beta)],
    )?;
    Ok(CatalogEntry {
        name: format!("beta({alpha},{beta})"),
        rep,
        expected: expect(
            0.0,
            0.0,
            -beta,
            0.0,
            (ln_gamma_real(alpha + beta) - ln_gamma_real(alpha)).exp(),
            -alpha,
            f64::INFINITY,
        ),
        source: "E X^s = Gamma(alpha+beta) Gamma(s+alpha) / (Gamma(alpha) Gamma(s+alpha+beta))"
            .into(),
        oracle: Some(OracleForm::BetaDensity { alpha, beta }),
        sampler: Some(SamplerKind::Beta { alpha, beta }),
    })
}

/// E X^s = 2^s Gamma(s + n/2) / Gamma(n/2); sum of n squared normals.
pub fn make_chi2(n: f64) -> Result<CatalogEntry> {
    require(n > 0.0, "chi2 requires n > 0")?;
    let rep = GammaTypeRep::new(
        -ln_gamma_real(0.5 * n),
        1,
        2f64.ln(),
        vec![factor(1.0, 0.5 * n)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("chi2({n})"),
        rep,
        expected: expect(
            1.0,
            1.0,
            0.5 * (n - 1.0),
            2f64.ln(),
            (2.0 * PI).sqrt() / gamma_real(0.5 * n),
            -0.5 * n,
            f64::INFINITY,
        ),
        source: "E X^s = 2^s Gamma(s+n/2)/Gamma(n/2)".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = 2^(s/2) Gamma(s/2 + n/2) / Gamma(n/2); square root of chi2(n).
pub fn make_chi(n: f64) -> Result<CatalogEntry> {
    require(n > 0.0, "chi requires n > 0")?;
    let rep = GammaTypeRep::new(
        -ln_gamma_real(0.5 * n),
        1,
        0.5 * 2f64.ln(),
        vec![factor(0.5, 0.5 * n)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("chi({n})"),
        rep,
        expected: expect(
            0.5,
            0.5,
            0.5 * (n - 1.0),
            0.0,
            2f64.powf(1.0 - 0.5 * n) * PI.sqrt() / gamma_real(0.5 * n),
            -n,
            f64::INFINITY,
        ),
        source: "E X^s = 2^(s/2) Gamma(s/2+n/2)/Gamma(n/2)".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = (n/m)^s Gamma(s+m/2) Gamma(n/2-s) / (Gamma(m/2) Gamma(n/2)).
pub fn make_fisher_f(m: f64, n: f64) -> Result<CatalogEntry> {
    require(m > 0.0 && n > 0.0, "fisher_f requires m, n > 0")?;
    let rep = GammaTypeRep::new(
        -ln_gamma_real(0.5 * m) - ln_gamma_real(0.5 * n),
        1,
        (n / m).ln(),
        vec![factor(1.0, 0.5 * m), factor(-1.0, 0.5 * n)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("fisher_f({m},{n})"),
        rep,
        expected: expect(
            2.0,
            0.0,
            0.5 * (n + m - 2.0),
            (n / m).ln(),
            2.0 * PI / (gamma_real(0.5 * m) * gamma_real(0.5 * n)),
            -0.5 * m,
            0.5 * n,
        ),
        source: "E X^s = (n/m)^s Gamma(s+m/2) Gamma(n/2-s) / (Gamma(m/2) Gamma(n/2))".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = n^(s/2) Gamma(s/2+1/2) Gamma(n/2-s/2) / (sqrt(pi) Gamma(n/2));
/// absolute value of a Student t with n degrees of freedom.
pub fn make_abs_t(n: f64) -> Result<CatalogEntry> {
    require(n > 0.0, "abs_t requires n > 0")?;
    let rep = GammaTypeRep::new(
        -0.5 * PI.ln() - ln_gamma_real(0.5 * n),
        1,
        0.5 * n.ln(),
        vec![factor(0.5, 0.5), factor(-0.5, 0.5 * n)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("abs_t({n})"),
        rep,
        expected: expect(
            1.0,
            0.0,
            0.5 * (n - 1.0),
            0.5 * n.ln(),
            2f64.powf(1.5 - 0.5 * n) * PI.sqrt() / gamma_real(0.5 * n),
            -1.0,
            n,
        ),
        source: "E X^s = n^(s/2) Gamma(s/2+1/2) Gamma(n/2-s/2) / (sqrt(pi) Gamma(n/2))".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = Gamma(s/alpha + 1); P(X > x) = exp(-x^alpha).
pub fn make_weibull(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "weibull requires alpha > 0")?;
    let rep = GammaTypeRep::new(0.0, 1, 0.0, vec![factor(1.0 / alpha, 1.0)], vec![])?;
    Ok(CatalogEntry {
        name: format!("weibull({alpha})"),
        rep,
        expected: expect(
            1.0 / alpha,
            1.0 / alpha,
            0.5,
            -alpha.ln() / alpha,
            (2.0 * PI / alpha).sqrt(),
            -alpha,
            f64::INFINITY,
        ),
        source: "E X^s = Gamma(s/alpha + 1)".into(),
        oracle: Some(OracleForm::WeibullDensity { alpha }),
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = Gamma(1 - s/alpha) / Gamma(1 - s); positive stable with Laplace
/// transform exp(-t^alpha). alpha = 1 is the degenerate point mass at 1,
/// represented by the empty-factor rep.
pub fn make_stable(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0 && alpha <= 1.0, "stable requires 0 < alpha <= 1")?;
    if alpha == 1.0 {
        return Ok(CatalogEntry {
            name: "stable(1)".into(),
            rep: GammaTypeRep::one(),
            expected: expect(0.0, 0.0, 0.0, 0.0, 1.0, f64::NEG_INFINITY, f64::INFINITY),
            source: "E X^s = 1 (point mass at 1)".into(),
            oracle: None,
            sampler: Some(SamplerKind::Stable { alpha }),
        });
    }
    let rep = GammaTypeRep::new(
        0.0,
        1,
        0.0,
        vec![factor(-1.0 / alpha, 1.0)],
        vec![factor(-1.0, 1.0)],
    )?;
    Ok(CatalogEntry {
        name: format!("stable({alpha})"),
        rep,
        expected: expect(
            1.0 / alpha - 1.0,
            1.0 - 1.0 / alpha,
            0.0,
            alpha.ln() / alpha,
            1.0 / alpha.sqrt(),
            f64::NEG_INFINITY,
            alpha,
        ),
        source: "E X^s = Gamma(1 - s/alpha) / Gamma(1 - s)".into(),
        oracle: Some(OracleForm::StableSeries { alpha }),
        sampler: Some(SamplerKind::Stable { alpha }),
    })
}

/// E X^s = Gamma(s+1) / Gamma(alpha s + 1); X = S^(-alpha) for S stable.
pub fn make_mittag_leffler(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0 && alpha <= 1.0, "mittag_leffler requires 0 < alpha <= 1")?;
    if alpha == 1.0 {
        return Ok(CatalogEntry {
            name: "mittag_leffler(1)".into(),
            rep: GammaTypeRep::one(),
            expected: expect(0.0, 0.0, 0.0, 0.0, 1.0, f64::NEG_INFINITY, f64::INFINITY),
            source: "E X^s = 1 (point mass at 1)".into(),
            oracle: None,
            sampler: Some(SamplerKind::MittagLeffler { alpha }),
        });
    }
    let rep = GammaTypeRep::new(
        0.0,
        1,
        0.0,
        vec![factor(1.0, 1.0)],
        vec![factor(alpha, 1.0)],
    )?;
    Ok(CatalogEntry {
        name: format!("mittag_leffler({alpha})"),
        rep,
        expected: expect(
            1.0 - alpha,
            1.0 - alpha,
            0.0,
            -alpha * alpha.ln(),
            1.0 / alpha.sqrt(),
            -1.0,
            f64::INFINITY,
        ),
        source: "E X^s = Gamma(s+1) / Gamma(alpha s + 1)".into(),
        oracle: Some(OracleForm::MittagLefflerSeries { alpha }),
        sampler: Some(SamplerKind::MittagLeffler { alpha }),
    })
}

/// E X^s = Gamma(1+s/alpha) Gamma(1-s/alpha) / Gamma(1-s);
/// P(X > x) = E_alpha(-x^alpha), the Laplace transform being 1/(1+t^alpha).
pub fn make_pillai_ml(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0 && alpha < 1.0, "pillai_ml requires 0 < alpha < 1")?;
    let rep = GammaTypeRep::new(
        0.0,
        1,
        0.0,
        vec![factor(1.0 / alpha, 1.0), factor(-1.0 / alpha, 1.0)],
        vec![factor(-1.0, 1.0)],
    )?;
    Ok(CatalogEntry {
        name: format!("pillai_ml({alpha})"),
        rep,
        expected: expect(
            2.0 / alpha - 1.0,
            1.0,
            0.5,
            0.0,
            (2.0 * PI).sqrt() / alpha,
            -alpha,
            alpha,
        ),
        source: "E X^s = Gamma(1+s/alpha) Gamma(1-s/alpha) / Gamma(1-s)".into(),
        oracle: None,
        sampler: Some(SamplerKind::Pillai { alpha }),
    })
}

/// E X^s = alpha Gamma(alpha-s) / Gamma(alpha-s+1) = alpha/(alpha-s);
/// P(X > x) = x^(-alpha) on x >= 1.
pub fn make_pareto(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "pareto requires alpha > 0")?;
    let rep = GammaTypeRep::new(
        alpha.ln(),
        1,
        0.0,
        vec![factor(-1.0, alpha)],
        vec![factor(-1.0, alpha + 1.0)],
    )?;
    Ok(CatalogEntry {
        name: format!("pareto({alpha})"),
        rep,
        expected: expect(0.0, 0.0, -1.0, 0.0, alpha, f64::NEG_INFINITY, alpha),
        source: "E X^s = alpha/(alpha-s) = alpha Gamma(alpha-s)/Gamma(alpha-s+1)".into(),
        oracle: Some(OracleForm::ParetoDensity { alpha }),
        sampler: Some(SamplerKind::Pareto { alpha }),
    })
}

/// E X^s = Gamma(s+1) Gamma(alpha-s) / Gamma(alpha); the Pareto variable
/// minus its unit shift, equal in law to Exp(1)/Gamma(alpha).
pub fn make_shifted_pareto(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "shifted_pareto requires alpha > 0")?;
    let rep = GammaTypeRep::new(
        -ln_gamma_real(alpha),
        1,
        0.0,
        vec![factor(1.0, 1.0), factor(-1.0, alpha)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("shifted_pareto({alpha})"),
        rep,
        expected: expect(
            2.0,
            0.0,
            alpha,
            0.0,
            2.0 * PI / gamma_real(alpha),
            -1.0,
            alpha,
        ),
        source: "E X^s = Gamma(s+1) Gamma(alpha-s) / Gamma(alpha)".into(),
        oracle: Some(OracleForm::ShiftedParetoDensity { alpha }),
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = Gamma(1 - s/alpha); P(X <= x) = exp(-x^(-alpha)), the reciprocal
/// of a Weibull(alpha) variable.
pub fn make_frechet(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "frechet requires alpha > 0")?;
    let rep = GammaTypeRep::new(0.0, 1, 0.0, vec![factor(-1.0 / alpha, 1.0)], vec![])?;
    Ok(CatalogEntry {
        name: format!("frechet({alpha})"),
        rep,
        expected: expect(
            1.0 / alpha,
            -1.0 / alpha,
            0.5,
            alpha.ln() / alpha,
            (2.0 * PI / alpha).sqrt(),
            f64::NEG_INFINITY,
            alpha,
        ),
        source: "E X^s = Gamma(1 - s/alpha)".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E X^s = Gamma(1 + s/alpha); the modulus of the negative-axis extreme
/// value law, distributed as Weibull(alpha).
pub fn make_neg_weibull_extreme(alpha: f64) -> Result<CatalogEntry> {
    require(alpha > 0.0, "neg_weibull_extreme requires alpha > 0")?;
    let mut entry = make_weibull(alpha)?;
    entry.name = format!("neg_weibull_extreme({alpha})");
    entry.source = "E |X|^s = Gamma(1 + s/alpha), X the negative-axis extreme value law".into();
    Ok(entry)
}

/// E e^(sY) = Gamma(1 - s) for the Gumbel law Y; the entry represents
/// X = e^Y = 1/T with T standard exponential.
pub fn make_gumbel_mgf() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(0.0, 1, 0.0, vec![factor(-1.0, 1.0)], vec![])?;
    Ok(CatalogEntry {
        name: "gumbel_mgf".into(),
        rep,
        expected: expect(1.0, -1.0, 0.5, 0.0, (2.0 * PI).sqrt(), f64::NEG_INFINITY, 1.0),
        source: "E e^(sY) = Gamma(1-s), X = e^Y".into(),
        oracle: None,
        sampler: Some(SamplerKind::GammaProduct),
    })
}

/// E e^(sY) = (1-s)^(-n) for Y a sum of n unit exponentials; the entry
/// represents X = e^Y, a product of n reciprocal uniforms. The pole at 1
/// has order n, which exercises the higher-order Laurent machinery.
pub fn make_gamma_n_mgf(n: u32) -> Result<CatalogEntry> {
    require(n >= 1, "gamma_n_mgf requires n >= 1")?;
    let num = vec![factor(-1.0, 1.0); n as usize];
    let den = vec![factor(-1.0, 2.0); n as usize];
    let rep = GammaTypeRep::new(0.0, 1, 0.0, num, den)?;
    Ok(CatalogEntry {
        name: format!("gamma_n_mgf({n})"),
        rep,
        expected: expect(0.0, 0.0, -(n as f64), 0.0, 1.0, f64::NEG_INFINITY, 1.0),
        source: "E e^(sY) = (1-s)^(-n) = (Gamma(1-s)/Gamma(2-s))^n, X = e^Y".into(),
        oracle: None,
        sampler: Some(SamplerKind::ReciprocalUniformProduct { n }),
    })
}

/// E e^(sA) = 1/cos(s) = Gamma(1/2 + s/pi) Gamma(1/2 - s/pi) / pi for the
/// planar Brownian area A; the entry represents X = e^A. The density of A
/// is the hyperbolic secant 1/(2 cosh(pi a/2)).
pub fn make_levy_area_mgf() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(
        -PI.ln(),
        1,
        0.0,
        vec![factor(1.0 / PI, 0.5), factor(-1.0 / PI, 0.5)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: "levy_area_mgf".into(),
        rep,
        expected: expect(2.0 / PI, 0.0, 0.0, 0.0, 2.0, -0.5 * PI, 0.5 * PI),
        source: "E e^(sA) = 1/cos(s), X = e^A".into(),
        oracle: Some(OracleForm::ExpSechDensity),
        sampler: Some(SamplerKind::ExpSech),
    })
}

/// E X^s = Gamma(s+1) Gamma(s+2/3) / (Gamma(2/3) Gamma(3s/2+1)) (3/sqrt(8))^s:
/// the integral over [0,1] of the running maximum of a standard Brownian
/// motion.
pub fn make_brownian_sup_area() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(
        -ln_gamma_real(2.0 / 3.0),
        1,
        3f64.ln() - 1.5 * 2f64.ln(),
        vec![factor(1.0, 1.0), factor(1.0, 2.0 / 3.0)],
        vec![factor(1.5, 1.0)],
    )?;
    Ok(CatalogEntry {
        name: "brownian_sup_area".into(),
        rep,
        expected: expect(
            0.5,
            0.5,
            1.0 / 6.0,
            -0.5 * 3f64.ln(),
            gamma_real(1.0 / 3.0) / PI.sqrt(),
            -1.0,
            f64::INFINITY,
        ),
        source: "E X^s = Gamma(s+1) Gamma(s+2/3) / (Gamma(2/3) Gamma(3s/2+1)) (3/sqrt 8)^s".into(),
        oracle: Some(OracleForm::BrownianAreaKummer),
        sampler: Some(SamplerKind::BrownianSupArea),
    })
}

/// Survival-function transform: if P(V > x) = E exp(-x^alpha Z) then
/// V = (T/Z)^(1/alpha) with T an independent Exp(1), and
/// E V^s = Gamma(s/alpha + 1) E Z^(-s/alpha).
pub fn lvz_transform(rep_z: &GammaTypeRep, alpha: f64) -> Result<GammaTypeRep> {
    require(alpha > 0.0, "lvz_transform requires alpha > 0")?;
    let exp_factor = GammaTypeRep::new(0.0, 1, 0.0, vec![factor(1.0 / alpha, 1.0)], vec![])?;
    Ok(exp_factor.product(&rep_z.reciprocal().power(1.0 / alpha)?))
}

/// The hashing maximum-displacement limit: P(X > x) = E exp(-x^(3/2) A)
/// with A the Brownian supremum area, so X = (T/A)^(2/3).
pub fn make_hashing_m() -> Result<CatalogEntry> {
    let area = make_brownian_sup_area()?;
    let rep = lvz_transform(&area.rep, 1.5)?;
    Ok(CatalogEntry {
        name: "hashing_M".into(),
        rep,
        expected: expect(
            1.0,
            1.0 / 3.0,
            2.0 / 3.0,
            2f64.ln() / 3.0,
            2f64.powf(7.0 / 6.0) * 3f64.powf(-2.0 / 3.0) * gamma_real(1.0 / 3.0),
            -1.5,
            1.5,
        ),
        source: "E X^s = Gamma(2s/3+1) Gamma(2/3-2s/3) Gamma(1-2s/3) / (Gamma(2/3) Gamma(1-s)) (2/3^(2/3))^s"
            .into(),
        oracle: Some(OracleForm::HashingHyp),
        sampler: Some(SamplerKind::HashingM),
    })
}

/// Balanced triangular urn with replacement matrix ((a,0),(c,d)), a = c+d:
/// the white-ball count scaled by n^(-d/a) converges to W with
/// E W^s = d^s Gamma((b0+w0)/a)/Gamma(w0/d) Gamma(s+w0/d)/Gamma(ds/a+(b0+w0)/a).
pub fn make_urn_triangular(a: f64, c: f64, d: f64, b0: f64, w0: f64) -> Result<CatalogEntry> {
    require(a > 0.0 && c > 0.0 && d > 0.0, "urn_triangular requires a, c, d > 0")?;
    require(
        (a - c - d).abs() <= 1e-12 * a.max(1.0),
        "urn_triangular requires the balance a = c + d",
    )?;
    require(w0 > 0.0 && b0 >= 0.0, "urn_triangular requires w0 > 0 and b0 >= 0")?;
    let rep = GammaTypeRep::new(
        ln_gamma_real((b0 + w0) / a) - ln_gamma_real(w0 / d),
        1,
        d.ln(),
        vec![factor(1.0, w0 / d)],
        vec![factor(d / a, (b0 + w0) / a)],
    )?;
    let rho_minus = if b0 > 0.0 { -w0 / d } else { -w0 / d - 1.0 };
    Ok(CatalogEntry {
        name: format!("urn_triangular({a},{c},{d};{b0},{w0})"),
        rep,
        expected: expect(
            c / a,
            c / a,
            w0 / d - (b0 + w0) / a,
            (c * d.ln() + d * a.ln()) / a,
            (a / d).powf((b0 + w0) / a - 0.5)
                * (ln_gamma_real((b0 + w0) / a) - ln_gamma_real(w0 / d)).exp(),
            rho_minus,
            f64::INFINITY,
        ),
        source: "E W^s = d^s Gamma((b0+w0)/a)/Gamma(w0/d) Gamma(s+w0/d)/Gamma(ds/a+(b0+w0)/a)"
            .into(),
        oracle: if b0 > 0.0 {
            Some(OracleForm::UrnTriangularSeries { a, d, b0, w0 })
        } else {
            None
        },
        sampler: Some(SamplerKind::UrnTriangular { a, c, d, b0, w0 }),
    })
}

/// Classical diagonal urn with a = d: W_n/n converges to a scaled Beta.
pub fn make_urn_diagonal_polya(a: f64, b0: f64, w0: f64) -> Result<CatalogEntry> {
    require(a > 0.0 && b0 > 0.0 && w0 > 0.0, "urn_diagonal_polya requires a, b0, w0 > 0")?;
    let rep = GammaTypeRep::new(
        ln_gamma_real((b0 + w0) / a) - ln_gamma_real(w0 / a),
        1,
        a.ln(),
        vec![factor(1.0, w0 / a)],
        vec![factor(1.0, (b0 + w0) / a)],
    )?;
    Ok(CatalogEntry {
        name: format!("urn_diagonal_polya({a};{b0},{w0})"),
        rep,
        expected: expect(
            0.0,
            0.0,
            -b0 / a,
            a.ln(),
            (ln_gamma_real((b0 + w0) / a) - ln_gamma_real(w0 / a)).exp(),
            -w0 / a,
            f64::INFINITY,
        ),
        source: "E W^s = a^s Gamma((b0+w0)/a)/Gamma(w0/a) Gamma(s+w0/a)/Gamma(s+(b0+w0)/a)".into(),
        oracle: None,
        sampler: Some(SamplerKind::UrnDiagonal { a, d: a, b0, w0 }),
    })
}

/// Diagonal urn with a != d. For a > d the scaled white count converges to
/// W = d U^(-d/a) V with U ~ Gamma(b0/a), V ~ Gamma(w0/d) independent. The
/// case a < d is the same urn with the colors swapped, so the constructor
/// re-dispatches with (a, d) and (b0, w0) exchanged.
pub fn make_urn_diagonal(a: f64, d: f64, b0: f64, w0: f64) -> Result<CatalogEntry> {
    require(a > 0.0 && d > 0.0 && b0 > 0.0 && w0 > 0.0, "urn_diagonal requires a, d, b0, w0 > 0")?;
    require((a - d).abs() > 1e-12 * a.max(d), "urn_diagonal requires a != d (use the polya form)")?;
    if a < d {
        return make_urn_diagonal(d, a, w0, b0);
    }
    let rep = GammaTypeRep::new(
        -ln_gamma_real(b0 / a) - ln_gamma_real(w0 / d),
        1,
        d.ln(),
        vec![factor(-d / a, b0 / a), factor(1.0, w0 / d)],
        vec![],
    )?;
    Ok(CatalogEntry {
        name: format!("urn_diagonal({a},{d};{b0},{w0})"),
        rep,
        expected: expect(
            1.0 + d / a,
            1.0 - d / a,
            b0 / a + w0 / d - 1.0,
            -(d / a) * (d / a).ln() + d.ln(),
            2.0 * PI / (gamma_real(b0 / a) * gamma_real(w0 / d)) * (d / a).powf(b0 / a - 0.5),
            -w0 / d,
            b0 / d,
        ),
        source: "E W^s = d^s Gamma(b0/a - ds/a) Gamma(w0/d + s) / (Gamma(b0/a) Gamma(w0/d))".into(),
        oracle: None,
        sampler: Some(SamplerKind::UrnDiagonal { a, d, b0, w0 }),
    })
}

/// Equal-weight mixture of a point mass at 1 and a uniform on (0,1):
/// E X^s = (s+2)/(2(s+1)). A bounded-support fixture with gamma = 0.
pub fn make_unit_mass_uniform_mix() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(
        -2f64.ln(),
        1,
        0.0,
        vec![factor(1.0, 3.0), factor(1.0, 1.0)],
        vec![factor(1.0, 2.0), factor(1.0, 2.0)],
    )?;
    Ok(CatalogEntry {
        name: "unit_mass_uniform_mix".into(),
        rep,
        expected: expect(0.0, 0.0, 0.0, 0.0, 0.5, -1.0, f64::INFINITY),
        source: "E X^s = (s+2)/(2(s+1)) = Gamma(s+3) Gamma(s+1) / (2 Gamma(s+2)^2)".into(),
        oracle: None,
        sampler: Some(SamplerKind::PointUniformMixture),
    })
}

/// Ratio of an Exp(1) variable to an independent uniform:
/// E X^s = Gamma(s+1) Gamma(1-s) / Gamma(2-s). The one-term positive-side
/// sum x^(-2) is exponentially close to, but not equal to, the density.
pub fn make_exp_over_uniform() -> Result<CatalogEntry> {
    let rep = GammaTypeRep::new(
        0.0,
        1,
        0.0,
        vec![factor(1.0, 1.0), factor(-1.0, 1.0)],
        vec![factor(-1.0, 2.0)],
    )?;
    Ok(CatalogEntry {
        name: "exp_over_uniform".into(),
        rep,
        expected: expect(1.0, 1.0, -0.5, 0.0, (2.0 * PI).sqrt(), -1.0, 1.0),
        source: "E X^s = Gamma(s+1) Gamma(1-s) / Gamma(2-s)".into(),
        oracle: Some(OracleForm::ExpOverUniformDensity),
        sampler: Some(SamplerKind::ExpOverUniform),
    })
}

/// Build an entry from a textual spec: a name optionally followed by
/// colon-separated numeric arguments, e.g. "gamma:2.5", "fisher_f:3:5",
/// "urn_triangular:2:1:1:1:1". "name(2,5)" style is normalized to the
/// same form.
pub fn make(spec: &str) -> Result<CatalogEntry> {
    let cleaned: String = spec
        .trim()
        .replace(['(', ',', ';'], ":")
        .replace(')', "");
    let mut parts = cleaned.split(':').map(str::trim).filter(|p| !p.is_empty());
    let name = parts
        .next()
        .ok_or_else(|| Error::UnknownCatalogName(spec.into()))?;
    let args: Vec<f64> = parts
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::Domain(format!("bad numeric argument {p:?} in {spec:?}")))
        })
        .collect::<Result<_>>()?;
    let need = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{name} takes {k} argument(s), got {}",
                args.len()
            )))
        }
    };
    match name {
        "gamma" => need(1).and_then(|_| make_gamma(args[0])),
        "exponential" => {
            if args.is_empty() {
                make_exponential(1.0)
            } else {
                need(1).and_then(|_| make_exponential(args[0]))
            }
        }
        "uniform" => need(0).and_then(|_| make_uniform()),
        "beta" => need(2).and_then(|_| make_beta(args[0], args[1])),
        "chi2" => need(1).and_then(|_| make_chi2(args[0])),
        "chi" => need(1).and_then(|_| make_chi(args[0])),
        "fisher_f" => need(2).and_then(|_| make_fisher_f(args[0], args[1])),
        "abs_t" => need(1).and_then(|_| make_abs_t(args[0])),
        "weibull" => need(1).and_then(|_| make_weibull(args[0])),
        "stable" => need(1).and_then(|_| make_stable(args[0])),
        "mittag_leffler" => need(1).and_then(|_| make_mittag_leffler(args[0])),
        "pillai_ml" => need(1).and_then(|_| make_pillai_ml(args[0])),
        "pareto" => need(1).and_then(|_| make_pareto(args[0])),
        "shifted_pareto" => need(1).and_then(|_| make_shifted_pareto(args[0])),
        "frechet" => need(1).and_then(|_| make_frechet(args[0])),
        "neg_weibull_extreme" => need(1).and_then(|_| make_neg_weibull_extreme(args[0])),
        "gumbel_mgf" => need(0).and_then(|_| make_gumbel_mgf()),
        "gamma_n_mgf" => need(1).and_then(|_| {
            let n = args[0];
            if n < 1.0 || n.fract() != 0.0 || n > 64.0 {
                Err(Error::Domain("gamma_n_mgf requires an integer n in 1..=64".into()))
            } else {
                make_gamma_n_mgf(n as u32)
            }
        }),
        "levy_area_mgf" => need(0).and_then(|_| make_levy_area_mgf()),
        "brownian_sup_area" => need(0).and_then(|_| make_brownian_sup_area()),
        "hashing_M" | "hashing_m" => need(0).and_then(|_| make_hashing_m()),
        "urn_triangular" => {
            need(5).and_then(|_| make_urn_triangular(args[0], args[1], args[2], args[3], args[4]))
        }
        "urn_diagonal_polya" => {
            need(3).and_then(|_| make_urn_diagonal_polya(args[0], args[1], args[2]))
        }
        "urn_diagonal" => {
            need(4).and_then(|_| make_urn_diagonal(args[0], args[1], args[2], args[3]))
        }
        "unit_mass_uniform_mix" => need(0).and_then(|_| make_unit_mass_uniform_mix()),
        "exp_over_uniform" => need(0).and_then(|_| make_exp_over_uniform()),
        _ => Err(Error::UnknownCatalogName(name.into())),
    }
}

/// One representative entry per family, with default parameters, for the
/// catalog listing.
pub fn default_entries() -> Vec<CatalogEntry> {
    let specs = [
        "gamma:2",
        "exponential:1",
        "uniform",
        "beta:2:3",
        "chi2:3",
        "chi:3",
        "fisher_f:3:5",
        "abs_t:3",
        "weibull:1.5",
        "stable:0.5",
        "mittag_leffler:0.5",
        "pillai_ml:0.5",
        "pareto:2.5",
        "shifted_pareto:1.5",
        "frechet:2",
        "neg_weibull_extreme:2",
        "gumbel_mgf",
        "gamma_n_mgf:2",
        "levy_area_mgf",
        "brownian_sup_area",
        "hashing_M",
        "urn_triangular:2:1:1:1:1",
        "urn_diagonal_polya:1:1:1",
        "urn_diagonal:2:1:1:1",
        "unit_mass_uniform_mix",
        "exp_over_uniform",
    ];
    specs
        .iter()
        .map(|s| make(s).expect("default catalog entries are in-domain"))
        .collect()
}
