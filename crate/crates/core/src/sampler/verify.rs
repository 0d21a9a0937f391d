//! Verification harnesses: empirical statistics against rep predictions.

use super::sample_many;
use crate::catalog::{CatalogEntry, OracleForm, SamplerKind};
use crate::density::{adaptive_simpson, density_mellin};
use crate::error::{Error, Result};
use serde::Serialize;

/// One compared statistic. `se` is estimated from the same sample the
/// statistic came from (or, for quadrature comparisons, is the error band
/// the tolerance is expressed in); `bias` is a deterministic allowance for
/// discretization error. The check passes when
/// |empirical - predicted| <= 4 se + bias.
#[derive(Clone, Debug, Serialize)]
pub struct McStat {
    pub label: String,
    pub empirical: f64,
    pub predicted: f64,
    pub se: f64,
    pub bias: f64,
    pub z: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub subject: String,
    pub seed: u64,
    pub samples: usize,
    pub steps: usize,
    pub stats: Vec<McStat>,
    pub max_abs_z: f64,
    pub pass: bool,
}

fn make_stat(label: String, empirical: f64, predicted: f64, se: f64, bias: f64) -> McStat {
    let diff = empirical - predicted;
    let z = if se > 0.0 {
        diff / se
    } else if diff.abs() <= bias {
        0.0
    } else {
        f64::INFINITY
    };
    McStat {
        label,
        empirical,
        predicted,
        se,
        bias,
        z,
        pass: diff.abs() <= 4.0 * se + bias,
    }
}

fn finish(subject: String, seed: u64, samples: usize, steps: usize, stats: Vec<McStat>) -> McReport {
    let max_abs_z = stats.iter().map(|s| s.z.abs()).fold(0.0, f64::max);
    let pass = stats.iter().all(|s| s.pass);
    McReport {
        subject,
        seed,
        samples,
        steps,
        stats,
        max_abs_z,
        pass,
    }
}

fn discretization_bias(entry: &CatalogEntry, steps: usize) -> f64 {
    match entry.sampler {
        Some(SamplerKind::BrownianSupArea) | Some(SamplerKind::HashingM) => {
            3.0 / (steps as f64).sqrt()
        }
        _ => 0.0,
    }
}

/// Compare empirical moments E X^s with the rep's predicted values at each
/// s in `s_values` (all must lie inside the rep's strip). Sums are taken in
/// a fixed order over the deterministic sample vector, so reports are
/// reproducible across thread counts.
pub fn verify_moments(
    entry: &CatalogEntry,
    s_values: &[f64],
    n: usize,
    steps: usize,
    seed: u64,
) -> Result<McReport> {
    if n < 2 {
        return Err(Error::Domain("moment verification needs n >= 2".into()));
    }
    let xs = sample_many(entry, n, steps, seed)?;
    let bias = discretization_bias(entry, steps);
    let mut stats = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let predicted = entry.rep.evaluate_real(s)?;
        let pows: Vec<f64> = xs.iter().map(|&x| x.powf(s)).collect();
        let mean = pows.iter().sum::<f64>() / n as f64;
        let var = pows.iter().map(|&p| (p - mean) * (p - mean)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        stats.push(make_stat(format!("E X^{s}"), mean, predicted, se, bias));
    }
    Ok(finish(entry.name.clone(), seed, n, steps, stats))
}

/// Compare a histogram of sampled values on `window` against the entry's
/// density (closed form when attached, Mellin inversion otherwise).
/// Bin width follows the Freedman-Diaconis rule on the full sample, and
/// each bin is scored with its Poisson standard error.
pub fn verify_density(
    entry: &CatalogEntry,
    n: usize,
    steps: usize,
    seed: u64,
    window: (f64, f64),
) -> Result<McReport> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!("bad density window ({lo}, {hi})")));
    }
    let xs = sample_many(entry, n, steps, seed)?;
    let mut sorted = xs.clone();
    sorted.sort_by(f64::total_cmp);
    let quartile = |q: f64| sorted[((q * (n - 1) as f64).round() as usize).min(n - 1)];
    let iqr = quartile(0.75) - quartile(0.25);
    let fd_width = 2.0 * iqr * (n as f64).powf(-1.0 / 3.0);
    let bins = if fd_width > 0.0 {
        (((hi - lo) / fd_width).ceil() as usize).clamp(5, 200)
    } else {
        5
    };
    let width = (hi - lo) / bins as f64;

    let mut counts = vec![0u64; bins];
    for &x in &xs {
        if x >= lo && x < hi {
            let idx = (((x - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
    }

    let density_at = |x: f64| -> Result<f64> {
        match entry.oracle {
            Some(form) => form.eval(x),
            None => density_mellin(&entry.rep, x, None),
        }
    };

    let mut stats = Vec::with_capacity(bins);
    for (i, &count) in counts.iter().enumerate() {
        let a = lo + i as f64 * width;
        let b = a + width;
        let m = 0.5 * (a + b);
        let prob = width / 6.0 * (density_at(a)? + 4.0 * density_at(m)? + density_at(b)?);
        let expected = n as f64 * prob;
        let se = (count.max(1) as f64).sqrt();
        stats.push(make_stat(
            format!("bin [{a:.6}, {b:.6})"),
            count as f64,
            expected,
            se,
            0.0,
        ));
    }
    Ok(finish(entry.name.clone(), seed, n, steps, stats))
}

/// Check the double Laplace transform identity for the Brownian supremum
/// area A: for alpha, lambda > 0,
///   int_0^inf psi(alpha t^(3/2)) e^(-lambda t) dt
///     = int_0^inf (1 + 3 alpha t / sqrt(8 lambda))^(-2/3) e^(-lambda t) dt,
/// where psi(s) = E e^(-sA). The left side is evaluated by quadrature over
/// the closed-form density of A, the right side directly; both sides use
/// the same adaptive rule. The error band is set so that the usual
/// |z| <= 4 gate is a 1e-6 relative tolerance.
pub fn verify_double_laplace(alpha: f64, lambdas: &[f64]) -> Result<McReport> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("double-laplace check requires alpha > 0, got {alpha}")));
    }
    // Laplace transform of A tabulated once: psi(s) = sum_i w_i e^(-s x_i).
    // The substitution x = u^3 makes the integrand smooth at 0 (the density
    // expands in powers x^(2/3) and x there), so composite Simpson in u
    // converges at full order. x runs over (0, 8]; the density at 8 is
    // below 1e-40.
    let oracle = OracleForm::BrownianAreaKummer;
    let subintervals = 4096usize;
    let hu = 2.0 / subintervals as f64;
    let mut table: Vec<(f64, f64)> = Vec::with_capacity(subintervals + 1);
    for i in 0..=subintervals {
        let u = i as f64 * hu;
        let x = u * u * u;
        let simpson_w = if i == 0 || i == subintervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let weight = if i == 0 {
            0.0
        } else {
            hu / 3.0 * simpson_w * 3.0 * u * u * oracle.eval(x)?
        };
        table.push((x, weight));
    }
    let psi = |s: f64| -> f64 {
        table.iter().map(|&(x, w)| (-s * x).exp() * w).sum()
    };

    let mut stats = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        // e^(-lambda t) is below 1e-18 past this point and both integrands
        // are bounded by it.
        let t_max = 42.0 / lambda;
        let left_f = |t: f64| psi(alpha * t * t.sqrt()) * (-lambda * t).exp();
        let right_f =
            |t: f64| (1.0 + 3.0 * alpha * t / (8.0 * lambda).sqrt()).powf(-2.0 / 3.0) * (-lambda * t).exp();
        let rough = adaptive_simpson(&right_f, 0.0, t_max, 1e-6 / lambda, 30)?;
        let tol = 1e-10 * rough.abs();
        let left = adaptive_simpson(&left_f, 0.0, t_max, tol, 40)?;
        let right = adaptive_simpson(&right_f, 0.0, t_max, tol, 40)?;
        let band = 2.5e-7 * right.abs();
        stats.push(make_stat(
            format!("alpha={alpha}, lambda={lambda}"),
            left,
            right,
            band,
            0.0,
        ));
    }
    Ok(finish(
        format!("double-laplace alpha={alpha}"),
        0,
        0,
        0,
        stats,
    ))
}

/// Kolmogorov-Smirnov statistic of a sample against a reference CDF.
/// Sorts the slice in place.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max(((i + 1) as f64 / n - f).abs());
        sup = sup.max((f - i as f64 / n).abs());
    }
    sup
}
