//! Spectral and asymptotic analysis of a representation: net pole/zero
//! orders, the maximal convergence strip, the invariant parameters, Laurent
//! coefficients at poles, and growth predictions along vertical lines and
//! the real axis.

use crate::error::Result;
use crate::rep::{GammaTypeRep, LOCATION_TOLERANCE};
use crate::specfun::ln_gamma_real;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// A merged pole (order > 0) or zero (order < 0) of F on the real axis.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectrumEntry {
    pub location: f64,
    pub order: i32,
}

/// The representation-independent parameters of F together with the strip.
///
/// gamma >= 0 for moment representations, and gamma = 0 forces delta <= 0;
/// all asymptotics (vertical-line decay, real-axis growth, tail laws) are
/// expressed in these five numbers plus the strip ends.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InvariantParams {
    pub gamma: f64,
    pub gamma_prime: f64,
    pub delta: f64,
    pub kappa: f64,
    pub c1: f64,
    pub rho_minus: f64,
    pub rho_plus: f64,
}

/// Open interval of real s on which the function is finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Strip {
    pub lo: f64,
    pub hi: f64,
}

/// Coefficients of the singular part at a pole: F(s) has the expansion
/// sum_l coefficients[l-1] / (s - location)^l near the pole.
#[derive(Clone, Debug, Serialize)]
pub struct LaurentData {
    pub location: f64,
    pub coefficients: Vec<f64>,
}

/// Net pole order of F at real s (positive = pole, negative = zero).
pub fn nu(rep: &GammaTypeRep, s: f64) -> i32 {
    rep.net_order_at(s)
}

/// All net poles and zeros with location in [lo, hi], sorted by location.
/// Factor singularities are merged within the location tolerance; entries
/// whose contributions cancel completely are dropped.
pub fn spectrum(rep: &GammaTypeRep, lo: f64, hi: f64) -> Vec<SpectrumEntry> {
    let mut raw: Vec<(f64, i32)> = Vec::new();
    for (f, w) in rep
        .num
        .iter()
        .map(|f| (f, 1i32))
        .chain(rep.den.iter().map(|f| (f, -1i32)))
    {
        // Factor poles sit at s = -(n + b)/a for integer n >= 0.
        let (at_lo, at_hi) = (-(f.a * lo + f.b), -(f.a * hi + f.b));
        let (n_min, n_max) = if f.a > 0.0 { (at_hi, at_lo) } else { (at_lo, at_hi) };
        let n0 = (n_min - 1e-9).ceil().max(0.0);
        let n1 = (n_max + 1e-9).floor();
        if n1 < n0 || n1 < 0.0 {
            continue;
        }
        let mut n = n0;
        while n <= n1 {
            let loc = -(n + f.b) / f.a;
            if loc >= lo - 1e-12 && loc <= hi + 1e-12 {
                raw.push((loc, w));
            }
            n += 1.0;
        }
    }
    raw.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<SpectrumEntry> = Vec::new();
    let mut i = 0usize;
    while i < raw.len() {
        let start = raw[i].0;
        let tol = LOCATION_TOLERANCE * start.abs().max(1.0);
        let mut order = 0i32;
        let mut loc_sum = 0.0;
        let mut count = 0usize;
        let mut j = i;
        while j < raw.len() && raw[j].0 - start <= tol {
            order += raw[j].1;
            loc_sum += raw[j].0;
            count += 1;
            j += 1;
        }
        if order != 0 {
            merged.push(SpectrumEntry {
                location: loc_sum / count as f64,
                order,
            });
        }
        i = j;
    }
    merged
}

/// Signed pole count: for x > 0 the sum of net orders over net poles in
/// (0, x]; for x < 0 over [x, 0). Zeros (negative net order) subtract.
pub fn pole_density(rep: &GammaTypeRep, x: f64) -> i64 {
    let (lo, hi) = if x > 0.0 { (1e-9, x) } else { (x, -1e-9) };
    spectrum(rep, lo, hi)
        .iter()
        .map(|e| e.order as i64)
        .sum()
}

fn first_pole(rep: &GammaTypeRep, positive: bool) -> Option<f64> {
    let mut lo = 1e-9;
    let mut hi = 8.0;
    while lo < 1.0e4 {
        let entries = if positive {
            spectrum(rep, lo, hi)
        } else {
            spectrum(rep, -hi, -lo)
        };
        let mut best: Option<f64> = None;
        for e in &entries {
            if e.order > 0 {
                let d = e.location.abs();
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
        if let Some(d) = best {
            return Some(if positive { d } else { -d });
        }
        lo = hi;
        hi *= 8.0;
        hi = hi.min(1.0e4);
        if lo >= 1.0e4 {
            break;
        }
    }
    None
}

/// The maximal open strip (rho_minus, rho_plus): the net poles closest to 0
/// on each side, or +-infinity when there are none. Infinity is certified
/// by the empty search window [-1e4, 1e4] together with a slope-sign check
/// on the positivized rep (no factor can produce poles on that side).
pub fn rho_bounds(rep: &GammaTypeRep) -> Strip {
    let hi = match first_pole(rep, true) {
        Some(p) => p,
        None => f64::INFINITY,
    };
    let lo = match first_pole(rep, false) {
        Some(p) => p,
        None => f64::NEG_INFINITY,
    };
    Strip { lo, hi }
}

/// The five invariants plus the strip.
///
/// gamma = sum |a_j| - sum |a'_k|; gamma' drops the absolute values;
/// delta = sum b_j - sum b'_k - (J - K)/2; kappa = sum a_j log|a_j| -
/// sum a'_k log|a'_k| + d; C1 = C (2pi)^((J-K)/2) prod |a_j|^(b_j-1/2)
/// / prod |a'_k|^(b'_k-1/2).
pub fn params(rep: &GammaTypeRep) -> InvariantParams {
    let mut gamma = 0.0;
    let mut gamma_prime = 0.0;
    let mut delta = 0.0;
    let mut kappa = rep.d;
    let mut log_c1 = rep.log_c;
    for f in &rep.num {
        gamma += f.a.abs();
        gamma_prime += f.a;
        delta += f.b;
        kappa += f.a * f.a.abs().ln();
        log_c1 += (f.b - 0.5) * f.a.abs().ln();
    }
    for f in &rep.den {
        gamma -= f.a.abs();
        gamma_prime -= f.a;
        delta -= f.b;
        kappa -= f.a * f.a.abs().ln();
        log_c1 -= (f.b - 0.5) * f.a.abs().ln();
    }
    let jk = rep.num.len() as f64 - rep.den.len() as f64;
    delta -= 0.5 * jk;
    log_c1 += 0.5 * jk * (2.0 * PI).ln();
    let strip = rho_bounds(rep);
    InvariantParams {
        gamma,
        gamma_prime,
        delta,
        kappa,
        c1: rep.sign as f64 * log_c1.exp(),
        rho_minus: strip.lo,
        rho_plus: strip.hi,
    }
}

/// Laurent coefficients of the singular part at s0. An empty coefficient
/// list means s0 is not a net pole. At most `max_order` coefficients are
/// returned (the order of a net pole is small in practice).
///
/// Simple poles caused by exactly one singular factor use the closed-form
/// residue of Gamma times the regular cofactor; everything else goes
/// through a numeric contour integral on a circle small enough to exclude
/// every other singular point, with node doubling (256 -> 512) when the
/// two estimates disagree.
pub fn laurent(rep: &GammaTypeRep, s0: f64, max_order: usize) -> Result<LaurentData> {
    let order = rep.net_order_at(s0);
    if order <= 0 {
        return Ok(LaurentData {
            location: s0,
            coefficients: Vec::new(),
        });
    }
    let n_coeff = (order as usize).min(max_order);

    // Count singular factors at s0 (either list).
    let singular: Vec<usize> = rep
        .num
        .iter()
        .enumerate()
        .filter(|(_, f)| factor_pole_index(f.a, f.b, s0).is_some())
        .map(|(i, _)| i)
        .collect();
    let den_singular = rep
        .den
        .iter()
        .any(|f| factor_pole_index(f.a, f.b, s0).is_some());

    if order == 1 && singular.len() == 1 && !den_singular && n_coeff >= 1 {
        // residue of Gamma(a s + b) at its n-th pole is (-1)^n / (a n!)
        let idx = singular[0];
        let f = rep.num[idx];
        let n = factor_pole_index(f.a, f.b, s0).expect("factor known singular");
        let mut cofactor = rep.clone();
        cofactor.num.remove(idx);
        let g = cofactor.evaluate_real(s0)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let res = g / f.a * sign * (-ln_gamma_real(n as f64 + 1.0)).exp();
        return Ok(LaurentData {
            location: s0,
            coefficients: vec![res],
        });
    }

    // Numeric contour. Radius: clear of every other singular location.
    let mut gap = f64::INFINITY;
    for f in rep.num.iter().chain(rep.den.iter()) {
        // factor poles near s0
        let center_n = -(f.a * s0 + f.b);
        for dn in -4i64..=4 {
            let n = center_n.round() + dn as f64;
            if n < 0.0 {
                continue;
            }
            let loc = -(n + f.b) / f.a;
            let dist = (loc - s0).abs();
            if dist > LOCATION_TOLERANCE * s0.abs().max(1.0) {
                gap = gap.min(dist);
            }
        }
    }
    let radius = (0.45 * gap).min(0.25);

    let coarse = contour_coefficients(rep, s0, radius, n_coeff, 256);
    let mut out = coarse.clone();
    let fine = contour_coefficients(rep, s0, radius, n_coeff, 512);
    let mut agree = true;
    for (c, f) in coarse.iter().zip(fine.iter()) {
        if (c - f).abs() > 1e-10 * f.abs().max(1.0) {
            agree = false;
        }
    }
    if !agree {
        out = fine;
    }
    Ok(LaurentData {
        location: s0,
        coefficients: out,
    })
}

fn contour_coefficients(rep: &GammaTypeRep, s0: f64, radius: f64, n_coeff: usize, nodes: usize) -> Vec<f64> {
    // c_l = (1/2 pi i) \oint F(s) (s-s0)^(l-1) ds, trapezoid on the circle:
    // c_l = (r^l / N) sum_k F(s0 + r e^{i th_k}) e^{i l th_k}.
    let mut sums = vec![Complex64::new(0.0, 0.0); n_coeff];
    for k in 0..nodes {
        let theta = 2.0 * PI * k as f64 / nodes as f64;
        let w = Complex64::from_polar(1.0, theta);
        let s = Complex64::new(s0, 0.0) + w * radius;
        let fv = rep.evaluate(s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let mut pw = w;
        for l in 0..n_coeff {
            sums[l] += fv * pw;
            pw *= w;
        }
    }
    (0..n_coeff)
        .map(|l| (sums[l] * radius.powi(l as i32 + 1) / nodes as f64).re)
        .collect()
}

fn factor_pole_index(a: f64, b: f64, s0: f64) -> Option<u64> {
    let z = a * s0 + b;
    if z > 0.5 {
        return None;
    }
    let n = (-z).round();
    if n >= 0.0 && (z + n).abs() <= LOCATION_TOLERANCE * a.abs().max(1.0) {
        Some(n as u64)
    } else {
        None
    }
}

/// Predicted |F(i t)| for large |t|: C1 |t|^delta e^{-(pi/2) gamma |t|}.
pub fn imag_axis_asymptotic(rep: &GammaTypeRep, t: f64) -> f64 {
    let p = params(rep);
    let at = t.abs();
    p.c1.abs() * at.powf(p.delta) * (-0.5 * PI * p.gamma * at).exp()
}

/// Predicted |F(sigma + i t)| for large |t|: the imaginary-axis law times
/// the strip correction e^{kappa sigma} |t|^{gamma' sigma}.
pub fn strip_asymptotic(rep: &GammaTypeRep, sigma: f64, t: f64) -> f64 {
    let p = params(rep);
    let at = t.abs();
    (p.kappa * sigma).exp() * at.powf(p.gamma_prime * sigma) * imag_axis_asymptotic(rep, t)
}

/// Predicted |F(s)| for large real |s|.
///
/// On a pole-free side this is the sharp law C1 |s|^delta
/// e^{gamma |s| log|s| + (kappa -+ gamma) s}; through pole territory it is
/// the pole-avoiding law with gamma', sharp only up to a bounded factor,
/// and meaningful only at points returned by [`safe_abscissa`].
pub fn real_axis_asymptotic(rep: &GammaTypeRep, s: f64) -> f64 {
    let p = params(rep);
    let a = s.abs();
    if s >= 0.0 && p.rho_plus.is_infinite() {
        p.c1.abs() * a.powf(p.delta) * (p.gamma * a * a.ln() + (p.kappa - p.gamma) * s).exp()
    } else if s < 0.0 && p.rho_minus.is_infinite() {
        p.c1.abs() * a.powf(p.delta) * (p.gamma * a * a.ln() + (p.kappa + p.gamma) * s).exp()
    } else {
        p.c1.abs() * a.powf(p.delta) * (p.gamma_prime * s * a.ln() + (p.kappa - p.gamma_prime) * s).exp()
    }
}

/// Smallest |sin(pi (a s + b))| over all factors of the rep at the point s:
/// the margin that keeps reflection-formula denominators away from zero.
pub fn sine_margin(rep: &GammaTypeRep, s: f64) -> f64 {
    let mut m = 1.0f64;
    for f in rep.num.iter().chain(rep.den.iter()) {
        m = m.min((PI * (f.a * s + f.b)).sin().abs());
    }
    m
}

/// A pole-avoiding abscissa within 1/2 of `near`: the point of a 1001-point
/// grid over [near - 1/2, near + 1/2] maximizing [`sine_margin`]. Every
/// returned point keeps all factor arguments quantifiably clear of the
/// integer lattice, which is what the two-sided real-axis asymptotic needs.
pub fn safe_abscissa(rep: &GammaTypeRep, near: f64) -> f64 {
    let mut best_s = near;
    let mut best_m = -1.0;
    let n = 1000usize;
    for k in 0..=n {
        let s = near - 0.5 + k as f64 / n as f64;
        let m = sine_margin(rep, s);
        if m > best_m {
            best_m = m;
            best_s = s;
        }
    }
    best_s
}

/// How many net poles a side of the axis carries, and where the finite
/// ones sit. Sides with asymptotically positive pole density are infinite;
/// density zero with stragglers beyond half the scan window also counts as
/// infinite (conservatively).
#[derive(Clone, Debug)]
pub(crate) struct SideCensus {
    pub infinite: bool,
    /// Net poles sorted by |location| ascending (only meaningful when finite).
    pub poles: Vec<SpectrumEntry>,
}

pub(crate) fn side_census(rep: &GammaTypeRep, positive: bool) -> SideCensus {
    let p = params(rep);
    let density = if positive {
        0.5 * (p.gamma - p.gamma_prime)
    } else {
        0.5 * (p.gamma + p.gamma_prime)
    };
    if density > 1e-9 {
        return SideCensus {
            infinite: true,
            poles: Vec::new(),
        };
    }
    let window = 2048.0;
    let entries = if positive {
        spectrum(rep, 1e-9, window)
    } else {
        spectrum(rep, -window, -1e-9)
    };
    let mut poles: Vec<SpectrumEntry> = entries.into_iter().filter(|e| e.order > 0).collect();
    if poles.iter().any(|e| e.location.abs() > 0.5 * window) {
        return SideCensus {
            infinite: true,
            poles: Vec::new(),
        };
    }
    poles.sort_by(|a, b| a.location.abs().total_cmp(&b.location.abs()));
    SideCensus {
        infinite: false,
        poles,
    }
}
