//! Densities and their asymptotics.
//!
//! Three independent routes to the density are provided: numeric Mellin
//! inversion along a vertical line, and residue series over the negative or
//! positive pole set. The series carry regime logic: depending on the sign
//! of gamma' (and the position of x relative to e^kappa when gamma' = 0) a
//! series is a convergent expansion of the density, an exponentially
//! accurate but inexact asymptotic sum, or simply not valid, in which case
//! it is refused rather than returning a number that looks plausible.

use crate::analysis::{self, side_census, InvariantParams, SpectrumEntry};
use crate::error::{Error, Result};
use crate::rep::GammaTypeRep;
pub use crate::specfun::{SeriesEvaluation, SeriesRegime};
use num_complex::Complex64;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Which density path to use for a log-variable evaluation.
#[derive(Clone, Copy, Debug)]
pub enum DensityMethod {
    Mellin { sigma: Option<f64> },
    SeriesLeft,
    SeriesRight,
}

/// Behavior of the density at 0+ as read off the strip bound rho_minus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "class", content = "value")]
pub enum BoundaryClass {
    /// rho_minus > -1, or a multiple pole at -1: f(x) -> infinity as x -> 0.
    DivergesAtZero,
    /// Simple pole at exactly -1: f(0+) is the residue there.
    FiniteJump(f64),
    /// rho_minus < -1 (finite): f extends continuously by f(0) = 0.
    ContinuousAtZero,
    /// rho_minus = -infinity: f vanishes at 0 faster than any power.
    SmoothAtZero,
}

/// Laurent data of one pole packaged for tail evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct PoleTerm {
    pub location: f64,
    pub coefficients: Vec<f64>,
}

/// Leading asymptotic law of the density at an endpoint.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TailLaw {
    /// f(x) ~ scale * x^(c1 - 1) * exp(-rate * x^(1/gamma)) at infinity, or
    /// f(x) ~ scale * x^(-c1 - 1) * exp(-rate * x^(-1/gamma)) at zero.
    StretchedExponential {
        at_infinity: bool,
        c1: f64,
        rate: f64,
        scale: f64,
        gamma: f64,
    },
    /// Power-log expansion over the leading poles on that side.
    PowerLog {
        at_infinity: bool,
        terms: Vec<PoleTerm>,
    },
}

const GAMMA_ZERO_TOLERANCE: f64 = 1e-12;
const CUTOFF_MARGIN: f64 = 1e-6;
const SERIES_TOLERANCE: f64 = 1e-15;
const MAX_POLES: usize = 500;

/// f_X(x) by Mellin inversion: (1/2 pi) int x^(-sigma-1-it) F(sigma+it) dt.
///
/// sigma defaults to the strip midpoint clipped 0.1 away from finite ends,
/// or 0 when an end is infinite. The integral is truncated where the
/// vertical-line bound C1 e^(kappa sigma) T^(delta + gamma' sigma)
/// e^(-pi gamma T / 2) falls below 1e-14, and integrated by adaptive
/// panels with relative target 1e-11 and absolute floor 1e-15.
pub fn density_mellin(rep: &GammaTypeRep, x: f64, sigma: Option<f64>) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("density requires x > 0, got {x}")));
    }
    let p = analysis::params(rep);
    if p.gamma <= GAMMA_ZERO_TOLERANCE {
        return Err(Error::UnsupportedRegime(
            "Mellin inversion requires gamma > 0 (the transform does not decay otherwise)".into(),
        ));
    }
    let (lo, hi) = (p.rho_minus, p.rho_plus);
    let sigma = match sigma {
        Some(s) => {
            if !(s > lo && s < hi) {
                return Err(Error::Domain(format!("sigma = {s} outside the strip ({lo}, {hi})")));
            }
            s
        }
        None => {
            if lo.is_infinite() || hi.is_infinite() {
                0.0
            } else {
                let mid = 0.5 * (lo + hi);
                let (clip_lo, clip_hi) = (lo + 0.1, hi - 0.1);
                if clip_lo <= clip_hi {
                    mid.clamp(clip_lo, clip_hi)
                } else {
                    mid
                }
            }
        }
    };

    // Truncation height.
    let tail_bound = |t: f64| {
        p.c1.abs()
            * (p.kappa * sigma).exp()
            * t.powf(p.delta + p.gamma_prime * sigma)
            * (-0.5 * PI * p.gamma * t).exp()
    };
    let mut t_max = 8.0f64;
    while tail_bound(t_max) >= 1e-14 {
        t_max *= 1.25;
        if t_max > 1.0e6 {
            return Err(Error::Quadrature(
                "could not find a truncation height for the inversion integral".into(),
            ));
        }
    }

    let log_x = x.ln();
    let integrand = |t: f64| -> f64 {
        let f = rep
            .evaluate(Complex64::new(sigma, t))
            .unwrap_or(Complex64::new(f64::NAN, 0.0));
        (Complex64::new(0.0, -t * log_x).exp() * f).re
    };

    // Panel width limited by the oscillation scale 2 pi / |log x|.
    let width = if log_x.abs() < 1e-12 {
        2.0
    } else {
        (PI / (3.0 * log_x.abs())).min(2.0)
    };
    let n_panels = (t_max / width).ceil() as usize;
    let h = t_max / n_panels as f64;

    // First pass for the magnitude, then refine panels to the shared budget.
    let mut rough = 0.0;
    for k in 0..n_panels {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        rough += simpson(integrand, a, b);
    }
    let tol_total = (1e-11 * rough.abs()).max(1e-15);
    let tol_panel = tol_total / n_panels as f64;

    let mut integral = 0.0;
    for k in 0..n_panels {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        integral += adaptive_simpson(&integrand, a, b, tol_panel, 30)?;
    }
    Ok(x.powf(-sigma - 1.0) / PI * integral)
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

pub(crate) fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let err = left + right - whole;
        if err.abs() <= 15.0 * tol || !err.is_finite() {
            if !err.is_finite() {
                return Err(Error::Quadrature(format!(
                    "non-finite integrand between {a} and {b}"
                )));
            }
            return Ok(left + right + err / 15.0);
        }
        if depth == 0 {
            return Err(Error::Quadrature(format!(
                "adaptive refinement exhausted between {a} and {b}"
            )));
        }
        Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, depth)
}

/// Residue series over the poles rho < 0:
/// f(x) = sum over poles of sum_l c_(l+1)(rho)/l! x^(|rho|-1) log^l (1/x).
///
/// Regime: convergent for every x when gamma' > 0; convergent for
/// x < e^kappa when gamma' = 0 (refused within relative margin 1e-6 of the
/// cutoff and beyond it); refused when gamma' < 0 and the negative pole set
/// is infinite. A finite pole set is always summed in full: exactly
/// (convergent) if gamma = 0 on the valid side of e^kappa, and as an
/// exponentially accurate approximation flagged asymptotic-truncated when
/// gamma > 0.
pub fn density_series_from_left(rep: &GammaTypeRep, x: f64) -> Result<SeriesEvaluation> {
    residue_series(rep, x, false)
}

/// Residue series over the poles rho > 0:
/// f(x) = sum over poles of sum_l (-1)^(l+1) c_(l+1)(rho)/l! x^(-rho-1) log^l x.
///
/// Regime rules mirror [`density_series_from_left`] (gamma' < 0 convergent;
/// gamma' = 0 for x > e^kappa; refused when gamma' > 0 with infinitely many
/// positive poles). An empty positive pole set yields the empty sum 0,
/// refused, never NaN.
pub fn density_series_from_right(rep: &GammaTypeRep, x: f64) -> Result<SeriesEvaluation> {
    residue_series(rep, x, true)
}

fn refused() -> SeriesEvaluation {
    SeriesEvaluation {
        value: 0.0,
        terms_used: 0,
        last_term: 0.0,
        regime: SeriesRegime::Refused,
    }
}

fn residue_series(rep: &GammaTypeRep, x: f64, right: bool) -> Result<SeriesEvaluation> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("density requires x > 0, got {x}")));
    }
    let p = analysis::params(rep);
    if p.gamma < -GAMMA_ZERO_TOLERANCE {
        return Err(Error::UnsupportedRegime("gamma < 0 is not a moment representation".into()));
    }
    let gamma_zero = p.gamma.abs() <= GAMMA_ZERO_TOLERANCE;
    let census = side_census(rep, right);

    if census.infinite {
        if gamma_zero {
            return Err(Error::UnsupportedRegime(
                "gamma = 0 with infinitely many poles on this side is not covered".into(),
            ));
        }
        let gp = p.gamma_prime;
        let accepted = if gp.abs() <= GAMMA_ZERO_TOLERANCE {
            let cutoff = p.kappa.exp();
            if (x - cutoff).abs() <= CUTOFF_MARGIN * cutoff {
                false // silent exactly at the cutoff: refuse near it
            } else if right {
                x > cutoff
            } else {
                x < cutoff
            }
        } else if right {
            gp < 0.0
        } else {
            gp > 0.0
        };
        if !accepted {
            return Ok(refused());
        }
        return sum_infinite(rep, &p, x, right);
    }

    if census.poles.is_empty() {
        return Ok(refused());
    }

    if gamma_zero {
        let cutoff = p.kappa.exp();
        let accepted = if (x - cutoff).abs() <= CUTOFF_MARGIN * cutoff {
            false
        } else if right {
            x > cutoff
        } else {
            x < cutoff
        };
        if !accepted {
            return Ok(refused());
        }
        let (value, n) = sum_pole_list(rep, &census.poles, x, right)?;
        return Ok(SeriesEvaluation {
            value,
            terms_used: n,
            last_term: 0.0, // the finite expansion is exhausted: no remainder
            regime: SeriesRegime::Convergent,
        });
    }

    // gamma > 0 with finitely many poles: the full sum differs from the
    // density by an exponentially small amount and must not claim exactness.
    let (value, n) = sum_pole_list(rep, &census.poles, x, right)?;
    let last = pole_term(rep, census.poles.last().expect("nonempty"), x, right)?;
    Ok(SeriesEvaluation {
        value,
        terms_used: n,
        last_term: last,
        regime: SeriesRegime::AsymptoticTruncated,
    })
}

fn sum_pole_list(rep: &GammaTypeRep, poles: &[SpectrumEntry], x: f64, right: bool) -> Result<(f64, usize)> {
    let mut sum = 0.0;
    for e in poles {
        sum += pole_term(rep, e, x, right)?;
    }
    Ok((sum, poles.len()))
}

fn pole_term(rep: &GammaTypeRep, entry: &SpectrumEntry, x: f64, right: bool) -> Result<f64> {
    let data = analysis::laurent(rep, entry.location, entry.order.max(0) as usize)?;
    Ok(term_from_laurent(&data.coefficients, entry.location, x, right))
}

fn term_from_laurent(coeffs: &[f64], rho: f64, x: f64, right: bool) -> f64 {
    // Both sides share the power x^(-rho-1); the log argument and the sign
    // pattern differ.
    let log_x = x.ln();
    let base = (-rho - 1.0) * log_x;
    let mut factorial = 1.0;
    let mut total = 0.0;
    for (l, &c) in coeffs.iter().enumerate() {
        if l > 0 {
            factorial *= l as f64;
        }
        let log_pow = if right {
            log_x.powi(l as i32)
        } else {
            (-log_x).powi(l as i32)
        };
        let sign = if right {
            if l % 2 == 1 { 1.0 } else { -1.0 }
        } else {
            1.0
        };
        total += sign * c / factorial * log_pow;
    }
    total * base.exp()
}

/// Conservative size estimate for the contribution of the pole at rho,
/// from the pole-avoiding real-axis growth law for the residues.
fn pole_envelope(p: &InvariantParams, rho: f64, x: f64) -> f64 {
    let a = rho.abs();
    if a < 1e-3 {
        return f64::INFINITY;
    }
    let log_x = x.ln();
    let ln_env = p.c1.abs().max(1e-300).ln()
        + p.delta * a.ln()
        + p.gamma_prime * rho * a.ln()
        + (p.kappa - p.gamma_prime) * rho
        + (-rho - 1.0) * log_x
        + 3.0
        + 3.0 * (1.0 + log_x.abs()).ln();
    if ln_env.is_finite() {
        ln_env.exp()
    } else {
        f64::INFINITY
    }
}

fn sum_infinite(rep: &GammaTypeRep, p: &InvariantParams, x: f64, right: bool) -> Result<SeriesEvaluation> {
    let mut iter = NetPoleIter::new(rep, right);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut used = 0usize;
    let mut last = 0.0f64;
    let mut small_streak = 0u32;
    while used < MAX_POLES {
        let Some(entry) = iter.next() else {
            // The side ran out of poles after all: exact finite sum.
            return Ok(SeriesEvaluation {
                value: sum,
                terms_used: used,
                last_term: 0.0,
                regime: SeriesRegime::Convergent,
            });
        };
        let term = pole_term(rep, &entry, x, right)?;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        used += 1;
        last = term;
        let scale = SERIES_TOLERANCE * (1.0 + sum.abs());
        if term.abs() <= scale {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        // Envelope check on the next pole lets us stop before computing
        // its Laurent data.
        if let Some(next) = iter.peek_location() {
            if pole_envelope(p, next, x) <= 0.1 * scale {
                break;
            }
        }
    }
    if used >= MAX_POLES {
        return Err(Error::SeriesDidNotConverge {
            terms: used,
            last_term: last,
        });
    }
    Ok(SeriesEvaluation {
        value: sum,
        terms_used: used,
        last_term: last,
        regime: SeriesRegime::Convergent,
    })
}

struct HeapItem {
    dist: f64,
    factor: usize,
    n: u64,
    weight: i32,
    location: f64,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; reverse for nearest-first.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.factor.cmp(&self.factor))
            .then_with(|| other.n.cmp(&self.n))
    }
}

/// Enumerates net poles on one side of the axis in order of increasing
/// distance from 0, merging coincident factor poles.
struct NetPoleIter {
    heap: BinaryHeap<HeapItem>,
    factors: Vec<(f64, f64, i32)>, // (a, b, weight)
    right: bool,
}

impl NetPoleIter {
    fn new(rep: &GammaTypeRep, right: bool) -> Self {
        let factors: Vec<(f64, f64, i32)> = rep
            .num
            .iter()
            .map(|f| (f.a, f.b, 1i32))
            .chain(rep.den.iter().map(|f| (f.a, f.b, -1i32)))
            .collect();
        let mut it = NetPoleIter {
            heap: BinaryHeap::new(),
            factors,
            right,
        };
        for idx in 0..it.factors.len() {
            it.push_from(idx, 0);
        }
        it
    }

    /// Push the first pole of factor `idx` with index >= n_start that lies
    /// on the requested side.
    fn push_from(&mut self, idx: usize, n_start: u64) {
        let (a, b, weight) = self.factors[idx];
        let mut n = n_start;
        // location = -(n + b)/a; on the right side we need it > 0.
        loop {
            let loc = -(n as f64 + b) / a;
            let on_side = if self.right { loc > 1e-9 } else { loc < -1e-9 };
            if on_side {
                self.heap.push(HeapItem {
                    dist: loc.abs(),
                    factor: idx,
                    n,
                    weight,
                    location: loc,
                });
                return;
            }
            // Moving n by +1 moves the location monotonically; once it has
            // crossed to the wrong side in the direction it keeps moving,
            // no later index can come back.
            let gone = if self.right {
                a > 0.0 && loc <= 0.0
            } else {
                a < 0.0 && loc >= 0.0
            };
            if gone {
                return;
            }
            n += 1;
            if n > 1_000_000 {
                return;
            }
        }
    }

    fn peek_location(&self) -> Option<f64> {
        self.heap.peek().map(|h| h.location)
    }

    fn next(&mut self) -> Option<SpectrumEntry> {
        loop {
            let first = self.heap.pop()?;
            let tol = 1e-9 * first.dist.max(1.0);
            let mut order = first.weight;
            let mut loc_sum = first.location;
            let mut count = 1usize;
            self.push_from(first.factor, first.n + 1);
            while let Some(peek) = self.heap.peek() {
                if (peek.dist - first.dist).abs() <= tol {
                    let item = self.heap.pop().expect("peeked");
                    order += item.weight;
                    loc_sum += item.location;
                    count += 1;
                    self.push_from(item.factor, item.n + 1);
                } else {
                    break;
                }
            }
            if order > 0 {
                return Some(SpectrumEntry {
                    location: loc_sum / count as f64,
                    order,
                });
            }
        }
    }
}

/// Tail law of the density as x -> infinity: stretched-exponential when the
/// positive axis is pole-free (requires gamma > 0), else the power-log
/// expansion over the leading positive poles.
pub fn tail_law_at_infinity(rep: &GammaTypeRep) -> Result<TailLaw> {
    tail_law(rep, true)
}

/// Tail law of the density as x -> 0+: stretched-exponential when the
/// negative axis is pole-free (requires gamma > 0), else power-log over the
/// leading negative poles.
pub fn tail_law_at_zero(rep: &GammaTypeRep) -> Result<TailLaw> {
    tail_law(rep, false)
}

fn tail_law(rep: &GammaTypeRep, at_infinity: bool) -> Result<TailLaw> {
    let p = analysis::params(rep);
    let rho_bound = if at_infinity { p.rho_plus } else { p.rho_minus };
    if rho_bound.is_infinite() {
        if p.gamma <= GAMMA_ZERO_TOLERANCE {
            return Err(Error::UnsupportedRegime(
                "stretched-exponential tail requires gamma > 0".into(),
            ));
        }
        let c1 = (p.delta + 0.5) / p.gamma;
        let (rate, scale) = if at_infinity {
            (
                p.gamma * (-p.kappa / p.gamma).exp(),
                p.c1.abs() * (-c1 * p.kappa).exp() / (2.0 * PI * p.gamma).sqrt(),
            )
        } else {
            (
                p.gamma * (p.kappa / p.gamma).exp(),
                p.c1.abs() * (c1 * p.kappa).exp() / (2.0 * PI * p.gamma).sqrt(),
            )
        };
        return Ok(TailLaw::StretchedExponential {
            at_infinity,
            c1,
            rate,
            scale,
            gamma: p.gamma,
        });
    }
    // Finite bound: collect the leading poles on that side.
    let census = side_census(rep, at_infinity);
    let poles: Vec<SpectrumEntry> = if census.infinite {
        let mut it = NetPoleIter::new(rep, at_infinity);
        let mut v = Vec::new();
        while v.len() < 8 {
            match it.next() {
                Some(e) => v.push(e),
                None => break,
            }
        }
        v
    } else {
        census.poles.into_iter().take(8).collect()
    };
    let mut terms = Vec::with_capacity(poles.len());
    for e in &poles {
        let data = analysis::laurent(rep, e.location, e.order.max(0) as usize)?;
        terms.push(PoleTerm {
            location: data.location,
            coefficients: data.coefficients,
        });
    }
    Ok(TailLaw::PowerLog { at_infinity, terms })
}

/// Evaluate a tail law at x, keeping `order` terms of a power-log law
/// (the stretched-exponential law has a single term; `order` is ignored).
pub fn tail_eval(law: &TailLaw, x: f64, order: usize) -> f64 {
    match law {
        TailLaw::StretchedExponential {
            at_infinity,
            c1,
            rate,
            scale,
            gamma,
        } => {
            if *at_infinity {
                scale * x.powf(c1 - 1.0) * (-rate * x.powf(1.0 / gamma)).exp()
            } else {
                scale * x.powf(-c1 - 1.0) * (-rate * x.powf(-1.0 / gamma)).exp()
            }
        }
        TailLaw::PowerLog { at_infinity, terms } => terms
            .iter()
            .take(order.max(1))
            .map(|t| term_from_laurent(&t.coefficients, t.location, x, *at_infinity))
            .sum(),
    }
}

/// Behavior of f at 0+ from the left strip bound (the nearest negative
/// pole): diverging for rho_minus > -1 or a multiple pole at -1, a finite
/// jump equal to the residue for a simple pole at exactly -1, continuous
/// (with f(0+) = 0) for rho_minus < -1, and smooth when there is no
/// negative pole at all.
pub fn boundary_classification(rep: &GammaTypeRep) -> Result<BoundaryClass> {
    let strip = analysis::rho_bounds(rep);
    let rm = strip.lo;
    if rm.is_infinite() {
        return Ok(BoundaryClass::SmoothAtZero);
    }
    let tol = 1e-9;
    if (rm + 1.0).abs() <= tol {
        let order = rep.net_order_at(rm);
        if order == 1 {
            let data = analysis::laurent(rep, rm, 1)?;
            return Ok(BoundaryClass::FiniteJump(data.coefficients[0]));
        }
        return Ok(BoundaryClass::DivergesAtZero);
    }
    if rm < -1.0 {
        Ok(BoundaryClass::ContinuousAtZero)
    } else {
        Ok(BoundaryClass::DivergesAtZero)
    }
}

/// Density of Y = log X at y, by change of variables f_Y(y) = e^y f_X(e^y)
/// applied to the selected density path. Series paths must land in an
/// accepted regime at e^y.
pub fn log_variable_density(rep: &GammaTypeRep, y: f64, method: DensityMethod) -> Result<f64> {
    let x = y.exp();
    let fx = match method {
        DensityMethod::Mellin { sigma } => density_mellin(rep, x, sigma)?,
        DensityMethod::SeriesLeft => accepted_value(density_series_from_left(rep, x)?)?,
        DensityMethod::SeriesRight => accepted_value(density_series_from_right(rep, x)?)?,
    };
    Ok(x * fx)
}

fn accepted_value(ev: SeriesEvaluation) -> Result<f64> {
    match ev.regime {
        SeriesRegime::Refused => Err(Error::UnsupportedRegime(
            "the requested residue series is not valid at this point".into(),
        )),
        _ => Ok(ev.value),
    }
}
