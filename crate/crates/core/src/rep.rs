//! The factor-list representation
//!
//! ```text
//!     F(s) = sign * e^logC * e^(d s) * prod_j Gamma(a_j s + b_j)
//!                                    / prod_k Gamma(a'_k s + b'_k)
//! ```
//!
//! together with its closure algebra: products, powers, reciprocals,
//! exponential tilts, offset-positivization and a semantic equivalence test.
//! Representations are plain immutable values; every operation returns a new
//! one.

use crate::analysis;
use crate::error::{Error, Result};
use crate::specfun::{self, log_gamma_unchecked};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A single factor Gamma(a s + b). The slope a must be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "(f64, f64)", from = "(f64, f64)")]
pub struct GammaFactor {
    pub a: f64,
    pub b: f64,
}

impl GammaFactor {
    pub fn new(a: f64, b: f64) -> Self {
        GammaFactor { a, b }
    }

    /// s-location of the n-th pole of this factor (argument equal to -n).
    pub fn pole_location(&self, n: u64) -> f64 {
        -(n as f64 + self.b) / self.a
    }
}

impl From<GammaFactor> for (f64, f64) {
    fn from(f: GammaFactor) -> Self {
        (f.a, f.b)
    }
}

impl From<(f64, f64)> for GammaFactor {
    fn from(t: (f64, f64)) -> Self {
        GammaFactor { a: t.0, b: t.1 }
    }
}

/// Which factor list of a representation an operation addresses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSide {
    Numerator,
    Denominator,
}

/// Location tolerance used whenever two pole/zero positions are compared.
pub const LOCATION_TOLERANCE: f64 = 1e-9;

/// Distance from a net pole below which evaluation refuses to proceed.
pub const EVALUATION_POLE_TOLERANCE: f64 = 1e-12;

/// Witness constants for semantic equivalence: F2(s) = c * d^s * F1(s).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EquivalenceWitness {
    pub c: f64,
    /// The multiplicative base D itself, not its logarithm.
    pub d: f64,
}

/// A function of the product-of-Gamma-factors shape, stored with the scale
/// constant in log-magnitude plus sign form so that large offsets cannot
/// overflow the constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaTypeRep {
    /// log |C|
    #[serde(rename = "logC")]
    pub log_c: f64,
    /// Sign of C: +1 or -1.
    pub sign: i8,
    /// log D: the rep carries the factor e^(d s).
    pub d: f64,
    pub num: Vec<GammaFactor>,
    pub den: Vec<GammaFactor>,
}

impl GammaTypeRep {
    /// Representation of the constant function 1.
    pub fn one() -> Self {
        GammaTypeRep {
            log_c: 0.0,
            sign: 1,
            d: 0.0,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    /// Build from raw parts and validate.
    pub fn new(log_c: f64, sign: i8, d: f64, num: Vec<GammaFactor>, den: Vec<GammaFactor>) -> Result<Self> {
        let rep = GammaTypeRep { log_c, sign, d, num, den };
        rep.validate()?;
        Ok(rep)
    }

    /// Structural validation: finite fields, nonzero slopes, sign in {-1, +1}.
    pub fn validate(&self) -> Result<()> {
        if !(self.log_c.is_finite() && self.d.is_finite()) {
            return Err(Error::InvalidRep("logC and d must be finite".into()));
        }
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidRep(format!("sign must be +1 or -1, got {}", self.sign)));
        }
        for f in self.num.iter().chain(self.den.iter()) {
            if !(f.a.is_finite() && f.b.is_finite()) {
                return Err(Error::InvalidRep("factor parameters must be finite".into()));
            }
            if f.a == 0.0 {
                return Err(Error::InvalidRep("factor slope a must be nonzero".into()));
            }
        }
        Ok(())
    }

    /// Parse the JSON form {"logC":…, "sign":±1, "d":…, "num":[[a,b],…], "den":[[a,b],…]}.
    pub fn from_json(text: &str) -> Result<Self> {
        let rep: GammaTypeRep = serde_json::from_str(text)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Serialize to the JSON form accepted by [`GammaTypeRep::from_json`].
    /// Doubles round-trip exactly.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rep serialization cannot fail")
    }

    /// Net pole order at real s: factors with argument at a non-positive
    /// integer count +1 from the numerator list and -1 from the denominator
    /// list, with location tolerance [`LOCATION_TOLERANCE`].
    pub fn net_order_at(&self, s: f64) -> i32 {
        let mut order = 0i32;
        for f in &self.num {
            if argument_at_pole(f, s) {
                order += 1;
            }
        }
        for f in &self.den {
            if argument_at_pole(f, s) {
                order -= 1;
            }
        }
        order
    }

    /// True when some individual factor is singular near real s (whether or
    /// not the singularities cancel in the net order).
    pub fn factor_singular_near(&self, s: f64) -> bool {
        self.num.iter().chain(self.den.iter()).any(|f| argument_at_pole(f, s))
    }

    /// Raw product over factors: exp(logC + d s + sum log Gamma - sum log Gamma),
    /// no pole handling.
    fn evaluate_raw(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.log_c, 0.0) + s * self.d;
        for f in &self.num {
            acc += log_gamma_unchecked(s * f.a + f.b);
        }
        for f in &self.den {
            acc -= log_gamma_unchecked(s * f.a + f.b);
        }
        acc.exp() * self.sign as f64
    }

    /// F(s). On the real axis, arguments within [`EVALUATION_POLE_TOLERANCE`]
    /// of a net pole are an error; coincident numerator/denominator
    /// singularities that cancel (net order zero) are snapped to the lattice
    /// point and resolved by the exact analytic limit.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        if s.im.abs() <= EVALUATION_POLE_TOLERANCE {
            let x = s.re;
            if let Some(loc) = self.nearest_singular_location(x) {
                let order = self.net_order_at(loc);
                if order > 0 && (x - loc).abs() <= EVALUATION_POLE_TOLERANCE {
                    return Err(Error::PoleAt { location: loc, order });
                }
                if order == 0 && self.factor_singular_near(x) {
                    return Ok(Complex64::new(self.removable_limit(loc), 0.0));
                }
            }
        }
        Ok(self.evaluate_raw(s))
    }

    /// Value of F at a net-order-zero lattice point. Each singular factor
    /// behaves as Gamma(a s + b) = (-1)^n / (n! a (s - loc)) (1 + O(s - loc))
    /// and the (s - loc) powers cancel by the order count, so the limit is a
    /// product of those constants times the regular cofactor. Taking it
    /// analytically avoids the catastrophic cancellation in a s + b that any
    /// finite-difference scheme suffers next to the poles.
    fn removable_limit(&self, loc: f64) -> f64 {
        use std::f64::consts::PI;
        let mut log_mag = self.log_c + self.d * loc;
        let mut sign = f64::from(self.sign);
        for (factors, dir) in [(&self.num, 1.0f64), (&self.den, -1.0)] {
            for f in factors {
                let z = f.a * loc + f.b;
                if argument_at_pole(f, loc) {
                    let n = (-z).round();
                    log_mag -= dir * (specfun::ln_gamma_real(n + 1.0) + f.a.abs().ln());
                    // sign of (-1)^n / a, identical for a factor and its
                    // reciprocal
                    if (n as i64) % 2 == 1 {
                        sign = -sign;
                    }
                    if f.a < 0.0 {
                        sign = -sign;
                    }
                } else {
                    let lg = log_gamma_unchecked(Complex64::new(z, 0.0));
                    log_mag += dir * lg.re;
                    if ((lg.im / PI).round() as i64) % 2 != 0 {
                        sign = -sign;
                    }
                }
            }
        }
        sign * log_mag.exp()
    }

    /// [`GammaTypeRep::evaluate`] restricted to the real axis.
    pub fn evaluate_real(&self, s: f64) -> Result<f64> {
        Ok(self.evaluate(Complex64::new(s, 0.0))?.re)
    }

    /// Location of a factor singularity within [`LOCATION_TOLERANCE`] of s,
    /// if any (the exact lattice point, not s itself).
    fn nearest_singular_location(&self, s: f64) -> Option<f64> {
        let mut best: Option<f64> = None;
        for f in self.num.iter().chain(self.den.iter()) {
            let z = f.a * s + f.b;
            let n = (-z).round();
            if n >= 0.0 && (z + n).abs() <= LOCATION_TOLERANCE * f.a.abs().max(1.0) {
                let loc = -(n + f.b) / f.a;
                if best.is_none_or(|b| (s - loc).abs() < (s - b).abs()) {
                    best = Some(loc);
                }
            }
        }
        best
    }

    /// Rescale C so that F(0) = 1. The offsets alone determine C when no
    /// factor is singular at 0; otherwise the two-sided limit is used.
    /// A net pole or net zero at 0 is invalid.
    pub fn normalize(&self) -> Result<Self> {
        let order = self.net_order_at(0.0);
        if order != 0 {
            return Err(Error::InvalidRep(format!(
                "cannot normalize: net {} of order {} at s = 0",
                if order > 0 { "pole" } else { "zero" },
                order.abs()
            )));
        }
        let mut out = self.clone();
        if !self.factor_singular_near(0.0) {
            // F(0)/C = prod Gamma(b_j) / prod Gamma(b'_k), evaluated in logs.
            let mut log_abs = 0.0;
            let mut sign = 1i8;
            for f in &self.num {
                let g = specfun::gamma_real(f.b);
                log_abs += g.abs().ln();
                if g < 0.0 {
                    sign = -sign;
                }
            }
            for f in &self.den {
                let g = specfun::gamma_real(f.b);
                log_abs -= g.abs().ln();
                if g < 0.0 {
                    sign = -sign;
                }
            }
            out.log_c = -log_abs;
            out.sign = sign;
        } else {
            let probe = GammaTypeRep {
                log_c: 0.0,
                sign: 1,
                ..self.clone()
            };
            let v = probe.evaluate_real(0.0)?;
            if v == 0.0 || !v.is_finite() {
                return Err(Error::InvalidRep("cannot normalize: F(0) limit is zero or non-finite".into()));
            }
            out.log_c = -v.abs().ln();
            out.sign = if v < 0.0 { -1 } else { 1 };
        }
        Ok(out)
    }

    /// Moment rep of X^alpha from that of X: substitute alpha*s for s.
    pub fn power(&self, alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::Domain("power requires a finite nonzero exponent".into()));
        }
        let map = |f: &GammaFactor| GammaFactor::new(f.a * alpha, f.b);
        Ok(GammaTypeRep {
            log_c: self.log_c,
            sign: self.sign,
            d: self.d * alpha,
            num: self.num.iter().map(map).collect(),
            den: self.den.iter().map(map).collect(),
        })
    }

    /// Moment rep of 1/X: the power substitution with alpha = -1.
    pub fn reciprocal(&self) -> Self {
        self.power(-1.0).expect("alpha = -1 is always valid")
    }

    /// Moment rep of the product of independent variables: factor lists
    /// concatenate and the scale constants add. The validity strip is the
    /// intersection of the two strips.
    pub fn product(&self, other: &Self) -> Self {
        let mut num = self.num.clone();
        num.extend_from_slice(&other.num);
        let mut den = self.den.clone();
        den.extend_from_slice(&other.den);
        GammaTypeRep {
            log_c: self.log_c + other.log_c,
            sign: self.sign * other.sign,
            d: self.d + other.d,
            num,
            den,
        }
    }

    /// Exponential tilt: F~(s) = F(s+r)/F(r), the moment rep of the
    /// distribution reweighted by x^r. Requires r inside the open strip.
    pub fn tilt(&self, r: f64) -> Result<Self> {
        let strip = analysis::rho_bounds(self);
        if !(r > strip.lo && r < strip.hi) {
            return Err(Error::TiltOutsideStrip {
                point: r,
                lo: strip.lo,
                hi: strip.hi,
            });
        }
        let fr = self.evaluate_real(r)?;
        if fr == 0.0 || !fr.is_finite() {
            return Err(Error::Domain(format!("tilt: F({r}) = {fr} is not usable as a divisor")));
        }
        let map = |f: &GammaFactor| GammaFactor::new(f.a, f.b + f.a * r);
        Ok(GammaTypeRep {
            log_c: self.log_c + self.d * r - fr.abs().ln(),
            sign: self.sign * if fr < 0.0 { -1 } else { 1 },
            d: self.d,
            num: self.num.iter().map(map).collect(),
            den: self.den.iter().map(map).collect(),
        })
    }

    /// Rewrite to an exactly equal rep whose offsets are all positive (in
    /// fact in (0, 1] for the factors that get shifted), by repeated use of
    /// Gamma(z) = Gamma(z+1)/z and re-encoding of the emitted rational
    /// factors (s - r) as Gamma quotients.
    ///
    /// Fails only when the function has a pole or zero at s = 0 of the kind
    /// that would force a zero offset, which cannot occur for a normalized
    /// moment representation.
    pub fn shift_offsets_positive(&self) -> Result<Self> {
        let mut out = GammaTypeRep {
            log_c: self.log_c,
            sign: self.sign,
            d: self.d,
            num: Vec::with_capacity(self.num.len()),
            den: Vec::with_capacity(self.den.len()),
        };
        // Roots of the rational factor that accumulates in front: zeros of
        // the function go to `zeros`, poles to `poles`.
        let mut zeros: Vec<f64> = Vec::new();
        let mut poles: Vec<f64> = Vec::new();

        for (is_num, f) in self
            .num
            .iter()
            .map(|f| (true, f))
            .chain(self.den.iter().map(|f| (false, f)))
        {
            let steps = if f.b > 0.0 {
                0usize
            } else {
                let m = (-f.b).floor() + 1.0;
                if m > 10_000.0 {
                    return Err(Error::InvalidRep(format!("offset {} too negative to shift", f.b)));
                }
                m as usize
            };
            for i in 0..steps {
                // Gamma(as+b) = Gamma(as+b+1) / (a (s - r)), r = -(b+i)/a.
                let r = -(f.b + i as f64) / f.a;
                if is_num {
                    out.log_c -= f.a.abs().ln();
                    if f.a < 0.0 {
                        out.sign = -out.sign;
                    }
                    poles.push(r);
                } else {
                    out.log_c += f.a.abs().ln();
                    if f.a < 0.0 {
                        out.sign = -out.sign;
                    }
                    zeros.push(r);
                }
            }
            let shifted = GammaFactor::new(f.a, f.b + steps as f64);
            if is_num {
                out.num.push(shifted);
            } else {
                out.den.push(shifted);
            }
        }

        cancel_matched_roots(&mut zeros, &mut poles);

        for &r in &zeros {
            let (nf, df, flip) = encode_linear_root(r)?;
            out.num.push(nf);
            out.den.push(df);
            if flip {
                out.sign = -out.sign;
            }
        }
        for &r in &poles {
            let (nf, df, flip) = encode_linear_root(r)?;
            out.den.push(nf);
            out.num.push(df);
            if flip {
                out.sign = -out.sign;
            }
        }
        Ok(out)
    }

    /// Multiplication-formula rewrite: replace the factor at `index` on
    /// `side` by the m factors Gamma((a/m) s + (b+i)/m), i = 0..m-1, with
    /// the exact compensating constants. The result is exactly equal to the
    /// input as a function.
    pub fn split_factor(&self, side: FactorSide, index: usize, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain("split_factor requires m >= 2".into()));
        }
        let list = match side {
            FactorSide::Numerator => &self.num,
            FactorSide::Denominator => &self.den,
        };
        let Some(&f) = list.get(index) else {
            return Err(Error::Domain(format!("no factor at index {index}")));
        };
        let mf = m as f64;
        let mut pieces = Vec::with_capacity(m as usize);
        for i in 0..m {
            pieces.push(GammaFactor::new(f.a / mf, (f.b + i as f64) / mf));
        }
        // Gamma(m z) = (2 pi)^((1-m)/2) m^(m z - 1/2) prod Gamma(z + i/m),
        // applied with z = (a s + b)/m.
        let log_two_pi = (2.0 * std::f64::consts::PI).ln();
        let const_shift = 0.5 * (1.0 - mf) * log_two_pi + (f.b - 0.5) * mf.ln();
        let d_shift = f.a * mf.ln();

        let mut out = self.clone();
        match side {
            FactorSide::Numerator => {
                out.num.remove(index);
                out.num.extend(pieces);
                out.log_c += const_shift;
                out.d += d_shift;
            }
            FactorSide::Denominator => {
                out.den.remove(index);
                out.den.extend(pieces);
                out.log_c -= const_shift;
                out.d -= d_shift;
            }
        }
        Ok(out)
    }

    /// Semantic equivalence: do the two reps describe the same function up
    /// to a factor c d^s? Checks that the pole/zero spectra agree on the
    /// window [-40, 40] and that F2/F1 is consistent with a single c d^s at
    /// several probe points. Returns the fitted witness when they do.
    pub fn equivalent(&self, other: &Self) -> Result<Option<EquivalenceWitness>> {
        let sp1 = analysis::spectrum(self, -40.0, 40.0);
        let sp2 = analysis::spectrum(other, -40.0, 40.0);
        if sp1.len() != sp2.len() {
            return Ok(None);
        }
        for (e1, e2) in sp1.iter().zip(sp2.iter()) {
            if (e1.location - e2.location).abs() > LOCATION_TOLERANCE || e1.order != e2.order {
                return Ok(None);
            }
        }

        let ratio_at = |x: f64| -> Result<f64> {
            // Nudge real probes off any singular point of either rep.
            let mut p = x;
            for _ in 0..64 {
                if self.net_order_at(p) == 0
                    && other.net_order_at(p) == 0
                    && !self.factor_singular_near(p)
                    && !other.factor_singular_near(p)
                {
                    break;
                }
                p += 0.0137;
            }
            let f1 = self.evaluate_real(p)?;
            let f2 = other.evaluate_real(p)?;
            if f1 == 0.0 || !f1.is_finite() || !f2.is_finite() {
                return Err(Error::Domain(format!("equivalence probe failed at s = {p}")));
            }
            Ok(f2 / f1)
        };

        let rp = ratio_at(0.7)?;
        let rm = ratio_at(-0.7)?;
        if !(rp / rm > 0.0) {
            return Ok(None);
        }
        let d = (rp / rm).powf(1.0 / 1.4);
        let c = rp / d.powf(0.7);

        let tol = 1e-10;
        for x in [0.3, -0.3, 0.7, -0.7] {
            let r = ratio_at(x)?;
            if (r - c * d.powf(x)).abs() > tol * (1.0 + r.abs()) {
                return Ok(None);
            }
        }
        for t in [1.1, -1.1] {
            let s = Complex64::new(0.0, t);
            let f1 = self.evaluate(s)?;
            let f2 = other.evaluate(s)?;
            if f1.norm() == 0.0 {
                return Ok(None);
            }
            let r = f2 / f1;
            let model = Complex64::new(d.ln(), 0.0) * s;
            let model = model.exp() * c;
            if (r - model).norm() > tol * (1.0 + r.norm()) {
                return Ok(None);
            }
        }
        Ok(Some(EquivalenceWitness { c, d }))
    }
}

fn argument_at_pole(f: &GammaFactor, s: f64) -> bool {
    let z = f.a * s + f.b;
    if z > 0.5 {
        return false;
    }
    let n = z.round();
    n <= 0.0 && (z - n).abs() <= LOCATION_TOLERANCE * f.a.abs().max(1.0)
}

/// Remove pairs from `zeros` and `poles` that agree within the location
/// tolerance (they cancel as rational factors).
fn cancel_matched_roots(zeros: &mut Vec<f64>, poles: &mut Vec<f64>) {
    let mut kept = Vec::new();
    'outer: for &z in zeros.iter() {
        for i in 0..poles.len() {
            if (poles[i] - z).abs() <= LOCATION_TOLERANCE {
                poles.remove(i);
                continue 'outer;
            }
        }
        kept.push(z);
    }
    *zeros = kept;
}

/// Encode the linear factor (s - r) as a Gamma quotient with positive
/// offsets: returns (numerator factor, denominator factor, sign flip).
fn encode_linear_root(r: f64) -> Result<(GammaFactor, GammaFactor, bool)> {
    if r.abs() <= LOCATION_TOLERANCE {
        return Err(Error::InvalidRep(
            "net pole or zero at s = 0 cannot be encoded with positive offsets".into(),
        ));
    }
    if r < 0.0 {
        // s - r = s + |r| = Gamma(s + |r| + 1) / Gamma(s + |r|)
        Ok((GammaFactor::new(1.0, -r + 1.0), GammaFactor::new(1.0, -r), false))
    } else {
        // s - r = -(r - s) = -Gamma(-s + r + 1) / Gamma(-s + r)
        Ok((GammaFactor::new(-1.0, r + 1.0), GammaFactor::new(-1.0, r), true))
    }
}

/// Best rational approximation p/q to `x` with q <= max_den, if one matches
/// within `tol`. Used to detect commensurable slope pairs before a
/// multiplication-formula rewrite.
pub fn rational_approx(x: f64, max_den: u32, tol: f64) -> Option<(i64, u32)> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let ax = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = ax;
    for _ in 0..64 {
        let a = v.floor();
        if a > i64::MAX as f64 {
            return None;
        }
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den as i64 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - ax).abs() <= tol * ax.abs().max(1.0) {
        Some((if neg { -p1 } else { p1 }, q1 as u32))
    } else {
        None
    }
}
