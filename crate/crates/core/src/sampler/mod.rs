//! Monte-Carlo generators for the stochastic models behind the catalog.
//!
//! Every sampler draws from an explicit construction of the random variable
//! (a discretized Brownian path, an urn chain, a product of Gamma draws) so
//! that the simulated laws are independent of the moment formulas they are
//! later checked against.
//!
//! Reproducibility contract: all randomness comes from ChaCha8 streams
//! addressed by (seed, stream). Batch sampling partitions work into
//! fixed-size chunks, one stream per chunk, and concatenates in chunk
//! order, so serial and parallel runs produce bit-identical output.

mod verify;

pub use verify::{ks_statistic, verify_density, verify_double_laplace, verify_moments, McReport, McStat};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::rep::GammaTypeRep;
use crate::specfun::ln_gamma_real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta as BetaDist, Distribution, Exp1, Gamma as GammaDist, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Addressable random stream: one (seed, stream) pair, one ChaCha8 state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    /// Materialize the generator for this stream.
    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Batch size for stream partitioning; also the parallel work unit.
pub const SAMPLE_CHUNK: usize = 4096;

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Area under the running maximum of a standard Brownian motion on [0, 1],
/// discretized on a uniform grid of `nsteps` Gaussian increments. Each
/// cell's maximum is completed with an exact Brownian-bridge draw
///   M = (w0 + w1 + sqrt((w0 - w1)^2 - 2 dt ln U)) / 2,
/// so the running-maximum sequence carries the continuum law at the grid
/// times. Without the completion the grid maximum sticks at zero on paths
/// that never go positive (probability ~ 1/sqrt(pi n)), which would give
/// the area an atom at zero and blow up negative moments; with it the
/// remaining bias comes only from the trapezoid rule on a monotone profile,
/// O(1/nsteps) per path.
pub fn sample_brownian_sup_area<R: Rng + ?Sized>(nsteps: usize, rng: &mut R) -> Result<f64> {
    if nsteps < 2 {
        return Err(Error::Domain(format!(
            "brownian path needs at least 2 steps, got {nsteps}"
        )));
    }
    let n = nsteps as f64;
    let dt = n.recip();
    let sqrt_dt = dt.sqrt();
    let mut walk = 0.0f64;
    let mut sup_prev = 0.0f64;
    let mut area = 0.0f64;
    for _ in 0..nsteps {
        let z: f64 = rng.sample(StandardNormal);
        let next = walk + sqrt_dt * z;
        let u = open_unit(rng);
        let diff = walk - next;
        let cell_max = 0.5 * (walk + next + (diff * diff - 2.0 * dt * u.ln()).sqrt());
        let sup = sup_prev.max(cell_max);
        area += 0.5 * (sup_prev + sup);
        sup_prev = sup;
        walk = next;
    }
    Ok(area / n)
}

/// Same functional over a horizon [0, T]. The discrete construction scales
/// exactly: the same increment stream gives T^(3/2) times the unit-horizon
/// value, which is the identity the scaling tests pin down.
pub fn sample_brownian_sup_area_scaled<R: Rng + ?Sized>(
    horizon: f64,
    nsteps: usize,
    rng: &mut R,
) -> Result<f64> {
    if !(horizon > 0.0) {
        return Err(Error::Domain(format!("horizon must be positive, got {horizon}")));
    }
    Ok(horizon * horizon.sqrt() * sample_brownian_sup_area(nsteps, rng)?)
}

/// Positive stable variable with Laplace transform exp(-t^alpha), drawn by
/// Kanter's integral representation
///   X = (a(theta)/W)^((1-alpha)/alpha),
///   a(theta) = sin(alpha theta)^(alpha/(1-alpha)) sin((1-alpha) theta)
///              / sin(theta)^(1/(1-alpha)),
/// with theta uniform on (0, pi) and W a unit exponential. alpha = 1 is the
/// point mass at 1.
pub fn sample_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("stable sampler requires 0 < alpha <= 1, got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(1.0);
    }
    let theta = PI * open_unit(rng);
    let w: f64 = rng.sample(Exp1);
    let log_a = alpha / (1.0 - alpha) * (alpha * theta).sin().ln()
        + ((1.0 - alpha) * theta).sin().ln()
        - theta.sin().ln() / (1.0 - alpha);
    Ok(((1.0 - alpha) / alpha * (log_a - w.ln())).exp())
}

/// Mittag-Leffler variable M = S^(-alpha) for S stable(alpha).
pub fn sample_mittag_leffler<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<f64> {
    Ok(sample_stable(alpha, rng)?.powf(-alpha))
}

/// Pillai's generalized Mittag-Leffler law, survival function E_alpha(-x^alpha):
/// L = T^(1/alpha) S with T a unit exponential and S stable(alpha).
pub fn sample_pillai<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("pillai sampler requires 0 < alpha < 1, got {alpha}")));
    }
    let t: f64 = rng.sample(Exp1);
    Ok(t.powf(1.0 / alpha) * sample_stable(alpha, rng)?)
}

/// Hashing maximum-displacement limit M = (T / A)^(2/3) with T a unit
/// exponential and A an independent Brownian supremum area draw.
pub fn sample_hashing_m<R: Rng + ?Sized>(nsteps: usize, rng: &mut R) -> Result<f64> {
    let t: f64 = rng.sample(Exp1);
    let a = sample_brownian_sup_area(nsteps, rng)?;
    Ok((t / a).powf(2.0 / 3.0))
}

/// Generalized two-color urn with real ball masses. The replacement matrix
/// is ((a, b), (c, d)) by drawn color: drawing black adds a black and b
/// white, drawing white adds c black and d white. Draws are mass-weighted.
/// Returns the (black, white) masses after `nsteps` draws.
pub fn sample_urn<R: Rng + ?Sized>(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    b0: f64,
    w0: f64,
    nsteps: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
        if !(v >= 0.0) {
            return Err(Error::Domain(format!("urn addition {name} = {v} must be >= 0")));
        }
    }
    if !(b0 >= 0.0 && w0 >= 0.0 && b0 + w0 > 0.0) {
        return Err(Error::Domain(format!(
            "urn initial masses (b0, w0) = ({b0}, {w0}) must be nonnegative with positive total"
        )));
    }
    let (mut black, mut white) = (b0, w0);
    for _ in 0..nsteps {
        let p = black / (black + white);
        if rng.random::<f64>() < p {
            black += a;
            white += b;
        } else {
            black += c;
            white += d;
        }
    }
    Ok((black, white))
}

/// Draw from a rep that is a normalized finite product of powers of Gamma
/// variables: no denominator factors, positive offsets, unit value at 0.
/// Then X = e^d prod G_j^(a_j) with G_j independent Gamma(b_j) draws.
pub fn sample_rep<R: Rng + ?Sized>(rep: &GammaTypeRep, rng: &mut R) -> Result<f64> {
    let recognizable = rep.den.is_empty()
        && rep.sign == 1
        && rep.num.iter().all(|f| f.b > 0.0 && f.a != 0.0);
    if !recognizable {
        return Err(Error::UnsupportedRegime(
            "rep is not a finite product of powers of Gamma variables".into(),
        ));
    }
    let log_norm: f64 = rep.log_c + rep.num.iter().map(|f| ln_gamma_real(f.b)).sum::<f64>();
    if log_norm.abs() > 1e-9 {
        return Err(Error::UnsupportedRegime(
            "rep normalization does not match a pure Gamma product".into(),
        ));
    }
    let mut log_x = rep.d;
    for f in &rep.num {
        let dist = GammaDist::new(f.b, 1.0).map_err(|e| Error::Domain(e.to_string()))?;
        let g: f64 = dist.sample(rng);
        log_x += f.a * g.ln();
    }
    Ok(log_x.exp())
}

/// One draw from a catalog entry's stochastic model. `steps` controls the
/// discretization where one exists: Brownian grid size for the area-based
/// entries, chain length for the urns; it is ignored by exact samplers.
pub fn sample_entry<R: Rng + ?Sized>(
    entry: &CatalogEntry,
    steps: usize,
    rng: &mut R,
) -> Result<f64> {
    use crate::catalog::SamplerKind::*;
    let kind = entry
        .sampler
        .ok_or_else(|| Error::UnsupportedRegime(format!("no sampler attached to {}", entry.name)))?;
    match kind {
        GammaProduct => sample_rep(&entry.rep, rng),
        Beta { alpha, beta } => {
            let dist = BetaDist::new(alpha, beta).map_err(|e| Error::Domain(e.to_string()))?;
            Ok(dist.sample(rng))
        }
        Pareto { alpha } => {
            let u = 1.0 - rng.random::<f64>();
            Ok(u.powf(-1.0 / alpha))
        }
        Stable { alpha } => sample_stable(alpha, rng),
        MittagLeffler { alpha } => sample_mittag_leffler(alpha, rng),
        Pillai { alpha } => sample_pillai(alpha, rng),
        BrownianSupArea => sample_brownian_sup_area(steps, rng),
        HashingM => sample_hashing_m(steps, rng),
        ExpSech => {
            // Inverse-CDF draw of the hyperbolic-secant variable, exponentiated.
            let u = open_unit(rng);
            Ok((2.0 / PI * (0.5 * PI * u).tan().ln()).exp())
        }
        ReciprocalUniformProduct { n } => {
            let mut x = 1.0;
            for _ in 0..n {
                x /= open_unit(rng);
            }
            Ok(x)
        }
        UrnTriangular { a, c, d, b0, w0 } => {
            let (_, white) = sample_urn(a, 0.0, c, d, b0, w0, steps, rng)?;
            Ok(white * (steps as f64).powf(-d / a))
        }
        UrnDiagonal { a, d, b0, w0 } => {
            let (_, white) = sample_urn(a, 0.0, 0.0, d, b0, w0, steps, rng)?;
            let scale = if (a - d).abs() <= 1e-12 * a.max(d) {
                steps as f64
            } else {
                (steps as f64).powf(d / a)
            };
            Ok(white / scale)
        }
        PointUniformMixture => {
            if rng.random::<f64>() < 0.5 {
                Ok(1.0)
            } else {
                Ok(open_unit(rng))
            }
        }
        ExpOverUniform => {
            let t: f64 = rng.sample(Exp1);
            Ok(t / open_unit(rng))
        }
    }
}

/// Draw `n` samples from an entry. Work is partitioned into SAMPLE_CHUNK
/// blocks, chunk i consuming stream i of the seed, evaluated in parallel
/// and concatenated in chunk order; the output is bit-identical to a
/// serial loop over the same streams, independent of thread count.
pub fn sample_many(entry: &CatalogEntry, n: usize, steps: usize, seed: u64) -> Result<Vec<f64>> {
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let blocks: Result<Vec<Vec<f64>>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = RngStream::new(seed, ci as u64).rng();
            let take = SAMPLE_CHUNK.min(n - ci * SAMPLE_CHUNK);
            (0..take).map(|_| sample_entry(entry, steps, &mut rng)).collect()
        })
        .collect();
    Ok(blocks?.concat())
}
