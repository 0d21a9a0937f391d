//! Tools for probability distributions whose Mellin transform is a finite
//! product of Gamma factors,
//!
//! ```text
//!     E[X^s] = C * D^s * prod_j Gamma(a_j s + b_j) / prod_k Gamma(a'_k s + b'_k)
//! ```
//!
//! on a maximal strip rho_minus < Re s < rho_plus. Distributions of this
//! shape are closed under products of independent variables, powers and
//! reciprocals, and they cover classical laws (gamma, beta, stable, extreme
//! value) as well as limit laws from combinatorics such as the supremum-area
//! functional of Brownian motion and the hashing displacement limit.
//!
//! The crate provides:
//!
//! * [`rep`]: the factor-list representation itself, its algebra (product,
//!   power, reciprocal, exponential tilt), normalization and a semantic
//!   equivalence test;
//! * [`analysis`]: pole/zero spectra, the invariants (gamma, gamma',
//!   delta, kappa, C1), convergence-strip bounds and growth asymptotics
//!   along vertical lines and the real axis;
//! * [`density`]: densities by Mellin inversion, by residue series from
//!   either endpoint, endpoint tail laws and boundary classification;
//! * [`specfun`]: the complex log-gamma, generalized hypergeometric series
//!   and the confluent U function that the rest builds on;
//! * [`catalog`]: ready-made representations for the classical laws and the
//!   limit laws above, with closed-form reference densities where known;
//! * [`sampler`]: exact or asymptotically exact samplers for the catalog
//!   models and Monte Carlo verification of moments and densities.

pub mod analysis;
pub mod catalog;
pub mod density;
mod error;
pub mod rep;
pub mod sampler;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use rep::{GammaFactor, GammaTypeRep};
