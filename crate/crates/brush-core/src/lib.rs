//! Exact fractional Fourier transforms of Dirac combs.
//!
//! A Dirac comb sqrt(r) * sum_k delta(x - rk) maps under the fractional
//! Fourier transform F^alpha, whenever cot(pi*alpha/2) * r^2 is rational, to
//! a "Dirac brush": a comb of spacing 1/s whose coefficients are a quadratic
//! chirp with half-integer index shifts, times a single eighth root of unity
//! mu. Everything that is exact stays exact here: phases live in Q as
//! exponents of e^{i pi x}, the SL(2,Z) bookkeeping uses big integers, and mu
//! is computed two independent ways (symmetry reduction and a quadratic Gauss
//! sum) that cross-check each other. Truncated evaluations (theta series,
//! Gaussian pairings, Fresnel integrals, Bargmann grids) carry explicit tail
//! rules.
//!
//! Modules:
//! - [`exact`]: big rationals, unit phasors, eighth roots, SL(2,Z), shifts
//! - [`mu`]: symmetry reduction of the multiplier mu(M; (q,p))
//! - [`gauss`]: the Gauss-sum oracle for the same multiplier, plus the
//!   per-residue phase motif
//! - [`brush`]: support classification, brush synthesis, Gaussian pairings
//!   three ways, representative changes, parity and periodicity structure
//! - [`theta`]: theta functions with characteristics, their functional
//!   equation, metaplectic composition signs, Bargmann transforms
//! - [`spiral`]: antiderivative traces, Fresnel integrals, Riemann-sum
//!   error scans, the exact motif decomposition, continued fractions

pub mod brush;
pub mod error;
pub mod exact;
pub mod gauss;
pub mod mu;
pub mod numeric;
pub mod spiral;
pub mod theta;

pub use error::{Error, Result};
