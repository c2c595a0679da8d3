//! Shared error type. Parse-level failures belong to the CLI; everything here
//! is either a domain violation (bad matrix, bad shift, bad parameter) or a
//! numerical failure that must not be papered over (snap misses).

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd is undefined for (0, 0)")]
    ZeroPair,
    #[error("expected a coprime pair, got ({a}, {b})")]
    NotCoprime { a: BigInt, b: BigInt },
    #[error("matrix determinant is {det}, expected 1")]
    DetNotOne { det: BigInt },
    #[error("real matrix determinant is {det}, expected 1 within 1e-9")]
    RealDetNotOne { det: f64 },
    #[error("shift ({q}, {p}) violates the parity constraint (q, p) = (ab, cd) mod 2")]
    ParityMismatch { q: BigInt, p: BigInt },
    #[error("shift representatives ({q}, {p}) and ({q2}, {p2}) differ mod 2")]
    RepresentativeParity {
        q: BigInt,
        p: BigInt,
        q2: BigInt,
        p2: BigInt,
    },
    #[error("{what} must be positive")]
    NotPositive { what: &'static str },
    #[error("{what} must be nonnegative")]
    Negative { what: &'static str },
    #[error("b = {b} has too many terms for a direct Gauss sum")]
    GaussTooLong { b: BigInt },
    #[error("value {re:+.12e}{im:+.12e}i is {distance:.3e} from the nearest eighth root (limit {limit:.0e})")]
    SnapMiss {
        re: f64,
        im: f64,
        distance: f64,
        limit: f64,
    },
    #[error("metaplectic sign probe {re:+.6e}{im:+.6e}i is not within {tol:.0e} of a unit sign")]
    SignSnapMiss { re: f64, im: f64, tol: f64 },
    #[error("b = 0 (sin(pi*alpha/2) = 0) lies outside this operation's domain")]
    SinIsZero,
    #[error("composition sign probes disagree: {s1:+} at tau = i, {s2:+} at tau = 1+2i")]
    ProbeMismatch { s1: i8, s2: i8 },
    #[error("{what} must be at least {min}")]
    TooSmall { what: &'static str, min: i64 },
    #[error("reduction gave k8 = {reduced} but the Gauss oracle gave k8 = {oracle}")]
    OracleMismatch { reduced: u8, oracle: u8 },
    #[error("depth {depth} exceeds the validated range {max} for this target")]
    DepthTooLarge { depth: u32, max: u32 },
}
