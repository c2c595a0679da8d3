//! Independent oracle for the eighth-root multiplier: a normalized quadratic
//! Gauss sum over the residues mod b, evaluated in exact rational arithmetic
//! per term and snapped to the nearest eighth root at the end.
//!
//! For b > 0 the multiplier is
//!
//!   mu = e^{-i pi/4} / sqrt(b) * sum_{n=0}^{b-1} e^{-2 pi i E(n)},
//!   E(n) = -(d / 2b) (n - q/2)^2 - p n / 2 + q p / 8.
//!
//! For b < 0 conjugation inverts the sum: mu(a,b,c,d; q,p) is the reciprocal
//! of mu(a,-b,-c,d; q,-p). For b = 0 (so a = d = +-1) the sum degenerates and
//! mu = e^{i pi p q / 4}, times an extra e^{-i pi/2} when a = -1.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, EighthRoot, Int, Rat, ShiftClass, Sl2z};
use crate::numeric::{e2pi, KahanSum};

/// Largest b accepted for a direct term-by-term sum.
const MAX_TERMS: u64 = 10_000_000;

/// Largest b for which the full phase vector is materialized.
const MAX_MOTIF: u64 = 1_000_000;

/// How far a raw sum may sit from an eighth root before we refuse to snap.
pub const SNAP_LIMIT: f64 = 1e-6;

/// The exponent E(n) of the Gauss-sum term at residue n, as an exact rational.
/// Rejects b = 0, where the defining fraction d/2b is meaningless.
pub fn e_phase(n: &Int, m: &Sl2z, shift: &ShiftClass) -> Result<Rat> {
    if m.b().is_zero() {
        return Err(Error::SinIsZero);
    }
    let two = Int::from(2);
    // n - q/2 = (2n - q) / 2.
    let half_arg = Rat::new(n * &two - shift.q(), two.clone());
    let quad = -Rat::new(m.d().clone(), m.b() * &two) * (&half_arg * &half_arg);
    let lin = -Rat::new(shift.p() * n, two);
    let cst = Rat::new(shift.q() * shift.p(), Int::from(8));
    Ok(quad + lin + cst)
}

/// The per-residue phase motif of a brush with b > 0: E(n) reduced mod 1
/// into [0, 1) for n = 0, .., b-1.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifPhases {
    pub b: u64,
    pub phases: Vec<Rat>,
}

pub fn motif_phases(m: &Sl2z, shift: &ShiftClass) -> Result<MotifPhases> {
    if !m.b().is_positive() {
        return Err(Error::NotPositive { what: "b" });
    }
    let b = m.b().to_u64().ok_or_else(|| Error::GaussTooLong {
        b: m.b().clone(),
    })?;
    if b > MAX_MOTIF {
        return Err(Error::GaussTooLong { b: m.b().clone() });
    }
    let mut phases = Vec::with_capacity(b as usize);
    for n in 0..b {
        let e = e_phase(&Int::from(n), m, shift)?;
        phases.push(mod_one(&e));
    }
    Ok(MotifPhases { b, phases })
}

/// A Gauss-sum evaluation: the raw complex value, the eighth root it snapped
/// to, and how far the raw value sat from that root.
#[derive(Clone, Copy, Debug)]
pub struct GaussMu {
    pub value: num_complex::Complex64,
    pub snapped: EighthRoot,
    pub distance: f64,
}

/// Evaluate the multiplier by direct Gauss sum. Fails loudly (rather than
/// snapping) if the sum lands more than `SNAP_LIMIT` from every eighth root.
pub fn gauss_sum_mu(m: &Sl2z, shift: &ShiftClass) -> Result<GaussMu> {
    if !crate::exact::shift_parity_check(m, shift) {
        return Err(Error::ParityMismatch {
            q: shift.q().clone(),
            p: shift.p().clone(),
        });
    }
    if m.b().is_zero() {
        // a = d = +-1; the degenerate sum is a pure eighth root.
        let mut k8 = shift.p() * shift.q();
        if m.a() == &Int::from(-1) {
            k8 -= Int::from(2);
        }
        let snapped = EighthRoot::from_int(&k8);
        return Ok(GaussMu {
            value: snapped.value(),
            snapped,
            distance: 0.0,
        });
    }
    if m.b().is_negative() {
        // Conjugation: negate b, c, p; the multiplier inverts.
        let conj = Sl2z::new(m.a().clone(), -m.b(), -m.c(), m.d().clone())
            .expect("conjugate of a unimodular matrix is unimodular");
        let flipped = ShiftClass::new(shift.q().clone(), -shift.p());
        let inner = gauss_sum_mu(&conj, &flipped)?;
        let value = inner.value.inv();
        let snapped = inner.snapped.inv();
        let distance = (value - snapped.value()).norm();
        return Ok(GaussMu {
            value,
            snapped,
            distance,
        });
    }

    let b = m
        .b()
        .to_u64()
        .filter(|&b| b <= MAX_TERMS)
        .ok_or_else(|| Error::GaussTooLong { b: m.b().clone() })?;
    let mut acc = KahanSum::new();
    for n in 0..b {
        let e = e_phase(&Int::from(n), m, shift)?;
        // Reduce mod 1 exactly; only the fractional part reaches the floats.
        let f = mod_one(&e).to_f64().expect("fraction in [0,1)");
        acc.add(e2pi(-f));
    }
    let eighth = EighthRoot::new(-1).value();
    let value = eighth * acc.value() / (b as f64).sqrt();

    let (snapped, distance) = EighthRoot::nearest(value);
    if distance > SNAP_LIMIT {
        return Err(Error::SnapMiss {
            re: value.re,
            im: value.im,
            distance,
            limit: SNAP_LIMIT,
        });
    }
    Ok(GaussMu {
        value,
        snapped,
        distance,
    })
}

/// Reduce an exact rational into [0, 1).
fn mod_one(x: &Rat) -> Rat {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < rat(1, 1));
    f
}

/// Convenience: the exact k8 exponent asserted by the oracle.
pub fn gauss_k8(m: &Sl2z, shift: &ShiftClass) -> Result<u8> {
    Ok(gauss_sum_mu(m, shift)?.snapped.k())
}
