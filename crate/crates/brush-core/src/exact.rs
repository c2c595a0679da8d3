//! Exact building blocks: arbitrary-precision rationals, unit phasors
//! e^{i pi phi} with rational phi, eighth roots of unity, SL(2,Z) matrices,
//! and half-integer phase-space shift classes (q, p).
//!
//! All arithmetic in this module is exact. Floating point appears only in
//! the explicit `to_complex`/`value` conversions.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Small-integer rational, handy in tests and parameter plumbing.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Reduce into [0, 2): the canonical representative of a phase exponent mod 2.
fn mod2(phi: Rat) -> Rat {
    let two = Rat::from_integer(Int::from(2));
    let q = (&phi / &two).floor();
    phi - q * two
}

/// Unit complex number e^{i pi phi} with phi rational, reduced mod 2.
///
/// Products and inverses stay exact; equality is equality of reduced phases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseQ {
    phi: Rat,
}

impl PhaseQ {
    pub fn new(phi: Rat) -> Self {
        PhaseQ { phi: mod2(phi) }
    }

    pub fn one() -> Self {
        PhaseQ {
            phi: Rat::zero(),
        }
    }

    /// e^{i pi k/4} for an integer exponent k.
    pub fn from_eighth_exponent(k: &Int) -> Self {
        PhaseQ::new(Rat::new(k.clone(), Int::from(4)))
    }

    /// The reduced exponent, in [0, 2).
    pub fn phi(&self) -> &Rat {
        &self.phi
    }

    pub fn inv(&self) -> Self {
        PhaseQ::new(-&self.phi)
    }

    /// Exact for eighth roots (phi a multiple of 1/4); otherwise cos/sin.
    pub fn to_complex(&self) -> Complex64 {
        if let Some(root) = self.as_eighth() {
            return root.value();
        }
        let phi = self.phi.to_f64().expect("reduced phase fits in f64");
        Complex64::new(
            (std::f64::consts::PI * phi).cos(),
            (std::f64::consts::PI * phi).sin(),
        )
    }

    /// Some(k) when this phase is the eighth root e^{i pi k/4}.
    pub fn as_eighth(&self) -> Option<EighthRoot> {
        let four_phi = &self.phi * Rat::from_integer(Int::from(4));
        if four_phi.is_integer() {
            let k = four_phi.to_integer();
            Some(EighthRoot::from_int(&k))
        } else {
            None
        }
    }
}

impl Mul for PhaseQ {
    type Output = PhaseQ;
    fn mul(self, rhs: PhaseQ) -> PhaseQ {
        PhaseQ::new(self.phi + rhs.phi)
    }
}

impl<'a> Mul<&'a PhaseQ> for &'a PhaseQ {
    type Output = PhaseQ;
    fn mul(self, rhs: &'a PhaseQ) -> PhaseQ {
        PhaseQ::new(&self.phi + &rhs.phi)
    }
}

impl fmt::Debug for PhaseQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(i pi {})", self.phi)
    }
}

/// Eighth root of unity e^{i pi k/4}, k mod 8.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct EighthRoot {
    k: u8,
}

impl EighthRoot {
    pub fn new(k: i64) -> Self {
        EighthRoot {
            k: k.rem_euclid(8) as u8,
        }
    }

    pub fn from_int(k: &Int) -> Self {
        let r = k.mod_floor(&Int::from(8));
        EighthRoot {
            k: r.to_u8().expect("residue mod 8 fits in u8"),
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn mul(&self, rhs: &EighthRoot) -> EighthRoot {
        EighthRoot::new(i64::from(self.k) + i64::from(rhs.k))
    }

    pub fn inv(&self) -> EighthRoot {
        EighthRoot::new(-i64::from(self.k))
    }

    /// Exact table values; the only irrational entries are +-1/sqrt(2).
    pub fn value(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (re, im) = match self.k {
            0 => (1.0, 0.0),
            1 => (h, h),
            2 => (0.0, 1.0),
            3 => (-h, h),
            4 => (-1.0, 0.0),
            5 => (-h, -h),
            6 => (0.0, -1.0),
            _ => (h, -h),
        };
        Complex64::new(re, im)
    }

    pub fn to_phase(&self) -> PhaseQ {
        PhaseQ::from_eighth_exponent(&Int::from(self.k))
    }

    /// Nearest eighth root to an arbitrary complex value, with its distance.
    pub fn nearest(z: Complex64) -> (EighthRoot, f64) {
        let mut best = EighthRoot::new(0);
        let mut best_dist = f64::INFINITY;
        for k in 0..8 {
            let root = EighthRoot::new(k);
            let dist = (z - root.value()).norm();
            if dist < best_dist {
                best = root;
                best_dist = dist;
            }
        }
        (best, best_dist)
    }
}

impl fmt::Debug for EighthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(i pi {}/4)", self.k)
    }
}

/// Integer 2x2 matrix (a b; c d) with det = 1, checked at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sl2z {
    a: Int,
    b: Int,
    c: Int,
    d: Int,
}

impl Sl2z {
    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::DetNotOne { det });
        }
        Ok(Sl2z { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Sl2z::new(Int::from(a), Int::from(b), Int::from(c), Int::from(d))
    }

    pub fn identity() -> Self {
        Sl2z::from_i64(1, 0, 0, 1).expect("identity is unimodular")
    }

    /// F1 = (0 1; -1 0), the Fourier rotation.
    pub fn f1() -> Self {
        Sl2z::from_i64(0, 1, -1, 0).expect("F1 is unimodular")
    }

    /// W_j = (1 0; j 1), the lower shear.
    pub fn shear_w(j: &Int) -> Self {
        Sl2z {
            a: Int::one(),
            b: Int::zero(),
            c: j.clone(),
            d: Int::one(),
        }
    }

    pub fn a(&self) -> &Int {
        &self.a
    }
    pub fn b(&self) -> &Int {
        &self.b
    }
    pub fn c(&self) -> &Int {
        &self.c
    }
    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn mul(&self, rhs: &Sl2z) -> Sl2z {
        // Determinants multiply, so the product needs no re-check.
        Sl2z {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Debug for Sl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

pub fn sl2z_mul(m1: &Sl2z, m2: &Sl2z) -> Sl2z {
    m1.mul(m2)
}

/// Half-integer phase-space shift, stored as the integer pair (q, p).
/// Valid for a matrix M iff (q, p) = (ab, cd) mod 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShiftClass {
    q: Int,
    p: Int,
}

impl ShiftClass {
    pub fn new(q: Int, p: Int) -> Self {
        ShiftClass { q, p }
    }

    pub fn from_i64(q: i64, p: i64) -> Self {
        ShiftClass::new(Int::from(q), Int::from(p))
    }

    pub fn q(&self) -> &Int {
        &self.q
    }
    pub fn p(&self) -> &Int {
        &self.p
    }
}

impl fmt::Debug for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.p)
    }
}

/// Extended Euclid: (g, x, y) with a*x + b*y = g = gcd(a, b) > 0.
pub fn gcd_ext(a: &Int, b: &Int) -> Result<(Int, Int, Int)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPair);
    }
    // Pin the degenerate cases so that (1, 0) -> (1, 1, 0) exactly.
    if b.is_zero() {
        let sign = a.signum();
        return Ok((a.abs(), sign, Int::zero()));
    }
    if a.is_zero() {
        let sign = b.signum();
        return Ok((b.abs(), Int::zero(), sign));
    }
    let ext = a.extended_gcd(b);
    debug_assert!(ext.gcd.is_positive());
    Ok((ext.gcd, ext.x, ext.y))
}

/// Completes a coprime pair (a, b) to (a b; c d) in SL(2,Z).
///
/// Canonical choice: for b != 0 the unique d in [1, |b|] with a*d = 1 mod b,
/// c = (a*d - 1)/b. This range (rather than [0, |b|)) is what makes the
/// completion of (1, 1) come out as (c, d) = (0, 1); the two ranges differ
/// only when |b| = 1. For b = 0, a must be +-1 and the result is (0, a).
pub fn complete_to_sl2z(a: &Int, b: &Int) -> Result<(Int, Int)> {
    if b.is_zero() {
        if a.abs().is_one() {
            return Ok((Int::zero(), a.clone()));
        }
        return Err(Error::NotCoprime {
            a: a.clone(),
            b: b.clone(),
        });
    }
    let (g, x, _) = gcd_ext(a, b)?;
    if !g.is_one() {
        return Err(Error::NotCoprime {
            a: a.clone(),
            b: b.clone(),
        });
    }
    let babs = b.abs();
    // a*x = 1 mod b, so x mod |b| is the inverse residue; it is zero only
    // when |b| = 1, where the canonical representative is d = |b|.
    let mut d = x.mod_floor(&babs);
    if d.is_zero() {
        d = babs;
    }
    let c = (&(a * &d) - Int::one()) / b;
    debug_assert!((a * &d - b * &c).is_one());
    Ok((c, d))
}

pub fn shift_parity_check(m: &Sl2z, s: &ShiftClass) -> bool {
    let two = Int::from(2);
    let ab = (m.a() * m.b()).mod_floor(&two);
    let cd = (m.c() * m.d()).mod_floor(&two);
    s.q().mod_floor(&two) == ab && s.p().mod_floor(&two) == cd
}

/// The exact factor relating two shift representatives of the same class:
/// mu(M; (q, p)) = shift_change_phase(from, to) * mu(M; (q', p')).
///
/// The value is e^{(i pi/4)((p'-p)q' - p(q'-q))}, an eighth root because the
/// differences are even.
pub fn shift_change_phase(from: &ShiftClass, to: &ShiftClass) -> Result<PhaseQ> {
    let two = Int::from(2);
    if from.q().mod_floor(&two) != to.q().mod_floor(&two)
        || from.p().mod_floor(&two) != to.p().mod_floor(&two)
    {
        return Err(Error::RepresentativeParity {
            q: from.q().clone(),
            p: from.p().clone(),
            q2: to.q().clone(),
            p2: to.p().clone(),
        });
    }
    let expo = (to.p() - from.p()) * to.q() - from.p() * (to.q() - from.q());
    Ok(PhaseQ::from_eighth_exponent(&expo))
}
