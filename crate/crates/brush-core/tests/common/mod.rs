//! Deterministic random data for integration tests: a SplitMix64 stream and
//! generators for unimodular matrices and parity-valid shifts.

#![allow(dead_code)]

use brush_core::exact::{Int, ShiftClass, Sl2z};
use num_integer::Integer;
use num_traits::ToPrimitive;

pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform integer in [lo, hi].
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A random word in the generators: alternating inversions and shears keep
/// the entries modest while covering all sign patterns.
pub fn random_sl2z(rng: &mut SplitMix64, ops: usize) -> Sl2z {
    let mut m = Sl2z::identity();
    for _ in 0..ops {
        if rng.below(2) == 0 {
            m = m.mul(&Sl2z::f1());
        } else {
            let mut j = rng.range(-3, 3);
            if j == 0 {
                j = 1;
            }
            m = m.mul(&Sl2z::shear_w(&Int::from(j)));
        }
    }
    m
}

/// A shift representative compatible with the matrix parity, offset by
/// random even amounts from the canonical one.
pub fn random_shift(rng: &mut SplitMix64, m: &Sl2z) -> ShiftClass {
    let two = Int::from(2);
    let q0 = (m.a() * m.b()).mod_floor(&two);
    let p0 = (m.c() * m.d()).mod_floor(&two);
    ShiftClass::new(
        q0 + Int::from(2 * rng.range(-3, 3)),
        p0 + Int::from(2 * rng.range(-3, 3)),
    )
}

/// i64 view of a matrix entry for tests that need plain integers.
pub fn entry_i64(x: &Int) -> i64 {
    x.to_i64().expect("test matrix entry fits i64")
}
