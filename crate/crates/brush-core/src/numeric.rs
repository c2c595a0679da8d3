//! Floating-point helpers shared by the evaluators: compensated summation
//! and the positive-real-part square root branch.

use num_complex::Complex64;

/// Kahan-compensated complex accumulator; error about 2 ulp per term.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Square root with Re > 0; on the cut (Re = 0) the branch with Im >= 0.
pub fn sqrt_pos(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        -r
    } else {
        r
    }
}

/// e^{2 pi i f} for a real fraction f.
pub fn e2pi(f: f64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * f;
    Complex64::new(angle.cos(), angle.sin())
}

/// Gaussian tail cutoff: relative threshold 1e-18 corresponds to dropping
/// terms whose decay exponent exceeds ln(1e18) over the peak term's.
pub const TAIL_LOG: f64 = 41.45;
