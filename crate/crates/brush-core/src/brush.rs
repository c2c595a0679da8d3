//! Brush synthesis: classify when a transformed comb stays discrete, build
//! the full coefficient data (spacing, chirp, multiplier, branch sign), pair
//! the result against Gaussians three independent ways, and expose the
//! arithmetic structure of the support (representative changes, parity
//! points, periods, delta counts).

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{rat, EighthRoot, Int, PhaseQ, Rat, ShiftClass, Sl2z};
use crate::gauss;
use crate::mu;
use crate::numeric::{sqrt_pos, KahanSum, TAIL_LOG};

/// Largest |b| for which the Gauss oracle is run as a cross-check during
/// synthesis; reduction alone is trusted beyond this.
const ORACLE_CAP: i64 = 100_000;

/// The cotangent of pi*alpha/2, as the caller knows it.
#[derive(Clone, Debug, PartialEq)]
pub enum CotInput {
    /// cot(pi*alpha/2) is exactly this rational.
    Value(Rat),
    /// sin(pi*alpha/2) = 0: alpha is an even integer, the cotangent blows up.
    SinZero,
    /// cos(pi*alpha/2) = 0: alpha is an odd integer, the cotangent vanishes.
    CosZero,
    /// cot(pi*alpha/2) * r^2 is known to be irrational.
    Irrational,
}

/// Whether the transformed comb is again a weighted point mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportClass {
    /// Supported on (1/s)(Z + q/2) with e^{i pi alpha/2} = (a/r + i b r)/s.
    Discrete { a: Int, b: Int },
    /// Supported everywhere: the image is not a measure.
    Dense,
}

/// Discreteness test: the image of the comb of spacing r under F^alpha is
/// discrete exactly when cot(pi*alpha/2) * r^2 is rational, in which case
/// that rational in lowest terms is a/b.
pub fn classify_support(cot: &CotInput, r_sq: &Rat) -> Result<SupportClass> {
    if !r_sq.is_positive() {
        return Err(Error::NotPositive { what: "r^2" });
    }
    Ok(match cot {
        CotInput::Value(c) => {
            let x = c * r_sq;
            SupportClass::Discrete {
                a: x.numer().clone(),
                b: x.denom().clone(),
            }
        }
        // alpha even: the transform is the identity or the parity flip and
        // the comb maps to itself.
        CotInput::SinZero => SupportClass::Discrete {
            a: Int::from(1),
            b: Int::from(0),
        },
        // alpha odd: a plain Fourier transform, comb of spacing 1/r.
        CotInput::CosZero => SupportClass::Discrete {
            a: Int::from(0),
            b: Int::from(1),
        },
        CotInput::Irrational => SupportClass::Dense,
    })
}

/// A fractional order alpha with e^{i pi alpha/2} = (a/r + i b r)/s for the
/// principal representative, plus a branch index counting full 4-steps of
/// alpha (each flips the unitary's global sign).
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSpec {
    a: Int,
    b: Int,
    r_sq: Rat,
    branch: i64,
}

impl AlphaSpec {
    pub fn new(a: Int, b: Int, r_sq: Rat, branch: i64) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPair);
        }
        let g = a.gcd(&b);
        if !g.is_one() {
            return Err(Error::NotCoprime { a, b });
        }
        if !r_sq.is_positive() {
            return Err(Error::NotPositive { what: "r^2" });
        }
        Ok(Self { a, b, r_sq, branch })
    }

    pub fn from_i64(a: i64, b: i64, r_sq: Rat, branch: i64) -> Result<Self> {
        Self::new(Int::from(a), Int::from(b), r_sq, branch)
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn r_sq(&self) -> &Rat {
        &self.r_sq
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    /// s^2 = a^2/r^2 + b^2 r^2, the squared norm of a/r + i b r.
    pub fn s_sq(&self) -> Rat {
        let a2 = Rat::from_integer(&self.a * &self.a);
        let b2 = Rat::from_integer(&self.b * &self.b);
        a2 / &self.r_sq + b2 * &self.r_sq
    }

    /// The global unitary sign: +1 on the principal branch alpha in (-2, 2],
    /// flipping with every 4 added to alpha.
    pub fn epsilon(&self) -> i8 {
        mu::epsilon_for_branch(self.branch)
    }
}

/// Everything needed to write down the transformed comb explicitly: the
/// completed matrix column (c, d), the squared spacing parameter s^2, the
/// chirp rate t, the half-integer shift class, the eighth-root multiplier,
/// and the branch sign.
#[derive(Clone, Debug)]
pub struct BrushSpec {
    alpha: AlphaSpec,
    c: Int,
    d: Int,
    s_sq: Rat,
    t: Rat,
    shift: ShiftClass,
    mu: EighthRoot,
    epsilon: i8,
}

/// Build the brush for a given order. `shift` picks a representative of the
/// half-integer shift class; `None` takes the canonical one (ab, cd).
///
/// The multiplier is computed by symmetry reduction and, for moderate b,
/// cross-checked against the independent Gauss-sum oracle.
pub fn brush_spec(alpha: AlphaSpec, shift: Option<&ShiftClass>) -> Result<BrushSpec> {
    let (c, d) = crate::exact::complete_to_sl2z(&alpha.a, &alpha.b)?;
    let m = Sl2z::new(alpha.a.clone(), alpha.b.clone(), c.clone(), d.clone())
        .expect("completion is unimodular");

    let s_sq = alpha.s_sq();
    // t = ac/r^2 + bd r^2; the chirp rate of the brush.
    let t = Rat::from_integer(&alpha.a * &c) / &alpha.r_sq
        + Rat::from_integer(&alpha.b * &d) * &alpha.r_sq;
    // Sanity: d s^2 = a/r^2 + b t holds identically.
    debug_assert_eq!(
        Rat::from_integer(d.clone()) * &s_sq,
        Rat::from_integer(alpha.a.clone()) / &alpha.r_sq + Rat::from_integer(alpha.b.clone()) * &t
    );

    let shift = match shift {
        Some(s) => {
            if !crate::exact::shift_parity_check(&m, s) {
                return Err(Error::ParityMismatch {
                    q: s.q().clone(),
                    p: s.p().clone(),
                });
            }
            s.clone()
        }
        None => mu::canonical_shift(&m),
    };

    let reduced = mu::mu_reduce(&m, &shift)?;
    if !alpha.b.is_zero() && alpha.b.abs() <= Int::from(ORACLE_CAP) {
        let oracle = gauss::gauss_sum_mu(&m, &shift)?;
        if oracle.snapped.k() != reduced.k8.k() {
            return Err(Error::OracleMismatch {
                reduced: reduced.k8.k(),
                oracle: oracle.snapped.k(),
            });
        }
    }

    let epsilon = alpha.epsilon();
    Ok(BrushSpec {
        alpha,
        c,
        d,
        s_sq,
        t,
        shift,
        mu: reduced.k8,
        epsilon,
    })
}

impl BrushSpec {
    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn s_sq(&self) -> &Rat {
        &self.s_sq
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn shift(&self) -> &ShiftClass {
        &self.shift
    }

    pub fn mu(&self) -> EighthRoot {
        self.mu
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn matrix(&self) -> Sl2z {
        Sl2z::new(
            self.alpha.a.clone(),
            self.alpha.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
        .expect("stored matrix is unimodular")
    }

    /// Spacing denominator s as a float.
    pub fn s(&self) -> f64 {
        self.s_sq.to_f64().expect("s^2 fits f64").sqrt()
    }

    /// Half-integer index k = n + q/2 of the integer slot n.
    pub fn half_index(&self, n: &Int) -> Rat {
        Rat::new(n * Int::from(2) + self.shift.q(), Int::from(2))
    }
}

/// One delta of the brush: its half-integer index k = n + q/2, its position
/// k/s, and its coefficient split into exact phase and float magnitude.
#[derive(Clone, Debug)]
pub struct BrushCoefficient {
    pub n: Int,
    pub k: Rat,
    pub position: f64,
    pub magnitude: f64,
    pub phase: PhaseQ,
    pub value: Complex64,
}

/// Coefficient of the delta at (n + q/2)/s:
/// epsilon * mu * s^{-1/2} * e^{-i pi (qp/4 + p k + (t/s^2) k^2)}.
pub fn brush_coefficient(spec: &BrushSpec, n: &Int) -> BrushCoefficient {
    let k = spec.half_index(n);
    let q = spec.shift.q();
    let p = spec.shift.p();

    let chirp = -(Rat::new(q * p, Int::from(4))
        + Rat::from_integer(p.clone()) * &k
        + (&spec.t / &spec.s_sq) * (&k * &k));
    let mut phi = chirp + rat(spec.mu.k() as i64, 4);
    if spec.epsilon < 0 {
        phi += rat(1, 1);
    }
    let phase = PhaseQ::new(phi);

    let s_sq_f = spec.s_sq.to_f64().expect("s^2 fits f64");
    let magnitude = s_sq_f.powf(-0.25);
    let position = (&k * &k / &spec.s_sq)
        .to_f64()
        .expect("position fits f64")
        .sqrt()
        .copysign(k.to_f64().expect("index fits f64"));
    let value = phase.to_complex().scale(magnitude);

    BrushCoefficient {
        n: n.clone(),
        k,
        position,
        magnitude,
        phase,
        value,
    }
}

fn require_upper_half(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositive { what: "Im(tau)" })
    }
}

/// Pair the brush against the Gaussian e^{i pi tau x^2} by direct summation
/// over its deltas. Terms are cut once their Gaussian suppression passes
/// 1e-18 relative to the largest, i.e. at positions x with
/// pi Im(tau) x^2 > pi Im(tau) x_min^2 + TAIL_LOG.
pub fn pair_gaussian_brush(spec: &BrushSpec, tau: Complex64) -> Result<Complex64> {
    require_upper_half(tau)?;
    let s_f = spec.s();
    let q_f = spec.shift.q().to_f64().expect("shift fits f64") / 2.0;
    // The nearest delta to the origin is within 1/(2s).
    let x_max = (0.25 / (s_f * s_f) + TAIL_LOG / (std::f64::consts::PI * tau.im)).sqrt();
    let n_lo = (-s_f * x_max - q_f).floor() as i64 - 1;
    let n_hi = (s_f * x_max - q_f).ceil() as i64 + 1;

    let mut acc = KahanSum::new();
    for n in n_lo..=n_hi {
        let coeff = brush_coefficient(spec, &Int::from(n));
        let x_sq = (&coeff.k * &coeff.k / &spec.s_sq)
            .to_f64()
            .expect("x^2 fits f64");
        let gauss = (Complex64::i() * std::f64::consts::PI * tau * x_sq).exp();
        acc.add(coeff.value * gauss);
    }
    Ok(acc.value())
}

/// The same pairing via the closed form: push the Gaussian through the
/// transform, so the answer is a theta-type sum over the original comb
/// against the rotated parameter tau'.
pub fn pair_gaussian_closedform(alpha: &AlphaSpec, tau: Complex64) -> Result<Complex64> {
    require_upper_half(tau)?;
    let r_f = alpha.r_sq.to_f64().expect("r^2 fits f64").sqrt();
    let s_f = alpha.s_sq().to_f64().expect("s^2 fits f64").sqrt();
    let a_f = alpha.a.to_f64().expect("a fits f64");
    let b_f = alpha.b.to_f64().expect("b fits f64");
    let cos_t = a_f / (r_f * s_f);
    let sin_t = b_f * r_f / s_f;

    let w = Complex64::new(cos_t, 0.0) + tau * sin_t;
    let factor = sqrt_pos(w).inv();
    let tau2 = (tau * cos_t - sin_t) / w;
    debug_assert!(tau2.im > 0.0);

    let k_max = ((TAIL_LOG / (std::f64::consts::PI * tau2.im)).sqrt() / r_f).ceil() as i64 + 1;
    let mut acc = KahanSum::new();
    for k in -k_max..=k_max {
        let x_sq = (r_f * k as f64) * (r_f * k as f64);
        acc.add((Complex64::i() * std::f64::consts::PI * tau2 * x_sq).exp());
    }
    let eps = f64::from(alpha.epsilon());
    Ok(acc.value() * factor * r_f.sqrt() * eps)
}

/// The same pairing via the integral kernel of the transform, with optional
/// damping: the order is shifted to alpha - i*eps_reg before taking the
/// kernel, which regularizes the oscillatory integral. eps_reg = 0 is the
/// bare kernel. Rejects b = 0, where the kernel degenerates to a delta.
pub fn pair_gaussian_mehler(alpha: &AlphaSpec, tau: Complex64, eps_reg: f64) -> Result<Complex64> {
    if alpha.b.is_zero() {
        return Err(Error::SinIsZero);
    }
    require_upper_half(tau)?;
    if eps_reg < 0.0 {
        return Err(Error::Negative { what: "eps_reg" });
    }
    let r_f = alpha.r_sq.to_f64().expect("r^2 fits f64").sqrt();
    let s_f = alpha.s_sq().to_f64().expect("s^2 fits f64").sqrt();
    let a_f = alpha.a.to_f64().expect("a fits f64");
    let b_f = alpha.b.to_f64().expect("b fits f64");
    let theta = (b_f * r_f / s_f).atan2(a_f / (r_f * s_f));

    // alpha -> alpha - i eps shifts the kernel angle to theta - i pi eps/2.
    let theta_c = Complex64::new(theta, -std::f64::consts::PI * eps_reg / 2.0);
    let sin_c = theta_c.sin();
    let cos_c = theta_c.cos();
    let cot_c = cos_c / sin_c;
    let pref = sqrt_pos(Complex64::i() * sin_c).inv();

    let pi = std::f64::consts::PI;
    let a_coef = Complex64::i() * pi * (tau + cot_c);
    let gauss_pref = sqrt_pos(pi / -a_coef);

    // Effective decay parameter of the summed terms; drives the cutoff.
    let tau2 = (tau * cos_c - sin_c) / (tau * sin_c + cos_c);
    debug_assert!(tau2.im > 0.0);
    let k_max = ((TAIL_LOG / (pi * tau2.im)).sqrt() / r_f).ceil() as i64 + 1;

    let mut acc = KahanSum::new();
    for k in -k_max..=k_max {
        let y = r_f * k as f64;
        let b_coef = Complex64::new(0.0, -2.0 * pi * y) / sin_c;
        let c_coef = Complex64::i() * pi * cot_c * y * y;
        acc.add(gauss_pref * (c_coef - b_coef * b_coef / (4.0 * a_coef)).exp());
    }
    let eps = f64::from(alpha.epsilon());
    Ok(acc.value() * pref * r_f.sqrt() * eps)
}

/// Rewrite the same brush over the representative (c + ja, d + jb) of the
/// completion. The chirp rate moves by j s^2, the shift by (0, j(q-1)), and
/// the multiplier by e^{i pi j q / 4}; the measure is unchanged.
pub fn representative_change(spec: &BrushSpec, j: &Int) -> BrushSpec {
    let c2 = &spec.c + j * &spec.alpha.a;
    let d2 = &spec.d + j * &spec.alpha.b;
    let t2 = &spec.t + Rat::from_integer(j.clone()) * &spec.s_sq;
    let shift2 = ShiftClass::new(
        spec.shift.q().clone(),
        spec.shift.p() + j * (spec.shift.q() - Int::from(1)),
    );
    let m2 = Sl2z::new(
        spec.alpha.a.clone(),
        spec.alpha.b.clone(),
        c2.clone(),
        d2.clone(),
    )
    .expect("column shear preserves the determinant");
    let reduced = mu::mu_reduce(&m2, &shift2).expect("column shear preserves shift parity");
    debug_assert_eq!(
        reduced.k8.k(),
        spec.mu
            .mul(&EighthRoot::from_int(&(j * spec.shift.q())))
            .k()
    );
    BrushSpec {
        alpha: spec.alpha.clone(),
        c: c2,
        d: d2,
        s_sq: spec.s_sq.clone(),
        t: t2,
        shift: shift2,
        mu: reduced.k8,
        epsilon: spec.epsilon,
    }
}

/// The arithmetic progression of reflection centers: points x0 about which
/// the brush is even or odd. Centers sit at integer multiples of `step`;
/// when `alternating` they swap even/odd with the parity of the multiple,
/// otherwise every center is even.
#[derive(Clone, Debug)]
pub struct ParityLattice {
    pub step: f64,
    pub step_sq: Rat,
    pub alternating: bool,
}

/// Shared arithmetic for parity and period lattices (a, b both nonzero):
/// with r^4 = u/v in lowest terms and g = gcd(av, bu), admissible centers
/// are spaced s*sqrt(uv)/g in 2x0, and the center at index k flips the
/// chirp's parity with m1*n1*k^2, where (m1, n1) = (av, bu)/g. Returns
/// (m1*n1 odd, (2 x0)^2 for the fundamental center).
fn symmetry_core(spec: &BrushSpec) -> (bool, Rat) {
    let r4 = &spec.alpha.r_sq * &spec.alpha.r_sq;
    let u = r4.numer().clone();
    let v = r4.denom().clone();
    let av = &spec.alpha.a * &v;
    let bu = &spec.alpha.b * &u;
    let g = av.gcd(&bu);
    let m1 = &av / &g;
    let n1 = &bu / &g;
    let two_x0_sq = &spec.s_sq * Rat::new(&u * &v, &g * &g);
    ((&m1 * &n1).is_odd(), two_x0_sq)
}

/// Centers of symmetry of the brush.
pub fn parity_points(spec: &BrushSpec) -> ParityLattice {
    let a = &spec.alpha.a;
    let b = &spec.alpha.b;
    if b.is_zero() {
        // Plain comb (up to sign): centers every r/2, all even.
        let step_sq = &spec.alpha.r_sq / Rat::from_integer(Int::from(4));
        return ParityLattice {
            step: step_sq.to_f64().expect("fits f64").sqrt(),
            step_sq,
            alternating: false,
        };
    }
    if a.is_zero() {
        // Dual comb: centers every 1/(2r), all even.
        let step_sq = (Rat::from_integer(Int::from(4)) * &spec.alpha.r_sq).recip();
        return ParityLattice {
            step: step_sq.to_f64().expect("fits f64").sqrt(),
            step_sq,
            alternating: false,
        };
    }
    let (odd, two_x0_sq) = symmetry_core(spec);
    let step_sq = two_x0_sq / Rat::from_integer(Int::from(4));
    ParityLattice {
        step: step_sq.to_f64().expect("fits f64").sqrt(),
        step_sq,
        alternating: odd,
    }
}

/// The translation period of the brush's coefficient sequence in x.
#[derive(Clone, Debug)]
pub struct Period {
    pub x0: f64,
    pub x0_sq: Rat,
}

/// Smallest positive x0 with brush(x - x0) = brush(x) as measures with
/// coefficients. Always Some here: a rational r^2 forces r^4 rational,
/// which is exactly the existence condition.
pub fn period(spec: &BrushSpec) -> Option<Period> {
    let a = &spec.alpha.a;
    let b = &spec.alpha.b;
    let x0_sq = if b.is_zero() {
        spec.alpha.r_sq.clone()
    } else if a.is_zero() {
        spec.alpha.r_sq.recip()
    } else {
        // The period is the smallest even-symmetric multiple of the center
        // lattice that also preserves the chirp: twice the parity step, and
        // twice that again when the fundamental center is odd-symmetric.
        let (odd, two_x0_sq) = symmetry_core(spec);
        let k = if odd { 2 } else { 1 };
        two_x0_sq * Rat::from_integer(Int::from(k * k))
    };
    Some(Period {
        x0: x0_sq.to_f64().expect("fits f64").sqrt(),
        x0_sq,
    })
}

/// Number of brush deltas with position in [0, len].
pub fn count_in_interval(spec: &BrushSpec, len: f64) -> Result<u64> {
    if len < 0.0 {
        return Err(Error::Negative { what: "len" });
    }
    let s_f = spec.s();
    let q_half = spec.shift.q().to_f64().expect("shift fits f64") / 2.0;
    let hi = (len * s_f - q_half).floor();
    let lo = (-q_half).ceil();
    let count = hi - lo + 1.0;
    Ok(if count > 0.0 { count as u64 } else { 0 })
}
