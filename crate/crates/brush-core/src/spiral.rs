//! The spiral side of the story: antiderivative traces of a brush (partial
//! sums of its delta coefficients, drawn as a curve), the Fresnel integral
//! they approximate in the near-identity regime, Riemann-sum error scans,
//! the exact motif decomposition that explains the convergence, and
//! continued-fraction convergents for generating good rational cotangents.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::brush::{brush_coefficient, BrushSpec};
use crate::error::{Error, Result};
use crate::exact::{rat, Int, Rat, ShiftClass, Sl2z};
use crate::gauss::e_phase;
use crate::mu;
use crate::numeric::KahanSum;

const PI: f64 = std::f64::consts::PI;

/// Deltas within this distance of an integration endpoint get half weight.
const ENDPOINT_SNAP: f64 = 1e-12;

/// One sample of the antiderivative trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub x: f64,
    pub re: f64,
    pub im: f64,
}

/// The antiderivative Pi(x): the sum of brush coefficients over [0, x],
/// with endpoint deltas weighted 1/2, extended oddly to x < 0, and pinned
/// to exactly 0 at x = 0.
pub fn antiderivative_at(spec: &BrushSpec, x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if x < 0.0 {
        return -antiderivative_at(spec, -x);
    }
    let s_f = spec.s();
    let q_half = spec.shift().q().to_f64().expect("shift fits f64") / 2.0;
    let n_lo = (-q_half).ceil() as i64 - 2;
    let n_hi = (x * s_f - q_half).floor() as i64 + 2;
    let mut acc = KahanSum::new();
    for n in n_lo..=n_hi {
        let coeff = brush_coefficient(spec, &Int::from(n));
        let pos = coeff.position;
        if pos < -ENDPOINT_SNAP || pos > x + ENDPOINT_SNAP {
            continue;
        }
        let boundary = pos.abs() <= ENDPOINT_SNAP || (pos - x).abs() <= ENDPOINT_SNAP;
        let weight = if boundary { 0.5 } else { 1.0 };
        acc.add(coeff.value.scale(weight));
    }
    acc.value()
}

/// Sample Pi on the symmetric grid {i * x_max / samples : -samples <= i <=
/// samples}. Rows for negative x are the exact negations of their mirror
/// images, so oddness holds bit for bit.
pub fn antiderivative_trace(spec: &BrushSpec, x_max: f64, samples: u32) -> Result<Vec<TraceRow>> {
    if x_max <= 0.0 {
        return Err(Error::NotPositive { what: "x_max" });
    }
    if samples < 2 {
        return Err(Error::TooSmall {
            what: "samples",
            min: 2,
        });
    }
    let n = samples as i64;
    let mut upper = Vec::with_capacity(samples as usize + 1);
    for i in 0..=n {
        let x = x_max * i as f64 / n as f64;
        upper.push((x, antiderivative_at(spec, x)));
    }
    let mut rows = Vec::with_capacity(2 * samples as usize + 1);
    for i in (1..=n).rev() {
        let (x, v) = upper[i as usize];
        rows.push(TraceRow {
            x: -x,
            re: -v.re,
            im: -v.im,
        });
    }
    for &(x, v) in &upper {
        rows.push(TraceRow {
            x,
            re: v.re,
            im: v.im,
        });
    }
    Ok(rows)
}

/// The Fresnel integral S(x) = int_0^x e^{i pi t^2} dt.
///
/// |x| <= 1.5 uses the entire Maclaurin series sum (i pi)^n x^{2n+1} /
/// (n! (2n+1)); beyond that the tail [1.5, |x|] is integrated by adaptive
/// Simpson quadrature on top of the series value at 1.5. Odd in x.
pub fn fresnel_s(x: f64, tol: f64) -> Result<Complex64> {
    if tol <= 0.0 {
        return Err(Error::NotPositive { what: "tol" });
    }
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if x < 0.0 {
        return Ok(-fresnel_s(-x, tol)?);
    }
    const SPLIT: f64 = 1.5;
    if x <= SPLIT {
        return Ok(fresnel_series(x, tol));
    }
    let head = fresnel_series(SPLIT, tol);
    let tail = simpson_adaptive(SPLIT, x, tol / 2.0);
    Ok(head + tail)
}

fn fresnel_series(x: f64, tol: f64) -> Complex64 {
    let w = Complex64::i() * PI * x * x;
    let mut c = Complex64::new(1.0, 0.0);
    let mut acc = KahanSum::new();
    for n in 0..200u32 {
        let term = c * x / (2 * n + 1) as f64;
        acc.add(term);
        c = c * w / (n + 1) as f64;
        if n >= 4 && c.norm() * x < tol * 1e-2 {
            break;
        }
    }
    acc.value()
}

fn chirp(t: f64) -> Complex64 {
    (Complex64::i() * PI * t * t).exp()
}

fn simpson_adaptive(a: f64, b: f64, tol: f64) -> Complex64 {
    let fa = chirp(a);
    let fb = chirp(b);
    let m = 0.5 * (a + b);
    let fm = chirp(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(a, b, fa, fm, fb, whole, tol, 30)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = chirp(lm);
    let frm = chirp(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        // Richardson correction of the composite rule.
        return left + right + delta / 15.0;
    }
    simpson_step(a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// The finite Riemann chirp sum sqrt(r) * sum e^{i pi (delta (m + m0))^2}
/// over integers m with -m0 <= m <= x/r - m0. Empty sums are zero.
pub fn riemann_fresnel_f(x: f64, delta: f64, r: f64, m0: f64) -> Complex64 {
    debug_assert!(delta > 0.0 && r > 0.0 && (0.0..1.0).contains(&m0));
    let m_hi = (x / r - m0).floor() as i64;
    if m_hi < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = KahanSum::new();
    for m in 0..=m_hi {
        let u = delta * (m as f64 + m0);
        acc.add((Complex64::i() * PI * u * u).exp());
    }
    acc.value() * r.sqrt()
}

/// Worst-case distance between the rescaled Riemann chirp sum and the
/// Fresnel integral for the near-identity family with cot = (1+j)/1:
/// sup over X in [0, delta^(1/n_root)] (200 points) and over 16 grid
/// offsets m0 in [0, 1) of |(delta/sqrt r) F(X) - S(delta X / r)|.
pub fn fresnel_sup_error(j: u64, n_root: u32) -> Result<f64> {
    if j < 1 {
        return Err(Error::TooSmall { what: "j", min: 1 });
    }
    if n_root < 1 {
        return Err(Error::TooSmall {
            what: "n_root",
            min: 1,
        });
    }
    let jp1 = (j + 1) as f64;
    let s_sq = jp1 * jp1 + 1.0;
    let delta = (jp1 / s_sq).sqrt();
    let r = 1.0 / s_sq.sqrt();

    let x_hi = delta.powf(1.0 / n_root as f64);
    let xs: Vec<f64> = (0..200).map(|i| x_hi * i as f64 / 199.0).collect();
    let s_vals: Vec<Complex64> = xs
        .iter()
        .map(|&x| fresnel_s(delta * x / r, 1e-10))
        .collect::<Result<_>>()?;

    let scale = delta / r.sqrt();
    let mut worst = 0.0f64;
    for t in 0..16 {
        let m0 = t as f64 / 16.0;
        for (i, &x) in xs.iter().enumerate() {
            let f = riemann_fresnel_f(x, delta, r, m0);
            let err = (f * scale - s_vals[i]).norm();
            if err > worst {
                worst = err;
            }
        }
    }
    Ok(worst)
}

/// Exact check of the motif decomposition behind the Fresnel limit, for a
/// unit-spacing comb and b > 0: sliding the representative by W_j splits
/// every brush phase into the base multiplier, the residue motif 2E(n), and
/// a pure chirp Delta0^2 k^2. Returns the largest phase defect over residues
/// n in [0, b) and window m in [-8, 8], reduced mod 2 into (-1, 1]; the
/// decomposition is an identity, so the expected value is exactly 0.
pub fn motif_decomposition_check(m: &Sl2z, shift: &ShiftClass, j: u32) -> Result<Rat> {
    if !m.b().is_positive() {
        return Err(Error::NotPositive { what: "b" });
    }
    if !crate::exact::shift_parity_check(m, shift) {
        return Err(Error::ParityMismatch {
            q: shift.q().clone(),
            p: shift.p().clone(),
        });
    }
    let base_k8 = mu::mu_reduce(m, shift)?.k8;

    let jz = Int::from(j);
    let a_j = m.a() + &jz * m.b();
    let c_j = m.c() + &jz * m.d();
    let m_j = Sl2z::new(a_j.clone(), m.b().clone(), c_j.clone(), m.d().clone())
        .expect("row shear preserves the determinant");
    let q_j = shift.q() - &jz * m.b();
    let p_j = shift.p() - &jz * m.d();
    let shift_j = ShiftClass::new(q_j.clone(), p_j.clone());
    let k8_j = mu::mu_reduce(&m_j, &shift_j)?.k8;

    let t_j = Rat::from_integer(&a_j * &c_j + m.b() * m.d());
    let s_j_sq = Rat::from_integer(&a_j * &a_j + m.b() * m.b());
    let delta0_sq = Rat::new(m.d().clone(), m.b().clone()) - &t_j / &s_j_sq;

    let b = m.b().to_u64().expect("b fits u64");
    let mut worst = rat(0, 1);
    for n in 0..b {
        let base_e = e_phase(&Int::from(n), m, shift)?;
        for window in -8i64..=8 {
            // Half-integer index of residue n in the slid brush.
            let slot = Int::from(n) + m.b() * Int::from(window);
            let k = Rat::new(&slot * Int::from(2) - &q_j, Int::from(2));
            let phi_j = -(Rat::new(&q_j * &p_j, Int::from(4))
                + Rat::from_integer(p_j.clone()) * &k
                + (&t_j / &s_j_sq) * (&k * &k));
            let lhs = rat(k8_j.k() as i64, 4) + phi_j;
            let rhs = rat(base_k8.k() as i64, 4)
                + &base_e * Rat::from_integer(Int::from(2))
                + &delta0_sq * (&k * &k);
            let defect = centered_mod_two(&(lhs - rhs));
            if defect.abs() > worst {
                worst = defect.abs();
            }
        }
    }
    Ok(worst)
}

/// Reduce mod 2 into (-1, 1].
fn centered_mod_two(x: &Rat) -> Rat {
    let two = Rat::from_integer(Int::from(2));
    let mut f = x - (x / &two).floor() * &two;
    if f > Rat::one() {
        f -= &two;
    }
    f
}

/// Targets whose continued-fraction convergents we can generate exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum CfTarget {
    Sqrt2,
    Sqrt3,
    Golden,
    /// pi via an embedded 100-digit rational; depth is capped where the
    /// rational's expansion still agrees with pi's.
    Pi,
    Rational(Rat),
}

/// Depth beyond which the embedded rational stops speaking for pi.
pub const PI_DEPTH_MAX: u32 = 80;

const PI_100: &str =
    "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// One convergent p/q of a continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: u32,
    pub p: Int,
    pub q: Int,
}

/// The first `depth` convergents of the target (fewer if a rational target
/// terminates first), by the standard recurrence p_k = a_k p_{k-1} + p_{k-2}.
pub fn continued_fraction_convergents(target: &CfTarget, depth: u32) -> Result<Vec<Convergent>> {
    if depth < 1 {
        return Err(Error::TooSmall {
            what: "depth",
            min: 1,
        });
    }
    let terms: Vec<Int> = match target {
        CfTarget::Sqrt2 => std::iter::once(Int::from(1))
            .chain(std::iter::repeat(Int::from(2)))
            .take(depth as usize)
            .collect(),
        CfTarget::Sqrt3 => (0..depth)
            .map(|k| {
                if k == 0 {
                    Int::from(1)
                } else if k % 2 == 1 {
                    Int::from(1)
                } else {
                    Int::from(2)
                }
            })
            .collect(),
        CfTarget::Golden => vec![Int::from(1); depth as usize],
        CfTarget::Pi => {
            if depth > PI_DEPTH_MAX {
                return Err(Error::DepthTooLarge {
                    depth,
                    max: PI_DEPTH_MAX,
                });
            }
            let num = Int::parse_bytes(PI_100.as_bytes(), 10).expect("literal parses");
            let den_digits = format!("1{}", "0".repeat(100));
            let den = Int::parse_bytes(den_digits.as_bytes(), 10).expect("literal parses");
            euclid_terms(&Rat::new(num, den), depth)
        }
        CfTarget::Rational(r) => euclid_terms(r, depth),
    };

    let mut p_prev = Int::one();
    let mut p_prev2 = Int::zero();
    let mut q_prev = Int::zero();
    let mut q_prev2 = Int::one();
    let mut out = Vec::with_capacity(terms.len());
    for (i, a) in terms.iter().enumerate() {
        let p = a * &p_prev + &p_prev2;
        let q = a * &q_prev + &q_prev2;
        out.push(Convergent {
            index: i as u32,
            p: p.clone(),
            q: q.clone(),
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    Ok(out)
}

fn euclid_terms(x: &Rat, depth: u32) -> Vec<Int> {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut terms = Vec::new();
    for _ in 0..depth {
        if den.is_zero() {
            break;
        }
        let a = num.div_floor(&den);
        let rem = &num - &a * &den;
        terms.push(a);
        num = std::mem::replace(&mut den, rem);
    }
    terms
}
