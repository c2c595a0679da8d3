//! Theta series with half-integer characteristics, the modular functional
//! equation they satisfy (with the brush multiplier as its automorphy
//! constant), Gaussian transport under the metaplectic action, and the
//! Bargmann picture of the comb.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{PhaseQ, ShiftClass, Sl2z};
use crate::mu;
use crate::numeric::{sqrt_pos, KahanSum, TAIL_LOG};

const PI: f64 = std::f64::consts::PI;

/// Arguments of theta_{q,p}(z, tau): point, modulus, and characteristics.
#[derive(Clone, Copy, Debug)]
pub struct ThetaArgs {
    pub z: Complex64,
    pub tau: Complex64,
    pub q: i64,
    pub p: i64,
}

fn require_upper_half(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositive { what: "Im(tau)" })
    }
}

/// theta_{q,p}(z, tau) = e^{i pi pq/4} * sum over m in Z - q/2 of
/// e^{i pi tau m^2 + 2 pi i m z + i pi p m}.
///
/// The sum is truncated where the Gaussian decay drives terms below `tol`
/// relative to the peak: |m - m*| <= sqrt((-ln tol + 4)/(pi Im tau)) + 2
/// around the real peak index m* = -Im(z)/Im(tau).
pub fn theta_qp(args: &ThetaArgs, tol: f64) -> Result<Complex64> {
    require_upper_half(args.tau)?;
    if tol <= 0.0 {
        return Err(Error::NotPositive { what: "tol" });
    }
    // e^{i pi p m} at m = n - q/2 splits into the constant e^{-i pi pq/4}
    // (kept exact) and the alternating sign (-1)^{pn}.
    let pq = crate::exact::Int::from(args.p) * crate::exact::Int::from(args.q);
    let prefactor = PhaseQ::from_eighth_exponent(&(-&pq)).to_complex();

    let q_half = args.q as f64 / 2.0;
    let m_star = -args.z.im / args.tau.im;
    let radius = ((-tol.ln() + 4.0) / (PI * args.tau.im)).sqrt() + 2.0;
    let n_lo = (q_half + m_star - radius).floor() as i64;
    let n_hi = (q_half + m_star + radius).ceil() as i64;

    let mut acc = KahanSum::new();
    for n in n_lo..=n_hi {
        let m = n as f64 - q_half;
        let exponent = Complex64::i() * PI * args.tau * (m * m) + Complex64::i() * 2.0 * PI * m * args.z;
        let mut term = exponent.exp();
        if (args.p & 1) == 1 && (n & 1) == 1 {
            term = -term;
        }
        acc.add(term);
    }
    Ok(prefactor * acc.value())
}

/// Both sides of the functional equation at one point, and their distance.
#[derive(Clone, Copy, Debug)]
pub struct FunctionalEquation {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// Check theta_{0,0}(z, tau) against its modular image under M = (a b; c d):
///
///   theta_{0,0}(z, tau) = mu^{-1} e^{-i pi b z^2/(a+b tau)} (a+b tau)^{-1/2}
///                         theta_{q,p}(z/(a+b tau), (c+d tau)/(a+b tau))
///
/// where (q, p) is the shift class of M and mu its brush multiplier.
pub fn functional_equation_residual(
    m: &Sl2z,
    shift: &ShiftClass,
    z: Complex64,
    tau: Complex64,
    tol: f64,
) -> Result<FunctionalEquation> {
    if !crate::exact::shift_parity_check(m, shift) {
        return Err(Error::ParityMismatch {
            q: shift.q().clone(),
            p: shift.p().clone(),
        });
    }
    let lhs = theta_qp(
        &ThetaArgs {
            z,
            tau,
            q: 0,
            p: 0,
        },
        tol,
    )?;

    let mu_bar = mu::mu_reduce(m, shift)?.k8.inv();
    let a = m.a().to_f64().expect("a fits f64");
    let b = m.b().to_f64().expect("b fits f64");
    let c = m.c().to_f64().expect("c fits f64");
    let d = m.d().to_f64().expect("d fits f64");
    let w = a + b * tau;
    let z2 = z / w;
    let tau2 = (c + d * tau) / w;
    let inner = theta_qp(
        &ThetaArgs {
            z: z2,
            tau: tau2,
            q: shift.q().to_i64().expect("shift fits i64"),
            p: shift.p().to_i64().expect("shift fits i64"),
        },
        tol,
    )?;
    let rhs = mu_bar.value()
        * (-Complex64::i() * PI * b * z * z / w).exp()
        * sqrt_pos(w).inv()
        * inner;
    Ok(FunctionalEquation {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    })
}

fn transform_raw(a: f64, b: f64, c: f64, d: f64, tau: Complex64) -> (Complex64, Complex64) {
    let w = a + b * tau;
    (sqrt_pos(w).inv(), (c + d * tau) / w)
}

/// How the normalized Gaussian g_tau moves under the metaplectic action of a
/// real unimodular matrix: returns the scalar (a+b tau)^{-1/2} (square root
/// with positive real part) and the new parameter (c+d tau)/(a+b tau).
pub fn gaussian_transform(m: &[[f64; 2]; 2], tau: Complex64) -> Result<(Complex64, Complex64)> {
    require_upper_half(tau)?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det - 1.0).abs() > 1e-9 {
        return Err(Error::RealDetNotOne { det });
    }
    Ok(transform_raw(m[0][0], m[0][1], m[1][0], m[1][1], tau))
}

/// Integer-matrix version of [`gaussian_transform`]; the determinant is
/// exact by construction.
pub fn gaussian_transform_z(m: &Sl2z, tau: Complex64) -> Result<(Complex64, Complex64)> {
    require_upper_half(tau)?;
    Ok(transform_raw(
        m.a().to_f64().expect("a fits f64"),
        m.b().to_f64().expect("b fits f64"),
        m.c().to_f64().expect("c fits f64"),
        m.d().to_f64().expect("d fits f64"),
        tau,
    ))
}

/// Project the phase-space shift of a Gaussian onto the frequency side:
/// shifting g_tau by (x0, xi0) equals scalar * e^{2 pi i eta0 x} g_tau(x)
/// with eta0 = xi0 - tau x0 and scalar = e^{-i pi x0 eta0}.
pub fn gaussian_shift_project(x0: f64, xi0: f64, tau: Complex64) -> (Complex64, Complex64) {
    let eta0 = xi0 - tau * x0;
    let scalar = (-Complex64::i() * PI * x0 * eta0).exp();
    (eta0, scalar)
}

/// The sign relating the composed metaplectic scalars to the scalar of the
/// product matrix: A(M1, M2.tau) A(M2, tau) = sign * A(M1 M2, tau). Probed
/// at tau = i and tau = 1 + 2i; both probes must snap to the same sign.
pub fn metaplectic_compose_sign(m1: &Sl2z, m2: &Sl2z) -> Result<i8> {
    const TOL: f64 = 1e-6;
    let m3 = m1.mul(m2);
    let mut signs = [0i8; 2];
    for (slot, tau) in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 2.0)]
        .into_iter()
        .enumerate()
    {
        let (f2, tau2) = gaussian_transform_z(m2, tau)?;
        let (f1, _) = gaussian_transform_z(m1, tau2)?;
        let (f3, _) = gaussian_transform_z(&m3, tau)?;
        let sigma = f1 * f2 / f3;
        signs[slot] = if (sigma - 1.0).norm() <= TOL {
            1
        } else if (sigma + 1.0).norm() <= TOL {
            -1
        } else {
            return Err(Error::SignSnapMiss {
                re: sigma.re,
                im: sigma.im,
                tol: TOL,
            });
        };
    }
    if signs[0] != signs[1] {
        return Err(Error::ProbeMismatch {
            s1: signs[0],
            s2: signs[1],
        });
    }
    Ok(signs[0])
}

/// Bargmann transform of the comb of spacing r at the complex point z:
/// sqrt(r) * sum_k e^{-pi (rk)^2 + 2 pi z (rk) - pi z^2 / 2}.
pub fn bargmann_comb(z: Complex64, r_sq: &crate::exact::Rat) -> Result<Complex64> {
    if !r_sq.is_positive() {
        return Err(Error::NotPositive { what: "r^2" });
    }
    let r = r_sq.to_f64().expect("r^2 fits f64").sqrt();
    // Term magnitudes peak at rk = Re z; cut at relative 1e-18.
    let spread = (TAIL_LOG / PI).sqrt();
    let k_lo = ((z.re - spread) / r).floor() as i64 - 1;
    let k_hi = ((z.re + spread) / r).ceil() as i64 + 1;
    let mut acc = KahanSum::new();
    for k in k_lo..=k_hi {
        let w = r * k as f64;
        let exponent = -PI * w * w + 2.0 * PI * z * w - PI * z * z / 2.0;
        acc.add(exponent.exp());
    }
    Ok(acc.value() * r.sqrt())
}

/// One grid sample of the Bargmann mass: position, the weighted modulus
/// e^{-pi |z|^2} |B(z)|^2, and the phase of B(z).
#[derive(Clone, Copy, Debug)]
pub struct GridRow {
    pub re_z: f64,
    pub im_z: f64,
    pub mass: f64,
    pub phase: f64,
}

/// Sample the Bargmann mass of the comb on a rectangular grid, inclusive of
/// both endpoints, scanning re within im (both ascending).
pub fn bargmann_grid(
    re_range: (f64, f64),
    im_range: (f64, f64),
    step: f64,
    r_sq: &crate::exact::Rat,
) -> Result<Vec<GridRow>> {
    if step <= 0.0 {
        return Err(Error::NotPositive { what: "step" });
    }
    let count = |lo: f64, hi: f64| -> i64 {
        if hi < lo {
            0
        } else {
            ((hi - lo) / step + 1e-9).floor() as i64 + 1
        }
    };
    let n_re = count(re_range.0, re_range.1);
    let n_im = count(im_range.0, im_range.1);
    let mut rows = Vec::with_capacity((n_re * n_im).max(0) as usize);
    for i_im in 0..n_im {
        let im = im_range.0 + step * i_im as f64;
        for i_re in 0..n_re {
            let re = re_range.0 + step * i_re as f64;
            let z = Complex64::new(re, im);
            let b = bargmann_comb(z, r_sq)?;
            rows.push(GridRow {
                re_z: re,
                im_z: im,
                mass: (-PI * z.norm_sqr()).exp() * b.norm_sqr(),
                phase: b.arg(),
            });
        }
    }
    Ok(rows)
}
