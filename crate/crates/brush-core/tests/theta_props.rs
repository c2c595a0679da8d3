//! Theta series: classical spot values, the definitional prefactor and
//! characteristic conventions, the modular functional equation driven by the
//! reduced multiplier, Gaussian transport, composition signs, and the
//! Bargmann picture.

mod common;

use brush_core::exact::{rat, ShiftClass, Sl2z};
use brush_core::theta::{
    bargmann_comb, bargmann_grid, functional_equation_residual, gaussian_shift_project,
    gaussian_transform, gaussian_transform_z, metaplectic_compose_sign, theta_qp, ThetaArgs,
};
use brush_core::Error;
use common::{random_shift, random_sl2z, SplitMix64};
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

fn theta00(z: Complex64, tau: Complex64) -> Complex64 {
    theta_qp(&ThetaArgs { z, tau, q: 0, p: 0 }, 1e-16).unwrap()
}

#[test]
fn classical_spot_values() {
    let zero = Complex64::new(0.0, 0.0);
    let got = theta00(zero, Complex64::new(0.0, 1.0));
    assert!((got.re - 1.086_434_811_213_3).abs() <= 1e-10, "{got}");
    assert!(got.im.abs() <= 1e-13);

    let got = theta00(zero, Complex64::new(0.0, 2.0));
    assert!((got.re - 1.003_734_885_487_7).abs() <= 1e-10, "{got}");

    let got = theta00(zero, Complex64::new(0.0, 0.5));
    assert!((got.re - 1.419_495_488_083_8).abs() <= 1e-10, "{got}");
}

#[test]
fn rejects_bad_arguments() {
    let args = ThetaArgs {
        z: Complex64::new(0.0, 0.0),
        tau: Complex64::new(1.0, -0.5),
        q: 0,
        p: 0,
    };
    assert!(matches!(
        theta_qp(&args, 1e-12),
        Err(Error::NotPositive { .. })
    ));
    let args = ThetaArgs {
        z: Complex64::new(0.0, 0.0),
        tau: Complex64::new(0.0, 1.0),
        q: 0,
        p: 0,
    };
    assert!(matches!(
        theta_qp(&args, 0.0),
        Err(Error::NotPositive { .. })
    ));
}

/// The characteristic conventions, checked against a naive definitional sum
/// e^{i pi pq/4} sum e^{i pi tau m^2 + 2 pi i m z + i pi p m} over m in
/// Z - q/2.
#[test]
fn characteristics_match_the_definition() {
    let tau = Complex64::new(0.3, 1.2);
    let z = Complex64::new(0.2, -0.4);
    for (q, p) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1), (1, -1), (3, 2), (-2, 5)] {
        let got = theta_qp(&ThetaArgs { z, tau, q, p }, 1e-16).unwrap();
        let pref = (Complex64::i() * PI * (p * q) as f64 / 4.0).exp();
        let mut naive = Complex64::new(0.0, 0.0);
        for n in -40i64..=40 {
            let m = n as f64 - q as f64 / 2.0;
            naive += (Complex64::i() * PI * tau * m * m
                + Complex64::i() * 2.0 * PI * m * z
                + Complex64::i() * PI * p as f64 * m)
                .exp();
        }
        let expected = pref * naive;
        assert!(
            (got - expected).norm() <= 1e-12,
            "q={q} p={p}: got {got}, expected {expected}"
        );
    }
}

/// Doubling the effective summation radius (by squaring the tolerance twice)
/// moves nothing above 1e-13: the truncation rule already captures the mass.
#[test]
fn truncation_radius_is_saturated() {
    let tau = Complex64::new(0.4, 0.7);
    let z = Complex64::new(0.6, 0.3);
    for (q, p) in [(0i64, 0i64), (1, 0), (1, 1)] {
        let base = theta_qp(&ThetaArgs { z, tau, q, p }, 1e-16).unwrap();
        let wide = theta_qp(&ThetaArgs { z, tau, q, p }, 5e-70).unwrap();
        assert!((base - wide).norm() <= 1e-13, "q={q} p={p}");
    }
}

#[test]
fn functional_equation_for_the_fourier_matrix() {
    let m = Sl2z::f1();
    let shift = ShiftClass::from_i64(0, 0);
    let fe = functional_equation_residual(
        &m,
        &shift,
        Complex64::new(0.3, 0.1),
        Complex64::new(0.0, 2.0),
        1e-16,
    )
    .unwrap();
    assert!(fe.residual <= 1e-12, "residual {}", fe.residual);
    assert!(fe.lhs.norm() > 0.5, "lhs should be an honest theta value");
}

#[test]
fn functional_equation_for_the_identity_is_trivial() {
    let fe = functional_equation_residual(
        &Sl2z::identity(),
        &ShiftClass::from_i64(0, 0),
        Complex64::new(0.1, 0.2),
        Complex64::new(0.3, 1.1),
        1e-16,
    )
    .unwrap();
    assert!(fe.residual <= 1e-14);
}

#[test]
fn functional_equation_holds_for_random_matrices() {
    let mut rng = SplitMix64(0x5eed_0031);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = random_sl2z(&mut rng, 6);
        let shift = random_shift(&mut rng, &m);
        let z = Complex64::new(rng.unit() - 0.5, rng.unit() - 0.5);
        let tau = Complex64::new(rng.unit() * 2.0 - 1.0, 0.5 + 1.5 * rng.unit());
        let fe = functional_equation_residual(&m, &shift, z, tau, 1e-16).unwrap();
        worst = worst.max(fe.residual);
        assert!(
            fe.residual <= 1e-10,
            "m = {m:?}, shift = {shift:?}, z = {z}, tau = {tau}: residual {}",
            fe.residual
        );
    }
    // The bound is not vacuous: residuals are tiny but nonzero.
    assert!(worst > 0.0);
}

#[test]
fn functional_equation_rejects_bad_parity() {
    assert!(matches!(
        functional_equation_residual(
            &Sl2z::from_i64(1, 1, 0, 1).unwrap(),
            &ShiftClass::from_i64(0, 0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            1e-12,
        ),
        Err(Error::ParityMismatch { .. })
    ));
}

#[test]
fn gaussian_transport_pins() {
    let tau = Complex64::new(0.0, 1.0);
    // Dilation (1/2, 0; 0, 2): factor sqrt(2), parameter 4 tau.
    let (factor, tau2) = gaussian_transform(&[[0.5, 0.0], [0.0, 2.0]], tau).unwrap();
    assert!((factor - 2f64.sqrt()).norm() <= 1e-12);
    assert!((tau2 - Complex64::new(0.0, 4.0)).norm() <= 1e-12);

    // Shear (1, 0; t, 1): factor 1, parameter t + tau.
    let (factor, tau2) = gaussian_transform(&[[1.0, 0.0], [3.0, 1.0]], tau).unwrap();
    assert!((factor - 1.0).norm() <= 1e-15);
    assert!((tau2 - Complex64::new(3.0, 1.0)).norm() <= 1e-14);

    // Inversion: factor e^{-i pi/4} at tau = i, parameter -1/tau = i.
    let (factor, tau2) = gaussian_transform_z(&Sl2z::f1(), tau).unwrap();
    assert!((factor - Complex64::from_polar(1.0, -PI / 4.0)).norm() <= 1e-12);
    assert!((tau2 - tau).norm() <= 1e-14);

    assert!(matches!(
        gaussian_transform(&[[1.0, 0.0], [0.0, 1.1]], tau),
        Err(Error::RealDetNotOne { .. })
    ));
    assert!(matches!(
        gaussian_transform(&[[1.0, 0.0], [0.0, 1.0]], Complex64::new(0.0, -1.0)),
        Err(Error::NotPositive { .. })
    ));
}

#[test]
fn integer_and_real_transport_agree() {
    let mut rng = SplitMix64(0x5eed_0032);
    for _ in 0..50 {
        let m = random_sl2z(&mut rng, 5);
        let tau = Complex64::new(rng.unit() - 0.5, 0.4 + rng.unit());
        let (f1, t1) = gaussian_transform_z(&m, tau).unwrap();
        let as_float = [
            [common::entry_i64(m.a()) as f64, common::entry_i64(m.b()) as f64],
            [common::entry_i64(m.c()) as f64, common::entry_i64(m.d()) as f64],
        ];
        let (f2, t2) = gaussian_transform(&as_float, tau).unwrap();
        assert!((f1 - f2).norm() <= 1e-13);
        assert!((t1 - t2).norm() <= 1e-13);
    }
}

/// Transport is a group action on the parameter: applying M2 then M1 equals
/// applying M1 M2.
#[test]
fn moebius_action_composes() {
    let mut rng = SplitMix64(0x5eed_0033);
    for _ in 0..80 {
        let m1 = random_sl2z(&mut rng, 5);
        let m2 = random_sl2z(&mut rng, 5);
        let tau = Complex64::new(rng.unit() - 0.5, 0.5 + rng.unit());
        let (_, tau2) = gaussian_transform_z(&m2, tau).unwrap();
        let (_, tau12) = gaussian_transform_z(&m1, tau2).unwrap();
        let (_, tau3) = gaussian_transform_z(&m1.mul(&m2), tau).unwrap();
        assert!((tau12 - tau3).norm() <= 1e-11, "m1={m1:?} m2={m2:?}");
    }
}

#[test]
fn composition_signs() {
    let w = |j: i64| Sl2z::from_i64(1, 0, j, 1).unwrap();
    assert_eq!(metaplectic_compose_sign(&w(1), &w(2)).unwrap(), 1);
    assert_eq!(metaplectic_compose_sign(&Sl2z::identity(), &Sl2z::f1()).unwrap(), 1);
    assert_eq!(metaplectic_compose_sign(&Sl2z::f1(), &w(1)).unwrap(), 1);

    // The half-turn squared: (-I)(-I) = I but the scalars each contribute
    // -i, so the cocycle sign is -1.
    let neg = Sl2z::from_i64(-1, 0, 0, -1).unwrap();
    assert_eq!(metaplectic_compose_sign(&neg, &neg).unwrap(), -1);

    // Signs are well defined on a random sample: always +-1, never a snap
    // failure.
    let mut rng = SplitMix64(0x5eed_0034);
    for _ in 0..60 {
        let m1 = random_sl2z(&mut rng, 5);
        let m2 = random_sl2z(&mut rng, 5);
        let s = metaplectic_compose_sign(&m1, &m2).unwrap();
        assert!(s == 1 || s == -1);
    }
}

#[test]
fn shift_projection_identity_pointwise() {
    let mut rng = SplitMix64(0x5eed_0035);
    for _ in 0..200 {
        let x0 = rng.unit() * 2.0 - 1.0;
        let xi0 = rng.unit() * 2.0 - 1.0;
        let tau = Complex64::new(rng.unit() - 0.5, 0.3 + rng.unit());
        let x = rng.unit() * 4.0 - 2.0;
        let (eta0, scalar) = gaussian_shift_project(x0, xi0, tau);
        let lhs = (-Complex64::i() * PI * x0 * xi0).exp()
            * (Complex64::i() * 2.0 * PI * xi0 * x).exp()
            * (Complex64::i() * PI * tau * (x - x0) * (x - x0)).exp();
        let rhs = scalar
            * (Complex64::i() * 2.0 * PI * eta0 * x).exp()
            * (Complex64::i() * PI * tau * x * x).exp();
        assert!((lhs - rhs).norm() <= 1e-12, "x0={x0} xi0={xi0} x={x}");
    }
}

#[test]
fn bargmann_comb_matches_theta() {
    let r1 = rat(1, 1);
    let got = bargmann_comb(Complex64::new(0.0, 0.0), &r1).unwrap();
    assert!((got.re - 1.086_434_811_21).abs() <= 1e-10, "{got}");

    // B(z) = e^{-pi z^2/2} theta_00(-i z, i) for the unit comb.
    let mut rng = SplitMix64(0x5eed_0036);
    for _ in 0..30 {
        let z = Complex64::new(rng.unit() * 2.0 - 1.0, rng.unit() * 2.0 - 1.0);
        let got = bargmann_comb(z, &r1).unwrap();
        let expected =
            (-PI * z * z / 2.0).exp() * theta00(-Complex64::i() * z, Complex64::new(0.0, 1.0));
        assert!((got - expected).norm() <= 1e-12, "z = {z}");
    }
}

/// The unit comb is invariant under the transform, so its Bargmann modulus
/// has the quarter-turn symmetry |B(iz)| = |B(z)|.
#[test]
fn bargmann_quarter_turn_symmetry() {
    let r1 = rat(1, 1);
    let mut rng = SplitMix64(0x5eed_0037);
    for _ in 0..40 {
        let z = Complex64::new(rng.unit() * 2.0 - 1.0, rng.unit() * 2.0 - 1.0);
        let here = bargmann_comb(z, &r1).unwrap().norm();
        let there = bargmann_comb(Complex64::i() * z, &r1).unwrap().norm();
        assert!((here - there).abs() <= 1e-10, "z = {z}: {here} vs {there}");
    }
}

/// The Bargmann mass e^{-pi |z|^2} |B(z)|^2 is doubly periodic under the
/// comb's phase-space lattice r Z + i (1/r) Z.
#[test]
fn bargmann_mass_is_lattice_periodic() {
    let mass = |z: Complex64, r_sq: &brush_core::exact::Rat| {
        let b = bargmann_comb(z, r_sq).unwrap();
        (-PI * z.norm_sqr()).exp() * b.norm_sqr()
    };
    let mut rng = SplitMix64(0x5eed_0038);
    for (r_sq, dx, dxi) in [(rat(1, 1), 1.0, 1.0), (rat(4, 1), 2.0, 0.5)] {
        for _ in 0..25 {
            let z = Complex64::new(rng.unit() * 2.0 - 1.0, rng.unit() * 2.0 - 1.0);
            let m0 = mass(z, &r_sq);
            let m1 = mass(z + Complex64::new(dx, 0.0), &r_sq);
            let m2 = mass(z + Complex64::new(0.0, dxi), &r_sq);
            assert!((m0 - m1).abs() <= 1e-10 * (1.0 + m0), "x-period at {z}");
            assert!((m0 - m2).abs() <= 1e-10 * (1.0 + m0), "xi-period at {z}");
        }
    }
    assert!(mass(Complex64::new(0.0, 0.0), &rat(1, 1)) - 1.180_34 <= 1e-4);
}

#[test]
fn grid_is_row_major_and_inclusive() {
    let rows = bargmann_grid((0.0, 1.0), (0.0, 1.0), 0.5, &rat(1, 1)).unwrap();
    assert_eq!(rows.len(), 9);
    let coords: Vec<(f64, f64)> = rows.iter().map(|r| (r.re_z, r.im_z)).collect();
    assert_eq!(
        coords,
        vec![
            (0.0, 0.0),
            (0.5, 0.0),
            (1.0, 0.0),
            (0.0, 0.5),
            (0.5, 0.5),
            (1.0, 0.5),
            (0.0, 1.0),
            (0.5, 1.0),
            (1.0, 1.0),
        ]
    );
    for row in &rows {
        assert!(row.mass >= 0.0);
        assert!(row.phase.abs() <= PI + 1e-12);
    }
    assert!(matches!(
        bargmann_grid((0.0, 1.0), (0.0, 1.0), 0.0, &rat(1, 1)),
        Err(Error::NotPositive { .. })
    ));
}
