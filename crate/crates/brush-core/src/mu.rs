//! The eighth-root multiplier mu(M; (q, p)) by symmetry reduction.
//!
//! mu is defined by S_{(q/2, p/2)} M(M) ш_1 = mu * ш_1 for M in SL(2,Z) with
//! (q, p) = (ab, cd) mod 2. Three symmetries reduce any (M, shift) to a
//! lower-triangular terminal case:
//!
//!   poisson      M -> M*F1,  shift fixed,            factor sigma * e^{i pi/4}
//!   shear left   M -> W_j*M, (q, p) -> (q, p+j(q-1)), factor e^{-i pi j q/4}
//!   shear right  M -> M*W_j, (q, p) -> (q-jb, p-jd),  factor e^{i pi j(dq-pb)/4}
//!
//! The reduction tracks an integer K with the invariant
//!
//!   e^{i pi K/4} * mu(M_current; shift_current) = mu(M_original; shift_original)
//!
//! so the terminal closed form mu(+-1, 0, c, +-1; (q, p)) = e^{i pi pq/4}
//! (times -i when a = -1) lands K at the exponent of the original mu.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{shift_parity_check, EighthRoot, Int, ShiftClass, Sl2z};

/// Outcome of the reduction: mu = e^{i pi k8/4}; steps counts shear+rotation
/// rounds, a diagnostic for termination behavior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuResult {
    pub k8: EighthRoot,
    pub steps: u32,
}

/// mu with the branch sign: F^alpha = epsilon * M(F_alpha), epsilon = +1 iff
/// alpha lies in (-2, 2] mod 8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedMu {
    pub mu: EighthRoot,
    pub epsilon: i8,
}

/// A reduction state carried through the symmetry operations.
/// Invariant: e^{i pi k/4} * mu(m; shift) is the mu of the state this
/// reduction started from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymState {
    pub m: Sl2z,
    pub shift: ShiftClass,
    pub k: Int,
}

impl SymState {
    pub fn new(m: Sl2z, shift: ShiftClass) -> Result<Self> {
        if !shift_parity_check(&m, &shift) {
            return Err(Error::ParityMismatch {
                q: shift.q().clone(),
                p: shift.p().clone(),
            });
        }
        Ok(SymState {
            m,
            shift,
            k: Int::zero(),
        })
    }
}

/// The canonical shift representative (q, p) = (ab mod 2, cd mod 2) in {0,1}^2.
pub fn canonical_shift(m: &Sl2z) -> ShiftClass {
    let two = Int::from(2);
    ShiftClass::new(
        (m.a() * m.b()).mod_floor(&two),
        (m.c() * m.d()).mod_floor(&two),
    )
}

fn poisson_sigma_is_negative(a: &Int, b: &Int) -> bool {
    a.is_negative() && !b.is_negative()
}

/// One Poisson rotation: M -> M*F1 = (-b, a; -d, c), shift unchanged.
/// K' = K + 1 when sigma = +1, K' = K - 3 when sigma = -1 (a < 0 <= b).
pub fn sym_poisson(state: &SymState) -> SymState {
    let m = &state.m;
    let dk = if poisson_sigma_is_negative(m.a(), m.b()) {
        Int::from(-3)
    } else {
        Int::one()
    };
    let rotated = Sl2z::new(-m.b(), m.a().clone(), -m.d(), m.c().clone())
        .expect("rotation preserves the determinant");
    SymState {
        m: rotated,
        shift: state.shift.clone(),
        k: &state.k + dk,
    }
}

/// Left shear: M -> W_j * M, shift (q, p) -> (q, p + j(q-1)), K' = K - j*q.
pub fn sym_shear_left(state: &SymState, j: &Int) -> SymState {
    let m = &state.m;
    let q = state.shift.q().clone();
    let p = state.shift.p() + j * (&q - Int::one());
    let sheared = Sl2z::new(
        m.a().clone(),
        m.b().clone(),
        m.c() + j * m.a(),
        m.d() + j * m.b(),
    )
    .expect("shear preserves the determinant");
    SymState {
        m: sheared,
        shift: ShiftClass::new(q.clone(), p),
        k: &state.k - j * &q,
    }
}

/// Right shear: M -> M * W_j, shift (q, p) -> (q - jb, p - jd),
/// K' = K + j(dq - pb).
pub fn sym_shear_right(state: &SymState, j: &Int) -> SymState {
    let m = &state.m;
    let (q, p) = (state.shift.q(), state.shift.p());
    let dk = j * (m.d() * q - p * m.b());
    let sheared = Sl2z::new(
        m.a() + j * m.b(),
        m.b().clone(),
        m.c() + j * m.d(),
        m.d().clone(),
    )
    .expect("shear preserves the determinant");
    SymState {
        m: sheared,
        shift: ShiftClass::new(q - j * m.b(), p - j * m.d()),
        k: &state.k + dk,
    }
}

/// Terminal closed form for b = 0 (so a = d = +-1): K contribution p*q,
/// minus 2 more when a = -1.
fn terminal_k(m: &Sl2z, shift: &ShiftClass) -> Int {
    debug_assert!(m.b().is_zero());
    let mut k = shift.p() * shift.q();
    if *m.a() == Int::from(-1) {
        k -= Int::from(2);
    }
    k
}

/// Symmetry-reduction evaluation of mu(M; shift).
///
/// Loop: while b != 0, right-shear by j = -floor(a/b) then rotate; at b = 0
/// apply the terminal closed form. Euclidean descent on |a| terminates.
pub fn mu_reduce(m: &Sl2z, shift: &ShiftClass) -> Result<MuResult> {
    let mut state = SymState::new(m.clone(), shift.clone())?;
    let mut steps: u32 = 0;
    while !state.m.b().is_zero() {
        let j = -state.m.a().div_floor(state.m.b());
        state = sym_shear_right(&state, &j);
        state = sym_poisson(&state);
        steps += 1;
    }
    state.k += terminal_k(&state.m, &state.shift);
    Ok(MuResult {
        k8: EighthRoot::from_int(&state.k),
        steps,
    })
}

pub fn epsilon_for_branch(branch: i64) -> i8 {
    if branch.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// mu together with the branch sign epsilon(alpha). Branch n means alpha was
/// translated by 4n into (-2, 2]; epsilon flips with each translation since
/// F^{alpha+4} = -F^{alpha}.
pub fn mu_with_branch(m: &Sl2z, shift: &ShiftClass, branch: i64) -> Result<BranchedMu> {
    let reduced = mu_reduce(m, shift)?;
    Ok(BranchedMu {
        mu: reduced.k8,
        epsilon: epsilon_for_branch(branch),
    })
}
