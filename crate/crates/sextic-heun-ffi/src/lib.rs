//! C ABI for the sextic-heun library. Everything crossing the boundary is
//! either a plain double, an error code, or an opaque handle; the header is
//! generated into include/sextic_heun.h by the build script.

use sextic_heun::heun_core::{v_m2_for_level, BranchChoice, PhysicalConstants, Potential};
use sextic_heun::qes::{qes_spectrum, QesParams};
use sextic_heun::specfun::EvalPolicy;
use sextic_heun::spectrum::{assemble_wavefunction, energies_for_level, trace_curve, Wavefunction};
use std::os::raw::c_int;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShStatus {
    ShOk = 0,
    /// a pointer argument was null
    ShNullPointer = 1,
    /// arguments violate a precondition (bad level, index, sign, ...)
    ShInvalidArgument = 2,
    /// parameters are outside the mapped domain (V6 <= 0, complex root, ...)
    ShDomainError = 3,
    /// a special-function or root-finding evaluation failed
    ShEvalError = 4,
}

/// Opaque bound-state wavefunction sampler.
pub struct ShWavefunction {
    psi: Wavefunction,
    energy: f64,
    policy: EvalPolicy,
}

fn build_potential(
    level: u32,
    v2: f64,
    v4: f64,
    v6: f64,
    v0: f64,
    hbar: f64,
    mass: f64,
) -> Option<(Potential, PhysicalConstants)> {
    if v6 <= 0.0 || hbar <= 0.0 || mass <= 0.0 {
        return None;
    }
    let consts = PhysicalConstants { hbar, mass };
    let pot = Potential {
        v_m2: v_m2_for_level(level, &consts),
        v0,
        v2,
        v4,
        v6,
    };
    Some((pot, consts))
}

/// Closed-form energies of hierarchy level `level` for the potential with
/// the level's inverse-square strength. Writes at most `cap` ascending
/// energies and stores the real-root count in `*out_len`.
///
/// # Safety
/// `out` must point to at least `cap` doubles; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sh_energies_for_level(
    level: u32,
    v2: f64,
    v4: f64,
    v6: f64,
    v0: f64,
    hbar: f64,
    mass: f64,
    out: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> ShStatus {
    if out.is_null() || out_len.is_null() {
        return ShStatus::ShNullPointer;
    }
    let Some((pot, consts)) = build_potential(level, v2, v4, v6, v0, hbar, mass) else {
        return ShStatus::ShInvalidArgument;
    };
    match energies_for_level(&pot, &consts, level, &BranchChoice::bound_state()) {
        Ok((energies, _)) => {
            *out_len = energies.len();
            for (i, &e) in energies.iter().take(cap).enumerate() {
                *out.add(i) = e;
            }
            ShStatus::ShOk
        }
        Err(_) => ShStatus::ShDomainError,
    }
}

/// One point of the (xi0, w) branch curve `branch_n` of level `level`.
/// `energy_sign` must be -1 or +1 (ignored for level 0).
///
/// # Safety
/// `out_w` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sh_curve_point(
    level: u32,
    branch_n: u32,
    energy_sign: c_int,
    xi0: f64,
    out_w: *mut f64,
) -> ShStatus {
    if out_w.is_null() {
        return ShStatus::ShNullPointer;
    }
    if (energy_sign != -1 && energy_sign != 1) || branch_n == 0 || level > 1 {
        return ShStatus::ShInvalidArgument;
    }
    let policy = EvalPolicy::default();
    match trace_curve(level, branch_n, &[xi0], energy_sign, &policy) {
        Ok(trace) => match trace.points.first() {
            Some(p) => {
                *out_w = p.w;
                ShStatus::ShOk
            }
            None => ShStatus::ShEvalError,
        },
        Err(_) => ShStatus::ShDomainError,
    }
}

/// Create a bound-state sampler for the `root_index`-th (ascending) energy
/// of the level. On success `*out` owns the handle; release it with
/// sh_wavefunction_free.
///
/// # Safety
/// `out` must be a valid pointer; the handle must be freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn sh_wavefunction_create(
    level: u32,
    root_index: usize,
    v2: f64,
    v4: f64,
    v6: f64,
    v0: f64,
    hbar: f64,
    mass: f64,
    out: *mut *mut ShWavefunction,
) -> ShStatus {
    if out.is_null() {
        return ShStatus::ShNullPointer;
    }
    *out = std::ptr::null_mut();
    let Some((pot, consts)) = build_potential(level, v2, v4, v6, v0, hbar, mass) else {
        return ShStatus::ShInvalidArgument;
    };
    let branch = BranchChoice::bound_state();
    let energies = match energies_for_level(&pot, &consts, level, &branch) {
        Ok((e, _)) => e,
        Err(_) => return ShStatus::ShDomainError,
    };
    let Some(&energy) = energies.get(root_index) else {
        return ShStatus::ShInvalidArgument;
    };
    let built = sextic_heun::heun_core::map_potential(&pot, energy, &consts, &branch)
        .map_err(|_| ())
        .and_then(|(hp, _)| {
            sextic_heun::heun_core::expansion_coefficients(&hp, level, branch.sign_s0)
                .map_err(|_| ())
        })
        .and_then(|exp| {
            assemble_wavefunction(&pot, &consts, &branch, &exp, energy).map_err(|_| ())
        });
    match built {
        Ok(psi) => {
            *out = Box::into_raw(Box::new(ShWavefunction {
                psi,
                energy,
                policy: EvalPolicy::default(),
            }));
            ShStatus::ShOk
        }
        Err(()) => ShStatus::ShEvalError,
    }
}

/// Evaluate psi(r).
///
/// # Safety
/// `wf` must be a live handle from sh_wavefunction_create; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sh_wavefunction_eval(
    wf: *const ShWavefunction,
    r: f64,
    out: *mut f64,
) -> ShStatus {
    if wf.is_null() || out.is_null() {
        return ShStatus::ShNullPointer;
    }
    if r.is_nan() || r <= 0.0 {
        return ShStatus::ShInvalidArgument;
    }
    let wf = &*wf;
    match wf.psi.eval(r, &wf.policy) {
        Ok(v) if v.is_finite() => {
            *out = v;
            ShStatus::ShOk
        }
        _ => ShStatus::ShEvalError,
    }
}

/// The energy the handle was built at.
///
/// # Safety
/// `wf` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sh_wavefunction_energy(
    wf: *const ShWavefunction,
    out: *mut f64,
) -> ShStatus {
    if wf.is_null() || out.is_null() {
        return ShStatus::ShNullPointer;
    }
    *out = (*wf).energy;
    ShStatus::ShOk
}

/// Release a wavefunction handle. Null is a no-op.
///
/// # Safety
/// `wf` must come from sh_wavefunction_create and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sh_wavefunction_free(wf: *mut ShWavefunction) {
    if !wf.is_null() {
        drop(Box::from_raw(wf));
    }
}

/// The M+1 quasi-exactly-solvable energies for parameters (a, b, s, M),
/// ascending. `out` must hold at least M+1 doubles.
///
/// # Safety
/// `out` must point to at least `m_degree + 1` doubles.
#[no_mangle]
pub unsafe extern "C" fn sh_qes_energies(
    a: f64,
    b: f64,
    s: f64,
    m_degree: u32,
    out: *mut f64,
) -> ShStatus {
    if out.is_null() {
        return ShStatus::ShNullPointer;
    }
    let p = QesParams { a, b, s, m_degree };
    match qes_spectrum(&p) {
        Ok(sol) => {
            for (i, &e) in sol.energies.iter().enumerate() {
                *out.add(i) = e;
            }
            ShStatus::ShOk
        }
        Err(_) => ShStatus::ShInvalidArgument,
    }
}
