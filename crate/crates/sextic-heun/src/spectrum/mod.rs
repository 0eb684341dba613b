//! Physical bound states of the sextic oscillator: assembled wavefunctions,
//! per-level energies, origin boundary conditions, and tracing of the
//! (xi0, w) bound-state branch curves for levels N = 0 and N = 1.
//!
//! The dimensionless pair indexing the branches is
//! xi0 = V4 / (2 (2 hbar^2 V6^3 / m)^{1/4}),
//! w   = V2 / (2 hbar^2 V6 / m)^{1/2}.

use crate::heun_core::{
    energy_of_q, expansion_coefficients, map_potential, reduce_to_contiguous, v_m2_for_level,
    BranchChoice, ContiguousSolution, HermiteExpansion, HeunError, HeunParameters,
    PhysicalConstants, Potential, PrefactorExponents,
};
use crate::specfun::{gamma, hermite_nu, kummer_m, tricomi_u, EvalPolicy, SpecFunError};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SpectrumError {
    #[error("heun mapping failed: {0}")]
    Heun(#[from] HeunError),
    #[error("special function evaluation failed: {0}")]
    SpecFun(#[from] SpecFunError),
    #[error("domain error: {reason}")]
    Domain { reason: &'static str },
    #[error("potential v_m2 = {v_m2} does not match hierarchy level {n_level}")]
    LevelMismatch { v_m2: f64, n_level: u32 },
    #[error("inconsistent parameters: {reason}")]
    Inconsistent { reason: &'static str },
}

/// The dimensionless quartic and harmonic strengths (xi0, w).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessPair {
    pub xi0: f64,
    pub w: f64,
}

/// A sampled bound state of one hierarchy level.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub level_n: u32,
    pub branch_n: u32,
    pub energy: f64,
    pub pair: DimensionlessPair,
    pub psi: Wavefunction,
}

/// One traced (xi0, w) branch. `energy_sign` is meaningful for N = 1 only.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    pub level_n: u32,
    pub branch_n: u32,
    pub points: Vec<DimensionlessPair>,
    pub energy_sign: Option<i32>,
    /// grid values where no root bracket was found (or the point lies in
    /// the excluded w < 0 region for N = 1)
    pub skipped: Vec<f64>,
}

/// Assembled wavefunction psi(r) = z^{a0} e^{a1 z + a2 z^2} u(z), z = r^2/4,
/// with u in the two-Hermite-function contiguous form.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    pub prefactor: PrefactorExponents,
    pub contig: ContiguousSolution,
}

impl Wavefunction {
    pub fn eval(&self, r: f64, policy: &EvalPolicy) -> Result<f64, SpectrumError> {
        let z = 0.25 * r * r;
        let u = self.contig.eval(z, policy)?;
        let pf =
            z.powf(self.prefactor.a0) * (self.prefactor.a1 * z + self.prefactor.a2 * z * z).exp();
        Ok(pf * u)
    }
}

/// A concrete potential realizing a dimensionless pair: V6 = 1, V0 = 0,
/// V_-2 fixed by the hierarchy level.
pub fn potential_from_pair(
    pair: &DimensionlessPair,
    n_level: u32,
    consts: &PhysicalConstants,
) -> Potential {
    let h2m = consts.hbar * consts.hbar / consts.mass; // hbar^2/m
    Potential {
        v_m2: v_m2_for_level(n_level, consts),
        v0: 0.0,
        v2: pair.w * (2.0 * h2m).sqrt(),
        v4: 2.0 * pair.xi0 * (2.0 * h2m).powf(0.25),
        v6: 1.0,
    }
}

/// The dimensionless pair of a potential (independent of V_-2, V0).
pub fn pair_from_potential(pot: &Potential, consts: &PhysicalConstants) -> DimensionlessPair {
    let h2m = consts.hbar * consts.hbar / consts.mass;
    DimensionlessPair {
        xi0: pot.v4 / (2.0 * (2.0 * h2m * pot.v6.powi(3)).powf(0.25)),
        w: pot.v2 / (2.0 * h2m * pot.v6).sqrt(),
    }
}

/// Build the psi(r) sampler from a terminated expansion. The expansion must
/// come from the same (pot, energy) through map_potential.
pub fn assemble_wavefunction(
    pot: &Potential,
    consts: &PhysicalConstants,
    branch: &BranchChoice,
    exp: &HermiteExpansion,
    energy: f64,
) -> Result<Wavefunction, SpectrumError> {
    let (hp, pf) = map_potential(pot, energy, consts, branch)?;
    let tol = 1e-9;
    let consistent = (exp.xi_shift - hp.delta / hp.epsilon).abs()
        <= tol * (1.0 + exp.xi_shift.abs())
        && (exp.xi_scale.abs() - (-hp.epsilon / 2.0).sqrt()).abs()
            <= tol * (1.0 + exp.xi_scale.abs())
        && (exp.nu0 - (hp.gamma - hp.alpha / hp.epsilon)).abs() <= tol * (1.0 + exp.nu0.abs());
    if !consistent {
        return Err(SpectrumError::Inconsistent {
            reason: "expansion does not match the potential and energy",
        });
    }
    let contig = reduce_to_contiguous(exp)?;
    Ok(Wavefunction {
        prefactor: pf,
        contig,
    })
}

/// The <= N+1 real energies of hierarchy level N, ascending, plus the count
/// of complex q-roots excluded.
pub fn energies_for_level(
    pot: &Potential,
    consts: &PhysicalConstants,
    n_level: u32,
    branch: &BranchChoice,
) -> Result<(Vec<f64>, usize), SpectrumError> {
    let want = v_m2_for_level(n_level, consts);
    if (pot.v_m2 - want).abs() > 1e-9 * (1.0 + want.abs()) {
        return Err(SpectrumError::LevelMismatch {
            v_m2: pot.v_m2,
            n_level,
        });
    }
    let (hp, _) = map_potential(pot, 0.0, consts, branch)?;
    let (q_roots, n_complex) =
        crate::heun_core::admissible_q(n_level, hp.delta, hp.epsilon, hp.alpha);
    let mut energies: Vec<f64> = q_roots
        .iter()
        .map(|&q| energy_of_q(pot, consts, hp.gamma, hp.delta, q))
        .collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((energies, n_complex))
}

/// N = 0 origin condition: H_{(xi0^2-w-1)/2}(xi0).
pub fn origin_condition_n0(
    pair: &DimensionlessPair,
    policy: &EvalPolicy,
) -> Result<f64, SpectrumError> {
    let nu = 0.5 * (pair.xi0 * pair.xi0 - pair.w - 1.0);
    Ok(hermite_nu(nu, pair.xi0, policy)?)
}

/// N = 1 origin condition:
/// (xi0 - energy_sign w^{1/2}) H_{(xi0^2-w)/2}(xi0)
///   - (xi0^2 - w) H_{(xi0^2-w)/2-1}(xi0).
pub fn origin_condition_n1(
    pair: &DimensionlessPair,
    energy_sign: i32,
    policy: &EvalPolicy,
) -> Result<f64, SpectrumError> {
    if pair.w < 0.0 {
        return Err(SpectrumError::Domain {
            reason: "origin_condition_n1: w must be non-negative",
        });
    }
    let nu = 0.5 * (pair.xi0 * pair.xi0 - pair.w);
    let h0 = hermite_nu(nu, pair.xi0, policy)?;
    let h1 = hermite_nu(nu - 1.0, pair.xi0, policy)?;
    Ok((pair.xi0 - energy_sign as f64 * pair.w.sqrt()) * h0 - (pair.xi0 * pair.xi0 - pair.w) * h1)
}

/// General level-N origin condition
/// P0(0) H_{-a/e}(s0 d/e) + P1(0) H_{-1-a/e}(s0 d/e), i.e. u(0).
pub fn general_origin_condition(
    contig: &ContiguousSolution,
    hp: &HeunParameters,
    policy: &EvalPolicy,
) -> Result<f64, SpectrumError> {
    if (contig.index + hp.alpha / hp.epsilon).abs() > 1e-9 * (1.0 + contig.index.abs()) {
        return Err(SpectrumError::Inconsistent {
            reason: "contiguous index does not match -alpha/epsilon",
        });
    }
    Ok(contig.eval(0.0, policy)?)
}

/// Closed-form N = 0 seed, exact at xi0 = 0 where it gives w = 1 - 4n.
pub fn approx_n0(xi0: f64, n: u32) -> Result<f64, SpectrumError> {
    let nf = n as f64;
    let base = 1.0 - 4.0 * nf;
    let inner = (12.0 - PI * PI) / (3.0 * PI * PI) * xi0 * xi0 - base;
    if inner < 0.0 {
        return Err(SpectrumError::Domain {
            reason: "approx_n0: negative square-root argument",
        });
    }
    Ok(base + xi0 * xi0 * (PI * PI - 8.0) / (PI * PI) - xi0 * 4.0 / PI * inner.sqrt())
}

/// N = 1 negative-energy branch seed w = xi0^2 - 2n.
pub fn approx_n1_neg(xi0: f64, n: u32) -> f64 {
    xi0 * xi0 - 2.0 * n as f64
}

/// N = 1 positive-energy branch seed w = (xi0^2 - 2n + a) + Delta, a = 1/3,
/// Delta = (2 - a) tanh[-sqrt(2)(xi0 + sqrt(2n - a))].
pub fn approx_n1_pos(xi0: f64, n: u32) -> f64 {
    let a = 1.0 / 3.0;
    let nf = n as f64;
    let delta = (2.0 - a) * (-(2.0f64).sqrt() * (xi0 + (2.0 * nf - a).sqrt())).tanh();
    xi0 * xi0 - 2.0 * nf + a + delta
}

/// Airy-region approximation of the w = 0 condition:
/// sin[pi(xi0^2/2 + 1/6)] + Gamma(7/6)/(4 sqrt(pi) 3^{1/3} (xi0^2)^{2/3})
///   cos[pi(xi0^2/2 + 1/6)].
pub fn airy_region_condition(xi0: f64) -> Result<f64, SpectrumError> {
    if xi0 >= -1.0 {
        return Err(SpectrumError::Domain {
            reason: "airy_region_condition: requires xi0 < -1",
        });
    }
    let arg = PI * (0.5 * xi0 * xi0 + 1.0 / 6.0);
    let coef = gamma(7.0 / 6.0)?
        / (4.0 * PI.sqrt() * 3.0f64.powf(1.0 / 3.0) * (xi0 * xi0).powf(2.0 / 3.0));
    Ok(arg.sin() + coef * arg.cos())
}

/// Confluent-hypergeometric solution of the delta = q = 0 (reduced,
/// zero-energy) equation:
/// u = c1 1F1(alpha/2eps; (gamma+1)/2; -eps z^2/2)
///   + c2 U(alpha/2eps; (gamma+1)/2; -eps z^2/2).
pub fn zero_energy_reduced(
    hp: &HeunParameters,
    z: f64,
    c1: f64,
    c2: f64,
    policy: &EvalPolicy,
) -> Result<f64, SpectrumError> {
    if hp.delta != 0.0 || hp.q != 0.0 {
        return Err(SpectrumError::Domain {
            reason: "zero_energy_reduced: requires delta = 0 and q = 0",
        });
    }
    if hp.epsilon >= 0.0 {
        return Err(SpectrumError::Domain {
            reason: "zero_energy_reduced: requires epsilon < 0",
        });
    }
    let a = hp.alpha / (2.0 * hp.epsilon);
    let b = 0.5 * (hp.gamma + 1.0);
    let x = -0.5 * hp.epsilon * z * z;
    let mut u = 0.0;
    if c1 != 0.0 {
        u += c1 * kummer_m(a, b, x, policy)?;
    }
    if c2 != 0.0 {
        u += c2 * tricomi_u(a, b, x, policy)?;
    }
    Ok(u)
}

fn residual_at(
    level_n: u32,
    energy_sign: i32,
    xi0: f64,
    w: f64,
    policy: &EvalPolicy,
) -> Result<f64, SpectrumError> {
    let pair = DimensionlessPair { xi0, w };
    match level_n {
        0 => origin_condition_n0(&pair, policy),
        1 => origin_condition_n1(&pair, energy_sign, policy),
        _ => Err(SpectrumError::Domain {
            reason: "trace_curve: only levels 0 and 1 have branch atlases",
        }),
    }
}

/// Seed w for one grid point from the closed-form approximations.
fn seed_w(level_n: u32, energy_sign: i32, branch_n: u32, xi0: f64) -> Result<f64, SpectrumError> {
    match (level_n, energy_sign) {
        (0, _) => approx_n0(xi0, branch_n),
        (1, s) if s < 0 => Ok(approx_n1_neg(xi0, branch_n)),
        (1, _) => Ok(approx_n1_pos(xi0, branch_n)),
        _ => Err(SpectrumError::Domain {
            reason: "trace_curve: only levels 0 and 1 have branch atlases",
        }),
    }
}

/// Trace one branch over a monotone xi0 grid by bracketing and bisecting
/// the origin condition in w, seeded by the closed-form approximations
/// corrected by continuation from the neighboring solved point.
///
/// The grid is processed outward from the point where the closed-form seed
/// is most reliable (smallest |xi0|); far from it the approximation error
/// can exceed the branch spacing, and the continuation offset keeps the
/// bracket on the same branch.
pub fn trace_curve(
    level_n: u32,
    branch_n: u32,
    xi0_grid: &[f64],
    energy_sign: i32,
    policy: &EvalPolicy,
) -> Result<CurveTrace, SpectrumError> {
    if branch_n < 1 {
        return Err(SpectrumError::Domain {
            reason: "trace_curve: branch index starts at 1",
        });
    }
    let m = xi0_grid.len();
    let mut solved: Vec<Option<f64>> = vec![None; m];
    let anchor = (0..m)
        .min_by(|&i, &j| xi0_grid[i].abs().partial_cmp(&xi0_grid[j].abs()).unwrap())
        .unwrap_or(0);
    let upward: Vec<usize> = (anchor..m).collect();
    let downward: Vec<usize> = (0..anchor).rev().collect();
    for sweep in [upward, downward] {
        // (xi0, w) of the nearest solved neighbor in this sweep
        let mut prev: Option<(f64, f64)> = if sweep.first() == Some(&anchor) {
            None
        } else {
            solved[anchor].map(|w| (xi0_grid[anchor], w))
        };
        for i in sweep {
            if solved[i].is_some() {
                continue;
            }
            let xi0 = xi0_grid[i];
            let approx = seed_w(level_n, energy_sign, branch_n, xi0).ok();
            let seed = match (approx, prev) {
                (Some(a), Some((xp, wp))) => {
                    // carry over the observed approximation error
                    match seed_w(level_n, energy_sign, branch_n, xp) {
                        Ok(ap) => a + (wp - ap),
                        Err(_) => a,
                    }
                }
                (Some(a), None) => a,
                (None, Some((_, wp))) => wp,
                (None, None) => continue,
            };
            // N = 1 branches live in w >= 0; points whose seed is well
            // below zero are outside the traced region
            if level_n == 1 && seed < -0.5 {
                continue;
            }
            if let Some(w) = solve_point(level_n, energy_sign, xi0, seed, policy) {
                solved[i] = Some(w);
                prev = Some((xi0, w));
            }
        }
    }
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (i, &xi0) in xi0_grid.iter().enumerate() {
        match solved[i] {
            Some(w) => points.push(DimensionlessPair { xi0, w }),
            None => skipped.push(xi0),
        }
    }
    Ok(CurveTrace {
        level_n,
        branch_n,
        points,
        energy_sign: if level_n == 1 {
            Some(energy_sign)
        } else {
            None
        },
        skipped,
    })
}

/// Bracket around the seed (then a widening scan with step 0.25), bisect,
/// and accept only when the residual at the root is negligible against the
/// residual scale at the bracket ends.
fn solve_point(
    level_n: u32,
    energy_sign: i32,
    xi0: f64,
    seed: f64,
    policy: &EvalPolicy,
) -> Option<f64> {
    let floor = if level_n == 1 { 0.0 } else { f64::NEG_INFINITY };
    let res = |w: f64| residual_at(level_n, energy_sign, xi0, w, policy).ok();
    let mut lo = (seed - 1.0).max(floor);
    let mut hi = seed + 1.0;
    let mut flo = res(lo)?;
    let mut fhi = res(hi)?;
    if flo * fhi > 0.0 {
        // widening scan
        let mut found = false;
        let step = 0.25;
        let mut w_lo = lo;
        let mut f_lo = flo;
        for _ in 0..80 {
            let w_next = (w_lo - step).max(floor);
            if w_next == w_lo {
                break;
            }
            let f_next = res(w_next)?;
            if f_lo * f_next <= 0.0 {
                lo = w_next;
                hi = w_lo;
                flo = f_next;
                fhi = f_lo;
                found = true;
                break;
            }
            w_lo = w_next;
            f_lo = f_next;
        }
        if !found {
            let mut w_hi = hi;
            let mut f_hi = fhi;
            for _ in 0..80 {
                let w_next = w_hi + step;
                let f_next = res(w_next)?;
                if f_hi * f_next <= 0.0 {
                    lo = w_hi;
                    hi = w_next;
                    flo = f_hi;
                    fhi = f_next;
                    found = true;
                    break;
                }
                w_hi = w_next;
                f_hi = f_next;
            }
        }
        if !found {
            return None;
        }
    }
    let scale = flo.abs().max(fhi.abs()).max(1e-300);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = res(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    let root = 0.5 * (lo + hi);
    // the N = 1 condition also vanishes at w = xi0^2 (null wavefunction)
    // when energy_sign w^{1/2} = xi0 can hold, i.e. when the signs agree;
    // that zero is not a branch point. With opposite signs the genuine
    // branch may pass arbitrarily close to w = xi0^2 and must be kept.
    if level_n == 1
        && energy_sign as f64 * xi0 > 0.0
        && (root - xi0 * xi0).abs() <= 1e-6 * (1.0 + xi0 * xi0)
    {
        return None;
    }
    let fr = res(root)?;
    if fr.abs() <= 1e-10 * scale.max(1.0) {
        Some(root)
    } else {
        None
    }
}

/// Construct a bound state at a traced branch point. Levels 0 and 1 only;
/// for N = 1 the energy is energy_sign (2 hbar^2 V2/m)^{1/2}.
pub fn bound_state_at(
    pair: &DimensionlessPair,
    level_n: u32,
    branch_n: u32,
    energy_sign: i32,
    consts: &PhysicalConstants,
    branch: &BranchChoice,
    policy: &EvalPolicy,
) -> Result<BoundState, SpectrumError> {
    let _ = policy;
    let pot = potential_from_pair(pair, level_n, consts);
    let energy = match level_n {
        0 => pot.v0,
        1 => {
            let e2 = 2.0 * consts.hbar * consts.hbar * pot.v2 / consts.mass;
            if e2 < 0.0 {
                return Err(SpectrumError::Domain {
                    reason: "bound_state_at: N = 1 requires non-negative V2",
                });
            }
            energy_sign as f64 * e2.sqrt()
        }
        _ => {
            return Err(SpectrumError::Domain {
                reason: "bound_state_at: only levels 0 and 1",
            })
        }
    };
    let (hp, _) = map_potential(&pot, energy, consts, branch)?;
    let exp = expansion_coefficients(&hp, level_n, branch.sign_s0)?;
    let psi = assemble_wavefunction(&pot, consts, branch, &exp, energy)?;
    Ok(BoundState {
        level_n,
        branch_n,
        energy,
        pair: *pair,
        psi,
    })
}

#[cfg(test)]
mod tests;
