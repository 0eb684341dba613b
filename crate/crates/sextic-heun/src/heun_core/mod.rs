//! Mapping of the sextic-oscillator radial Schrodinger problem onto the
//! bi-confluent Heun equation (BHE), and construction of its terminating
//! Hermite-function solutions.
//!
//! The radial equation psi'' + (2m/hbar^2)(E - V(r)) psi = 0 with
//! V = V_{-2}/r^2 + V_0 + V_2 r^2 + V_4 r^4 + V_6 r^6 becomes, after
//! psi = z^{a0} e^{a1 z + a2 z^2} u(z) with z = r^2/4, the BHE
//!
//! ```text
//! u'' + (gamma/z + delta + epsilon z) u' + (alpha z - q)/z u = 0.
//! ```
//!
//! For gamma = -N and q a root of a degree-(N+1) polynomial, u reduces to
//! a combination of N+1 Hermite functions of a shifted/scaled argument,
//! and further to two contiguous functions H_{-alpha/epsilon},
//! H_{-1-alpha/epsilon} with polynomial cofactors.

pub mod poly;
pub mod qpoly;

use crate::specfun::{hermite_nu, EvalPolicy, SpecFunError};
use poly::Poly1;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum HeunError {
    #[error("v6 must be non-zero")]
    ZeroV6,
    #[error("v6 must be positive for a real epsilon")]
    NegativeV6,
    #[error("1 + 8 m V_-2 / hbar^2 is negative; gamma would be complex")]
    NegativeDiscriminant,
    #[error("epsilon must be negative for real recurrence coefficients")]
    PositiveEpsilon,
    #[error("gamma = {gamma} is not -N for requested level N = {n_level}")]
    LevelMismatch { gamma: f64, n_level: u32 },
    #[error("q = {q} is not a root of the termination polynomial (residual {residual:e})")]
    NonRootQ { q: f64, residual: f64 },
    #[error("degenerate recurrence pivot R_{n} = 0 (alpha/epsilon integer in the active window)")]
    DegeneratePivot { n: usize },
    #[error("expansion does not terminate: |c_{{N+1}}| = {c_next:e} exceeds tolerance")]
    NonTerminating { c_next: f64 },
    #[error("special function evaluation failed: {0}")]
    SpecFun(#[from] SpecFunError),
}

/// hbar and particle mass. Defaults make 2m/hbar^2 = 1, the units in which
/// the QES parametrization is written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            mass: 0.5,
        }
    }
}

impl PhysicalConstants {
    /// 2m/hbar^2, the coefficient multiplying (E - V) in the radial equation.
    pub fn kinetic_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// The five sextic-potential coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Potential {
    pub v_m2: f64,
    pub v0: f64,
    pub v2: f64,
    pub v4: f64,
    pub v6: f64,
}

impl Potential {
    pub fn eval(&self, r: f64) -> f64 {
        let r2 = r * r;
        self.v_m2 / r2 + self.v0 + r2 * (self.v2 + r2 * (self.v4 + r2 * self.v6))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Sign choices for gamma, epsilon and the argument scale s0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchChoice {
    pub sign_gamma: Sign,
    pub sign_epsilon: Sign,
    pub sign_s0: Sign,
}

impl BranchChoice {
    /// The combination used for bound states: minus for gamma and epsilon,
    /// plus in s0 = (-epsilon/2)^{1/2}.
    pub fn bound_state() -> Self {
        BranchChoice {
            sign_gamma: Sign::Minus,
            sign_epsilon: Sign::Minus,
            sign_s0: Sign::Plus,
        }
    }
}

impl Default for BranchChoice {
    fn default() -> Self {
        BranchChoice::bound_state()
    }
}

/// BHE parameters (gamma, delta, epsilon, alpha, q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParameters {
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub q: f64,
}

/// Exponents (a0, a1, a2) of the prefactor z^{a0} e^{a1 z + a2 z^2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefactorExponents {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

/// Terminated Hermite-function expansion u = sum c_n H_{nu0+n}(xi),
/// xi = xi_scale (z + xi_shift).
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteExpansion {
    pub nu0: f64,
    pub n_max: u32,
    pub coeffs: Vec<f64>,
    pub xi_shift: f64,
    pub xi_scale: f64,
}

/// Two-Hermite-function contiguous form
/// u(z) = P0(z) H_index(xi) + P1(z) H_{index-1}(xi).
#[derive(Debug, Clone, PartialEq)]
pub struct ContiguousSolution {
    pub p0: Poly1,
    pub p1: Poly1,
    /// -alpha/epsilon, the order of the upper contiguous function.
    pub index: f64,
    pub xi_shift: f64,
    pub xi_scale: f64,
}

/// Which three-term recurrence variant: the non-polynomial
/// nu0 = gamma - alpha/epsilon branch, or the polynomial nu0 = 0 branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceVariant {
    Nu0Full,
    Nu0Zero,
}

/// V_{-2} of the N-th hierarchy member: hbar^2 (2N+1)(2N+3) / (8m).
pub fn v_m2_for_level(n_level: u32, consts: &PhysicalConstants) -> f64 {
    let n = n_level as f64;
    consts.hbar * consts.hbar * (2.0 * n + 1.0) * (2.0 * n + 3.0) / (8.0 * consts.mass)
}

/// BHE parameters and prefactor exponents for a given potential and energy.
pub fn map_potential(
    pot: &Potential,
    energy: f64,
    consts: &PhysicalConstants,
    branch: &BranchChoice,
) -> Result<(HeunParameters, PrefactorExponents), HeunError> {
    if pot.v6 == 0.0 {
        return Err(HeunError::ZeroV6);
    }
    if pot.v6 < 0.0 {
        return Err(HeunError::NegativeV6);
    }
    let kf = consts.kinetic_factor(); // 2m/hbar^2
    let disc = 1.0 + 4.0 * kf * pot.v_m2;
    if disc < 0.0 {
        return Err(HeunError::NegativeDiscriminant);
    }
    let gamma = 1.0 + branch.sign_gamma.factor() * 0.5 * disc.sqrt();
    let epsilon = branch.sign_epsilon.factor() * 16.0 * (kf * pot.v6).sqrt();
    let delta = 32.0 * kf * pot.v4 / epsilon;
    let alpha = -4.0 * kf * pot.v2 + 0.25 * delta * delta + 0.5 * (gamma + 1.0) * epsilon;
    let q = -0.5 * gamma * delta - kf * (energy - pot.v0);
    Ok((
        HeunParameters {
            gamma,
            delta,
            epsilon,
            alpha,
            q,
        },
        PrefactorExponents {
            a0: (2.0 * gamma - 1.0) / 4.0,
            a1: 0.5 * delta,
            a2: 0.25 * epsilon,
        },
    ))
}

/// The affine map E -> q as (slope, intercept):
/// q(E) = slope * E + intercept with slope = -2m/hbar^2.
pub fn q_of_energy(
    pot: &Potential,
    consts: &PhysicalConstants,
    gamma: f64,
    delta: f64,
) -> (f64, f64) {
    let kf = consts.kinetic_factor();
    (-kf, -0.5 * gamma * delta + kf * pot.v0)
}

/// Inverse of [`q_of_energy`]: the energy at which the accessory parameter
/// takes the value q.
pub fn energy_of_q(
    pot: &Potential,
    consts: &PhysicalConstants,
    gamma: f64,
    delta: f64,
    q: f64,
) -> f64 {
    let (slope, intercept) = q_of_energy(pot, consts, gamma, delta);
    (q - intercept) / slope
}

/// (R_n, Q_n, P_n) of the three-term recurrence
/// R_n c_n + Q_{n-1} c_{n-1} + P_{n-2} c_{n-2} = 0.
pub fn recurrence_coeffs(
    hp: &HeunParameters,
    variant: RecurrenceVariant,
    n: u32,
    sign_s0: Sign,
) -> Result<(f64, f64, f64), HeunError> {
    if hp.epsilon >= 0.0 {
        return Err(HeunError::PositiveEpsilon);
    }
    let nf = n as f64;
    let root = (2.0 / -hp.epsilon).sqrt();
    let root2 = (-2.0 * hp.epsilon).sqrt();
    // the sign in front of Q follows the sign chosen in xi
    let qs = -sign_s0.factor();
    Ok(match variant {
        RecurrenceVariant::Nu0Full => (
            root * nf * (-hp.alpha + (hp.gamma + nf) * hp.epsilon),
            qs * (hp.q + (hp.gamma + nf) * hp.delta),
            (hp.gamma + nf) * hp.epsilon / root2,
        ),
        RecurrenceVariant::Nu0Zero => (
            root * nf * (hp.alpha + (nf - hp.gamma) * hp.epsilon),
            qs * (hp.q + hp.delta * (hp.alpha / hp.epsilon + nf)),
            (hp.alpha + nf * hp.epsilon) / root2,
        ),
    })
}

/// Degree-(N+1) termination polynomial in q for gamma = -N, with numeric
/// coefficients (exact symbolic generation evaluated at the given
/// parameters).
pub fn q_polynomial(n_level: u32, delta: f64, epsilon: f64, alpha: f64) -> Poly1 {
    let sym = qpoly::q_polynomial_exact(n_level);
    Poly1::new(sym.iter().map(|c| c.eval(delta, epsilon, alpha)).collect())
}

/// Admissible accessory parameters: real roots of the termination
/// polynomial, ascending, plus the count of complex roots discarded.
pub fn admissible_q(n_level: u32, delta: f64, epsilon: f64, alpha: f64) -> (Vec<f64>, usize) {
    q_polynomial(n_level, delta, epsilon, alpha).real_roots(1e-8)
}

fn q_residual_scale(p: &Poly1, q: f64) -> f64 {
    p.coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * q.abs().powi(k as i32))
        .fold(1e-300, f64::max)
}

/// Expansion coefficients c_0..c_N (c_0 = 1) of the terminated
/// nu0 = gamma - alpha/epsilon series at gamma = -N and q a root of the
/// termination polynomial.
pub fn expansion_coefficients(
    hp: &HeunParameters,
    n_level: u32,
    sign_s0: Sign,
) -> Result<HermiteExpansion, HeunError> {
    if hp.epsilon >= 0.0 {
        return Err(HeunError::PositiveEpsilon);
    }
    if (hp.gamma + n_level as f64).abs() > 1e-9 * (1.0 + n_level as f64) {
        return Err(HeunError::LevelMismatch {
            gamma: hp.gamma,
            n_level,
        });
    }
    let p = q_polynomial(n_level, hp.delta, hp.epsilon, hp.alpha);
    let residual = p.eval(hp.q);
    let scale = q_residual_scale(&p, hp.q);
    if residual.abs() > 1e-9 * scale {
        return Err(HeunError::NonRootQ { q: hp.q, residual });
    }

    let n = n_level as usize;
    // division-free continuant form: T_0 = 1, T_1 = Q_0,
    // T_k = Q_{k-1} T_{k-1} - P_{k-2} R_{k-1} T_{k-2}; the coefficient
    // vector c_k = (-1)^k T_k prod_{j=k+1..N} R_j satisfies every
    // recurrence equation identically, so degenerate pivots (R_j = 0) do
    // not require division. A parallel all-magnitudes continuant provides
    // the cancellation scale.
    let mut r = vec![0.0f64; n + 2];
    let mut qq = vec![0.0f64; n + 1];
    let mut pp = vec![0.0f64; n + 1];
    for k in 0..=n + 1 {
        let (rk, qk, pk) = recurrence_coeffs(hp, RecurrenceVariant::Nu0Full, k as u32, sign_s0)?;
        r[k] = rk;
        if k <= n {
            qq[k] = qk;
            pp[k] = pk;
        }
    }
    let mut t = vec![0.0f64; n + 2];
    let mut t_abs = vec![0.0f64; n + 2];
    t[0] = 1.0;
    t_abs[0] = 1.0;
    if n + 1 >= 1 {
        t[1] = qq[0];
        t_abs[1] = qq[0].abs();
    }
    for k in 2..=n + 1 {
        t[k] = qq[k - 1] * t[k - 1] - pp[k - 2] * r[k - 1] * t[k - 2];
        t_abs[k] = qq[k - 1].abs() * t_abs[k - 1] + (pp[k - 2] * r[k - 1]).abs() * t_abs[k - 2];
    }
    // termination: T_{N+1} is proportional to the q-polynomial value
    if t[n + 1].abs() > 1e-8 * t_abs[n + 1].max(1e-300) {
        return Err(HeunError::NonTerminating {
            c_next: t[n + 1].abs(),
        });
    }
    let mut d = vec![0.0f64; n + 1];
    let mut d_abs = vec![0.0f64; n + 1];
    let mut tail_prod = 1.0;
    let mut tail_prod_abs = 1.0;
    for k in (0..=n).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        d[k] = sign * t[k] * tail_prod;
        d_abs[k] = t_abs[k] * tail_prod_abs;
        if k > 0 {
            tail_prod *= r[k];
            tail_prod_abs *= r[k].abs();
        }
    }
    let d_max = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let d_abs_max = d_abs.iter().fold(0.0f64, |m, x| m.max(*x));
    let c = if d_max <= 1e-9 * d_abs_max.max(1e-300) {
        // fully degenerate root: the terminated solution is identically
        // zero (e.g. the trivial N = 1 root w = xi0^2)
        vec![0.0; n + 1]
    } else if d[0].abs() <= 1e-9 * d_max {
        let pivot = (1..=n)
            .min_by(|&a, &b| {
                (r[a].abs() / a as f64)
                    .partial_cmp(&(r[b].abs() / b as f64))
                    .unwrap()
            })
            .unwrap_or(1);
        return Err(HeunError::DegeneratePivot { n: pivot });
    } else {
        d.iter().map(|&x| x / d[0]).collect()
    };

    Ok(HermiteExpansion {
        nu0: hp.gamma - hp.alpha / hp.epsilon,
        n_max: n_level,
        coeffs: c,
        xi_shift: hp.delta / hp.epsilon,
        xi_scale: sign_s0.factor() * (-hp.epsilon / 2.0).sqrt(),
    })
}

impl HermiteExpansion {
    pub fn xi(&self, z: f64) -> f64 {
        self.xi_scale * (z + self.xi_shift)
    }

    /// Direct summation of the terminated series at z.
    pub fn eval(&self, z: f64, policy: &EvalPolicy) -> Result<f64, HeunError> {
        let xi = self.xi(z);
        let mut sum = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            sum += c * hermite_nu(self.nu0 + k as f64, xi, policy)?;
        }
        Ok(sum)
    }
}

/// Collapse a terminated expansion onto the two contiguous functions
/// H_{-alpha/epsilon}, H_{-1-alpha/epsilon} with polynomial cofactors,
/// using H_{nu-1} = (2 xi H_nu - H_{nu+1}) / (2 nu) downward.
pub fn reduce_to_contiguous(exp: &HermiteExpansion) -> Result<ContiguousSolution, HeunError> {
    let n = exp.n_max as usize;
    let a = exp.nu0 + exp.n_max as f64; // -alpha/epsilon
                                        // H_{a-k} = p_k(xi) H_a + r_k(xi) H_{a-1}
    let mut p_prev = Poly1::constant(1.0); // k = 0
    let mut r_prev = Poly1::zero();
    let mut p_cur = Poly1::zero(); // k = 1
    let mut r_cur = Poly1::constant(1.0);
    let mut p0 = p_prev.scale(exp.coeffs[n]);
    let mut r0 = r_prev.scale(exp.coeffs[n]);
    if n >= 1 {
        p0 = p0.add(&p_cur.scale(exp.coeffs[n - 1]));
        r0 = r0.add(&r_cur.scale(exp.coeffs[n - 1]));
    }
    for k in 1..n {
        let denom = 2.0 * (a - k as f64);
        if denom.abs() <= 1e-9 * (1.0 + a.abs()) {
            return Err(HeunError::DegeneratePivot { n: k });
        }
        let p_next = p_cur
            .mul_affine(0.0, 2.0)
            .add(&p_prev.scale(-1.0))
            .scale(1.0 / denom);
        let r_next = r_cur
            .mul_affine(0.0, 2.0)
            .add(&r_prev.scale(-1.0))
            .scale(1.0 / denom);
        p_prev = p_cur;
        r_prev = r_cur;
        p_cur = p_next;
        r_cur = r_next;
        p0 = p0.add(&p_cur.scale(exp.coeffs[n - 1 - k]));
        r0 = r0.add(&r_cur.scale(exp.coeffs[n - 1 - k]));
    }
    // substitute xi = xi_scale (z + xi_shift)
    let sub = |p: &Poly1| p.compose_affine(exp.xi_scale, exp.xi_scale * exp.xi_shift);
    Ok(ContiguousSolution {
        p0: sub(&p0),
        p1: sub(&r0),
        index: a,
        xi_shift: exp.xi_shift,
        xi_scale: exp.xi_scale,
    })
}

impl ContiguousSolution {
    pub fn xi(&self, z: f64) -> f64 {
        self.xi_scale * (z + self.xi_shift)
    }

    pub fn eval(&self, z: f64, policy: &EvalPolicy) -> Result<f64, HeunError> {
        let xi = self.xi(z);
        Ok(self.p0.eval(z) * hermite_nu(self.index, xi, policy)?
            + self.p1.eval(z) * hermite_nu(self.index - 1.0, xi, policy)?)
    }
}

/// Power-series coefficients of u(z) around z = 0, orders 0..=k_max,
/// obtained from the Taylor expansion of the shifted Hermite functions.
pub fn u_power_series_prefix(
    exp: &HermiteExpansion,
    k_max: u32,
    policy: &EvalPolicy,
) -> Result<Vec<f64>, HeunError> {
    let y0 = exp.xi_scale * exp.xi_shift; // xi(0)
    let mut out = Vec::with_capacity(k_max as usize + 1);
    let mut front = 1.0; // 2^k s0^k / k!
    for k in 0..=k_max {
        if k > 0 {
            front *= 2.0 * exp.xi_scale / k as f64;
        }
        let mut sum = 0.0;
        for (n, &c) in exp.coeffs.iter().enumerate() {
            let nu = exp.nu0 + n as f64;
            // generalized binomial (nu choose k) * k! = falling factorial
            let mut fall = 1.0;
            for j in 0..k {
                fall *= nu - j as f64;
            }
            if fall == 0.0 {
                continue;
            }
            sum += c * fall * hermite_nu(nu - k as f64, y0, policy)?;
        }
        out.push(front * sum);
    }
    Ok(out)
}
