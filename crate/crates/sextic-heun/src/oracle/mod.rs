//! Independent numerical checks: fourth-order Numerov integration of the
//! radial equation psi'' = (2m/hbar^2)(V - E) psi, shooting-method
//! eigenvalues, and an ODE-residual probe for arbitrary wavefunction
//! samplers.

use crate::heun_core::{PhysicalConstants, Potential};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum OracleError {
    #[error("invalid grid: need 0 < r_min < r_max and step <= (r_max - r_min)/100")]
    InvalidGrid,
    #[error("no sign change of the matching function over the energy bracket")]
    NoSignChange,
    #[error("non-finite value encountered during integration")]
    NonFinite,
}

/// Uniform radial grid, r_min excluded from zero to keep the centrifugal
/// term finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub step: f64,
}

impl RadialGrid {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.r_min > 0.0
            && self.r_max > self.r_min
            && self.step > 0.0
            && self.step <= (self.r_max - self.r_min) / 100.0)
        {
            return Err(OracleError::InvalidGrid);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.r_max - self.r_min) / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.step
    }
}

/// Output of one left-to-right Numerov sweep.
#[derive(Debug, Clone)]
pub struct NumerovResult {
    /// psi samples, possibly rescaled; true psi = samples * 10^rescale_log10
    /// piecewise (only sign and ratios of neighboring samples are meaningful
    /// after a rescale)
    pub samples: Vec<f64>,
    pub node_count: usize,
    pub log_deriv_at_rmax: f64,
    /// accumulated decimal exponent removed to avoid overflow
    pub rescale_log10: i32,
}

/// Numerov integration with the origin behavior psi ~ r^{origin_power}
/// imposed at the two leftmost points.
pub fn numerov_integrate(
    pot: &Potential,
    consts: &PhysicalConstants,
    energy: f64,
    grid: &RadialGrid,
    origin_power: f64,
) -> Result<NumerovResult, OracleError> {
    grid.validate()?;
    let kf = consts.kinetic_factor();
    let n = grid.len();
    let h = grid.step;
    let h2 = h * h;
    let g = |r: f64| kf * (pot.eval(r) - energy);
    let mut samples = Vec::with_capacity(n);
    samples.push(grid.r_min.powf(origin_power));
    samples.push(grid.r(1).powf(origin_power));
    let mut node_count = 0;
    let mut rescale_log10 = 0i32;
    let mut g_prev = g(grid.r_min);
    let mut g_cur = g(grid.r(1));
    for i in 2..n {
        let g_next = g(grid.r(i));
        let y_prev = samples[i - 2];
        let y_cur = samples[i - 1];
        let y_next = (2.0 * y_cur * (1.0 + 5.0 * h2 * g_cur / 12.0)
            - y_prev * (1.0 - h2 * g_prev / 12.0))
            / (1.0 - h2 * g_next / 12.0);
        if !y_next.is_finite() {
            return Err(OracleError::NonFinite);
        }
        if y_next * y_cur < 0.0 {
            node_count += 1;
        }
        samples.push(y_next);
        if y_next.abs() > 1e250 {
            let k = samples.len();
            samples[k - 1] /= 1e250;
            samples[k - 2] /= 1e250;
            rescale_log10 += 250;
        }
        g_prev = g_cur;
        g_cur = g_next;
    }
    let y_n = samples[n - 1];
    let log_deriv =
        (3.0 * samples[n - 1] - 4.0 * samples[n - 2] + samples[n - 3]) / (2.0 * h * y_n);
    Ok(NumerovResult {
        samples,
        node_count,
        log_deriv_at_rmax: log_deriv,
        rescale_log10,
    })
}

fn matching_value(
    pot: &Potential,
    consts: &PhysicalConstants,
    energy: f64,
    grid: &RadialGrid,
    origin_power: f64,
) -> Result<f64, OracleError> {
    let res = numerov_integrate(pot, consts, energy, grid, origin_power)?;
    Ok(*res.samples.last().unwrap())
}

/// Eigenvalue inside the bracket by bisection on the sign of psi(r_max),
/// followed by secant refinement; |dE| <= 1e-8 max(1, |E|).
pub fn shoot_eigenvalue(
    pot: &Potential,
    consts: &PhysicalConstants,
    e_bracket: (f64, f64),
    grid: &RadialGrid,
    origin_power: f64,
) -> Result<f64, OracleError> {
    let (mut lo, mut hi) = e_bracket;
    let mut flo = matching_value(pot, consts, lo, grid, origin_power)?;
    let fhi = matching_value(pot, consts, hi, grid, origin_power)?;
    if flo * fhi > 0.0 {
        return Err(OracleError::NoSignChange);
    }
    let tol = |e: f64| 1e-8 * e.abs().max(1.0);
    while hi - lo > tol(0.5 * (lo + hi)) {
        let mid = 0.5 * (lo + hi);
        let fm = matching_value(pot, consts, mid, grid, origin_power)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    // secant refinement inside the final bracket
    let mut e0 = lo;
    let mut e1 = hi;
    let mut f0 = matching_value(pot, consts, e0, grid, origin_power)?;
    for _ in 0..8 {
        let f1 = matching_value(pot, consts, e1, grid, origin_power)?;
        if (f1 - f0).abs() == 0.0 {
            break;
        }
        let e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
        if !e2.is_finite() || e2 < lo - (hi - lo) || e2 > hi + (hi - lo) {
            break;
        }
        e0 = e1;
        f0 = f1;
        if (e2 - e1).abs() <= 1e-12 * e2.abs().max(1.0) {
            return Ok(e2);
        }
        e1 = e2;
    }
    Ok(0.5 * (lo + hi))
}

/// Max over grid interior of |psi'' + (2m/hbar^2)(E - V) psi| / max|psi''|,
/// with psi'' from the 5-point stencil.
pub fn ode_residual<F: Fn(f64) -> f64>(
    psi: F,
    pot: &Potential,
    consts: &PhysicalConstants,
    energy: f64,
    grid: &RadialGrid,
) -> Result<f64, OracleError> {
    grid.validate()?;
    let kf = consts.kinetic_factor();
    let h = grid.step;
    let n = grid.len();
    let mut max_res = 0.0f64;
    let mut max_d2 = 0.0f64;
    for i in 2..n - 2 {
        let r = grid.r(i);
        let d2 = (-psi(r - 2.0 * h) + 16.0 * psi(r - h) - 30.0 * psi(r) + 16.0 * psi(r + h)
            - psi(r + 2.0 * h))
            / (12.0 * h * h);
        let res = d2 + kf * (energy - pot.eval(r)) * psi(r);
        max_res = max_res.max(res.abs());
        max_d2 = max_d2.max(d2.abs());
    }
    if max_d2 == 0.0 {
        return Err(OracleError::NonFinite);
    }
    Ok(max_res / max_d2)
}
