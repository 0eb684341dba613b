use super::kummer::{kummer_m_scaled, ldexp};
use super::{gamma, rgamma, EvalPolicy, SpecFunError};
use std::f64::consts::PI;

/// Hermite function H_nu(y) for arbitrary real order nu.
pub fn hermite_nu(nu: f64, y: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    let (m, e) = hermite_nu_scaled(nu, y, policy)?;
    let v = ldexp(m, e);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Overflow)
    }
}

/// H_nu(y) as (significand, base-2 exponent), value = m * 2^e.
///
/// For y > 0 the two-Kummer series cancels to roughly e^{-y^2} of its
/// leading terms, so it is only used up to y^2 = 10. Beyond the policy
/// threshold the value comes from H_nu(y) = 2^nu U(-nu/2; 1/2; y^2) with
/// the large-argument expansion of U; in between neither series carries
/// enough digits and the Laplace integral
/// H_nu(y) = (1/Gamma(-nu)) int_0^inf t^{-nu-1} e^{-t^2 - 2ty} dt
/// (positive integrand, no cancellation) is used instead, with a stable
/// upward order recurrence to reach nu >= 0.
pub fn hermite_nu_scaled(nu: f64, y: f64, policy: &EvalPolicy) -> Result<(f64, i32), SpecFunError> {
    let y2 = y * y;
    if y > 0.0 && y2 > policy.recurrence_switch_threshold {
        let s = tricomi_u_asymptotic(-0.5 * nu, 0.5, y2, policy)?;
        // H = (2y)^nu * s
        let ln2_scale = nu * (2.0 * y).log2();
        let shift = ln2_scale.floor();
        if shift.abs() > i32::MAX as f64 {
            return Err(SpecFunError::Overflow);
        }
        return Ok(normalize(s * (ln2_scale - shift).exp2(), shift as i32));
    }
    if y > 0.0 && y2 > KUMMER_CANCELLATION_LIMIT {
        return Ok(normalize(hermite_mid_range(nu, y), 0));
    }
    let (m1, e1) = kummer_m_scaled(-0.5 * nu, 0.5, y2, policy)?;
    let (m2, e2) = kummer_m_scaled(0.5 * (1.0 - nu), 1.5, y2, policy)?;
    let t1 = (m1 * rgamma(0.5 * (1.0 - nu)), e1);
    let t2 = (-2.0 * y * m2 * rgamma(-0.5 * nu), e2);
    // combine on a common exponent
    let e = t1.1.max(t2.1);
    let bracket = ldexp(t1.0, t1.1 - e) + ldexp(t2.0, t2.1 - e);
    // fold in 2^nu sqrt(pi)
    let shift = nu.floor();
    let frac = nu - shift;
    let m = bracket * PI.sqrt() * frac.exp2();
    if shift.abs() > i32::MAX as f64 {
        return Err(SpecFunError::Overflow);
    }
    Ok(normalize(m, e + shift as i32))
}

// Poincare expansion U(a,b,z) ~ z^{-a} sum_k (a)_k (a-b+1)_k / (k! (-z)^k),
// truncated at the smallest term. Returns the sum only (no z^{-a} factor).
fn tricomi_u_asymptotic(a: f64, b: f64, z: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (a - b + 1.0 + kf) / ((kf + 1.0) * (-z));
        if term.abs() >= prev {
            // divergent tail reached; accept if the optimal-truncation
            // error is below tolerance
            if prev <= policy.series_tol.sqrt() * sum.abs().max(1e-300) {
                return Ok(sum);
            }
            return Err(SpecFunError::NonConvergence {
                max_terms: policy.max_terms,
            });
        }
        sum += term;
        if term.abs() <= policy.series_tol * sum.abs().max(1e-300) {
            return Ok(sum);
        }
        prev = term.abs();
    }
    Err(SpecFunError::NonConvergence {
        max_terms: policy.max_terms,
    })
}

// Largest y^2 at which the two-Kummer combination still leaves ~1e-12
// absolute accuracy in double precision.
const KUMMER_CANCELLATION_LIMIT: f64 = 8.0;

// H_nu(y) for y > 0 in the band where both series forms lose digits.
// Negative orders come straight from the Laplace integral; nonnegative
// orders are reached by the order recurrence H_{mu+1} = 2y H_mu - 2mu
// H_{mu-1} from two negative-order seeds, which runs in the direction of
// the dominant solution for these y and so keeps full relative accuracy.
fn hermite_mid_range(nu: f64, y: f64) -> f64 {
    if nu < 0.0 {
        return hermite_laplace_integral(nu, y);
    }
    let frac = nu - nu.floor();
    let mut mu = frac - 1.0;
    let mut hm = hermite_laplace_integral(frac - 2.0, y);
    let mut hc = hermite_laplace_integral(mu, y);
    while mu < nu - 0.5 {
        let next = 2.0 * y * hc - 2.0 * mu * hm;
        hm = hc;
        hc = next;
        mu += 1.0;
    }
    hc
}

// (1/Gamma(a)) int_0^inf t^{a-1} e^{-t^2 - 2ty} dt with a = -nu > 0.
// The e^{-t^2-2ty} tail is cut where the exponent reaches -50; for a <= 1
// the endpoint singularity is removed by t = c u^{1/a} on the head piece.
fn hermite_laplace_integral(nu: f64, y: f64) -> f64 {
    let a = -nu;
    let g = |t: f64| (-t * (t + 2.0 * y)).exp();
    let t_max = (y * y + 50.0).sqrt() - y;
    let integral = if a <= 1.0 {
        let c = t_max.min(1.0);
        let head = c.powf(a) / a * adaptive_simpson(&|u: f64| g(c * u.powf(1.0 / a)), 0.0, 1.0);
        let tail = if t_max > c {
            adaptive_simpson(&|t: f64| t.powf(a - 1.0) * g(t), c, t_max)
        } else {
            0.0
        };
        head + tail
    } else {
        adaptive_simpson(&|t: f64| t.powf(a - 1.0) * g(t), 0.0, t_max)
    };
    rgamma(a) * integral
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    // tolerance from a coarse scan of the integrand size, not from the
    // initial Simpson estimate, which can be orders of magnitude low when
    // the mass sits between the first three nodes
    let mut fmax = 0.0f64;
    for k in 0..=16 {
        fmax = fmax.max(f(a + (b - a) * k as f64 / 16.0).abs());
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = 1e-13 * ((b - a) * fmax).max(1e-120);
    simpson_refine(f, a, b, fa, fm, fb, whole, eps, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

fn normalize(m: f64, e: i32) -> (f64, i32) {
    if m == 0.0 || !m.is_finite() {
        return (m, 0);
    }
    let k = m.abs().log2().floor() as i32;
    (ldexp(m, -k), e + k)
}

/// dH_nu/dy = 2 nu H_{nu-1}(y).
pub fn hermite_nu_deriv(nu: f64, y: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    if nu == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * nu * hermite_nu(nu - 1.0, y, policy)?)
}

/// Cosine-form oscillatory approximation of H_nu(y), valid for
/// y^2 < 2 nu + 1.
pub fn hermite_oscillatory_approx(nu: f64, y: f64) -> Result<f64, SpecFunError> {
    let y2 = y * y;
    if y2 >= 2.0 * nu + 1.0 {
        return Err(SpecFunError::Domain {
            reason: "hermite_oscillatory_approx: requires y^2 < 2 nu + 1",
        });
    }
    let amp = 2.0 * (0.5 * y2).exp() * gamma(nu)?
        / ((1.0 - y2 / (2.0 * nu + 1.0)).powf(0.25) * gamma(0.5 * nu)?);
    let phase = 0.5 * PI * nu - y * (2.0 * nu - y2 / 3.0 + 1.0).sqrt();
    Ok(amp * phase.cos())
}
