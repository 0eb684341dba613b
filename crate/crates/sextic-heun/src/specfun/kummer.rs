use super::{gamma, is_nonpositive_integer, rgamma, EvalPolicy, SpecFunError};

/// Kummer confluent hypergeometric function 1F1(a; b; z), direct series
/// with compensated summation.
pub fn kummer_m(a: f64, b: f64, z: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    let (m, e) = kummer_m_scaled(a, b, z, policy)?;
    let v = ldexp(m, e);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Overflow)
    }
}

/// 1F1(a; b; z) as (significand, base-2 exponent), value = m * 2^e.
///
/// The partial sum is renormalized whenever it grows past 2^512, so
/// e^{z}-sized sums are representable regardless of the f64 range.
pub fn kummer_m_scaled(
    a: f64,
    b: f64,
    z: f64,
    policy: &EvalPolicy,
) -> Result<(f64, i32), SpecFunError> {
    if is_nonpositive_integer(b) {
        // terminating numerator can mask the pole only if it cuts the
        // series strictly before the zero of (b)_k
        let terminates_first = is_nonpositive_integer(a) && a > b;
        if !terminates_first {
            return Err(SpecFunError::Domain {
                reason: "kummer_m: b is a non-positive integer",
            });
        }
    }
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut term = 1.0f64;
    let mut exp2 = 0i32;
    let mut converged = 0u32;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            return Ok((sum, exp2)); // terminated polynomial case
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= policy.series_tol * sum.abs().max(1e-300) {
            converged += 1;
            if converged >= 2 {
                return Ok((sum, exp2));
            }
        } else {
            converged = 0;
        }
        const BIG: f64 = 1.3407807929942597e154; // 2^512
        if sum.abs() > BIG || term.abs() > BIG {
            sum /= BIG;
            comp /= BIG;
            term /= BIG;
            exp2 += 512;
        }
    }
    Err(SpecFunError::NonConvergence {
        max_terms: policy.max_terms,
    })
}

/// Tricomi confluent hypergeometric function U(a; b; z) for z > 0, via the
/// two-Kummer connection formula; near-integer b is handled by evaluating
/// at b +/- h and averaging.
pub fn tricomi_u(a: f64, b: f64, z: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    if z <= 0.0 {
        return Err(SpecFunError::Domain {
            reason: "tricomi_u: requires z > 0",
        });
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    const H: f64 = 1e-6;
    if (b - b.round()).abs() < 10.0 * H {
        let b0 = b.round();
        let lo = tricomi_u_noninteger(a, b0 - H, z, policy)?;
        let hi = tricomi_u_noninteger(a, b0 + H, z, policy)?;
        return Ok(0.5 * (lo + hi));
    }
    tricomi_u_noninteger(a, b, z, policy)
}

fn tricomi_u_noninteger(a: f64, b: f64, z: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    // U(a,b,z) = G(1-b)/G(a-b+1) M(a,b,z) + G(b-1)/G(a) z^{1-b} M(a-b+1,2-b,z)
    let m1 = kummer_m(a, b, z, policy)?;
    let m2 = kummer_m(a - b + 1.0, 2.0 - b, z, policy)?;
    let t1 = gamma(1.0 - b)? * rgamma(a - b + 1.0) * m1;
    let t2 = gamma(b - 1.0)? * rgamma(a) * z.powf(1.0 - b) * m2;
    let u = t1 + t2;
    let magnitude = t1.abs().max(t2.abs());
    if magnitude > 1e10 * u.abs().max(1e-300) && magnitude > 1e-250 {
        return Err(SpecFunError::PrecisionLoss {
            magnitude,
            result: u,
        });
    }
    Ok(u)
}

pub(crate) fn ldexp(m: f64, e: i32) -> f64 {
    m * f64::powi(2.0, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pol() -> EvalPolicy {
        EvalPolicy::default()
    }

    #[test]
    fn empty_series_is_one() {
        assert_eq!(kummer_m(0.7, 1.3, 0.0, &pol()).unwrap(), 1.0);
    }

    #[test]
    fn exponential_case() {
        assert_relative_eq!(
            kummer_m(1.0, 1.0, 1.0, &pol()).unwrap(),
            1.0f64.exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn terminating_series() {
        // M(-1, 0.5, z) = 1 - 2z
        assert_relative_eq!(
            kummer_m(-1.0, 0.5, 0.3, &pol()).unwrap(),
            0.4,
            max_relative = 1e-14
        );
    }

    #[test]
    fn b_pole_is_error() {
        assert!(kummer_m(0.3, -2.0, 1.0, &pol()).is_err());
        // but a terminating numerator above the pole is fine: M(-1,-2,z) = 1 + z/2
        assert_relative_eq!(
            kummer_m(-1.0, -2.0, 0.6, &pol()).unwrap(),
            1.3,
            max_relative = 1e-14
        );
    }

    #[test]
    fn tricomi_a_zero() {
        assert_eq!(tricomi_u(0.0, 0.77, 3.3, &pol()).unwrap(), 1.0);
    }

    #[test]
    fn tricomi_integer_b_limit() {
        // U(1,1,1) = e * E1(1)
        assert_relative_eq!(
            tricomi_u(1.0, 1.0, 1.0, &pol()).unwrap(),
            0.596_347_362_323_194_1,
            max_relative = 1e-9
        );
    }

    #[test]
    fn tricomi_half_integer() {
        assert_relative_eq!(
            tricomi_u(0.5, 0.5, 4.0, &pol()).unwrap(),
            0.452_677_049_981_174_6,
            max_relative = 1e-10
        );
    }

    #[test]
    fn tricomi_domain() {
        assert!(tricomi_u(1.0, 0.5, -1.0, &pol()).is_err());
    }
}
