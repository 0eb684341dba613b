use super::{is_nonpositive_integer, SpecFunError};
use std::f64::consts::PI;

// Lanczos g = 7, n = 9 (GSL coefficient set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.5203681218851,
    -1259.1392167224028,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507343278686905,
    -0.13857109526572012,
    9.984_369_578_019_572e-6,
    1.5056327351493116e-7,
];

fn lanczos_positive(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut acc = LANCZOS_P[0];
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Euler gamma function for real argument.
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { x });
    }
    if x >= 0.5 {
        Ok(lanczos_positive(x))
    } else {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        Ok(PI / (sin_pi(x) * lanczos_positive(1.0 - x)))
    }
}

/// Reciprocal gamma, entire in x: returns 0 at the poles of gamma.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / lanczos_positive(x)
    } else {
        sin_pi(x) * lanczos_positive(1.0 - x) / PI
    }
}

// sin(pi x) with the argument reduced in exact arithmetic, so that
// near-integer x does not lose accuracy to the pi-multiplication.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1], exact for |x| up to 2^52
    if r.abs() <= 0.5 {
        (PI * r).sin()
    } else {
        let s = if r > 0.0 { 1.0 - r } else { -1.0 - r };
        (PI * s).sin()
    }
}
