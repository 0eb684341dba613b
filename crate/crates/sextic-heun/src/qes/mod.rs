//! Quasi-exactly solvable (QES) parametrization of the sextic oscillator
//! and its dictionary to the Heun-side parameters.
//!
//! In hbar = 1, m = 1/2 units the potential coefficients are
//! V_-2 = (2s-1/2)(2s-3/2), V_2 = b^2 - 4a(s+M+1/2), V_4 = 2ab, V_6 = a^2,
//! and the first M+1 states have the closed form
//! psi = r^{2s-1/2} exp(-a r^4/4 - b r^2/2) P_M(r^2).

use crate::heun_core::{BranchChoice, HeunParameters, Potential};
use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum QesError {
    #[error("a must be positive for normalizable states")]
    NonPositiveA,
    #[error("s must exceed 1/4 for psi(0) = 0")]
    SmallS,
    #[error("state index {which} exceeds polynomial degree {m_degree}")]
    IndexOutOfRange { which: usize, m_degree: u32 },
}

/// QES parameters (a, b, s, M).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QesParams {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub m_degree: u32,
}

impl QesParams {
    pub fn validate(&self) -> Result<(), QesError> {
        if self.a <= 0.0 {
            return Err(QesError::NonPositiveA);
        }
        if self.s <= 0.25 {
            return Err(QesError::SmallS);
        }
        Ok(())
    }
}

/// The M+1 closed-form energies and, per energy, the coefficients of
/// P_M(r^2) (lowest power first, normalized to P(0) = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct QesSolution {
    pub energies: Vec<f64>,
    pub poly_coeffs: Vec<Vec<f64>>,
}

/// The sextic potential realized by the QES parameters (hbar = 1, m = 1/2).
pub fn qes_potential(p: &QesParams) -> Potential {
    Potential {
        v_m2: (2.0 * p.s - 0.5) * (2.0 * p.s - 1.5),
        v0: 0.0,
        v2: p.b * p.b - 4.0 * p.a * (p.s + p.m_degree as f64 + 0.5),
        v4: 2.0 * p.a * p.b,
        v6: p.a * p.a,
    }
}

/// Heun-side parameters of the QES problem at a given energy. The signs
/// are the gamma and epsilon branch choices; q follows the same affine
/// energy map as map_potential.
pub fn qes_to_heun(p: &QesParams, signs: &BranchChoice, energy: f64) -> HeunParameters {
    let (pi_gamma, pi_eps) = (signs.sign_gamma.factor(), signs.sign_epsilon.factor());
    let gamma = 1.0 + pi_gamma * (2.0 * p.s - 1.0).abs();
    let epsilon = 16.0 * p.a * pi_eps;
    let delta = 4.0 * p.b * pi_eps;
    let alpha = 16.0
        * p.a
        * (p.s + p.m_degree as f64 + 0.5 + pi_eps + pi_eps * pi_gamma * (p.s - 0.5).abs());
    let q = -2.0 * p.b * pi_eps * (1.0 + pi_gamma * (2.0 * p.s - 1.0).abs()) - energy;
    HeunParameters {
        gamma,
        delta,
        epsilon,
        alpha,
        q,
    }
}

/// Eigenvalues and polynomial coefficients of the (M+1)-dimensional block.
///
/// Inserting psi into the radial equation and balancing powers of r^2
/// gives, for P(x) = sum c_k x^k,
///   4(k+1)(k+2s) c_{k+1} + (E - 4b(s+k)) c_k + 4a(M-k+1) c_{k-1} = 0,
/// i.e. E c = A c with the tridiagonal matrix
///   A[k][k] = 4b(s+k), A[k][k+1] = -4(k+1)(k+2s), A[k][k-1] = -4a(M-k+1).
/// A diagonal similarity (the off-diagonal products are positive for
/// a > 0, s > 1/4) makes A symmetric, so the spectrum is real.
pub fn qes_spectrum(p: &QesParams) -> Result<QesSolution, QesError> {
    p.validate()?;
    let m = p.m_degree as usize;
    let dim = m + 1;
    // diagonal scaling d with (d_{k+1}/d_k)^2 = A[k+1][k]/A[k][k+1]
    let mut d = vec![1.0f64; dim];
    for k in 0..m {
        let ratio = p.a * (m - k) as f64 / ((k + 1) as f64 * (k as f64 + 2.0 * p.s));
        d[k + 1] = d[k] * ratio.sqrt();
    }
    let mut sym = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim {
        sym[(k, k)] = 4.0 * p.b * (p.s + k as f64);
        if k < m {
            let off =
                -4.0 * (p.a * (k + 1) as f64 * (k as f64 + 2.0 * p.s) * (m - k) as f64).sqrt();
            sym[(k, k + 1)] = off;
            sym[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut energies = Vec::with_capacity(dim);
    let mut poly_coeffs = Vec::with_capacity(dim);
    for &i in &order {
        energies.push(eig.eigenvalues[i]);
        let v = eig.eigenvectors.column(i);
        let mut c: Vec<f64> = (0..dim).map(|k| v[k] * d[k]).collect();
        let c0 = c[0];
        for x in c.iter_mut() {
            *x /= c0;
        }
        poly_coeffs.push(c);
    }
    Ok(QesSolution {
        energies,
        poly_coeffs,
    })
}

/// Sampler for the `which`-th QES state,
/// psi(r) = r^{2s-1/2} exp(-a r^4/4 - b r^2/2) P_M(r^2), C = 1.
pub fn qes_wavefunction(p: &QesParams, which: usize) -> Result<impl Fn(f64) -> f64, QesError> {
    let sol = qes_spectrum(p)?;
    if which > p.m_degree as usize {
        return Err(QesError::IndexOutOfRange {
            which,
            m_degree: p.m_degree,
        });
    }
    let coeffs = sol.poly_coeffs[which].clone();
    let (a, b, s) = (p.a, p.b, p.s);
    Ok(move |r: f64| {
        let x = r * r;
        let poly: f64 = coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        r.powf(2.0 * s - 0.5) * (-a * x * x / 4.0 - b * x / 2.0).exp() * poly
    })
}

#[cfg(test)]
mod tests;
