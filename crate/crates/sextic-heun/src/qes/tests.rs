use super::*;
use crate::heun_core::{
    map_potential, recurrence_coeffs, BranchChoice, PhysicalConstants, RecurrenceVariant, Sign,
};
use approx::assert_relative_eq;

fn params(a: f64, b: f64, s: f64, m: u32) -> QesParams {
    QesParams {
        a,
        b,
        s,
        m_degree: m,
    }
}

fn qes_signs() -> BranchChoice {
    BranchChoice {
        sign_gamma: Sign::Plus,
        sign_epsilon: Sign::Minus,
        sign_s0: Sign::Plus,
    }
}

#[test]
fn potential_reference_values() {
    // s = 3/4 removes the centrifugal term
    assert_eq!(qes_potential(&params(1.0, 0.5, 0.75, 2)).v_m2, 0.0);
    let pot = qes_potential(&params(1.0, 0.0, 1.0, 0));
    assert_eq!(pot.v2, -6.0);
    assert_eq!(pot.v4, 0.0);
    assert_eq!(pot.v6, 1.0);
    // s = N/2 + 1 realizes the hierarchy values (2N+1)(2N+3)/4
    for n in 0..=4u32 {
        let pot = qes_potential(&params(0.7, 1.1, n as f64 / 2.0 + 1.0, 3));
        let want = (2.0 * n as f64 + 1.0) * (2.0 * n as f64 + 3.0) / 4.0;
        assert_relative_eq!(pot.v_m2, want, max_relative = 1e-14);
    }
}

#[test]
fn dictionary_round_trip() {
    // qes_to_heun must agree with map_potential on the QES potential for
    // both gamma branches
    let consts = PhysicalConstants::default();
    for &s in &[0.6, 1.0, 1.5, 2.3] {
        for &sg in &[Sign::Plus, Sign::Minus] {
            let p = params(0.8, -1.3, s, 2);
            let signs = BranchChoice {
                sign_gamma: sg,
                sign_epsilon: Sign::Minus,
                sign_s0: Sign::Plus,
            };
            for &e in &[0.0, 2.7] {
                let hp = qes_to_heun(&p, &signs, e);
                let (hp2, _) = map_potential(&qes_potential(&p), e, &consts, &signs).unwrap();
                assert_relative_eq!(hp.gamma, hp2.gamma, max_relative = 1e-12);
                assert_relative_eq!(hp.delta, hp2.delta, max_relative = 1e-12);
                assert_relative_eq!(hp.epsilon, hp2.epsilon, max_relative = 1e-12);
                assert_relative_eq!(hp.alpha, hp2.alpha, max_relative = 1e-12, epsilon = 1e-12);
                assert_relative_eq!(hp.q, hp2.q, max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn polynomial_branch_terminates() {
    // Pi_gamma = +1, Pi_eps = -1, s >= 1/2: alpha/epsilon = -M identically
    for &s in &[0.5, 0.9, 1.7] {
        for m in 0..=6u32 {
            let hp = qes_to_heun(&params(1.3, 0.4, s, m), &qes_signs(), 0.0);
            assert!(
                (hp.alpha / hp.epsilon + m as f64).abs() <= 1e-12,
                "s={s} M={m}"
            );
            assert_relative_eq!(hp.gamma, 2.0 * s, max_relative = 1e-14);
        }
    }
}

#[test]
fn spectrum_m0_closed_form() {
    for &(a, b, s) in &[(1.0, 0.7, 1.0), (0.4, -2.0, 1.5), (2.0, 0.0, 0.8)] {
        let sol = qes_spectrum(&params(a, b, s, 0)).unwrap();
        assert_eq!(sol.energies.len(), 1);
        assert_relative_eq!(sol.energies[0], 4.0 * s * b, epsilon = 1e-12);
        assert_eq!(sol.poly_coeffs[0], vec![1.0]);
    }
}

#[test]
fn spectrum_m1_closed_form() {
    let (a, b, s) = (0.9, 0.6, 1.2);
    let sol = qes_spectrum(&params(a, b, s, 1)).unwrap();
    let mid = 4.0 * b * s + 2.0 * b;
    let half = (4.0 * b * b + 32.0 * a * s).sqrt();
    assert_relative_eq!(sol.energies[0], mid - half, max_relative = 1e-12);
    assert_relative_eq!(sol.energies[1], mid + half, max_relative = 1e-12);
}

#[test]
fn spectrum_matches_nu0_zero_recurrence() {
    // the polynomial-branch termination condition for M = 1 is a quadratic
    // in q; its roots must map to the same energies
    let p = params(0.9, 0.6, 1.2, 1);
    let hp0 = qes_to_heun(&p, &qes_signs(), 0.0);
    // q(E) = q(0) - E, so the condition T(q) = 0 maps to energies
    // E = q0 - q_root
    let (r1, _, _) = recurrence_coeffs(&hp0, RecurrenceVariant::Nu0Zero, 1, Sign::Plus).unwrap();
    let (_, _, p0) = recurrence_coeffs(&hp0, RecurrenceVariant::Nu0Zero, 0, Sign::Plus).unwrap();
    // Q_n(q) = -(q + delta(alpha/eps + n)) at sign_s0 = +1; the condition
    // Q_0 Q_1 - R_1 P_0 = 0 expands to a monic quadratic in q
    let lin0 = hp0.delta * (hp0.alpha / hp0.epsilon);
    let lin1 = hp0.delta * (hp0.alpha / hp0.epsilon + 1.0);
    // (q + lin0)(q + lin1) - R_1 P_0 = 0
    let bq = lin0 + lin1;
    let cq = lin0 * lin1 - r1 * p0;
    let disc = (bq * bq - 4.0 * cq).sqrt();
    let q_roots = [(-bq - disc) / 2.0, (-bq + disc) / 2.0];
    let mut energies: Vec<f64> = q_roots.iter().map(|&q| hp0.q - q).collect();
    energies.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let sol = qes_spectrum(&p).unwrap();
    for (got, want) in sol.energies.iter().zip(energies.iter()) {
        assert_relative_eq!(got, want, max_relative = 1e-9);
    }
}

#[test]
fn spectrum_real_for_larger_blocks() {
    // SymmetricEigen guarantees real output; check sanity and ordering up
    // to the validated degree
    for m in 2..=12u32 {
        let sol = qes_spectrum(&params(0.5, -0.8, 0.7, m)).unwrap();
        assert_eq!(sol.energies.len(), m as usize + 1);
        for w in sol.energies.windows(2) {
            assert!(w[0] < w[1]);
        }
        for c in &sol.poly_coeffs {
            assert_eq!(c[0], 1.0);
            assert!(c.iter().all(|x| x.is_finite()));
        }
    }
}

#[test]
fn wavefunction_forms() {
    let p = params(1.0, 0.7, 1.1, 0);
    let psi = qes_wavefunction(&p, 0).unwrap();
    for &r in &[0.3f64, 1.0, 2.0] {
        let closed = r.powf(2.0 * p.s - 0.5) * (-p.a * r.powi(4) / 4.0 - p.b * r * r / 2.0).exp();
        assert_relative_eq!(psi(r), closed, max_relative = 1e-13);
    }
    // near the origin psi ~ r^{2s-1/2}
    let (r1, r2) = (1e-4f64, 2e-4);
    let slope = (psi(r2) / psi(r1)).ln() / (r2 / r1).ln();
    assert_relative_eq!(slope, 2.0 * p.s - 0.5, max_relative = 1e-6);
    assert!(qes_wavefunction(&p, 1).is_err());
}

#[test]
fn wavefunction_node_counts() {
    let p = params(0.9, 0.6, 1.2, 1);
    for which in 0..=1usize {
        let psi = qes_wavefunction(&p, which).unwrap();
        let mut nodes = 0;
        let mut prev = psi(0.01);
        for k in 1..400 {
            let cur = psi(0.01 + k as f64 * 0.01);
            if prev * cur < 0.0 {
                nodes += 1;
            }
            prev = cur;
        }
        assert_eq!(nodes, which, "state {which}");
    }
}

#[test]
fn wavefunction_satisfies_radial_equation() {
    let p = params(0.9, 0.6, 1.2, 1);
    let pot = qes_potential(&p);
    let sol = qes_spectrum(&p).unwrap();
    let h = 1e-3;
    for which in 0..=1usize {
        let psi = qes_wavefunction(&p, which).unwrap();
        let e = sol.energies[which];
        for &r in &[0.5f64, 1.0, 1.7] {
            let d2 = (psi(r + h) - 2.0 * psi(r) + psi(r - h)) / (h * h);
            // hbar = 1, m = 1/2: psi'' + (E - V) psi = 0
            let res = d2 + (e - pot.eval(r)) * psi(r);
            assert!(
                res.abs() <= 1e-5 * d2.abs().max(1.0),
                "which={which} r={r}: {res}"
            );
        }
    }
}

#[test]
fn invalid_params_rejected() {
    assert!(qes_spectrum(&params(-1.0, 0.0, 1.0, 0)).is_err());
    assert!(qes_spectrum(&params(1.0, 0.0, 0.2, 0)).is_err());
}
