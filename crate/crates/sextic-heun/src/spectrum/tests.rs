use super::*;
use approx::assert_relative_eq;

fn pol() -> EvalPolicy {
    EvalPolicy::default()
}

fn consts_unit() -> PhysicalConstants {
    PhysicalConstants::default()
}

#[test]
fn pair_potential_round_trip() {
    for &consts in &[
        consts_unit(),
        PhysicalConstants {
            hbar: 1.3,
            mass: 0.7,
        },
    ] {
        let pair = DimensionlessPair { xi0: -1.7, w: 3.2 };
        let pot = potential_from_pair(&pair, 1, &consts);
        assert_eq!(pot.v6, 1.0);
        assert_eq!(pot.v0, 0.0);
        let back = pair_from_potential(&pot, &consts);
        assert_relative_eq!(back.xi0, pair.xi0, max_relative = 1e-13);
        assert_relative_eq!(back.w, pair.w, max_relative = 1e-13);
    }
}

#[test]
fn origin_n0_reduced_oscillator_zeros() {
    // xi0 = 0: residual vanishes exactly at w = 1 - 4n (odd Hermite order)
    for n in 1..=4 {
        let pair = DimensionlessPair {
            xi0: 0.0,
            w: 1.0 - 4.0 * n as f64,
        };
        assert_eq!(origin_condition_n0(&pair, &pol()).unwrap(), 0.0);
    }
    // and is nonzero at w = 0: H_{-1/2}(0) = sqrt(pi) 2^{-1/2} / Gamma(3/4)
    let pair = DimensionlessPair { xi0: 0.0, w: 0.0 };
    let expect = PI.sqrt() / (2.0f64.sqrt() * gamma(0.75).unwrap());
    assert_relative_eq!(
        origin_condition_n0(&pair, &pol()).unwrap(),
        expect,
        max_relative = 1e-12
    );
}

#[test]
fn origin_n1_trivial_root_and_reduced_form() {
    let xi0 = -1.4;
    let trivial = DimensionlessPair { xi0, w: xi0 * xi0 };
    assert_relative_eq!(
        origin_condition_n1(&trivial, -1, &pol()).unwrap(),
        0.0,
        epsilon = 1e-12
    );
    // at w = 0 the residual reduces to xi0 [H_{xi0^2/2}(xi0) - xi0 H_{xi0^2/2-1}(xi0)]
    let at_zero = DimensionlessPair { xi0, w: 0.0 };
    let nu = 0.5 * xi0 * xi0;
    let reduced =
        hermite_nu(nu, xi0, &pol()).unwrap() - xi0 * hermite_nu(nu - 1.0, xi0, &pol()).unwrap();
    for &sign in &[-1, 1] {
        assert_relative_eq!(
            origin_condition_n1(&at_zero, sign, &pol()).unwrap(),
            xi0 * reduced,
            max_relative = 1e-11
        );
    }
    assert!(matches!(
        origin_condition_n1(&DimensionlessPair { xi0, w: -0.1 }, -1, &pol()),
        Err(SpectrumError::Domain { .. })
    ));
}

#[test]
fn general_condition_reduces_to_n0() {
    let pair = DimensionlessPair { xi0: 0.8, w: -2.5 };
    let consts = consts_unit();
    let pot = potential_from_pair(&pair, 0, &consts);
    let branch = BranchChoice::bound_state();
    let (hp, _) = map_potential(&pot, 0.0, &consts, &branch).unwrap();
    let exp = expansion_coefficients(&hp, 0, branch.sign_s0).unwrap();
    // the shifted argument at the origin is xi0 and the order is
    // (xi0^2 - w - 1)/2
    assert_relative_eq!(exp.xi(0.0), pair.xi0, max_relative = 1e-12);
    assert_relative_eq!(
        exp.nu0,
        0.5 * (pair.xi0 * pair.xi0 - pair.w - 1.0),
        max_relative = 1e-12
    );
    let contig = reduce_to_contiguous(&exp).unwrap();
    let general = general_origin_condition(&contig, &hp, &pol()).unwrap();
    let direct = origin_condition_n0(&pair, &pol()).unwrap();
    assert_relative_eq!(general, direct, max_relative = 1e-10);
}

#[test]
fn general_condition_proportional_to_n1() {
    let consts = consts_unit();
    let branch = BranchChoice::bound_state();
    for &(xi0, w, es) in &[(-1.0, 1.5, -1), (-2.0, 2.5, 1), (-1.5, 0.5, -1)] {
        let pair = DimensionlessPair { xi0, w };
        let pot = potential_from_pair(&pair, 1, &consts);
        let e2 = 2.0 * pot.v2 / consts.mass * consts.hbar * consts.hbar;
        let energy = es as f64 * e2.sqrt();
        let (hp, _) = map_potential(&pot, energy, &consts, &branch).unwrap();
        let exp = expansion_coefficients(&hp, 1, branch.sign_s0).unwrap();
        let contig = reduce_to_contiguous(&exp).unwrap();
        // [P0(0), P1(0)] must be proportional to the coefficient pair of
        // the dimensionless condition
        let p0 = contig.p0.eval(0.0);
        let p1 = contig.p1.eval(0.0);
        let c0 = xi0 - es as f64 * w.sqrt();
        let c1 = -(xi0 * xi0 - w);
        let lam = c1 / p1;
        assert_relative_eq!(lam * p0, c0, max_relative = 1e-9, epsilon = 1e-9);
        // and the assembled residual is then a scalar multiple of the
        // reference residual
        let general = general_origin_condition(&contig, &hp, &pol()).unwrap();
        let direct = origin_condition_n1(&pair, es, &pol()).unwrap();
        assert_relative_eq!(lam * general, direct, max_relative = 1e-8, epsilon = 1e-9);
    }
}

#[test]
fn approximations_reference_points() {
    for n in 1..=5u32 {
        assert_relative_eq!(
            approx_n0(0.0, n).unwrap(),
            1.0 - 4.0 * n as f64,
            max_relative = 1e-14
        );
        let nf = n as f64;
        // pos branch starts at w = 0
        let start = -(2.0 * nf - 1.0 / 3.0).sqrt();
        assert_relative_eq!(approx_n1_pos(start, n), 0.0, epsilon = 1e-12);
        // and tends to xi0^2 - 2(n-1) far out
        let far = -10.0;
        assert_relative_eq!(
            approx_n1_pos(far, n),
            far * far - 2.0 * (nf - 1.0),
            max_relative = 1e-6
        );
        assert_eq!(approx_n1_neg(-3.0, n), 9.0 - 2.0 * nf);
    }
}

#[test]
fn airy_condition_near_roots() {
    for n in 1..=4u32 {
        let xi0 = -(2.0 * n as f64 - 1.0 / 3.0).sqrt();
        let res = airy_region_condition(xi0).unwrap();
        // the sine term vanishes; what is left is the small correction
        let corr = gamma(7.0 / 6.0).unwrap()
            / (4.0 * PI.sqrt() * 3.0f64.powf(1.0 / 3.0) * (xi0 * xi0).powf(2.0 / 3.0));
        assert!(res.abs() <= corr * 1.01, "n={n}: res={res}, corr={corr}");
        assert!(corr <= 0.1 / (xi0.abs().powf(4.0 / 3.0)));
    }
    assert!(airy_region_condition(-0.5).is_err());
}

#[test]
fn trace_n0_passes_through_exact_points() {
    let grid: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.25).collect();
    let t1 = trace_curve(0, 1, &grid, 0, &pol()).unwrap();
    let t2 = trace_curve(0, 2, &grid, 0, &pol()).unwrap();
    assert!(t1.skipped.is_empty() && t2.skipped.is_empty());
    assert_eq!(t1.points.len(), grid.len());
    for (t, n) in [(&t1, 1.0), (&t2, 2.0)] {
        let at0 = t.points.iter().find(|p| p.xi0 == 0.0).unwrap();
        assert_relative_eq!(at0.w, 1.0 - 4.0 * n, epsilon = 1e-9);
    }
    // ordering and non-crossing
    for w in t1.points.windows(2) {
        assert!(w[0].xi0 < w[1].xi0);
    }
    for (a, b) in t1.points.iter().zip(t2.points.iter()) {
        assert!(b.w < a.w);
    }
}

#[test]
fn trace_n1_negative_branch_near_seed() {
    let grid = [-4.0, -3.5, -3.0, -2.5];
    let t = trace_curve(1, 1, &grid, -1, &pol()).unwrap();
    assert!(t.skipped.is_empty());
    for p in &t.points {
        let seed = approx_n1_neg(p.xi0, 1);
        assert!(
            (p.w - seed).abs() < 0.2,
            "xi0={}: w={} seed={}",
            p.xi0,
            p.w,
            seed
        );
        let res = origin_condition_n1(p, -1, &pol()).unwrap();
        assert!(res.abs() <= 1e-8, "xi0={}: residual {res}", p.xi0);
    }
}

#[test]
fn energies_per_level() {
    let consts = consts_unit();
    let branch = BranchChoice::bound_state();
    let pot0 = Potential {
        v_m2: v_m2_for_level(0, &consts),
        v0: 0.4,
        v2: 1.0,
        v4: -0.5,
        v6: 1.0,
    };
    let (e0, nc0) = energies_for_level(&pot0, &consts, 0, &branch).unwrap();
    assert_eq!(nc0, 0);
    assert_eq!(e0.len(), 1);
    assert_relative_eq!(e0[0], 0.4, max_relative = 1e-12);

    let pot1 = Potential {
        v_m2: v_m2_for_level(1, &consts),
        v2: 2.0,
        v6: 1.0,
        ..Default::default()
    };
    let (e1, nc1) = energies_for_level(&pot1, &consts, 1, &branch).unwrap();
    assert_eq!(nc1, 0);
    let expect = (2.0 * pot1.v2 / consts.mass).sqrt(); // 2 hbar^2 V2 / m
    assert_relative_eq!(e1[0], -expect, max_relative = 1e-10);
    assert_relative_eq!(e1[1], expect, max_relative = 1e-10);

    let pot_neg = Potential { v2: -2.0, ..pot1 };
    let (e_none, nc) = energies_for_level(&pot_neg, &consts, 1, &branch).unwrap();
    assert!(e_none.is_empty());
    assert_eq!(nc, 2);

    assert!(matches!(
        energies_for_level(&pot0, &consts, 1, &branch),
        Err(SpectrumError::LevelMismatch { .. })
    ));
}

fn closed_form_xi(r: f64, pot: &Potential, consts: &PhysicalConstants) -> f64 {
    let h2m = consts.hbar * consts.hbar / consts.mass;
    (pot.v4 + 2.0 * pot.v6 * r * r) / (2.0 * (2.0 * h2m * pot.v6.powi(3)).powf(0.25))
}

fn closed_form_prefactor(r: f64, pot: &Potential, consts: &PhysicalConstants) -> f64 {
    let m = consts.mass;
    (-(m * (pot.v4 + pot.v6 * r * r) * r * r) / (2.0 * consts.hbar * (2.0 * m * pot.v6).sqrt()))
        .exp()
}

#[test]
fn assembled_n0_matches_closed_form() {
    let consts = consts_unit();
    let branch = BranchChoice::bound_state();
    let pair = DimensionlessPair { xi0: 0.5, w: -2.0 };
    let pot = potential_from_pair(&pair, 0, &consts);
    let (hp, _) = map_potential(&pot, 0.0, &consts, &branch).unwrap();
    let exp = expansion_coefficients(&hp, 0, branch.sign_s0).unwrap();
    let wf = assemble_wavefunction(&pot, &consts, &branch, &exp, 0.0).unwrap();
    let h2m = consts.hbar * consts.hbar / consts.mass;
    let nu = (pot.v4 * pot.v4 - 4.0 * pot.v2 * pot.v6)
        / (8.0 * (2.0 * h2m * pot.v6.powi(3)).sqrt())
        - 0.5;
    let mut ratio = None;
    for &r in &[0.3f64, 0.7, 1.2, 2.0] {
        let closed = r.powf(-0.5)
            * closed_form_prefactor(r, &pot, &consts)
            * hermite_nu(nu, closed_form_xi(r, &pot, &consts), &pol()).unwrap();
        let ours = wf.eval(r, &pol()).unwrap();
        let q = ours / closed;
        match ratio {
            None => ratio = Some(q),
            Some(q0) => assert_relative_eq!(q, q0, max_relative = 1e-10),
        }
    }
}

#[test]
fn assembled_n1_matches_closed_form() {
    let consts = consts_unit();
    let branch = BranchChoice::bound_state();
    let pair = DimensionlessPair { xi0: -1.0, w: 1.5 };
    let pot = potential_from_pair(&pair, 1, &consts);
    let h2m = consts.hbar * consts.hbar / consts.mass;
    let energy = -(2.0 * h2m * pot.v2).sqrt();
    let (hp, _) = map_potential(&pot, energy, &consts, &branch).unwrap();
    let exp = expansion_coefficients(&hp, 1, branch.sign_s0).unwrap();
    let wf = assemble_wavefunction(&pot, &consts, &branch, &exp, energy).unwrap();
    let nu =
        (pot.v4 * pot.v4 - 4.0 * pot.v2 * pot.v6) / (8.0 * (2.0 * h2m * pot.v6.powi(3)).sqrt());
    let kf = consts.kinetic_factor();
    let front = 2.0f64.sqrt() * (0.5 * kf) / (kf * pot.v6).powf(0.25);
    let shift = pot.v4 / (kf * pot.v6).sqrt();
    let mut ratio = None;
    for &r in &[0.3f64, 0.7, 1.2, 2.0] {
        let xi = closed_form_xi(r, &pot, &consts);
        let closed = r.powf(-1.5)
            * closed_form_prefactor(r, &pot, &consts)
            * (front * (energy - shift) * hermite_nu(nu, xi, &pol()).unwrap()
                + 4.0 * nu * hermite_nu(nu - 1.0, xi, &pol()).unwrap());
        let ours = wf.eval(r, &pol()).unwrap();
        let q = ours / closed;
        match ratio {
            None => ratio = Some(q),
            Some(q0) => assert_relative_eq!(q, q0, max_relative = 1e-9),
        }
    }
}

#[test]
fn trivial_root_gives_null_wavefunction() {
    let consts = consts_unit();
    let branch = BranchChoice::bound_state();
    let xi0 = -1.2;
    let pair = DimensionlessPair { xi0, w: xi0 * xi0 };
    let bs = bound_state_at(&pair, 1, 1, -1, &consts, &branch, &pol()).unwrap();
    for &r in &[0.1, 0.5, 1.0, 2.0, 3.0] {
        assert!(bs.psi.eval(r, &pol()).unwrap().abs() <= 1e-8, "r={r}");
    }
}

#[test]
fn zero_energy_reduced_basics() {
    let hp = HeunParameters {
        gamma: 0.6,
        delta: 0.0,
        epsilon: -4.0,
        alpha: -3.0,
        q: 0.0,
    };
    assert_relative_eq!(
        zero_energy_reduced(&hp, 0.0, 1.0, 0.0, &pol()).unwrap(),
        1.0,
        max_relative = 1e-15
    );
    // both basis members satisfy the differential equation
    // u'' + (gamma/z + eps z) u' + alpha u = 0
    let h = 1e-3;
    for &(c1, c2) in &[(1.0, 0.0), (0.0, 1.0), (0.7, -0.4)] {
        for &z in &[0.5, 1.0, 1.8] {
            let u = |x: f64| zero_energy_reduced(&hp, x, c1, c2, &pol()).unwrap();
            let d1 = (u(z + h) - u(z - h)) / (2.0 * h);
            let d2 = (u(z + h) - 2.0 * u(z) + u(z - h)) / (h * h);
            let res = d2 + (hp.gamma / z + hp.epsilon * z) * d1 + hp.alpha * u(z);
            let scale = d2.abs().max(d1.abs()).max(u(z).abs());
            assert!(res.abs() <= 1e-5 * scale, "c=({c1},{c2}) z={z}: {res}");
        }
    }
    // Kummer pole at (gamma+1)/2 non-positive integer
    let hp_pole = HeunParameters { gamma: -1.0, ..hp };
    assert!(zero_energy_reduced(&hp_pole, 1.0, 1.0, 0.0, &pol()).is_err());
    assert!(zero_energy_reduced(&hp_pole, 1.0, 0.0, 1.0, &pol()).is_ok());
    // preconditions
    let hp_bad = HeunParameters { delta: 0.5, ..hp };
    assert!(zero_energy_reduced(&hp_bad, 1.0, 1.0, 0.0, &pol()).is_err());
}
