//! Exact generation of the degree-(N+1) termination polynomial for the
//! accessory parameter q.
//!
//! The coefficients are kept as integer-coefficient polynomials in
//! (delta, epsilon, alpha), so the generated polynomials can be compared
//! against closed forms with zero tolerance.

use std::collections::BTreeMap;

/// Integer-coefficient polynomial in (delta, epsilon, alpha).
/// Key = (power of delta, power of epsilon, power of alpha).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<(u32, u32, u32), i128>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: i128) -> Self {
        let mut p = MPoly::default();
        if c != 0 {
            p.terms.insert((0, 0, 0), c);
        }
        p
    }

    /// c * delta^i * epsilon^j * alpha^k
    pub fn term(c: i128, i: u32, j: u32, k: u32) -> Self {
        let mut p = MPoly::default();
        if c != 0 {
            p.terms.insert((i, j, k), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            let e = out.terms.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(&k);
            }
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (&(i1, j1, k1), &c1) in &self.terms {
            for (&(i2, j2, k2), &c2) in &other.terms {
                let key = (i1 + i2, j1 + j2, k1 + k2);
                let e = out.terms.entry(key).or_insert(0);
                *e += c1 * c2;
                if *e == 0 {
                    out.terms.remove(&key);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: i128) -> MPoly {
        if c == 0 {
            return MPoly::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn eval(&self, delta: f64, epsilon: f64, alpha: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), &c)| {
                c as f64 * delta.powi(i as i32) * epsilon.powi(j as i32) * alpha.powi(k as i32)
            })
            .sum()
    }
}

/// Coefficients (in q, lowest power first) of the termination condition
/// c_{N+1} = 0 for the nu0 = gamma - alpha/epsilon expansion at gamma = -N.
///
/// Continuant recurrence, with the square-root factors of R_n and P_n
/// cancelled pairwise so everything stays polynomial:
///   S_0 = 1,  S_1 = q + gamma*delta,
///   S_n = (q + (gamma+n-1) delta) S_{n-1}
///         - (gamma+n-2)(n-1) (alpha - (gamma+n-1) epsilon) S_{n-2}.
/// The polynomial is S_{N+1}, monic of degree N+1.
pub fn q_polynomial_exact(n_level: u32) -> Vec<MPoly> {
    let gamma = -(n_level as i128);
    let mut s_prev: Vec<MPoly> = vec![MPoly::constant(1)]; // S_0
    let mut s_cur: Vec<MPoly> = vec![MPoly::term(gamma, 1, 0, 0), MPoly::constant(1)]; // S_1
    for n in 2..=(n_level as usize + 1) {
        let nn = n as i128;
        let lin = MPoly::term(gamma + nn - 1, 1, 0, 0); // (gamma+n-1) delta
        let k = MPoly::term(1, 0, 0, 1)
            .sub(&MPoly::term(gamma + nn - 1, 0, 1, 0))
            .scale((gamma + nn - 2) * (nn - 1));
        // (q + lin) * s_cur
        let mut next: Vec<MPoly> = vec![MPoly::zero(); s_cur.len() + 1];
        for (i, c) in s_cur.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].add(&lin.mul(c));
        }
        for (i, c) in s_prev.iter().enumerate() {
            next[i] = next[i].sub(&k.mul(c));
        }
        s_prev = s_cur;
        s_cur = next;
    }
    s_cur
}

#[cfg(test)]
mod tests {
    use super::*;

    // shorthand builders for the closed forms
    fn d(p: u32) -> MPoly {
        MPoly::term(1, p, 0, 0)
    }
    fn e() -> MPoly {
        MPoly::term(1, 0, 1, 0)
    }
    fn a() -> MPoly {
        MPoly::term(1, 0, 0, 1)
    }

    #[test]
    fn n0_is_q() {
        // q = 0
        let p = q_polynomial_exact(0);
        assert_eq!(p, vec![MPoly::zero(), MPoly::constant(1)]);
    }

    #[test]
    fn n1_matches_closed_form() {
        // q^2 - delta q + alpha
        let p = q_polynomial_exact(1);
        assert_eq!(p, vec![a(), d(1).neg(), MPoly::constant(1)]);
    }

    #[test]
    fn n2_matches_closed_form() {
        // q^3 - 3 delta q^2 + 2(delta^2 + epsilon + 2 alpha) q - 4 alpha delta
        let p = q_polynomial_exact(2);
        let c0 = a().mul(&d(1)).scale(-4);
        let c1 = d(2).add(&e()).add(&a().scale(2)).scale(2);
        let c2 = d(1).scale(-3);
        assert_eq!(p, vec![c0, c1, c2, MPoly::constant(1)]);
    }

    #[test]
    fn n3_matches_closed_form() {
        // q^4 - 6 q^3 delta + q^2 (10 alpha + 11 delta^2 + 10 epsilon)
        //   - 6 q delta (5 alpha + delta^2 + 3 epsilon)
        //   + 9 alpha (alpha + 2 delta^2 + 2 epsilon)
        let p = q_polynomial_exact(3);
        let c0 = a()
            .mul(&a().add(&d(2).scale(2)).add(&e().scale(2)))
            .scale(9);
        let c1 = d(1)
            .mul(&a().scale(5).add(&d(2)).add(&e().scale(3)))
            .scale(-6);
        let c2 = a().scale(10).add(&d(2).scale(11)).add(&e().scale(10));
        let c3 = d(1).scale(-6);
        assert_eq!(p, vec![c0, c1, c2, c3, MPoly::constant(1)]);
    }

    #[test]
    fn reduced_even_levels_have_zero_constant_term() {
        // delta = 0 and even N: q = 0 must be a root
        for n in [0u32, 2, 4, 6, 8] {
            let p = q_polynomial_exact(n);
            assert_eq!(p[0].eval(0.0, -3.7, 1.9), 0.0, "N={n}");
        }
        // odd N: generally not
        let p = q_polynomial_exact(1);
        assert_ne!(p[0].eval(0.0, -3.7, 1.9), 0.0);
    }
}
