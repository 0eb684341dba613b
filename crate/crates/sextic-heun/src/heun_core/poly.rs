//! Dense univariate polynomials with f64 coefficients (lowest power first)
//! and companion-matrix root finding.

use nalgebra::{Complex, DMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly1 {
    /// coeffs[k] multiplies x^k
    pub coeffs: Vec<f64>,
}

impl Poly1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        Poly1::new(vec![c])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        Poly1::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly1::new(out)
    }

    pub fn scale(&self, s: f64) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiply by the monomial a + b x.
    pub fn mul_affine(&self, a: f64, b: f64) -> Poly1 {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += a * c;
            out[i + 1] += b * c;
        }
        Poly1::new(out)
    }

    /// p(s x + c): substitute an affine argument.
    pub fn compose_affine(&self, s: f64, c: f64) -> Poly1 {
        let mut acc = Poly1::zero();
        for &coef in self.coeffs.iter().rev() {
            acc = acc.mul_affine(c, s).add(&Poly1::constant(coef));
        }
        acc
    }

    /// All complex roots via the companion matrix, each polished by one
    /// Newton step.
    pub fn roots(&self) -> Vec<Complex<f64>> {
        let deg = match self.degree() {
            None | Some(0) => return vec![],
            Some(d) => d,
        };
        let lead = self.coeffs[deg];
        let mut m = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -self.coeffs[i] / lead;
        }
        let mut roots: Vec<Complex<f64>> = m.complex_eigenvalues().iter().copied().collect();
        let dp = self.derivative();
        for r in roots.iter_mut() {
            let f = self.eval_complex(*r);
            let df = dp.eval_complex(*r);
            if df.norm() > 0.0 {
                let step = f / df;
                if step.norm().is_finite() {
                    *r -= step;
                }
            }
        }
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        roots
    }

    /// Real roots, ascending; a root counts as real when |Im| is below
    /// tol relative to the root magnitude. Returns (real, complex_count).
    pub fn real_roots(&self, tol: f64) -> (Vec<f64>, usize) {
        let all = self.roots();
        let mut real = vec![];
        let mut complex_count = 0;
        for r in &all {
            if r.im.abs() <= tol * r.norm().max(1.0) {
                real.push(r.re);
            } else {
                complex_count += 1;
            }
        }
        real.sort_by(|a, b| a.partial_cmp(b).unwrap());
        (real, complex_count)
    }

    fn eval_complex(&self, x: Complex<f64>) -> Complex<f64> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * x + c)
    }
}
