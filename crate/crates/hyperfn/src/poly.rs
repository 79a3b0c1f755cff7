//! Dense univariate polynomials with real coefficients.
//!
//! Small utility used by the rational defining-function terms and by the
//! piecewise-linear relabeling maps. Coefficients are stored ascending in
//! degree; the zero polynomial is the empty coefficient vector.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly(Vec<f64>);

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z - a`.
    pub fn linear_root(a: f64) -> Self {
        Poly::new(vec![-a, 1.0])
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(&c) if c == 0.0) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0];
        out.extend(self.0.iter().enumerate().map(|(k, &c)| c / (k as f64 + 1.0)));
        Poly::new(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.0.iter().enumerate() {
            out[i] -= b;
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.0.iter().map(|&c| c * s).collect())
    }

    /// Real roots found by Durand-Kerner iteration, with imaginary parts
    /// below a scale-relative threshold snapped to the real axis.
    pub fn real_roots(&self) -> Vec<f64> {
        let roots = self.complex_roots();
        let scale = self
            .0
            .iter()
            .fold(1.0_f64, |m, &c| m.max(c.abs()))
            .max(1.0);
        let mut out: Vec<f64> = roots
            .into_iter()
            .filter(|r| r.im.abs() < 1e-8 * scale)
            .map(|r| r.re)
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-10 * scale);
        out
    }

    fn complex_roots(&self) -> Vec<Complex64> {
        let n = self.0.len();
        if n <= 1 {
            return Vec::new();
        }
        // Normalize to a monic polynomial.
        let lead = self.0[n - 1];
        let monic: Vec<Complex64> = self
            .0
            .iter()
            .map(|&c| Complex64::new(c / lead, 0.0))
            .collect();
        let deg = n - 1;
        // Durand-Kerner from staggered points off the real axis.
        let radius = 1.0
            + monic
                .iter()
                .take(deg)
                .fold(0.0_f64, |m, c| m.max(c.norm()));
        let mut roots: Vec<Complex64> = (0..deg)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64;
                Complex64::from_polar(radius * 0.7, angle)
            })
            .collect();
        let eval = |z: Complex64| -> Complex64 {
            monic
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        };
        for _ in 0..200 {
            let mut max_step = 0.0_f64;
            for i in 0..deg {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..deg {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                if denom.norm() == 0.0 {
                    continue;
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-13 * radius {
                break;
            }
        }
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_antiderivative_roundtrip() {
        let p = Poly::new(vec![2.0, -3.0, 0.5]);
        let back = p.derivative().antiderivative();
        // Constant term is lost.
        assert_eq!(back.coeffs(), &[0.0, -3.0, 0.5][..]);
    }

    #[test]
    fn finds_real_roots_of_cubic() {
        // (z - 1)(z + 2)(z - 3)
        let p = Poly::linear_root(1.0)
            .mul(&Poly::linear_root(-2.0))
            .mul(&Poly::linear_root(3.0));
        let roots = p.real_roots();
        assert_eq!(roots.len(), 3);
        for (got, want) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-8, "root {got} vs {want}");
        }
    }

    #[test]
    fn complex_pair_is_not_reported_real() {
        // z^2 + 1 has no real roots.
        let p = Poly::new(vec![1.0, 0.0, 1.0]);
        assert!(p.real_roots().is_empty());
    }

    #[test]
    fn trims_leading_zeros() {
        let p = Poly::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
    }
}
