//! Boundary-limit evaluation settings and sequence extrapolation.

use num_complex::Complex64;

use crate::error::HyperError;

/// Controls how the `sigma -> 0+` boundary limit is taken numerically.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    /// Strictly decreasing positive offsets from the real axis. The ladder
    /// is additionally scaled down near singular points so the smallest
    /// offsets stay well inside the holomorphic region.
    pub sigma_sequence: Vec<f64>,
    /// Extrapolation window order (polynomial degree used per estimate).
    pub extrapolation_order: usize,
    /// Absolute agreement required between successive extrapolants.
    pub tolerance: f64,
    /// Minimum distance from any singular point for numeric evaluation.
    pub jump_guard: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            sigma_sequence: (0..=12).map(|k| 1e-2 * 0.5_f64.powi(k)).collect(),
            extrapolation_order: 4,
            tolerance: 1e-9,
            jump_guard: 1e-7,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<(), HyperError> {
        if self.sigma_sequence.len() < 2
            || self
                .sigma_sequence
                .iter()
                .any(|&s| !(s.is_finite() && s > 0.0))
            || self
                .sigma_sequence
                .windows(2)
                .any(|w| w[1] >= w[0])
        {
            return Err(HyperError::BadSigmaSequence);
        }
        if !(self.tolerance > 0.0) {
            return Err(HyperError::BadTolerance(self.tolerance));
        }
        Ok(())
    }
}

/// Polynomial extrapolation of `(sigma_k, value_k)` samples to `sigma = 0`
/// by Neville's scheme over a sliding window. Returns the first extrapolant
/// that agrees with its predecessor within `tolerance`.
pub(crate) fn extrapolate_to_zero(
    sigmas: &[f64],
    values: &[Complex64],
    order: usize,
    tolerance: f64,
) -> Result<Complex64, HyperError> {
    debug_assert_eq!(sigmas.len(), values.len());
    let n = values.len();
    if n == 1 {
        return Ok(values[0]);
    }
    // Walk the whole ladder and keep the deepest estimate that agreed with
    // its predecessor, so well-behaved terms converge to machine precision
    // rather than stopping at the first agreement.
    let mut prev = values[0];
    let mut best: Option<Complex64> = None;
    let mut residual = f64::INFINITY;
    for i in 1..n {
        let lo = i.saturating_sub(order);
        let est = neville_at_zero(&sigmas[lo..=i], &values[lo..=i]);
        let step = (est - prev).norm();
        if step <= tolerance {
            best = Some(est);
        }
        residual = step;
        prev = est;
    }
    best.ok_or(HyperError::NoConvergence {
        tolerance,
        residual,
    })
}

fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let n = xs.len();
    let mut p = ys.to_vec();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i] * (-xs[i + m]) - p[i + 1] * (-xs[i])) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_non_decreasing_ladder() {
        let cfg = EvalConfig {
            sigma_sequence: vec![1e-2, 1e-2],
            ..EvalConfig::default()
        };
        assert_eq!(cfg.validate().unwrap_err(), HyperError::BadSigmaSequence);
    }

    #[test]
    fn extrapolates_polynomial_sequences_exactly() {
        // f(s) = 3 - 2 s + s^3 has limit 3 at s = 0.
        let sigmas: Vec<f64> = (0..10).map(|k| 0.5_f64.powi(k)).collect();
        let values: Vec<Complex64> = sigmas
            .iter()
            .map(|&s| Complex64::new(3.0 - 2.0 * s + s * s * s, 0.0))
            .collect();
        let got = extrapolate_to_zero(&sigmas, &values, 4, 1e-12).unwrap();
        assert!((got.re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn reports_no_convergence_for_rough_sequences() {
        let sigmas: Vec<f64> = (0..6).map(|k| 0.5_f64.powi(k)).collect();
        // Alternating values never settle.
        let values: Vec<Complex64> = (0..6)
            .map(|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect();
        let err = extrapolate_to_zero(&sigmas, &values, 4, 1e-9).unwrap_err();
        assert!(matches!(err, HyperError::NoConvergence { .. }));
    }
}
