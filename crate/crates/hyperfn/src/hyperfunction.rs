//! Generalized functions as boundary values of holomorphic branch pairs.
//!
//! A [`Hyperfunction`] is a finite sum of catalog terms plus an optional
//! shared branch offset: a polynomial added to both the upper and the lower
//! branch. The offset never changes any boundary value (the two copies
//! cancel in the limit), which is exactly what makes defining pairs
//! non-unique. `(1, 0)`, `(1/2, -1/2)` and `(0, -1)` are three different
//! pairs for the same constant function 1.
//!
//! Values are immutable after construction and every operation is pure, so
//! a `Hyperfunction` can be evaluated from any number of threads at once.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::HyperError;
use crate::eval::{extrapolate_to_zero, EvalConfig};
use crate::poly::Poly;
use crate::scalar::ComplexScalar;
use crate::term::{two_pi_i, ClosedValue, HyperTerm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperfunction {
    terms: Vec<HyperTerm>,
    /// Polynomial (ascending coefficients) added to both branches.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    branch_offset: Vec<ComplexScalar>,
}

impl Hyperfunction {
    pub fn zero() -> Self {
        Hyperfunction {
            terms: Vec::new(),
            branch_offset: Vec::new(),
        }
    }

    pub fn constant(c: ComplexScalar) -> Self {
        Hyperfunction::from_terms(vec![HyperTerm::constant(c)])
    }

    pub fn step(a: f64) -> Result<Self, HyperError> {
        Ok(Hyperfunction::from_terms(vec![HyperTerm::step(a)?]))
    }

    pub fn delta(a: f64) -> Result<Self, HyperError> {
        Ok(Hyperfunction::from_terms(vec![HyperTerm::delta(a)?]))
    }

    pub fn interval(a: f64, b: f64) -> Result<Self, HyperError> {
        Ok(Hyperfunction::from_terms(vec![HyperTerm::interval(a, b)?]))
    }

    pub fn rational(num: Poly, den: Poly) -> Result<Self, HyperError> {
        Ok(Hyperfunction::from_terms(vec![HyperTerm::rational(
            num, den,
        )?]))
    }

    pub fn from_terms(terms: Vec<HyperTerm>) -> Self {
        Hyperfunction {
            terms: terms.into_iter().filter(|t| !t.coeff.is_zero()).collect(),
            branch_offset: Vec::new(),
        }
    }

    pub fn terms(&self) -> &[HyperTerm] {
        &self.terms
    }

    pub fn branch_offset(&self) -> &[ComplexScalar] {
        &self.branch_offset
    }

    /// Replace the shared branch offset polynomial.
    pub fn with_branch_offset(mut self, coeffs: Vec<ComplexScalar>) -> Self {
        self.branch_offset = trim_offset(coeffs);
        self
    }

    /// Add a polynomial to both branches on top of any existing offset.
    pub fn offset_both_branches(mut self, coeffs: &[ComplexScalar]) -> Self {
        let n = self.branch_offset.len().max(coeffs.len());
        let mut out = vec![ComplexScalar::zero(); n];
        for (i, c) in self.branch_offset.iter().enumerate() {
            out[i] = out[i] + *c;
        }
        for (i, c) in coeffs.iter().enumerate() {
            out[i] = out[i] + *c;
        }
        self.branch_offset = trim_offset(out);
        self
    }

    pub fn add(&self, other: &Hyperfunction) -> Hyperfunction {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Hyperfunction::from_terms(terms).with_branch_offset(add_offsets(
            &self.branch_offset,
            &other.branch_offset,
        ))
    }

    pub fn scale(&self, c: ComplexScalar) -> Hyperfunction {
        Hyperfunction {
            terms: self
                .terms
                .iter()
                .map(|t| t.clone().scaled(c))
                .filter(|t| !t.coeff.is_zero())
                .collect(),
            branch_offset: trim_offset(
                self.branch_offset.iter().map(|&o| o * c).collect(),
            ),
        }
    }

    /// Sorted, deduplicated real singular points of all terms.
    pub fn singular_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|t| t.singular_points())
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    fn offset_at(&self, z: Complex64) -> Complex64 {
        self.branch_offset
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    /// Upper branch `F+` at `z`.
    pub fn upper(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff.to_complex() * t.upper(z))
            .sum::<Complex64>()
            + self.offset_at(z)
    }

    /// Lower branch `F-` at `z`.
    pub fn lower(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff.to_complex() * t.lower(z))
            .sum::<Complex64>()
            + self.offset_at(z)
    }

    /// Exact boundary value by the piecewise formulas. Total: points where
    /// a pole term sits return the `Singular` marker instead of a value.
    /// Breakpoints take the weak-inequality value.
    pub fn eval_closed(&self, x: f64) -> ClosedValue {
        let mut sum = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            match t.closed_value(x) {
                ClosedValue::Singular => return ClosedValue::Singular,
                ClosedValue::Value(v) => sum += t.coeff.to_complex() * v,
            }
        }
        ClosedValue::Value(sum)
    }

    /// Convenience: exact boundary value, erroring on singular points.
    pub fn eval_closed_value(&self, x: f64) -> Result<ComplexScalar, HyperError> {
        match self.eval_closed(x) {
            ClosedValue::Value(v) => ComplexScalar::from_complex(v),
            ClosedValue::Singular => Err(HyperError::TooCloseToSingularity {
                x,
                singularity: x,
                guard: 0.0,
            }),
        }
    }

    /// Numeric boundary value `lim F+(x+is) - F-(x-is)` by extrapolation
    /// over the config ladder. The ladder is scaled by the distance to the
    /// nearest singular point so the limit is taken inside the region where
    /// both branches are holomorphic.
    pub fn eval_numeric(&self, x: f64, cfg: &EvalConfig) -> Result<ComplexScalar, HyperError> {
        cfg.validate()?;
        if !x.is_finite() {
            return Err(HyperError::NonFiniteComponent { re: x, im: 0.0 });
        }
        let mut scale = 1.0_f64;
        for s in self.singular_points() {
            let d = (x - s).abs();
            if d < cfg.jump_guard {
                return Err(HyperError::TooCloseToSingularity {
                    x,
                    singularity: s,
                    guard: cfg.jump_guard,
                });
            }
            scale = scale.min(d);
        }
        let sigmas: Vec<f64> = cfg.sigma_sequence.iter().map(|&s| s * scale).collect();
        let values: Vec<Complex64> = sigmas
            .iter()
            .map(|&s| {
                let zu = Complex64::new(x, s);
                let zl = Complex64::new(x, -s);
                self.upper(zu) - self.lower(zl)
            })
            .collect();
        let est = extrapolate_to_zero(&sigmas, &values, cfg.extrapolation_order, cfg.tolerance)?;
        ComplexScalar::from_complex(est)
    }

    /// Arbitrary integer-order differentiation (`re(p) > 0`) or
    /// antidifferentiation (`re(p) < 0`) applied term-wise to the defining
    /// expressions. `p = 0` is the identity. Non-integer orders are
    /// deferred behind `UNSUPPORTED_ORDER`.
    pub fn differintegrate(&self, p: ComplexScalar) -> Result<Hyperfunction, HyperError> {
        if p.im() != 0.0 || p.re().fract() != 0.0 {
            return Err(HyperError::UnsupportedOrder {
                re: p.re(),
                im: p.im(),
            });
        }
        let n = p.re() as i64;
        let mut out = self.clone();
        if n > 0 {
            for _ in 0..n {
                out = out.differentiate_once();
            }
        } else {
            for _ in 0..(-n) {
                out = out.antidifferentiate_once()?;
            }
        }
        Ok(out)
    }

    fn differentiate_once(&self) -> Hyperfunction {
        let terms = self
            .terms
            .iter()
            .flat_map(|t| t.differentiate())
            .collect();
        let offset = derivative_offset(&self.branch_offset);
        Hyperfunction::from_terms(terms).with_branch_offset(offset)
    }

    fn antidifferentiate_once(&self) -> Result<Hyperfunction, HyperError> {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.extend(t.antidifferentiate()?);
        }
        let offset = antiderivative_offset(&self.branch_offset);
        Ok(Hyperfunction::from_terms(terms).with_branch_offset(offset))
    }

    /// Equality as hyperfunctions: equality of boundary values at the given
    /// sample points, not equality of defining pairs.
    pub fn equivalent(
        a: &Hyperfunction,
        b: &Hyperfunction,
        sample_points: &[f64],
        cfg: &EvalConfig,
    ) -> Result<bool, HyperError> {
        for &x in sample_points {
            let va = a.eval_numeric(x, cfg)?;
            let vb = b.eval_numeric(x, cfg)?;
            if (va - vb).norm() > cfg.tolerance {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that offsetting both branches by `winding` full loops worth
    /// of `j` (the contour-summation ambiguity) leaves the boundary value
    /// unchanged at `x`.
    pub fn path_sum_invariance_check(
        &self,
        x: f64,
        winding: i32,
        cfg: &EvalConfig,
    ) -> Result<bool, HyperError> {
        if self.singular_points().is_empty() {
            return Err(HyperError::NoSingularPoints);
        }
        if winding.abs() > 8 {
            return Err(HyperError::WindingOutOfRange { winding });
        }
        let plain = self.eval_numeric(x, cfg)?;
        let loops = two_pi_i() * winding as f64;
        let wound = self
            .clone()
            .offset_both_branches(&[ComplexScalar::from_complex(loops)?]);
        let offset_value = wound.eval_numeric(x, cfg)?;
        Ok((plain - offset_value).norm() <= cfg.tolerance)
    }
}

impl std::ops::Add for Hyperfunction {
    type Output = Hyperfunction;
    fn add(self, rhs: Hyperfunction) -> Hyperfunction {
        Hyperfunction::add(&self, &rhs)
    }
}

fn trim_offset(mut coeffs: Vec<ComplexScalar>) -> Vec<ComplexScalar> {
    while matches!(coeffs.last(), Some(c) if c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn add_offsets(a: &[ComplexScalar], b: &[ComplexScalar]) -> Vec<ComplexScalar> {
    let mut out = vec![ComplexScalar::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i] + *c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i] + *c;
    }
    trim_offset(out)
}

fn derivative_offset(coeffs: &[ComplexScalar]) -> Vec<ComplexScalar> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * ComplexScalar::real(k as f64))
        .collect()
}

fn antiderivative_offset(coeffs: &[ComplexScalar]) -> Vec<ComplexScalar> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ComplexScalar::zero()];
    out.extend(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * ComplexScalar::real(1.0 / (k as f64 + 1.0))),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::TermKind;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn closed_re(hf: &Hyperfunction, x: f64) -> f64 {
        match hf.eval_closed(x) {
            ClosedValue::Value(v) => v.re,
            ClosedValue::Singular => panic!("unexpected singular point at {x}"),
        }
    }

    #[test]
    fn constant_pair_evaluates_to_its_value() {
        let one = Hyperfunction::constant(ComplexScalar::one());
        for x in [-3.0, 0.0, 7.5] {
            let v = one.eval_numeric(x, &cfg()).unwrap();
            assert!((v.re() - 1.0).abs() < 1e-12);
            assert!(v.im().abs() < 1e-12);
        }
    }

    #[test]
    fn shifted_pairs_for_one_agree_everywhere() {
        // (1, 0), (1/2, -1/2), (0, -1) are the same hyperfunction.
        let base = Hyperfunction::constant(ComplexScalar::one());
        for shift in [-0.5, -1.0] {
            let variant = base
                .clone()
                .offset_both_branches(&[ComplexScalar::real(shift)]);
            for x in [-2.0, 0.1, 4.0] {
                let v = variant.eval_numeric(x, &cfg()).unwrap();
                assert!((v.re() - 1.0).abs() < 1e-9, "shift {shift} at {x}: {v}");
            }
        }
    }

    #[test]
    fn step_matches_piecewise_oracle() {
        let s = Hyperfunction::step(0.0).unwrap();
        let v5 = s.eval_numeric(5.0, &cfg()).unwrap();
        let vm5 = s.eval_numeric(-5.0, &cfg()).unwrap();
        assert!((v5.re() - 1.0).abs() < 1e-9);
        assert!(vm5.re().abs() < 1e-9);
    }

    #[test]
    fn delta_vanishes_off_its_point() {
        let d = Hyperfunction::delta(0.0).unwrap().scale(ComplexScalar::real(5.0));
        let v = d.eval_numeric(3.0, &cfg()).unwrap();
        assert!(v.norm() < 1e-9);
        assert_eq!(d.eval_closed(0.0), ClosedValue::Singular);
    }

    #[test]
    fn interval_indicator_inside_and_outside() {
        let i = Hyperfunction::interval(0.0, 1.0).unwrap();
        assert_eq!(closed_re(&i, 0.5), 1.0);
        assert_eq!(closed_re(&i, 2.0), 0.0);
        let v = i.eval_numeric(0.5, &cfg()).unwrap();
        assert!((v.re() - 1.0).abs() < 1e-9, "numeric inside: {v}");
        let o = i.eval_numeric(2.0, &cfg()).unwrap();
        assert!(o.norm() < 1e-9, "numeric outside: {o}");
    }

    #[test]
    fn jump_guard_rejects_points_at_singularities() {
        let s = Hyperfunction::step(1.0).unwrap();
        let err = s.eval_numeric(1.0 + 1e-9, &cfg()).unwrap_err();
        assert!(matches!(err, HyperError::TooCloseToSingularity { .. }));
    }

    #[test]
    fn step_differentiates_to_delta_symbolically() {
        let s = Hyperfunction::step(0.0).unwrap();
        let d = s.differintegrate(ComplexScalar::one()).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].kind, TermKind::DeltaPole { a: 0.0, order: 0 });
    }

    #[test]
    fn differintegrate_zero_is_identity() {
        let hf = Hyperfunction::step(1.0)
            .unwrap()
            .add(&Hyperfunction::constant(ComplexScalar::real(2.0)));
        assert_eq!(hf.differintegrate(ComplexScalar::zero()).unwrap(), hf);
    }

    #[test]
    fn constant_differentiates_to_zero() {
        let c = Hyperfunction::constant(ComplexScalar::real(3.0));
        let d = c.differintegrate(ComplexScalar::one()).unwrap();
        assert!(d.terms().is_empty());
    }

    #[test]
    fn derivative_then_antiderivative_restores_up_to_constant() {
        let hf = Hyperfunction::step(0.5).unwrap();
        let back = hf
            .differintegrate(ComplexScalar::one())
            .unwrap()
            .differintegrate(ComplexScalar::real(-1.0))
            .unwrap();
        // Both are steps at 0.5; values must agree exactly off the jump
        // up to a constant. Here the chosen antiderivative restores the
        // step itself.
        for x in [-1.0, 0.75, 3.0] {
            assert_eq!(closed_re(&back, x), closed_re(&hf, x));
        }
    }

    #[test]
    fn ramp_numeric_route_matches_closed() {
        // Integrating the step gives the polynomial-weighted step kind;
        // its boundary limit must still extrapolate cleanly.
        let ramp = Hyperfunction::step(0.5)
            .unwrap()
            .differintegrate(ComplexScalar::real(-1.0))
            .unwrap();
        for x in [-2.0, 1.0, 4.0] {
            let v = ramp.eval_numeric(x, &cfg()).unwrap();
            assert!(
                (v.re() - closed_re(&ramp, x)).abs() < 1e-8,
                "ramp at {x}: {v}"
            );
        }
    }

    #[test]
    fn fractional_orders_are_rejected() {
        let hf = Hyperfunction::step(0.0).unwrap();
        let err = hf.differintegrate(ComplexScalar::real(0.5)).unwrap_err();
        assert!(matches!(err, HyperError::UnsupportedOrder { .. }));
    }

    #[test]
    fn equivalence_sees_through_defining_pairs() {
        let a = Hyperfunction::constant(ComplexScalar::one());
        let b = a.clone().offset_both_branches(&[ComplexScalar::real(-0.5)]);
        assert!(Hyperfunction::equivalent(&a, &b, &[-1.0, 0.0, 2.0], &cfg()).unwrap());
        let c = Hyperfunction::step(0.0).unwrap();
        let d = Hyperfunction::step(1.0).unwrap();
        assert!(!Hyperfunction::equivalent(&c, &d, &[0.5], &cfg()).unwrap());
    }

    #[test]
    fn winding_offsets_cancel() {
        let s = Hyperfunction::step(0.0).unwrap();
        assert!(s.path_sum_invariance_check(2.0, 1, &cfg()).unwrap());
        assert!(s.path_sum_invariance_check(2.0, 0, &cfg()).unwrap());
        let d = Hyperfunction::delta(0.0).unwrap().scale(ComplexScalar::real(5.0));
        assert!(d.path_sum_invariance_check(3.0, -2, &cfg()).unwrap());
    }

    #[test]
    fn winding_check_requires_a_singularity() {
        let c = Hyperfunction::constant(ComplexScalar::one());
        assert_eq!(
            c.path_sum_invariance_check(1.0, 1, &cfg()).unwrap_err(),
            HyperError::NoSingularPoints
        );
    }

    #[test]
    fn serde_roundtrip_is_exact() {
        let hf = Hyperfunction::step(0.1)
            .unwrap()
            .add(&Hyperfunction::interval(0.25, 1.75).unwrap().scale(ComplexScalar::new(2.0, -1.0).unwrap()))
            .offset_both_branches(&[ComplexScalar::new(0.5, 0.25).unwrap()]);
        let json = serde_json::to_string(&hf).unwrap();
        let back: Hyperfunction = serde_json::from_str(&json).unwrap();
        assert_eq!(hf, back);
        // Second serialization is byte-identical.
        assert_eq!(json, serde_json::to_string(&back).unwrap());
    }
}
