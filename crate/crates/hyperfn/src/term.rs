//! The primitive defining-function term catalog.
//!
//! Every generalized function this crate works with is a finite sum of the
//! closed-form terms below. Each term fixes one pair of holomorphic branch
//! expressions (an upper-half-plane branch and a lower-half-plane branch);
//! the boundary value is the limit of their difference across the real
//! axis. Keeping the catalog closed-form makes differentiation and
//! singularity enumeration exact.
//!
//! Branch conventions, with `j = 2*pi*i` and principal `Log`:
//!
//! | kind             | upper branch                          | lower branch | boundary value            |
//! |------------------|---------------------------------------|--------------|---------------------------|
//! | `CONSTANT`       | `1`                                   | `0`          | `1`                       |
//! | `STEP_LOG(a)`    | `-Log(-(z-a))/j`                      | same         | `1` for `x >= a`          |
//! | `STEP_POLY(a,m)` | `-(z-a)^m Log(-(z-a))/(j m!)`         | same         | `(x-a)^m/m!` for `x >= a` |
//! | `DELTA_POLE(a)`  | `-1/(j (z-a))`                        | same         | `0` off `a`               |
//! | `DELTA_DERIV(a,m)` | m-th z-derivative of `DELTA_POLE(a)` | same        | `0` off `a`               |
//! | `INTERVAL_LOG(a,b)` | `(Log(b-z) - Log(a-z))/j`          | same         | `1` on `[a, b)`           |
//! | `RATIONAL(p,q)`  | `p(z)/q(z)`                           | `0`          | `p(x)/q(x)`               |
//!
//! `STEP_POLY` and `DELTA_DERIV` do not appear in hand-written inputs; they
//! close the catalog under repeated differentiation and antidifferentiation.
//!
//! The value exactly at a breakpoint follows the weak-inequality (right
//! limit) convention: a step is 1 at its own breakpoint and an interval
//! covers `[a, b)`.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::HyperError;
use crate::poly::Poly;
use crate::scalar::ComplexScalar;

/// `j = 2*pi*i`, the normalization constant in every log/pole kernel.
pub(crate) fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}

fn factorial(m: u32) -> f64 {
    (1..=m).fold(1.0_f64, |acc, k| acc * k as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TermKind {
    Constant,
    /// Weak step at `a`, optionally carrying a polynomial factor of degree
    /// `degree` (degree 0 is the plain step).
    StepPoly { a: f64, degree: u32 },
    /// `order`-th derivative of the unit impulse at `a` (order 0 is the
    /// impulse itself).
    DeltaPole { a: f64, order: u32 },
    IntervalLog { a: f64, b: f64 },
    Rational { num: Poly, den: Poly },
}

/// One catalog term scaled by a complex coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperTerm {
    pub kind: TermKind,
    pub coeff: ComplexScalar,
}

/// Exact piecewise evaluation result; `Singular` marks pole locations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedValue {
    Value(Complex64),
    Singular,
}

impl HyperTerm {
    pub fn constant(c: ComplexScalar) -> Self {
        HyperTerm {
            kind: TermKind::Constant,
            coeff: c,
        }
    }

    pub fn step(a: f64) -> Result<Self, HyperError> {
        check_finite(a)?;
        Ok(HyperTerm {
            kind: TermKind::StepPoly { a, degree: 0 },
            coeff: ComplexScalar::one(),
        })
    }

    pub fn delta(a: f64) -> Result<Self, HyperError> {
        check_finite(a)?;
        Ok(HyperTerm {
            kind: TermKind::DeltaPole { a, order: 0 },
            coeff: ComplexScalar::one(),
        })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self, HyperError> {
        check_finite(a)?;
        check_finite(b)?;
        if !(a < b) {
            return Err(HyperError::InvalidInterval { a, b });
        }
        Ok(HyperTerm {
            kind: TermKind::IntervalLog { a, b },
            coeff: ComplexScalar::one(),
        })
    }

    pub fn rational(num: Poly, den: Poly) -> Result<Self, HyperError> {
        if den.is_zero() {
            return Err(HyperError::ZeroDenominator);
        }
        Ok(HyperTerm {
            kind: TermKind::Rational { num, den },
            coeff: ComplexScalar::one(),
        })
    }

    pub fn with_coeff(mut self, c: ComplexScalar) -> Self {
        self.coeff = c;
        self
    }

    pub fn scaled(mut self, c: ComplexScalar) -> Self {
        self.coeff = self.coeff * c;
        self
    }

    /// Upper-half-plane branch value at `z`, without the coefficient.
    pub fn upper(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            TermKind::Constant => Complex64::new(1.0, 0.0),
            TermKind::StepPoly { a, degree } => step_kernel(z, *a, *degree),
            TermKind::DeltaPole { a, order } => delta_kernel(z, *a, *order),
            TermKind::IntervalLog { a, b } => {
                ((Complex64::new(*b, 0.0) - z).ln() - (Complex64::new(*a, 0.0) - z).ln())
                    / two_pi_i()
            }
            TermKind::Rational { num, den } => num.eval_complex(z) / den.eval_complex(z),
        }
    }

    /// Lower-half-plane branch value at `z`, without the coefficient.
    pub fn lower(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            TermKind::Constant | TermKind::Rational { .. } => Complex64::new(0.0, 0.0),
            _ => self.upper(z),
        }
    }

    /// Exact boundary value at `x`, without the coefficient.
    pub fn closed_value(&self, x: f64) -> ClosedValue {
        match &self.kind {
            TermKind::Constant => ClosedValue::Value(Complex64::new(1.0, 0.0)),
            TermKind::StepPoly { a, degree } => {
                let v = if x >= *a {
                    (x - a).powi(*degree as i32) / factorial(*degree)
                } else {
                    0.0
                };
                ClosedValue::Value(Complex64::new(v, 0.0))
            }
            TermKind::DeltaPole { a, .. } => {
                if x == *a {
                    ClosedValue::Singular
                } else {
                    ClosedValue::Value(Complex64::new(0.0, 0.0))
                }
            }
            TermKind::IntervalLog { a, b } => {
                let v = if x >= *a && x < *b { 1.0 } else { 0.0 };
                ClosedValue::Value(Complex64::new(v, 0.0))
            }
            TermKind::Rational { num, den } => {
                let d = den.eval_real(x);
                if d == 0.0 {
                    ClosedValue::Singular
                } else {
                    ClosedValue::Value(Complex64::new(num.eval_real(x) / d, 0.0))
                }
            }
        }
    }

    /// Real points where the defining branches are singular or cut.
    pub fn singular_points(&self) -> Vec<f64> {
        match &self.kind {
            TermKind::Constant => Vec::new(),
            TermKind::StepPoly { a, .. } | TermKind::DeltaPole { a, .. } => vec![*a],
            TermKind::IntervalLog { a, b } => vec![*a, *b],
            TermKind::Rational { den, .. } => den.real_roots(),
        }
    }

    /// Term-wise analytic derivative. Symmetric polynomial remainders,
    /// which contribute nothing to any boundary value, are dropped.
    pub fn differentiate(&self) -> Vec<HyperTerm> {
        match &self.kind {
            TermKind::Constant => Vec::new(),
            TermKind::StepPoly { a, degree: 0 } => vec![HyperTerm {
                kind: TermKind::DeltaPole { a: *a, order: 0 },
                coeff: self.coeff,
            }],
            TermKind::StepPoly { a, degree } => vec![HyperTerm {
                kind: TermKind::StepPoly {
                    a: *a,
                    degree: degree - 1,
                },
                coeff: self.coeff,
            }],
            TermKind::DeltaPole { a, order } => vec![HyperTerm {
                kind: TermKind::DeltaPole {
                    a: *a,
                    order: order + 1,
                },
                coeff: self.coeff,
            }],
            TermKind::IntervalLog { a, b } => vec![
                HyperTerm {
                    kind: TermKind::DeltaPole { a: *a, order: 0 },
                    coeff: self.coeff,
                },
                HyperTerm {
                    kind: TermKind::DeltaPole { a: *b, order: 0 },
                    coeff: self.coeff.op(),
                },
            ],
            TermKind::Rational { num, den } => {
                let n = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
                if n.is_zero() {
                    Vec::new()
                } else {
                    vec![HyperTerm {
                        kind: TermKind::Rational {
                            num: n,
                            den: den.mul(den),
                        },
                        coeff: self.coeff,
                    }]
                }
            }
        }
    }

    /// Term-wise antiderivative with the integration constant fixed so the
    /// result stays inside the catalog (an impulse integrates to the weak
    /// step, a step to the ramp, and so on).
    pub fn antidifferentiate(&self) -> Result<Vec<HyperTerm>, HyperError> {
        match &self.kind {
            TermKind::Constant => Ok(vec![HyperTerm {
                kind: TermKind::Rational {
                    num: Poly::new(vec![0.0, 1.0]),
                    den: Poly::constant(1.0),
                },
                coeff: self.coeff,
            }]),
            TermKind::StepPoly { a, degree } => Ok(vec![HyperTerm {
                kind: TermKind::StepPoly {
                    a: *a,
                    degree: degree + 1,
                },
                coeff: self.coeff,
            }]),
            TermKind::DeltaPole { a, order: 0 } => Ok(vec![HyperTerm {
                kind: TermKind::StepPoly { a: *a, degree: 0 },
                coeff: self.coeff,
            }]),
            TermKind::DeltaPole { a, order } => Ok(vec![HyperTerm {
                kind: TermKind::DeltaPole {
                    a: *a,
                    order: order - 1,
                },
                coeff: self.coeff,
            }]),
            TermKind::IntervalLog { a, b } => Ok(vec![
                HyperTerm {
                    kind: TermKind::StepPoly { a: *a, degree: 1 },
                    coeff: self.coeff,
                },
                HyperTerm {
                    kind: TermKind::StepPoly { a: *b, degree: 1 },
                    coeff: self.coeff.op(),
                },
            ]),
            TermKind::Rational { num, den } => {
                if !den.is_constant() {
                    return Err(HyperError::UnsupportedAntiderivative);
                }
                let c = den.coeffs()[0];
                Ok(vec![HyperTerm {
                    kind: TermKind::Rational {
                        num: num.antiderivative(),
                        den: Poly::constant(c),
                    },
                    coeff: self.coeff,
                }])
            }
        }
    }
}

/// `-(z-a)^m Log(-(z-a)) / (j m!)`
fn step_kernel(z: Complex64, a: f64, degree: u32) -> Complex64 {
    let w = z - Complex64::new(a, 0.0);
    let log = (-w).ln();
    if degree == 0 {
        -log / two_pi_i()
    } else {
        -w.powu(degree) * log / (two_pi_i() * factorial(degree))
    }
}

/// `(-1)^(m+1) m! / (j (z-a)^(m+1))`
fn delta_kernel(z: Complex64, a: f64, order: u32) -> Complex64 {
    let w = z - Complex64::new(a, 0.0);
    let sign = if order % 2 == 0 { -1.0 } else { 1.0 };
    Complex64::new(sign * factorial(order), 0.0) / (two_pi_i() * w.powu(order + 1))
}

fn check_finite(a: f64) -> Result<(), HyperError> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(HyperError::NonFiniteComponent { re: a, im: 0.0 })
    }
}

// Serialized form: {"kind": "...", "coeff": {"re": .., "im": ..}, "params": [..]}
// with per-kind params:
//   CONSTANT []              STEP_LOG [a]        STEP_POLY [a, m]
//   DELTA_POLE [a]           DELTA_DERIV [a, m]  INTERVAL_LOG [a, b]
//   RATIONAL [[num coeffs...], [den coeffs...]]
impl Serialize for HyperTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (kind, params): (&str, serde_json::Value) = match &self.kind {
            TermKind::Constant => ("CONSTANT", serde_json::json!([])),
            TermKind::StepPoly { a, degree: 0 } => ("STEP_LOG", serde_json::json!([a])),
            TermKind::StepPoly { a, degree } => ("STEP_POLY", serde_json::json!([a, degree])),
            TermKind::DeltaPole { a, order: 0 } => ("DELTA_POLE", serde_json::json!([a])),
            TermKind::DeltaPole { a, order } => ("DELTA_DERIV", serde_json::json!([a, order])),
            TermKind::IntervalLog { a, b } => ("INTERVAL_LOG", serde_json::json!([a, b])),
            TermKind::Rational { num, den } => {
                ("RATIONAL", serde_json::json!([num.coeffs(), den.coeffs()]))
            }
        };
        let mut s = serializer.serialize_struct("HyperTerm", 3)?;
        s.serialize_field("kind", kind)?;
        s.serialize_field("coeff", &self.coeff)?;
        s.serialize_field("params", &params)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct RawTerm {
    kind: String,
    coeff: ComplexScalar,
    params: serde_json::Value,
}

impl<'de> Deserialize<'de> for HyperTerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawTerm::deserialize(deserializer)?;
        let scalars = |n: usize| -> Result<Vec<f64>, D::Error> {
            let v: Vec<f64> = serde_json::from_value(raw.params.clone())
                .map_err(|e| D::Error::custom(format!("bad params: {e}")))?;
            if v.len() != n {
                return Err(D::Error::custom(format!(
                    "kind {} expects {} params, got {}",
                    raw.kind,
                    n,
                    v.len()
                )));
            }
            Ok(v)
        };
        let kind = match raw.kind.as_str() {
            "CONSTANT" => TermKind::Constant,
            "STEP_LOG" => {
                let p = scalars(1)?;
                TermKind::StepPoly {
                    a: p[0],
                    degree: 0,
                }
            }
            "STEP_POLY" => {
                let p = scalars(2)?;
                TermKind::StepPoly {
                    a: p[0],
                    degree: p[1] as u32,
                }
            }
            "DELTA_POLE" => {
                let p = scalars(1)?;
                TermKind::DeltaPole { a: p[0], order: 0 }
            }
            "DELTA_DERIV" => {
                let p = scalars(2)?;
                TermKind::DeltaPole {
                    a: p[0],
                    order: p[1] as u32,
                }
            }
            "INTERVAL_LOG" => {
                let p = scalars(2)?;
                if !(p[0] < p[1]) {
                    return Err(D::Error::custom("INTERVAL_LOG requires a < b"));
                }
                TermKind::IntervalLog { a: p[0], b: p[1] }
            }
            "RATIONAL" => {
                let polys: Vec<Vec<f64>> = serde_json::from_value(raw.params.clone())
                    .map_err(|e| D::Error::custom(format!("bad RATIONAL params: {e}")))?;
                if polys.len() != 2 {
                    return Err(D::Error::custom("RATIONAL expects [num, den] coefficient lists"));
                }
                let den = Poly::new(polys[1].clone());
                if den.is_zero() {
                    return Err(D::Error::custom("RATIONAL denominator is identically zero"));
                }
                TermKind::Rational {
                    num: Poly::new(polys[0].clone()),
                    den,
                }
            }
            other => return Err(D::Error::custom(format!("unknown term kind {other}"))),
        };
        Ok(HyperTerm {
            kind,
            coeff: raw.coeff,
        })
    }
}
