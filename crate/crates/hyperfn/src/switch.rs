//! The analytic switch family: sign, weak and strict steps, equality
//! deltas, interval switches, conjunction products, and the counting
//! measure over labeled events.
//!
//! Production code evaluates every switch by direct comparison; the
//! hyperfunction forms are retained for conformance testing and for
//! differintegration. Both routes share one frozen boundary convention:
//!
//! | variant          | value 1 when (componentwise)    | at a boundary          |
//! |------------------|---------------------------------|------------------------|
//! | `sgn`            | `x > 0` (else -1)               | `sgn(0) = +1`          |
//! | `step_weak_one`  | all `x >= r`                    | equality counts as in  |
//! | `step_weak_zero` | complement of `step_weak_one`   | equality counts as out |
//! | `step_strict`    | all `x > r`                     | equality counts as out |
//! | `kron_one`       | all `x == r`                    | equality is the point  |
//! | `kron_zero`      | complement of `kron_one`        |                        |
//! | `interval`       | all `r <= x` and all `y < p`    | in at the lower edge, out at the upper |
//!
//! The `interval` row matches the half-open `[a, b)` boundary value of the
//! interval defining term, so the discrete and analytic routes agree at
//! every point, breakpoints included. All functions here are pure over
//! immutable inputs and unconditionally thread-safe.
//!
//! Only the equal-dimension in-interval form is exposed. The mixed form
//! that subtracts two step products over operand groups of different
//! dimension can take the value -1 and is not implemented.

use serde::{Deserialize, Serialize};
use std::hash::Hash;
use thiserror::Error;

use crate::hyperfunction::Hyperfunction;
use crate::scalar::ComplexScalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwitchError {
    #[error("operand dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vectors must have dimension >= 1")]
    EmptyVector,

    #[error("vector component is not finite")]
    NonFiniteComponent,

    #[error("expression references input {index} but only {len} inputs were bound")]
    UnboundInput { index: usize, len: usize },

    #[error("product children must be switch-valued; sgn is not")]
    NonSwitchChild,
}

impl SwitchError {
    pub fn code(&self) -> &'static str {
        match self {
            SwitchError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            SwitchError::EmptyVector => "EMPTY_VECTOR",
            SwitchError::NonFiniteComponent => "NON_FINITE_COMPONENT",
            SwitchError::UnboundInput { .. } => "UNBOUND_INPUT",
            SwitchError::NonSwitchChild => "NON_SWITCH_CHILD",
        }
    }
}

/// Fixed-dimension vector of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Result<Self, SwitchError> {
        if components.is_empty() {
            return Err(SwitchError::EmptyVector);
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(SwitchError::NonFiniteComponent);
        }
        Ok(RealVector(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = SwitchError;
    fn try_from(v: Vec<f64>) -> Result<Self, SwitchError> {
        RealVector::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Vec<f64> {
        v.0
    }
}

fn check_dims(a: &RealVector, b: &RealVector) -> Result<(), SwitchError> {
    if a.dim() != b.dim() {
        return Err(SwitchError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Sign with the right-limit regularization at zero: `sgn(0) = +1`.
pub fn sgn_eval(x: f64) -> i64 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// 1 iff `x >= r` in every component.
pub fn step_weak_one(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    check_dims(x, r)?;
    Ok(x
        .components()
        .iter()
        .zip(r.components())
        .all(|(a, b)| a >= b) as u8)
}

/// Complement step: `1 - step_weak_one`.
pub fn step_weak_zero(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    Ok(1 - step_weak_one(x, r)?)
}

/// 1 iff `x > r` in every component.
pub fn step_strict(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    check_dims(x, r)?;
    Ok(x
        .components()
        .iter()
        .zip(r.components())
        .all(|(a, b)| a > b) as u8)
}

/// Equality delta: 1 iff `x == r` componentwise.
pub fn kron_one(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    check_dims(x, r)?;
    Ok(x
        .components()
        .iter()
        .zip(r.components())
        .all(|(a, b)| a == b) as u8)
}

/// `1 - kron_one`.
pub fn kron_zero(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    Ok(1 - kron_one(x, r)?)
}

/// The equality delta computed by step composition instead of direct
/// comparison: per component, the weak step minus the strict step leaves
/// exactly the equality point. Kept as an independent route for
/// conformance tests.
pub fn kron_one_via_theta(x: &RealVector, r: &RealVector) -> Result<u8, SwitchError> {
    check_dims(x, r)?;
    let mut product: i64 = 1;
    for (&a, &b) in x.components().iter().zip(r.components()) {
        let weak = (a >= b) as i64;
        let strict_over = (a > b) as i64;
        product *= weak - strict_over;
    }
    Ok(product as u8)
}

/// In-interval switch: 1 iff `r <= x` and `y < p` componentwise (the
/// boundary row of the convention table). In the `r < x = y < p` reading,
/// `x` is the probed point and `[r, p)` the interval.
pub fn interval_switch(
    x: &RealVector,
    r: &RealVector,
    y: &RealVector,
    p: &RealVector,
) -> Result<u8, SwitchError> {
    check_dims(x, r)?;
    check_dims(x, y)?;
    check_dims(y, p)?;
    let lower = x
        .components()
        .iter()
        .zip(r.components())
        .all(|(a, b)| a >= b);
    let upper = y
        .components()
        .iter()
        .zip(p.components())
        .all(|(a, b)| a < b);
    Ok((lower && upper) as u8)
}

/// Number of distinguishable labels in a multiset of events, computed as
/// the double-delta pairing sum with each event's row normalized by its
/// multiplicity, so indistinguishable events count once.
pub fn count_measure<T: Eq + Hash>(labels: &[T]) -> usize {
    let mut total = 0.0_f64;
    for p in labels {
        let multiplicity = labels.iter().filter(|r| *r == p).count();
        total += 1.0 / multiplicity as f64;
    }
    total.round() as usize
}

/// One scalar slot in a switch expression: a literal or an input index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarOperand {
    Lit(f64),
    Var { var: usize },
}

impl ScalarOperand {
    fn resolve(&self, inputs: &[f64]) -> Result<f64, SwitchError> {
        match self {
            ScalarOperand::Lit(v) => Ok(*v),
            ScalarOperand::Var { var } => inputs.get(*var).copied().ok_or(
                SwitchError::UnboundInput {
                    index: *var,
                    len: inputs.len(),
                },
            ),
        }
    }
}

fn resolve_vec(ops: &[ScalarOperand], inputs: &[f64]) -> Result<RealVector, SwitchError> {
    let mut out = Vec::with_capacity(ops.len());
    for op in ops {
        out.push(op.resolve(inputs)?);
    }
    RealVector::new(out)
}

/// Switch circuit expression tree. Serialized with a `node` tag; operand
/// vectors mix literals and `{"var": k}` references into the bound input
/// slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node")]
pub enum SwitchExpr {
    #[serde(rename = "SGN")]
    Sgn { arg: ScalarOperand },
    #[serde(rename = "STEP_WEAK_ONE")]
    StepWeakOne {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
    },
    #[serde(rename = "STEP_WEAK_ZERO")]
    StepWeakZero {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
    },
    #[serde(rename = "STEP_STRICT")]
    StepStrict {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
    },
    #[serde(rename = "KRON_ONE")]
    KronOne {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
    },
    #[serde(rename = "KRON_ZERO")]
    KronZero {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
    },
    #[serde(rename = "INTERVAL")]
    Interval {
        x: Vec<ScalarOperand>,
        r: Vec<ScalarOperand>,
        y: Vec<ScalarOperand>,
        p: Vec<ScalarOperand>,
    },
    #[serde(rename = "PRODUCT")]
    Product { children: Vec<SwitchExpr> },
}

impl SwitchExpr {
    /// Evaluate against a bound input slice. Switch nodes yield 0/1; `SGN`
    /// yields -1/+1 and is rejected inside products.
    pub fn eval(&self, inputs: &[f64]) -> Result<i64, SwitchError> {
        match self {
            SwitchExpr::Sgn { arg } => Ok(sgn_eval(arg.resolve(inputs)?)),
            SwitchExpr::StepWeakOne { x, r } => Ok(step_weak_one(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
            )? as i64),
            SwitchExpr::StepWeakZero { x, r } => Ok(step_weak_zero(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
            )? as i64),
            SwitchExpr::StepStrict { x, r } => Ok(step_strict(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
            )? as i64),
            SwitchExpr::KronOne { x, r } => Ok(kron_one(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
            )? as i64),
            SwitchExpr::KronZero { x, r } => Ok(kron_zero(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
            )? as i64),
            SwitchExpr::Interval { x, r, y, p } => Ok(interval_switch(
                &resolve_vec(x, inputs)?,
                &resolve_vec(r, inputs)?,
                &resolve_vec(y, inputs)?,
                &resolve_vec(p, inputs)?,
            )? as i64),
            SwitchExpr::Product { children } => {
                let mut acc: i64 = 1;
                for child in children {
                    if matches!(child, SwitchExpr::Sgn { .. }) {
                        return Err(SwitchError::NonSwitchChild);
                    }
                    acc *= child.eval(inputs)?;
                    if acc == 0 {
                        // Still validate the remaining children's bindings.
                        continue;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Input indices referenced anywhere in the expression.
    pub fn referenced_inputs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_inputs(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_inputs(&self, out: &mut Vec<usize>) {
        let push_ops = |ops: &[ScalarOperand], out: &mut Vec<usize>| {
            for op in ops {
                if let ScalarOperand::Var { var } = op {
                    out.push(*var);
                }
            }
        };
        match self {
            SwitchExpr::Sgn { arg } => {
                if let ScalarOperand::Var { var } = arg {
                    out.push(*var);
                }
            }
            SwitchExpr::StepWeakOne { x, r }
            | SwitchExpr::StepWeakZero { x, r }
            | SwitchExpr::StepStrict { x, r }
            | SwitchExpr::KronOne { x, r }
            | SwitchExpr::KronZero { x, r } => {
                push_ops(x, out);
                push_ops(r, out);
            }
            SwitchExpr::Interval { x, r, y, p } => {
                push_ops(x, out);
                push_ops(r, out);
                push_ops(y, out);
                push_ops(p, out);
            }
            SwitchExpr::Product { children } => {
                for c in children {
                    c.collect_inputs(out);
                }
            }
        }
    }

    /// True when every node in the tree contains an equality delta; used by
    /// interval propagation, where equality nodes cannot be bounded by
    /// corner enumeration.
    pub fn contains_equality_node(&self) -> bool {
        match self {
            SwitchExpr::KronOne { .. } | SwitchExpr::KronZero { .. } => true,
            SwitchExpr::Product { children } => {
                children.iter().any(|c| c.contains_equality_node())
            }
            _ => false,
        }
    }
}

/// Conjunction of two switch expressions: the product of their values,
/// realizing the displayed truth tables. Both operands must be
/// switch-valued.
pub fn conjunction(a: &SwitchExpr, b: &SwitchExpr, inputs: &[f64]) -> Result<u8, SwitchError> {
    if matches!(a, SwitchExpr::Sgn { .. }) || matches!(b, SwitchExpr::Sgn { .. }) {
        return Err(SwitchError::NonSwitchChild);
    }
    Ok((a.eval(inputs)? * b.eval(inputs)?) as u8)
}

// Hyperfunction forms of the scalar switches. Vector switches multiply the
// per-component values; only switch-valued factors are ever multiplied.

/// `sgn` as the difference of its two log-branch step forms, reduced to
/// catalog terms: `2 * step(0) - 1`.
pub fn sgn_hyperfunction() -> Hyperfunction {
    Hyperfunction::step(0.0)
        .expect("finite breakpoint")
        .scale(ComplexScalar::real(2.0))
        .add(&Hyperfunction::constant(ComplexScalar::real(-1.0)))
}

/// The weak step `x >= r` as a boundary-value pair.
pub fn step_weak_one_hyperfunction(r: f64) -> Hyperfunction {
    Hyperfunction::step(r).expect("finite breakpoint")
}

/// The complement step as a boundary-value pair.
pub fn step_weak_zero_hyperfunction(r: f64) -> Hyperfunction {
    Hyperfunction::constant(ComplexScalar::one())
        .add(&Hyperfunction::step(r).expect("finite breakpoint").scale(ComplexScalar::real(-1.0)))
}

/// The in-interval switch `[r, p)` as a boundary-value pair.
pub fn interval_hyperfunction(r: f64, p: f64) -> Result<Hyperfunction, crate::HyperError> {
    Hyperfunction::interval(r, p)
}
