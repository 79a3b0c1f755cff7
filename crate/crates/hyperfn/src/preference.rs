//! Consumer value hierarchies generated by impulse series.
//!
//! A [`PreferenceSpec`] lists disjoint impulse supports over the real label
//! line with one ranking weight each; [`build_preference`] turns it into
//! the boundary-value sum of scaled interval terms. Weights are ranking
//! indices only: choice queries compare them, nothing in the public
//! surface adds, multiplies, or divides value across consumers, and two
//! consumers' hierarchies cannot be combined multiplicatively at all.
//!
//! Specs and generated hierarchies are immutable; choice batteries can run
//! in parallel over shared references.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperfunction::Hyperfunction;
use crate::scalar::ComplexScalar;
use crate::term::ClosedValue;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreferenceError {
    #[error("impulse supports overlap: [{lo1}, {hi1}) and [{lo2}, {hi2})")]
    OverlappingImpulses {
        lo1: f64,
        hi1: f64,
        lo2: f64,
        hi2: f64,
    },

    #[error("weights do not induce a strict ranking (weight {weight} repeats)")]
    NotOrderPreserving { weight: f64 },

    #[error("impulse requires finite r_lo < r_hi, got [{lo}, {hi})")]
    InvalidImpulse { lo: f64, hi: f64 },

    #[error("personal rate rho must be > 0, got {0}")]
    NonpositiveRho(f64),

    #[error("choice between identical labels {0} is undefined")]
    SameLabel(f64),

    #[error("label {0} sits on a representation breakpoint")]
    LabelOnBreakpoint(f64),

    #[error("values at {a} and {b} are indistinguishable")]
    Tie { a: f64, b: f64 },

    #[error("relabeling map is not strictly increasing")]
    NotMonotone,
}

impl PreferenceError {
    pub fn code(&self) -> &'static str {
        match self {
            PreferenceError::OverlappingImpulses { .. } => "OVERLAPPING_IMPULSES",
            PreferenceError::NotOrderPreserving { .. } => "NOT_ORDER_PRESERVING",
            PreferenceError::InvalidImpulse { .. } => "INVALID_IMPULSE",
            PreferenceError::NonpositiveRho(_) => "NONPOSITIVE_RHO",
            PreferenceError::SameLabel(_) => "SAME_LABEL",
            PreferenceError::LabelOnBreakpoint(_) => "LABEL_ON_BREAKPOINT",
            PreferenceError::Tie { .. } => "TIE",
            PreferenceError::NotMonotone => "NOT_MONOTONE",
        }
    }
}

/// A concretely dated, labeled unit of a good as it appears in one actor's
/// ranking. Labels are unique within one consumer's spec and their order is
/// the hierarchy order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalQuantity {
    pub label: f64,
    pub description: String,
}

/// Enforce the label-uniqueness invariant over one consumer's quantities.
pub fn validate_unique_labels(quantities: &[MarginalQuantity]) -> Result<(), PreferenceError> {
    let mut labels: Vec<f64> = quantities.iter().map(|q| q.label).collect();
    labels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for pair in labels.windows(2) {
        if pair[0] == pair[1] {
            return Err(PreferenceError::SameLabel(pair[0]));
        }
    }
    Ok(())
}

/// One impulse: the ranking weight carried on the support `[r_lo, r_hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Impulse {
    pub r_lo: f64,
    pub r_hi: f64,
    pub weight: f64,
}

/// Ordered impulse entries generating one consumer's value hierarchy, plus
/// the instantaneous personal interest rate that parameterizes every
/// impulse when hierarchies meet production.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceSpec {
    pub impulses: Vec<Impulse>,
    pub rho: f64,
}

impl PreferenceSpec {
    pub fn new(impulses: Vec<Impulse>, rho: f64) -> Result<Self, PreferenceError> {
        let spec = PreferenceSpec { impulses, rho };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), PreferenceError> {
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(PreferenceError::NonpositiveRho(self.rho));
        }
        for imp in &self.impulses {
            if !(imp.r_lo.is_finite() && imp.r_hi.is_finite() && imp.weight.is_finite())
                || !(imp.r_lo < imp.r_hi)
            {
                return Err(PreferenceError::InvalidImpulse {
                    lo: imp.r_lo,
                    hi: imp.r_hi,
                });
            }
        }
        let mut sorted: Vec<&Impulse> = self.impulses.iter().collect();
        sorted.sort_by(|a, b| a.r_lo.partial_cmp(&b.r_lo).unwrap());
        for pair in sorted.windows(2) {
            if pair[1].r_lo < pair[0].r_hi {
                return Err(PreferenceError::OverlappingImpulses {
                    lo1: pair[0].r_lo,
                    hi1: pair[0].r_hi,
                    lo2: pair[1].r_lo,
                    hi2: pair[1].r_hi,
                });
            }
        }
        // Distinct weights make the induced ranking a strict total order on
        // covered labels.
        let mut weights: Vec<f64> = self.impulses.iter().map(|i| i.weight).collect();
        weights.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for pair in weights.windows(2) {
            if pair[0] == pair[1] {
                return Err(PreferenceError::NotOrderPreserving { weight: pair[0] });
            }
        }
        Ok(())
    }

    /// All support breakpoints, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .impulses
            .iter()
            .flat_map(|i| [i.r_lo, i.r_hi])
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }
}

/// Generate the hierarchy: the sum over impulses of the in-interval term
/// scaled by the impulse weight. A label inside impulse `mu` evaluates to
/// `weight_mu`; outside every impulse the value is 0.
pub fn build_preference(spec: &PreferenceSpec) -> Result<Hyperfunction, PreferenceError> {
    spec.validate()?;
    let mut hf = Hyperfunction::zero();
    for imp in &spec.impulses {
        let term = Hyperfunction::interval(imp.r_lo, imp.r_hi)
            .map_err(|_| PreferenceError::InvalidImpulse {
                lo: imp.r_lo,
                hi: imp.r_hi,
            })?
            .scale(ComplexScalar::real(imp.weight));
        hf = hf.add(&term);
    }
    Ok(hf)
}

/// Discrete choice between two labels: the one with strictly greater
/// generated value wins. Indistinguishable values are surfaced as a `TIE`,
/// never resolved silently.
pub fn choose(pref: &Hyperfunction, a: f64, b: f64) -> Result<f64, PreferenceError> {
    if a == b {
        return Err(PreferenceError::SameLabel(a));
    }
    let va = closed_re(pref, a)?;
    let vb = closed_re(pref, b)?;
    if va > vb {
        Ok(a)
    } else if vb > va {
        Ok(b)
    } else {
        Err(PreferenceError::Tie { a, b })
    }
}

fn closed_re(pref: &Hyperfunction, x: f64) -> Result<f64, PreferenceError> {
    if pref.singular_points().contains(&x) {
        return Err(PreferenceError::LabelOnBreakpoint(x));
    }
    match pref.eval_closed(x) {
        ClosedValue::Value(v) => Ok(v.re),
        ClosedValue::Singular => Err(PreferenceError::LabelOnBreakpoint(x)),
    }
}

/// Strictly increasing piecewise-linear map given as a sorted breakpoint
/// table; extended beyond the table with the end segments' slopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneMap {
    points: Vec<(f64, f64)>,
}

impl MonotoneMap {
    pub fn identity() -> Self {
        MonotoneMap {
            points: vec![(0.0, 0.0), (1.0, 1.0)],
        }
    }

    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, PreferenceError> {
        if points.len() < 2 {
            return Err(PreferenceError::NotMonotone);
        }
        for pair in points.windows(2) {
            if !(pair[1].0 > pair[0].0) || !(pair[1].1 > pair[0].1) {
                return Err(PreferenceError::NotMonotone);
            }
        }
        Ok(MonotoneMap { points })
    }

    pub fn map(&self, x: f64) -> f64 {
        let pts = &self.points;
        let seg = if x <= pts[0].0 {
            (pts[0], pts[1])
        } else if x >= pts[pts.len() - 1].0 {
            (pts[pts.len() - 2], pts[pts.len() - 1])
        } else {
            let idx = pts.partition_point(|p| p.0 <= x);
            (pts[idx - 1], pts[idx])
        };
        let ((x0, y0), (x1, y1)) = seg;
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }
}

/// Map every breakpoint of the spec through `phi`. Rankings are preserved
/// at the argmax level: for any labels, the winner before relabeling maps
/// to the winner after.
pub fn relabel_monotone(
    spec: &PreferenceSpec,
    phi: &MonotoneMap,
) -> Result<PreferenceSpec, PreferenceError> {
    let impulses = spec
        .impulses
        .iter()
        .map(|imp| Impulse {
            r_lo: phi.map(imp.r_lo),
            r_hi: phi.map(imp.r_hi),
            weight: imp.weight,
        })
        .collect();
    PreferenceSpec::new(impulses, spec.rho)
}

/// Trigger-point responses that fire without constituting choices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflexSpec {
    pub triggers: Vec<ReflexTrigger>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflexTrigger {
    pub point: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReflexOutcome {
    /// The stimulus hit a trigger point exactly; it is excluded from choice
    /// processing.
    Fired(f64),
    Pass,
}

/// Fires iff `xi` equals a trigger point exactly. Fired stimuli never reach
/// [`choose`].
pub fn reflex_filter(reflex: &ReflexSpec, xi: f64) -> ReflexOutcome {
    for t in &reflex.triggers {
        if t.point == xi {
            return ReflexOutcome::Fired(t.magnitude);
        }
    }
    ReflexOutcome::Pass
}

/// Structurally distinct defining pairs for one hierarchy: each variant
/// offsets both branches by a random polynomial of degree at most 4, which
/// cancels in every boundary value.
pub fn representation_variants<R: Rng>(
    pref: &Hyperfunction,
    count: usize,
    rng: &mut R,
) -> Vec<Hyperfunction> {
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=4usize);
            let coeffs: Vec<ComplexScalar> = (0..=degree)
                .map(|_| {
                    ComplexScalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        .expect("finite random coefficient")
                })
                .collect();
            pref.clone().offset_both_branches(&coeffs)
        })
        .collect()
}
