//! Interval-valued data, event-gated discounts, and revenue projection
//! over the mixed point/interval/event data managers actually observe.
//!
//! Gates are switch expressions over named inputs. Interval inputs
//! propagate by corner enumeration, which is exact for gates that use each
//! input monotonically (steps and in-interval switches on distinct
//! inputs). Inputs used with conflicting directions, inputs feeding
//! equality deltas, and gates with more than [`MAX_CORNER_INPUTS`]
//! interval-valued inputs fall back to the trivially sound `[0, 1]`
//! enclosure.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::switch::{ScalarOperand, SwitchError, SwitchExpr};

/// Corner enumeration cap: `2^16` gate evaluations at most.
pub const MAX_CORNER_INPUTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiskError {
    #[error("guarded event {0} is missing from the event map")]
    MissingEvent(String),

    #[error("gate input {0} is missing from the data map")]
    MissingInput(String),

    #[error("market rate must be non-negative, got {0}")]
    NegativeRate(f64),

    #[error("penalty rate must lie in [0, 1), got {0}")]
    BadPenaltyRate(f64),

    #[error("interval requires lo <= hi, got [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },

    #[error("bump must be strictly positive, got {0}")]
    BadBump(f64),

    #[error("input {0} is an event; only point and range data can be bumped")]
    UnsupportedBump(String),

    #[error(transparent)]
    Switch(#[from] SwitchError),
}

impl RiskError {
    pub fn code(&self) -> &'static str {
        match self {
            RiskError::MissingEvent(_) => "MISSING_EVENT",
            RiskError::MissingInput(_) => "MISSING_INPUT",
            RiskError::NegativeRate(_) => "NEGATIVE_RATE",
            RiskError::BadPenaltyRate(_) => "BAD_PENALTY_RATE",
            RiskError::BadInterval { .. } => "BAD_INTERVAL",
            RiskError::BadBump(_) => "BAD_BUMP",
            RiskError::UnsupportedBump(_) => "UNSUPPORTED_BUMP",
            RiskError::Switch(e) => e.code(),
        }
    }
}

/// Closed real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lo: f64,
    hi: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = RiskError;
    fn try_from(raw: RawInterval) -> Result<Self, RiskError> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl From<Interval> for RawInterval {
    fn from(i: Interval) -> RawInterval {
        RawInterval { lo: i.lo, hi: i.hi }
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, RiskError> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(RiskError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    pub fn shift(&self, by: f64) -> Interval {
        Interval {
            lo: self.lo + by,
            hi: self.hi + by,
        }
    }

    /// Multiply by a scalar, flipping the endpoints for negative factors.
    pub fn scale(&self, s: f64) -> Interval {
        let (a, b) = (self.lo * s, self.hi * s);
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// A datum as managers observe it: a measured point, an interval estimate,
/// or a unique event that has or has not occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum MixedDatum {
    #[serde(rename = "POINT")]
    Point { value: f64 },
    #[serde(rename = "RANGE")]
    Range { interval: Interval },
    #[serde(rename = "EVENT")]
    Event { name: String, fired: bool },
}

impl MixedDatum {
    fn as_interval(&self) -> Interval {
        match self {
            MixedDatum::Point { value } => Interval::point(*value),
            MixedDatum::Range { interval } => *interval,
            MixedDatum::Event { fired, .. } => Interval::point(if *fired { 1.0 } else { 0.0 }),
        }
    }
}

/// One gated revenue entry: `amount` arrives at `time` when the gate is
/// open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GatedAmount {
    pub gate: SwitchExpr,
    pub amount: f64,
    pub time: f64,
}

/// The event-gated discount model: gated amounts, a penalty rate`r` in
/// [0, 1), and the guarded event names whose deltas price unresolved risk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevenueModel {
    /// Declared gate input names; `{"var": k}` operands index this list.
    pub inputs: Vec<String>,
    pub base_terms: Vec<GatedAmount>,
    pub rate: f64,
    pub event_deltas: Vec<String>,
}

impl RevenueModel {
    pub fn validate(&self) -> Result<(), RiskError> {
        if !(0.0..1.0).contains(&self.rate) {
            return Err(RiskError::BadPenaltyRate(self.rate));
        }
        Ok(())
    }
}

/// Three-valued gate evaluation over interval inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateValue {
    Zero,
    One,
    /// Both values are realized by some point selection; the enclosure of
    /// realized values is `[0, 1]`.
    Indeterminate(Interval),
}

/// Exact three-valued evaluation of the four-operand in-interval switch
/// over interval inputs: 1 when every point selection satisfies
/// `x >= r` and `y < p`, 0 when none does, indeterminate otherwise.
pub fn interval_gate(x: &Interval, r: &Interval, y: &Interval, p: &Interval) -> GateValue {
    let always = x.lo >= r.hi && y.hi < p.lo;
    if always {
        return GateValue::One;
    }
    let some = x.hi >= r.lo && y.lo < p.hi;
    if !some {
        return GateValue::Zero;
    }
    GateValue::Indeterminate(Interval { lo: 0.0, hi: 1.0 })
}

/// The risk multiplier `1 - r * prod(delta)`, where each guarded event's
/// delta is 1 while the event has NOT fired. The penalty prices
/// un-resolved risk: once any guarded event fires its delta kills the
/// penalty term. Always in `[1 - r, 1]`.
pub fn discount_gate(
    model: &RevenueModel,
    events: &BTreeMap<String, bool>,
) -> Result<f64, RiskError> {
    model.validate()?;
    let mut product = 1.0;
    for name in &model.event_deltas {
        let fired = events
            .get(name)
            .ok_or_else(|| RiskError::MissingEvent(name.clone()))?;
        product *= if *fired { 0.0 } else { 1.0 };
    }
    Ok(1.0 - model.rate * product)
}

// Monotonicity direction of one input occurrence inside a gate.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Dir {
    Up,
    Down,
    Conflict,
}

fn note_dir(map: &mut BTreeMap<usize, Dir>, ops: &[ScalarOperand], dir: Dir) {
    for op in ops {
        if let ScalarOperand::Var { var } = op {
            map.entry(*var)
                .and_modify(|d| {
                    if *d != dir {
                        *d = Dir::Conflict;
                    }
                })
                .or_insert(dir);
        }
    }
}

fn gate_directions(expr: &SwitchExpr, map: &mut BTreeMap<usize, Dir>) {
    match expr {
        SwitchExpr::Sgn { arg } => note_dir(map, std::slice::from_ref(arg), Dir::Up),
        SwitchExpr::StepWeakOne { x, r } | SwitchExpr::StepStrict { x, r } => {
            note_dir(map, x, Dir::Up);
            note_dir(map, r, Dir::Down);
        }
        SwitchExpr::StepWeakZero { x, r } => {
            note_dir(map, x, Dir::Down);
            note_dir(map, r, Dir::Up);
        }
        SwitchExpr::KronOne { x, r } | SwitchExpr::KronZero { x, r } => {
            note_dir(map, x, Dir::Conflict);
            note_dir(map, r, Dir::Conflict);
        }
        SwitchExpr::Interval { x, r, y, p } => {
            note_dir(map, x, Dir::Up);
            note_dir(map, r, Dir::Down);
            note_dir(map, y, Dir::Down);
            note_dir(map, p, Dir::Up);
        }
        SwitchExpr::Product { children } => {
            for c in children {
                gate_directions(c, map);
            }
        }
    }
}

/// Bounds of a gate over interval-bound inputs. Exact (corner-attained)
/// for gates monotone in every interval input; conservative `[0, 1]`
/// otherwise.
fn gate_bounds(gate: &SwitchExpr, bindings: &[Interval]) -> Result<(f64, f64), RiskError> {
    let mut dirs = BTreeMap::new();
    gate_directions(gate, &mut dirs);
    let active: Vec<usize> = dirs
        .keys()
        .copied()
        .filter(|&i| {
            bindings
                .get(i)
                .map(|iv| !iv.is_degenerate())
                .unwrap_or(false)
        })
        .collect();
    for &var in dirs.keys() {
        if var >= bindings.len() {
            return Err(RiskError::Switch(SwitchError::UnboundInput {
                index: var,
                len: bindings.len(),
            }));
        }
    }
    let conflicted = active.iter().any(|i| dirs[i] == Dir::Conflict);
    if conflicted || active.len() > MAX_CORNER_INPUTS {
        // Sound for any {0,1}-valued gate.
        return Ok((0.0, 1.0));
    }
    let mut inputs: Vec<f64> = bindings.iter().map(|iv| iv.lo).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for mask in 0u32..(1u32 << active.len()) {
        for (bit, &vi) in active.iter().enumerate() {
            inputs[vi] = if (mask >> bit) & 1 == 1 {
                bindings[vi].hi
            } else {
                bindings[vi].lo
            };
        }
        let v = gate.eval(&inputs)? as f64;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

fn bind_inputs(
    model: &RevenueModel,
    data: &BTreeMap<String, MixedDatum>,
) -> Result<Vec<Interval>, RiskError> {
    model
        .inputs
        .iter()
        .map(|name| {
            data.get(name)
                .map(|d| d.as_interval())
                .ok_or_else(|| RiskError::MissingInput(name.clone()))
        })
        .collect()
}

fn event_map(data: &BTreeMap<String, MixedDatum>) -> BTreeMap<String, bool> {
    data.values()
        .filter_map(|d| match d {
            MixedDatum::Event { name, fired } => Some((name.clone(), *fired)),
            _ => None,
        })
        .collect()
}

/// Interval enclosure of total projected revenue: the sum over gated
/// amounts of `amount * exp(-market_rate * (time - now)) * discount_gate`,
/// with interval data propagated through the gates. Point-only data yields
/// a degenerate interval.
pub fn project_revenue(
    model: &RevenueModel,
    data: &BTreeMap<String, MixedDatum>,
    market_rate: f64,
    now: f64,
) -> Result<Interval, RiskError> {
    model.validate()?;
    if market_rate < 0.0 {
        return Err(RiskError::NegativeRate(market_rate));
    }
    let bindings = bind_inputs(model, data)?;
    let risk_multiplier = discount_gate(model, &event_map(data))?;
    let mut total = Interval::point(0.0);
    for term in &model.base_terms {
        let (g_lo, g_hi) = gate_bounds(&term.gate, &bindings)?;
        let factor = term.amount * (-market_rate * (term.time - now)).exp() * risk_multiplier;
        let contribution = Interval::new(g_lo, g_hi)
            .expect("gate bounds are ordered")
            .scale(factor);
        total = total.add(&contribution);
    }
    Ok(total)
}

/// Point-selection projection used by the joint enumeration below and by
/// soundness tests: every input pinned to a single value.
pub fn project_revenue_at_points(
    model: &RevenueModel,
    data: &BTreeMap<String, MixedDatum>,
    points: &BTreeMap<String, f64>,
    market_rate: f64,
    now: f64,
) -> Result<f64, RiskError> {
    model.validate()?;
    if market_rate < 0.0 {
        return Err(RiskError::NegativeRate(market_rate));
    }
    let mut inputs = Vec::with_capacity(model.inputs.len());
    for name in &model.inputs {
        if let Some(v) = points.get(name) {
            inputs.push(*v);
        } else {
            let datum = data
                .get(name)
                .ok_or_else(|| RiskError::MissingInput(name.clone()))?;
            inputs.push(datum.as_interval().lo());
        }
    }
    let risk_multiplier = discount_gate(model, &event_map(data))?;
    let mut total = 0.0;
    for term in &model.base_terms {
        let g = term.gate.eval(&inputs)? as f64;
        total += g * term.amount * (-market_rate * (term.time - now)).exp() * risk_multiplier;
    }
    Ok(total)
}

fn bump_datum(datum: &MixedDatum, bump: f64, name: &str) -> Result<MixedDatum, RiskError> {
    match datum {
        MixedDatum::Point { value } => Ok(MixedDatum::Point {
            value: value + bump,
        }),
        MixedDatum::Range { interval } => Ok(MixedDatum::Range {
            interval: interval.shift(bump),
        }),
        MixedDatum::Event { .. } => Err(RiskError::UnsupportedBump(name.to_string())),
    }
}

/// Interval enclosure of the revenue change from bumping one input, with
/// the same point selection applied to both projections so shared interval
/// data stays correlated. Exact for point data and for monotone gates;
/// falls back to independent interval subtraction when the joint
/// enumeration cannot be exact.
pub fn marginal_contribution(
    model: &RevenueModel,
    data: &BTreeMap<String, MixedDatum>,
    input_name: &str,
    bump: f64,
) -> Result<Interval, RiskError> {
    if !(bump > 0.0) || !bump.is_finite() {
        return Err(RiskError::BadBump(bump));
    }
    let datum = data
        .get(input_name)
        .ok_or_else(|| RiskError::MissingInput(input_name.to_string()))?;
    let mut bumped = data.clone();
    bumped.insert(input_name.to_string(), bump_datum(datum, bump, input_name)?);

    // Joint exactness needs every gate monotone and few enough ranges.
    let bindings = bind_inputs(model, data)?;
    let mut dirs = BTreeMap::new();
    for term in &model.base_terms {
        gate_directions(&term.gate, &mut dirs);
    }
    let ranged: Vec<(usize, Interval)> = model
        .inputs
        .iter()
        .enumerate()
        .filter(|(i, _)| !bindings[*i].is_degenerate())
        .map(|(i, _)| (i, bindings[i]))
        .collect();
    let conflicted = ranged.iter().any(|(i, _)| dirs.get(i) == Some(&Dir::Conflict));
    if conflicted || ranged.len() > MAX_CORNER_INPUTS {
        let before = project_revenue(model, data, 0.0, 0.0)?;
        let after = project_revenue(model, &bumped, 0.0, 0.0)?;
        return Ok(Interval {
            lo: after.lo - before.hi,
            hi: after.hi - before.lo,
        });
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let corners = 1u32 << ranged.len();
    for mask in 0..corners {
        let mut points = BTreeMap::new();
        for (bit, (i, iv)) in ranged.iter().enumerate() {
            let v = if (mask >> bit) & 1 == 1 { iv.hi } else { iv.lo };
            points.insert(model.inputs[*i].clone(), v);
        }
        let before = project_revenue_at_points(model, data, &points, 0.0, 0.0)?;
        let mut shifted = points.clone();
        if let Some(v) = shifted.get_mut(input_name) {
            *v += bump;
        }
        let after = project_revenue_at_points(model, &bumped, &shifted, 0.0, 0.0)?;
        let diff = after - before;
        lo = lo.min(diff);
        hi = hi.max(diff);
    }
    Interval::new(lo, hi)
}
