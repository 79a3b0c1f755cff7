//! Manufacturing processes as ordered task ensembles.
//!
//! Tasks carry an order (distance from final consumption; order 1 is the
//! consumption good itself), interval coefficients for the unfolding
//! structure distribution, a specificity count, and the cross-section that
//! limits flow through them. Graph edges point toward order 1 and must
//! strictly decrease in order, which makes every constructible graph
//! acyclic by construction.
//!
//! Graphs are immutable after validation and all analyses are pure, so
//! parameter sweeps can fan out across threads freely.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperfunction::Hyperfunction;
use crate::scalar::ComplexScalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProductionError {
    #[error("task {label} is invalid: {reason}")]
    InvalidTask { label: f64, reason: String },

    #[error("edge ({from}, {to}) does not strictly decrease in order")]
    EdgeOrderViolation { from: usize, to: usize },

    #[error("edge references task index {index} out of {len}")]
    BadEdgeIndex { index: usize, len: usize },

    #[error("interval requires H < K, got [{h}, {k}]")]
    BadGraphInterval { h: f64, k: f64 },

    #[error("path step ({from}, {to}) is not an edge of the graph")]
    BadPathStep { from: usize, to: usize },

    #[error("task labels must be unique, {label} repeats")]
    DuplicateLabel { label: f64 },

    #[error("flows must be strictly positive, got consumed={consumed}, invested={invested}")]
    NonpositiveFlow { consumed: f64, invested: f64 },

    #[error("rate must be strictly positive, got {0}")]
    NonpositiveRate(f64),

    #[error("discount interval must have K >= H, got H={h}, K={k}")]
    NegativeInterval { h: f64, k: f64 },

    #[error("order bins must be at least two strictly increasing cutpoints")]
    BadBins,

    #[error("operation requires at least one task")]
    EmptySet,

    #[error("graph path is empty")]
    EmptyPath,

    #[error("rate path must be strictly increasing and positive")]
    BadRatePath,
}

impl ProductionError {
    pub fn code(&self) -> &'static str {
        match self {
            ProductionError::InvalidTask { .. } => "INVALID_TASK",
            ProductionError::EdgeOrderViolation { .. } => "EDGE_ORDER_VIOLATION",
            ProductionError::BadEdgeIndex { .. } => "BAD_EDGE_INDEX",
            ProductionError::BadGraphInterval { .. } => "BAD_GRAPH_INTERVAL",
            ProductionError::BadPathStep { .. } => "BAD_PATH_STEP",
            ProductionError::DuplicateLabel { .. } => "DUPLICATE_LABEL",
            ProductionError::NonpositiveFlow { .. } => "NONPOSITIVE_FLOW",
            ProductionError::NonpositiveRate(_) => "NONPOSITIVE_RATE",
            ProductionError::NegativeInterval { .. } => "NEGATIVE_INTERVAL",
            ProductionError::BadBins => "BAD_BINS",
            ProductionError::EmptySet => "EMPTY_SET",
            ProductionError::EmptyPath => "EMPTY_PATH",
            ProductionError::BadRatePath => "BAD_RATE_PATH",
        }
    }
}

/// One time-bucketed structure coefficient: weight `psi` on the label
/// interval `(p, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaskCoefficient {
    /// Integer time bucket index.
    pub bucket: i64,
    pub p: f64,
    pub r: f64,
    pub psi: f64,
}

/// A labeled productive operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub label: f64,
    /// Distance from consumption; order 1 is a first-order good.
    pub order: f64,
    pub coefficients: Vec<TaskCoefficient>,
    /// Count of distinguishable stages consuming this good.
    pub specificity: u32,
    /// Flow limit through this task.
    pub cross_section: f64,
}

impl Task {
    pub fn validate(&self) -> Result<(), ProductionError> {
        let fail = |reason: &str| {
            Err(ProductionError::InvalidTask {
                label: self.label,
                reason: reason.to_string(),
            })
        };
        if !self.label.is_finite() {
            return fail("label must be finite");
        }
        if !(self.order >= 1.0) || !self.order.is_finite() {
            return fail("order must be >= 1");
        }
        if !(self.cross_section > 0.0) || !self.cross_section.is_finite() {
            return fail("cross_section must be > 0");
        }
        if self.specificity == 0 {
            return fail("specificity must be >= 1");
        }
        for c in &self.coefficients {
            if !(c.p < c.r) || !c.p.is_finite() || !c.r.is_finite() {
                return fail("coefficient requires p < r");
            }
            if !(c.psi >= 0.0) || !c.psi.is_finite() {
                return fail("coefficient psi must be >= 0");
            }
        }
        Ok(())
    }

    /// Total structure mass: the exact integral of the task's coefficient
    /// distribution over labels.
    pub fn psi_mass(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.psi * (c.r - c.p))
            .sum()
    }

    /// Order-implied delivery delay: the distance measure `log(order)`.
    pub fn delay(&self) -> f64 {
        self.order.ln()
    }

    /// Structure mass discounted over the order-implied delay.
    pub fn discounted_yield(&self, rate: f64) -> f64 {
        self.psi_mass() * (-rate * self.delay()).exp()
    }
}

/// A manufacturing process: tasks, order-decreasing directed edges, the
/// observation interval `[H, K]`, and one chosen (possibly redundant)
/// execution path given as a task-index sequence whose consecutive pairs
/// are edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessGraph {
    tasks: Vec<Task>,
    edges: Vec<(usize, usize)>,
    interval: (f64, f64),
    path: Vec<usize>,
}

impl ProcessGraph {
    pub fn new(
        tasks: Vec<Task>,
        edges: Vec<(usize, usize)>,
        interval: (f64, f64),
        path: Vec<usize>,
    ) -> Result<Self, ProductionError> {
        let g = ProcessGraph {
            tasks,
            edges,
            interval,
            path,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), ProductionError> {
        for t in &self.tasks {
            t.validate()?;
        }
        let mut labels: Vec<f64> = self.tasks.iter().map(|t| t.label).collect();
        labels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(ProductionError::DuplicateLabel { label: w[0] });
            }
        }
        let n = self.tasks.len();
        for &(from, to) in &self.edges {
            for index in [from, to] {
                if index >= n {
                    return Err(ProductionError::BadEdgeIndex { index, len: n });
                }
            }
            if !(self.tasks[from].order > self.tasks[to].order) {
                return Err(ProductionError::EdgeOrderViolation { from, to });
            }
        }
        let (h, k) = self.interval;
        if !(h < k) || !h.is_finite() || !k.is_finite() {
            return Err(ProductionError::BadGraphInterval { h, k });
        }
        for idx in &self.path {
            if *idx >= n {
                return Err(ProductionError::BadEdgeIndex {
                    index: *idx,
                    len: n,
                });
            }
        }
        for pair in self.path.windows(2) {
            if !self.edges.contains(&(pair[0], pair[1])) {
                return Err(ProductionError::BadPathStep {
                    from: pair[0],
                    to: pair[1],
                });
            }
        }
        Ok(())
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn max_order(&self) -> f64 {
        self.tasks
            .iter()
            .map(|t| t.order)
            .fold(1.0_f64, f64::max)
    }

    /// Induced subgraph of tasks whose order does not exceed `max_order`.
    /// Edges point down-order, so the retained set is downward closed and
    /// the result is always a valid graph.
    pub fn truncate_to_order(&self, max_order: f64) -> ProcessGraph {
        let keep: Vec<bool> = self.tasks.iter().map(|t| t.order <= max_order).collect();
        let mut remap = vec![usize::MAX; self.tasks.len()];
        let mut tasks = Vec::new();
        for (i, t) in self.tasks.iter().enumerate() {
            if keep[i] {
                remap[i] = tasks.len();
                tasks.push(t.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| keep[*a] && keep[*b])
            .map(|&(a, b)| (remap[a], remap[b]))
            .collect();
        let mut path: Vec<usize> = Vec::new();
        for &idx in &self.path {
            if keep[idx] {
                path.push(remap[idx]);
            } else {
                // A gap breaks the chain; keep the longest suffix that
                // still chains toward order 1.
                path.clear();
            }
        }
        ProcessGraph {
            tasks,
            edges,
            interval: self.interval,
            path,
        }
    }

    /// Weakly connected components as lists of task indices.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.tasks.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

/// Instantaneous consumed/invested flow split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimePreference {
    pub consumed_flow: f64,
    pub invested_flow: f64,
}

/// Momentary time-preference: consumed over invested flow. Both flows must
/// be strictly positive; a zero consumed flow would mean putting off
/// consumption forever.
pub fn momentary_rate(tp: &TimePreference) -> Result<f64, ProductionError> {
    if !(tp.consumed_flow > 0.0) || !(tp.invested_flow > 0.0) {
        return Err(ProductionError::NonpositiveFlow {
            consumed: tp.consumed_flow,
            invested: tp.invested_flow,
        });
    }
    Ok(tp.consumed_flow / tp.invested_flow)
}

/// Period rate from the instantaneous rate: `exp(J) - 1`, the inverse of
/// `log(1 + J*) = J`.
pub fn period_rate(instant: f64) -> Result<f64, ProductionError> {
    if !(instant > 0.0) {
        return Err(ProductionError::NonpositiveRate(instant));
    }
    Ok(instant.exp_m1())
}

/// Continuous discount over `[from, to]`: `exp(-rate * (to - from))`.
pub fn discount_factor(rate: f64, from: f64, to: f64) -> Result<f64, ProductionError> {
    if !(rate > 0.0) {
        return Err(ProductionError::NonpositiveRate(rate));
    }
    if to < from {
        return Err(ProductionError::NegativeInterval { h: from, k: to });
    }
    Ok((-rate * (to - from)).exp())
}

/// The structure distribution of one order level.
#[derive(Debug, Clone)]
pub struct OrderLevel {
    pub order: f64,
    pub distribution: Hyperfunction,
}

/// The unfolding structure distribution: per distinct order level, the sum
/// of in-interval terms weighted by the coefficients' psi values. Closed
/// evaluation at a label equals the sum of psi over coefficients whose
/// `(p, r)` interval contains it.
pub fn build_structure_distribution(
    g: &ProcessGraph,
) -> Result<Vec<OrderLevel>, ProductionError> {
    let mut orders: Vec<f64> = g.tasks().iter().map(|t| t.order).collect();
    orders.sort_by(|a, b| a.partial_cmp(b).unwrap());
    orders.dedup();
    let mut out = Vec::with_capacity(orders.len());
    for order in orders {
        let mut hf = Hyperfunction::zero();
        for task in g.tasks().iter().filter(|t| t.order == order) {
            for c in &task.coefficients {
                if c.psi == 0.0 {
                    continue;
                }
                let term = Hyperfunction::interval(c.p, c.r)
                    .map_err(|_| ProductionError::InvalidTask {
                        label: task.label,
                        reason: "coefficient requires p < r".into(),
                    })?
                    .scale(ComplexScalar::real(c.psi));
                hf = hf.add(&term);
            }
        }
        out.push(OrderLevel {
            order,
            distribution: hf,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleBin {
    pub order_lo: f64,
    pub order_hi: f64,
    pub total_frequency: f64,
}

/// Structure-of-production triangle data: per order bin, the exact mass of
/// the structure distribution (closed-form integral of the piecewise
/// constant psi sum). Bins are `[c_i, c_{i+1})` with the last bin closed;
/// tasks outside the cutpoint range are not counted.
pub fn bb_triangle(
    g: &ProcessGraph,
    order_bins: &[f64],
) -> Result<Vec<TriangleBin>, ProductionError> {
    if order_bins.len() < 2
        || order_bins.windows(2).any(|w| w[1] <= w[0])
        || order_bins.iter().any(|c| !c.is_finite())
    {
        return Err(ProductionError::BadBins);
    }
    let nbins = order_bins.len() - 1;
    let mut bins: Vec<TriangleBin> = (0..nbins)
        .map(|i| TriangleBin {
            order_lo: order_bins[i],
            order_hi: order_bins[i + 1],
            total_frequency: 0.0,
        })
        .collect();
    // Tasks sorted by order so per-bin accumulation is deterministic.
    let mut tasks: Vec<&Task> = g.tasks().iter().collect();
    tasks.sort_by(|a, b| {
        a.order
            .partial_cmp(&b.order)
            .unwrap()
            .then(a.label.partial_cmp(&b.label).unwrap())
    });
    for task in tasks {
        let o = task.order;
        let idx = if o == order_bins[nbins] {
            Some(nbins - 1)
        } else {
            (0..nbins).find(|&i| o >= order_bins[i] && o < order_bins[i + 1])
        };
        if let Some(i) = idx {
            bins[i].total_frequency += task.psi_mass();
        }
    }
    Ok(bins)
}

/// One abandonment event: the task stops being used at `rate_path[rate_index]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Abandonment {
    pub label: f64,
    pub rate_index: usize,
    pub rate: f64,
}

/// Under a progressive rate increase, a task is abandoned at the first
/// rate where its discounted yield falls below its cross-section cost.
/// Ties at the same rate are broken by higher specificity first, then by
/// label for determinism. Tasks never abandoned within the path are
/// omitted.
pub fn abandonment_order(
    tasks: &[Task],
    rate_path: &[f64],
) -> Result<Vec<Abandonment>, ProductionError> {
    if tasks.is_empty() {
        return Err(ProductionError::EmptySet);
    }
    if rate_path.is_empty()
        || rate_path.iter().any(|r| !(r.is_finite() && *r > 0.0))
        || rate_path.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(ProductionError::BadRatePath);
    }
    for t in tasks {
        t.validate()?;
    }
    let mut events: Vec<(usize, u32, f64)> = Vec::new();
    for t in tasks {
        let hit = rate_path
            .iter()
            .position(|&rate| t.discounted_yield(rate) < t.cross_section);
        if let Some(idx) = hit {
            events.push((idx, t.specificity, t.label));
        }
    }
    events.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(b.1.cmp(&a.1))
            .then(a.2.partial_cmp(&b.2).unwrap())
    });
    Ok(events
        .into_iter()
        .map(|(idx, _, label)| Abandonment {
            label,
            rate_index: idx,
            rate: rate_path[idx],
        })
        .collect())
}

/// Label of the path task with minimal cross-section; ties go to the
/// earliest task along the path.
pub fn find_bottleneck(g: &ProcessGraph) -> Result<f64, ProductionError> {
    if g.path().is_empty() {
        return Err(ProductionError::EmptyPath);
    }
    let mut best: Option<(f64, f64)> = None; // (cross_section, label)
    for &idx in g.path() {
        let t = &g.tasks()[idx];
        if best.is_none_or(|(cs, _)| t.cross_section < cs) {
            best = Some((t.cross_section, t.label));
        }
    }
    Ok(best.expect("nonempty path").1)
}

/// Revenue accounting used for knowledge marginal products: discounted
/// structure mass delivered at order 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RevenueModel {
    pub rate: f64,
}

impl RevenueModel {
    /// Per weakly-connected component, the discounted mass of its tasks is
    /// capped by the minimal cross-section the chosen path exposes inside
    /// that component. Components the path does not touch are uncapped.
    pub fn revenue(&self, g: &ProcessGraph) -> Result<f64, ProductionError> {
        if !(self.rate > 0.0) {
            return Err(ProductionError::NonpositiveRate(self.rate));
        }
        let mut total = 0.0;
        for comp in g.components() {
            let mass: f64 = comp
                .iter()
                .map(|&i| g.tasks()[i].discounted_yield(self.rate))
                .sum();
            let capacity = comp
                .iter()
                .filter(|i| g.path().contains(i))
                .map(|&i| g.tasks()[i].cross_section)
                .fold(f64::INFINITY, f64::min);
            total += mass.min(capacity);
        }
        Ok(total)
    }
}

/// Marginal product of the knowledge that turned `g_before` into `g_after`:
/// the revenue difference under one model. Negative when the reorganized
/// plan is worse.
pub fn knowledge_marginal_product(
    g_before: &ProcessGraph,
    g_after: &ProcessGraph,
    model: &RevenueModel,
) -> Result<f64, ProductionError> {
    Ok(model.revenue(g_after)? - model.revenue(g_before)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::ClosedValue;

    pub(crate) fn task(label: f64, order: f64, coeffs: &[(f64, f64, f64)], cs: f64) -> Task {
        Task {
            label,
            order,
            coefficients: coeffs
                .iter()
                .map(|&(p, r, psi)| TaskCoefficient {
                    bucket: 0,
                    p,
                    r,
                    psi,
                })
                .collect(),
            specificity: 1,
            cross_section: cs,
        }
    }

    fn chain_graph() -> ProcessGraph {
        // order 3 -> order 2 -> order 1
        ProcessGraph::new(
            vec![
                task(10.0, 3.0, &[(0.0, 1.0, 3.0)], 3.0),
                task(20.0, 2.0, &[(1.0, 2.0, 2.0)], 1.0),
                task(30.0, 1.0, &[(2.0, 3.0, 1.0)], 2.0),
            ],
            vec![(0, 1), (1, 2)],
            (0.0, 10.0),
            vec![0, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn edges_must_decrease_in_order() {
        let err = ProcessGraph::new(
            vec![task(1.0, 1.0, &[], 1.0), task(2.0, 2.0, &[], 1.0)],
            vec![(0, 1)],
            (0.0, 1.0),
            vec![],
        )
        .unwrap_err();
        assert_eq!(err.code(), "EDGE_ORDER_VIOLATION");
    }

    #[test]
    fn momentary_rate_is_the_flow_ratio() {
        assert_eq!(
            momentary_rate(&TimePreference {
                consumed_flow: 1.0,
                invested_flow: 1.0
            })
            .unwrap(),
            1.0
        );
        assert_eq!(
            momentary_rate(&TimePreference {
                consumed_flow: 0.05,
                invested_flow: 1.0
            })
            .unwrap(),
            0.05
        );
        // Ratio homogeneity.
        assert_eq!(
            momentary_rate(&TimePreference {
                consumed_flow: 2.0 * 0.3,
                invested_flow: 2.0 * 1.7
            })
            .unwrap(),
            momentary_rate(&TimePreference {
                consumed_flow: 0.3,
                invested_flow: 1.7
            })
            .unwrap()
        );
        assert!(momentary_rate(&TimePreference {
            consumed_flow: 0.0,
            invested_flow: 1.0
        })
        .is_err());
    }

    #[test]
    fn period_rate_matches_closed_form() {
        let j = 0.05_f64;
        let star = period_rate(j).unwrap();
        assert!((star - (j.exp() - 1.0)).abs() < 1e-15);
        assert!(((1.0 + star).ln() - j).abs() < 1e-12);
        assert!(period_rate(0.0).is_err());
    }

    #[test]
    fn discount_factor_basics() {
        assert_eq!(discount_factor(0.05, 2.0, 2.0).unwrap(), 1.0);
        let d = discount_factor(0.05, 0.0, 2.0).unwrap();
        assert!((d - 0.9048374180359595).abs() < 1e-12);
        assert!(discount_factor(0.05, 0.0, 1.0).unwrap() > d);
        assert!(discount_factor(0.05, 1.0, 0.0).is_err());
    }

    #[test]
    fn discount_composes_over_adjacent_intervals() {
        let (h, k, l) = (0.0, 1.7, 4.2);
        let lhs = discount_factor(0.07, h, k).unwrap() * discount_factor(0.07, k, l).unwrap();
        let rhs = discount_factor(0.07, h, l).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn structure_distribution_matches_piecewise_sum() {
        let g = ProcessGraph::new(
            vec![task(
                1.0,
                2.0,
                &[(0.0, 1.0, 3.0), (0.25, 0.75, 2.0)],
                1.0,
            )],
            vec![],
            (0.0, 1.0),
            vec![],
        );
        // Overlapping coefficient supports are fine inside one task.
        let g = g.unwrap();
        let levels = build_structure_distribution(&g).unwrap();
        assert_eq!(levels.len(), 1);
        let hf = &levels[0].distribution;
        let at = |x: f64| match hf.eval_closed(x) {
            ClosedValue::Value(v) => v.re,
            ClosedValue::Singular => panic!(),
        };
        assert_eq!(at(0.5), 5.0);
        assert_eq!(at(0.1), 3.0);
        assert_eq!(at(2.0), 0.0);
    }

    #[test]
    fn structure_distribution_numeric_route_agrees() {
        let g = chain_graph();
        let cfg = crate::eval::EvalConfig::default();
        for level in build_structure_distribution(&g).unwrap() {
            for x in [-0.7, 0.4, 1.3, 2.6, 4.0] {
                let piecewise: f64 = g
                    .tasks()
                    .iter()
                    .filter(|t| t.order == level.order)
                    .flat_map(|t| t.coefficients.iter())
                    .filter(|c| c.p < x && x < c.r)
                    .map(|c| c.psi)
                    .sum();
                let numeric = level.distribution.eval_numeric(x, &cfg).unwrap();
                assert!(
                    (numeric.re() - piecewise).abs() <= 1e-6,
                    "order {} at {x}: numeric {} vs piecewise {piecewise}",
                    level.order,
                    numeric.re()
                );
            }
        }
    }

    #[test]
    fn triangle_conserves_mass() {
        let g = chain_graph();
        let bins = bb_triangle(&g, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let total: f64 = bins.iter().map(|b| b.total_frequency).sum();
        let expect: f64 = g.tasks().iter().map(|t| t.psi_mass()).sum();
        assert_eq!(total, expect);
    }

    #[test]
    fn triangle_rejects_bad_bins() {
        let g = chain_graph();
        assert_eq!(
            bb_triangle(&g, &[1.0]).unwrap_err(),
            ProductionError::BadBins
        );
        assert_eq!(
            bb_triangle(&g, &[2.0, 1.0]).unwrap_err(),
            ProductionError::BadBins
        );
    }

    #[test]
    fn higher_specificity_goes_first_on_ties() {
        let mut a = task(1.0, 4.0, &[(0.0, 1.0, 1.0)], 0.9);
        let mut b = task(2.0, 4.0, &[(0.0, 1.0, 1.0)], 0.9);
        a.specificity = 5;
        b.specificity = 2;
        let order = abandonment_order(&[b, a], &[0.01, 0.2, 0.5]).unwrap();
        assert_eq!(order.len(), 2);
        assert_eq!(order[0].label, 1.0, "specificity 5 goes first");
        assert_eq!(order[1].label, 2.0);
    }

    #[test]
    fn low_rates_abandon_nothing() {
        let t = task(1.0, 2.0, &[(0.0, 1.0, 10.0)], 0.5);
        let order = abandonment_order(&[t], &[0.001, 0.002]).unwrap();
        assert!(order.is_empty());
    }

    #[test]
    fn bottleneck_is_minimal_cross_section_on_path() {
        let g = chain_graph();
        assert_eq!(find_bottleneck(&g).unwrap(), 20.0);
        let empty_path = ProcessGraph::new(g.tasks().to_vec(), g.edges().to_vec(), (0.0, 1.0), vec![])
            .unwrap();
        assert_eq!(
            find_bottleneck(&empty_path).unwrap_err(),
            ProductionError::EmptyPath
        );
    }

    #[test]
    fn bottleneck_tie_goes_to_earliest_on_path() {
        let g = ProcessGraph::new(
            vec![
                task(1.0, 3.0, &[], 1.0),
                task(2.0, 2.0, &[], 1.0),
                task(3.0, 1.0, &[], 2.0),
            ],
            vec![(0, 1), (1, 2)],
            (0.0, 1.0),
            vec![0, 1, 2],
        )
        .unwrap();
        assert_eq!(find_bottleneck(&g).unwrap(), 1.0);
    }

    #[test]
    fn relieving_the_bottleneck_raises_revenue() {
        let g = chain_graph();
        let model = RevenueModel { rate: 0.05 };
        // Total discounted mass exceeds the capacity 1.0 of task 20.
        let before = model.revenue(&g).unwrap();
        let mut tasks = g.tasks().to_vec();
        tasks[1].cross_section = 2.5;
        let relieved =
            ProcessGraph::new(tasks, g.edges().to_vec(), g.interval(), g.path().to_vec()).unwrap();
        let gain = knowledge_marginal_product(&g, &relieved, &model).unwrap();
        assert!(gain > 0.0, "before={before}, gain={gain}");
        assert_eq!(knowledge_marginal_product(&g, &g, &model).unwrap(), 0.0);
    }

    #[test]
    fn revenue_adds_over_disjoint_components() {
        let model = RevenueModel { rate: 0.1 };
        let part_a = ProcessGraph::new(
            vec![task(1.0, 2.0, &[(0.0, 1.0, 4.0)], 10.0)],
            vec![],
            (0.0, 1.0),
            vec![],
        )
        .unwrap();
        let part_b = ProcessGraph::new(
            vec![task(2.0, 3.0, &[(0.0, 1.0, 6.0)], 10.0)],
            vec![],
            (0.0, 1.0),
            vec![],
        )
        .unwrap();
        let combined = ProcessGraph::new(
            vec![
                part_a.tasks()[0].clone(),
                part_b.tasks()[0].clone(),
            ],
            vec![],
            (0.0, 1.0),
            vec![],
        )
        .unwrap();
        let sum = model.revenue(&part_a).unwrap() + model.revenue(&part_b).unwrap();
        assert!((model.revenue(&combined).unwrap() - sum).abs() < 1e-12);
    }
}
