//! Plan-then-realize market experiment: producers infer time-preference
//! from an interest rate distorted by an inflation impulse, replan their
//! chain depth, and realized demand, judged with consumers' true rates,
//! reveals the mismatch. Welfare is a pure count of realized exchanges.
//!
//! The gap is the mechanism and is hard-coded: producers plan with the
//! observed (distorted) rate, consumers evaluate offers with their true
//! `rho`. Deeper planned chains deliver later, so distorted plans push
//! discounted offer values below asks and matches disappear.
//!
//! Each sweep point runs independently; results are merged in epsilon
//! order and RNG streams are split per epsilon from the master seed. The
//! per-round RNG draws a fresh defining-pair representation of every
//! consumer's hierarchy; rounds must produce bit-identical reports, which
//! the runner verifies.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::preference::{
    build_preference, reflex_filter, representation_variants, PreferenceError, PreferenceSpec,
    ReflexOutcome, ReflexSpec,
};
use crate::production::{ProcessGraph, ProductionError, Task, TaskCoefficient};
use crate::term::ClosedValue;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarketError {
    #[error("inflation impulse {epsilon} would push the observed rate at or below zero (true rate {rate})")]
    EpsilonTooLarge { rate: f64, epsilon: f64 },

    #[error("market needs at least one consumer and one producer")]
    EmptyMarket,

    #[error("rounds must be >= 1")]
    BadRounds,

    #[error("epsilons must be sorted ascending and start at 0")]
    BadEpsilons,

    #[error("rounds disagreed; the market cycle is expected to be deterministic")]
    InconsistentRounds,

    #[error(transparent)]
    Preference(#[from] PreferenceError),

    #[error(transparent)]
    Production(#[from] ProductionError),
}

impl MarketError {
    pub fn code(&self) -> &'static str {
        match self {
            MarketError::EpsilonTooLarge { .. } => "EPSILON_TOO_LARGE",
            MarketError::EmptyMarket => "EMPTY_MARKET",
            MarketError::BadRounds => "BAD_ROUNDS",
            MarketError::BadEpsilons => "BAD_EPSILONS",
            MarketError::InconsistentRounds => "INCONSISTENT_ROUNDS",
            MarketError::Preference(e) => e.code(),
            MarketError::Production(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsumerConfig {
    pub pref: PreferenceSpec,
    pub true_rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflex: Option<ReflexSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProducerConfig {
    pub graph: ProcessGraph,
    pub planning_horizon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketConfig {
    pub consumers: Vec<ConsumerConfig>,
    pub producers: Vec<ProducerConfig>,
    pub inflation_epsilon: f64,
    pub seed: u64,
    pub rounds: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WelfareReport {
    pub exchange_count: usize,
    /// Produced goods left unmatched.
    pub glut_labels: BTreeSet<String>,
    /// Willing buyers left unmatched.
    pub shortage_labels: BTreeSet<String>,
    /// Vertices of the goods-buyers graph with no willingness edge at all:
    /// glut clusters standing beside shortage clusters, disconnected.
    pub disconnected_components: usize,
}

/// One first-order good on offer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoodOffer {
    pub id: String,
    pub label: f64,
    pub ask: f64,
    pub delay: f64,
}

/// Market rate implied by true time-preferences: the mean of consumer
/// `rho` values.
pub fn implied_true_rate(consumers: &[ConsumerConfig]) -> f64 {
    let n = consumers.len().max(1);
    consumers.iter().map(|c| c.true_rho).sum::<f64>() / n as f64
}

/// The rate producers see under an inflation impulse of size `epsilon`.
pub fn observed_rate(true_rate: f64, epsilon: f64) -> Result<f64, MarketError> {
    if !(true_rate > 0.0) || epsilon < 0.0 || epsilon >= true_rate {
        return Err(MarketError::EpsilonTooLarge {
            rate: true_rate,
            epsilon,
        });
    }
    Ok(true_rate - epsilon)
}

/// Replan a producer's chain depth under the observed rate: the plan keeps
/// every task whose order does not exceed the deepest order whose
/// discounted yield beats its cross-section cost at that rate. A lower
/// observed rate never shrinks the maximal order.
pub fn producer_plan(graph: &ProcessGraph, observed: f64) -> Result<ProcessGraph, MarketError> {
    if !(observed > 0.0) {
        return Err(MarketError::Production(ProductionError::NonpositiveRate(
            observed,
        )));
    }
    let mut max_viable = 1.0_f64;
    for t in graph.tasks() {
        if t.discounted_yield(observed) > t.cross_section {
            max_viable = max_viable.max(t.order);
        }
    }
    Ok(graph.truncate_to_order(max_viable))
}

/// The goods a planned graph delivers: one offer per order-1 task, asked at
/// the task's cross-section cost, delivered after the roundaboutness delay
/// `horizon * log(max order)`.
pub fn goods_from_plan(
    producer_index: usize,
    planned: &ProcessGraph,
    horizon: f64,
) -> Vec<GoodOffer> {
    let delay = horizon * planned.max_order().ln();
    let mut out: Vec<GoodOffer> = planned
        .tasks()
        .iter()
        .filter(|t| t.order == 1.0)
        .map(|t| GoodOffer {
            id: format!("p{}:{}", producer_index, t.label),
            label: t.label,
            ask: t.cross_section,
            delay,
        })
        .collect();
    out.sort_by(|a, b| {
        a.label
            .partial_cmp(&b.label)
            .unwrap()
            .then(a.id.cmp(&b.id))
    });
    out
}

struct Buyer {
    id: String,
    value_at: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    rho: f64,
    reflex: Option<ReflexSpec>,
}

/// Match produced first-order goods to willing buyers one-to-one. A buyer
/// is willing when the hierarchy's value at the good's label, discounted
/// over the delivery delay with the TRUE rho, strictly exceeds the ask
/// (the outside option of holding the money). Stimuli that fire a reflex
/// are excluded from choice processing and never become willingness.
pub fn realize_demand(
    consumers: &[ConsumerConfig],
    planned: &[(ProcessGraph, f64)],
) -> Result<WelfareReport, MarketError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    realize_demand_with_rng(consumers, planned, &mut rng)
}

fn realize_demand_with_rng<R: Rng>(
    consumers: &[ConsumerConfig],
    planned: &[(ProcessGraph, f64)],
    rng: &mut R,
) -> Result<WelfareReport, MarketError> {
    let mut goods: Vec<GoodOffer> = Vec::new();
    for (i, (graph, horizon)) in planned.iter().enumerate() {
        goods.extend(goods_from_plan(i, graph, *horizon));
    }
    goods.sort_by(|a, b| {
        a.label
            .partial_cmp(&b.label)
            .unwrap()
            .then(a.id.cmp(&b.id))
    });

    let mut buyers: Vec<Buyer> = Vec::new();
    for (ci, c) in consumers.iter().enumerate() {
        let pref = build_preference(&c.pref)?;
        // Draw a fresh defining pair for the same hierarchy; outcomes must
        // not depend on which representation was drawn.
        let variant = representation_variants(&pref, 1, rng)
            .pop()
            .expect("one variant requested");
        buyers.push(Buyer {
            id: format!("c{ci}"),
            value_at: Box::new(move |x| match variant.eval_closed(x) {
                ClosedValue::Value(v) => v.re,
                ClosedValue::Singular => 0.0,
            }),
            rho: c.true_rho,
            reflex: c.reflex.clone(),
        });
    }

    // Willingness edges, goods-major, buyer-sorted for deterministic ties.
    let adj: Vec<Vec<usize>> = goods
        .iter()
        .map(|g| {
            (0..buyers.len())
                .filter(|&bi| {
                    let b = &buyers[bi];
                    if let Some(reflex) = &b.reflex {
                        if matches!(reflex_filter(reflex, g.label), ReflexOutcome::Fired(_)) {
                            return false;
                        }
                    }
                    (b.value_at)(g.label) * (-b.rho * g.delay).exp() > g.ask
                })
                .collect()
        })
        .collect();

    let matched = max_bipartite_matching(&adj, buyers.len());
    let exchange_count = matched.iter().flatten().count();

    let glut_labels: BTreeSet<String> = goods
        .iter()
        .enumerate()
        .filter(|(gi, _)| matched[*gi].is_none())
        .map(|(_, g)| g.id.clone())
        .collect();
    let matched_buyers: BTreeSet<usize> = matched.iter().flatten().copied().collect();
    let willing: BTreeSet<usize> = adj.iter().flatten().copied().collect();
    let shortage_labels: BTreeSet<String> = willing
        .iter()
        .filter(|bi| !matched_buyers.contains(bi))
        .map(|bi| buyers[*bi].id.clone())
        .collect();
    let isolated_goods = adj.iter().filter(|edges| edges.is_empty()).count();
    let isolated_buyers = buyers.len() - willing.len();

    Ok(WelfareReport {
        exchange_count,
        glut_labels,
        shortage_labels,
        disconnected_components: isolated_goods + isolated_buyers,
    })
}

/// Maximum bipartite matching by augmenting paths. `adj[left]` lists right
/// vertices in the deterministic tie-break order. Returns the right match
/// of each left vertex.
pub fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(u, adj, &mut seen, &mut match_right);
    }
    let mut match_left: Vec<Option<usize>> = vec![None; adj.len()];
    for (r, m) in match_right.iter().enumerate() {
        if let Some(l) = m {
            match_left[*l] = Some(r);
        }
    }
    match_left
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if !seen[v] {
            seen[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(prev) => augment(prev, adj, seen, match_right),
            };
            if free {
                match_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Run one full plan-then-realize cycle for the config, replicated
/// `rounds` times with per-round representation draws. All rounds must
/// agree bit-for-bit.
pub fn run_market(config: &MarketConfig) -> Result<WelfareReport, MarketError> {
    run_market_seeded(config, config.seed)
}

fn run_market_seeded(config: &MarketConfig, stream_seed: u64) -> Result<WelfareReport, MarketError> {
    if config.consumers.is_empty() || config.producers.is_empty() {
        return Err(MarketError::EmptyMarket);
    }
    if config.rounds < 1 {
        return Err(MarketError::BadRounds);
    }
    let true_rate = implied_true_rate(&config.consumers);
    let observed = observed_rate(true_rate, config.inflation_epsilon)?;
    let mut planned = Vec::with_capacity(config.producers.len());
    for p in &config.producers {
        planned.push((producer_plan(&p.graph, observed)?, p.planning_horizon));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    let mut report: Option<WelfareReport> = None;
    for _ in 0..config.rounds {
        let r = realize_demand_with_rng(&config.consumers, &planned, &mut rng)?;
        match &report {
            None => report = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return Err(MarketError::InconsistentRounds),
        }
    }
    Ok(report.expect("rounds >= 1"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub welfare: usize,
    pub drop_ratio: f64,
    pub nonproportional: bool,
    pub report: WelfareReport,
}

/// Welfare across an ascending epsilon grid starting at 0. Points run
/// independently (parallel) with per-epsilon RNG streams split from the
/// master seed; the output is merged in epsilon order. `drop_ratio` is the
/// relative welfare drop per unit of epsilon; a point is flagged
/// nonproportional when some larger epsilon shows a strictly smaller drop
/// ratio.
pub fn sensitivity_sweep(
    config: &MarketConfig,
    epsilons: &[f64],
) -> Result<Vec<SweepPoint>, MarketError> {
    if epsilons.is_empty() || epsilons[0] != 0.0 || epsilons.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MarketError::BadEpsilons);
    }
    let reports: Result<Vec<(usize, WelfareReport)>, MarketError> = epsilons
        .par_iter()
        .enumerate()
        .map(|(i, &eps)| {
            let mut cfg = config.clone();
            cfg.inflation_epsilon = eps;
            let stream = config
                .seed
                .wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            run_market_seeded(&cfg, stream).map(|r| (r.exchange_count, r))
        })
        .collect();
    let reports = reports?;
    let w0 = reports[0].0;
    let ratios: Vec<f64> = epsilons
        .iter()
        .zip(&reports)
        .map(|(&eps, (w, _))| {
            if eps == 0.0 || w0 == 0 {
                0.0
            } else {
                let drop = (w0 as f64 - *w as f64) / w0 as f64;
                drop / eps.max(1e-12)
            }
        })
        .collect();
    Ok(epsilons
        .iter()
        .enumerate()
        .zip(reports)
        .map(|((i, &eps), (w, report))| SweepPoint {
            epsilon: eps,
            welfare: w,
            drop_ratio: ratios[i],
            nonproportional: eps > 0.0
                && ratios
                    .iter()
                    .enumerate()
                    .any(|(j, &rj)| epsilons[j] > eps && ratios[i] > rj),
            report,
        })
        .collect())
}

/// The sweep-level flag: some small impulse hurt disproportionately more
/// than a larger one.
pub fn sweep_is_nonproportional(points: &[SweepPoint]) -> bool {
    points.iter().any(|p| p.nonproportional)
}

/// The shipped demonstration market. Two producers hold speculative deep
/// tasks that only look viable once the observed rate falls below their
/// thresholds at inflation impulses near 0.0005 and 0.004; crossing a
/// threshold lengthens the planned chain, delays delivery, and prices the
/// affected buyers out.
pub fn demo_config() -> MarketConfig {
    let consumer = |lo: f64, hi: f64, weight: f64| ConsumerConfig {
        pref: PreferenceSpec {
            impulses: vec![crate::preference::Impulse {
                r_lo: lo,
                r_hi: hi,
                weight,
            }],
            rho: 0.05,
        },
        true_rho: 0.05,
        reflex: None,
    };
    let base_task = |label: f64| Task {
        label,
        order: 1.0,
        coefficients: vec![TaskCoefficient {
            bucket: 0,
            p: label - 1.0,
            r: label + 1.0,
            psi: 2.0,
        }],
        specificity: 1,
        cross_section: 0.5,
    };
    let support_task = |label: f64, order: f64, cross_section: f64| Task {
        label,
        order,
        coefficients: vec![TaskCoefficient {
            bucket: 1,
            p: label - 0.5,
            r: label + 0.5,
            psi: 3.0,
        }],
        specificity: 2,
        cross_section,
    };

    // Producer 0: three first-order goods, an always-viable order-2 stage,
    // and an order-6 stage that becomes viable once observed < 0.046.
    let p0 = ProcessGraph::new(
        vec![
            base_task(100.0),
            base_task(102.0),
            base_task(104.0),
            support_task(110.0, 2.0, 0.5),
            support_task(120.0, 6.0, 2.7627),
        ],
        vec![(3, 0), (3, 1), (3, 2), (4, 3)],
        (0.0, 10.0),
        vec![4, 3, 0],
    )
    .expect("demo graph p0 is valid");

    // Producer 1: one good and an order-4 stage viable once observed
    // < 0.0495.
    let p1 = ProcessGraph::new(
        vec![
            base_task(200.0),
            support_task(210.0, 2.0, 0.5),
            support_task(220.0, 4.0, 2.8010),
        ],
        vec![(1, 0), (2, 1)],
        (0.0, 10.0),
        vec![2, 1, 0],
    )
    .expect("demo graph p1 is valid");

    MarketConfig {
        consumers: vec![
            consumer(99.5, 100.5, 0.8),
            consumer(101.5, 102.5, 0.9),
            consumer(103.5, 104.5, 1.0),
            consumer(199.5, 200.5, 0.8),
        ],
        producers: vec![
            ProducerConfig {
                graph: p0,
                planning_horizon: 8.0,
            },
            ProducerConfig {
                graph: p1,
                planning_horizon: 8.0,
            },
        ],
        inflation_epsilon: 0.0,
        seed: 42,
        rounds: 2,
    }
}

/// The epsilon grid the demonstration sweeps over.
pub fn demo_epsilons() -> Vec<f64> {
    vec![0.0, 0.002, 0.005, 0.01, 0.02, 0.04]
}
