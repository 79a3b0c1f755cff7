//! Property tests for the module invariants.

use proptest::prelude::*;
use std::collections::HashSet;

use hyperfn::poly::Poly;
use hyperfn::production::{abandonment_order, Task, TaskCoefficient};
use hyperfn::switch::{
    count_measure, kron_one, kron_one_via_theta, kron_zero, sgn_eval, sgn_hyperfunction,
    step_weak_one, step_weak_one_hyperfunction, step_weak_zero, RealVector,
};
use hyperfn::{ClosedValue, ComplexScalar, EvalConfig, Hyperfunction};

fn closed(hf: &Hyperfunction, x: f64) -> num_complex::Complex64 {
    match hf.eval_closed(x) {
        ClosedValue::Value(v) => v,
        ClosedValue::Singular => panic!("singular at {x}"),
    }
}

/// A random hyperfunction from the safe part of the catalog, with all
/// singular points inside [-4, 4].
fn arb_hyperfunction() -> impl Strategy<Value = Hyperfunction> {
    let term = prop_oneof![
        (-2.0..2.0f64, -2.0..2.0f64)
            .prop_map(|(re, im)| Hyperfunction::constant(ComplexScalar::new(re, im).unwrap())),
        (-4.0..4.0f64).prop_map(|a| Hyperfunction::step(a).unwrap()),
        (-4.0..4.0f64).prop_map(|a| Hyperfunction::delta(a).unwrap()),
        (-4.0..3.0f64, 0.1..1.0f64)
            .prop_map(|(a, w)| Hyperfunction::interval(a, a + w).unwrap()),
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(c1, c2)| {
            Hyperfunction::rational(Poly::new(vec![c1, c2, 0.5]), Poly::new(vec![2.0, 0.0, 1.0]))
                .unwrap()
        }),
    ];
    proptest::collection::vec(term, 1..4)
        .prop_map(|parts| parts.iter().fold(Hyperfunction::zero(), |acc, p| acc.add(p)))
}

fn far_point() -> impl Strategy<Value = f64> {
    // Points at least 0.05 away from any breakpoint used by
    // arb_hyperfunction can be filtered cheaply.
    -9.0..9.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// eval(alpha a + beta b) = alpha eval(a) + beta eval(b).
    #[test]
    fn evaluation_is_linear(
        a in arb_hyperfunction(),
        b in arb_hyperfunction(),
        x in far_point(),
        are in -2.0..2.0f64,
        aim in -2.0..2.0f64,
        bre in -2.0..2.0f64,
        bim in -2.0..2.0f64,
    ) {
        let sings: Vec<f64> = a.singular_points().into_iter().chain(b.singular_points()).collect();
        prop_assume!(sings.iter().all(|s| (x - s).abs() > 0.05));
        let alpha = ComplexScalar::new(are, aim).unwrap();
        let beta = ComplexScalar::new(bre, bim).unwrap();
        let cfg = EvalConfig::default();
        let combined = a.scale(alpha).add(&b.scale(beta));
        let lhs = combined.eval_numeric(x, &cfg).unwrap().to_complex();
        let rhs = alpha.to_complex() * a.eval_numeric(x, &cfg).unwrap().to_complex()
            + beta.to_complex() * b.eval_numeric(x, &cfg).unwrap().to_complex();
        prop_assert!((lhs - rhs).norm() <= 1e-7, "lhs={lhs}, rhs={rhs}");
    }

    /// Adding the same polynomial to both branches never changes a value.
    #[test]
    fn branch_offsets_cancel(
        hf in arb_hyperfunction(),
        x in far_point(),
        coeffs in proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 1..=5),
    ) {
        prop_assume!(hf.singular_points().iter().all(|s| (x - s).abs() > 0.05));
        let cfg = EvalConfig::default();
        let offset: Vec<ComplexScalar> = coeffs
            .into_iter()
            .map(|(re, im)| ComplexScalar::new(re, im).unwrap())
            .collect();
        let shifted = hf.clone().offset_both_branches(&offset);
        let base = hf.eval_numeric(x, &cfg).unwrap().to_complex();
        let with_offset = shifted.eval_numeric(x, &cfg).unwrap().to_complex();
        prop_assert!((base - with_offset).norm() <= 1e-7);
    }

    /// Numeric evaluation tracks the exact piecewise oracle.
    #[test]
    fn numeric_matches_closed(hf in arb_hyperfunction(), x in far_point()) {
        prop_assume!(hf.singular_points().iter().all(|s| (x - s).abs() > 0.05));
        let cfg = EvalConfig::default();
        let numeric = hf.eval_numeric(x, &cfg).unwrap().to_complex();
        prop_assert!((numeric - closed(&hf, x)).norm() <= 1e-6);
    }

    /// Serialization round-trips exactly.
    #[test]
    fn json_roundtrip_is_identity(hf in arb_hyperfunction()) {
        let json = serde_json::to_string(&hf).unwrap();
        let back: Hyperfunction = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&hf, &back);
        prop_assert_eq!(json, serde_json::to_string(&back).unwrap());
    }

    /// Complement identities hold for all inputs in any dimension.
    #[test]
    fn switch_complementarity(
        pairs in proptest::collection::vec((-3..=3i32, -3..=3i32), 1..5),
    ) {
        let x = RealVector::new(pairs.iter().map(|p| p.0 as f64).collect()).unwrap();
        let r = RealVector::new(pairs.iter().map(|p| p.1 as f64).collect()).unwrap();
        prop_assert_eq!(step_weak_one(&x, &r).unwrap() + step_weak_zero(&x, &r).unwrap(), 1);
        prop_assert_eq!(kron_one(&x, &r).unwrap() + kron_zero(&x, &r).unwrap(), 1);
        prop_assert_eq!(kron_one(&x, &r).unwrap(), kron_one_via_theta(&x, &r).unwrap());
        // Idempotence: every switch value is 0 or 1.
        prop_assert!(step_weak_one(&x, &r).unwrap() <= 1);
    }

    /// The counting measure equals the distinct-label count.
    #[test]
    fn count_measure_matches_set_cardinality(labels in proptest::collection::vec(0..20i64, 0..40)) {
        let distinct: HashSet<i64> = labels.iter().copied().collect();
        prop_assert_eq!(count_measure(&labels), distinct.len());
    }

    /// Raising the terminal rate never un-abandons a task.
    #[test]
    fn abandonment_is_monotone_in_rate(
        seeds in proptest::collection::vec((0.1..4.0f64, 0.1..3.0f64, 1..8u32), 1..8),
        extra_rate in 0.5..2.0f64,
    ) {
        let tasks: Vec<Task> = seeds
            .iter()
            .enumerate()
            .map(|(i, &(psi, cs, spec))| Task {
                label: i as f64,
                order: 2.0 + (i % 3) as f64,
                coefficients: vec![TaskCoefficient { bucket: 0, p: 0.0, r: 1.0, psi }],
                specificity: spec,
                cross_section: cs,
            })
            .collect();
        let short = vec![0.2, 0.6, 1.1];
        let mut long = short.clone();
        long.push(1.1 + extra_rate);
        let abandoned_short: HashSet<u64> = abandonment_order(&tasks, &short)
            .unwrap()
            .iter()
            .map(|e| e.label.to_bits())
            .collect();
        let abandoned_long: HashSet<u64> = abandonment_order(&tasks, &long)
            .unwrap()
            .iter()
            .map(|e| e.label.to_bits())
            .collect();
        prop_assert!(abandoned_short.is_subset(&abandoned_long));
    }
}

#[test]
fn winding_invariance_holds_for_all_small_windings() {
    let cfg = EvalConfig::default();
    let hf = Hyperfunction::step(0.0)
        .unwrap()
        .add(&Hyperfunction::delta(2.0).unwrap().scale(ComplexScalar::real(3.0)));
    for winding in -8..=8 {
        assert!(hf.path_sum_invariance_check(1.0, winding, &cfg).unwrap());
        assert!(hf.path_sum_invariance_check(-4.5, winding, &cfg).unwrap());
    }
    assert!(hf.path_sum_invariance_check(1.0, 9, &cfg).is_err());
}

/// The analytic switch forms agree with the discrete evaluations off the
/// jump guard.
#[test]
fn switch_hyperfunction_forms_agree_with_discrete() {
    let cfg = EvalConfig::default();
    let sgn_hf = sgn_hyperfunction();
    for x in [-2.0, -0.25, 0.25, 3.0] {
        let v = sgn_hf.eval_numeric(x, &cfg).unwrap();
        assert!(
            (v.re() - sgn_eval(x) as f64).abs() <= 1e-6,
            "sgn mismatch at {x}: {v}"
        );
    }
    for r in [-1.5, 0.0, 2.0] {
        let one_form = step_weak_one_hyperfunction(r);
        let zero_form = hyperfn::switch::step_weak_zero_hyperfunction(r);
        for dx in [-1.0, -0.3, 0.3, 1.0] {
            let x = r + dx;
            let xv = RealVector::new(vec![x]).unwrap();
            let rv = RealVector::new(vec![r]).unwrap();
            let discrete = step_weak_one(&xv, &rv).unwrap() as f64;
            let v = one_form.eval_numeric(x, &cfg).unwrap();
            assert!((v.re() - discrete).abs() <= 1e-6);
            let vz = zero_form.eval_numeric(x, &cfg).unwrap();
            assert!((vz.re() - (1.0 - discrete)).abs() <= 1e-6);
        }
    }
    // The in-interval switch and its analytic form agree off breakpoints.
    let gate = hyperfn::switch::interval_hyperfunction(0.0, 1.0).unwrap();
    for x in [-0.5, 0.25, 0.75, 1.5] {
        let discrete = hyperfn::switch::interval_switch(
            &RealVector::new(vec![x]).unwrap(),
            &RealVector::new(vec![0.0]).unwrap(),
            &RealVector::new(vec![x]).unwrap(),
            &RealVector::new(vec![1.0]).unwrap(),
        )
        .unwrap() as f64;
        let v = gate.eval_numeric(x, &cfg).unwrap();
        assert!((v.re() - discrete).abs() <= 1e-6, "interval form at {x}");
    }
}
