//! The analytic switch family: signs, weak/strict steps, equality deltas,
//! interval switches, their product truth tables, and the counting
//! measure.
//!
//! ```bash
//! cargo run --example switch_tables
//! ```

use hyperfn::switch::{
    conjunction, count_measure, interval_switch, kron_one, kron_one_via_theta, sgn_eval,
    sgn_hyperfunction, step_weak_one, RealVector, ScalarOperand, SwitchExpr,
};
use hyperfn::EvalConfig;

fn v(c: &[f64]) -> RealVector {
    RealVector::new(c.to_vec()).unwrap()
}

fn main() {
    println!("sgn(2)={}, sgn(-3)={}, sgn(0)={} (right-limit at zero)", sgn_eval(2.0), sgn_eval(-3.0), sgn_eval(0.0));

    let cfg = EvalConfig::default();
    let sgn_hf = sgn_hyperfunction();
    let at = sgn_hf.eval_numeric(0.25, &cfg).unwrap();
    println!("sgn via boundary-value form at 0.25: {:.9}", at.re());

    println!("\nweak step over vectors (equality counts as satisfied):");
    for (x, r) in [(vec![2.0, 3.0], vec![1.0, 3.0]), (vec![2.0, 3.0], vec![1.0, 4.0])] {
        println!("  step({x:?} >= {r:?}) = {}", step_weak_one(&v(&x), &v(&r)).unwrap());
    }

    println!("\nequality delta, direct vs step-composed:");
    for (x, r) in [(vec![1.0, 2.0], vec![1.0, 2.0]), (vec![1.0, 2.0], vec![1.0, 3.0])] {
        println!(
            "  delta({x:?}, {r:?}) = {} = {}",
            kron_one(&v(&x), &v(&r)).unwrap(),
            kron_one_via_theta(&v(&x), &v(&r)).unwrap()
        );
    }

    println!("\nin-interval switch on [0, 1):");
    for x in [0.0, 0.5, 1.0, 2.0] {
        let s = interval_switch(&v(&[x]), &v(&[0.0]), &v(&[x]), &v(&[1.0])).unwrap();
        println!("  x={x}: {s}");
    }

    // The three product truth tables over scalar sign patterns.
    let lits = |d: f64| vec![ScalarOperand::Lit(d)];
    let zero = vec![ScalarOperand::Lit(0.0)];
    let theta1 = |d: f64| SwitchExpr::StepWeakOne { x: lits(d), r: zero.clone() };
    let theta0 = |d: f64| SwitchExpr::StepWeakZero { x: lits(d), r: zero.clone() };
    println!("\nproduct truth tables (rows: X-R in {{-,0,+}}; cols: Y-P):");
    for (name, make) in [
        ("theta1 * theta1", Box::new(|a: f64, b: f64| (theta1(a), theta1(b))) as Box<dyn Fn(f64, f64) -> (SwitchExpr, SwitchExpr)>),
        ("theta1 * theta0", Box::new(|a, b| (theta1(a), theta0(b)))),
        ("theta0 * theta0", Box::new(|a, b| (theta0(a), theta0(b)))),
    ] {
        println!("  {name}:");
        for a in [-1.0, 0.0, 1.0] {
            let row: Vec<String> = [-1.0, 0.0, 1.0]
                .iter()
                .map(|&b| {
                    let (ea, eb) = make(a, b);
                    conjunction(&ea, &eb, &[]).unwrap().to_string()
                })
                .collect();
            println!("    {}", row.join(" "));
        }
    }

    let events = ["alpha", "beta", "alpha", "gamma", "beta"];
    println!("\ncounting measure of {events:?}: {}", count_measure(&events));
}
