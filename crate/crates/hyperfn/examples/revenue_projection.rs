//! Revenue projection over mixed data: points, interval estimates, and
//! unique events, with the event-gated risk discount and marginal
//! contributions of individual inputs.
//!
//! ```bash
//! cargo run --example revenue_projection
//! ```

use std::collections::BTreeMap;

use hyperfn::risk::{
    discount_gate, interval_gate, marginal_contribution, project_revenue, GatedAmount, Interval,
    MixedDatum, RevenueModel,
};
use hyperfn::switch::{ScalarOperand, SwitchExpr};

fn main() {
    let var = |k: usize| ScalarOperand::Var { var: k };
    let lit = ScalarOperand::Lit;

    // Revenue model: a sale worth 120 at t=1 gated on capacity >= 1, a
    // follow-on worth 80 at t=3 gated on demand in [2, 5), penalized 20%
    // while the regulatory decision is unresolved.
    let model = RevenueModel {
        inputs: vec!["capacity".into(), "demand".into()],
        base_terms: vec![
            GatedAmount {
                gate: SwitchExpr::StepWeakOne {
                    x: vec![var(0)],
                    r: vec![lit(1.0)],
                },
                amount: 120.0,
                time: 1.0,
            },
            GatedAmount {
                gate: SwitchExpr::Interval {
                    x: vec![var(1)],
                    r: vec![lit(2.0)],
                    y: vec![var(1)],
                    p: vec![lit(5.0)],
                },
                amount: 80.0,
                time: 3.0,
            },
        ],
        rate: 0.2,
        event_deltas: vec!["ruling".into()],
    };

    let mut data = BTreeMap::new();
    data.insert("capacity".to_string(), MixedDatum::Point { value: 1.4 });
    data.insert(
        "demand".to_string(),
        MixedDatum::Range {
            interval: Interval::new(1.5, 3.5).unwrap(),
        },
    );
    data.insert(
        "ruling_event".to_string(),
        MixedDatum::Event {
            name: "ruling".into(),
            fired: false,
        },
    );

    let mut events = BTreeMap::new();
    events.insert("ruling".to_string(), false);
    println!("risk multiplier while unresolved: {}", discount_gate(&model, &events).unwrap());
    events.insert("ruling".to_string(), true);
    println!("risk multiplier after the ruling: {}", discount_gate(&model, &events).unwrap());

    let projection = project_revenue(&model, &data, 0.05, 0.0).unwrap();
    println!(
        "\nprojected revenue enclosure at 5% market rate: [{:.4}, {:.4}]",
        projection.lo(),
        projection.hi()
    );
    println!("(the demand estimate straddles the 2.0 gate edge, hence the spread)");

    // Interval switch on its own: definite in, definite out, indeterminate.
    println!("\nstandalone interval gates:");
    let iv = |a: f64, b: f64| Interval::new(a, b).unwrap();
    for (x, r, y, p) in [
        (iv(2.0, 3.0), iv(0.0, 1.0), iv(2.0, 3.0), iv(5.0, 6.0)),
        (iv(0.0, 1.0), iv(2.0, 3.0), iv(0.0, 1.0), iv(5.0, 6.0)),
        (iv(0.0, 3.0), iv(1.0, 2.0), iv(0.0, 3.0), iv(5.0, 6.0)),
    ] {
        println!("  gate(X={:?}, R={:?}, Y={:?}, P={:?}) -> {:?}",
            (x.lo(), x.hi()), (r.lo(), r.hi()), (y.lo(), y.hi()), (p.lo(), p.hi()),
            interval_gate(&x, &r, &y, &p));
    }

    // Marginal contribution of more capacity vs more demand.
    for (name, bump) in [("capacity", 0.5), ("demand", 1.0)] {
        let m = marginal_contribution(&model, &data, name, bump).unwrap();
        println!(
            "\nmarginal contribution of bumping {name} by {bump}: [{:.4}, {:.4}]",
            m.lo(),
            m.hi()
        );
    }
}
