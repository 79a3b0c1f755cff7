//! Structure-of-production analysis: order distributions, triangle data,
//! rates and discounts, abandonment under rising rates, bottlenecks, and
//! the marginal product of a reorganization.
//!
//! ```bash
//! cargo run --example production_triangle
//! ```

use hyperfn::production::{
    abandonment_order, bb_triangle, build_structure_distribution, discount_factor,
    find_bottleneck, knowledge_marginal_product, momentary_rate, period_rate, ProcessGraph,
    RevenueModel, Task, TaskCoefficient, TimePreference,
};
use hyperfn::ClosedValue;

fn task(label: f64, order: f64, psi: f64, cross_section: f64, specificity: u32) -> Task {
    Task {
        label,
        order,
        coefficients: vec![TaskCoefficient {
            bucket: 0,
            p: label - 0.5,
            r: label + 0.5,
            psi,
        }],
        specificity,
        cross_section,
    }
}

fn main() {
    // A five-stage chain toward the order-1 consumption good.
    let graph = ProcessGraph::new(
        vec![
            task(10.0, 5.0, 1.0, 2.0, 6),
            task(20.0, 4.0, 1.5, 1.8, 4),
            task(30.0, 3.0, 2.0, 0.7, 3),
            task(40.0, 2.0, 2.5, 1.5, 2),
            task(50.0, 1.0, 3.0, 2.2, 1),
        ],
        vec![(0, 1), (1, 2), (2, 3), (3, 4)],
        (0.0, 12.0),
        vec![0, 1, 2, 3, 4],
    )
    .unwrap();

    let tp = TimePreference {
        consumed_flow: 0.05,
        invested_flow: 1.0,
    };
    let j = momentary_rate(&tp).unwrap();
    println!("momentary rate J = {j}");
    println!("period rate J* = {:.9} (log(1+J*) = J)", period_rate(j).unwrap());
    println!(
        "discount over [0, 2] at J: {:.9}",
        discount_factor(j, 0.0, 2.0).unwrap()
    );

    println!("\nstructure distribution by order level:");
    for level in build_structure_distribution(&graph).unwrap() {
        let at_center = graph
            .tasks()
            .iter()
            .find(|t| t.order == level.order)
            .map(|t| t.label)
            .unwrap();
        let v = match level.distribution.eval_closed(at_center) {
            ClosedValue::Value(v) => v.re,
            ClosedValue::Singular => f64::NAN,
        };
        println!("  order {}: psi({at_center}) = {v}", level.order);
    }

    println!("\ntriangle data (order bins 1..6):");
    println!("  order_lo,order_hi,frequency");
    for bin in bb_triangle(&graph, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap() {
        println!("  {},{},{}", bin.order_lo, bin.order_hi, bin.total_frequency);
    }

    println!("\nbottleneck (minimal cross-section on the path): task {}", find_bottleneck(&graph).unwrap());

    let rates = [0.2, 0.5, 1.0, 2.0, 4.0];
    println!("\nabandonment under rising rates {rates:?}:");
    for e in abandonment_order(graph.tasks(), &rates).unwrap() {
        println!("  task {} abandoned at rate {}", e.label, e.rate);
    }

    // Relieve the bottleneck and price the knowledge that found it.
    let mut relieved_tasks = graph.tasks().to_vec();
    relieved_tasks[2].cross_section = 2.0;
    let relieved = ProcessGraph::new(
        relieved_tasks,
        graph.edges().to_vec(),
        graph.interval(),
        graph.path().to_vec(),
    )
    .unwrap();
    let model = RevenueModel { rate: 0.05 };
    println!(
        "\nknowledge marginal product of relieving the bottleneck: {:+.6}",
        knowledge_marginal_product(&graph, &relieved, &model).unwrap()
    );
}
