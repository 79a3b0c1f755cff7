//! The welfare sensitivity experiment: producers plan chain depth from a
//! distorted rate, consumers judge deliveries with their true rates, and
//! welfare is the count of realized exchanges. Small impulses can hurt
//! disproportionately.
//!
//! ```bash
//! cargo run --example inflation_sweep
//! ```

use hyperfn::inflation::{
    demo_config, demo_epsilons, implied_true_rate, observed_rate, producer_plan, run_market,
    sensitivity_sweep, sweep_is_nonproportional,
};

fn main() {
    let config = demo_config();
    let true_rate = implied_true_rate(&config.consumers);
    println!(
        "market: {} consumers, {} producers, true rate {true_rate}",
        config.consumers.len(),
        config.producers.len()
    );

    // How the observed rate reshapes one producer's plan.
    println!("\nplanned chain depth of producer 0 by inflation impulse:");
    for eps in [0.0, 0.002, 0.005, 0.02] {
        let observed = observed_rate(true_rate, eps).unwrap();
        let planned = producer_plan(&config.producers[0].graph, observed).unwrap();
        println!(
            "  eps={eps:<6} observed={observed:<6.3} max order -> {}",
            planned.max_order()
        );
    }

    let baseline = run_market(&config).unwrap();
    println!("\nbaseline (eps = 0): {} exchanges, glut {:?}, shortage {:?}",
        baseline.exchange_count, baseline.glut_labels, baseline.shortage_labels);

    let points = sensitivity_sweep(&config, &demo_epsilons()).unwrap();
    println!("\nepsilon,welfare,drop_ratio,nonproportional");
    for p in &points {
        println!(
            "{},{},{:.3},{}",
            p.epsilon, p.welfare, p.drop_ratio, p.nonproportional as u8
        );
    }

    if sweep_is_nonproportional(&points) {
        let eps = points
            .iter()
            .filter(|p| p.nonproportional)
            .map(|p| p.epsilon)
            .fold(f64::INFINITY, f64::min);
        println!("\nNONPROPORTIONAL: the impulse at eps={eps} hurt more per unit than a larger one.");
    }

    let crisis = &points.last().unwrap().report;
    println!(
        "\nat the largest impulse: {} exchanges, {} disconnected market vertices",
        crisis.exchange_count, crisis.disconnected_components
    );
}
