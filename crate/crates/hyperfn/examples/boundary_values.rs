//! Evaluate the defining-term catalog two ways: the extrapolated boundary
//! limit and the exact piecewise oracle, then show that defining pairs
//! are not unique.
//!
//! ```bash
//! cargo run --example boundary_values
//! ```

use hyperfn::poly::Poly;
use hyperfn::{ClosedValue, ComplexScalar, EvalConfig, Hyperfunction};

fn closed(hf: &Hyperfunction, x: f64) -> String {
    match hf.eval_closed(x) {
        ClosedValue::Value(v) => format!("{:.9}", v.re),
        ClosedValue::Singular => "singular".to_string(),
    }
}

fn main() {
    let cfg = EvalConfig::default();
    let catalog: Vec<(&str, Hyperfunction)> = vec![
        ("constant 1", Hyperfunction::constant(ComplexScalar::one())),
        ("step at 0", Hyperfunction::step(0.0).unwrap()),
        ("impulse at 0 (x5)", Hyperfunction::delta(0.0).unwrap().scale(ComplexScalar::real(5.0))),
        ("interval [0,1)", Hyperfunction::interval(0.0, 1.0).unwrap()),
        (
            "rational (z^2+1)/(z^2+4)",
            Hyperfunction::rational(Poly::new(vec![1.0, 0.0, 1.0]), Poly::new(vec![4.0, 0.0, 1.0]))
                .unwrap(),
        ),
    ];

    println!("{:<24} {:>6} {:>16} {:>16}", "term", "x", "boundary limit", "piecewise");
    for (name, hf) in &catalog {
        for x in [-5.0, 0.5, 5.0] {
            let numeric = hf
                .eval_numeric(x, &cfg)
                .map(|v| format!("{:.9}", v.re()))
                .unwrap_or_else(|e| format!("({e})"));
            println!("{:<24} {:>6} {:>16} {:>16}", name, x, numeric, closed(hf, x));
        }
    }

    // hyp(1,0) = hyp(1/2,-1/2) = hyp(0,-1) = 1: branch offsets cancel.
    println!("\nthe constant 1 from three different defining pairs:");
    let one = Hyperfunction::constant(ComplexScalar::one());
    for shift in [0.0, -0.5, -1.0] {
        let pair = one
            .clone()
            .offset_both_branches(&[ComplexScalar::real(shift)]);
        let v = pair.eval_numeric(2.0, &cfg).unwrap();
        println!("  (F+, F-) = ({}, {})  ->  {:.12}", 1.0 + shift, shift, v.re());
    }

    // Winding the branches around a singularity adds multiples of j that
    // cancel in the boundary value.
    let step = Hyperfunction::step(0.0).unwrap();
    let invariant = (-8..=8).all(|w| step.path_sum_invariance_check(2.0, w, &cfg).unwrap());
    println!("\npath-sum winding invariance over |Z| <= 8: {invariant}");
}
