//! Arbitrary integer-order differentiation and integration applied to the
//! defining expressions: the step differentiates to the impulse, the
//! impulse integrates back to the step, and smooth terms agree with
//! finite differences.
//!
//! ```bash
//! cargo run --example differintegration
//! ```

use hyperfn::poly::Poly;
use hyperfn::{ClosedValue, ComplexScalar, Hyperfunction};

fn closed(hf: &Hyperfunction, x: f64) -> f64 {
    match hf.eval_closed(x) {
        ClosedValue::Value(v) => v.re,
        ClosedValue::Singular => f64::NAN,
    }
}

fn main() {
    let step = Hyperfunction::step(0.0).unwrap();
    let der = step.differintegrate(ComplexScalar::one()).unwrap();
    println!("d/dx step(0)     -> {:?}", der.terms()[0].kind);

    let back = der.differintegrate(ComplexScalar::real(-1.0)).unwrap();
    println!("integrate back   -> {:?}", back.terms()[0].kind);

    let ramp = step.differintegrate(ComplexScalar::real(-1.0)).unwrap();
    println!("integrate step   -> {:?}", ramp.terms()[0].kind);
    println!(
        "ramp values      -> f(-1)={}, f(1)={}, f(3)={}",
        closed(&ramp, -1.0),
        closed(&ramp, 1.0),
        closed(&ramp, 3.0)
    );

    // Second derivative of the interval indicator: impulse pairs at both
    // breakpoints, then their derivatives.
    let gate = Hyperfunction::interval(0.0, 1.0).unwrap();
    let d2 = gate.differintegrate(ComplexScalar::real(2.0)).unwrap();
    println!("\nd^2/dx^2 interval[0,1):");
    for t in d2.terms() {
        println!("  {:?} * {}", t.kind, t.coeff);
    }

    // Smooth rational term: symbolic derivative vs central differences.
    let smooth = Hyperfunction::rational(
        Poly::new(vec![0.0, 1.0, -0.25]),
        Poly::new(vec![4.0, 0.0, 1.0]),
    )
    .unwrap();
    let sym = smooth.differintegrate(ComplexScalar::one()).unwrap();
    let h = 1e-5;
    println!("\nsmooth term derivative vs finite differences:");
    println!("{:>6} {:>14} {:>14} {:>10}", "x", "symbolic", "fd", "rel err");
    for x in [-2.0, -0.5, 1.0, 3.0] {
        let fd = (closed(&smooth, x + h) - closed(&smooth, x - h)) / (2.0 * h);
        let s = closed(&sym, x);
        let rel = ((fd - s) / s.abs().max(1.0)).abs();
        println!("{x:>6} {s:>14.8} {fd:>14.8} {rel:>10.2e}");
    }

    // Fractional orders are out of catalog in this version.
    let err = step.differintegrate(ComplexScalar::real(0.5)).unwrap_err();
    println!("\norder 1/2 -> {err}");
}
