//! Consumer value hierarchies from impulse series: choice queries,
//! monotone relabeling, representation variants, and reflex exclusion.
//!
//! ```bash
//! cargo run --example preference_choices
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperfn::preference::{
    build_preference, choose, reflex_filter, relabel_monotone, representation_variants, Impulse,
    MonotoneMap, PreferenceSpec, ReflexSpec, ReflexTrigger,
};
use hyperfn::{EvalConfig, Hyperfunction};

fn main() {
    let spec = PreferenceSpec::new(
        vec![
            Impulse { r_lo: 0.0, r_hi: 1.0, weight: 1.0 },
            Impulse { r_lo: 2.0, r_hi: 3.0, weight: 5.0 },
            Impulse { r_lo: 4.0, r_hi: 6.0, weight: 3.0 },
        ],
        0.05,
    )
    .unwrap();
    let pref = build_preference(&spec).unwrap();

    println!("choices over the generated hierarchy:");
    for (a, b) in [(0.5, 2.5), (2.5, 5.0), (0.5, 5.0)] {
        println!("  choose({a}, {b}) -> {}", choose(&pref, a, b).unwrap());
    }
    println!("  choose(7.0, 9.0) -> {:?}", choose(&pref, 7.0, 9.0).unwrap_err());

    // Labels are arbitrary: any strictly increasing relabeling leaves
    // every choice unchanged at the argmax level.
    let phi = MonotoneMap::new(vec![(-10.0, -19.0), (10.0, 21.0)]).unwrap(); // 2x + 1
    let relabeled = relabel_monotone(&spec, &phi).unwrap();
    let pref2 = build_preference(&relabeled).unwrap();
    println!("\nafter phi(x) = 2x + 1:");
    for (a, b) in [(0.5, 2.5), (2.5, 5.0)] {
        let w1 = choose(&pref, a, b).unwrap();
        let w2 = choose(&pref2, phi.map(a), phi.map(b)).unwrap();
        println!(
            "  base picks {w1}, relabeled picks {w2} (= phi({w1}) ? {})",
            w2 == phi.map(w1)
        );
    }

    // Infinitely many defining pairs generate the same hierarchy.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let variants = representation_variants(&pref, 3, &mut rng);
    let cfg = EvalConfig::default();
    let samples = [-1.0, 0.5, 2.5, 5.0, 8.0];
    println!("\nrepresentation variants (random branch offsets):");
    for (i, variant) in variants.iter().enumerate() {
        let eq = Hyperfunction::equivalent(&pref, variant, &samples, &cfg).unwrap();
        let same_choice = choose(variant, 0.5, 2.5).unwrap() == choose(&pref, 0.5, 2.5).unwrap();
        println!(
            "  variant {i}: offset degree {}, equivalent={eq}, same choices={same_choice}",
            variant.branch_offset().len().saturating_sub(1)
        );
    }

    // Reflexes fire on exact trigger points and never become choices.
    let reflex = ReflexSpec {
        triggers: vec![ReflexTrigger { point: 3.0, magnitude: 0.7 }],
    };
    println!("\nreflex filter: at 3.0 -> {:?}; at 3.0001 -> {:?}",
        reflex_filter(&reflex, 3.0),
        reflex_filter(&reflex, 3.0001));
}
