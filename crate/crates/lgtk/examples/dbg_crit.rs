use lgtk::an::DegenerationJ;
use lgtk::monodromy::{Regeneration, seeded_coefficients};
use std::collections::BTreeSet;

fn main() {
    let j = DegenerationJ::from_interior(3, &BTreeSet::new()).unwrap();
    for seed in [42u64, 0, 1, 2] {
        let reg = Regeneration::seeded(&j, 0.1, seed);
        let mut crit = reg.pencil.critical_values().unwrap();
        crit.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        let moduli: Vec<f64> = crit.iter().map(|z| z.norm()).collect();
        let log_gaps: Vec<f64> = moduli.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
        println!("seed {seed}: moduli {moduli:?} log gaps {log_gaps:?}");
        println!("  c = {:?}", seeded_coefficients(&j, seed));
    }
}
