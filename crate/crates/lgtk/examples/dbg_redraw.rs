use lgtk::an::DegenerationJ;
use lgtk::monodromy::Regeneration;
use std::collections::BTreeSet;

fn main() {
    let j = DegenerationJ::from_interior(2, &BTreeSet::new()).unwrap();
    let mut draw = 42u64;
    for k in 0..10 {
        let reg = Regeneration::seeded(&j, 0.1, draw);
        let mut crit = reg.pencil.critical_values().unwrap();
        crit.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        let gaps: Vec<f64> =
            crit.windows(2).map(|w| (w[1].norm() / w[0].norm()).ln()).collect();
        println!("attempt {k} draw {draw}: gaps {gaps:?}");
        draw = draw.wrapping_add(0x9E37_79B9_7F4A_7C15);
    }
}
