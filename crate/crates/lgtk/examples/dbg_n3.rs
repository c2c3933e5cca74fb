use lgtk::an::DegenerationJ;
use lgtk::monodromy::stages::{lab, numeric_vanishing_tree};
use lgtk::monodromy::Lift;
use std::collections::BTreeSet;

fn main() {
    let j = DegenerationJ::from_interior(3, &BTreeSet::new()).unwrap();
    let l = lab(&j, 0.1, 42, &Lift::Fundamental).unwrap();
    println!("lifts: {:?}", l.screen.lifts);
    println!("eps: {}", l.screen.epsilon);
    println!("levels: {:?}", l.structure.level_logs);
    match numeric_vanishing_tree(&l) {
        Ok(t) => println!("tree ok: {:?}", t.edges),
        Err(e) => println!("tree error: {e}"),
    }
}
