use lgtk::an::{canonical_insertions, vanishing_tree, DegenerationJ};
use lgtk::monodromy::stages::{lab, numeric_insertions, numeric_vanishing_tree, trees_equal_up_to_rotation};
use lgtk::monodromy::Lift;
use std::collections::BTreeSet;

fn main() {
    for (n, interior) in [
        (2usize, vec![]),
        (2, vec![2]),
        (3, vec![]),
        (3, vec![2]),
        (3, vec![3]),
        (3, vec![2, 3]),
    ] {
        let j = DegenerationJ::from_interior(n, &interior.iter().copied().collect::<BTreeSet<_>>())
            .unwrap();
        print!("n={n} J={interior:?}: ");
        let l = match lab(&j, 0.1, 42, &Lift::Fundamental) {
            Ok(l) => l,
            Err(e) => {
                println!("lab error: {e}");
                continue;
            }
        };
        let ins: Vec<_> = match numeric_insertions(&l) {
            Ok(i) => i.into_iter().map(|s| s.insertion).collect(),
            Err(e) => {
                println!("insertion error: {e}");
                continue;
            }
        };
        let valid: Vec<bool> = ins.iter().map(|i| i.validate().is_ok()).collect();
        let tree_a = match numeric_vanishing_tree(&l) {
            Ok(t) => t,
            Err(e) => {
                println!("tree error: {e}");
                continue;
            }
        };
        let tree_b = match vanishing_tree(&j, &ins) {
            Ok(t) => t,
            Err(e) => {
                println!("compose error: {e} (ins: {ins:?})");
                continue;
            }
        };
        let matched = trees_equal_up_to_rotation(&tree_a, &tree_b);
        println!("valid={valid:?} match={matched:?}");
        println!("  numeric ins: {ins:?}");
        println!("  canonical  : {:?}", canonical_insertions(&j));
        println!("  tree A edges: {:?}", tree_a.edges);
        println!("  tree B edges: {:?}", tree_b.edges);
    }
}
