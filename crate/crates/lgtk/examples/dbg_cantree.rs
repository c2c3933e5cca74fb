use lgtk::an::{canonical_insertions, vanishing_tree, DegenerationJ};
use lgtk::monodromy::stages::{lab, numeric_vanishing_tree, trees_equal_up_to_rotation};
use lgtk::monodromy::Lift;

fn main() {
    let mut all = true;
    for n in 1..=5usize {
        for j in DegenerationJ::all(n) {
            let canonical = vanishing_tree(&j, &canonical_insertions(&j)).unwrap();
            let mut ok = 0;
            let mut tot = 0;
            for seed in 0..5u64 {
                let Ok(l) = lab(&j, 0.1, 1000 + seed, &Lift::Fundamental) else { continue };
                let Ok(num) = numeric_vanishing_tree(&l) else { continue };
                tot += 1;
                if trees_equal_up_to_rotation(&num, &canonical).is_some() {
                    ok += 1;
                }
            }
            if ok != tot {
                all = false;
                println!("n={n} J={:?}: canonical tree match {ok}/{tot}", j.interior());
            }
        }
    }
    let j248 = DegenerationJ::from_breakpoints(7, vec![1, 2, 4, 8]).unwrap();
    let canonical = vanishing_tree(&j248, &canonical_insertions(&j248)).unwrap();
    for seed in [7u64, 1, 2] {
        let l = lab(&j248, 0.1, seed, &Lift::Fundamental).unwrap();
        let num = numeric_vanishing_tree(&l).unwrap();
        println!("2-4-8 seed {seed}: canonical tree rotation = {:?}", trees_equal_up_to_rotation(&num, &canonical));
        println!("  numeric edges: {:?}", num.edge_set());
        println!("  canonical edges: {:?}", canonical.edge_set());
    }
    println!("all smaller cases matched: {all}");
}
