use lgtk::an::{canonical_insertions, DegenerationJ};
use lgtk::monodromy::verify::{compare_with_canonical, surjectivity_search};
use lgtk::monodromy::{verify_theorem, Lift};
use lgtk::monodromy::stages::{lab, numeric_insertions};
use std::time::Instant;

fn main() {
    // the 2-4-8 exponential degeneration
    let j = DegenerationJ::from_breakpoints(7, vec![1, 2, 4, 8]).unwrap();
    let t0 = Instant::now();
    match verify_theorem(&j, 0.1, 7, 3) {
        Ok(r) => println!("2-4-8: valid={} match={} s={} ({:.1?})", r.all_valid, r.all_match, r.s, t0.elapsed()),
        Err(e) => println!("2-4-8 ERROR: {e}"),
    }
    match compare_with_canonical(&j, 0.1, 7) {
        Ok(c) => println!("canonical comparison: {:?}", c.iter().map(|x| x.matches_up_to_rotation).collect::<Vec<_>>()),
        Err(e) => println!("canonical cmp ERROR: {e}"),
    }
    // inspect the numeric (4,4) stage arrangement for the shuffle property
    let l = lab(&j, 0.1, 7, &Lift::Fundamental).unwrap();
    let ins = numeric_insertions(&l).unwrap();
    for (i, st) in ins.iter().enumerate() {
        println!("stage {}: s1={:?} s2={:?} arr={:?} orders={}", i + 1, st.insertion.s1, st.insertion.s2, st.insertion.arrangement, st.matching_orders);
    }
    println!("canonical: {:?}", canonical_insertions(&j).iter().map(|c| c.arrangement.clone()).collect::<Vec<_>>());
    // surjectivity at small n
    for n in 1..=3 {
        let t1 = Instant::now();
        match surjectivity_search(n, 0.1, 200, 100000) {
            Ok(r) => println!("surjectivity n={n}: {}/{} complete={} runs={} ({:.1?})", r.found, r.target, r.complete, r.runs, t1.elapsed()),
            Err(e) => println!("surjectivity n={n} ERROR: {e}"),
        }
    }
}
