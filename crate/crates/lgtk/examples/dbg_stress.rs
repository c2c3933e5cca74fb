use lgtk::an::DegenerationJ;
use lgtk::monodromy::verify_theorem;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut total = 0;
    let mut bad = 0;
    for n in 1..=5usize {
        for j in DegenerationJ::all(n) {
            match verify_theorem(&j, 0.1, 1000, 5) {
                Ok(rep) => {
                    total += rep.trials.len();
                    if !rep.all_valid || !rep.all_match {
                        bad += 1;
                        println!("n={n} J={:?}: valid={} match={}", rep.interior, rep.all_valid, rep.all_match);
                    }
                }
                Err(e) => {
                    bad += 1;
                    println!("n={n} J={:?}: ERROR {e}", j.interior());
                }
            }
        }
    }
    println!("total trials {total}, bad J {bad}, elapsed {:.1?}", t0.elapsed());
}
