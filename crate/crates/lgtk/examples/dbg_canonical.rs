use lgtk::an::DegenerationJ;
use lgtk::monodromy::verify::compare_with_canonical;

fn main() {
    let j = DegenerationJ::from_breakpoints(7, vec![1, 2, 4, 8]).unwrap();
    for s in [0.1, 0.05, 0.02, 0.01] {
        for seed in [7u64, 1, 2, 3] {
            match compare_with_canonical(&j, s, seed) {
                Ok(c) => {
                    let v: Vec<bool> = c.iter().map(|x| x.matches_up_to_rotation).collect();
                    println!("s={s} seed={seed}: {v:?}");
                }
                Err(e) => println!("s={s} seed={seed}: ERROR {e}"),
            }
        }
    }
    // smaller J's
    for (n, ks) in [(3usize, vec![1, 2, 4]), (3, vec![1, 3, 4]), (4, vec![1, 2, 4, 5])] {
        let j = DegenerationJ::from_breakpoints(n, ks.clone()).unwrap();
        for s in [0.1, 0.02] {
            match compare_with_canonical(&j, s, 5) {
                Ok(c) => {
                    let v: Vec<bool> = c.iter().map(|x| x.matches_up_to_rotation).collect();
                    println!("J={ks:?} s={s}: {v:?}");
                }
                Err(e) => println!("J={ks:?} s={s}: ERROR {e}"),
            }
        }
    }
}
