use lgtk::an::*;
use std::collections::BTreeSet;
fn main() {
    for n in [3usize] {
        for j in DegenerationJ::all(n) {
            let interior = j.interior();
            let g = yoneda_graded(n, &interior).unwrap();
            println!("n={} J={:?}", n, interior);
            for i in 0..n {
                for jj in 0..n {
                    if !g[i][jj].is_empty() {
                        println!("  Ext(E{},E{}) = {:?}", i + 1, jj + 1, g[i][jj]);
                    }
                }
            }
        }
    }
}
