use lgtk::monodromy::verify::surjectivity_search;
use lgtk::polytope::unit_cube;
use lgtk::subdivision::interval_config;
use lgtk::Rat;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    for n in 1..=6usize {
        let cfg = interval_config::<Rat>(n);
        let (sec, _) = cfg.secondary_polytope().unwrap();
        let cube = unit_cube::<Rat>(n);
        let iso = sec.combinatorially_isomorphic(&cube).is_some();
        println!("n={n}: verts {} iso-to-cube {iso} ({:.1?} cum)", sec.vertices().len(), t0.elapsed());
    }
    let t1 = Instant::now();
    match surjectivity_search(4, 0.1, 400, 200000) {
        Ok(r) => println!("surjectivity n=4: {}/{} complete={} runs={} ({:.1?})", r.found, r.target, r.complete, r.runs, t1.elapsed()),
        Err(e) => println!("surjectivity n=4 ERROR: {e}"),
    }
}
