use lgtk::mpath::monotone_path_polytope;
use lgtk::subdivision::{e2_points, PointConfiguration};
use lgtk::Rat;
use num_traits::Zero;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
    let (secondary, _tris) = cfg.secondary_polytope().unwrap();
    println!("secondary: dim {} verts {} facets {} ({:.1?})", secondary.dim(), secondary.vertices().len(), secondary.facets().len(), t0.elapsed());
    let t1 = Instant::now();
    let f = secondary.f_vector();
    println!("f-vector: {f:?} ({:.1?})", t1.elapsed());
    let t2 = Instant::now();
    let mut gamma = vec![Rat::zero(); 7];
    gamma[0] = <Rat as lgtk::Scalar>::from_int(1);
    let mpp = monotone_path_polytope(&secondary, &gamma).unwrap();
    println!(
        "mpp: dim {} verts {} paths {} coherent {} ({:.1?})",
        mpp.polytope.dim(),
        mpp.polytope.vertices().len(),
        mpp.paths.len(),
        mpp.paths.iter().filter(|p| p.coherent).count(),
        t2.elapsed()
    );
}
