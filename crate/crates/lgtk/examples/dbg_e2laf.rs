use lgtk::polytope::{standard_simplex, Polytope};
use lgtk::subdivision::{e2_points, PointConfiguration};
use lgtk::{Rat, Scalar};
use std::time::Instant;

fn main() {
    let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
    let (secondary, _) = cfg.secondary_polytope().unwrap();
    // associahedron facet search
    let t0 = Instant::now();
    let hx_points: Vec<Vec<i64>> = e2_points().into_iter().skip(1).collect();
    let hx = PointConfiguration::<Rat>::new(2, hx_points).unwrap();
    let (assoc, _) = hx.secondary_polytope().unwrap();
    println!("hexagon secondary (associahedron): dim {} f {:?} ({:.1?})", assoc.dim(), assoc.f_vector(), t0.elapsed());
    let t1 = Instant::now();
    let mut found = None;
    for (fi, inc) in secondary.vertex_facet_incidence().iter().enumerate() {
        let pts: Vec<Vec<Rat>> = inc.iter().map(|&v| secondary.vertices()[v].clone()).collect();
        let facet = Polytope::hull(&pts).unwrap();
        if facet.dim() == 3 && facet.vertices().len() == 14 {
            let f = facet.f_vector();
            let edges = facet.edges().len();
            let iso = facet.combinatorially_isomorphic(&assoc).is_some();
            println!("facet {fi}: f {f:?} edges {edges} iso-to-associahedron {iso}");
            if iso {
                found = Some(fi);
            }
        }
    }
    println!("associahedron facet: {found:?} ({:.1?})", t1.elapsed());
    // Lafforgue E2: dimension only needs the vertex set of the sum
    let t2 = Instant::now();
    let simplex = standard_simplex::<Rat>(7);
    let laf = secondary.minkowski_sum(&simplex).unwrap();
    println!(
        "lafforgue E2: ambient {} dim {} verts {} facets {} ({:.1?})",
        laf.ambient_dim(),
        laf.dim(),
        laf.vertices().len(),
        laf.facets().len(),
        t2.elapsed()
    );
    let _ = Rat::from_int(0);
}
