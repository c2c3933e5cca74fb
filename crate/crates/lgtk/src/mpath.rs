//! Monotone edge paths on a polytope relative to a linear functional, their
//! fiber-polytope points, and the monotone path polytope.

use crate::linalg::{add, dot, scale};
use crate::polytope::{GeometryError, Polytope};
use crate::scalar::Scalar;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A strictly γ-increasing edge path from a γ-minimizing vertex of the
/// polytope to a γ-maximizing one, with its fiber-polytope point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonePath<S> {
    /// Vertex indices into the polytope's vertex list.
    pub vertex_sequence: Vec<usize>,
    pub fiber_point: Vec<S>,
    pub coherent: bool,
}

/// The monotone path polytope with its bijection between hull vertices and
/// coherent paths.
#[derive(Clone, Debug)]
pub struct MonotonePathPolytope<S: Scalar> {
    pub polytope: Polytope<S>,
    /// All monotone paths, coherence flags set.
    pub paths: Vec<MonotonePath<S>>,
    /// For each vertex of `polytope` (in its vertex order), the index of the
    /// unique path whose fiber point it is.
    pub vertex_to_path: Vec<usize>,
}

/// All γ-monotone edge paths, as vertex-index sequences in deterministic
/// (lexicographic) order. Paths run from γ-minimizing to γ-maximizing
/// vertices; plateau edges are excluded.
pub fn monotone_edge_paths<S: Scalar>(
    p: &Polytope<S>,
    gamma: &[S],
) -> Result<Vec<Vec<usize>>, GeometryError> {
    let values: Vec<S> = p.vertices().iter().map(|v| dot(gamma, v)).collect();
    let min = values.iter().min().cloned().ok_or(GeometryError::EmptyInput)?;
    let max = values.iter().max().cloned().unwrap();
    if min == max {
        return Err(GeometryError::ConstantFunctional);
    }
    let mut up_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &p.edges() {
        if values[a] < values[b] {
            up_edges.entry(a).or_default().push(b);
        } else if values[b] < values[a] {
            up_edges.entry(b).or_default().push(a);
        }
    }
    for targets in up_edges.values_mut() {
        targets.sort();
    }
    let starts: Vec<usize> = (0..values.len()).filter(|&i| values[i] == min).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn dfs<S: Scalar>(
        v: usize,
        up: &BTreeMap<usize, Vec<usize>>,
        values: &[S],
        max: &S,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        stack.push(v);
        match up.get(&v) {
            Some(next) if !next.is_empty() => {
                for &w in next {
                    dfs(w, up, values, max, stack, out);
                }
            }
            _ => {
                // every sink of the γ-orientation is a γ-maximizer
                assert_eq!(&values[v], max, "non-maximal vertex without increasing edge");
                out.push(stack.clone());
            }
        }
        stack.pop();
    }
    for s in starts {
        dfs(s, &up_edges, &values, &max, &mut stack, &mut out);
    }
    out.sort();
    Ok(out)
}

/// The fiber-polytope point of a monotone path:
/// `(1/L) Σ (γ(v_{j+1}) − γ(v_j)) · (v_j + v_{j+1})/2` with `L` the γ-range
/// of the polytope. Its γ-value is the midpoint of the range.
pub fn path_point<S: Scalar>(p: &Polytope<S>, gamma: &[S], path: &[usize]) -> Vec<S> {
    let values: Vec<S> = p.vertices().iter().map(|v| dot(gamma, v)).collect();
    let min = values.iter().min().unwrap().clone();
    let max = values.iter().max().unwrap().clone();
    let len = max - min;
    assert!(!len.is_zero(), "functional must be non-constant");
    let mut acc = vec![S::zero(); p.ambient_dim()];
    let half = S::from_fraction(1, 2);
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let weight = (values[b].clone() - values[a].clone()) * half.clone();
        let mid = add(&p.vertices()[a], &p.vertices()[b]);
        acc = add(&acc, &scale(&mid, &weight));
    }
    scale(&acc, &(S::one() / len))
}

/// Hull of all path points. Each hull vertex corresponds to exactly one
/// monotone path (its coherent path); paths whose point is not a vertex are
/// flagged incoherent.
pub fn monotone_path_polytope<S: Scalar>(
    p: &Polytope<S>,
    gamma: &[S],
) -> Result<MonotonePathPolytope<S>, GeometryError> {
    let sequences = monotone_edge_paths(p, gamma)?;
    let points: Vec<Vec<S>> = sequences.iter().map(|seq| path_point(p, gamma, seq)).collect();
    let hull = Polytope::hull(&points)?;
    let mut paths: Vec<MonotonePath<S>> = sequences
        .into_iter()
        .zip(points.iter())
        .map(|(seq, pt)| MonotonePath {
            vertex_sequence: seq,
            fiber_point: pt.clone(),
            coherent: false,
        })
        .collect();
    let mut vertex_to_path = Vec::with_capacity(hull.vertices().len());
    for v in hull.vertices() {
        let owners: Vec<usize> =
            (0..paths.len()).filter(|&i| &paths[i].fiber_point == v).collect();
        assert_eq!(owners.len(), 1, "each hull vertex belongs to exactly one path");
        paths[owners[0]].coherent = true;
        vertex_to_path.push(owners[0]);
    }
    Ok(MonotonePathPolytope { polytope: hull, paths, vertex_to_path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::polytope::unit_cube;
    use crate::subdivision::{interval_config, interval_k_set};
    use crate::Rat;
    use std::collections::BTreeSet;

    #[test]
    fn square_has_two_paths() {
        let sq = unit_cube::<Rat>(2);
        let gamma = int_vec::<Rat>(&[1, 1]);
        let paths = monotone_edge_paths(&sq, &gamma).unwrap();
        assert_eq!(paths.len(), 2);
        let mpp = monotone_path_polytope(&sq, &gamma).unwrap();
        assert_eq!(mpp.polytope.dim(), 1);
        assert_eq!(mpp.polytope.vertices().len(), 2);
        assert!(mpp.paths.iter().all(|p| p.coherent));
    }

    #[test]
    fn segment_path_point_is_midpoint() {
        let seg = Polytope::<Rat>::hull(&[int_vec(&[1, 0]), int_vec(&[3, 4])]).unwrap();
        let gamma = int_vec::<Rat>(&[1, 0]);
        let paths = monotone_edge_paths(&seg, &gamma).unwrap();
        assert_eq!(paths.len(), 1);
        let pt = path_point(&seg, &gamma, &paths[0]);
        assert_eq!(pt, vec![Rat::from_int(2), Rat::from_int(2)]);
    }

    #[test]
    fn square_lower_path_point() {
        // lower path (0,0) → (1,0) → (1,1): two-edge weighted midpoint sum, L = 2
        let sq = unit_cube::<Rat>(2);
        let gamma = int_vec::<Rat>(&[1, 1]);
        let verts = sq.vertices();
        let idx = |x: i64, y: i64| {
            verts.iter().position(|v| v == &int_vec::<Rat>(&[x, y])).unwrap()
        };
        let lower = vec![idx(0, 0), idx(1, 0), idx(1, 1)];
        let pt = path_point(&sq, &gamma, &lower);
        assert_eq!(pt, vec![Rat::from_fraction(3, 4), Rat::from_fraction(1, 4)]);
    }

    #[test]
    fn gamma_average_property() {
        let sq = unit_cube::<Rat>(3);
        let gamma = int_vec::<Rat>(&[1, 2, 4]);
        let values: Vec<Rat> = sq.vertices().iter().map(|v| dot(&gamma, v)).collect();
        let avg = (values.iter().max().unwrap().clone() + values.iter().min().unwrap().clone())
            * Rat::from_fraction(1, 2);
        for path in monotone_edge_paths(&sq, &gamma).unwrap() {
            let pt = path_point(&sq, &gamma, &path);
            assert_eq!(dot(&gamma, &pt), avg);
        }
    }

    #[test]
    fn interval_secondary_has_two_paths_for_n2() {
        let cfg = interval_config::<Rat>(2);
        let (sec, tris) = cfg.secondary_polytope().unwrap();
        let mut gamma = vec![Rat::from_int(0); 4];
        gamma[0] = Rat::from_int(1);
        let paths = monotone_edge_paths(&sec, &gamma).unwrap();
        assert_eq!(paths.len(), 2);
        // the two paths are the K-sequences ({1} → ∅) and ({1,2} → {2} → ∅)
        let as_ks: BTreeSet<Vec<BTreeSet<usize>>> = paths
            .iter()
            .map(|seq| seq.iter().map(|&vi| interval_k_set(&tris[vi], 2)).collect())
            .collect();
        let expected: BTreeSet<Vec<BTreeSet<usize>>> = [
            vec![BTreeSet::from([1]), BTreeSet::new()],
            vec![BTreeSet::from([1, 2]), BTreeSet::from([2]), BTreeSet::new()],
        ]
        .into_iter()
        .collect();
        assert_eq!(as_ks, expected);
        // the two path points span the monotone path polytope segment
        let mpp = monotone_path_polytope(&sec, &gamma).unwrap();
        assert_eq!(mpp.polytope.vertices().len(), 2);
        assert_eq!(mpp.polytope.dim(), 1);
    }

    #[test]
    fn constant_functional_is_rejected() {
        let sq = unit_cube::<Rat>(2);
        let gamma = int_vec::<Rat>(&[0, 0]);
        assert!(matches!(
            monotone_edge_paths(&sq, &gamma),
            Err(GeometryError::ConstantFunctional)
        ));
    }
}
